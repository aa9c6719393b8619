//! Full-rank lattices in a rational ambient space.
//!
//! A [`Lattice`] is stored by a basis in Hermite normal form, so two lattices
//! compare equal exactly when they are the same subgroup of `Q^n`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::*;

/// Row-style Hermite normal form: returns `(h, u)` with `h = u * m`,
/// `u` unimodular, `h` in echelon form with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &[IntVector]) -> (IntMatrix, IntMatrix) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h: IntMatrix = m.to_vec();
    let mut u = identity(rows);
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclid on column c among rows pivot_row..
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !h[i][c].is_zero()
                    && best.is_none_or(|b| h[i][c].abs() < h[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(pivot_row, b);
            u.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[pivot_row][c]);
                row_axpy(&mut h, i, pivot_row, &q);
                row_axpy(&mut u, i, pivot_row, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[pivot_row][c].is_zero() {
            continue;
        }
        if h[pivot_row][c].is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        for i in 0..pivot_row {
            let q = h[i][c].div_floor(&h[pivot_row][c]);
            if !q.is_zero() {
                row_axpy(&mut h, i, pivot_row, &q);
                row_axpy(&mut u, i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// `row[i] -= q * row[j]`
fn row_axpy(m: &mut IntMatrix, i: usize, j: usize, q: &Int) {
    let src = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for x in &mut m[i] {
        *x = -&*x;
    }
}

/// Checks the normal-form predicate used by [`hermite_normal_form`].
pub fn is_hermite_normal_form(h: &[IntVector]) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for (r, row) in h.iter().enumerate() {
        match row.iter().position(|x| !x.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|lp| p <= lp) || !row[p].is_positive() {
                    return false;
                }
                for above in &h[..r] {
                    if above[p].is_negative() || above[p] >= row[p] {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Result<IntVector> {
    if is_zero(v) {
        return Err(Error::ZeroVector);
    }
    Ok(primitive_part(v))
}

/// Basis of the integer kernel `{x in Z^n : <row, x> = 0 for all rows}`.
pub fn integer_kernel(rows: &[IntVector], n: usize) -> IntMatrix {
    if rows.is_empty() {
        return identity(n);
    }
    let t = transpose(rows, n);
    let (h, u) = hermite_normal_form(&t);
    h.iter()
        .zip(u)
        .filter(|(hr, _)| is_zero(hr))
        .map(|(_, ur)| ur)
        .collect()
}

/// Nonzero rows of the HNF: a basis of the row lattice.
pub(crate) fn lattice_basis_int(gens: &[IntVector]) -> IntMatrix {
    let (h, _) = hermite_normal_form(gens);
    h.into_iter().filter(|r| !is_zero(r)).collect()
}

/// Representatives of `Z^k / rowspan(m)` for a full-rank integer `k x k` matrix,
/// taken from the box `0 <= x_i < h_ii` of the normal form. Zero comes first.
pub(crate) fn box_representatives(m: &[IntVector]) -> Result<Vec<IntVector>> {
    let k = m.len();
    let basis = lattice_basis_int(m);
    if basis.len() != k {
        return Err(Error::NotFullRank);
    }
    let diag: Vec<Int> = (0..k).map(|i| basis[i][i].clone()).collect();
    let mut out = vec![vec![Int::zero(); k]];
    for i in (0..k).rev() {
        let mut next = Vec::new();
        for x in &out {
            let mut j = Int::zero();
            while j < diag[i] {
                let mut y = x.clone();
                y[i] = j.clone();
                next.push(y);
                j += 1;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// A full-rank lattice in `Q^n`, given by rational basis rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: RatMatrix,
    inverse: RatMatrix,
}

impl Lattice {
    /// The reference lattice `Z^n`.
    pub fn standard(n: usize) -> Self {
        let basis = rat_matrix(&identity(n));
        Lattice { inverse: basis.clone(), basis }
    }

    /// The lattice generated by arbitrary rational vectors; they must span `Q^n`.
    pub fn from_generators(n: usize, gens: &[RatVector]) -> Result<Self> {
        for g in gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.len() });
            }
        }
        let den = gens
            .iter()
            .flatten()
            .fold(Int::one(), |l, x| l.lcm(x.denom()));
        let scaled: IntMatrix = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let h = lattice_basis_int(&scaled);
        if h.len() != n {
            return Err(Error::NotFullRank);
        }
        let basis: RatMatrix = h
            .iter()
            .map(|r| r.iter().map(|x| Rat::new(x.clone(), den.clone())).collect())
            .collect();
        let inverse = inverse_q(&basis).ok_or(Error::NotFullRank)?;
        Ok(Lattice { basis, inverse })
    }

    pub fn from_basis(basis: &[RatVector]) -> Result<Self> {
        let n = basis.len();
        if rank_q(basis) != n {
            return Err(Error::NotFullRank);
        }
        Self::from_generators(n, basis)
    }

    pub fn from_int_generators(n: usize, gens: &[IntVector]) -> Result<Self> {
        let q: Vec<RatVector> = gens.iter().map(|g| to_rat(g)).collect();
        Self::from_generators(n, &q)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis rows in ambient coordinates.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn is_standard(&self) -> bool {
        *self == Lattice::standard(self.dim())
    }

    /// Coordinates of `v` with respect to the basis (rational in general).
    pub fn coords(&self, v: &[Rat]) -> RatVector {
        vec_mat_q(v, &self.inverse)
    }

    /// Integer coordinates of a lattice member.
    pub fn int_coords(&self, v: &[Rat]) -> Result<IntVector> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        to_int(&self.coords(v)).ok_or(Error::NotInLattice)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        v.len() == self.dim() && to_int(&self.coords(v)).is_some()
    }

    /// Ambient vector with the given (possibly rational) basis coordinates.
    pub fn to_ambient(&self, c: &[Rat]) -> RatVector {
        vec_mat_q(c, &self.basis)
    }

    pub fn to_ambient_int(&self, c: &[Int]) -> RatVector {
        self.to_ambient(&to_rat(c))
    }

    /// Absolute covolume relative to `Z^n`.
    pub fn covolume(&self) -> Rat {
        det_q(&self.basis).abs()
    }

    /// `{u : <u, x> in Z for all x in self}`, with basis `B^{-T}`.
    pub fn dual(&self) -> Lattice {
        let n = self.dim();
        let t = transpose(&self.inverse, n);
        Lattice::from_generators(n, &t).expect("dual of a full-rank lattice is full rank")
    }

    pub fn is_sublattice_of(&self, sup: &Lattice) -> bool {
        self.basis.iter().all(|b| sup.contains(b))
    }
}

/// `[sup : sub]`; errors when `sub` is not contained in `sup`.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<Int> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch { expected: sup.dim(), found: sub.dim() });
    }
    let m = relative_basis(sub, sup)?;
    Ok(det_i(&m).abs())
}

fn relative_basis(sub: &Lattice, sup: &Lattice) -> Result<IntMatrix> {
    sub.basis
        .iter()
        .map(|b| sup.int_coords(b).map_err(|_| Error::NotContained))
        .collect()
}

pub fn lattice_sum(l1: &Lattice, l2: &Lattice) -> Result<Lattice> {
    if l1.dim() != l2.dim() {
        return Err(Error::DimensionMismatch { expected: l1.dim(), found: l2.dim() });
    }
    let mut gens = l1.basis.clone();
    gens.extend(l2.basis.iter().cloned());
    Lattice::from_generators(l1.dim(), &gens)
}

/// `l1 ∩ l2`, computed as the dual of the sum of the duals.
pub fn lattice_intersection(l1: &Lattice, l2: &Lattice) -> Result<Lattice> {
    Ok(lattice_sum(&l1.dual(), &l2.dual())?.dual())
}

/// One representative of each coset of `sup / sub`, zero first.
pub fn quotient_enumerate(sup: &Lattice, sub: &Lattice) -> Result<Vec<RatVector>> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch { expected: sup.dim(), found: sub.dim() });
    }
    let m = relative_basis(sub, sup)?;
    let reps = box_representatives(&m)?;
    Ok(reps.iter().map(|x| sup.to_ambient_int(x)).collect())
}
