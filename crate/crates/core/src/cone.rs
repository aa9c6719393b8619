//! Rational polyhedral cones in a lattice.
//!
//! Cones are handled in lattice coordinates: a [`Cone`] built over a
//! lattice `N` with basis `B` stores its rays as integer vectors `x` with
//! ambient point `x * B`. Over [`Lattice::standard`] the two agree. Dual
//! vectors use the dual basis, so pairings are plain dot products.
//!
//! Both descriptions are computed on construction with the double
//! description method and kept in canonical form: rays and facet normals
//! are primitive and sorted, and directions are taken modulo the lineality
//! space (resp. the orthogonal space) by orthogonal projection.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{box_representatives, integer_kernel, lattice_basis_int, Lattice};
use crate::linalg::*;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    lattice: Lattice,
    rays: IntMatrix,
    lineality: IntMatrix,
    facets: IntMatrix,
    equations: IntMatrix,
    multiplicity: Option<Int>,
}

/// A face of a parent cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices into the parent's `rays()`.
    pub ray_indices: Vec<usize>,
    /// Supporting dual vector; zero for the parent itself.
    pub normal: IntVector,
    pub cone: Cone,
}

impl Cone {
    /// The cone spanned by integer vectors in `Z^n`.
    pub fn from_rays(gens: &[IntVector]) -> Result<Cone> {
        let n = gens.first().map(Vec::len).ok_or_else(|| {
            Error::Invalid("use Cone::zero for a cone without generators".into())
        })?;
        Cone::from_coords(Lattice::standard(n), gens)
    }

    pub fn zero(lattice: Lattice) -> Cone {
        Cone::from_coords(lattice, &[]).expect("zero cone")
    }

    /// The cone spanned by ambient rational vectors, each replaced by the
    /// primitive lattice vector on its ray.
    pub fn in_lattice(lattice: Lattice, gens: &[RatVector]) -> Result<Cone> {
        let n = lattice.dim();
        let mut coords = Vec::new();
        for g in gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.len() });
            }
            coords.push(primitive_direction(&lattice.coords(g)));
        }
        Cone::from_coords(lattice, &coords)
    }

    /// The cone spanned by vectors given in lattice coordinates.
    pub fn from_coords(lattice: Lattice, gens: &[IntVector]) -> Result<Cone> {
        let n = lattice.dim();
        let mut uniq: BTreeSet<IntVector> = BTreeSet::new();
        for g in gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.len() });
            }
            if !is_zero(g) {
                uniq.insert(primitive_part(g));
            }
        }
        let gens: IntMatrix = uniq.into_iter().collect();
        if rank_i(&gens) == gens.len() {
            return Ok(Cone::simplicial_from(lattice, gens));
        }
        let (drays, dlin) = double_description(n, &gens);
        let equations = saturated_basis(&dlin, n);
        let facets = canonical_directions(&drays, &equations);
        let mut ineqs = facets.clone();
        for e in &equations {
            ineqs.push(e.clone());
            ineqs.push(scale(e, &Int::from(-1)));
        }
        let (prays, plin) = double_description(n, &ineqs);
        let lineality = saturated_basis(&plin, n);
        let rays = canonical_directions(&prays, &lineality);
        let multiplicity = (lineality.is_empty() && rays.len() + equations.len() == n)
            .then(|| det_i(&span_coords(&rays, n).1).abs());
        Ok(Cone { lattice, rays, lineality, facets, equations, multiplicity })
    }

    /// The cone `{x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}`.
    pub fn from_h_rep(lattice: Lattice, ineqs: &[IntVector], eqs: &[IntVector]) -> Result<Cone> {
        let n = lattice.dim();
        let mut all: IntMatrix = ineqs.to_vec();
        for e in eqs {
            all.push(e.clone());
            all.push(scale(e, &Int::from(-1)));
        }
        for a in &all {
            if a.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.len() });
            }
        }
        let (rays, lin) = double_description(n, &all);
        let mut gens = rays;
        for l in lin {
            gens.push(scale(&l, &Int::from(-1)));
            gens.push(l);
        }
        Cone::from_coords(lattice, &gens)
    }

    fn simplicial_from(lattice: Lattice, mut rays: IntMatrix) -> Cone {
        let n = lattice.dim();
        rays.sort();
        if rays.len() == n {
            let det = det_i(&rays);
            let adj = adjugate(&rays);
            let sign = Int::from(if det.is_negative() { -1 } else { 1 });
            let mut facets: IntMatrix = (0..n)
                .map(|i| primitive_part(&adj.iter().map(|row| &row[i] * &sign).collect::<IntVector>()))
                .collect();
            facets.sort();
            return Cone {
                lattice,
                rays,
                lineality: Vec::new(),
                facets,
                equations: Vec::new(),
                multiplicity: Some(det.abs()),
            };
        }
        let equations = saturated_basis(&integer_kernel(&rays, n), n);
        let gram: RatMatrix = rays
            .iter()
            .map(|a| rays.iter().map(|b| Rat::from_integer(dot(a, b))).collect())
            .collect();
        let inv = inverse_q(&gram).unwrap_or_default();
        let rq = rat_matrix(&rays);
        let mut facets: IntMatrix = (0..rays.len())
            .map(|i| {
                let c: RatVector = inv.iter().map(|row| row[i].clone()).collect();
                primitive_direction(&vec_mat_q(&c, &rq))
            })
            .collect();
        facets.sort();
        let multiplicity = Some(det_i(&span_coords(&rays, n).1).abs());
        Cone { lattice, rays, lineality: Vec::new(), facets, equations, multiplicity }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Primitive ray generators (modulo the lineality space).
    pub fn rays(&self) -> &IntMatrix {
        &self.rays
    }

    pub fn rays_ambient(&self) -> Vec<RatVector> {
        self.rays.iter().map(|r| self.lattice.to_ambient_int(r)).collect()
    }

    pub fn lineality(&self) -> &IntMatrix {
        &self.lineality
    }

    /// Rays together with both signs of every lineality basis vector.
    pub fn generators(&self) -> IntMatrix {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(scale(l, &Int::from(-1)));
        }
        g
    }

    /// Inward facet normals.
    pub fn facets(&self) -> &IntMatrix {
        &self.facets
    }

    /// Basis of the integer points of the orthogonal space.
    pub fn equations(&self) -> &IntMatrix {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    pub fn contains_q(&self, v: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_iq(e, v).is_zero())
            && self.facets.iter().all(|f| !dot_iq(f, v).is_negative())
    }

    pub fn contains_ambient(&self, v: &[Rat]) -> bool {
        self.contains_q(&self.lattice.coords(v))
    }

    pub fn in_span(&self, v: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
    }

    pub fn relative_interior_contains(&self, v: &[Int]) -> bool {
        self.in_span(v) && self.facets.iter().all(|f| dot(f, v).is_positive())
    }

    pub fn relative_interior_contains_q(&self, v: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_iq(e, v).is_zero())
            && self.facets.iter().all(|f| dot_iq(f, v).is_positive())
    }

    /// `v <=_σ w`, i.e. `w - v` lies in the cone.
    pub fn sigma_leq(&self, v: &[Int], w: &[Int]) -> bool {
        self.contains(&sub(w, v))
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// The dual cone, living in the dual lattice.
    pub fn dual(&self) -> Cone {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(scale(e, &Int::from(-1)));
        }
        Cone::from_coords(self.lattice.dual(), &gens).expect("dual cone")
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    /// Index of the ray lattice inside the lattice points of the linear span.
    pub fn multiplicity(&self) -> Result<Int> {
        self.multiplicity.clone().ok_or(Error::NotSimplicial)
    }

    pub fn is_smooth(&self) -> bool {
        self.multiplicity.as_ref().is_some_and(One::is_one)
    }

    /// Coefficients of `v` in terms of the rays of a simplicial cone.
    pub fn ray_coefficients(&self, v: &[Rat]) -> Result<Option<RatVector>> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        Ok(solve_left(&rat_matrix(&self.rays), v))
    }

    /// Lattice points `Σ c_i r_i` with `c_i` in `[0, 1)`, or in `[0, 1]` when `closed`.
    pub fn box_points(&self, closed: bool) -> Result<Vec<IntVector>> {
        let mut out: BTreeSet<IntVector> = BTreeSet::new();
        self.for_each_box_point(closed, |p| {
            out.insert(p);
        })?;
        Ok(out.into_iter().collect())
    }

    /// Visits every box point once, in no particular order.
    pub(crate) fn for_each_box_point(&self, closed: bool, mut visit: impl FnMut(IntVector)) -> Result<()> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        let (_, r) = span_coords(&self.rays, self.ambient_dim());
        let sdet = det_i(&r);
        let det = sdet.abs();
        // det * R^{-1}
        let adj: IntMatrix = adjugate(&r)
            .iter()
            .map(|row| row.iter().map(|x| if sdet.is_negative() { -x } else { x.clone() }).collect())
            .collect();
        if let Some(small) = SmallBox::new(&r, &adj, &self.rays, &det) {
            small.run(closed, &mut visit);
            return Ok(());
        }
        for rep in box_representatives(&r)? {
            let res: IntVector = vec_mat(&rep, &adj).iter().map(|x| x.mod_floor(&det)).collect();
            let base: IntVector = vec_mat(&res, &self.rays).iter().map(|x| x / &det).collect();
            if closed {
                let zeros: Vec<usize> = (0..res.len()).filter(|&i| res[i].is_zero()).collect();
                for mask in 0u64..(1u64 << zeros.len()) {
                    let mut q = base.clone();
                    for (b, &i) in zeros.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            q = add(&q, &self.rays[i]);
                        }
                    }
                    visit(q);
                }
            } else {
                visit(base);
            }
        }
        Ok(())
    }

    /// The cone spanned by a subset of this cone's rays.
    pub fn sub_cone(&self, ray_indices: &[usize]) -> Cone {
        let mut gens: IntMatrix = ray_indices.iter().map(|&i| self.rays[i].clone()).collect();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(scale(l, &Int::from(-1)));
        }
        Cone::from_coords(self.lattice.clone(), &gens).expect("sub-cone")
    }

    fn zero_set(&self, f: &[Int]) -> BTreeSet<usize> {
        (0..self.rays.len()).filter(|&i| dot(f, &self.rays[i]).is_zero()).collect()
    }

    fn make_face(&self, set: &BTreeSet<usize>) -> Face {
        let n = self.ambient_dim();
        let mut normal = vec![Int::zero(); n];
        if set.len() < self.rays.len() {
            for f in &self.facets {
                if set.iter().all(|&i| dot(f, &self.rays[i]).is_zero()) {
                    normal = add(&normal, f);
                }
            }
        }
        let idx: Vec<usize> = set.iter().copied().collect();
        Face { cone: self.sub_cone(&idx), ray_indices: idx, normal }
    }

    /// All faces, from the cone itself down to the minimal face, ordered by
    /// decreasing number of rays and then by ray indices.
    pub fn faces(&self) -> Vec<Face> {
        let full: BTreeSet<usize> = (0..self.rays.len()).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self.facets.iter().map(|f| self.zero_set(f)).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        seen.insert(full.clone());
        let mut queue = vec![full];
        while let Some(s) = queue.pop() {
            for fs in &facet_sets {
                let t: BTreeSet<usize> = s.intersection(fs).copied().collect();
                if seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        let mut sets: Vec<BTreeSet<usize>> = seen.into_iter().collect();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.iter().map(|s| self.make_face(s)).collect()
    }

    /// The unique face whose relative interior contains `v`.
    pub fn minimal_face_containing(&self, v: &[Int]) -> Result<Face> {
        let set = self.minimal_face_ray_indices(v)?;
        Ok(self.make_face(&set))
    }

    /// Indices of the rays spanning the minimal face that contains `v`.
    pub fn minimal_face_ray_indices(&self, v: &[Int]) -> Result<BTreeSet<usize>> {
        if !self.contains(v) {
            return Err(Error::NotInCone);
        }
        let mut set: BTreeSet<usize> = (0..self.rays.len()).collect();
        for f in &self.facets {
            if dot(f, v).is_zero() {
                set = set.intersection(&self.zero_set(f)).copied().collect();
            }
        }
        Ok(set)
    }

    pub fn is_face(&self, other: &Cone) -> bool {
        if !self.contains_cone(other) {
            return false;
        }
        let rel: IntVector = other.rays.iter().fold(vec![Int::zero(); self.ambient_dim()], |a, r| add(&a, r));
        match self.minimal_face_containing(&rel) {
            Ok(face) => face.cone == *other,
            Err(_) => false,
        }
    }

    /// Intersection as a cone in the same lattice.
    pub fn intersection(&self, other: &Cone) -> Cone {
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_h_rep(self.lattice.clone(), &ineqs, &eqs).expect("same lattice")
    }

    /// Sum of the rays: a point in the relative interior.
    pub fn barycenter(&self) -> IntVector {
        self.rays.iter().fold(vec![Int::zero(); self.ambient_dim()], |a, r| add(&a, r))
    }
}

/// Machine-integer version of the box enumeration, used when every
/// intermediate value provably fits in `i128`.
struct SmallBox {
    diag: Vec<i128>,
    adj: Vec<Vec<i128>>,
    rays: Vec<Vec<i128>>,
    det: i128,
}

impl SmallBox {
    fn new(r: &IntMatrix, adj: &IntMatrix, rays: &IntMatrix, det: &Int) -> Option<SmallBox> {
        use num_traits::ToPrimitive;
        let bound = Int::from(1i64 << 40);
        let conv = |m: &IntMatrix| -> Option<Vec<Vec<i128>>> {
            m.iter()
                .map(|row| row.iter().map(|x| if x.abs() < bound { x.to_i128() } else { None }).collect())
                .collect()
        };
        let h = lattice_basis_int(r);
        let hnf = conv(&h)?;
        let det = if *det < bound { det.to_i128()? } else { return None };
        Some(SmallBox {
            diag: (0..hnf.len()).map(|i| hnf[i][i]).collect(),
            adj: conv(adj)?,
            rays: conv(rays)?,
            det,
        })
    }

    fn run(&self, closed: bool, visit: &mut impl FnMut(IntVector)) {
        let k = self.diag.len();
        let n = self.rays.first().map_or(0, Vec::len);
        let mut x = vec![0i128; k];
        loop {
            let res: Vec<i128> = (0..k)
                .map(|j| (0..k).map(|i| x[i] * self.adj[i][j]).sum::<i128>().rem_euclid(self.det))
                .collect();
            let base: Vec<i128> = (0..n)
                .map(|j| (0..k).map(|i| res[i] * self.rays[i][j]).sum::<i128>() / self.det)
                .collect();
            if closed {
                let zeros: Vec<usize> = (0..k).filter(|&i| res[i] == 0).collect();
                for mask in 0u64..(1u64 << zeros.len()) {
                    let mut q = base.clone();
                    for (b, &i) in zeros.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            for j in 0..n {
                                q[j] += self.rays[i][j];
                            }
                        }
                    }
                    visit(q.into_iter().map(Int::from).collect());
                }
            } else {
                visit(base.into_iter().map(Int::from).collect());
            }
            // odometer over the box 0 <= x_i < h_ii
            let mut i = 0;
            loop {
                if i == k {
                    return;
                }
                x[i] += 1;
                if x[i] < self.diag[i] {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }
}

/// Saturated basis `K` of the span of independent `rays`, and the rays in `K`-coordinates.
fn span_coords(rays: &[IntVector], n: usize) -> (IntMatrix, IntMatrix) {
    if rays.len() == n {
        return (identity(n), rays.to_vec());
    }
    let k = saturated_basis(rays, n);
    let kq = rat_matrix(&k);
    let r = rays
        .iter()
        .map(|ray| {
            let c = solve_left(&kq, &to_rat(ray)).expect("ray lies in its span");
            to_int(&c).expect("saturated basis has integral coordinates")
        })
        .collect();
    (k, r)
}

/// Saturated integer basis of the rational span of `rows`, in normal form.
pub(crate) fn saturated_basis(rows: &[IntVector], n: usize) -> IntMatrix {
    let nonzero: IntMatrix = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let perp = integer_kernel(&nonzero, n);
    lattice_basis_int(&integer_kernel(&perp, n))
}

/// Projects each vector orthogonally away from `span(against)`, makes it
/// primitive and returns the sorted distinct nonzero results.
fn canonical_directions(vs: &[IntVector], against: &[IntVector]) -> IntMatrix {
    let aq = rat_matrix(against);
    let gram: RatMatrix = aq.iter().map(|a| aq.iter().map(|b| dot_q(a, b)).collect()).collect();
    let ginv = if against.is_empty() { Vec::new() } else { inverse_q(&gram).expect("independent basis") };
    let mut out: BTreeSet<IntVector> = BTreeSet::new();
    for v in vs {
        let vq = to_rat(v);
        let mut p = vq.clone();
        if !against.is_empty() {
            let b: RatVector = aq.iter().map(|a| dot_q(a, &vq)).collect();
            let c = vec_mat_q(&b, &ginv);
            let proj = vec_mat_q(&c, &aq);
            p = p.iter().zip(&proj).map(|(x, y)| x - y).collect();
        }
        if p.iter().any(|x| !x.is_zero()) {
            out.insert(primitive_direction(&p));
        }
    }
    out.into_iter().collect()
}

/// Double description: generators `(rays, lineality)` of `{x : <a, x> >= 0}`.
pub(crate) fn double_description(n: usize, ineqs: &[IntVector]) -> (IntMatrix, IntMatrix) {
    let mut lin: IntMatrix = identity(n);
    let mut rays: IntMatrix = Vec::new();
    let mut zeros: Vec<Vec<bool>> = Vec::new();
    let mut processed = 0;
    for a in ineqs {
        if is_zero(a) {
            continue;
        }
        if let Some(k) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lin.remove(k);
            if dot(a, &l).is_negative() {
                l = scale(&l, &Int::from(-1));
            }
            let al = dot(a, &l);
            for m in lin.iter_mut() {
                let am = dot(a, m);
                *m = primitive_part(&sub(&scale(m, &al), &scale(&l, &am)));
            }
            for (r, z) in rays.iter_mut().zip(zeros.iter_mut()) {
                let ar = dot(a, r);
                *r = primitive_part(&sub(&scale(r, &al), &scale(&l, &ar)));
                z.push(true);
            }
            let mut zl = vec![true; processed];
            zl.push(false);
            rays.push(l);
            zeros.push(zl);
            processed += 1;
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next_rays = Vec::new();
        let mut next_zeros = Vec::new();
        for i in 0..rays.len() {
            if !vals[i].is_negative() {
                let mut z = zeros[i].clone();
                z.push(vals[i].is_zero());
                next_rays.push(rays[i].clone());
                next_zeros.push(z);
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common: Vec<bool> = zeros[p].iter().zip(&zeros[q]).map(|(x, y)| *x && *y).collect();
                let adjacent = (0..rays.len()).all(|r| {
                    r == p || r == q || !common.iter().zip(&zeros[r]).all(|(c, z)| !*c || *z)
                });
                if adjacent {
                    let v = sub(&scale(&rays[q], &vals[p]), &scale(&rays[p], &vals[q]));
                    next_rays.push(primitive_part(&v));
                    let mut z = common;
                    z.push(true);
                    next_zeros.push(z);
                }
            }
        }
        rays = next_rays;
        zeros = next_zeros;
        processed += 1;
    }
    (rays, lin)
}
