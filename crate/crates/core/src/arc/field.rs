//! Coefficient fields for truncated series: the rationals, rational
//! functions in the symbols, and simple radical extensions `F[ρ]/(ρ^d - a)`.

use std::fmt::Debug;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::rat_root;
use super::ratfun::RationalFunction;
use crate::linalg::Rat;

/// A field of characteristic zero. Elements carry enough context to build
/// other elements of the same field (`zero_like`, `from_rat_like`), which
/// lets radical extensions travel without a separate context object.
pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rat_like(&self, q: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    fn scale(&self, q: &Rat) -> Self {
        self.mul(&self.from_rat_like(q))
    }

    fn pow(&self, k: u32) -> Self {
        (0..k).fold(self.one_like(), |acc, _| acc.mul(self))
    }

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    /// A `k`-th root inside the field, when one can be found.
    fn root(&self, _k: u32) -> Option<Self> {
        None
    }
}

/// A field generated over `Q` by finitely many symbols, possibly followed by
/// an algebraic extension. Supplies what the Jacobian test needs.
pub trait Symbolic: Field {
    /// Degree of the algebraic part over the rational function field.
    fn extension_degree(&self) -> usize;

    /// Matrix of multiplication by `self` over the rational function field,
    /// in the power basis of the algebraic part.
    fn realify(&self) -> Vec<Vec<RationalFunction>>;

    /// The unique extension of `∂/∂a_var`.
    fn partial(&self, var: usize) -> Self;

    /// Number of symbols that occur.
    fn num_symbols(&self) -> usize;
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }

    fn one_like(&self) -> Self {
        Rat::one()
    }

    fn from_rat_like(&self, q: &Rat) -> Self {
        q.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn scale(&self, q: &Rat) -> Self {
        self * q
    }

    fn root(&self, k: u32) -> Option<Self> {
        rat_root(self, k)
    }
}

impl Symbolic for Rat {
    fn extension_degree(&self) -> usize {
        1
    }

    fn realify(&self) -> Vec<Vec<RationalFunction>> {
        vec![vec![RationalFunction::constant(self.clone())]]
    }

    fn partial(&self, _var: usize) -> Self {
        Rat::zero()
    }

    fn num_symbols(&self) -> usize {
        0
    }
}

impl Field for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero()
    }

    fn one_like(&self) -> Self {
        RationalFunction::one()
    }

    fn from_rat_like(&self, q: &Rat) -> Self {
        RationalFunction::constant(q.clone())
    }

    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }

    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }

    fn sub(&self, o: &Self) -> Self {
        RationalFunction::sub(self, o)
    }

    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }

    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }

    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self)
    }

    fn scale(&self, q: &Rat) -> Self {
        RationalFunction::scale(self, q)
    }

    fn pow(&self, k: u32) -> Self {
        RationalFunction::pow(self, k)
    }

    fn is_one(&self) -> bool {
        RationalFunction::is_one(self)
    }

    fn root(&self, k: u32) -> Option<Self> {
        RationalFunction::root(self, k)
    }
}

impl Symbolic for RationalFunction {
    fn extension_degree(&self) -> usize {
        1
    }

    fn realify(&self) -> Vec<Vec<RationalFunction>> {
        vec![vec![self.clone()]]
    }

    fn partial(&self, var: usize) -> Self {
        RationalFunction::partial(self, var)
    }

    fn num_symbols(&self) -> usize {
        self.num_vars()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Modulus<F> {
    degree: usize,
    radicand: F,
}

/// An element `c_0 + c_1 ρ + ... + c_{d-1} ρ^{d-1}` of `F[ρ]/(ρ^d - a)`.
///
/// The quotient is a field exactly when `X^d - a` is irreducible over `F`;
/// [`Radical::adjoin`] only builds such extensions when it can check this.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Radical<F> {
    modulus: Arc<Modulus<F>>,
    coeffs: Vec<F>,
}

/// Precondition check for [`Radical::adjoin`]: `X^d - a` is irreducible
/// over `F` (for prime divisors `p` of `d`, `a` is not a `p`-th power, and
/// when `4 | d`, `-a/4` is not a fourth power).
pub fn binomial_is_irreducible<F: Field>(d: usize, a: &F) -> bool {
    if a.is_zero() {
        return d == 1;
    }
    let mut m = d;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            if a.root(p as u32).is_some() {
                return false;
            }
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if d.is_multiple_of(4) {
        let q = a.neg().scale(&Rat::new(1.into(), 4.into()));
        if q.root(4).is_some() {
            return false;
        }
    }
    true
}

impl<F: Field> Radical<F> {
    /// The field `F[ρ]/(ρ^d - a)` together with its generator `ρ`.
    pub fn adjoin(d: usize, a: F) -> Option<Radical<F>> {
        if d == 0 || !binomial_is_irreducible(d, &a) {
            return None;
        }
        let zero = a.zero_like();
        let one = a.one_like();
        let modulus = Arc::new(Modulus { degree: d, radicand: a });
        let mut coeffs = vec![zero; d];
        if d == 1 {
            coeffs[0] = modulus.radicand.clone();
        } else {
            coeffs[1] = one;
        }
        Some(Radical { modulus, coeffs })
    }

    /// The trivial extension of `F` (degree one), realizing `F` inside the
    /// same type as its proper radical extensions.
    pub fn trivial(prototype: &F) -> Radical<F> {
        Radical {
            modulus: Arc::new(Modulus { degree: 1, radicand: prototype.one_like() }),
            coeffs: vec![prototype.zero_like()],
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree
    }

    pub fn radicand(&self) -> &F {
        &self.modulus.radicand
    }

    pub fn coefficients(&self) -> &[F] {
        &self.coeffs
    }

    /// The image of a base-field element.
    pub fn embed(&self, x: &F) -> Radical<F> {
        let mut coeffs = vec![x.zero_like(); self.degree()];
        coeffs[0] = x.clone();
        Radical { modulus: self.modulus.clone(), coeffs }
    }

    /// The base-field element, if `self` lies in `F`.
    pub fn as_base(&self) -> Option<&F> {
        self.coeffs[1..].iter().all(Field::is_zero).then(|| &self.coeffs[0])
    }

    fn with(&self, coeffs: Vec<F>) -> Radical<F> {
        Radical { modulus: self.modulus.clone(), coeffs }
    }

    /// Coefficient matrix over `F` of multiplication by `self`; column `k`
    /// holds `self * ρ^k`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<F>> {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.coeffs.clone());
            cur = cur.times_rho();
        }
        (0..d).map(|i| (0..d).map(|k| cols[k][i].clone()).collect()).collect()
    }

    fn times_rho(&self) -> Radical<F> {
        let d = self.degree();
        let mut c = Vec::with_capacity(d);
        c.push(self.coeffs[d - 1].mul(self.radicand()));
        c.extend(self.coeffs[..d - 1].iter().cloned());
        self.with(c)
    }
}

impl<F: Field> Field for Radical<F> {
    fn zero_like(&self) -> Self {
        self.with(vec![self.coeffs[0].zero_like(); self.degree()])
    }

    fn one_like(&self) -> Self {
        self.embed(&self.coeffs[0].one_like())
    }

    fn from_rat_like(&self, q: &Rat) -> Self {
        self.embed(&self.coeffs[0].from_rat_like(q))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    fn add(&self, o: &Self) -> Self {
        self.with(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        self.with(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let d = self.degree();
        let zero = self.coeffs[0].zero_like();
        let mut full = vec![zero.clone(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] = full[i + j].add(&a.mul(b));
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            if !full[k].is_zero() {
                let t = full[k].mul(self.radicand());
                full[k - d] = full[k - d].add(&t);
            }
        }
        full.truncate(d);
        self.with(full)
    }

    fn neg(&self) -> Self {
        self.with(self.coeffs.iter().map(Field::neg).collect())
    }

    fn inv(&self) -> Option<Self> {
        if let Some(b) = self.as_base() {
            return Some(self.embed(&b.inv()?));
        }
        let m = self.multiplication_matrix();
        let mut rhs = vec![self.coeffs[0].zero_like(); self.degree()];
        rhs[0] = self.coeffs[0].one_like();
        solve(m, rhs).map(|c| self.with(c))
    }

    fn scale(&self, q: &Rat) -> Self {
        self.with(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }

    fn root(&self, k: u32) -> Option<Self> {
        Some(self.embed(&self.as_base()?.root(k)?))
    }
}

impl<F: Symbolic> Symbolic for Radical<F> {
    fn extension_degree(&self) -> usize {
        self.degree() * self.coeffs[0].extension_degree()
    }

    fn realify(&self) -> Vec<Vec<RationalFunction>> {
        let d = self.degree();
        let inner = self.coeffs[0].extension_degree();
        let blocks: Vec<Vec<Vec<Vec<RationalFunction>>>> = self
            .multiplication_matrix()
            .iter()
            .map(|row| row.iter().map(Symbolic::realify).collect())
            .collect();
        let n = d * inner;
        let mut out = vec![vec![RationalFunction::zero(); n]; n];
        for (bi, brow) in blocks.iter().enumerate() {
            for (bj, block) in brow.iter().enumerate() {
                for (i, row) in block.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        out[bi * inner + i][bj * inner + j] = x.clone();
                    }
                }
            }
        }
        out
    }

    /// With `ρ^d = a`, `∂ρ = ρ ∂a / (d a)`, so `∂(Σ c_k ρ^k) = Σ (∂c_k + k c_k ∂a / (d a)) ρ^k`.
    fn partial(&self, var: usize) -> Self {
        let d = self.degree();
        let a = self.radicand();
        let da = a.partial(var);
        let ratio = if da.is_zero() {
            da.zero_like()
        } else {
            da.mul(&a.scale(&Rat::from_integer(d.into())).inv().expect("nonzero radicand"))
        };
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let base = c.partial(var);
                    if k == 0 || ratio.is_zero() || c.is_zero() {
                        base
                    } else {
                        base.add(&c.mul(&ratio).scale(&Rat::from_integer(k.into())))
                    }
                })
                .collect(),
        )
    }

    fn num_symbols(&self) -> usize {
        self.coeffs
            .iter()
            .map(Symbolic::num_symbols)
            .chain(std::iter::once(self.radicand().num_symbols()))
            .max()
            .unwrap_or(0)
    }
}

/// Row echelon form over a field; returns the rank.
pub fn rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..cols {
                let t = m[r][j].mul(&f);
                m[i][j] = m[i][j].sub(&t);
            }
        }
        r += 1;
    }
    r
}

/// Solves the square system `m x = b`; `None` when `m` is singular.
pub fn solve<F: Field>(mut m: Vec<Vec<F>>, mut b: Vec<F>) -> Option<Vec<F>> {
    let n = m.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        b.swap(c, p);
        let inv = m[c][c].inv()?;
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..n {
                let t = m[c][j].mul(&f);
                m[i][j] = m[i][j].sub(&t);
            }
            let t = b[c].mul(&f);
            b[i] = b[i].sub(&t);
        }
    }
    Some((0..n).map(|i| b[i].mul(&m[i][i].inv().expect("pivot"))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn cube_root_of_four() {
        let rho = Radical::adjoin(3, rat(4, 1)).unwrap();
        let cube = rho.pow(3);
        assert_eq!(cube.as_base(), Some(&rat(4, 1)));
        let inv = rho.inv().unwrap();
        assert!(inv.mul(&rho).is_one());
        assert!(Radical::adjoin(3, rat(8, 1)).is_none());
        assert!(Radical::adjoin(4, rat(-4, 1)).is_none());
        assert!(Radical::adjoin(2, rat(-1, 1)).is_some());
    }

    #[test]
    fn inverse_of_a_general_element() {
        let rho = Radical::adjoin(2, RationalFunction::symbol(0)).unwrap();
        let e = rho.add(&rho.one_like());
        let inv = e.inv().unwrap();
        assert!(e.mul(&inv).is_one());
    }

    #[test]
    fn derivative_of_a_square_root() {
        let a = RationalFunction::symbol(0);
        let rho = Radical::adjoin(2, a.clone()).unwrap();
        let d = Symbolic::partial(&rho, 0);
        // (sqrt a)' = sqrt(a) / (2a)
        let expected = rho.mul(&rho.embed(&a.scale(&rat(2, 1)).inv().unwrap()));
        assert_eq!(d, expected);
        assert!(Symbolic::partial(&rho.pow(2), 0).is_one());
    }

    #[test]
    fn tower_of_depth_two() {
        let i = Radical::adjoin(2, rat(-1, 1)).unwrap();
        let two = i.from_rat_like(&rat(2, 1));
        let sqrt2 = Radical::adjoin(2, two.clone()).unwrap();
        assert_eq!(sqrt2.extension_degree(), 4);
        let prod = sqrt2.mul(&sqrt2.embed(&i));
        assert_eq!(prod.pow(2), sqrt2.embed(&two.neg()));
        assert_eq!(prod.realify().len(), 4);
    }

    #[test]
    fn ranks() {
        let m = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert_eq!(rank(m), 1);
    }
}
