//! New uniformizers making a series an exact power.
//!
//! For `f = a_d t^d (1 + Σ_{j≥1} (a_{d+j}/a_d) t^j)` the uniformizer
//! `t' = ρ t (1 + Σ (a_{d+j}/a_d) t^j)^{1/d}` with `ρ^d = a_d` satisfies
//! `t'^d = f`, and its reversion expresses `t` back in `t'`.

use num_traits::One;

use super::field::{Field, Radical};
use super::series::{Order, TruncatedSeries};
use crate::error::{Error, Result};
use crate::linalg::{Int, Rat};

#[derive(Clone, Debug)]
pub struct CanonicalExtension<F> {
    /// Order of the input series.
    pub d: usize,
    /// An element of `L` with `ρ^d = a_d`.
    pub rho: Radical<F>,
    /// `t'` as a series in `t`.
    pub t_prime: TruncatedSeries<Radical<F>>,
    /// `t` as a series in `t'`, so that `L[[t]] = L[[t']]`.
    pub inverse: TruncatedSeries<Radical<F>>,
    /// `t'^d ≡ f` modulo `t^precision`.
    pub precision: usize,
}

impl<F: Field> CanonicalExtension<F> {
    /// Degree of `L` over the coefficient field of the input.
    pub fn degree(&self) -> usize {
        self.rho.degree()
    }

    /// Rewrites a series in `t` (over the base field) as a series in `t'`.
    pub fn reexpand(&self, s: &TruncatedSeries<F>) -> Result<TruncatedSeries<Radical<F>>> {
        let lifted = lift(s, &self.rho);
        lifted.compose(&self.inverse)
    }
}

fn lift<F: Field>(s: &TruncatedSeries<F>, proto: &Radical<F>) -> TruncatedSeries<Radical<F>> {
    s.map(|c| proto.embed(c), proto.zero_like())
}

/// `ρ` with `ρ^d = a` in the smallest radical extension this crate can
/// certify: no extension when `a` is a `d`-th power, otherwise a root of
/// `X^{d/e} - c` where `a = c^e` with `e` maximal.
pub fn root_of<F: Field>(d: usize, a: &F) -> Result<Radical<F>> {
    let trivial = Radical::trivial(a);
    for e in (1..=d).rev().filter(|e| d.is_multiple_of(*e)) {
        let Some(c) = a.root(e as u32) else {
            continue;
        };
        let d2 = d / e;
        if d2 == 1 {
            return Ok(trivial.embed(&c));
        }
        if let Some(rho) = Radical::adjoin(d2, c.clone()) {
            return Ok(rho);
        }
        // X^4 - c with c = -4w^4 splits over Q(i): (w(1+i))^4 = c.
        let w = c.neg().scale(&Rat::new(Int::one(), Int::from(4))).root(4);
        if let (4, Some(w)) = (d2, w) {
            let i = Radical::adjoin(2, a.from_rat_like(&Rat::from_integer(Int::from(-1)))).expect("i is not rational");
            let rho = i.add(&i.one_like()).mul(&i.embed(&w));
            return Ok(rho);
        }
        return Err(Error::Invalid(format!("cannot adjoin a root of X^{d2} - c")));
    }
    unreachable!("every element is a first power")
}

/// Canonical extension of a series of order `d ≥ 1`. Exact inputs are
/// expanded modulo `t^cap`.
pub fn canonical_extension<F: Field>(f: &TruncatedSeries<F>, cap: usize) -> Result<CanonicalExtension<F>> {
    let d = match f.order() {
        Order::Exact(0) => return Err(Error::Invalid("series must have positive order".into())),
        Order::Exact(d) => d,
        Order::AtLeast(_) | Order::Infinite => return Err(Error::ZeroSeries),
    };
    let total = f.precision().unwrap_or(cap.max(d + 1));
    let a = f.coeff(d).expect("known leading coefficient").clone();
    let rho = root_of(d, &a)?;
    let a_inv = a.inv().expect("nonzero leading coefficient");
    let unit_coeffs: Vec<F> = (d..total).map(|j| f.coeff(j).expect("within precision").mul(&a_inv)).collect();
    let unit = TruncatedSeries::truncated(unit_coeffs, total - d, a.zero_like());
    let alpha = Rat::new(Int::one(), Int::from(d));
    let w = unit.power_rational(&alpha, total - d)?;
    let t_prime = lift(&w, &rho).scale(&rho).shift(1);
    let window = total - d + 1;
    let check = t_prime.pow(d as u32);
    if !check.agrees_through(&lift(f, &rho), total) {
        return Err(Error::Verification("t'^d differs from f".into()));
    }
    let inverse = t_prime.reversion(window)?;
    let t = TruncatedSeries::monomial(rho.one_like(), 1);
    if !t_prime.compose(&inverse)?.agrees_through(&t, window) || !inverse.compose(&t_prime)?.agrees_through(&t, window) {
        return Err(Error::Verification("reversion does not invert t'".into()));
    }
    Ok(CanonicalExtension { d, rho, t_prime, inverse, precision: total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::arc::ratfun::RationalFunction;
    use crate::linalg::rat;

    fn q(coeffs: &[(i64, i64)]) -> TruncatedSeries<Rat> {
        TruncatedSeries::exact(coeffs.iter().map(|&(n, d)| rat(n, d)).collect(), Rat::zero())
    }

    #[test]
    fn already_a_power() {
        let ext = canonical_extension(&q(&[(0, 1), (0, 1), (1, 1)]), 8).unwrap();
        assert_eq!(ext.degree(), 1);
        let t = TruncatedSeries::monomial(ext.rho.one_like(), 1);
        assert!(ext.t_prime.agrees_through(&t, ext.precision - 1));
    }

    #[test]
    fn cube_root_of_four_is_adjoined() {
        let ext = canonical_extension(&q(&[(0, 1), (0, 1), (0, 1), (4, 1)]), 8).unwrap();
        assert_eq!(ext.degree(), 3);
        assert_eq!(ext.rho.pow(3).as_base(), Some(&rat(4, 1)));
    }

    #[test]
    fn square_root_of_one_plus_t() {
        let ext = canonical_extension(&TruncatedSeries::truncated(vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 1)], 9, Rat::zero()), 9).unwrap();
        let expected = [(0, 1), (1, 1), (1, 2), (-1, 8), (1, 16)];
        for (j, &(n, d)) in expected.iter().enumerate() {
            assert_eq!(ext.t_prime.coeff(j).unwrap().as_base(), Some(&rat(n, d)));
        }
    }

    #[test]
    fn minus_four_splits_over_gaussian_rationals() {
        let ext = canonical_extension(&q(&[(0, 1), (0, 1), (0, 1), (0, 1), (-4, 1), (1, 1)]), 10).unwrap();
        assert_eq!(ext.degree(), 2);
        assert_eq!(ext.rho.pow(4).as_base(), Some(&rat(-4, 1)));
    }

    #[test]
    fn symbolic_leading_coefficient() {
        let a = RationalFunction::symbol(0);
        let f = TruncatedSeries::exact(vec![RationalFunction::zero(), RationalFunction::zero(), a.clone(), RationalFunction::one()], RationalFunction::zero());
        let ext = canonical_extension(&f, 8).unwrap();
        assert_eq!(ext.degree(), 2);
        let y = TruncatedSeries::monomial(a.clone(), 1);
        let re = ext.reexpand(&y).unwrap();
        assert_eq!(re.order(), Order::Exact(1));
    }
}
