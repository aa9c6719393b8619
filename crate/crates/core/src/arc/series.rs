//! Truncated power series in `t` over a [`Field`].
//!
//! A series is either exact (a polynomial in `t`) or known modulo `t^T`
//! for its precision `T`. Every operation propagates the precision it can
//! certify and never reports coefficients beyond it.

use num_traits::{One, Zero};

use super::field::Field;
use crate::error::{Error, Result};
use crate::linalg::{Int, Rat};

/// The `t`-adic order of a series, as far as its precision shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Exact(usize),
    /// Every known coefficient vanishes; the order is at least this value.
    AtLeast(usize),
    Infinite,
}

impl Order {
    pub fn exact(self) -> Option<usize> {
        match self {
            Order::Exact(k) => Some(k),
            _ => None,
        }
    }

    /// A lower bound usable in precision arithmetic.
    fn lower_bound(self) -> Option<usize> {
        match self {
            Order::Exact(k) | Order::AtLeast(k) => Some(k),
            Order::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<F> {
    coeffs: Vec<F>,
    precision: Option<usize>,
    zero: F,
}

fn min_precision(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<F: Field> TruncatedSeries<F> {
    fn build(mut coeffs: Vec<F>, precision: Option<usize>, zero: F) -> TruncatedSeries<F> {
        if let Some(t) = precision {
            coeffs.truncate(t);
        }
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        TruncatedSeries { coeffs, precision, zero }
    }

    /// The polynomial `Σ c_j t^j`, known exactly.
    pub fn exact(coeffs: Vec<F>, zero: F) -> TruncatedSeries<F> {
        TruncatedSeries::build(coeffs, None, zero)
    }

    /// A series whose coefficients beyond `t^{precision - 1}` are unknown.
    pub fn truncated(coeffs: Vec<F>, precision: usize, zero: F) -> TruncatedSeries<F> {
        TruncatedSeries::build(coeffs, Some(precision), zero)
    }

    pub fn zero(prototype: &F) -> TruncatedSeries<F> {
        TruncatedSeries::exact(Vec::new(), prototype.zero_like())
    }

    pub fn constant(c: F) -> TruncatedSeries<F> {
        let zero = c.zero_like();
        TruncatedSeries::exact(vec![c], zero)
    }

    /// `c t^k`.
    pub fn monomial(c: F, k: usize) -> TruncatedSeries<F> {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        TruncatedSeries::exact(coeffs, zero)
    }

    pub fn precision(&self) -> Option<usize> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    pub fn prototype(&self) -> &F {
        &self.zero
    }

    /// Coefficient of `t^j`; `None` when beyond the precision.
    pub fn coeff(&self, j: usize) -> Option<&F> {
        if self.precision.is_some_and(|t| j >= t) {
            return None;
        }
        Some(self.coeffs.get(j).unwrap_or(&self.zero))
    }

    /// Stored coefficients; later ones are zero (exact) or unknown.
    pub fn coefficients(&self) -> &[F] {
        &self.coeffs
    }

    /// Number of coefficients that are known, or the stored length for exact series.
    pub fn known_len(&self) -> usize {
        self.precision.unwrap_or(self.coeffs.len())
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Order::Exact(k),
            None => match self.precision {
                Some(t) => Order::AtLeast(t),
                None => Order::Infinite,
            },
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G, zero: G) -> TruncatedSeries<G> {
        TruncatedSeries::build(self.coeffs.iter().map(f).collect(), self.precision, zero)
    }

    /// Drops coefficients from `t^p` on, lowering the precision to `p`.
    pub fn truncate(&self, p: usize) -> TruncatedSeries<F> {
        TruncatedSeries::build(self.coeffs.clone(), min_precision(self.precision, Some(p)), self.zero.clone())
    }

    pub fn add(&self, o: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|j| match (self.coeffs.get(j), o.coeffs.get(j)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        TruncatedSeries::build(coeffs, min_precision(self.precision, o.precision), self.zero.clone())
    }

    pub fn neg(&self) -> TruncatedSeries<F> {
        TruncatedSeries::build(self.coeffs.iter().map(Field::neg).collect(), self.precision, self.zero.clone())
    }

    pub fn sub(&self, o: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &F) -> TruncatedSeries<F> {
        TruncatedSeries::build(self.coeffs.iter().map(|x| x.mul(c)).collect(), self.precision, self.zero.clone())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> TruncatedSeries<F> {
        let mut coeffs = vec![self.zero.clone(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries::build(coeffs, self.precision.map(|t| t + k), self.zero.clone())
    }

    /// Product; known modulo `t^min(Ta + ord b, Tb + ord a)`.
    pub fn mul(&self, o: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        let (Some(va), Some(vb)) = (self.order().lower_bound(), o.order().lower_bound()) else {
            return TruncatedSeries::zero(&self.zero);
        };
        let precision = min_precision(self.precision.map(|t| t + vb), o.precision.map(|t| t + va));
        let mut out_len = (self.coeffs.len() + o.coeffs.len()).saturating_sub(1);
        if let Some(p) = precision {
            out_len = out_len.min(p);
        }
        let mut coeffs = vec![self.zero.clone(); out_len];
        for (i, a) in self.coeffs.iter().enumerate().take(out_len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(out_len - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        TruncatedSeries::build(coeffs, precision, self.zero.clone())
    }

    pub fn pow(&self, k: u32) -> TruncatedSeries<F> {
        let mut acc = TruncatedSeries::constant(self.zero.one_like());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse of an order-zero series, computed modulo
    /// `t^cap` (or the input precision, if smaller).
    pub fn invert(&self, cap: usize) -> Result<TruncatedSeries<F>> {
        if self.coeffs.is_empty() && self.precision.is_none() {
            return Err(Error::ZeroSeries);
        }
        let c0 = self.coeff(0).ok_or(Error::NotInvertible)?;
        let inv0 = c0.inv().ok_or(Error::NotInvertible)?;
        let precision = min_precision(self.precision, Some(cap)).expect("finite");
        let mut b: Vec<F> = Vec::with_capacity(precision);
        if precision > 0 {
            b.push(inv0.clone());
        }
        for n in 1..precision {
            let mut s = self.zero.clone();
            for k in 1..=n.min(self.coeffs.len().saturating_sub(1)) {
                if !self.coeffs[k].is_zero() {
                    s = s.add(&self.coeffs[k].mul(&b[n - k]));
                }
            }
            b.push(s.mul(&inv0).neg());
        }
        Ok(TruncatedSeries::truncated(b, precision, self.zero.clone()))
    }

    /// `self^α` for a series with constant term one, via the recurrence
    /// `n b_n = Σ_{k=1}^{n} ((α + 1) k - n) a_k b_{n-k}`.
    pub fn power_rational(&self, alpha: &Rat, cap: usize) -> Result<TruncatedSeries<F>> {
        let c0 = self.coeff(0).ok_or(Error::NotInvertible)?;
        if !c0.is_one() {
            return Err(Error::Invalid("constant term must be one".into()));
        }
        let precision = min_precision(self.precision, Some(cap)).expect("finite");
        let mut b: Vec<F> = Vec::with_capacity(precision);
        if precision > 0 {
            b.push(self.zero.one_like());
        }
        let alpha1 = alpha + Rat::one();
        for n in 1..precision {
            let mut s = self.zero.clone();
            for k in 1..=n.min(self.coeffs.len().saturating_sub(1)) {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let w = &alpha1 * Rat::from_integer(Int::from(k)) - Rat::from_integer(Int::from(n));
                if Zero::is_zero(&w) {
                    continue;
                }
                s = s.add(&self.coeffs[k].mul(&b[n - k]).scale(&w));
            }
            b.push(s.scale(&Rat::new(Int::one(), Int::from(n))));
        }
        Ok(TruncatedSeries::truncated(b, precision, self.zero.clone()))
    }

    /// `self(h(t))` for `h` of positive order. When both are exact the
    /// result is exact; otherwise it is kept to the certified precision.
    pub fn compose(&self, h: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
        let v = match h.order() {
            Order::Exact(0) => return Err(Error::Invalid("inner series must have positive order".into())),
            Order::Exact(k) => k,
            Order::AtLeast(k) if k > 0 => k,
            Order::AtLeast(_) => return Err(Error::Invalid("inner series order unknown".into())),
            Order::Infinite => {
                let c0 = self.coeff(0).ok_or(Error::Invalid("unknown constant term".into()))?;
                return Ok(TruncatedSeries::constant(c0.clone()));
            }
        };
        let cap = match (self.precision, h.precision) {
            (None, None) => None,
            (a, b) => min_precision(a.map(|t| t * v), b),
        };
        let limit = |s: TruncatedSeries<F>| match cap {
            Some(p) => s.truncate(p),
            None => s,
        };
        let mut acc = TruncatedSeries::zero(&self.zero);
        for c in self.coeffs.iter().rev() {
            acc = limit(acc.mul(h).add(&TruncatedSeries::constant(c.clone())));
        }
        Ok(match cap {
            Some(p) => acc.truncate(p),
            None => acc,
        })
    }

    /// Compositional inverse of an order-one series: `self(r(u)) = u`,
    /// computed modulo `t^cap` (or the input precision, if smaller).
    ///
    /// Writing `self = t φ(t)`, Lagrange inversion gives
    /// `[u^n] r = (1/n) [t^{n-1}] φ^{-n}`.
    pub fn reversion(&self, cap: usize) -> Result<TruncatedSeries<F>> {
        if self.order() != Order::Exact(1) {
            return Err(Error::Invalid("reversion needs a series of order exactly one".into()));
        }
        let precision = min_precision(self.precision, Some(cap)).expect("finite");
        if precision <= 1 {
            return Ok(TruncatedSeries::truncated(Vec::new(), precision, self.zero.clone()));
        }
        let phi = TruncatedSeries::build(self.coeffs[1..].to_vec(), self.precision.map(|t| t - 1), self.zero.clone());
        let psi = phi.invert(precision - 1)?;
        let mut coeffs = vec![self.zero.clone(); precision];
        let mut power = TruncatedSeries::constant(self.zero.one_like());
        for n in 1..precision {
            power = power.mul(&psi).truncate(precision - 1);
            if let Some(c) = power.coeff(n - 1) {
                coeffs[n] = c.scale(&Rat::new(Int::one(), Int::from(n)));
            }
        }
        Ok(TruncatedSeries::truncated(coeffs, precision, self.zero.clone()))
    }

    /// Agreement on every coefficient both sides know.
    pub fn agrees_with(&self, o: &TruncatedSeries<F>) -> bool {
        let n = match min_precision(self.precision, o.precision) {
            Some(p) => p,
            None => self.coeffs.len().max(o.coeffs.len()),
        };
        (0..n).all(|j| self.coeff(j) == o.coeff(j))
    }

    /// Agreement through `t^{p-1}`, failing when either side is not known that far.
    pub fn agrees_through(&self, o: &TruncatedSeries<F>, p: usize) -> bool {
        (0..p).all(|j| match (self.coeff(j), o.coeff(j)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn q(coeffs: &[(i64, i64)]) -> TruncatedSeries<Rat> {
        TruncatedSeries::exact(coeffs.iter().map(|&(n, d)| rat(n, d)).collect(), Rat::zero())
    }

    #[test]
    fn difference_of_squares() {
        let a = q(&[(1, 1), (1, 1)]);
        let b = q(&[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b), q(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn geometric_series() {
        let inv = q(&[(1, 1), (1, 1)]).invert(6).unwrap();
        let expected: Vec<Rat> = (0..6).map(|j| rat(if j % 2 == 0 { 1 } else { -1 }, 1)).collect();
        assert_eq!(inv, TruncatedSeries::truncated(expected, 6, Rat::zero()));
        assert_eq!(q(&[(0, 1), (1, 1)]).invert(4), Err(Error::NotInvertible));
    }

    #[test]
    fn precision_of_products() {
        let a = TruncatedSeries::truncated(vec![rat(0, 1), rat(1, 1)], 5, Rat::zero());
        let b = TruncatedSeries::truncated(vec![rat(0, 1), rat(0, 1), rat(1, 1)], 4, Rat::zero());
        let p = a.mul(&b);
        assert_eq!(p.precision(), Some(5));
        assert_eq!(p.order(), Order::Exact(3));
    }

    #[test]
    fn square_root_by_binomial_series() {
        let one_plus_t = q(&[(1, 1), (1, 1)]);
        let s = one_plus_t.power_rational(&rat(1, 2), 5).unwrap();
        let expected = [(1, 1), (1, 2), (-1, 8), (1, 16), (-5, 128)];
        assert_eq!(s, TruncatedSeries::truncated(expected.iter().map(|&(n, d)| rat(n, d)).collect(), 5, Rat::zero()));
    }

    #[test]
    fn reversion_of_exp_minus_one() {
        let e = TruncatedSeries::truncated(
            vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 6), rat(1, 24), rat(1, 120)],
            6,
            Rat::zero(),
        );
        let r = e.reversion(6).unwrap();
        let log = [(0, 1), (1, 1), (-1, 2), (1, 3), (-1, 4), (1, 5)];
        assert_eq!(r, TruncatedSeries::truncated(log.iter().map(|&(n, d)| rat(n, d)).collect(), 6, Rat::zero()));
        let t = TruncatedSeries::monomial(rat(1, 1), 1);
        assert!(e.compose(&r).unwrap().agrees_through(&t, 6));
    }

    #[test]
    fn exact_composition() {
        let f = q(&[(0, 1), (0, 1), (1, 1)]);
        let h = q(&[(0, 1), (1, 1), (1, 1)]);
        assert_eq!(f.compose(&h).unwrap(), q(&[(0, 1), (0, 1), (1, 1), (2, 1), (1, 1)]));
    }
}
