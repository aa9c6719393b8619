//! Rational functions in the symbols `a_1, ..., a_k` over the rationals,
//! kept in lowest terms with a monic denominator.

use std::fmt;

use num_traits::Zero;

use super::poly::{self, Poly};
use crate::linalg::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn zero() -> RationalFunction {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn constant(c: Rat) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn symbol(i: usize) -> RationalFunction {
        RationalFunction::from_poly(Poly::var(i))
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        RationalFunction { num: p, den: Poly::one() }
    }

    /// `num / den` in lowest terms; `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<RationalFunction> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RationalFunction::zero());
        }
        if let Some(c) = den.as_constant() {
            return Some(RationalFunction { num: num.scale(&c.recip()), den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coefficient();
        Some(RationalFunction { num: num.scale(&lc.recip()), den: den.scale(&lc.recip()) })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars().max(self.den.num_vars())
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return RationalFunction { num, den: Poly::one() };
            }
            return RationalFunction::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RationalFunction::new(num, self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalFunction) -> RationalFunction {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction { num: self.num.mul(&o.num), den: Poly::one() };
        }
        RationalFunction::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn scale(&self, k: &Rat) -> RationalFunction {
        if k.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: u32) -> RationalFunction {
        RationalFunction { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Value at a rational point, or `None` at a pole.
    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn partial(&self, var: usize) -> RationalFunction {
        let dn = self.num.partial(var);
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return RationalFunction { num: dn, den: self.den.clone() };
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        RationalFunction::new(num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// A `k`-th root inside the field, if one exists.
    pub fn root(&self, k: u32) -> Option<RationalFunction> {
        let n = self.num.root(k)?;
        let d = self.den.root(k)?;
        RationalFunction::new(n, d)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayRf { rf: self, names }
    }
}

struct DisplayRf<'a> {
    rf: &'a RationalFunction,
    names: &'a [String],
}

impl fmt::Display for DisplayRf<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = poly::Display { poly: &self.rf.num, names: self.names };
        if self.rf.den.is_one() {
            return write!(f, "{num}");
        }
        let den = poly::Display { poly: &self.rf.den, names: self.names };
        let wrap = |p: &Poly| p.len() > 1 || p.as_constant().is_none();
        match (wrap(&self.rf.num), wrap(&self.rf.den)) {
            (true, true) => write!(f, "({num})/({den})"),
            (true, false) => write!(f, "({num})/{den}"),
            (false, true) => write!(f, "{num}/({den})"),
            (false, false) => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&[]))
    }
}
