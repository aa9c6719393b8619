//! Laurent polynomials, monomial valuations `val_v(f) = min ⟨v, u⟩` over
//! the support of `f`, and orders of vanishing along arcs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arc::expr::{parse_expr, ExprContext};
use crate::arc::field::Field;
use crate::arc::series::Order;
use crate::arc::{compose_into, SymbolicArc};
use crate::error::{Error, Result};
use crate::linalg::{add, dot, dot_iq, Int, IntVector, Rat};

/// A finite sum `Σ b_u x^u` with `u ∈ Z^n` and nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial<C = Rat> {
    nvars: usize,
    terms: BTreeMap<IntVector, C>,
}

impl<C: Field> LaurentPolynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(c: C, u: IntVector) -> Self {
        let mut p = LaurentPolynomial::zero(u.len());
        p.add_term(u, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (IntVector, C)>) -> Result<Self> {
        let mut p = LaurentPolynomial::zero(nvars);
        for (u, c) in terms {
            if u.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: u.len() });
            }
            p.add_term(u, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, u: IntVector, c: C) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&u) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(u, merged);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &IntVector> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, u: &[Int]) -> Option<&C> {
        self.terms.get(u)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (u, c) in &o.terms {
            r.add_term(u.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(u, c)| (u.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = LaurentPolynomial::zero(self.nvars);
        for (u, a) in &self.terms {
            for (w, b) in &o.terms {
                r.add_term(add(u, w), a.mul(b));
            }
        }
        r
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|u| u.iter().any(Signed::is_negative))
    }
}

impl LaurentPolynomial<Rat> {
    /// Reads terms such as `3/2*x1^2*x2^-1 - x3`; `x`, `y`, `z` stand for
    /// `x1`, `x2`, `x3`.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        parse_expr(s)?.eval(&LaurentReader { nvars })
    }
}

struct LaurentReader {
    nvars: usize,
}

fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let digits = name.strip_prefix('x')?;
            let i: usize = digits.parse().ok()?;
            (i >= 1).then(|| i - 1)
        }
    }
}

impl ExprContext for LaurentReader {
    type Value = LaurentPolynomial<Rat>;

    fn number(&self, q: &Rat) -> Result<Self::Value> {
        Ok(LaurentPolynomial::monomial(q.clone(), vec![Int::zero(); self.nvars]))
    }

    fn variable(&self, name: &str) -> Result<Self::Value> {
        let i = variable_index(name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
        if i >= self.nvars {
            return Err(Error::Parse(format!("variable {name} exceeds dimension {}", self.nvars)));
        }
        let mut u = vec![Int::zero(); self.nvars];
        u[i] = Int::one();
        Ok(LaurentPolynomial::monomial(Rat::one(), u))
    }

    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        a.add(&b)
    }

    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        a.sub(&b)
    }

    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        a.mul(&b)
    }

    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value> {
        let inv = monomial_inverse(&b).ok_or_else(|| Error::Parse("only division by a monomial is allowed".into()))?;
        Ok(a.mul(&inv))
    }

    fn neg(&self, a: Self::Value) -> Self::Value {
        a.neg()
    }

    fn pow(&self, a: Self::Value, k: i64) -> Result<Self::Value> {
        let base = if k < 0 {
            monomial_inverse(&a).ok_or_else(|| Error::Parse("negative powers need a monomial base".into()))?
        } else {
            a
        };
        let mut acc = self.number(&Rat::one())?;
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

fn monomial_inverse(p: &LaurentPolynomial<Rat>) -> Option<LaurentPolynomial<Rat>> {
    if p.len() != 1 {
        return None;
    }
    let (u, c) = p.terms().next()?;
    Some(LaurentPolynomial::monomial(c.recip(), u.iter().map(|x| -x).collect()))
}

impl fmt::Display for LaurentPolynomial<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (u, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = u
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| if e.is_one() { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            let mag = c.abs();
            match (vars.is_empty(), One::is_one(&mag)) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `min_{u ∈ supp f} ⟨v, u⟩`.
pub fn monomial_valuation<C: Field>(v: &[Int], f: &LaurentPolynomial<C>) -> Result<Int> {
    if v.len() != f.nvars {
        return Err(Error::DimensionMismatch { expected: f.nvars, found: v.len() });
    }
    f.support().map(|u| dot(v, u)).min().ok_or(Error::ZeroValuation)
}

/// The same minimum for a rational `v`, as needed for points of an overlattice.
pub fn monomial_valuation_q<C: Field>(v: &[Rat], f: &LaurentPolynomial<C>) -> Result<Rat> {
    if v.len() != f.nvars {
        return Err(Error::DimensionMismatch { expected: f.nvars, found: v.len() });
    }
    f.support().map(|u| dot_iq(u, v)).min().ok_or(Error::ZeroValuation)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub val_f: Int,
    pub val_g: Int,
    pub val_product: Int,
    pub product_rule: bool,
    /// `None` when `f + g = 0`, in which case the check is skipped.
    pub val_sum: Option<Int>,
    pub sum_rule: Option<bool>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.product_rule && self.sum_rule != Some(false)
    }
}

pub fn valuation_axiom_check<C: Field>(v: &[Int], f: &LaurentPolynomial<C>, g: &LaurentPolynomial<C>) -> Result<AxiomReport> {
    let val_f = monomial_valuation(v, f)?;
    let val_g = monomial_valuation(v, g)?;
    let val_product = monomial_valuation(v, &f.mul(g))?;
    let product_rule = val_product == &val_f + &val_g;
    let sum = f.add(g);
    let val_sum = if sum.is_zero() { None } else { Some(monomial_valuation(v, &sum)?) };
    let sum_rule = val_sum.as_ref().map(|s| *s >= val_f.clone().min(val_g.clone()));
    Ok(AxiomReport { val_f, val_g, val_product, product_rule, val_sum, sum_rule })
}

/// `ord_t α*(f)`: exact below the certified precision, `AtLeast(T)` when
/// every known coefficient cancels.
pub fn arc_order(arc: &SymbolicArc, f: &LaurentPolynomial<Rat>) -> Result<Order> {
    if f.is_zero() {
        return Ok(Order::Infinite);
    }
    let series = arc.chart();
    if f.nvars() != series.len() {
        return Err(Error::DimensionMismatch { expected: series.len(), found: f.nvars() });
    }
    Ok(compose_into(f, &series, arc.truncation())?.order())
}
