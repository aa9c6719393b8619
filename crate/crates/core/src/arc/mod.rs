//! Arcs given by truncated power series over rational function fields,
//! and the divisoriality test built on canonical extensions and the
//! Jacobian independence oracle.

pub mod divisorial;
pub mod expr;
pub mod extension;
pub mod field;
pub mod independence;
pub mod poly;
pub mod ratfun;
pub mod series;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector, Rat};
use crate::valuation::LaurentPolynomial;
use expr::{parse_expr, ExprContext};
use field::Field;
use ratfun::RationalFunction;
use series::{Order, TruncatedSeries};

pub use divisorial::{
    construct_divisorial_arc, divisoriality_test, select_minimal_independent, DivisorialVerdict, MinimalSelection,
    Stage, Verdict, Witness,
};
pub use extension::{canonical_extension, CanonicalExtension};
pub use independence::IndependenceOracle;

/// Working precision for exact inputs whose expansions are infinite.
pub const DEFAULT_TRUNCATION: usize = 16;

/// One chart coordinate and its image under the arc.
#[derive(Clone, Debug, PartialEq)]
pub struct Coordinate {
    pub name: String,
    pub series: TruncatedSeries<RationalFunction>,
    /// Whether the coordinate vanishes on the center (is one of `x_1, ..., x_r`).
    pub on_center: bool,
}

/// An arc `α*(x_i) = Σ_j a_ij t^j` with coefficients in `Q(a_1, ..., a_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicArc {
    symbols: Vec<String>,
    residue: BTreeSet<usize>,
    coordinates: Vec<Coordinate>,
    truncation: usize,
}

impl SymbolicArc {
    /// Validates that center coordinates have positive order, other
    /// coordinates are units, and every symbol index is declared.
    pub fn new(symbols: Vec<String>, residue: BTreeSet<usize>, coordinates: Vec<Coordinate>) -> Result<SymbolicArc> {
        let k = symbols.len();
        if residue.iter().any(|&i| i >= k) {
            return Err(Error::Invalid("residue symbol out of range".into()));
        }
        if !coordinates.iter().any(|c| c.on_center) {
            return Err(Error::Invalid("the center needs at least one coordinate".into()));
        }
        for c in &coordinates {
            if c.series.coefficients().iter().any(|x| x.num_vars() > k) {
                return Err(Error::Invalid(format!("coordinate {} uses an undeclared symbol", c.name)));
            }
            let order = c.series.order();
            if c.on_center {
                match c.series.coeff(0) {
                    Some(c0) if c0.is_zero() => {}
                    _ => return Err(Error::Invalid(format!("coordinate {} must have positive order", c.name))),
                }
                if order == Order::Infinite {
                    return Err(Error::Invalid(format!("coordinate {} maps to zero", c.name)));
                }
            } else if order != Order::Exact(0) {
                return Err(Error::Invalid(format!("coordinate {} off the center must be a unit", c.name)));
            }
        }
        Ok(SymbolicArc { symbols, residue, coordinates, truncation: DEFAULT_TRUNCATION })
    }

    pub fn with_truncation(mut self, t: usize) -> SymbolicArc {
        self.truncation = t.max(1);
        self
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn residue_symbols(&self) -> &BTreeSet<usize> {
        &self.residue
    }

    pub fn residue_elements(&self) -> Vec<RationalFunction> {
        self.residue.iter().map(|&i| RationalFunction::symbol(i)).collect()
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coordinates
    }

    /// Codimension `r` of the center.
    pub fn codimension(&self) -> usize {
        self.center().count()
    }

    pub fn center(&self) -> impl Iterator<Item = &Coordinate> {
        self.coordinates.iter().filter(|c| c.on_center)
    }

    /// Images of all chart coordinates, in order.
    pub fn chart(&self) -> Vec<TruncatedSeries<RationalFunction>> {
        self.coordinates.iter().map(|c| c.series.clone()).collect()
    }

    /// For arcs `x_i ↦ c_i t^{v_i}` (one term per coordinate), the exponents `v`.
    pub fn monomial_exponents(&self) -> Option<IntVector> {
        self.coordinates
            .iter()
            .map(|c| {
                let nonzero: Vec<usize> =
                    c.series.coefficients().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, _)| j).collect();
                let exact_enough = c.series.precision().is_none_or(|p| p > nonzero.last().copied().unwrap_or(0));
                (nonzero.len() == 1 && exact_enough).then(|| Int::from(nonzero[0]))
            })
            .collect()
    }
}

/// Reads a rational function in the named symbols.
pub fn parse_rational_function(s: &str, symbols: &[String]) -> Result<RationalFunction> {
    parse_expr(s)?.eval(&SymbolReader { symbols })
}

struct SymbolReader<'a> {
    symbols: &'a [String],
}

impl ExprContext for SymbolReader<'_> {
    type Value = RationalFunction;

    fn number(&self, q: &Rat) -> Result<RationalFunction> {
        Ok(RationalFunction::constant(q.clone()))
    }

    fn variable(&self, name: &str) -> Result<RationalFunction> {
        let i = self
            .symbols
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::Parse(format!("unknown symbol {name}")))?;
        Ok(RationalFunction::symbol(i))
    }

    fn add(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        a.add(&b)
    }

    fn sub(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        a.sub(&b)
    }

    fn mul(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        a.mul(&b)
    }

    fn div(&self, a: RationalFunction, b: RationalFunction) -> Result<RationalFunction> {
        Ok(a.mul(&b.inv().ok_or_else(|| Error::Parse("division by zero".into()))?))
    }

    fn neg(&self, a: RationalFunction) -> RationalFunction {
        a.neg()
    }

    fn pow(&self, a: RationalFunction, k: i64) -> Result<RationalFunction> {
        let base = if k < 0 { a.inv().ok_or_else(|| Error::Parse("zero to a negative power".into()))? } else { a };
        let k = u32::try_from(k.unsigned_abs()).map_err(|_| Error::Parse("exponent too large".into()))?;
        Ok(base.pow(k))
    }
}

/// `f(s_1, ..., s_n)`. Negative exponents are allowed only on series of
/// order zero, whose inverses are expanded modulo `t^cap`.
pub fn compose_into<F: Field>(f: &LaurentPolynomial<Rat>, series: &[TruncatedSeries<F>], cap: usize) -> Result<TruncatedSeries<F>> {
    if f.nvars() != series.len() {
        return Err(Error::DimensionMismatch { expected: series.len(), found: f.nvars() });
    }
    let proto = series
        .first()
        .map(|s| s.prototype().clone())
        .ok_or_else(|| Error::Invalid("no coordinates to compose into".into()))?;
    let one = TruncatedSeries::constant(proto.one_like());
    let mut inverses: Vec<Option<TruncatedSeries<F>>> = vec![None; series.len()];
    let mut acc = TruncatedSeries::zero(&proto);
    for (u, b) in f.terms() {
        let mut term = one.scale(&proto.from_rat_like(b));
        for (i, e) in u.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let k = u32::try_from(e.abs()).map_err(|_| Error::Invalid("exponent too large".into()))?;
            let base = if e.is_negative() {
                if series[i].order() != Order::Exact(0) {
                    return Err(Error::Pole);
                }
                if inverses[i].is_none() {
                    inverses[i] = Some(series[i].invert(cap)?);
                }
                inverses[i].clone().expect("just computed")
            } else {
                series[i].clone()
            };
            term = term.mul(&base.pow(k));
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}
