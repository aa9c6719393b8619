//! Deciding whether an arc is divisorial.
//!
//! The test runs in three stages. A dimension bound can rule an arc out:
//! every coefficient reachable by a change of coordinates lies in a field of
//! transcendence degree at most `trdeg_{K'} Q(all coefficients)`, and at
//! least `r - 1` independent ones are required. Next the guarded condition
//! on the given coordinates is tried directly on the `t`-expansions. Last,
//! the coordinates are re-expanded in the uniformizer `t'` with
//! `t'^d = α*(x_r)` and searched for independent coefficients.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::extension::canonical_extension;
use super::field::Symbolic;
use super::independence::{IndependenceOracle, Prepared};
use super::ratfun::RationalFunction;
use super::series::{Order, TruncatedSeries};
use super::{Coordinate, SymbolicArc, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector};

/// Upper bound on index tuples examined by a single search.
pub const SEARCH_LIMIT: usize = 20_000;

/// Largest exponent `q·v_i` accepted by [`construct_divisorial_arc`].
pub const MAX_ARC_EXPONENT: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Divisorial,
    NotDivisorial,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    /// The center is a divisor, so any fat arc through it is divisorial.
    Codimension1,
    /// Guarded independence of `t`-coefficients of the given coordinates.
    Corollary,
    /// Independence of `t'`-coefficients after the canonical extension.
    Theorem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub stage: Stage,
    /// Index into the arc's coordinates of the coordinate playing `x_r`.
    pub last_coordinate: usize,
    /// `(coordinate index, coefficient index)` of the independent coefficients.
    pub indices: Vec<(usize, usize)>,
    /// Order in which the selected rows satisfy the minimality cascade.
    pub renumbering: Vec<usize>,
    /// Order vector `(ord α*(x_1), ..., ord α*(x_n))` for monomial arcs.
    pub lattice_point: Option<IntVector>,
    /// `[L : K]` for the field used by the witness.
    pub extension_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialVerdict {
    pub kind: Verdict,
    pub witness: Option<Witness>,
    pub reason: Option<String>,
    pub seed: u64,
}

impl DivisorialVerdict {
    fn divisorial(witness: Witness, seed: u64) -> DivisorialVerdict {
        DivisorialVerdict { kind: Verdict::Divisorial, witness: Some(witness), reason: None, seed }
    }

    fn other(kind: Verdict, reason: String, seed: u64) -> DivisorialVerdict {
        DivisorialVerdict { kind, witness: None, reason: Some(reason), seed }
    }

    pub fn is_divisorial(&self) -> bool {
        self.kind == Verdict::Divisorial
    }
}

/// A componentwise-minimal independent tuple and a row order satisfying
/// the cascade: for the `k`-th row `π(k)` every `a_{π(k) j}` with
/// `j < l_{π(k)}` is algebraic over the base and `a_{π(0) l}, ..., a_{π(k-1) l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSelection {
    /// `l_i` for each row, in the original numbering.
    pub indices: Vec<usize>,
    /// `π`, listing original rows in cascade order.
    pub order: Vec<usize>,
}

struct PreparedTable {
    rows: Vec<Vec<Prepared>>,
    base: Vec<Prepared>,
}

impl PreparedTable {
    fn new<E: Symbolic>(oracle: &IndependenceOracle, table: &[Vec<E>], base: &[E]) -> PreparedTable {
        PreparedTable {
            rows: table.iter().map(|row| row.iter().map(|e| oracle.prepare(e)).collect()).collect(),
            base: base.iter().map(|e| oracle.prepare(e)).collect(),
        }
    }

    /// Rank gained by `extra` over the base together with `over`.
    fn gain(&self, oracle: &IndependenceOracle, over: &[&Prepared], extra: &[&Prepared]) -> usize {
        let mut items: Vec<&Prepared> = self.base.iter().chain(over.iter().copied()).collect();
        let lower = oracle.rank_prepared(&items);
        items.extend(extra.iter().copied());
        oracle.rank_prepared(&items) - lower
    }

    fn selected(&self, tuple: &[usize]) -> Vec<&Prepared> {
        tuple.iter().enumerate().map(|(i, &l)| &self.rows[i][l]).collect()
    }
}

/// Calls `visit` on tuples drawn from `candidates` in increasing order of
/// `key`, stopping when it returns `Some` or after `limit` tuples.
fn ordered_tuples<T>(
    candidates: &[Vec<usize>],
    limit: usize,
    key: impl Fn(&[usize]) -> (usize, usize),
    mut visit: impl FnMut(&[usize]) -> Option<T>,
) -> std::result::Result<Option<T>, ()> {
    let total = candidates.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let Some(total) = total.filter(|&n| n <= limit) else {
        return Err(());
    };
    let mut tuples = Vec::with_capacity(total);
    let mut cur = vec![0usize; candidates.len()];
    loop {
        tuples.push(cur.iter().enumerate().map(|(i, &k)| candidates[i][k]).collect::<Vec<usize>>());
        let mut i = 0;
        while i < cur.len() {
            cur[i] += 1;
            if cur[i] < candidates[i].len() {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == cur.len() {
            break;
        }
    }
    tuples.sort_by(|a, b| key(a).cmp(&key(b)).then_with(|| a.cmp(b)));
    Ok(tuples.iter().find_map(|t| visit(t)))
}

/// Finds a componentwise-minimal tuple `(l_1, ..., l_s)` with
/// `table[0][l_1], ..., table[s-1][l_s]` algebraically independent over
/// `base`, together with a row order realizing the minimality cascade.
pub fn select_minimal_independent<E: Symbolic>(
    oracle: &IndependenceOracle,
    table: &[Vec<E>],
    base: &[E],
) -> Result<MinimalSelection> {
    let s = table.len();
    if s == 0 {
        return Ok(MinimalSelection { indices: vec![], order: vec![] });
    }
    let prepared = PreparedTable::new(oracle, table, base);
    let everything: Vec<&Prepared> = prepared.rows.iter().flatten().collect();
    if prepared.gain(oracle, &[], &everything) < s {
        return Err(Error::InsufficientTranscendence);
    }
    let candidates: Vec<Vec<usize>> = prepared
        .rows
        .iter()
        .map(|row| (0..row.len()).filter(|&j| prepared.gain(oracle, &[], &[&row[j]]) == 1).collect())
        .collect();
    let found = ordered_tuples(&candidates, SEARCH_LIMIT, |t| (t.iter().sum(), 0), |t| {
        (prepared.gain(oracle, &[], &prepared.selected(t)) == s).then(|| t.to_vec())
    });
    let indices = match found {
        Ok(Some(t)) => t,
        Ok(None) => return Err(Error::InsufficientTranscendence),
        Err(()) => return Err(Error::Invalid(format!("more than {SEARCH_LIMIT} index tuples to examine"))),
    };
    let order = cascade_order(oracle, &prepared, &indices, &mut Vec::new(), &mut vec![false; s])
        .ok_or_else(|| Error::Verification("no renumbering satisfies the cascade".into()))?;
    Ok(MinimalSelection { indices, order })
}

fn cascade_order(
    oracle: &IndependenceOracle,
    prepared: &PreparedTable,
    indices: &[usize],
    order: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Vec<usize>> {
    if order.len() == indices.len() {
        return Some(order.clone());
    }
    let previous: Vec<&Prepared> = order.iter().map(|&i| &prepared.rows[i][indices[i]]).collect();
    for i in 0..indices.len() {
        if used[i] {
            continue;
        }
        let prefix: Vec<&Prepared> = prepared.rows[i][..indices[i]].iter().collect();
        if prepared.gain(oracle, &previous, &prefix) != 0 {
            continue;
        }
        used[i] = true;
        order.push(i);
        if let Some(done) = cascade_order(oracle, prepared, indices, order, used) {
            return Some(done);
        }
        order.pop();
        used[i] = false;
    }
    None
}

/// Runs the divisoriality test with evaluation seed 0.
pub fn divisoriality_test(arc: &SymbolicArc) -> DivisorialVerdict {
    divisoriality_test_seeded(arc, 0)
}

pub fn divisoriality_test_seeded(arc: &SymbolicArc, seed: u64) -> DivisorialVerdict {
    let oracle = IndependenceOracle::new(arc.symbols().len(), seed);
    let center: Vec<usize> = (0..arc.coordinates().len()).filter(|&i| arc.coordinates()[i].on_center).collect();
    let r = center.len();
    let lattice_point = arc.monomial_exponents();

    if r == 1 {
        let w = Witness {
            stage: Stage::Codimension1,
            last_coordinate: center[0],
            indices: vec![],
            renumbering: vec![],
            lattice_point,
            extension_degree: 1,
        };
        return DivisorialVerdict::divisorial(w, seed);
    }

    let residue = arc.residue_elements();
    let bound = transcendence_bound(&oracle, arc, &residue);
    if bound < r - 1 {
        let reason = format!(
            "coefficients have transcendence degree at most {bound} over the residue field, below r - 1 = {}",
            r - 1
        );
        return DivisorialVerdict::other(Verdict::NotDivisorial, reason, seed);
    }

    let mut notes: Vec<String> = Vec::new();
    for &last in center.iter().rev() {
        let rows: Vec<usize> = center.iter().copied().filter(|&i| i != last).collect();
        match corollary_stage(&oracle, arc, &residue, last, &rows) {
            Ok(Some(indices)) => {
                let w = Witness {
                    stage: Stage::Corollary,
                    last_coordinate: last,
                    indices: rows.iter().copied().zip(indices).collect(),
                    renumbering: (0..rows.len()).collect(),
                    lattice_point,
                    extension_degree: 1,
                };
                return DivisorialVerdict::divisorial(w, seed);
            }
            Ok(None) => {}
            Err(note) => notes.push(note),
        }
    }
    for &last in center.iter().rev() {
        let rows: Vec<usize> = center.iter().copied().filter(|&i| i != last).collect();
        match theorem_stage(&oracle, arc, &residue, last, &rows) {
            Ok((sel, degree)) => {
                let w = Witness {
                    stage: Stage::Theorem,
                    last_coordinate: last,
                    indices: rows.iter().copied().zip(sel.indices).collect(),
                    renumbering: sel.order.iter().map(|&k| rows[k]).collect(),
                    lattice_point,
                    extension_degree: degree,
                };
                return DivisorialVerdict::divisorial(w, seed);
            }
            Err(note) => notes.push(note),
        }
    }
    notes.sort();
    notes.dedup();
    let mut reason = String::from("no independent coefficients in the given coordinates; other coordinate systems were not examined");
    for n in notes {
        reason.push_str("; ");
        reason.push_str(&n);
    }
    DivisorialVerdict::other(Verdict::Unknown, reason, seed)
}

fn transcendence_bound(oracle: &IndependenceOracle, arc: &SymbolicArc, residue: &[RationalFunction]) -> usize {
    let base_rank = oracle.rank(residue);
    let crude = oracle.num_symbols() - base_rank;
    if arc.coordinates().iter().any(|c| !c.series.is_exact()) {
        return crude;
    }
    let coefficients: Vec<RationalFunction> = arc
        .coordinates()
        .iter()
        .flat_map(|c| c.series.coefficients().iter().filter(|x| !x.is_zero()).cloned())
        .collect();
    oracle.independence_rank(&coefficients, residue).min(crude)
}

fn exact_order(c: &Coordinate) -> std::result::Result<usize, String> {
    match c.series.order() {
        Order::Exact(d) => Ok(d),
        _ => Err(format!("order of {} is not determined; increase truncation", c.name)),
    }
}

/// Search over `b_{i l_i}` independent over the residue field extended by
/// `b_{rj} (j < d + max l)` and `b_{ij} (j < l_i)`.
fn corollary_stage(
    oracle: &IndependenceOracle,
    arc: &SymbolicArc,
    residue: &[RationalFunction],
    last: usize,
    rows: &[usize],
) -> std::result::Result<Option<Vec<usize>>, String> {
    let coords = arc.coordinates();
    let xr = &coords[last];
    let d = exact_order(xr)?;
    let prepare_row = |c: &Coordinate| -> Vec<Prepared> { c.series.coefficients().iter().map(|x| oracle.prepare(x)).collect() };
    let base: Vec<Prepared> = residue.iter().map(|x| oracle.prepare(x)).collect();
    let xr_row = prepare_row(xr);
    let table: Vec<Vec<Prepared>> = rows.iter().map(|&i| prepare_row(&coords[i])).collect();
    let base_refs: Vec<&Prepared> = base.iter().collect();
    let base_rank = oracle.rank_prepared(&base_refs);
    let transcendental = |p: &Prepared| {
        let mut items = base_refs.clone();
        items.push(p);
        oracle.rank_prepared(&items) > base_rank
    };
    let candidates: Vec<Vec<usize>> =
        table.iter().map(|row| (0..row.len()).filter(|&j| transcendental(&row[j])).collect()).collect();
    let xr_known = xr.series.precision().unwrap_or(usize::MAX);
    let mut short = false;
    let key = |t: &[usize]| (t.iter().copied().max().unwrap_or(0), t.iter().sum());
    let found = ordered_tuples(&candidates, SEARCH_LIMIT, key, |t| {
        let max_l = t.iter().copied().max().unwrap_or(0);
        if d + max_l > xr_known {
            short = true;
            return None;
        }
        let mut guard: Vec<&Prepared> = base_refs.clone();
        guard.extend(xr_row.iter().take(d + max_l));
        for (k, &l) in t.iter().enumerate() {
            guard.extend(table[k][..l].iter());
        }
        let lower = oracle.rank_prepared(&guard);
        guard.extend(t.iter().enumerate().map(|(k, &l)| &table[k][l]));
        (oracle.rank_prepared(&guard) - lower == t.len()).then(|| t.to_vec())
    });
    match found {
        Ok(Some(t)) => Ok(Some(t)),
        Ok(None) if short => Err(format!("the guard on {} needs more coefficients; increase truncation", xr.name)),
        Ok(None) => Ok(None),
        Err(()) => Err(format!("more than {SEARCH_LIMIT} index tuples to examine")),
    }
}

fn theorem_stage(
    oracle: &IndependenceOracle,
    arc: &SymbolicArc,
    residue: &[RationalFunction],
    last: usize,
    rows: &[usize],
) -> std::result::Result<(MinimalSelection, usize), String> {
    let coords = arc.coordinates();
    let xr = &coords[last];
    exact_order(xr)?;
    let ext = canonical_extension(&xr.series, arc.truncation()).map_err(|e| format!("canonical extension of {}: {e}", xr.name))?;
    let mut table = Vec::with_capacity(rows.len());
    let mut truncated = false;
    for &i in rows {
        let s: TruncatedSeries<_> = ext.reexpand(&coords[i].series).map_err(|e| format!("re-expansion of {}: {e}", coords[i].name))?;
        truncated |= !s.is_exact();
        table.push(s.coefficients().to_vec());
    }
    let base: Vec<_> = residue.iter().map(|x| ext.rho.embed(x)).collect();
    match select_minimal_independent(oracle, &table, &base) {
        Ok(sel) => Ok((sel, ext.degree())),
        Err(Error::InsufficientTranscendence) if truncated => {
            Err("re-expanded coefficients are insufficient within the precision; increase truncation".into())
        }
        Err(Error::InsufficientTranscendence) => Err("re-expanded coefficients are insufficient".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// The arc `x_i ↦ a_i t^{q v_i}` on the chart of the positive octant, with
/// one fresh symbol per coordinate. Coordinates with `v_i = 0` are units
/// whose symbols generate the residue field of the center.
pub fn construct_divisorial_arc(v: &[Int], q: &Int) -> Result<SymbolicArc> {
    if !q.is_positive() {
        return Err(Error::Invalid("q must be positive".into()));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("v must be nonzero".into()));
    }
    if v.iter().any(Signed::is_negative) {
        return Err(Error::NotInCone);
    }
    let n = v.len();
    let symbols: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let mut residue = BTreeSet::new();
    let mut coordinates = Vec::with_capacity(n);
    let mut top = 0usize;
    for (i, vi) in v.iter().enumerate() {
        let e = usize::try_from(vi * q)
            .ok()
            .filter(|&e| e <= MAX_ARC_EXPONENT)
            .ok_or_else(|| Error::Invalid(format!("exponent q*v_{} exceeds {MAX_ARC_EXPONENT}", i + 1)))?;
        top = top.max(e);
        if e == 0 {
            residue.insert(i);
        }
        coordinates.push(Coordinate {
            name: format!("x{}", i + 1),
            series: TruncatedSeries::monomial(RationalFunction::symbol(i), e),
            on_center: e > 0,
        });
    }
    Ok(SymbolicArc::new(symbols, residue, coordinates)?.with_truncation(DEFAULT_TRUNCATION.max(top + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, rat};

    fn sym(i: usize) -> RationalFunction {
        RationalFunction::symbol(i)
    }

    fn c(k: i64) -> RationalFunction {
        RationalFunction::constant(rat(k, 1))
    }

    fn coord(name: &str, coeffs: Vec<RationalFunction>) -> Coordinate {
        Coordinate { name: name.into(), series: TruncatedSeries::exact(coeffs, RationalFunction::zero()), on_center: true }
    }

    #[test]
    fn single_row_takes_first_transcendental() {
        let o = IndependenceOracle::new(1, 0);
        let sel = select_minimal_independent(&o, &[vec![c(3), sym(0)]], &[]).unwrap();
        assert_eq!(sel.indices, vec![1]);
        let sel = select_minimal_independent(&o, &[vec![sym(0)]], &[]).unwrap();
        assert_eq!(sel.indices, vec![0]);
    }

    #[test]
    fn renumbering_for_shared_symbol() {
        let o = IndependenceOracle::new(2, 0);
        let table = vec![vec![sym(0)], vec![sym(0), sym(1)]];
        let sel = select_minimal_independent(&o, &table, &[]).unwrap();
        assert_eq!(sel.indices, vec![0, 1]);
        assert_eq!(sel.order, vec![0, 1]);
        let swapped = vec![vec![sym(0), sym(1)], vec![sym(0)]];
        let sel = select_minimal_independent(&o, &swapped, &[]).unwrap();
        assert_eq!(sel.indices, vec![1, 0]);
        assert_eq!(sel.order, vec![1, 0]);
    }

    #[test]
    fn rational_rows_have_no_selection() {
        let o = IndependenceOracle::new(0, 0);
        let r = select_minimal_independent(&o, &[vec![c(1), c(2)]], &[]);
        assert_eq!(r, Err(Error::InsufficientTranscendence));
    }

    #[test]
    fn monomial_arcs_are_divisorial() {
        let arc = construct_divisorial_arc(&ivec(&[1, 2, 0]), &Int::from(3)).unwrap();
        let verdict = divisoriality_test(&arc);
        assert!(verdict.is_divisorial(), "{verdict:?}");
        assert_eq!(verdict.witness.unwrap().lattice_point, Some(ivec(&[3, 6, 0])));
        assert_eq!(construct_divisorial_arc(&ivec(&[0, 0]), &Int::from(1)).unwrap_err(), Error::Invalid("v must be nonzero".into()));
    }

    #[test]
    fn one_symbol_two_coordinates() {
        let arc = SymbolicArc::new(
            vec!["a".into()],
            BTreeSet::new(),
            vec![coord("x", vec![c(0), sym(0)]), coord("y", vec![c(0), c(1)])],
        )
        .unwrap();
        let v = divisoriality_test(&arc);
        assert_eq!(v.kind, Verdict::Divisorial);
        let w = v.witness.unwrap();
        assert_eq!(w.stage, Stage::Corollary);
        assert_eq!(w.lattice_point, Some(ivec(&[1, 1])));
    }

    #[test]
    fn rational_arc_is_not_divisorial() {
        let mut e = vec![rat(0, 1)];
        let mut fact = Int::from(1);
        for j in 1..12 {
            fact *= Int::from(j);
            e.push(crate::linalg::Rat::new(Int::from(1), fact.clone()));
        }
        let y = TruncatedSeries::truncated(e.into_iter().map(RationalFunction::constant).collect(), 12, RationalFunction::zero());
        let x = coord("x", vec![c(0), c(1)]);
        let arc = SymbolicArc::new(vec![], BTreeSet::new(), vec![x, Coordinate { name: "y".into(), series: y, on_center: true }]).unwrap();
        assert_eq!(divisoriality_test(&arc).kind, Verdict::NotDivisorial);
    }

    #[test]
    fn theorem_stage_after_extension() {
        let arc = SymbolicArc::new(
            vec!["a".into()],
            BTreeSet::new(),
            vec![coord("x", vec![c(0), sym(0)]), coord("y", vec![c(0), sym(0), c(1)])],
        )
        .unwrap();
        let v = divisoriality_test(&arc);
        assert_eq!(v.kind, Verdict::Divisorial, "{v:?}");
        assert_eq!(v.witness.unwrap().stage, Stage::Theorem);
    }

    #[test]
    fn equal_coordinates_stay_unknown() {
        let arc = SymbolicArc::new(
            vec!["a".into()],
            BTreeSet::new(),
            vec![coord("x", vec![c(0), sym(0)]), coord("y", vec![c(0), sym(0)])],
        )
        .unwrap();
        let v = divisoriality_test(&arc);
        assert_eq!(v.kind, Verdict::Unknown, "{v:?}");
    }
}
