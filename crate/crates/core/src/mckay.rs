//! Diagonal abelian group actions on `A^n` and their quotients.
//!
//! A group element acts by `diag(ζ^{e_1}, ..., ζ^{e_n})` for a fixed
//! primitive `d`-th root of unity `ζ`, with weights normalized to
//! `1 ≤ e_i ≤ d`. The quotient `A^n/G` is the toric variety of the positive
//! octant in `N' = Z^n + Σ_g v_g Z`, where `v_g = (e_1, ..., e_n)/d`.

use std::collections::BTreeSet;

use num_traits::One;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::essential::essential_divisors;
use crate::lattice::{lattice_index, Lattice};
use crate::linalg::{identity, to_rat, Int, Rat, RatVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupAction {
    n: usize,
    d: u64,
    generators: Vec<Vec<u64>>,
    elements: Vec<Vec<u64>>,
}

fn normalize(e: i64, d: u64) -> u64 {
    let r = e.rem_euclid(d as i64) as u64;
    if r == 0 {
        d
    } else {
        r
    }
}

impl AbelianGroupAction {
    /// Reads weights modulo `d`; the group is the closure of the generators.
    pub fn new(n: usize, d: u64, generators: &[Vec<i64>]) -> Result<AbelianGroupAction> {
        if n == 0 {
            return Err(Error::Invalid("ambient dimension must be positive".into()));
        }
        if d == 0 || d > i64::MAX as u64 {
            return Err(Error::Invalid("exponent d must be positive".into()));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.len() });
            }
            gens.push(g.iter().map(|&e| normalize(e, d)).collect::<Vec<u64>>());
        }
        let identity = vec![d; n];
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::from([identity.clone()]);
        let mut frontier = vec![identity];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y: Vec<u64> = x.iter().zip(g).map(|(&a, &b)| normalize((a + b) as i64, d)).collect();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(AbelianGroupAction { n, d, generators: gens, elements: seen.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Vec<u64> {
        vec![self.d; self.n]
    }

    pub fn is_identity(&self, g: &[u64]) -> bool {
        g.iter().all(|&e| e == self.d)
    }
}

/// All group elements as normalized weight vectors, sorted.
pub fn enumerate_elements(g: &AbelianGroupAction) -> Vec<Vec<u64>> {
    g.elements.clone()
}

/// `v_g = (e_1/d, ..., e_n/d)`.
pub fn v_of_g(weights: &[u64], d: u64) -> RatVector {
    weights.iter().map(|&e| Rat::new(Int::from(e), Int::from(d))).collect()
}

/// `N' = Z^n + Σ_g v_g Z`.
pub fn quotient_lattice(g: &AbelianGroupAction) -> Result<Lattice> {
    let mut gens: Vec<RatVector> = identity(g.n).iter().map(|r| to_rat(r)).collect();
    gens.extend(g.elements.iter().map(|e| v_of_g(e, g.d)));
    Lattice::from_generators(g.n, &gens)
}

/// `[N' : Z^n]`.
pub fn quotient_index(g: &AbelianGroupAction) -> Result<Int> {
    lattice_index(&Lattice::standard(g.n), &quotient_lattice(g)?)
}

/// No non-identity element has a weight `e_i = d`.
pub fn is_isolated(g: &AbelianGroupAction) -> bool {
    g.elements.iter().all(|e| g.is_identity(e) || e.iter().all(|&x| x != g.d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McKayClass {
    pub element: Vec<u64>,
    pub v: RatVector,
    /// `(Σ e_i)/d`.
    pub age: Rat,
}

/// Non-identity elements with their points `v_g` and ages; with `sl_only`,
/// the group must lie in `SL_n` and only age-one elements are kept.
pub fn mckay_correspondence(g: &AbelianGroupAction, sl_only: bool) -> Result<Vec<McKayClass>> {
    if sl_only {
        if let Some(bad) = g.generators.iter().find(|w| w.iter().sum::<u64>() % g.d != 0) {
            return Err(Error::Hypothesis(format!("generator {bad:?} is not in SL_n: weights do not sum to 0 mod {}", g.d)));
        }
    }
    let classes = g
        .elements
        .iter()
        .filter(|e| !g.is_identity(e))
        .map(|e| McKayClass {
            element: e.clone(),
            v: v_of_g(e, g.d),
            age: Rat::new(Int::from(e.iter().sum::<u64>()), Int::from(g.d)),
        })
        .filter(|c| !sl_only || c.age.is_one())
        .collect();
    Ok(classes)
}

/// The octant `⟨e_1, ..., e_n⟩` in the lattice `N'`.
pub fn quotient_cone(g: &AbelianGroupAction) -> Result<Cone> {
    let gens: Vec<RatVector> = identity(g.n).iter().map(|r| to_rat(r)).collect();
    Cone::in_lattice(quotient_lattice(g)?, &gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    /// Number of essential divisors over `A^n/G`.
    pub count: usize,
    /// `#G - 1`.
    pub bound: usize,
    pub ok: bool,
    /// The essential points as vectors of `Q^n`.
    pub points: Vec<RatVector>,
    pub oracle_verified: bool,
}

/// Counts essential divisors over an isolated quotient singularity and
/// compares against `#G - 1`.
pub fn essential_count_bound_check(g: &AbelianGroupAction) -> Result<BoundCheck> {
    if !is_isolated(g) {
        return Err(Error::Hypothesis("corollary hypothesis violated: the singularity is not isolated".into()));
    }
    let cone = quotient_cone(g)?;
    let report = essential_divisors(&cone)?;
    let points: Vec<RatVector> = report.minimal_points.iter().map(|p| cone.lattice().to_ambient_int(p)).collect();
    let count = points.len();
    let bound = g.order() - 1;
    Ok(BoundCheck { count, bound, ok: count <= bound, points, oracle_verified: report.oracle_verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qvec, rat};

    fn action(n: usize, d: u64, gens: &[&[i64]]) -> AbelianGroupAction {
        AbelianGroupAction::new(n, d, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn element_counts() {
        assert_eq!(enumerate_elements(&action(2, 2, &[&[1, 1]])), vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(action(2, 3, &[&[1, 2]]).order(), 3);
        assert_eq!(action(2, 2, &[&[1, 0], &[0, 1]]).order(), 4);
    }

    #[test]
    fn points_and_lattices() {
        assert_eq!(v_of_g(&[1, 1], 2), qvec(&[(1, 2), (1, 2)]));
        assert_eq!(v_of_g(&[3, 3], 3), qvec(&[(1, 1), (1, 1)]));
        assert_eq!(quotient_index(&action(2, 2, &[&[1, 1]])).unwrap(), Int::from(2));
        assert_eq!(quotient_index(&action(2, 3, &[&[1, 2]])).unwrap(), Int::from(3));
        assert_eq!(quotient_index(&action(3, 5, &[])).unwrap(), Int::from(1));
    }

    #[test]
    fn isolation_and_ages() {
        assert!(is_isolated(&action(2, 2, &[&[1, 1]])));
        assert!(!is_isolated(&action(2, 2, &[&[1, 2]])));
        assert!(is_isolated(&action(2, 4, &[])));
        let c = mckay_correspondence(&action(2, 3, &[&[1, 2]]), true).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|x| x.age == rat(1, 1)));
        assert!(mckay_correspondence(&action(2, 3, &[&[1, 1]]), true).is_err());
    }

    #[test]
    fn bound_examples() {
        let b = essential_count_bound_check(&action(2, 2, &[&[1, 1]])).unwrap();
        assert_eq!((b.count, b.bound, b.ok), (1, 1, true));
        assert_eq!(b.points, vec![qvec(&[(1, 2), (1, 2)])]);
        let b = essential_count_bound_check(&action(2, 3, &[&[1, 2]])).unwrap();
        assert_eq!((b.count, b.bound), (2, 2));
        let b = essential_count_bound_check(&action(2, 3, &[&[1, 1]])).unwrap();
        assert_eq!((b.count, b.bound), (1, 2));
        assert_eq!(b.points, vec![qvec(&[(1, 3), (1, 3)])]);
        assert!(b.oracle_verified);
    }
}
