//! Transcendence degrees by the Jacobian criterion.
//!
//! In characteristic zero, elements `e_1, ..., e_m` of a finite extension of
//! `Q(a_1, ..., a_k)` are algebraically independent exactly when their
//! Jacobian `(∂e_i/∂a_j)` has rank `m`. Entries in an algebraic extension of
//! degree `D` are replaced by their `D × D` multiplication matrices, which
//! multiplies the rank by `D`. Ranks are evaluated at random integer points
//! and recomputed exactly over the rational function field whenever the
//! evaluations disagree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{rank, Symbolic};
use super::ratfun::RationalFunction;
use crate::linalg::{rank_q, Int, Rat, RatMatrix};

/// Number of random evaluation points.
pub const EVALUATION_POINTS: usize = 3;

/// The realified Jacobian rows of one element, exact and evaluated.
#[derive(Clone, Debug)]
pub struct Prepared {
    degree: usize,
    exact: Vec<Vec<RationalFunction>>,
    evaluated: Vec<Option<RatMatrix>>,
}

#[derive(Clone, Debug)]
pub struct IndependenceOracle {
    num_symbols: usize,
    seed: u64,
    points: Vec<Vec<Rat>>,
}

impl IndependenceOracle {
    pub fn new(num_symbols: usize, seed: u64) -> IndependenceOracle {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..EVALUATION_POINTS)
            .map(|_| {
                (0..num_symbols)
                    .map(|_| Rat::from_integer(Int::from(rng.gen_range(1_000_003i64..2_147_483_647))))
                    .collect()
            })
            .collect();
        IndependenceOracle { num_symbols, seed, points }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn prepare<E: Symbolic>(&self, e: &E) -> Prepared {
        let degree = e.extension_degree();
        let blocks: Vec<Vec<Vec<RationalFunction>>> =
            (0..self.num_symbols).map(|j| e.partial(j).realify()).collect();
        let exact: Vec<Vec<RationalFunction>> = (0..degree)
            .map(|i| blocks.iter().flat_map(|b| b[i].iter().cloned()).collect())
            .collect();
        let evaluated = self
            .points
            .iter()
            .map(|p| {
                exact
                    .iter()
                    .map(|row| row.iter().map(|x| x.eval(p)).collect::<Option<Vec<Rat>>>())
                    .collect::<Option<RatMatrix>>()
            })
            .collect();
        Prepared { degree, exact, evaluated }
    }

    /// Transcendence degree over `Q` of the field generated by the prepared elements.
    pub fn rank_prepared(&self, items: &[&Prepared]) -> usize {
        let Some(first) = items.first() else {
            return 0;
        };
        let degree = first.degree;
        assert!(items.iter().all(|p| p.degree == degree), "elements of one field");
        let mut ranks = Vec::with_capacity(EVALUATION_POINTS);
        for k in 0..self.points.len() {
            let mut m: RatMatrix = Vec::new();
            for p in items {
                match &p.evaluated[k] {
                    Some(rows) => m.extend(rows.iter().cloned()),
                    None => break,
                }
            }
            if m.len() == items.len() * degree {
                ranks.push(rank_q(&m));
            }
        }
        let agreed = ranks.len() == EVALUATION_POINTS && ranks.iter().all(|&r| r == ranks[0]) && ranks[0] % degree == 0;
        if agreed {
            return ranks[0] / degree;
        }
        let m: Vec<Vec<RationalFunction>> = items.iter().flat_map(|p| p.exact.iter().cloned()).collect();
        rank(m) / degree
    }

    /// Transcendence degree over `Q` of `Q(elements)`.
    pub fn rank<E: Symbolic>(&self, elements: &[E]) -> usize {
        let prepared: Vec<Prepared> = elements.iter().map(|e| self.prepare(e)).collect();
        self.rank_prepared(&prepared.iter().collect::<Vec<_>>())
    }

    /// `trdeg Q(over, elements) - trdeg Q(over)`.
    pub fn independence_rank<E: Symbolic>(&self, elements: &[E], over: &[E]) -> usize {
        let all: Vec<E> = over.iter().chain(elements).cloned().collect();
        self.rank(&all) - self.rank(over)
    }

    /// Whether the elements are algebraically independent over the field generated by `over`.
    pub fn is_independent<E: Symbolic>(&self, elements: &[E], over: &[E]) -> bool {
        self.independence_rank(elements, over) == elements.len()
    }
}
