//! Affine semigroups `Γ ⊂ Z^n`, their saturations `K(Γ) ∩ Z^n`, and the
//! lattice `M' = ∩ M_i` attached to a triangulation of `K(Γ)` by elements
//! of `Γ`.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{lattice_intersection, Lattice};
use crate::linalg::{add, dot, primitive_part, sub, to_int, to_rat, Int, IntMatrix, IntVector, RatVector};

/// Default number of distinct points a representability search may visit.
pub const DEFAULT_SEARCH_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupPresentation {
    n: usize,
    generators: Vec<IntVector>,
}

impl SemigroupPresentation {
    /// Checks that the generators span `Z^n` as a group and a pointed cone.
    /// Zero generators are dropped; the rest are kept sorted and distinct.
    pub fn new(n: usize, generators: &[IntVector]) -> Result<SemigroupPresentation> {
        for g in generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.len() });
            }
        }
        let gens: Vec<IntVector> = generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if gens.is_empty() {
            return Err(Error::NotFullRank);
        }
        let group = Lattice::from_int_generators(n, &gens)?;
        if !group.is_standard() {
            return Err(Error::Invalid("generators do not generate Z^n as a group".into()));
        }
        if !Cone::from_rays(&gens)?.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(SemigroupPresentation { n, generators: gens })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// `K(Γ)`.
    pub fn cone(&self) -> Cone {
        Cone::from_rays(&self.generators).expect("validated on construction")
    }
}

/// A dual vector with positive integer values on `σ ∖ {0}`.
fn grading(c: &Cone) -> IntVector {
    c.facets().iter().fold(vec![Int::zero(); c.ambient_dim()], |a, f| add(&a, f))
}

fn triangulation(c: &Cone) -> Vec<Cone> {
    if c.is_simplicial() {
        vec![c.clone()]
    } else {
        Fan::from_cone(c.clone()).simplicialize().maximal_cones().to_vec()
    }
}

/// The minimal generating set of `c ∩ N`, in the cone's lattice coordinates, sorted.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<IntVector>> {
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    let mut candidates: BTreeSet<IntVector> = BTreeSet::new();
    for piece in triangulation(c) {
        candidates.extend(piece.rays().iter().cloned());
        for p in piece.box_points(false)? {
            if p.iter().any(|x| !x.is_zero()) {
                candidates.insert(p);
            }
        }
    }
    let basis: Vec<IntVector> = candidates
        .iter()
        .filter(|x| !candidates.iter().any(|g| g != *x && c.contains(&sub(x, g))))
        .cloned()
        .collect();
    Ok(basis)
}

/// Generators of `K(Γ) ∩ Z^n`.
pub fn saturation(s: &SemigroupPresentation) -> Result<SemigroupPresentation> {
    SemigroupPresentation::new(s.n, &hilbert_basis(&s.cone())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representability {
    /// Multiplicities of the generators summing to the target.
    Yes(Vec<Int>),
    No,
    /// The search budget ran out.
    Undecided,
}

/// Decides whether `x ∈ N·generators` by exhaustive search. The grading
/// strictly drops along every step, so the search terminates; only the
/// budget on visited points can leave it undecided.
pub fn representable(s: &SemigroupPresentation, x: &[Int], budget: usize) -> Representability {
    let c = s.cone();
    if !c.contains(x) {
        return Representability::No;
    }
    let u = grading(&c);
    let degrees: Vec<Int> = s.generators.iter().map(|g| dot(&u, g)).collect();
    let mut memo: HashMap<IntVector, Option<usize>> = HashMap::new();
    let mut search = Search { gens: &s.generators, degrees: &degrees, cone: &c, u: &u, memo: &mut memo, budget };
    match search.visit(x.to_vec()) {
        Some(true) => {
            let mut counts = vec![Int::zero(); s.generators.len()];
            let mut cur = x.to_vec();
            while cur.iter().any(|v| !v.is_zero()) {
                let i = search.memo[&cur].expect("representable chain");
                counts[i] += 1;
                cur = sub(&cur, &s.generators[i]);
            }
            Representability::Yes(counts)
        }
        Some(false) => Representability::No,
        None => Representability::Undecided,
    }
}

struct Search<'a> {
    gens: &'a [IntVector],
    degrees: &'a [Int],
    cone: &'a Cone,
    u: &'a IntVector,
    memo: &'a mut HashMap<IntVector, Option<usize>>,
    budget: usize,
}

impl Search<'_> {
    /// `None` when the budget is exhausted.
    fn visit(&mut self, x: IntVector) -> Option<bool> {
        if x.iter().all(Zero::is_zero) {
            return Some(true);
        }
        if let Some(r) = self.memo.get(&x) {
            return Some(r.is_some());
        }
        if self.memo.len() >= self.budget {
            return None;
        }
        let deg = dot(self.u, &x);
        let mut found = None;
        for (i, g) in self.gens.iter().enumerate() {
            if self.degrees[i] > deg {
                continue;
            }
            let y = sub(&x, g);
            if !self.cone.contains(&y) {
                continue;
            }
            if self.visit(y)? {
                found = Some(i);
                break;
            }
        }
        self.memo.insert(x, found);
        Some(found.is_some())
    }
}

/// Whether `Γ` equals its saturation.
pub fn is_normal(s: &SemigroupPresentation) -> Result<bool> {
    is_normal_with_budget(s, DEFAULT_SEARCH_BUDGET)
}

pub fn is_normal_with_budget(s: &SemigroupPresentation, budget: usize) -> Result<bool> {
    for h in hilbert_basis(&s.cone())? {
        match representable(s, &h, budget) {
            Representability::Yes(_) => {}
            Representability::No => return Ok(false),
            Representability::Undecided => {
                return Err(Error::Verification(format!("representability of {h:?} undecided within {budget} points")))
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PretoricLattice {
    /// `M' = ∩ M_i`.
    pub lattice: Lattice,
    /// Generators in `Γ` of each simplicial cone `τ_i`.
    pub simplices: Vec<IntMatrix>,
    /// Hilbert basis of `K(Γ) ∩ M'` in coordinates of `Z^n`.
    pub hilbert_basis: Vec<IntVector>,
    /// Every Hilbert basis element was found to lie in `Γ`.
    pub certified: bool,
}

/// Triangulates `K(Γ)` by its own rays, takes on every ray the smallest
/// element of `Γ`, and intersects the lattices the simplices span.
pub fn pretoric_lattice(s: &SemigroupPresentation) -> Result<PretoricLattice> {
    pretoric_lattice_with_budget(s, DEFAULT_SEARCH_BUDGET)
}

pub fn pretoric_lattice_with_budget(s: &SemigroupPresentation, budget: usize) -> Result<PretoricLattice> {
    let c = s.cone();
    let u = grading(&c);
    let on_ray = |ray: &IntVector| -> Option<IntVector> {
        s.generators
            .iter()
            .filter(|g| primitive_part(g) == *ray)
            .min_by_key(|g| dot(&u, g))
            .cloned()
    };
    let mut simplices = Vec::new();
    let mut lattice: Option<Lattice> = None;
    for piece in triangulation(&c) {
        let chosen: Option<IntMatrix> = piece.rays().iter().map(on_ray).collect();
        let chosen = chosen.ok_or_else(|| Error::Verification(format!("no generators in Γ for the cone {:?}", piece.rays())))?;
        let m_i = Lattice::from_int_generators(s.n, &chosen)?;
        lattice = Some(match lattice {
            None => m_i,
            Some(l) => lattice_intersection(&l, &m_i)?,
        });
        simplices.push(chosen);
    }
    let lattice = lattice.expect("a full-dimensional cone has a simplex");
    let rays: Vec<RatVector> = c.rays().iter().map(|r| to_rat(r)).collect();
    let in_m_prime = Cone::in_lattice(lattice.clone(), &rays)?;
    let mut basis = Vec::new();
    let mut certified = true;
    for h in hilbert_basis(&in_m_prime)? {
        let ambient = to_int(&lattice.to_ambient_int(&h)).expect("M' is a sublattice of Z^n");
        match representable(s, &ambient, budget) {
            Representability::Yes(_) => {}
            Representability::No => {
                return Err(Error::Verification(format!("{ambient:?} lies in K(Γ) ∩ M' but not in Γ")));
            }
            Representability::Undecided => certified = false,
        }
        basis.push(ambient);
    }
    basis.sort();
    Ok(PretoricLattice { lattice, simplices, hilbert_basis: basis, certified })
}
