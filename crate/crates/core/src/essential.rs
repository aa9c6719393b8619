//! Essential divisors of affine toric varieties and Nash components of
//! pretoric ones.
//!
//! For a cone `σ` let `S` be the set of lattice points in relative
//! interiors of singular faces. The essential divisors are the `D_v` with
//! `v` minimal in `S` under `≤_σ`. Candidates come from the closed boxes of
//! a triangulation of `σ` by its own rays. Each answer is certified against
//! every point of `S` in the `k`-fold dilated boxes.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::cone::{Cone, Face};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{add, dot, rat_matrix, scale, solve_left, to_rat, Int, IntVector, Rat};

pub const DEFAULT_DILATION: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialReport {
    pub cone: Cone,
    pub singular_faces: Vec<Face>,
    /// Minimal points of `S`, sorted.
    pub minimal_points: Vec<IntVector>,
    /// Dilation factor `k` of the certifying boxes.
    pub candidate_box_bound: u32,
    pub oracle_verified: bool,
}

/// Nonzero faces that are not smooth, the cone itself included.
pub fn singular_faces(c: &Cone) -> Vec<Face> {
    c.faces().into_iter().filter(|f| !f.ray_indices.is_empty() && !f.cone.is_smooth()).collect()
}

/// Membership in `S` for a fixed cone, with face smoothness cached by ray set.
pub struct SingularLocus<'a> {
    cone: &'a Cone,
    singular: BTreeSet<Vec<usize>>,
}

impl<'a> SingularLocus<'a> {
    pub fn new(cone: &'a Cone) -> SingularLocus<'a> {
        let singular = singular_faces(cone).into_iter().map(|f| f.ray_indices).collect();
        SingularLocus { cone, singular }
    }

    pub fn is_empty(&self) -> bool {
        self.singular.is_empty()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        match self.cone.minimal_face_ray_indices(v) {
            Ok(set) => self.singular.contains(&set.into_iter().collect::<Vec<_>>()),
            Err(_) => false,
        }
    }
}

/// A dual vector positive on `σ ∖ {0}`, so that `v <_σ w` implies `⟨u, v⟩ < ⟨u, w⟩`.
fn height(c: &Cone) -> IntVector {
    c.facets().iter().fold(vec![Int::zero(); c.ambient_dim()], |a, f| add(&a, f))
}

/// The `≤_σ`-minimal elements of `points` (duplicates removed), sorted.
pub fn minimal_elements(c: &Cone, points: impl IntoIterator<Item = IntVector>) -> Vec<IntVector> {
    let u = height(c);
    let mut keyed: Vec<(Int, IntVector)> =
        points.into_iter().collect::<BTreeSet<_>>().into_iter().map(|p| (dot(&u, &p), p)).collect();
    keyed.sort();
    let mut minimal: Vec<IntVector> = Vec::new();
    for (_, p) in keyed {
        if !minimal.iter().any(|m| c.sigma_leq(m, &p)) {
            minimal.push(p);
        }
    }
    minimal.sort();
    minimal
}

fn triangulation(c: &Cone) -> Vec<Cone> {
    if c.is_simplicial() {
        return vec![c.clone()];
    }
    Fan::from_cone(c.clone()).simplicialize().maximal_cones().to_vec()
}

/// Lattice points `Σ c_i r_i`, `c_i ∈ [0, k]`, of a simplicial cone.
pub fn dilated_box_points(c: &Cone, k: u32) -> Result<Vec<IntVector>> {
    let rays = c.rays();
    let basis = rat_matrix(rays);
    let mut out = Vec::new();
    for p in c.box_points(false)? {
        let coeffs = solve_left(&basis, &to_rat(&p)).ok_or(Error::NotInCone)?;
        let ranges: Vec<u32> = coeffs.iter().map(|x| if x.is_zero() { k } else { k - 1 }).collect();
        let mut n = vec![0u32; rays.len()];
        loop {
            let shift = n
                .iter()
                .zip(rays)
                .fold(p.clone(), |a, (&m, r)| if m == 0 { a } else { add(&a, &scale(r, &Int::from(m))) });
            out.push(shift);
            let mut i = 0;
            while i < n.len() {
                if n[i] < ranges[i] {
                    n[i] += 1;
                    break;
                }
                n[i] = 0;
                i += 1;
            }
            if i == n.len() {
                break;
            }
        }
    }
    Ok(out)
}

pub fn essential_divisors(c: &Cone) -> Result<EssentialReport> {
    essential_divisors_with_dilation(c, DEFAULT_DILATION)
}

pub fn essential_divisors_with_dilation(c: &Cone, k: u32) -> Result<EssentialReport> {
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    if k == 0 {
        return Err(Error::Invalid("dilation factor must be positive".into()));
    }
    let locus = SingularLocus::new(c);
    let singular = singular_faces(c);
    if locus.is_empty() {
        return Ok(EssentialReport {
            cone: c.clone(),
            singular_faces: singular,
            minimal_points: vec![],
            candidate_box_bound: k,
            oracle_verified: true,
        });
    }
    let pieces = triangulation(c);
    let mut candidates = BTreeSet::new();
    for piece in &pieces {
        for p in piece.box_points(true)? {
            if locus.contains(&p) {
                candidates.insert(p);
            }
        }
    }
    let minimal = minimal_elements(c, candidates);
    let mut dilated = BTreeSet::new();
    for piece in &pieces {
        for p in dilated_box_points(piece, k)? {
            if locus.contains(&p) {
                dilated.insert(p);
            }
        }
    }
    let oracle = minimal_elements(c, dilated);
    Ok(EssentialReport {
        cone: c.clone(),
        singular_faces: singular,
        oracle_verified: oracle == minimal,
        minimal_points: minimal,
        candidate_box_bound: k,
    })
}

/// For `v = Σ b_i e_i` with all `b_i ≥ 1` in a singular simplicial cone with
/// a smooth facet `⟨e_1, ..., e_{m-1}⟩`, the point
/// `v' = Σ_{i<m} (c_i/c) e_i + (1/c) e_m` of `S` with `v' ≤_σ v`, `v' ≠ v`.
pub fn miz_witness(c: &Cone, v: &[Int]) -> Result<IntVector> {
    if !c.is_simplicial() {
        return Err(Error::Hypothesis("cone is not simplicial".into()));
    }
    let mult = c.multiplicity()?;
    if mult.is_one() {
        return Err(Error::Hypothesis("cone is smooth".into()));
    }
    let rays = c.rays();
    let m = rays.len();
    let coeffs = solve_left(&rat_matrix(rays), &to_rat(v)).ok_or(Error::NotInCone)?;
    if coeffs.iter().any(|b| *b < Rat::one()) {
        return Err(Error::Hypothesis("v has a coefficient below 1".into()));
    }
    let opposite = (0..m)
        .rev()
        .find(|&j| {
            let facet: Vec<usize> = (0..m).filter(|&i| i != j).collect();
            c.sub_cone(&facet).is_smooth()
        })
        .ok_or_else(|| Error::Hypothesis("no smooth facet".into()))?;
    let target = Rat::new(Int::one(), mult);
    let mut found = None;
    for p in c.box_points(false)? {
        let x = solve_left(&rat_matrix(rays), &to_rat(&p)).ok_or(Error::NotInCone)?;
        if x[opposite] == target {
            found = Some(p);
            break;
        }
    }
    let w = found.ok_or_else(|| Error::Verification("no box point with the required coefficient".into()))?;
    let locus = SingularLocus::new(c);
    if !locus.contains(&w) || !c.sigma_leq(&w, v) || w.as_slice() == v {
        return Err(Error::Verification("witness is not a smaller point of S".into()));
    }
    Ok(w)
}

/// `v ≤_σ v'`, which holds exactly when the closure of the arcs with
/// valuation `v` contains those with valuation `v'`.
pub fn dominance_check(c: &Cone, v: &[Int], v2: &[Int]) -> bool {
    c.sigma_leq(v, v2)
}

/// Whether the minimal face through `v` is a face of the minimal face through `v'`.
pub fn face_containment(c: &Cone, v: &[Int], v2: &[Int]) -> Result<bool> {
    let a = c.minimal_face_ray_indices(v)?;
    let b = c.minimal_face_ray_indices(v2)?;
    Ok(a.is_subset(&b))
}

/// An affine pretoric variety: the normalization's cone together with the
/// smooth faces whose orbit closures are the components of the preimage of
/// the singular locus outside the singular locus of the normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PretoricInput {
    cone: Cone,
    marked: Vec<Face>,
}

impl PretoricInput {
    /// `marked` lists generators of each face; they are matched against the faces of `cone`.
    pub fn new(cone: Cone, marked: &[Vec<IntVector>]) -> Result<PretoricInput> {
        if !cone.is_pointed() {
            return Err(Error::NotPointed);
        }
        let faces = cone.faces();
        let mut chosen: Vec<Face> = Vec::with_capacity(marked.len());
        for gens in marked {
            if gens.is_empty() {
                return Err(Error::Invalid("marked faces must be nonzero".into()));
            }
            let candidate = Cone::from_coords(cone.lattice().clone(), gens)?;
            let face = faces
                .iter()
                .find(|f| f.cone == candidate)
                .ok_or(Error::NotAFace)?;
            if !face.cone.is_smooth() {
                return Err(Error::Hypothesis("marked face is not smooth".into()));
            }
            chosen.push(face.clone());
        }
        for (i, a) in chosen.iter().enumerate() {
            for (j, b) in chosen.iter().enumerate() {
                let sa: BTreeSet<usize> = a.ray_indices.iter().copied().collect();
                let sb: BTreeSet<usize> = b.ray_indices.iter().copied().collect();
                if i != j && sa.is_subset(&sb) {
                    return Err(Error::Hypothesis("marked faces must be pairwise non-contained".into()));
                }
            }
        }
        Ok(PretoricInput { cone, marked: chosen })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn marked_faces(&self) -> &[Face] {
        &self.marked
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashReport {
    /// `e_i`, one per marked face, in input order.
    pub barycenters: Vec<IntVector>,
    /// Essential points `v_j` of the normalization.
    pub normalization_essential: Vec<IntVector>,
    /// Points whose arc families are the Nash components.
    pub nash_points: Vec<IntVector>,
    /// Points of the essential divisors over the variety.
    pub essential_points: Vec<IntVector>,
    /// Number of surviving `v_j`.
    pub w: usize,
    pub bijection: bool,
}

pub fn nash_components_pretoric(p: &PretoricInput) -> Result<NashReport> {
    let report = essential_divisors(&p.cone)?;
    if !report.oracle_verified {
        return Err(Error::Verification("essential divisors of the normalization are not certified".into()));
    }
    let barycenters: Vec<IntVector> = p.marked.iter().map(|f| f.cone.barycenter()).collect();
    let pool: Vec<IntVector> = barycenters.iter().chain(&report.minimal_points).cloned().collect();
    let minimal = minimal_elements(&p.cone, pool);
    if let Some(e) = barycenters.iter().find(|e| !minimal.contains(e)) {
        return Err(Error::Verification(format!("barycenter {e:?} is not minimal")));
    }
    let w = report.minimal_points.iter().filter(|v| minimal.contains(v) && !barycenters.contains(v)).count();
    let nash_points = minimal.clone();
    let essential_points = minimal;
    let bijection = nash_points == essential_points && nash_points.len() == barycenters.len() + w;
    Ok(NashReport {
        barycenters,
        normalization_essential: report.minimal_points,
        nash_points,
        essential_points,
        w,
        bijection,
    })
}
