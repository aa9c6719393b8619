//! Fans, star subdivisions and toric resolution.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{primitive, Lattice};
use crate::linalg::*;

/// Default node budget for [`Fan::resolve_avoiding_ray`].
pub const DEFAULT_AVOIDANCE_BUDGET: usize = 10_000;

/// Longest chain of star subdivisions explored by the avoidance search.
const MAX_AVOIDANCE_DEPTH: usize = 48;

/// A fan, stored by its maximal cones in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    lattice: Lattice,
    cones: Vec<Cone>,
}

impl Fan {
    /// Builds a fan from cones, dropping cones that are faces of others and
    /// checking that every pair meets in a common face.
    pub fn new(cones: Vec<Cone>) -> Result<Fan> {
        let fan = Fan::from_cones_unchecked(cones)?;
        if !fan.is_valid() {
            return Err(Error::NotAFan);
        }
        Ok(fan)
    }

    pub fn from_cone(c: Cone) -> Fan {
        Fan { lattice: c.lattice().clone(), cones: vec![c] }
    }

    fn from_cones_unchecked(cones: Vec<Cone>) -> Result<Fan> {
        let first = cones
            .first()
            .ok_or_else(|| Error::Invalid("a fan needs at least one cone".into()))?;
        let lattice = first.lattice().clone();
        if cones.iter().any(|c| *c.lattice() != lattice) {
            return Err(Error::Invalid("cones live in different lattices".into()));
        }
        let mut uniq: Vec<Cone> = Vec::new();
        for c in cones {
            if !uniq.contains(&c) {
                uniq.push(c);
            }
        }
        let maximal: Vec<Cone> = uniq
            .iter()
            .filter(|c| !uniq.iter().any(|d| d != *c && d.contains_cone(c)))
            .cloned()
            .collect();
        Ok(Fan::canonical(lattice, maximal))
    }

    fn canonical(lattice: Lattice, mut cones: Vec<Cone>) -> Fan {
        cones.sort_by(|a, b| a.rays().cmp(b.rays()));
        cones.dedup();
        Fan { lattice, cones }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Distinct rays of the fan, sorted.
    pub fn rays(&self) -> IntMatrix {
        let set: BTreeSet<IntVector> = self.cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        set.into_iter().collect()
    }

    pub fn rays_ambient(&self) -> Vec<RatVector> {
        self.rays().iter().map(|r| self.lattice.to_ambient_int(r)).collect()
    }

    /// Every cone of the fan (faces of maximal cones), without repetition.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        let mut seen: HashSet<Cone> = HashSet::new();
        for c in &self.cones {
            for f in c.faces() {
                if seen.insert(f.cone.clone()) {
                    out.push(f.cone);
                }
            }
        }
        out
    }

    pub fn support_contains(&self, v: &[Int]) -> bool {
        self.cones.iter().any(|c| c.contains(v))
    }

    /// Pairwise intersections are faces of both cones.
    pub fn is_valid(&self) -> bool {
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                let m = a.intersection(b);
                if !a.is_face(&m) || !b.is_face(&m) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_smooth_fan(&self) -> bool {
        self.cones.iter().all(Cone::is_smooth)
    }

    pub fn is_simplicial_fan(&self) -> bool {
        self.cones.iter().all(Cone::is_simplicial)
    }

    pub fn multiplicities(&self) -> Vec<Option<Int>> {
        self.cones.iter().map(|c| c.multiplicity().ok()).collect()
    }

    /// Star subdivision at the primitive vector on the ray of `v` (lattice coordinates).
    pub fn star_subdivision(&self, v: &[Int]) -> Result<Fan> {
        let w = primitive(v)?;
        if w.len() != self.lattice.dim() {
            return Err(Error::DimensionMismatch { expected: self.lattice.dim(), found: w.len() });
        }
        if !self.support_contains(&w) {
            return Err(Error::OutsideSupport);
        }
        let mut out = Vec::new();
        for c in &self.cones {
            if !c.contains(&w) {
                out.push(c.clone());
                continue;
            }
            if c.is_simplicial() && c.rays().contains(&w) {
                out.push(c.clone());
                continue;
            }
            for f in c.facets() {
                if dot(f, &w).is_zero() {
                    continue;
                }
                let mut gens: IntMatrix = c
                    .rays()
                    .iter()
                    .filter(|r| dot(f, r).is_zero())
                    .cloned()
                    .collect();
                gens.extend(c.lineality().iter().cloned());
                gens.extend(c.lineality().iter().map(|l| scale(l, &Int::from(-1))));
                gens.push(w.clone());
                out.push(Cone::from_coords(self.lattice.clone(), &gens)?);
            }
            if c.facets().is_empty() {
                out.push(c.clone());
            }
        }
        Ok(Fan::canonical(self.lattice.clone(), out))
    }

    /// Star subdivision at an ambient rational point.
    pub fn star_subdivision_ambient(&self, v: &[Rat]) -> Result<Fan> {
        self.star_subdivision(&primitive_direction(&self.lattice.coords(v)))
    }

    /// Triangulates the fan using only its existing rays.
    pub fn simplicialize(&self) -> Fan {
        let mut fan = self.clone();
        loop {
            let mut best: Option<Cone> = None;
            for c in fan.cones.iter().filter(|c| !c.is_simplicial()) {
                for f in c.faces() {
                    if f.cone.is_simplicial() {
                        continue;
                    }
                    let better = match &best {
                        None => true,
                        Some(b) => (f.cone.dim(), f.cone.rays()) < (b.dim(), b.rays()),
                    };
                    if better {
                        best = Some(f.cone);
                    }
                }
            }
            let Some(target) = best else { return fan };
            let center = target.rays()[0].clone();
            fan = fan.star_subdivision(&center).expect("center is a ray of the fan");
        }
    }

    /// The maximal cone to subdivide next: largest multiplicity, ties to the
    /// smallest ray matrix. `None` once the fan is smooth.
    fn worst_cone(&self) -> Option<&Cone> {
        let mut best: Option<(&Cone, Int)> = None;
        for c in &self.cones {
            let m = c.multiplicity().expect("simplicial fan");
            if m.is_one() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, bm)) => m > *bm || (m == *bm && c.rays() < b.rays()),
            };
            if better {
                best = Some((c, m));
            }
        }
        best.map(|(c, _)| c)
    }

    /// Centers ordered by the sum of absolute ambient numerators, then lexicographically.
    fn ordered_centers(&self, pts: Vec<IntVector>) -> Vec<IntVector> {
        let mut keyed: Vec<(Int, RatVector, IntVector)> = pts
            .into_iter()
            .map(|p| {
                let a = self.lattice.to_ambient_int(&p);
                (abs_sum_numerators(&a), a, p)
            })
            .collect();
        keyed.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| cmp_rat_vec(&x.1, &y.1)));
        keyed.into_iter().map(|(_, _, p)| p).collect()
    }

    /// The nonzero half-open box point that [`Fan::ordered_centers`] puts first.
    fn shortest_box_point(&self, c: &Cone) -> IntVector {
        let standard = self.lattice.is_standard();
        let mut best: Option<(Int, RatVector, IntVector)> = None;
        c.for_each_box_point(false, |p| {
            if is_zero(&p) {
                return;
            }
            let (key, amb) = if standard {
                (p.iter().map(|x| x.abs()).sum(), to_rat(&p))
            } else {
                let a = self.lattice.to_ambient_int(&p);
                (abs_sum_numerators(&a), a)
            };
            let better = match &best {
                None => true,
                Some((k, a, _)) => key < *k || (key == *k && cmp_rat_vec(&amb, a) == Ordering::Less),
            };
            if better {
                best = Some((key, amb, p));
            }
        })
        .expect("simplicial");
        best.expect("singular cone has a nonzero box point").2
    }

    /// A smooth refinement with the same support.
    pub fn resolve(&self) -> Fan {
        let mut work = WorkingFan::new(&self.simplicialize());
        while let Some(c) = work.worst() {
            let center = primitive_part(&self.shortest_box_point(&c));
            let face = c.minimal_face_ray_indices(&center).expect("box point lies in the cone");
            let face_rays: IntMatrix = face.into_iter().map(|i| c.rays()[i].clone()).collect();
            work.star(&center, &face_rays);
        }
        work.into_fan()
    }

    /// A smooth refinement whose rays avoid `forbidden`, found by bounded
    /// backtracking over subdivision centers.
    pub fn resolve_avoiding_ray(&self, forbidden: &[Int]) -> Result<Fan> {
        self.resolve_avoiding_ray_with_budget(forbidden, DEFAULT_AVOIDANCE_BUDGET)
    }

    pub fn resolve_avoiding_ray_with_budget(&self, forbidden: &[Int], budget: usize) -> Result<Fan> {
        let w = primitive(forbidden)?;
        if !self.support_contains(&w) {
            return Ok(self.resolve());
        }
        if self.rays().contains(&w) {
            return Err(Error::Invalid("the forbidden vector is already a ray of the fan".into()));
        }
        for c in self.cones.iter().filter(|c| c.contains(&w)) {
            if crate::essential::essential_divisors(c)?.minimal_points.contains(&w) {
                return Err(Error::Unavoidable);
            }
        }
        let start = self.simplicialize();
        let mut search = AvoidSearch { forbidden: w, budget, nodes: 0, visited: HashSet::new() };
        if let Some(f) = search.dfs(start.clone(), false) {
            return Ok(f);
        }
        search.visited.clear();
        if let Some(f) = search.dfs(start, true) {
            return Ok(f);
        }
        Err(Error::AvoidanceFailed { nodes: search.nodes })
    }

    /// `self` refines `coarse`: every cone lies in a cone of `coarse` and the
    /// maximal cones inside each coarse cone tile it. Tiling is checked on
    /// walls: a facet of a fine cone either lies on the boundary of the
    /// coarse cone or is shared by exactly two fine cones.
    pub fn refines(&self, coarse: &Fan) -> bool {
        if self.lattice != coarse.lattice {
            return false;
        }
        let mut inside: Vec<Vec<&Cone>> = vec![Vec::new(); coarse.cones.len()];
        for c in &self.cones {
            let mut placed = false;
            for (k, d) in coarse.cones.iter().enumerate() {
                if d.contains_cone(c) {
                    placed = true;
                    if c.dim() == d.dim() {
                        inside[k].push(c);
                    }
                }
            }
            if !placed {
                return false;
            }
        }
        for (d, fine) in coarse.cones.iter().zip(&inside) {
            if !d.is_pointed() || fine.is_empty() {
                return false;
            }
            let mut walls: HashMap<IntMatrix, usize> = HashMap::new();
            for c in fine {
                for f in c.facets() {
                    let wall: IntMatrix = c.rays().iter().filter(|r| dot(f, r).is_zero()).cloned().collect();
                    let on_boundary = d
                        .facets()
                        .iter()
                        .any(|g| wall.iter().all(|r| dot(g, r).is_zero()) && c.rays().iter().any(|r| !dot(g, r).is_zero()));
                    if !on_boundary {
                        *walls.entry(wall).or_default() += 1;
                    }
                }
            }
            if walls.values().any(|&k| k != 2) {
                return false;
            }
        }
        true
    }
}

/// A simplicial fan under repeated star subdivision, indexed by rays so that
/// each step only touches the cones around the center.
struct WorkingFan {
    lattice: Lattice,
    cones: HashMap<usize, Cone>,
    by_ray: HashMap<IntVector, BTreeSet<usize>>,
    singular: BTreeSet<(Reverse<Int>, IntMatrix, usize)>,
    next_id: usize,
}

impl WorkingFan {
    fn new(f: &Fan) -> WorkingFan {
        let mut w = WorkingFan {
            lattice: f.lattice.clone(),
            cones: HashMap::new(),
            by_ray: HashMap::new(),
            singular: BTreeSet::new(),
            next_id: 0,
        };
        for c in &f.cones {
            w.insert(c.clone());
        }
        w
    }

    fn insert(&mut self, c: Cone) {
        let id = self.next_id;
        self.next_id += 1;
        for r in c.rays() {
            self.by_ray.entry(r.clone()).or_default().insert(id);
        }
        let m = c.multiplicity().expect("simplicial fan");
        if !m.is_one() {
            self.singular.insert((Reverse(m), c.rays().clone(), id));
        }
        self.cones.insert(id, c);
    }

    fn remove(&mut self, id: usize) -> Cone {
        let c = self.cones.remove(&id).expect("live cone");
        for r in c.rays() {
            if let Some(set) = self.by_ray.get_mut(r) {
                set.remove(&id);
            }
        }
        let m = c.multiplicity().expect("simplicial fan");
        self.singular.remove(&(Reverse(m), c.rays().clone(), id));
        c
    }

    fn worst(&self) -> Option<Cone> {
        self.singular.first().map(|(_, _, id)| self.cones[id].clone())
    }

    /// Star subdivision at `w`, whose minimal containing face has rays `face_rays`.
    fn star(&mut self, w: &IntVector, face_rays: &[IntVector]) {
        let mut ids: Option<BTreeSet<usize>> = None;
        for r in face_rays {
            let set = self.by_ray.get(r).cloned().unwrap_or_default();
            ids = Some(match ids {
                None => set,
                Some(acc) => acc.intersection(&set).copied().collect(),
            });
        }
        for id in ids.unwrap_or_default() {
            let c = self.remove(id);
            for f in c.facets() {
                if dot(f, w).is_zero() {
                    continue;
                }
                let mut gens: IntMatrix = c.rays().iter().filter(|r| dot(f, r).is_zero()).cloned().collect();
                gens.push(w.clone());
                self.insert(Cone::from_coords(self.lattice.clone(), &gens).expect("same lattice"));
            }
        }
    }

    fn into_fan(self) -> Fan {
        Fan::canonical(self.lattice, self.cones.into_values().collect())
    }
}

fn cmp_rat_vec(a: &[Rat], b: &[Rat]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

struct AvoidSearch {
    forbidden: IntVector,
    budget: usize,
    nodes: usize,
    visited: HashSet<Fan>,
}

impl AvoidSearch {
    /// Subdivision centers for the worst cone of `fan`, in search order;
    /// `None` once the fan is smooth.
    fn centers(&self, fan: &Fan, closed: bool) -> Option<Vec<IntVector>> {
        let c = fan.worst_cone()?;
        let existing = fan.rays();
        let pts: Vec<IntVector> = c
            .box_points(closed)
            .expect("simplicial")
            .into_iter()
            .filter(|p| !is_zero(p) && *p != self.forbidden)
            .filter(|p| {
                let q = primitive_part(p);
                q != self.forbidden && !existing.contains(&q)
            })
            .collect();
        let mut centers = fan.ordered_centers(pts);
        centers.reverse();
        Some(centers)
    }

    fn dfs(&mut self, start: Fan, closed: bool) -> Option<Fan> {
        let mut stack: Vec<(Fan, Vec<IntVector>)> = Vec::new();
        let mut next = Some(start);
        loop {
            if let Some(fan) = next.take() {
                if self.nodes >= self.budget {
                    return None;
                }
                if self.visited.insert(fan.clone()) {
                    self.nodes += 1;
                    match self.centers(&fan, closed) {
                        None => return Some(fan),
                        Some(_) if stack.len() >= MAX_AVOIDANCE_DEPTH => {}
                        Some(centers) => stack.push((fan, centers)),
                    }
                }
            }
            let (fan, centers) = stack.last_mut()?;
            match centers.pop() {
                Some(w) => next = Some(fan.star_subdivision(&w).expect("center lies in the cone")),
                None => {
                    stack.pop();
                }
            }
        }
    }
}
