//! Strictly convex rational polyhedral cones and their combinatorics.

mod fan;
mod hilbert;
mod triangulation;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, rank_of, LatticeEmbedding, LatticeVector};

pub use fan::Fan;
pub use hilbert::{parallelepiped_points, semigroup_generators, GeneratorSet};
pub(crate) use hilbert::cube_points;
pub use triangulation::{triangulate, triangulate_with_order, Cell, Triangulation};

/// A strictly convex cone given by its primitive extreme rays.
///
/// The H-description is computed once at construction: `facets` are ambient
/// functionals that are nonnegative on the cone and cut out its facets inside
/// the linear span; `span` gives lattice coordinates on `span ∩ Z^n`.
#[derive(Clone, Debug)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    span: LatticeEmbedding,
    facets: Vec<LatticeVector>,
    local_facets: Vec<LatticeVector>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Cone {
    /// Builds the cone generated by `generators`.
    ///
    /// Generators are made primitive, duplicates and zero vectors are dropped
    /// and non-extreme generators are discarded; the order of the surviving
    /// rays is the input order.
    pub fn new(rank: usize, generators: Vec<LatticeVector>) -> Result<Cone> {
        let mut seen = HashSet::new();
        let mut rays = Vec::new();
        for g in generators {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: g.rank() });
            }
            if g.is_zero() {
                continue;
            }
            let p = g.primitive()?;
            if seen.insert(p.clone()) {
                rays.push(p);
            }
        }
        let span = LatticeEmbedding::of_span(rank, &rays);
        let k = span.dim();
        let local_rays: Vec<LatticeVector> =
            rays.iter().map(|r| span.project(r).expect("ray lies in its own span")).collect();
        let local_facets = double_description(k, &local_rays);
        if rank_of(k, &local_facets) < k {
            return Err(Error::NotStrictlyConvex);
        }
        if k > 0 {
            let extreme: Vec<bool> = local_rays
                .iter()
                .map(|r| {
                    let tight: Vec<LatticeVector> =
                        local_facets.iter().filter(|f| f.dot(r).is_zero()).cloned().collect();
                    rank_of(k, &tight) == k - 1
                })
                .collect();
            rays = rays.into_iter().zip(extreme).filter(|(_, e)| *e).map(|(r, _)| r).collect();
        }
        let facets = local_facets.iter().map(|a| span.lift_functional(a)).collect();
        Ok(Cone { rank, rays, span, facets, local_facets })
    }

    pub fn from_i64(rank: usize, rays: &[&[i64]]) -> Result<Cone> {
        Cone::new(rank, rays.iter().map(|r| LatticeVector::from_i64(r)).collect())
    }

    pub fn trivial(rank: usize) -> Cone {
        Cone::new(rank, Vec::new()).expect("trivial cone is valid")
    }

    pub fn orthant(rank: usize) -> Cone {
        Cone::new(rank, (0..rank).map(|i| LatticeVector::unit(rank, i)).collect())
            .expect("orthant is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.rank
    }

    pub fn span(&self) -> &LatticeEmbedding {
        &self.span
    }

    /// Ambient facet functionals (nonnegative on the cone).
    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    /// Facet normals in the span's lattice coordinates.
    pub fn local_facets(&self) -> &[LatticeVector] {
        &self.local_facets
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// Sum of the primitive facet normals; positive on every nonzero point.
    pub fn grading(&self) -> LatticeVector {
        self.facets.iter().fold(LatticeVector::zero(self.rank), |acc, f| &acc + f)
    }

    /// Membership in the cone, or in its relative interior.
    pub fn contains(&self, v: &LatticeVector, interior: bool) -> bool {
        if v.rank() != self.rank || !self.span.contains(v) {
            return false;
        }
        self.facets.iter().all(|f| {
            let s = f.dot(v);
            if interior {
                s.is_positive()
            } else {
                !s.is_negative()
            }
        })
    }

    /// Subcone spanned by the rays with the given indices.
    pub fn subcone(&self, indices: &[usize]) -> Cone {
        Cone::new(self.rank, indices.iter().map(|&i| self.rays[i].clone()).collect())
            .expect("subset of rays of a strictly convex cone")
    }

    /// Same cone with rays permuted; `order[i]` is the old index of new ray `i`.
    pub fn reordered(&self, order: &[usize]) -> Result<Cone> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.rays.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidInput(format!(
                "ray order {order:?} is not a permutation of 0..{}",
                self.rays.len()
            )));
        }
        let mut c = self.clone();
        c.rays = order.iter().map(|&i| self.rays[i].clone()).collect();
        Ok(c)
    }

    /// Index of `v` among the rays.
    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    fn facet_ray_sets(&self) -> Vec<BTreeSet<usize>> {
        self.facets
            .iter()
            .map(|f| (0..self.rays.len()).filter(|&i| f.dot(&self.rays[i]).is_zero()).collect())
            .collect()
    }

    /// Smallest face containing the rays with the given indices.
    pub fn face_closure(&self, indices: &[usize]) -> Vec<usize> {
        let mut face: BTreeSet<usize> = (0..self.rays.len()).collect();
        for tight in self.facet_ray_sets() {
            if indices.iter().all(|i| tight.contains(i)) {
                face = face.intersection(&tight).copied().collect();
            }
        }
        face.into_iter().collect()
    }

    /// Compares the ray sets, ignoring order.
    pub fn same_rays_as(&self, other: &Cone) -> bool {
        let a: BTreeSet<_> = self.rays.iter().collect();
        let b: BTreeSet<_> = other.rays.iter().collect();
        self.rank == other.rank && a == b
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone[")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

struct DdRay {
    v: LatticeVector,
    tight: Vec<bool>,
}

/// Extreme rays of `{a ∈ R^k : c·a ≥ 0 for every constraint c}` by the
/// double description method. Exact when the constraints have rank `k`;
/// otherwise the returned rays have rank `< k`.
fn double_description(k: usize, constraints: &[LatticeVector]) -> Vec<LatticeVector> {
    if k == 0 {
        return Vec::new();
    }
    let mut basis: Vec<usize> = Vec::new();
    for (i, _) in constraints.iter().enumerate() {
        let mut trial: Vec<LatticeVector> = basis.iter().map(|&j| constraints[j].clone()).collect();
        trial.push(constraints[i].clone());
        if rank_of(k, &trial) == trial.len() {
            basis.push(i);
            if basis.len() == k {
                break;
            }
        }
    }
    if basis.len() < k {
        return Vec::new();
    }
    let m = constraints.len();
    let mut processed = vec![false; m];
    for &b in &basis {
        processed[b] = true;
    }
    // The cone cut out by k independent constraints is simplicial.
    let mut rays: Vec<DdRay> = Vec::new();
    for (pos, &b) in basis.iter().enumerate() {
        let others: Vec<LatticeVector> = basis
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, &j)| constraints[j].clone())
            .collect();
        let kernel = integer_kernel(k, &others);
        debug_assert_eq!(kernel.len(), 1);
        let mut v = kernel.into_iter().next().expect("one-dimensional kernel");
        if constraints[b].dot(&v).is_negative() {
            v = -&v;
        }
        let tight = (0..m).map(|j| processed[j] && constraints[j].dot(&v).is_zero()).collect();
        rays.push(DdRay { v, tight });
    }

    for c in 0..m {
        if processed[c] {
            continue;
        }
        let cons = &constraints[c];
        let values: Vec<BigInt> = rays.iter().map(|r| cons.dot(&r.v)).collect();
        let mut next: Vec<DdRay> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        for p in &pos {
            for n in &neg {
                let common: Vec<usize> =
                    (0..m).filter(|&j| rays[*p].tight[j] && rays[*n].tight[j]).collect();
                if k >= 2 && common.len() < k - 2 {
                    continue;
                }
                let rows: Vec<LatticeVector> = common.iter().map(|&j| constraints[j].clone()).collect();
                if rank_of(k, &rows) != k.saturating_sub(2) {
                    continue;
                }
                let combo = &rays[*n].v.scale(&values[*p]) - &rays[*p].v.scale(&values[*n]);
                let v = combo.primitive().expect("adjacent rays are independent");
                let mut tight = vec![false; m];
                for &j in &common {
                    tight[j] = true;
                }
                tight[c] = true;
                next.push(DdRay { v, tight });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            r.tight[c] = values[i].is_zero();
            next.push(r);
        }
        processed[c] = true;
        rays = next;
    }
    let mut out: Vec<LatticeVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

/// Dual cone `{v : ⟨v,w⟩ ≥ 0 ∀ w ∈ c}` with rays in descending lexicographic order.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional { dim: c.dim(), rank: c.rank() });
    }
    let mut rays = c.facets.clone();
    rays.sort_by(|a, b| b.cmp(a));
    Cone::new(c.rank, rays)
}

/// One face of a cone, recorded by the indices of its rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub rays: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub cone: Cone,
    /// Sorted by dimension, then by ray indices.
    pub faces: Vec<Face>,
    /// Strict inclusions `(i, j)`: face `i` is a proper face of face `j`.
    pub containment: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn face_cone(&self, i: usize) -> Cone {
        self.cone.subcone(&self.faces[i].rays)
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn position(&self, rays: &[usize]) -> Option<usize> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.faces.iter().position(|f| f.rays == key)
    }
}

/// All faces, as intersections of facet ray sets.
pub fn face_lattice(c: &Cone) -> FaceLattice {
    let top: BTreeSet<usize> = (0..c.rays.len()).collect();
    let facet_sets = c.facet_ray_sets();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(top.iter().copied().collect());
    let mut work = vec![top];
    while let Some(face) = work.pop() {
        for t in &facet_sets {
            let g: BTreeSet<usize> = face.intersection(t).copied().collect();
            let key: Vec<usize> = g.iter().copied().collect();
            if found.insert(key) {
                work.push(g);
            }
        }
    }
    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|rays| {
            let gens: Vec<LatticeVector> = rays.iter().map(|&i| c.rays[i].clone()).collect();
            Face { dim: rank_of(c.rank, &gens), rays }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
    let mut containment = Vec::new();
    for (i, a) in faces.iter().enumerate() {
        for (j, b) in faces.iter().enumerate() {
            if i != j && a.rays.iter().all(|r| b.rays.contains(r)) {
                containment.push((i, j));
            }
        }
    }
    FaceLattice { cone: c.clone(), faces, containment }
}

/// `σ∨ ∩ τ⊥` for a face `τ` of a full-dimensional `σ`.
#[derive(Clone, Debug)]
pub struct DualFace {
    /// The face as a cone in the ambient dual lattice.
    pub cone: Cone,
    /// Lattice coordinates on `τ⊥ ∩ M`.
    pub perp: LatticeEmbedding,
    /// The same cone expressed in `perp` coordinates (full-dimensional there).
    pub local: Cone,
}

pub fn dual_face(c: &Cone, tau: &Cone) -> Result<DualFace> {
    if tau.rank() != c.rank() {
        return Err(Error::RankMismatch { expected: c.rank(), got: tau.rank() });
    }
    let indices: Option<Vec<usize>> = tau.rays().iter().map(|r| c.ray_index(r)).collect();
    let indices = indices.ok_or(Error::NotAFace)?;
    dual_face_by_indices(c, &indices)
}

pub fn dual_face_by_indices(c: &Cone, indices: &[usize]) -> Result<DualFace> {
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional { dim: c.dim(), rank: c.rank() });
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().any(|&i| i >= c.rays.len()) || c.face_closure(&sorted) != sorted {
        return Err(Error::NotAFace);
    }
    let tau_rays: Vec<LatticeVector> = sorted.iter().map(|&i| c.rays[i].clone()).collect();
    let dual_rays: Vec<LatticeVector> = {
        let mut f: Vec<LatticeVector> = c
            .facets
            .iter()
            .filter(|f| tau_rays.iter().all(|r| f.dot(r).is_zero()))
            .cloned()
            .collect();
        f.sort_by(|a, b| b.cmp(a));
        f
    };
    let cone = Cone::new(c.rank, dual_rays.clone())?;
    let perp = LatticeEmbedding::of_orthogonal(c.rank, &tau_rays);
    let local_rays = dual_rays
        .iter()
        .map(|r| perp.project(r).expect("dual face lies in the orthogonal complement"))
        .collect();
    let local = Cone::new(perp.dim(), local_rays)?;
    Ok(DualFace { cone, perp, local })
}
