use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{triangulate, Cone};
use crate::error::{Error, Result};
use crate::lattice::{smith_decomposition, IntegerMatrix, LatticeEmbedding, LatticeVector};

/// Semigroup generators `w_1, …, w_K` of `cone ∩ Z^n`; the first
/// `cone.rays().len()` entries are the primitive ray vectors in ray order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub cone: Cone,
    pub generators: Vec<LatticeVector>,
}

impl GeneratorSet {
    /// Checks the structural invariants of a user-supplied generating set.
    /// Whether the vectors actually generate is an oracle question.
    pub fn new(cone: Cone, generators: Vec<LatticeVector>) -> Result<GeneratorSet> {
        let k = cone.rays().len();
        if generators.len() < k || generators[..k] != *cone.rays() {
            return Err(Error::InvalidInput(
                "generators must start with the primitive ray vectors in ray order".into(),
            ));
        }
        if let Some(g) = generators.iter().find(|g| !cone.contains(g, false) || g.is_zero()) {
            return Err(Error::InvalidInput(format!("generator {g} is not a nonzero point of the cone")));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::InvalidInput(format!("duplicate generator {g}")));
            }
        }
        Ok(GeneratorSet { cone, generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn ray_count(&self) -> usize {
        self.cone.rays().len()
    }

    pub fn index_of(&self, v: &LatticeVector) -> Option<usize> {
        self.generators.iter().position(|g| g == v)
    }
}

/// Lattice points of the half-open parallelepiped `{Σ θ_i r_i : θ_i ∈ [0,1)}`
/// spanned by the rays of a simplicial cone, sorted lexicographically.
///
/// With `U·A·V = D` the Smith form of the rays in span coordinates, the
/// points are the fractional parts of `c·D^{-1}·U` (in ray coordinates) for
/// `c` ranging over `∏ [0, d_i)`.
pub fn parallelepiped_points(c: &Cone) -> Result<Vec<LatticeVector>> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial { rays: c.rays().len(), dim: c.dim() });
    }
    let mut points: Vec<LatticeVector> =
        cube_points(c.rank(), c.rays()).into_iter().map(|(p, _)| p).collect();
    points.sort();
    Ok(points)
}

/// Parallelepiped points of linearly independent `rays`, each with its
/// coordinates `θ ∈ [0,1)^k` in the ray basis.
pub(crate) fn cube_points(rank: usize, rays: &[LatticeVector]) -> Vec<(LatticeVector, Vec<BigRational>)> {
    let k = rays.len();
    if k == 0 {
        return vec![(LatticeVector::zero(rank), Vec::new())];
    }
    let span = LatticeEmbedding::of_span(rank, rays);
    debug_assert_eq!(span.dim(), k, "rays must be linearly independent");
    let local: Vec<LatticeVector> =
        rays.iter().map(|r| span.project(r).expect("ray lies in span")).collect();
    let s = smith_decomposition(&IntegerMatrix::from_rows(k, &local));
    let d: Vec<BigInt> = (0..k).map(|i| s.d.get(i, i).clone()).collect();
    let total: usize = d
        .iter()
        .map(|x| x.to_usize().expect("parallelepiped too large to enumerate"))
        .product();

    let mut points = Vec::with_capacity(total);
    let mut counter = vec![BigInt::zero(); k];
    for _ in 0..total {
        let mut theta = vec![BigRational::zero(); k];
        for (i, ci) in counter.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let scale = BigRational::new(ci.clone(), d[i].clone());
            for (j, t) in theta.iter_mut().enumerate() {
                *t += &scale * BigRational::from_integer(s.u.get(i, j).clone());
            }
        }
        for t in theta.iter_mut() {
            *t = &*t - t.floor();
        }
        let mut point = vec![BigRational::zero(); rank];
        for (t, ray) in theta.iter().zip(rays) {
            if t.is_zero() {
                continue;
            }
            for (p, x) in point.iter_mut().zip(ray.coords()) {
                *p += t * BigRational::from_integer(x.clone());
            }
        }
        let point = LatticeVector::new(
            point
                .into_iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect(),
        );
        points.push((point, theta));
        // Mixed-radix increment.
        for i in 0..k {
            counter[i] += 1;
            if counter[i] < d[i] {
                break;
            }
            counter[i] = BigInt::zero();
        }
    }
    points
}

/// Hilbert basis of `c ∩ Z^n`, rays first.
///
/// Candidates are the rays together with the parallelepiped points of every
/// maximal cell of a triangulation; a candidate is dropped when subtracting a
/// smaller irreducible candidate keeps it inside the cone.
pub fn semigroup_generators(c: &Cone) -> GeneratorSet {
    let grading = c.grading();
    let t = triangulate(c);
    let mut candidates: Vec<LatticeVector> = Vec::new();
    for cell in &t.maximal_cells {
        for (p, _) in cube_points(c.rank(), &t.cell_rays(cell)) {
            if !p.is_zero() && c.ray_index(&p).is_none() {
                candidates.push(p);
            }
        }
    }
    let key = |v: &LatticeVector| (v.dot(&grading), v.clone());
    candidates.sort_by_key(key);
    candidates.dedup();

    let mut irreducible: Vec<(BigInt, LatticeVector)> =
        c.rays().iter().map(|r| (r.dot(&grading), r.clone())).collect();
    let mut extra = Vec::new();
    for v in candidates {
        let level = v.dot(&grading);
        let reducible = irreducible
            .iter()
            .filter(|(l, _)| *l < level)
            .any(|(_, w)| c.contains(&(&v - w), false));
        if !reducible {
            irreducible.push((level, v.clone()));
            extra.push(v);
        }
    }
    let mut generators = c.rays().to_vec();
    generators.extend(extra);
    GeneratorSet { cone: c.clone(), generators }
}
