use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{genfun_equal, GroupRingElement, RationalGenFun, SPolynomial};
use crate::cone::{
    cube_points, face_lattice, semigroup_generators, triangulate, Cone, GeneratorSet, Triangulation,
};
use crate::error::{Error, Result};
use crate::lattice::{solve_in_basis, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumKind {
    Closed,
    Interior,
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumKind::Closed => "closed",
            SumKind::Interior => "interior",
        })
    }
}

/// `Σ e^m` over the lattice points of a cone (or of its relative interior),
/// written as `sign · ∏ 1/S_r · P` with `r` running over the rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedConeSum {
    pub cone: Cone,
    pub kind: SumKind,
    /// `(−1)^{dim}`.
    pub sign: i32,
    pub ray_denominator: Vec<LatticeVector>,
    pub certificate: SPolynomial,
    /// Computed independently of the certificate.
    pub value: RationalGenFun,
}

impl CertifiedConeSum {
    /// Value of `sign · ∏ 1/S_r · P` as a rational generating function.
    pub fn certificate_value(&self) -> RationalGenFun {
        // 1/S_r = −1/(1 − e^r)
        let k = self.ray_denominator.len() as i32;
        let s = if (self.sign < 0) ^ (k % 2 == 1) { -BigInt::one() } else { BigInt::one() };
        let numerator = self.certificate.substitute().scale(&s);
        RationalGenFun::new(numerator, self.ray_denominator.clone())
            .expect("rays are nonzero")
    }

    /// The certificate represents the computed value.
    pub fn verify(&self) -> bool {
        genfun_equal(&self.value, &self.certificate_value())
    }

    pub fn is_certificate_nonnegative(&self) -> bool {
        self.certificate.is_nonnegative()
    }

    pub fn generators(&self) -> &[LatticeVector] {
        self.certificate.variables()
    }
}

/// `(-1)^d * 1/(S[r1]*S[r2]) * (P)`.
impl fmt::Display for CertifiedConeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-1)^{}", self.cone.dim())?;
        if !self.ray_denominator.is_empty() {
            let rays: Vec<String> = self.ray_denominator.iter().map(|r| format!("S[{r}]")).collect();
            write!(f, " * 1/({})", rays.join("*"))?;
        }
        write!(f, " * ({})", self.certificate)
    }
}

pub fn grading_functional(c: &Cone) -> LatticeVector {
    c.grading()
}

/// Lexicographically smallest decompositions `u = Σ c_i w_i` over a fixed
/// generator list, with memoised feasibility checks.
///
/// Runs on `i64` coordinates when all inputs are small and on `BigInt`
/// otherwise.
pub struct Decomposer<'a> {
    gens: &'a GeneratorSet,
    small: Option<Search<i64>>,
    big: Search<BigInt>,
}

/// Generators and facet inequalities in a fixed integer type.
struct Search<T> {
    gens: Vec<Vec<T>>,
    facets: Vec<Vec<T>>,
    feasible: HashMap<(Vec<T>, usize), bool>,
}

const SMALL_LIMIT: i64 = 1 << 24;

fn to_small(v: &LatticeVector) -> Option<Vec<i64>> {
    v.to_i64().filter(|c| c.iter().all(|x| x.abs() < SMALL_LIMIT))
}

impl<T> Search<T>
where
    T: Clone + Eq + std::hash::Hash + Zero + PartialOrd + for<'x> std::ops::AddAssign<&'x T>,
    for<'x> &'x T: std::ops::Sub<&'x T, Output = T> + std::ops::Mul<&'x T, Output = T>,
{
    fn in_cone(&self, v: &[T]) -> bool {
        let zero = T::zero();
        self.facets.iter().all(|f| {
            let mut s = T::zero();
            for (a, b) in f.iter().zip(v) {
                s += &(a * b);
            }
            s >= zero
        })
    }

    fn minus(v: &[T], w: &[T]) -> Vec<T> {
        v.iter().zip(w).map(|(a, b)| a - b).collect()
    }

    fn decomposable(&mut self, v: &[T], start: usize) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if start >= self.gens.len() {
            return false;
        }
        let key = (v.to_vec(), start);
        if let Some(&b) = self.feasible.get(&key) {
            return b;
        }
        let mut found = false;
        for j in start..self.gens.len() {
            let next = Self::minus(v, &self.gens[j]);
            if self.in_cone(&next) && self.decomposable(&next, j) {
                found = true;
                break;
            }
        }
        self.feasible.insert(key, found);
        found
    }

    /// `None` if `u` has no decomposition.
    fn decompose(&mut self, u: Vec<T>) -> Option<Vec<u32>> {
        let k = self.gens.len();
        let mut out = vec![0u32; k];
        let mut rest = u;
        for i in 0..k {
            // Smallest c_i leaving a remainder decomposable by w_{i+1..}.
            while !self.decomposable(&rest, i + 1) {
                let next = Self::minus(&rest, &self.gens[i]);
                if !self.in_cone(&next) {
                    return None;
                }
                rest = next;
                out[i] += 1;
            }
        }
        Some(out)
    }
}

impl<'a> Decomposer<'a> {
    pub fn new(gens: &'a GeneratorSet) -> Self {
        let facets = gens.cone.facets();
        let small = (|| {
            Some(Search {
                gens: gens.generators.iter().map(to_small).collect::<Option<_>>()?,
                facets: facets.iter().map(to_small).collect::<Option<_>>()?,
                feasible: HashMap::new(),
            })
        })();
        let big = Search {
            gens: gens.generators.iter().map(|g| g.coords().to_vec()).collect(),
            facets: facets.iter().map(|f| f.coords().to_vec()).collect(),
            feasible: HashMap::new(),
        };
        Decomposer { gens, small, big }
    }

    pub fn decompose(&mut self, u: &LatticeVector) -> Result<Vec<u32>> {
        if !self.gens.cone.contains(u, false) {
            return Err(Error::NotDecomposable(format!("{u} is not in the cone")));
        }
        let found = match (&mut self.small, to_small(u)) {
            (Some(s), Some(v)) => s.decompose(v),
            _ => self.big.decompose(u.coords().to_vec()),
        };
        found.ok_or_else(|| {
            Error::NotDecomposable(format!("{u} is not a nonnegative combination of the generators"))
        })
    }
}

pub fn decompose_in_generators(u: &LatticeVector, gens: &GeneratorSet) -> Result<Vec<u32>> {
    Decomposer::new(gens).decompose(u)
}

fn sign_of_dim(d: usize) -> i32 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn point_sum(points: &[LatticeVector], rank: usize) -> GroupRingElement {
    GroupRingElement::from_terms(rank, points.iter().map(|u| (u.clone(), BigInt::one())))
}

/// Certificate polynomial of one cell: `Σ_u ∏ (1+S)^{dec u} · ∏_{r∉cell} S_r`.
fn cell_certificate(
    points: &[LatticeVector],
    missing_rays: &[usize],
    gens: &GeneratorSet,
    dec: &mut Decomposer<'_>,
) -> Result<SPolynomial> {
    let mut p = SPolynomial::zero(gens.cone.rank(), gens.generators.clone());
    add_cell_certificate(&mut p, points, missing_rays, dec)?;
    Ok(p)
}

fn add_cell_certificate(
    p: &mut SPolynomial,
    points: &[LatticeVector],
    missing_rays: &[usize],
    dec: &mut Decomposer<'_>,
) -> Result<()> {
    let mut shift = vec![0u32; p.variables().len()];
    for &i in missing_rays {
        shift[i] += 1;
    }
    for u in points {
        let e = dec.decompose(u)?;
        p.add_exp_of_combination(&e, &shift);
    }
    Ok(())
}

pub fn geometric_sum_simplicial(c: &Cone) -> Result<CertifiedConeSum> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial { rays: c.rays().len(), dim: c.dim() });
    }
    geometric_sum_simplicial_with(c, &semigroup_generators(c))
}

/// Closed sum of a simplicial cone with certificate variables `gens`.
pub fn geometric_sum_simplicial_with(c: &Cone, gens: &GeneratorSet) -> Result<CertifiedConeSum> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial { rays: c.rays().len(), dim: c.dim() });
    }
    check_generators(c, gens)?;
    let points: Vec<LatticeVector> = cube_points(c.rank(), c.rays()).into_iter().map(|(u, _)| u).collect();
    let mut dec = Decomposer::new(gens);
    let certificate = cell_certificate(&points, &[], gens, &mut dec)?;
    let numerator = point_sum(&points, c.rank());
    Ok(CertifiedConeSum {
        cone: c.clone(),
        kind: SumKind::Closed,
        sign: sign_of_dim(c.dim()),
        ray_denominator: c.rays().to_vec(),
        certificate,
        value: RationalGenFun::new(numerator, c.rays().to_vec())?,
    })
}

fn check_generators(c: &Cone, gens: &GeneratorSet) -> Result<()> {
    if gens.cone != *c {
        return Err(Error::InvalidInput("generator set belongs to a different cone".into()));
    }
    Ok(())
}

fn check_triangulation(c: &Cone, t: &Triangulation) -> Result<()> {
    if t.base != *c {
        return Err(Error::InvalidInput("triangulation belongs to a different cone".into()));
    }
    Ok(())
}

fn complement(n: usize, cell: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !cell.contains(i)).collect()
}

/// Interior sum using the Hilbert basis and the default triangulation.
pub fn interior_sum(c: &Cone) -> CertifiedConeSum {
    interior_sum_with(c, &semigroup_generators(c), &triangulate(c))
        .expect("Hilbert basis decomposes every lattice point of the cone")
}

/// Interior sum as the alternating sum of closed sums over all cells of `t`.
///
/// Each cell `τ` contributes `(−1)^{d−dim τ} · (−1)^{dim τ} ∏_{r∈τ} 1/S_r · P_τ`;
/// bringing every term over all rays of `c` turns the sign into `(−1)^d`
/// and multiplies `P_τ` by the missing `S_r`, so no negative terms appear.
pub fn interior_sum_with(c: &Cone, gens: &GeneratorSet, t: &Triangulation) -> Result<CertifiedConeSum> {
    check_generators(c, gens)?;
    check_triangulation(c, t)?;
    let d = c.dim();
    let n_rays = c.rays().len();
    let rank = c.rank();
    let mut dec = Decomposer::new(gens);
    let mut certificate = SPolynomial::zero(rank, gens.generators.clone());
    let mut parts = Vec::with_capacity(t.all_cells.len());
    for cell in &t.all_cells {
        let rays = t.cell_rays(cell);
        let points: Vec<LatticeVector> = cube_points(rank, &rays).into_iter().map(|(u, _)| u).collect();
        let missing = complement(n_rays, cell);
        add_cell_certificate(&mut certificate, &points, &missing, &mut dec)?;

        let s = sign_of_dim(d - cell.len());
        parts.push((cell.as_slice(), point_sum(&points, rank).scale(&BigInt::from(s))));
    }
    let value = sum_over_cells(rank, c.rays(), &mut parts)?;
    Ok(CertifiedConeSum {
        cone: c.clone(),
        kind: SumKind::Interior,
        sign: sign_of_dim(d),
        ray_denominator: c.rays().to_vec(),
        certificate,
        value,
    })
}

/// Closed sum using the Hilbert basis and the default triangulation.
pub fn closed_sum(c: &Cone) -> CertifiedConeSum {
    closed_sum_with(c, &semigroup_generators(c), &triangulate(c))
        .expect("Hilbert basis decomposes every lattice point of the cone")
}

/// Closed sum from a half-open decomposition of the maximal cells of `t`.
///
/// A reference point `q` in the interior of `c`, perturbed lexicographically,
/// decides for every inner facet which of its two cells owns it: the facet of
/// a cell opposite to ray `p` is dropped when `q` lies on its negative side.
/// Every cell then carries the same sign `(−1)^d`.
pub fn closed_sum_with(c: &Cone, gens: &GeneratorSet, t: &Triangulation) -> Result<CertifiedConeSum> {
    check_generators(c, gens)?;
    check_triangulation(c, t)?;
    if c.is_simplicial() {
        return geometric_sum_simplicial_with(c, gens);
    }
    let d = c.dim();
    let rank = c.rank();
    let n_rays = c.rays().len();
    let span = c.span();
    let local = |v: &LatticeVector| span.project(v).expect("vector lies in the span");
    let q = c.rays().iter().fold(LatticeVector::zero(d), |acc, r| &acc + &local(r));

    let mut dec = Decomposer::new(gens);
    let mut certificate = SPolynomial::zero(rank, gens.generators.clone());
    let mut parts = Vec::with_capacity(t.maximal_cells.len());
    for cell in &t.maximal_cells {
        let rays = t.cell_rays(cell);
        let basis: Vec<LatticeVector> = rays.iter().map(local).collect();
        let excluded = excluded_facets(&basis, &q);
        let points: Vec<LatticeVector> = cube_points(rank, &rays)
            .into_iter()
            .map(|(u, theta)| {
                excluded.iter().zip(&theta).zip(&rays).fold(u, |acc, ((&ex, th), r)| {
                    if ex && th.is_zero() {
                        &acc + r
                    } else {
                        acc
                    }
                })
            })
            .collect();
        let missing = complement(n_rays, cell);
        add_cell_certificate(&mut certificate, &points, &missing, &mut dec)?;
        parts.push((cell.as_slice(), point_sum(&points, rank)));
    }
    let value = sum_over_cells(rank, c.rays(), &mut parts)?;
    Ok(CertifiedConeSum {
        cone: c.clone(),
        kind: SumKind::Closed,
        sign: sign_of_dim(d),
        ray_denominator: c.rays().to_vec(),
        certificate,
        value,
    })
}

/// `Σ N_τ / ∏_{r ∈ τ} (1 − e^r)` over a common denominator of all rays.
/// Splitting on one ray at a time multiplies each partial sum by
/// `1 − e^r` once instead of lifting every cell separately.
pub(crate) fn sum_over_cells<C: AsRef<[usize]>>(
    rank: usize,
    rays: &[LatticeVector],
    parts: &mut [(C, GroupRingElement)],
) -> Result<RationalGenFun> {
    fn go<C: AsRef<[usize]>>(rays: &[LatticeVector], j: usize, rank: usize, parts: &mut [(C, GroupRingElement)]) -> GroupRingElement {
        if parts.is_empty() {
            return GroupRingElement::zero(rank);
        }
        if j == rays.len() {
            let mut out = GroupRingElement::zero(rank);
            for (_, n) in parts.iter() {
                out += n;
            }
            return out;
        }
        parts.sort_by_key(|(cell, _)| !cell.as_ref().contains(&j));
        let split = parts.iter().take_while(|(cell, _)| cell.as_ref().contains(&j)).count();
        let (with, without) = parts.split_at_mut(split);
        let mut out = go(rays, j + 1, rank, with);
        let rest = go(rays, j + 1, rank, without);
        if !rest.is_zero() {
            out += &(&rest * &GroupRingElement::one_minus(&rays[j]));
        }
        out
    }
    let numerator = go(rays, 0, rank, parts);
    RationalGenFun::new(numerator, rays.to_vec())
}

/// For each ray of a full-rank simplicial `basis`, whether the opposite facet
/// is excluded: the coordinate of `q + ε e_1 + ε² e_2 + …` along that ray is
/// negative for small `ε > 0`.
fn excluded_facets(basis: &[LatticeVector], q: &LatticeVector) -> Vec<bool> {
    let d = basis.len();
    let mut coords = vec![solve_in_basis(basis, q).expect("basis spans the space")];
    for i in 0..d {
        coords.push(solve_in_basis(basis, &LatticeVector::unit(d, i)).expect("basis spans the space"));
    }
    (0..d)
        .map(|p| {
            let first = coords.iter().map(|c| &c[p]).find(|x: &&BigRational| !x.is_zero());
            first.map(|x| x.is_negative()).unwrap_or(false)
        })
        .collect()
}

/// Closed sum as `Σ_F interior_sum(F)` over all faces `F` of `c`.
pub fn closed_sum_via_faces(c: &Cone) -> RationalGenFun {
    let lattice = face_lattice(c);
    let mut total = RationalGenFun::zero(c.rank());
    for i in 0..lattice.len() {
        total = total.add(&interior_sum(&lattice.face_cone(i)).value);
    }
    total
}

/// `Σ_{τ ⊇ κ} (−1)^{d − dim τ}` over the cells `τ` of `t` containing `κ`.
pub fn euler_multiplicity(t: &Triangulation, kappa: &Cone) -> Result<i64> {
    let mut cell = Vec::with_capacity(kappa.rays().len());
    for r in kappa.rays() {
        cell.push(t.base.ray_index(r).ok_or(Error::CellNotInComplex)?);
    }
    cell.sort_unstable();
    euler_multiplicity_of_cell(t, &cell)
}

pub fn euler_multiplicity_of_cell(t: &Triangulation, cell: &[usize]) -> Result<i64> {
    if !t.contains_cell(cell) {
        return Err(Error::CellNotInComplex);
    }
    let d = t.base.dim();
    Ok(t.all_cells
        .iter()
        .filter(|tau| cell.iter().all(|i| tau.contains(i)))
        .map(|tau| sign_of_dim(d - tau.len()) as i64)
        .sum())
}

pub fn substitute_certificate(p: &SPolynomial) -> GroupRingElement {
    p.substitute()
}
