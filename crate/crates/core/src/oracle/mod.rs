//! Brute-force checks. Lattice points are enumerated from an H-description
//! found by exhaustive search over ray subsets, without touching the
//! summation code in `genfun`.

mod random;
mod suite;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::{Cone, Triangulation};
use crate::error::{Error, Result};
use crate::genfun::{euler_multiplicity_of_cell, CertifiedConeSum, RationalGenFun, SumKind};
use crate::lattice::{integer_kernel, rank_of, IntegerMatrix, LatticeEmbedding, LatticeVector};

pub use random::{
    default_entry_bound, normalized_volume, random_cone, random_cones, RandomConeParams,
    DEFAULT_MAX_DUAL_VOLUME,
};
pub use suite::{check_cone, verify_random, SuiteOptions};

/// Finite part `{m : ℓ(m) ≤ D}` of a formal series in `Z[[M]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub grading: LatticeVector,
    pub bound: BigInt,
    pub terms: BTreeMap<LatticeVector, BigInt>,
}

impl TruncatedSeries {
    pub fn indicator(grading: &LatticeVector, bound: &BigInt, points: &[LatticeVector]) -> Self {
        let mut terms = BTreeMap::new();
        for p in points {
            *terms.entry(p.clone()).or_insert_with(BigInt::zero) += 1;
        }
        TruncatedSeries { grading: grading.clone(), bound: bound.clone(), terms }
    }

    /// Smallest exponent (by grading, then lexicographically) where the
    /// coefficients differ, with both coefficients.
    pub fn first_difference(&self, other: &TruncatedSeries) -> Option<(LatticeVector, BigInt, BigInt)> {
        let mut keys: Vec<&LatticeVector> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort_by_cached_key(|m| (m.dot(&self.grading), (*m).clone()));
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let a = self.terms.get(m).cloned().unwrap_or_default();
            let b = other.terms.get(m).cloned().unwrap_or_default();
            (a != b).then(|| (m.clone(), a, b))
        })
    }
}

/// Facet normals of `cone(rays)` in `Z^k`, by trying every `(k−1)`-subset.
fn brute_force_facets(k: usize, rays: &[LatticeVector]) -> Vec<LatticeVector> {
    if k == 0 {
        return Vec::new();
    }
    let mut out: Vec<LatticeVector> = Vec::new();
    let mut subset: Vec<usize> = (0..k - 1).collect();
    loop {
        let rows: Vec<LatticeVector> = subset.iter().map(|&i| rays[i].clone()).collect();
        if rank_of(k, &rows) == k - 1 {
            let kernel = integer_kernel(k, &rows);
            debug_assert_eq!(kernel.len(), 1);
            let mut a = kernel[0].clone();
            let signs: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
            let valid = if signs.iter().all(|s| !s.is_negative()) {
                true
            } else if signs.iter().all(|s| !s.is_positive()) {
                a = -&a;
                true
            } else {
                false
            };
            if valid && !out.contains(&a) {
                out.push(a);
            }
        }
        // next (k−1)-subset of 0..rays.len()
        let n = rays.len();
        let m = subset.len();
        let Some(i) = (0..m).rev().find(|&i| subset[i] < n - m + i) else { break };
        subset[i] += 1;
        for j in i + 1..m {
            subset[j] = subset[j - 1] + 1;
        }
    }
    out
}

/// Lattice points of `c` (or of its relative interior) with `ℓ ≤ D`.
///
/// In span coordinates, `k` independent facet normals `A` map the cone into
/// the orthant; the image of `{ℓ ≤ D}` lies in a box and below a hyperplane,
/// and every candidate `y` is pulled back by `adj(A)/det(A)`.
pub fn enumerate_points(c: &Cone, interior: bool, grading: &LatticeVector, bound: &BigInt) -> Result<Vec<LatticeVector>> {
    if c.rays().iter().any(|r| !r.dot(grading).is_positive()) {
        return Err(Error::GradingNotPositive);
    }
    let span = LatticeEmbedding::of_span(c.rank(), c.rays());
    let k = span.dim();
    if k == 0 {
        return Ok(if bound.is_negative() { vec![] } else { vec![LatticeVector::zero(c.rank())] });
    }
    let rays: Vec<LatticeVector> = c.rays().iter().map(|r| span.project(r).expect("ray in span")).collect();
    let facets = brute_force_facets(k, &rays);
    let ell = span.restrict_functional(grading);

    let mut chosen: Vec<LatticeVector> = Vec::new();
    for f in &facets {
        let mut trial = chosen.clone();
        trial.push(f.clone());
        if rank_of(k, &trial) == trial.len() {
            chosen = trial;
        }
    }
    debug_assert_eq!(chosen.len(), k, "a pointed full cone has k independent facets");

    let ratio_max = |a: &LatticeVector| -> BigInt {
        let best = rays
            .iter()
            .map(|r| BigRational::new(a.dot(r), r.dot(&ell)))
            .max()
            .expect("at least one ray");
        (best * BigRational::from_integer(bound.clone())).floor().to_integer()
    };
    let caps: Vec<BigInt> = chosen.iter().map(ratio_max).collect();
    let total = chosen.iter().fold(LatticeVector::zero(k), |acc, a| &acc + a);
    let total_cap = ratio_max(&total);

    let a = IntegerMatrix::from_rows(k, &chosen);
    let det = a.determinant();
    let adj = adjugate(&a);

    let mut out = Vec::new();
    let mut y = vec![BigInt::zero(); k];
    let mut visit = |y: &[BigInt]| {
        let mut v = Vec::with_capacity(k);
        for i in 0..k {
            let s: BigInt = (0..k).map(|j| adj.get(i, j) * &y[j]).sum();
            let (q, r) = s.div_rem(&det);
            if !r.is_zero() {
                return;
            }
            v.push(q);
        }
        let v = LatticeVector::new(v);
        if v.dot(&ell) > *bound {
            return;
        }
        let ok = facets.iter().all(|f| {
            let s = f.dot(&v);
            if interior {
                s.is_positive()
            } else {
                !s.is_negative()
            }
        });
        if ok {
            out.push(span.embed(&v));
        }
    };
    walk(&mut y, 0, &caps, &total_cap, &mut visit);
    out.sort();
    Ok(out)
}

fn walk(y: &mut Vec<BigInt>, i: usize, caps: &[BigInt], remaining: &BigInt, visit: &mut impl FnMut(&[BigInt])) {
    if i == y.len() {
        visit(y);
        return;
    }
    let top = caps[i].clone().min(remaining.clone());
    let mut v = BigInt::zero();
    while v <= top {
        y[i] = v.clone();
        walk(y, i + 1, caps, &(remaining - &v), visit);
        v += 1;
    }
    y[i] = BigInt::zero();
}

/// `adj(A)` with `A · adj(A) = det(A) · I`.
fn adjugate(a: &IntegerMatrix) -> IntegerMatrix {
    let k = a.rows();
    if k == 1 {
        return IntegerMatrix::identity(1);
    }
    let mut entries = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            // cofactor C_{j,i}
            let mut minor = Vec::with_capacity((k - 1) * (k - 1));
            for r in (0..k).filter(|&r| r != j) {
                for c in (0..k).filter(|&c| c != i) {
                    minor.push(a.get(r, c).clone());
                }
            }
            let m = IntegerMatrix::new(k - 1, k - 1, minor).expect("square minor");
            let d = m.determinant();
            entries.push(if (i + j) % 2 == 0 { d } else { -d });
        }
    }
    IntegerMatrix::new(k, k, entries).expect("square")
}

/// Expands each `1/(1 − e^m)` as a geometric series and drops terms with `ℓ > D`.
pub fn expand_truncated(g: &RationalGenFun, grading: &LatticeVector, bound: &BigInt) -> Result<TruncatedSeries> {
    let mut steps = Vec::with_capacity(g.denominator().len());
    for m in g.denominator() {
        let l = m.dot(grading);
        if !l.is_positive() {
            return Err(Error::NonPositiveDenominatorGrading(m.to_string()));
        }
        steps.push((m, l));
    }
    // ℓ only grows, so terms above D can be dropped at every stage.
    let mut terms: BTreeMap<LatticeVector, BigInt> = BTreeMap::new();
    for (u, a) in g.numerator().terms() {
        if u.dot(grading) <= *bound {
            *terms.entry(u.clone()).or_insert_with(BigInt::zero) += a;
        }
    }
    for (m, l) in steps {
        let mut next: BTreeMap<LatticeVector, BigInt> = BTreeMap::new();
        for (u, a) in &terms {
            let mut v = u.clone();
            let mut level = v.dot(grading);
            while level <= *bound {
                *next.entry(v.clone()).or_insert_with(BigInt::zero) += a;
                v = &v + m;
                level += &l;
            }
        }
        terms = next;
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(TruncatedSeries { grading: grading.clone(), bound: bound.clone(), terms })
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckOutcome { name: name.into(), failure: None }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckOutcome { name: name.into(), failure: Some(detail.into()) }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}", self.name),
            Some(d) => write!(f, "FAIL {}: {}", self.name, d),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub outcomes: Vec<CheckOutcome>,
}

impl Report {
    pub fn push(&mut self, o: CheckOutcome) {
        self.outcomes.push(o);
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.outcomes.len(), failed)
    }
}

/// Series of `s.value` against enumerated points, plus certificate checks.
pub fn check_sum(c: &Cone, s: &CertifiedConeSum, bound: &BigInt) -> CheckOutcome {
    let name = format!("{} sum of {c} to degree {bound}", s.kind);
    if s.cone != *c {
        return CheckOutcome::fail(name, "sum was computed for a different cone");
    }
    let grading = c.grading();
    let points = match enumerate_points(c, s.kind == SumKind::Interior, &grading, bound) {
        Ok(p) => p,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    let expected = TruncatedSeries::indicator(&grading, bound, &points);
    let actual = match expand_truncated(&s.value, &grading, bound) {
        Ok(t) => t,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    if let Some((m, got, want)) = actual.first_difference(&expected) {
        return CheckOutcome::fail(name, format!("coefficient of e^{m} is {got}, enumeration gives {want}"));
    }
    if let Some((e, coeff)) = s.certificate.first_negative() {
        return CheckOutcome::fail(
            name,
            format!("certificate term {coeff}*{} is negative", s.certificate.monomial_string(&e)),
        );
    }
    if !s.verify() {
        return CheckOutcome::fail(name, "certificate does not represent the value");
    }
    CheckOutcome::pass(name)
}

/// Compares the combinatorial Euler multiplicity of every cell with whether
/// its relative interior lies in the interior of the base cone.
pub fn check_euler(t: &Triangulation) -> CheckOutcome {
    let base = &t.base;
    let name = format!("euler relation on {} cells of {base}", t.all_cells.len());
    let span = LatticeEmbedding::of_span(base.rank(), base.rays());
    let rays: Vec<LatticeVector> = base.rays().iter().map(|r| span.project(r).expect("ray in span")).collect();
    let facets = brute_force_facets(span.dim(), &rays);
    for cell in &t.all_cells {
        let point = cell.iter().fold(LatticeVector::zero(span.dim()), |acc, &i| &acc + &rays[i]);
        let inside = facets.iter().all(|f| f.dot(&point).is_positive());
        let expected = if inside { 1 } else { 0 };
        match euler_multiplicity_of_cell(t, cell) {
            Ok(m) if m == expected => {}
            Ok(m) => {
                return CheckOutcome::fail(name, format!("cell {cell:?} has multiplicity {m}, expected {expected}"))
            }
            Err(e) => return CheckOutcome::fail(name, format!("cell {cell:?}: {e}")),
        }
    }
    CheckOutcome::pass(name)
}

pub(crate) fn default_bound() -> BigInt {
    BigInt::from(12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{triangulate, triangulate_with_order};
    use crate::genfun::{closed_sum, interior_sum, interior_sum_with};
    use crate::cone::semigroup_generators;
    use num_traits::One;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn segre() -> Cone {
        Cone::from_i64(3, &[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let o = Cone::orthant(2);
        let l = lv(&[1, 1]);
        let two = BigInt::from(2);
        let pts = enumerate_points(&o, false, &l, &two).unwrap();
        let want: Vec<LatticeVector> =
            [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [2, 0]].iter().map(|p| lv(p)).collect();
        assert_eq!(pts, want);
        assert_eq!(enumerate_points(&o, true, &l, &two).unwrap(), vec![lv(&[1, 1])]);

        let c = Cone::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
        let pts = enumerate_points(&c, false, &lv(&[2, 0]), &BigInt::from(3)).unwrap();
        assert_eq!(pts, vec![lv(&[0, 0]), lv(&[1, 0]), lv(&[1, 1]), lv(&[1, 2])]);
        assert_eq!(enumerate_points(&c, false, &lv(&[0, 1]), &two), Err(Error::GradingNotPositive));
    }

    #[test]
    fn enumeration_of_lower_dimensional_cone() {
        let c = Cone::from_i64(3, &[&[1, 1, 0], &[1, -1, 0]]).unwrap();
        let pts = enumerate_points(&c, false, &lv(&[1, 0, 0]), &BigInt::from(2)).unwrap();
        // x ≤ 2, |y| ≤ x, z = 0
        assert_eq!(pts.len(), 1 + 3 + 5);
        let inner = enumerate_points(&c, true, &lv(&[1, 0, 0]), &BigInt::from(2)).unwrap();
        assert_eq!(inner, vec![lv(&[1, 0, 0]), lv(&[2, -1, 0]), lv(&[2, 0, 0]), lv(&[2, 1, 0])]);
    }

    #[test]
    fn brute_force_facets_match_double_description() {
        let c = Cone::from_i64(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1], &[2, 3, 5]]).unwrap();
        let mut a = brute_force_facets(3, c.rays());
        let mut b = c.facets().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn expansion_examples() {
        let x = lv(&[1]);
        let l = lv(&[1]);
        let three = BigInt::from(3);
        let t = expand_truncated(&RationalGenFun::geometric(&x).unwrap(), &l, &three).unwrap();
        assert_eq!(t.terms.len(), 4);
        let g = RationalGenFun::monomial_over(x.clone(), BigInt::one(), vec![x.clone()]).unwrap();
        let t = expand_truncated(&g, &l, &three).unwrap();
        assert_eq!(t.terms.keys().cloned().collect::<Vec<_>>(), vec![lv(&[1]), lv(&[2]), lv(&[3])]);
        assert!(matches!(
            expand_truncated(&RationalGenFun::geometric(&lv(&[-1])).unwrap(), &l, &three),
            Err(Error::NonPositiveDenominatorGrading(_))
        ));
    }

    #[test]
    fn check_sum_examples() {
        let eight = BigInt::from(8);
        let o = Cone::orthant(2);
        assert!(check_sum(&o, &closed_sum(&o), &eight).passed());
        let c = segre();
        let gens = semigroup_generators(&c);
        for order in [[0, 1, 2, 3], [1, 2, 3, 0]] {
            let t = triangulate_with_order(&c, &order).unwrap();
            assert!(check_sum(&c, &interior_sum_with(&c, &gens, &t).unwrap(), &eight).passed());
            let e = check_euler(&t);
            assert!(e.passed(), "{e}");
            assert!(e.name.contains("12 cells"));
        }
        let mut bad = interior_sum(&c);
        let (e, coeff) = bad.certificate.terms().iter().next().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        bad.certificate.add_term(e, -coeff * 2);
        let out = check_sum(&c, &bad, &eight);
        assert!(!out.passed());
        assert!(out.to_string().starts_with("FAIL interior sum"));
        assert!(out.to_string().contains("is negative"), "{out}");
    }

    #[test]
    fn euler_on_simplicial_cone() {
        let c = Cone::from_i64(3, &[&[1, 0, 0], &[1, 2, 0], &[1, 1, 3]]).unwrap();
        assert!(check_euler(&triangulate(&c)).passed());
    }
}
