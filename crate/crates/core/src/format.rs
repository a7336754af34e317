//! JSON records for every object the command line prints, and the text
//! renderings that go with them.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; rationals that are not integers are strings
//! of the form `"p/q"`. Every record converts back to the value it was
//! written from.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cone::{Cone, FaceLattice, GeneratorSet, Triangulation};
use crate::error::{Error, Result};
use crate::genfun::{CertifiedConeSum, GroupRingElement, RationalGenFun, SPolynomial, SumKind};
use crate::hirzebruch::{
    ChiYPolynomial, CollapsedLocalClass, HirzebruchLocalClass, LaurentExpansion, LocalTerm, PowerSeries, ORBIT_MARKER,
};
use crate::lattice::LatticeVector;
use crate::oracle::{CheckOutcome, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Int, E> {
        Err(E::custom(format!("{v} is not an integer; write large integers as strings")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
        BigInt::from_str(v.trim()).map(Int).map_err(|_| E::custom(format!("{v:?} is not an integer")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            Int(self.0.to_integer()).serialize(s)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a string \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        BigRational::from_str(v.trim())
            .map(Rational)
            .map_err(|_| E::custom(format!("{v:?} is not a rational number")))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

pub type VectorRecord = Vec<Int>;

pub fn vector_record(v: &LatticeVector) -> VectorRecord {
    v.coords().iter().cloned().map(Int).collect()
}

pub fn parse_vector(rank: usize, v: &[Int]) -> Result<LatticeVector> {
    if v.len() != rank {
        return Err(Error::RankMismatch { expected: rank, got: v.len() });
    }
    Ok(LatticeVector::new(v.iter().map(|x| x.0.clone()).collect()))
}

fn parse_vectors(rank: usize, vs: &[VectorRecord]) -> Result<Vec<LatticeVector>> {
    vs.iter().map(|v| parse_vector(rank, v)).collect()
}

/// Input document; also the record for a single cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDocument {
    pub rank: usize,
    pub rays: Vec<VectorRecord>,
    /// Cones of a fan as arrays of indices into `rays`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<Vec<Vec<usize>>>,
    /// Semigroup generators to use instead of the Hilbert basis; rays may be
    /// omitted and are prepended in ray order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<VectorRecord>>,
}

impl ConeDocument {
    pub fn of_cone(c: &Cone) -> Self {
        ConeDocument { rank: c.rank(), rays: c.rays().iter().map(vector_record).collect(), fan: None, generators: None }
    }

    /// Checks lengths and index ranges.
    pub fn validate(&self) -> Result<()> {
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.rank {
                return Err(Error::InvalidInput(format!("ray {i} has {} entries, rank is {}", r.len(), self.rank)));
            }
        }
        for (i, g) in self.generators.iter().flatten().enumerate() {
            if g.len() != self.rank {
                return Err(Error::InvalidInput(format!(
                    "generator {i} has {} entries, rank is {}",
                    g.len(),
                    self.rank
                )));
            }
        }
        for cone in self.fan.iter().flatten() {
            if let Some(&bad) = cone.iter().find(|&&i| i >= self.rays.len()) {
                return Err(Error::InvalidInput(format!(
                    "fan cone {cone:?} refers to ray {bad}, but there are {} rays",
                    self.rays.len()
                )));
            }
        }
        Ok(())
    }

    pub fn ray_vectors(&self) -> Result<Vec<LatticeVector>> {
        parse_vectors(self.rank, &self.rays)
    }

    pub fn cone(&self) -> Result<Cone> {
        Cone::new(self.rank, self.ray_vectors()?)
    }

    /// The generator override for `c`, if the document has one.
    pub fn generator_set(&self, c: &Cone) -> Result<Option<GeneratorSet>> {
        let Some(extra) = &self.generators else { return Ok(None) };
        let mut gens = c.rays().to_vec();
        for g in parse_vectors(self.rank, extra)? {
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        GeneratorSet::new(c.clone(), gens).map(Some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingTerm {
    pub exponent: VectorRecord,
    pub coefficient: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingRecord {
    pub rank: usize,
    pub terms: Vec<GroupRingTerm>,
}

impl GroupRingRecord {
    pub fn of(g: &GroupRingElement) -> Self {
        GroupRingRecord {
            rank: g.rank(),
            terms: g
                .terms()
                .iter()
                .map(|(m, c)| GroupRingTerm { exponent: vector_record(m), coefficient: Int(c.clone()) })
                .collect(),
        }
    }

    pub fn parse(&self) -> Result<GroupRingElement> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((parse_vector(self.rank, &t.exponent)?, t.coefficient.0.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupRingElement::from_terms(self.rank, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenFunRecord {
    pub numerator: GroupRingRecord,
    /// `m` for each factor `1 − e^m`.
    pub denominator: Vec<VectorRecord>,
}

impl GenFunRecord {
    pub fn of(g: &RationalGenFun) -> Self {
        GenFunRecord {
            numerator: GroupRingRecord::of(g.numerator()),
            denominator: g.denominator().iter().map(vector_record).collect(),
        }
    }

    pub fn parse(&self) -> Result<RationalGenFun> {
        let num = self.numerator.parse()?;
        RationalGenFun::new(num, parse_vectors(self.numerator.rank, &self.denominator)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SPolyTerm {
    pub exponents: Vec<u32>,
    pub coefficient: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SPolyRecord {
    pub rank: usize,
    /// The vector `w` of each variable `S[w]`.
    pub variables: Vec<VectorRecord>,
    pub terms: Vec<SPolyTerm>,
}

impl SPolyRecord {
    pub fn of(p: &SPolynomial) -> Self {
        SPolyRecord {
            rank: p.rank(),
            variables: p.variables().iter().map(vector_record).collect(),
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| SPolyTerm { exponents: e.clone(), coefficient: Int(c.clone()) })
                .collect(),
        }
    }

    pub fn parse(&self) -> Result<SPolynomial> {
        SPolynomial::from_terms(
            self.rank,
            parse_vectors(self.rank, &self.variables)?,
            self.terms.iter().map(|t| (t.exponents.clone(), t.coefficient.0.clone())),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSumRecord {
    pub cone: ConeDocument,
    /// `"closed"` or `"interior"`.
    pub kind: String,
    pub sign: i32,
    pub ray_denominator: Vec<VectorRecord>,
    pub certificate: SPolyRecord,
    pub value: GenFunRecord,
}

impl ConeSumRecord {
    pub fn of(s: &CertifiedConeSum) -> Self {
        ConeSumRecord {
            cone: ConeDocument::of_cone(&s.cone),
            kind: s.kind.to_string(),
            sign: s.sign,
            ray_denominator: s.ray_denominator.iter().map(vector_record).collect(),
            certificate: SPolyRecord::of(&s.certificate),
            value: GenFunRecord::of(&s.value),
        }
    }

    pub fn parse(&self) -> Result<CertifiedConeSum> {
        let kind = match self.kind.as_str() {
            "closed" => SumKind::Closed,
            "interior" => SumKind::Interior,
            other => return Err(Error::InvalidInput(format!("unknown sum kind {other:?}"))),
        };
        let cone = self.cone.cone()?;
        Ok(CertifiedConeSum {
            kind,
            sign: self.sign,
            ray_denominator: parse_vectors(cone.rank(), &self.ray_denominator)?,
            certificate: self.certificate.parse()?,
            value: self.value.parse()?,
            cone,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRecord {
    pub cone: ConeDocument,
    pub generators: Vec<VectorRecord>,
}

impl HilbertRecord {
    pub fn of(g: &GeneratorSet) -> Self {
        HilbertRecord {
            cone: ConeDocument::of_cone(&g.cone),
            generators: g.generators.iter().map(vector_record).collect(),
        }
    }

    pub fn parse(&self) -> Result<GeneratorSet> {
        let cone = self.cone.cone()?;
        let gens = parse_vectors(cone.rank(), &self.generators)?;
        GeneratorSet::new(cone, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationRecord {
    pub cone: ConeDocument,
    pub maximal_cells: Vec<Vec<usize>>,
    pub all_cells: Vec<Vec<usize>>,
}

impl TriangulationRecord {
    pub fn of(t: &Triangulation) -> Self {
        TriangulationRecord {
            cone: ConeDocument::of_cone(&t.base),
            maximal_cells: t.maximal_cells.clone(),
            all_cells: t.all_cells.clone(),
        }
    }

    pub fn parse(&self) -> Result<Triangulation> {
        Ok(Triangulation {
            base: self.cone.cone()?,
            maximal_cells: self.maximal_cells.clone(),
            all_cells: self.all_cells.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub rays: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesRecord {
    pub cone: ConeDocument,
    pub faces: Vec<FaceRecord>,
    /// `[i, j]`: face `i` is a proper face of face `j`.
    pub containment: Vec<(usize, usize)>,
}

impl FacesRecord {
    pub fn of(l: &FaceLattice) -> Self {
        FacesRecord {
            cone: ConeDocument::of_cone(&l.cone),
            faces: l.faces.iter().map(|f| FaceRecord { rays: f.rays.clone(), dim: f.dim }).collect(),
            containment: l.containment.clone(),
        }
    }

    pub fn parse(&self) -> Result<FaceLattice> {
        Ok(FaceLattice {
            cone: self.cone.cone()?,
            faces: self.faces.iter().map(|f| crate::cone::Face { rays: f.rays.clone(), dim: f.dim }).collect(),
            containment: self.containment.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalTermRecord {
    pub face: Vec<usize>,
    /// Power of `(1 + y)`.
    pub delta_power: usize,
    pub contribution: ConeSumRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsedRecord {
    pub denominator: Vec<VectorRecord>,
    /// Numerator coefficient of `(-1-y)^c`, indexed by `c`.
    pub by_delta: Vec<SPolyRecord>,
}

impl CollapsedRecord {
    pub fn of(c: &CollapsedLocalClass) -> Self {
        CollapsedRecord {
            denominator: c.denominator.iter().map(vector_record).collect(),
            by_delta: c.by_delta.iter().map(SPolyRecord::of).collect(),
        }
    }

    pub fn parse(&self, rank: usize) -> Result<CollapsedLocalClass> {
        Ok(CollapsedLocalClass {
            denominator: parse_vectors(rank, &self.denominator)?,
            by_delta: self.by_delta.iter().map(SPolyRecord::parse).collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalClassRecord {
    pub sigma: ConeDocument,
    pub dual: ConeDocument,
    pub orbit_marker: String,
    pub terms: Vec<LocalTermRecord>,
    /// Derived from `terms`; ignored when parsing.
    pub collapsed: CollapsedRecord,
}

impl LocalClassRecord {
    pub fn of(h: &HirzebruchLocalClass) -> Result<Self> {
        Ok(LocalClassRecord {
            sigma: ConeDocument::of_cone(&h.sigma),
            dual: ConeDocument::of_cone(&h.dual),
            orbit_marker: h.orbit_marker.to_string(),
            terms: h
                .terms
                .iter()
                .map(|t| LocalTermRecord {
                    face: t.face.clone(),
                    delta_power: t.delta_power,
                    contribution: ConeSumRecord::of(&t.contribution),
                })
                .collect(),
            collapsed: CollapsedRecord::of(&h.collapsed()?),
        })
    }

    pub fn parse(&self) -> Result<HirzebruchLocalClass> {
        if self.orbit_marker != ORBIT_MARKER {
            return Err(Error::InvalidInput(format!("unknown orbit marker {:?}", self.orbit_marker)));
        }
        Ok(HirzebruchLocalClass {
            sigma: self.sigma.cone()?,
            dual: self.dual.cone()?,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    Ok(LocalTerm {
                        face: t.face.clone(),
                        delta_power: t.delta_power,
                        contribution: t.contribution.parse()?,
                    })
                })
                .collect::<Result<_>>()?,
            orbit_marker: ORBIT_MARKER,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenOrbitRecord {
    /// Power of `(1 + y)`.
    pub delta_power: usize,
    pub sum: ConeSumRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiYRecord {
    /// Lowest degree first.
    pub coefficients: Vec<Int>,
    pub polynomial: String,
}

impl ChiYRecord {
    pub fn of(p: &ChiYPolynomial) -> Self {
        ChiYRecord { coefficients: p.coefficients.iter().cloned().map(Int).collect(), polynomial: p.to_string() }
    }

    pub fn parse(&self) -> ChiYPolynomial {
        ChiYPolynomial::from_coefficients(self.coefficients.iter().map(|c| c.0.clone()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub exponents: Vec<u32>,
    pub coefficient: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentRecord {
    /// Linear forms `p` of the pole factors `1/p(t)`.
    pub pole_factors: Vec<VectorRecord>,
    pub truncation_order: usize,
    pub max_degree: usize,
    pub series: Vec<SeriesTerm>,
}

impl LaurentRecord {
    pub fn of(l: &LaurentExpansion) -> Self {
        LaurentRecord {
            pole_factors: l.pole_factors.iter().map(vector_record).collect(),
            truncation_order: l.truncation_order,
            max_degree: l.series.max_degree(),
            series: l
                .series
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| SeriesTerm { exponents: e.clone(), coefficient: Rational(c.clone()) })
                .collect(),
        }
    }

    pub fn parse(&self, nvars: usize) -> Result<LaurentExpansion> {
        let mut series = PowerSeries::zero(nvars, self.max_degree);
        for t in &self.series {
            if t.exponents.len() != nvars {
                return Err(Error::RankMismatch { expected: nvars, got: t.exponents.len() });
            }
            series.add_term(t.exponents.clone(), t.coefficient.0.clone());
        }
        Ok(LaurentExpansion {
            pole_factors: parse_vectors(nvars, &self.pole_factors)?,
            series,
            truncation_order: self.truncation_order,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub passed: bool,
    pub checks: usize,
    pub failed: usize,
    pub outcomes: Vec<OutcomeRecord>,
}

impl ReportRecord {
    pub fn of(r: &Report) -> Self {
        ReportRecord {
            passed: r.passed(),
            checks: r.outcomes.len(),
            failed: r.failures().count(),
            outcomes: r
                .outcomes
                .iter()
                .map(|o| OutcomeRecord { name: o.name.clone(), passed: o.passed(), failure: o.failure.clone() })
                .collect(),
        }
    }

    pub fn parse(&self) -> Report {
        Report {
            outcomes: self
                .outcomes
                .iter()
                .map(|o| CheckOutcome { name: o.name.clone(), failure: o.failure.clone() })
                .collect(),
        }
    }
}

/// Faces grouped by dimension, one per line.
pub fn faces_text(l: &FaceLattice) -> String {
    let mut out = format!("faces of {}\n", l.cone);
    for f in &l.faces {
        let _ = writeln!(out, "  dim {}: {:?} {}", f.dim, f.rays, l.cone.subcone(&f.rays));
    }
    out
}

pub fn hilbert_text(g: &GeneratorSet) -> String {
    let mut out = format!("semigroup generators of {}\n", g.cone);
    for (i, w) in g.generators.iter().enumerate() {
        let tag = if i < g.ray_count() { " (ray)" } else { "" };
        let _ = writeln!(out, "  {w}{tag}");
    }
    out
}

pub fn triangulation_text(t: &Triangulation) -> String {
    let mut out = format!("triangulation of {}\n", t.base);
    for cell in &t.maximal_cells {
        let _ = writeln!(out, "  {cell:?} {}", t.cell_cone(cell));
    }
    out
}

pub fn sum_text(s: &CertifiedConeSum) -> String {
    format!("{s}\n")
}

pub fn local_class_text(h: &HirzebruchLocalClass) -> Result<String> {
    let mut out = format!("local class of {} (dual {})\n", h.sigma, h.dual);
    for t in &h.terms {
        let _ = writeln!(out, "  face {:?}: {} * (1+y)^{} * {}", t.face, h.orbit_marker, t.delta_power, t.contribution);
    }
    let _ = writeln!(out, "collapsed: {}", h.collapsed()?);
    Ok(out)
}

pub fn open_orbit_text(power: usize, s: &CertifiedConeSum) -> String {
    format!("(1+y)^{power} * {s}\n")
}

pub fn report_text(r: &Report) -> String {
    format!("{r}\n")
}

/// Coefficient of `t^j` for one-variable expansions, for quick reading.
pub fn laurent_text(l: &LaurentExpansion) -> String {
    let mut out = format!("{l}\n");
    if l.series.nvars() == 1 {
        let k = l.pole_factors.len() as i64;
        for j in -k..=l.truncation_order as i64 {
            if let Some(c) = l.univariate_coefficient(j) {
                let _ = writeln!(out, "  t^{j}: {c}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{face_lattice, semigroup_generators, triangulate};
    use crate::genfun::{closed_sum, interior_sum};
    use crate::hirzebruch::{chi_y, laurent_expand, local_class};
    use crate::oracle::{verify_random, SuiteOptions};

    fn roundtrip<T: Serialize + for<'de> Deserialize<'de>>(x: &T) -> T {
        serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap()
    }

    fn segre() -> Cone {
        Cone::from_i64(3, &[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]).unwrap()
    }

    #[test]
    fn integers_switch_to_strings_when_large() {
        let big = Int(BigInt::from(i64::MAX) * 4);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "\"36893488147419103228\"");
        assert_eq!(roundtrip(&big), big);
        assert_eq!(serde_json::to_string(&Int(BigInt::from(-3))).unwrap(), "-3");
        assert!(serde_json::from_str::<Int>("1.5").is_err());
    }

    #[test]
    fn rationals_roundtrip() {
        let half = Rational(BigRational::new(1.into(), (-2).into()));
        assert_eq!(serde_json::to_string(&half).unwrap(), "\"-1/2\"");
        assert_eq!(roundtrip(&half), half);
        assert_eq!(serde_json::to_string(&Rational(BigRational::from_integer(4.into()))).unwrap(), "4");
    }

    #[test]
    fn cone_documents() {
        let d: ConeDocument = serde_json::from_str(r#"{"rank":2,"rays":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(d.cone().unwrap(), Cone::orthant(2));
        assert_eq!(roundtrip(&d), d);
        let bad: ConeDocument = serde_json::from_str(r#"{"rank":2,"rays":[[1,0]],"fan":[[0,1]]}"#).unwrap();
        assert!(bad.validate().is_err());
        assert!(serde_json::from_str::<ConeDocument>(r#"{"rank":2,"rays":[],"extra":1}"#).is_err());
    }

    #[test]
    fn generator_override_prepends_rays() {
        let d: ConeDocument =
            serde_json::from_str(r#"{"rank":2,"rays":[[1,0],[1,2]],"generators":[[1,1]]}"#).unwrap();
        let c = d.cone().unwrap();
        let g = d.generator_set(&c).unwrap().unwrap();
        assert_eq!(g.generators.len(), 3);
        assert_eq!(g.generators[2], LatticeVector::from_i64(&[1, 1]));
    }

    #[test]
    fn every_record_roundtrips() {
        let c = segre();
        let s = interior_sum(&c);
        assert_eq!(roundtrip(&ConeSumRecord::of(&s)).parse().unwrap(), s);
        let s = closed_sum(&c);
        assert_eq!(roundtrip(&ConeSumRecord::of(&s)).parse().unwrap(), s);
        assert_eq!(roundtrip(&GenFunRecord::of(&s.value)).parse().unwrap(), s.value);
        let t = triangulate(&c);
        assert_eq!(roundtrip(&TriangulationRecord::of(&t)).parse().unwrap(), t);
        let l = face_lattice(&c);
        assert_eq!(roundtrip(&FacesRecord::of(&l)).parse().unwrap(), l);
        let g = semigroup_generators(&c);
        assert_eq!(roundtrip(&HilbertRecord::of(&g)).parse().unwrap(), g);
        let h = local_class(&c).unwrap();
        let rec = LocalClassRecord::of(&h).unwrap();
        assert_eq!(roundtrip(&rec).parse().unwrap(), h);
        assert_eq!(roundtrip(&rec.collapsed).parse(3).unwrap(), h.collapsed().unwrap());

        let fan = crate::cone::Fan::generated_by(
            1,
            vec![LatticeVector::from_i64(&[1]), LatticeVector::from_i64(&[-1])],
            vec![vec![0], vec![1]],
        )
        .unwrap();
        let p = chi_y(&fan).unwrap();
        assert_eq!(roundtrip(&ChiYRecord::of(&p)).parse(), p);

        let ray = Cone::from_i64(1, &[&[1]]).unwrap();
        let e = laurent_expand(&closed_sum(&ray).value, 4).unwrap();
        assert_eq!(roundtrip(&LaurentRecord::of(&e)).parse(1).unwrap(), e);

        let r = verify_random(&SuiteOptions { seed: 1, dim: 2, count: 1, ..Default::default() });
        assert_eq!(roundtrip(&ReportRecord::of(&r)).parse(), r);
    }
}
