//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use conesum::cli::{run, Args, Command, OutputFormat};
use conesum::cone::{semigroup_generators, triangulate, triangulate_with_order, Cone, Fan, Triangulation};
use conesum::format::ConeSumRecord;
use conesum::genfun::{
    closed_sum, genfun_equal, interior_sum, interior_sum_with, CertifiedConeSum, GroupRingElement, RationalGenFun,
    SPolynomial,
};
use conesum::hirzebruch::{
    chi_y, laurent_expand, local_class, open_orbit_class, todd_specialize, LaurentExpansion, PowerSeries,
};
use conesum::lattice::LatticeVector;
use conesum::oracle::{check_euler, check_sum, random_cones, DEFAULT_MAX_DUAL_VOLUME};

const SEED: u64 = 2024;
const COUNT: usize = 200;
const MAX_RAYS: usize = 8;

struct Outcome {
    id: usize,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(id: usize, title: &'static str) -> Self {
        Outcome { id, title, failures: Vec::new(), notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn print(&self) -> bool {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} criterion {}: {}", self.id, self.title);
        if !self.notes.is_empty() {
            line.push_str(&format!(" ({})", self.notes.join("; ")));
        }
        println!("{line}");
        for f in self.failures.iter().take(5) {
            println!("    {f}");
        }
        if self.failures.len() > 5 {
            println!("    ... and {} more", self.failures.len() - 5);
        }
        self.failures.is_empty()
    }
}

fn bound() -> BigInt {
    BigInt::from(12)
}

/// Segre polynomials built from the cyclic description: the two diagonal
/// terms, then `Σ S_i S_{i+1}`, `Σ S_i S_{i+1} S_{i+2}` and the full product.
fn segre_polynomial(vars: &[LatticeVector], diagonal: (usize, usize)) -> SPolynomial {
    let mono = |idx: &[usize]| {
        let mut e = vec![0u32; 4];
        for &i in idx {
            e[i % 4] += 1;
        }
        (e, BigInt::one())
    };
    let mut terms = vec![mono(&[diagonal.0]), mono(&[diagonal.1]), mono(&[diagonal.0, diagonal.1])];
    for i in 0..4 {
        terms.push(mono(&[i, i + 1]));
        terms.push(mono(&[i, i + 1, i + 2]));
    }
    terms.push(mono(&[0, 1, 2, 3]));
    SPolynomial::from_terms(3, vars.to_vec(), terms).expect("four variables")
}

fn criterion_1(triangulations: &mut Vec<Triangulation>) -> Outcome {
    let mut o = Outcome::new(1, "Segre cone reproduces P and P' term for term");
    let start = Instant::now();
    let doc = r#"{"rank": 3, "rays": [[0,0,1],[1,0,1],[1,1,1],[0,1,1]]}"#;
    let mut args = Args::new(Command::InteriorSum);
    args.input = Some("-".into());
    args.format = OutputFormat::Json;
    let mut sums = Vec::new();
    for order in [None, Some(vec![1, 2, 3, 0])] {
        args.triangulation_order = order;
        let out = run(&args, &mut doc.as_bytes());
        o.require(out.code == 0, || format!("interior-sum exited {}: {}", out.code, out.stderr));
        let record: ConeSumRecord = serde_json::from_str(&out.stdout).expect("JSON output");
        sums.push(record.parse().expect("record parses"));
    }
    let c = sums[0].cone.clone();
    let vars = c.rays().to_vec();
    let p = segre_polynomial(&vars, (0, 2));
    let p_prime = segre_polynomial(&vars, (1, 3));
    o.require(sums[0].certificate == p, || format!("P differs: {}", sums[0].certificate));
    o.require(sums[1].certificate == p_prime, || format!("P' differs: {}", sums[1].certificate));
    o.require(sums.iter().all(|s| s.sign == -1 && s.ray_denominator == vars), || "prefactor differs".into());
    o.require(genfun_equal(&sums[0].value, &sums[1].value), || "values differ".into());
    o.require(sums.iter().all(CertifiedConeSum::verify), || "certificate does not match value".into());
    let elapsed = start.elapsed();
    o.require(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"));
    o.note(format!("{} terms each, {:.0?}", p.terms().len(), elapsed));
    triangulations.push(triangulate(&c));
    triangulations.push(triangulate_with_order(&c, &[1, 2, 3, 0]).expect("permutation"));
    o
}

struct ConeData {
    cone: Cone,
    dual: Cone,
    interior: CertifiedConeSum,
    open: CertifiedConeSum,
}

fn criterion_2(cones: &[Cone]) -> (Outcome, Vec<ConeData>) {
    let mut o = Outcome::new(2, "open-orbit and interior certificates are nonnegative on 200 random cones");
    let start = Instant::now();
    let mut data = Vec::with_capacity(cones.len());
    for c in cones {
        let interior = interior_sum(c);
        let (_, open) = open_orbit_class(c).expect("full-dimensional");
        if let Some((e, k)) = interior.certificate.first_negative() {
            o.failures.push(format!("interior certificate of {c}: {k}*{}", interior.certificate.monomial_string(&e)));
        }
        if let Some((e, k)) = open.certificate.first_negative() {
            o.failures.push(format!("open-orbit certificate of {c}: {k}*{}", open.certificate.monomial_string(&e)));
        }
        data.push(ConeData { dual: open.cone.clone(), cone: c.clone(), interior, open });
    }
    let elapsed = start.elapsed();
    o.require(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"));
    let ranks: Vec<usize> = (2..=5).map(|r| cones.iter().filter(|c| c.rank() == r).count()).collect();
    o.note(format!("ranks 2..5: {ranks:?}, {:.1?}", elapsed));
    (o, data)
}

fn criterion_3(data: &[ConeData], triangulations: &mut Vec<Triangulation>) -> Outcome {
    let mut o = Outcome::new(3, "closed and interior sums match lattice enumeration to degree 12");
    let mut checks = 0;
    for d in data {
        for (cone, sum) in [(&d.cone, closed_sum(&d.cone)), (&d.cone, d.interior.clone()), (&d.dual, d.open.clone())] {
            let outcome = check_sum(cone, &sum, &bound());
            checks += 1;
            o.require(outcome.passed(), || outcome.to_string());
        }
        triangulations.push(triangulate(&d.cone));
        triangulations.push(triangulate(&d.dual));
    }
    o.note(format!("{checks} sums"));
    o
}

/// Some rotation or the reversal of the ray order gives a different placing
/// triangulation.
fn other_triangulation(c: &Cone) -> Option<Triangulation> {
    let n = c.rays().len();
    let default = triangulate(c);
    let mut orders: Vec<Vec<usize>> = vec![(0..n).rev().collect()];
    orders.extend((1..n).map(|k| (0..n).map(|i| (i + k) % n).collect()));
    orders
        .into_iter()
        .map(|order| triangulate_with_order(c, &order).expect("permutation"))
        .find(|t| t.maximal_cells != default.maximal_cells)
}

fn criterion_4(cones: &[Cone], triangulations: &mut Vec<Triangulation>) -> Outcome {
    let mut o = Outcome::new(4, "interior sums agree across triangulations on 50 cones");
    let mut tested = 0;
    let mut differing = 0;
    let mut extra_seed = SEED;
    let mut pool: Vec<Cone> = cones.to_vec();
    let mut next = 0;
    while tested < 50 {
        if next == pool.len() {
            extra_seed += 1;
            pool.extend(random_cones(extra_seed, 3..=4, 50, MAX_RAYS, None, Some(DEFAULT_MAX_DUAL_VOLUME)));
        }
        let c = &pool[next];
        next += 1;
        let Some(t) = other_triangulation(c) else { continue };
        tested += 1;
        let base = interior_sum(c);
        let alt = interior_sum_with(c, &semigroup_generators(c), &t).expect("Hilbert basis generates");
        if alt.certificate != base.certificate {
            differing += 1;
        }
        o.require(genfun_equal(&alt.value, &base.value), || format!("values differ on {c}"));
        o.require(alt.verify(), || format!("certificate of the alternative triangulation of {c} is wrong"));
        triangulations.push(t);
    }
    o.note(format!("{tested} cones, {differing} with different certificates"));
    o
}

fn criterion_5(triangulations: &[Triangulation]) -> Outcome {
    let mut o = Outcome::new(5, "Euler relation on every cell of every triangulation above");
    let mut cells = 0;
    for t in triangulations {
        cells += t.all_cells.len();
        let outcome = check_euler(t);
        o.require(outcome.passed(), || outcome.to_string());
    }
    o.note(format!("{} triangulations, {cells} cells", triangulations.len()));
    o
}

fn criterion_6(data: &[ConeData]) -> Outcome {
    let mut o = Outcome::new(6, "y = 0 specialization of the local class equals the closed sum of the dual on 50 cones");
    for d in data.iter().take(50) {
        let h = local_class(&d.cone).expect("full-dimensional");
        let closed = closed_sum(&d.dual);
        o.require(genfun_equal(&todd_specialize(&h), &closed.value), || format!("differs on {}", d.cone));
    }
    o
}

fn fan(rank: usize, rays: &[&[i64]], maximal: &[&[usize]]) -> Fan {
    Fan::generated_by(
        rank,
        rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
        maximal.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("valid fan")
}

/// `Σ_c n_c (−1 − y)^c` from the number `n_c` of cones of each codimension,
/// expanded independently of the library.
fn expand_by_codimension(f: &Fan) -> Vec<BigInt> {
    let n = f.rank();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for cone in f.cones() {
        let c = n - f.dim_of(cone);
        // (−1 − y)^c as a coefficient list, by repeated multiplication.
        let mut p = vec![BigInt::one()];
        for _ in 0..c {
            let mut q = vec![BigInt::zero(); p.len() + 1];
            for (k, a) in p.iter().enumerate() {
                q[k] -= a;
                q[k + 1] -= a;
            }
            p = q;
        }
        for (k, a) in p.into_iter().enumerate() {
            coeffs[k] += a;
        }
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new(7, "chi_y values of complete toric fans");
    let p1 = fan(1, &[&[1], &[-1]], &[&[0], &[1]]);
    let p1xp1 = fan(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
    let p2 = fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]]);
    let f2 = fan(2, &[&[1, 0], &[0, 1], &[-1, 2], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
    let p3 = fan(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
        &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
    );
    let cube = fan(
        3,
        &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        &[&[0, 2, 4], &[0, 2, 5], &[0, 3, 4], &[0, 3, 5], &[1, 2, 4], &[1, 2, 5], &[1, 3, 4], &[1, 3, 5]],
    );
    let expected = [("P1", &p1, "1 - y"), ("P1xP1", &p1xp1, "1 - 2*y + y^2"), ("P2", &p2, "1 - y + y^2")];
    for (name, f, text) in expected {
        let p = chi_y(f).expect("face-closed");
        o.require(p.to_string() == text, || format!("{name}: got {p}, expected {text}"));
    }
    for (name, f) in [("P1", &p1), ("P1xP1", &p1xp1), ("P2", &p2), ("F2", &f2), ("P3", &p3), ("P1xP1xP1", &cube)] {
        let p = chi_y(f).expect("face-closed");
        o.require(f.is_complete(), || format!("{name} is not complete"));
        o.require(p.coefficients == expand_by_codimension(f), || format!("{name}: {p} differs from the expansion"));
        o.require(p.evaluate(&BigInt::zero()).is_one(), || format!("{name}: chi_y(0) = {}", p.evaluate(&BigInt::zero())));
        let maximal = f.maximal_cones().len();
        let at_minus_one = p.evaluate(&BigInt::from(-1));
        o.require(at_minus_one == BigInt::from(maximal), || format!("{name}: chi_y(-1) = {at_minus_one}, {maximal} maximal cones"));
    }
    o.note("P1, P1xP1, P2, F2, P3, P1xP1xP1");
    o
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Coefficients of `1/u` up to `t^n` by long division.
fn reciprocal(u: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut inv = vec![BigRational::zero(); n + 1];
    inv[0] = BigRational::one() / &u[0];
    for k in 1..=n {
        let mut s = BigRational::zero();
        for j in 1..=k.min(u.len() - 1) {
            s += &u[j] * &inv[k - j];
        }
        inv[k] = -s / &u[0];
    }
    inv
}

fn one_over(rank: usize, numerator: &[(&[i64], i64)], denominator: &[&[i64]]) -> RationalGenFun {
    let num = GroupRingElement::from_terms(
        rank,
        numerator.iter().map(|(m, c)| (LatticeVector::from_i64(m), BigInt::from(*c))),
    );
    RationalGenFun::new(num, denominator.iter().map(|m| LatticeVector::from_i64(m)).collect()).expect("nonzero")
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new(8, "Laurent expansions of 1/(1-e^t) and of products");
    let order = 4;
    let g = one_over(1, &[(&[0], 1)], &[&[1]]);
    let e = laurent_expand(&g, order).expect("expands");

    // 1/(1 − e^t) = −1/t · 1/u(t), u(t) = (e^t − 1)/t = Σ t^k/(k+1)!.
    let mut fact = BigInt::one();
    let mut u = Vec::new();
    for k in 0..=order + 1 {
        fact *= BigInt::from(k + 1);
        u.push(BigRational::new(BigInt::one(), fact.clone()));
    }
    let inv = reciprocal(&u, order + 1);
    for j in -1..=order as i64 {
        let want = -inv[(j + 1) as usize].clone();
        let got = e.univariate_coefficient(j);
        o.require(got.as_ref() == Some(&want), || format!("t^{j}: got {got:?}, expected {want}"));
    }
    // The literal unit series through t^4 fixes the coefficients through t^3.
    let literal = [rat(1, 1), rat(1, 2), rat(1, 6), rat(1, 24), rat(1, 120)];
    let inv = reciprocal(&literal, 4);
    for j in -1..=3i64 {
        let want = -inv[(j + 1) as usize].clone();
        o.require(e.univariate_coefficient(j).as_ref() == Some(&want), || format!("literal series, t^{j}"));
    }
    let listed = [rat(-1, 1), rat(1, 2), rat(-1, 12), rat(0, 1), rat(1, 720)];
    for (j, want) in (-1..=3i64).zip(&listed) {
        o.require(e.univariate_coefficient(j).as_ref() == Some(want), || format!("t^{j} is not {want}"));
    }

    let factors = [
        one_over(2, &[(&[0, 0], 1)], &[&[1, 0]]),
        one_over(2, &[(&[0, 0], 1)], &[&[0, 1]]),
        one_over(2, &[(&[1, 0], 1)], &[&[1, 1]]),
        one_over(2, &[(&[0, 0], 1), (&[0, 1], 2)], &[&[0, 2], &[1, 1]]),
        one_over(2, &[(&[2, -1], 3)], &[]),
    ];
    let mut products = 0;
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            let whole = laurent_expand(&a.mul(b), order).expect("expands");
            let ea = laurent_expand(a, order + 3).expect("expands");
            let eb = laurent_expand(b, order + 3).expect("expands");
            let mut poles = ea.pole_factors.clone();
            poles.extend(eb.pole_factors.iter().cloned());
            let series: PowerSeries = ea.series.mul(&eb.series);
            let product = LaurentExpansion { pole_factors: poles, series, truncation_order: order };
            o.require(whole.equivalent(&product), || format!("({a}) * ({b}) does not factor"));
            products += 1;
        }
    }
    o.note(format!("{products} products"));
    o
}

fn main() {
    let mut triangulations = Vec::new();
    let mut outcomes = vec![criterion_1(&mut triangulations)];
    let cones = random_cones(SEED, 2..=5, COUNT, MAX_RAYS, None, Some(DEFAULT_MAX_DUAL_VOLUME));
    assert!(cones.iter().all(|c| c.rays().len() <= MAX_RAYS && c.is_full_dimensional()));
    let (o2, data) = criterion_2(&cones);
    outcomes.push(o2);
    outcomes.push(criterion_3(&data, &mut triangulations));
    outcomes.push(criterion_4(&cones, &mut triangulations));
    outcomes.push(criterion_5(&triangulations));
    outcomes.push(criterion_6(&data));
    outcomes.push(criterion_7());
    outcomes.push(criterion_8());

    let mut passed = 0;
    for o in &outcomes {
        if o.print() {
            passed += 1;
        }
    }
    println!("{passed}/{} criteria passed", outcomes.len());
    if passed != outcomes.len() {
        std::process::exit(1);
    }
}
