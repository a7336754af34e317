use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::subsequence;

use conesum::cli::{run, Args, Command, OutputFormat};
use conesum::cone::{
    dual_cone, dual_face_by_indices, face_lattice, parallelepiped_points, semigroup_generators, triangulate,
    triangulate_with_order, Cone, Fan,
};
use conesum::format::{ConeDocument, ConeSumRecord, GenFunRecord, LocalClassRecord};
use conesum::genfun::{
    closed_sum, closed_sum_via_faces, decompose_in_generators, genfun_equal, geometric_sum_simplicial,
    interior_sum, interior_sum_with, GroupRingElement, RationalGenFun,
};
use conesum::hirzebruch::{chi_y, laurent_expand, local_class, open_orbit_class, todd_specialize, PowerSeries};
use conesum::lattice::{
    hermite_normal_form, lattice_index, primitive, smith_normal_form, solve_in_basis, IntegerMatrix,
    LatticeEmbedding, LatticeVector,
};
use conesum::oracle::{check_euler, check_sum, enumerate_points, normalized_volume, random_cones};

fn vector(rank: usize, bound: i64) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-bound..=bound, rank).prop_map(|v| LatticeVector::from_i64(&v))
}

fn nonzero_vector(rank: usize, bound: i64) -> impl Strategy<Value = LatticeVector> {
    vector(rank, bound).prop_filter("nonzero", |v| !v.is_zero())
}

const MAX_VOLUME: u64 = 2000;

/// Both the cone and its dual have small normalized volume, so sums and
/// local classes stay cheap.
fn tame(c: &Cone) -> bool {
    let cap = BigInt::from(MAX_VOLUME);
    normalized_volume(c) <= cap && normalized_volume(&dual_cone(c).expect("full-dimensional")) <= cap
}

/// Full-dimensional strictly convex cones.
fn cone(ranks: std::ops::RangeInclusive<usize>, max_rays: usize, bound: i64) -> impl Strategy<Value = Cone> {
    ranks
        .prop_flat_map(move |r| (Just(r), prop::collection::vec(vector(r, bound), r..=max_rays.max(r))))
        .prop_filter_map("not a full-dimensional strictly convex cone", |(r, vs)| {
            Cone::new(r, vs).ok().filter(|c| c.is_full_dimensional() && tame(c))
        })
}

fn simplicial_cone(ranks: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = Cone> {
    ranks
        .prop_flat_map(move |r| (Just(r), prop::collection::vec(vector(r, bound), r)))
        .prop_filter_map("dependent rays", |(r, vs)| {
            Cone::new(r, vs).ok().filter(|c| c.is_full_dimensional() && c.rays().len() == r)
        })
}

fn non_simplicial_cone(ranks: std::ops::RangeInclusive<usize>, max_rays: usize, bound: i64) -> impl Strategy<Value = Cone> {
    cone(ranks, max_rays, bound).prop_filter("simplicial", |c| !c.is_simplicial())
}

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntegerMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn is_unit(d: &BigInt) -> bool {
    d.abs().is_one()
}

/// Points of the box `[−b, b]^n`.
fn box_points(rank: usize, b: i64) -> Vec<LatticeVector> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.iter().map(|p| LatticeVector::from_i64(p)).collect()
}

fn ray_set(c: &Cone) -> BTreeSet<LatticeVector> {
    c.rays().iter().cloned().collect()
}

fn small(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, max_global_rejects: 100_000, ..ProptestConfig::default() }
}

// Lattice.

proptest! {
    #![proptest_config(small(128))]

    #[test]
    fn primitive_is_idempotent(v in (1usize..=5).prop_flat_map(|r| nonzero_vector(r, 60))) {
        let p = primitive(&v).unwrap();
        prop_assert_eq!(primitive(&p).unwrap(), p.clone());
        prop_assert!(p.content().is_one());
        prop_assert_eq!(p.scale(&v.content()), v);
    }

    #[test]
    fn hermite_round_trip(a in matrix(4, 9)) {
        let (h, u) = hermite_normal_form(&a);
        prop_assert_eq!(u.mul(&a), h);
        prop_assert!(is_unit(&u.determinant()));
    }

    #[test]
    fn smith_round_trip(a in matrix(4, 9)) {
        let (d, u, v) = smith_normal_form(&a);
        prop_assert_eq!(u.mul(&a).mul(&v), d.clone());
        prop_assert!(d.is_diagonal());
        prop_assert!(is_unit(&u.determinant()));
        prop_assert!(is_unit(&v.determinant()));
    }

    #[test]
    fn lattice_index_invariances(
        (vs, perm, flips) in (1usize..=4).prop_flat_map(|r| (
            prop::collection::vec(vector(r, 6), r),
            Just((0..r).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(any::<bool>(), r),
        ))
    ) {
        let Ok(idx) = lattice_index(&vs) else { return Ok(()) };
        let moved: Vec<LatticeVector> =
            perm.iter().zip(&flips).map(|(&i, &f)| if f { -&vs[i] } else { vs[i].clone() }).collect();
        prop_assert_eq!(lattice_index(&moved).unwrap(), idx);
        let r = vs.len();
        let units: Vec<LatticeVector> = (0..r).map(|i| LatticeVector::unit(r, i)).collect();
        prop_assert!(lattice_index(&units).unwrap().is_one());
    }

    #[test]
    fn sublattice_coordinates_round_trip(
        (rank, gens) in (2usize..=3).prop_flat_map(|r| (Just(r), prop::collection::vec(vector(r, 3), 1..r)))
    ) {
        let span = LatticeEmbedding::of_span(rank, &gens);
        for v in box_points(rank, 3) {
            if span.contains(&v) {
                let local = span.project(&v).unwrap();
                prop_assert_eq!(span.embed(&local), v);
            } else {
                prop_assert!(span.project(&v).is_none());
            }
        }
    }
}

// Cones.

proptest! {
    #![proptest_config(small(64))]

    #[test]
    fn double_dual(c in cone(1..=4, 6, 3)) {
        let dd = dual_cone(&dual_cone(&c).unwrap()).unwrap();
        prop_assert_eq!(ray_set(&dd), ray_set(&c));
    }

    #[test]
    fn dual_faces_reverse_the_face_lattice(c in cone(2..=4, 6, 3)) {
        let lattice = face_lattice(&c);
        let dual = dual_cone(&c).unwrap();
        let dual_faces: BTreeSet<BTreeSet<LatticeVector>> =
            face_lattice(&dual).faces.iter().map(|f| f.rays.iter().map(|&i| dual.rays()[i].clone()).collect()).collect();
        let images: Vec<BTreeSet<LatticeVector>> = lattice
            .faces
            .iter()
            .map(|f| {
                let df = dual_face_by_indices(&c, &f.rays).unwrap();
                assert_eq!(df.cone.dim(), c.rank() - f.dim);
                ray_set(&df.cone)
            })
            .collect();
        let distinct: BTreeSet<_> = images.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), images.len());
        prop_assert_eq!(distinct, dual_faces);
        for &(i, j) in &lattice.containment {
            prop_assert!(images[j].is_subset(&images[i]) && images[i] != images[j]);
        }
    }

    #[test]
    fn cells_partition_the_cone(c in cone(2..=3, 6, 3)) {
        let t = triangulate(&c);
        for v in box_points(c.rank(), 3) {
            let owners = t
                .all_cells
                .iter()
                .filter(|cell| {
                    if cell.is_empty() {
                        return v.is_zero();
                    }
                    solve_in_basis(&t.cell_rays(cell), &v).is_some_and(|l| l.iter().all(Signed::is_positive))
                })
                .count();
            prop_assert_eq!(owners, usize::from(c.contains(&v, false)), "point {}", v);
        }
    }

    #[test]
    fn parallelepiped_count_is_the_index(c in simplicial_cone(1..=4, 6)) {
        let pts = parallelepiped_points(&c).unwrap();
        prop_assert_eq!(BigInt::from(pts.len()), lattice_index(c.rays()).unwrap());
    }

    #[test]
    fn generators_generate(c in cone(2..=3, 6, 4)) {
        let gens = semigroup_generators(&c);
        for p in enumerate_points(&c, false, &c.grading(), &BigInt::from(8)).unwrap() {
            let coeffs = decompose_in_generators(&p, &gens).unwrap();
            let back = coeffs
                .iter()
                .zip(&gens.generators)
                .fold(LatticeVector::zero(c.rank()), |acc, (&k, g)| &acc + &g.scale(&BigInt::from(k)));
            prop_assert_eq!(back, p);
        }
    }
}

// Generating functions.

fn bound() -> BigInt {
    BigInt::from(12)
}

proptest! {
    #![proptest_config(small(24))]

    #[test]
    fn simplicial_sums_are_certified(c in simplicial_cone(1..=4, 5)
        .prop_filter("keep enumeration small", |c| lattice_index(c.rays()).unwrap() <= BigInt::from(400))) {
        let s = geometric_sum_simplicial(&c).unwrap();
        let outcome = check_sum(&c, &s, &bound());
        prop_assert!(outcome.passed(), "{}", outcome);
    }

    #[test]
    fn interior_sums_are_certified(c in prop_oneof![non_simplicial_cone(3..=3, 8, 3), non_simplicial_cone(4..=4, 8, 1)]) {
        let outcome = check_sum(&c, &interior_sum(&c), &bound());
        prop_assert!(outcome.passed(), "{}", outcome);
        let outcome = check_sum(&c, &closed_sum(&c), &bound());
        prop_assert!(outcome.passed(), "{}", outcome);
    }

    #[test]
    fn interior_sum_is_triangulation_independent(
        (c, order) in non_simplicial_cone(2..=4, 7, 2)
            .prop_flat_map(|c| { let n = c.rays().len(); (Just(c), Just((0..n).collect::<Vec<_>>()).prop_shuffle()) })
    ) {
        let t = triangulate_with_order(&c, &order).unwrap();
        let s = interior_sum_with(&c, &semigroup_generators(&c), &t).unwrap();
        prop_assert!(genfun_equal(&s.value, &interior_sum(&c).value));
        prop_assert!(s.verify());
        prop_assert!(check_euler(&t).passed());
    }

    #[test]
    fn closed_sum_is_the_sum_over_face_interiors(c in cone(1..=4, 6, 2)) {
        prop_assert!(genfun_equal(&closed_sum(&c).value, &closed_sum_via_faces(&c)));
    }

    #[test]
    fn euler_relation(c in cone(2..=4, 7, 3)) {
        let t = triangulate(&c);
        let outcome = check_euler(&t);
        prop_assert!(outcome.passed(), "{}", outcome);
    }

    #[test]
    fn interior_from_closed_faces_by_inclusion_exclusion(c in cone(1..=4, 6, 2)) {
        let lattice = face_lattice(&c);
        let mut total = RationalGenFun::zero(c.rank());
        for (i, f) in lattice.faces.iter().enumerate() {
            let v = closed_sum(&lattice.face_cone(i)).value;
            let sign = if (c.dim() - f.dim) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            total = total.add(&v.scale(&sign));
        }
        prop_assert!(genfun_equal(&total, &interior_sum(&c).value));
    }
}

// Hirzebruch classes.

proptest! {
    #![proptest_config(small(24))]

    #[test]
    fn open_orbit_certificate_is_nonnegative(c in cone(2..=4, 6, 2)) {
        let (_, s) = open_orbit_class(&c).unwrap();
        prop_assert!(s.is_certificate_nonnegative());
        prop_assert!(s.verify());
    }

    #[test]
    fn open_orbit_rank_five(seed in any::<u64>()) {
        let c = &random_cones(seed, 5..=5, 1, 6, None, Some(500))[0];
        let (_, s) = open_orbit_class(c).unwrap();
        prop_assert!(s.is_certificate_nonnegative(), "{}", c);
        prop_assert!(s.verify());
    }

    #[test]
    fn todd_specialization(c in cone(2..=4, 6, 2)) {
        let h = local_class(&c).unwrap();
        prop_assert!(genfun_equal(&todd_specialize(&h), &closed_sum(&dual_cone(&c).unwrap()).value));
        prop_assert!(h.collapsed().unwrap().is_nonnegative());
    }

    #[test]
    fn local_class_uses_each_dual_face_once(c in cone(2..=4, 6, 3)) {
        let h = local_class(&c).unwrap();
        let used: Vec<BTreeSet<LatticeVector>> = h.terms.iter().map(|t| ray_set(&t.contribution.cone)).collect();
        let distinct: BTreeSet<_> = used.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), used.len());
        let dual = dual_cone(&c).unwrap();
        let expected: BTreeSet<BTreeSet<LatticeVector>> =
            face_lattice(&dual).faces.iter().map(|f| f.rays.iter().map(|&i| dual.rays()[i].clone()).collect()).collect();
        prop_assert_eq!(distinct, expected);
    }

    #[test]
    fn hirzebruch_surfaces(a in -6i64..=6) {
        let rays = [[1, 0], [0, 1], [-1, a], [0, -1]].iter().map(|r| LatticeVector::from_i64(r)).collect();
        let fan = Fan::generated_by(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        prop_assert!(fan.is_complete());
        let p = chi_y(&fan).unwrap();
        prop_assert_eq!(p.to_string(), "1 - 2*y + y^2");
        prop_assert!(p.evaluate(&BigInt::zero()).is_one());
        prop_assert_eq!(p.evaluate(&BigInt::from(-1)), BigInt::from(4));
    }

    #[test]
    fn laurent_expansion_is_linear(
        (rank, den, n1, n2, order) in (1usize..=2).prop_flat_map(|r| (
            Just(r),
            prop::collection::vec(nonzero_vector(r, 3), 1..=3),
            prop::collection::vec((vector(r, 3), -4i64..=4), 0..=3),
            prop::collection::vec((vector(r, 3), -4i64..=4), 0..=3),
            0usize..=3,
        ))
    ) {
        let element = |terms: &[(LatticeVector, i64)]| {
            GroupRingElement::from_terms(rank, terms.iter().map(|(m, c)| (m.clone(), BigInt::from(*c))))
        };
        let g1 = RationalGenFun::new(element(&n1), den.clone()).unwrap();
        let g2 = RationalGenFun::new(element(&n2), den).unwrap();
        let e1 = laurent_expand(&g1, order).unwrap();
        let e2 = laurent_expand(&g2, order).unwrap();
        let sum = laurent_expand(&g1.add(&g2), order).unwrap();
        prop_assert_eq!(&e1.pole_factors, &sum.pole_factors);
        let added: PowerSeries = e1.series.add(&e2.series);
        prop_assert_eq!(added.terms(), sum.series.terms());
    }
}

// Serialization.

proptest! {
    #![proptest_config(small(24))]

    #[test]
    fn records_round_trip(c in cone(1..=3, 5, 3)) {
        let s = closed_sum(&c);
        let json = serde_json::to_string(&ConeSumRecord::of(&s)).unwrap();
        prop_assert_eq!(serde_json::from_str::<ConeSumRecord>(&json).unwrap().parse().unwrap(), s.clone());
        let json = serde_json::to_string(&GenFunRecord::of(&s.value)).unwrap();
        prop_assert_eq!(serde_json::from_str::<GenFunRecord>(&json).unwrap().parse().unwrap(), s.value);
        let h = local_class(&c).unwrap();
        let json = serde_json::to_string(&LocalClassRecord::of(&h).unwrap()).unwrap();
        prop_assert_eq!(serde_json::from_str::<LocalClassRecord>(&json).unwrap().parse().unwrap(), h);
    }

    #[test]
    fn cli_output_is_deterministic(c in cone(1..=3, 5, 3), json in any::<bool>(), which in subsequence(vec![0usize, 1, 2, 3], 1)) {
        let command = [Command::InteriorSum, Command::ClosedSum, Command::Faces, Command::LocalClass][which[0]];
        let mut args = Args::new(command);
        args.input = Some("-".into());
        args.format = if json { OutputFormat::Json } else { OutputFormat::Text };
        let doc = serde_json::to_string(&ConeDocument::of_cone(&c)).unwrap();
        let a = run(&args, &mut doc.as_bytes());
        let b = run(&args, &mut doc.as_bytes());
        prop_assert_eq!(a.code, 0);
        prop_assert_eq!(a, b);
    }
}
