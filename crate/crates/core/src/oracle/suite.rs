use num_bigint::BigInt;

use super::{check_euler, check_sum, random_cones, CheckOutcome, Report};
use crate::cone::{dual_cone, semigroup_generators, triangulate, triangulate_with_order, Cone};
use crate::genfun::{closed_sum, genfun_equal, interior_sum, interior_sum_with};
use crate::hirzebruch::{local_class, open_orbit_class, todd_specialize};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub dim: usize,
    pub count: usize,
    pub bound: BigInt,
    pub max_rays: usize,
    pub entry_bound: Option<i64>,
    pub max_dual_volume: Option<u64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            dim: 3,
            count: 10,
            bound: super::default_bound(),
            max_rays: 8,
            entry_bound: None,
            max_dual_volume: Some(super::random::DEFAULT_MAX_DUAL_VOLUME),
        }
    }
}

/// Every oracle check on a batch of seeded random cones of rank `dim`.
pub fn verify_random(opts: &SuiteOptions) -> Report {
    let mut report = Report::default();
    for c in random_cones(
        opts.seed,
        opts.dim..=opts.dim,
        opts.count,
        opts.max_rays,
        opts.entry_bound,
        opts.max_dual_volume,
    ) {
        check_cone(&c, &opts.bound, &mut report);
    }
    report
}

/// Oracle checks for one cone: both sums against enumeration, the Euler
/// relation, independence of the triangulation, the open-orbit sum and the
/// `y = 0` specialization of the local class.
pub fn check_cone(c: &Cone, bound: &BigInt, report: &mut Report) {
    report.push(check_sum(c, &closed_sum(c), bound));
    let interior = interior_sum(c);
    report.push(check_sum(c, &interior, bound));
    let t = triangulate(c);
    report.push(check_euler(&t));

    let reversed: Vec<usize> = (0..c.rays().len()).rev().collect();
    let other = triangulate_with_order(c, &reversed).expect("permutation");
    if other.maximal_cells != t.maximal_cells {
        report.push(check_euler(&other));
        let name = format!("triangulation independence on {c}");
        let alt = interior_sum_with(c, &semigroup_generators(c), &other).expect("Hilbert basis generates");
        report.push(if genfun_equal(&alt.value, &interior.value) {
            CheckOutcome::pass(name)
        } else {
            CheckOutcome::fail(name, "interior sums differ")
        });
    }

    match (dual_cone(c), open_orbit_class(c), local_class(c)) {
        (Ok(dual), Ok((_, open)), Ok(h)) => {
            report.push(check_sum(&dual, &open, bound));
            let name = format!("todd specialization on {c}");
            report.push(if genfun_equal(&todd_specialize(&h), &closed_sum(&dual).value) {
                CheckOutcome::pass(name)
            } else {
                CheckOutcome::fail(name, "y = 0 class differs from the closed sum of the dual")
            });
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
            report.push(CheckOutcome::fail(format!("local class of {c}"), e.to_string()))
        }
    }
}
