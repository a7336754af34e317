use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::{dual_cone, triangulate, Cone};
use crate::lattice::{lattice_index, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConeParams {
    pub rank: usize,
    pub min_rays: usize,
    pub max_rays: usize,
    /// Entries are drawn from `[−entry_bound, entry_bound]`.
    pub entry_bound: i64,
    /// Redraw cones whose dual has a larger normalized volume.
    pub max_dual_volume: Option<u64>,
}

/// Largest entry bound for which the duals of random cones of this rank
/// stay small enough to enumerate their parallelepipeds.
pub fn default_entry_bound(rank: usize) -> i64 {
    match rank {
        0..=3 => 6,
        4 => 2,
        _ => 1,
    }
}

pub const DEFAULT_MAX_DUAL_VOLUME: u64 = 5000;

/// Sum of the multiplicities of the maximal cells of a triangulation.
pub fn normalized_volume(c: &Cone) -> BigInt {
    let t = triangulate(c);
    t.maximal_cells
        .iter()
        .map(|cell| lattice_index(&t.cell_rays(cell)).expect("cells are simplicial"))
        .sum()
}

/// Full-dimensional strictly convex cone from vectors sampled in a box.
/// Rejected samples are redrawn.
pub fn random_cone(rng: &mut ChaCha8Rng, p: &RandomConeParams) -> Cone {
    let min_rays = p.min_rays.max(p.rank);
    loop {
        let n = rng.gen_range(min_rays..=p.max_rays.max(min_rays));
        let vs: Vec<LatticeVector> = (0..n)
            .map(|_| {
                let coords: Vec<i64> =
                    (0..p.rank).map(|_| rng.gen_range(-p.entry_bound..=p.entry_bound)).collect();
                LatticeVector::from_i64(&coords)
            })
            .collect();
        let Ok(c) = Cone::new(p.rank, vs) else { continue };
        if !c.is_full_dimensional() || c.rays().len() < p.min_rays {
            continue;
        }
        if let Some(cap) = p.max_dual_volume {
            let dual = dual_cone(&c).expect("full-dimensional");
            if normalized_volume(&dual) > BigInt::from(cap) {
                continue;
            }
        }
        return c;
    }
}

/// `count` cones with ranks cycling through `ranks`; `entry_bound` of `None`
/// selects [`default_entry_bound`] per rank.
pub fn random_cones(
    seed: u64,
    ranks: std::ops::RangeInclusive<usize>,
    count: usize,
    max_rays: usize,
    entry_bound: Option<i64>,
    max_dual_volume: Option<u64>,
) -> Vec<Cone> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ranks: Vec<usize> = ranks.collect();
    (0..count)
        .map(|i| {
            let rank = ranks[i % ranks.len()];
            let p = RandomConeParams {
                rank,
                min_rays: rank,
                max_rays: max_rays.max(rank),
                entry_bound: entry_bound.unwrap_or_else(|| default_entry_bound(rank)),
                max_dual_volume,
            };
            random_cone(&mut rng, &p)
        })
        .collect()
}
