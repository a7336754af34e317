use std::collections::{BTreeSet, HashMap};

use num_traits::Signed;

use super::Cone;
use crate::error::{Error, Result};
use crate::lattice::{rank_of, solve_in_basis, LatticeVector};

/// A cell of a triangulation: sorted indices into the base cone's rays.
pub type Cell = Vec<usize>;

/// Triangulation of a cone by simplicial cones on its own rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub base: Cone,
    /// Simplicial cells of dimension `dim(base)`.
    pub maximal_cells: Vec<Cell>,
    /// Every face of every maximal cell, including the empty cell (the
    /// trivial cone); sorted by dimension, then lexicographically.
    pub all_cells: Vec<Cell>,
}

impl Triangulation {
    pub fn cell_cone(&self, cell: &[usize]) -> Cone {
        self.base.subcone(cell)
    }

    pub fn cell_rays(&self, cell: &[usize]) -> Vec<LatticeVector> {
        cell.iter().map(|&i| self.base.rays()[i].clone()).collect()
    }

    pub fn contains_cell(&self, cell: &[usize]) -> bool {
        let mut key = cell.to_vec();
        key.sort_unstable();
        self.all_cells.binary_search_by(|c| (c.len(), c).cmp(&(key.len(), &key))).is_ok()
    }
}

/// Placing triangulation using only the rays of `c`.
///
/// Rays are placed starting from the last one in `c.rays()` and moving
/// towards the first, so the result is a deterministic function of the ray
/// order.
pub fn triangulate(c: &Cone) -> Triangulation {
    let order: Vec<usize> = (0..c.rays().len()).rev().collect();
    let maximal_cells = placing(c, &order);
    let all_cells = all_faces(&maximal_cells);
    Triangulation { base: c.clone(), maximal_cells, all_cells }
}

/// Triangulation as if the rays were listed in the given order
/// (`order[i]` is the index of the ray placed in position `i`).
/// Cell indices still refer to `c.rays()`.
pub fn triangulate_with_order(c: &Cone, order: &[usize]) -> Result<Triangulation> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..c.rays().len()).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(format!(
            "triangulation order {order:?} is not a permutation of 0..{}",
            c.rays().len()
        )));
    }
    let placing_order: Vec<usize> = order.iter().rev().copied().collect();
    let maximal_cells = placing(c, &placing_order);
    let all_cells = all_faces(&maximal_cells);
    Ok(Triangulation { base: c.clone(), maximal_cells, all_cells })
}

fn placing(c: &Cone, order: &[usize]) -> Vec<Cell> {
    let span = c.span();
    let k = span.dim();
    if k == 0 {
        return vec![Vec::new()];
    }
    let local: Vec<LatticeVector> =
        c.rays().iter().map(|r| span.project(r).expect("ray lies in span")).collect();

    let mut cells: Vec<Cell> = Vec::new();
    let mut placed: Vec<LatticeVector> = Vec::new();
    for &i in order {
        let r = &local[i];
        if cells.is_empty() {
            cells.push(vec![i]);
            placed.push(r.clone());
            continue;
        }
        let current_dim = rank_of(k, &placed);
        placed.push(r.clone());
        if rank_of(k, &placed) > current_dim {
            // Join with a new apex outside the current span.
            for cell in &mut cells {
                cell.push(i);
            }
            continue;
        }
        let mut facet_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for cell in &cells {
            for p in 0..cell.len() {
                let mut f = cell.clone();
                f.remove(p);
                f.sort_unstable();
                *facet_count.entry(f).or_default() += 1;
            }
        }
        let mut added = Vec::new();
        for cell in &cells {
            let basis: Vec<LatticeVector> = cell.iter().map(|&j| local[j].clone()).collect();
            let coeffs = solve_in_basis(&basis, r).expect("ray lies in the span of the cell");
            for p in 0..cell.len() {
                let mut f = cell.clone();
                f.remove(p);
                f.sort_unstable();
                if facet_count[&f] == 1 && coeffs[p].is_negative() {
                    f.push(i);
                    added.push(f);
                }
            }
        }
        cells.extend(added);
    }
    for cell in &mut cells {
        cell.sort_unstable();
    }
    cells.sort();
    cells
}

fn all_faces(maximal: &[Cell]) -> Vec<Cell> {
    let mut out: BTreeSet<Cell> = BTreeSet::new();
    for cell in maximal {
        let n = cell.len();
        for mask in 0u64..(1u64 << n) {
            out.insert((0..n).filter(|b| mask >> b & 1 == 1).map(|b| cell[b]).collect());
        }
    }
    let mut v: Vec<Cell> = out.into_iter().collect();
    v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    v
}
