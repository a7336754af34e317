//! Exact integer linear algebra on lattices `Z^n`.
//!
//! Conventions (kept fixed so serialized output is byte-stable):
//! * Hermite normal form is row-style, `H = U·A`, with positive pivots and the
//!   entries above each pivot reduced into `[0, pivot)`.
//! * Smith normal form is `D = U·A·V` with a nonnegative diagonal
//!   `d_1 | d_2 | …`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A point of `Z^n` (or a linear functional on it, depending on context).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; the result spans the same ray.
    pub fn primitive(&self) -> Result<LatticeVector> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(LatticeVector(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Primitive representative of `v`.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    v.primitive()
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        IntegerMatrix { rows: rows.len(), cols, entries }
    }

    /// Stacks vectors as rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[LatticeVector]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.rank(), cols);
            entries.extend(r.coords().iter().cloned());
        }
        IntegerMatrix { rows: rows.len(), cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not match");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * rhs.get(k, j);
                    *out.at(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    *m.at(i, j) = v;
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = self.get(src, j) * k;
            *self.at(dst, j) += delta;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = self.get(i, src) * k;
            *self.at(i, dst) += delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            *self.at(r, j) = v;
        }
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `H = U·A`.
pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut r = 0;
    for j in 0..n {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !h.get(i, j).is_zero())
                .min_by(|&x, &y| h.get(x, j).abs().cmp(&h.get(y, j).abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut cleared = true;
            for i in r + 1..m {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let q = -h.get(i, j).div_floor(h.get(r, j));
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h.get(i, j).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h.get(r, j).is_zero() {
            continue;
        }
        if h.get(r, j).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, j).div_floor(h.get(r, j));
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith form together with the inverse of the right transform.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        (0..self.d.rows.min(self.d.cols)).take_while(|&i| !self.d.get(i, i).is_zero()).count()
    }

    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form: returns `(D, U, V)` with `D = U·A·V`.
pub fn smith_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let s = smith_decomposition(a);
    (s.d, s.u, s.v)
}

pub fn smith_decomposition(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut v_inv = IntegerMatrix::identity(n);

    // Column operation `col[dst] += k col[src]` applied to D and V, and the
    // inverse row operation applied to V^{-1}.
    let col_op = |d: &mut IntegerMatrix,
                  v: &mut IntegerMatrix,
                  v_inv: &mut IntegerMatrix,
                  dst: usize,
                  src: usize,
                  k: &BigInt| {
        d.add_col_multiple(dst, src, k);
        v.add_col_multiple(dst, src, k);
        v_inv.add_row_multiple(src, dst, &-k);
    };
    let col_swap = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, v_inv: &mut IntegerMatrix, x, y| {
        d.swap_cols(x, y);
        v.swap_cols(x, y);
        v_inv.swap_rows(x, y);
    };

    for t in 0..m.min(n) {
        let best = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by(|&(a, b), &(c, e)| d.get(a, b).abs().cmp(&d.get(c, e).abs()));
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        col_swap(&mut d, &mut v, &mut v_inv, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                col_op(&mut d, &mut v, &mut v_inv, j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                // Bring the smallest remaining entry of row/column t to the pivot.
                let col_best = (t + 1..m)
                    .filter(|&i| !d.get(i, t).is_zero())
                    .min_by(|&x, &y| d.get(x, t).abs().cmp(&d.get(y, t).abs()));
                let row_best = (t + 1..n)
                    .filter(|&j| !d.get(t, j).is_zero())
                    .min_by(|&x, &y| d.get(t, x).abs().cmp(&d.get(t, y).abs()));
                match (col_best, row_best) {
                    (Some(i), Some(j)) if d.get(t, j).abs() < d.get(i, t).abs() => {
                        col_swap(&mut d, &mut v, &mut v_inv, t, j)
                    }
                    (Some(i), _) => {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                    }
                    (None, Some(j)) => col_swap(&mut d, &mut v, &mut v_inv, t, j),
                    (None, None) => unreachable!(),
                }
                continue;
            }
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(d.get(t, t))));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { d, u, v, v_inv }
}

/// Rank over `Q` of a list of vectors of the given ambient rank.
pub fn rank_of(rank: usize, vectors: &[LatticeVector]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let mut r = 0;
    for j in 0..rank {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][j].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][j].is_zero() {
                continue;
            }
            let (a, b) = (rows[r][j].clone(), rows[i][j].clone());
            let pivot_row = rows[r].clone();
            let row = &mut rows[i];
            for k in j..rank {
                row[k] = &row[k] * &a - &pivot_row[k] * &b;
            }
            let g = row.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            if !g.is_zero() && !g.is_one() {
                row.iter_mut().for_each(|c| *c /= &g);
            }
        }
        r += 1;
    }
    r
}

/// Index of the lattice spanned by `gens` inside the saturation of their span.
pub fn lattice_index(gens: &[LatticeVector]) -> Result<BigInt> {
    let Some(first) = gens.first() else { return Ok(BigInt::one()) };
    let g = IntegerMatrix::from_rows(first.rank(), gens);
    let s = smith_decomposition(&g);
    if s.rank() < gens.len() {
        return Err(Error::DependentGenerators);
    }
    Ok(s.invariants().iter().product())
}

/// Integer basis of `{x : v·x = 0 for all v in rows}`; the basis is saturated.
pub fn integer_kernel(rank: usize, rows: &[LatticeVector]) -> Vec<LatticeVector> {
    let a_t = IntegerMatrix::from_rows(rank, rows).transpose();
    let (h, u) = hermite_normal_form(&a_t);
    (0..rank)
        .filter(|&i| (0..h.cols()).all(|j| h.get(i, j).is_zero()))
        .map(|i| u.row(i))
        .collect()
}

/// Coefficients `λ` with `Σ λ_i basis_i = v`, if any. `basis` must be
/// linearly independent.
pub fn solve_in_basis(basis: &[LatticeVector], v: &LatticeVector) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = v.rank();
    // n equations, k unknowns, augmented.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                basis.iter().map(|b| BigRational::from_integer(b.coords()[i].clone())).collect();
            row.push(BigRational::from_integer(v.coords()[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for j in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][j].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][j].recip();
        for c in j..=k {
            m[r][c] = &m[r][c] * &inv;
        }
        for i in 0..n {
            if i != r && !m[i][j].is_zero() {
                let f = m[i][j].clone();
                for c in j..=k {
                    let delta = &f * &m[r][c];
                    m[i][c] -= delta;
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    if (r..n).any(|i| !m[i][k].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (row, &j) in pivots.iter().enumerate() {
        sol[j] = m[row][k].clone();
    }
    Some(sol)
}

/// Bijection between `span(gens) ∩ Z^n` and `Z^k`.
///
/// Built from the Smith form `U·G·V = D`: the first `k` rows of `V^{-1}` are a
/// basis of the saturated lattice, and `v ↦ v·V` gives coordinates in the
/// completed basis (the trailing `n − k` coordinates vanish exactly on the span).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    ambient: usize,
    basis: Vec<LatticeVector>,
    coords_map: IntegerMatrix,
}

impl LatticeEmbedding {
    pub fn identity(rank: usize) -> Self {
        LatticeEmbedding {
            ambient: rank,
            basis: (0..rank).map(|i| LatticeVector::unit(rank, i)).collect(),
            coords_map: IntegerMatrix::identity(rank),
        }
    }

    pub fn of_span(rank: usize, gens: &[LatticeVector]) -> Self {
        let g = IntegerMatrix::from_rows(rank, gens);
        let s = smith_decomposition(&g);
        let k = s.rank();
        LatticeEmbedding {
            ambient: rank,
            basis: (0..k).map(|i| s.v_inv.row(i)).collect(),
            coords_map: s.v,
        }
    }

    /// Embedding of the orthogonal complement `{x : v·x = 0 ∀ v ∈ vectors}`.
    pub fn of_orthogonal(rank: usize, vectors: &[LatticeVector]) -> Self {
        let kernel = integer_kernel(rank, vectors);
        Self::of_span(rank, &kernel)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    pub fn embed(&self, local: &LatticeVector) -> LatticeVector {
        let mut out = LatticeVector::zero(self.ambient);
        for (c, b) in local.coords().iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    fn full_coords(&self, v: &LatticeVector) -> Vec<BigInt> {
        (0..self.ambient)
            .map(|j| (0..self.ambient).map(|i| &v.coords()[i] * self.coords_map.get(i, j)).sum())
            .collect()
    }

    /// Local coordinates of `v`, or `None` when `v` is off the span.
    pub fn project(&self, v: &LatticeVector) -> Option<LatticeVector> {
        let mut full = self.full_coords(v);
        if full[self.dim()..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        full.truncate(self.dim());
        Some(LatticeVector(full))
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.full_coords(v)[self.dim()..].iter().all(Zero::is_zero)
    }

    /// Ambient functional `f` with `f(embed(x)) = a·x`.
    pub fn lift_functional(&self, a: &LatticeVector) -> LatticeVector {
        LatticeVector(
            (0..self.ambient)
                .map(|j| (0..self.dim()).map(|i| self.coords_map.get(j, i) * &a.coords()[i]).sum())
                .collect(),
        )
    }

    /// Restriction of an ambient functional to local coordinates.
    pub fn restrict_functional(&self, f: &LatticeVector) -> LatticeVector {
        LatticeVector(self.basis.iter().map(|b| b.dot(f)).collect())
    }

    /// Functionals cutting out the span.
    pub fn equations(&self) -> Vec<LatticeVector> {
        (self.dim()..self.ambient).map(|j| self.coords_map.column(j)).collect()
    }
}

/// Coordinates on the saturation of `span(gens)`.
pub fn sublattice_coordinates(span_gens: &[LatticeVector]) -> Result<LatticeEmbedding> {
    let first = span_gens.first().ok_or_else(|| {
        Error::InvalidInput("sublattice_coordinates needs at least one generator".into())
    })?;
    Ok(LatticeEmbedding::of_span(first.rank(), span_gens))
}
