//! Exact rational linear algebra.
//!
//! Every linear map in the crate is a [`RatMatrix`]: a sparse matrix of
//! [`Rat`] entries stored row by row. Ranks, kernels and images are computed
//! by exact Gaussian elimination, so dimension counts carry no tolerance.
//!
//! Matrices act on column vectors: entry `(r, c)` is the `r`-th coordinate of
//! the image of the `c`-th basis vector.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar. Always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Sparse vector: `(index, value)` pairs, strictly increasing index, no stored zeros.
pub type SparseVec = Vec<(usize, Rat)>;

/// Matrices with at most this many entries are eliminated densely.
pub const DENSE_THRESHOLD: usize = 64 * 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not contained in the larger subspace (composite map is nonzero)")]
    ContainmentViolation,
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let r: Rat = s.parse().ok()?;
    Some(r)
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn dense_to_sparse(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &[(usize, Rat)], len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `y + alpha * x` for sparse vectors.
pub fn axpy(y: &[(usize, Rat)], alpha: &Rat, x: &[(usize, Rat)]) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let ord = match (y.get(i), x.get(j)) {
            (Some(a), Some(b)) => a.0.cmp(&b.0),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(y[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((x[j].0, alpha * &x[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let v = &y[i].1 + alpha * &x[j].1;
                if !v.is_zero() {
                    out.push((y[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn scale_sparse(v: &mut SparseVec, alpha: &Rat) {
    for (_, x) in v.iter_mut() {
        *x = &*x * alpha;
    }
}

fn sparse_get(v: &[(usize, Rat)], idx: usize) -> Option<&Rat> {
    v.binary_search_by(|(i, _)| i.cmp(&idx)).ok().map(|p| &v[p].1)
}

/// Sparse rational matrix, stored as sorted rows.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for r in 0..self.rows {
                let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        } else {
            writeln!(f, "  {} nonzeros", self.nnz())?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rat::one())]).collect(),
        }
    }

    /// Builds from dense rows. Panics on ragged input.
    pub fn from_dense(rows: usize, cols: usize, entries: &[Vec<Rat>]) -> Self {
        assert_eq!(entries.len(), rows, "row count");
        let data = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged row");
                dense_to_sparse(r)
            })
            .collect();
        RatMatrix { rows, cols, data }
    }

    /// Convenience constructor from small integer tables.
    pub fn from_i64(entries: &[&[i64]]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rat>> = entries
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_dense(rows, cols, &dense)
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut buckets: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) out of bounds {rows}x{cols}");
            if !v.is_zero() {
                buckets[r].push((c, v));
            }
        }
        let data = buckets
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|(c, _)| *c);
                let mut merged: SparseVec = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .collect();
        RatMatrix { rows, cols, data }
    }

    /// Builds from sparse rows; entries are re-sorted and zeros dropped.
    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        let n = rows.len();
        Self::from_triplets(
            n,
            cols,
            rows.into_iter()
                .enumerate()
                .flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, v))),
        )
    }

    /// Matrix whose columns are the given (dense) vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        Self::from_triplets(
            rows,
            columns.len(),
            columns.iter().enumerate().flat_map(|(c, col)| {
                assert_eq!(col.len(), rows);
                col.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(r, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Rat)] {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        sparse_get(&self.data[r], c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == RatMatrix::identity(self.rows)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rat)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| sparse_get(row, c).map(|v| (r, v.clone())))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        self.data.iter().map(|r| sparse_to_dense(r, self.cols)).collect()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(Rat::zero(), |acc, (c, x)| acc + x * &v[*c]))
            .collect()
    }

    pub fn mul_sparse_vec(&self, v: &[(usize, Rat)]) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let s = sparse_dot(row, v);
                (!s.is_zero()).then_some((r, s))
            })
            .collect()
    }

    pub fn scale(&self, alpha: &Rat) -> RatMatrix {
        if alpha.is_zero() {
            return RatMatrix::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            scale_sparse(row, alpha);
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        self.add_scaled(&Rat::one(), other)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        self.add_scaled(&-Rat::one(), other)
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, alpha: &Rat, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "add",
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(a, alpha, b))
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Kronecker product `self ⊗ other`, index `(i, j) -> i * other.dim + j`.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        RatMatrix::from_triplets(
            rows,
            cols,
            self.triplets().flat_map(|(r1, c1, v1)| {
                other
                    .triplets()
                    .map(move |(r2, c2, v2)| (r1 * other.rows + r2, c1 * other.cols + c2, v1 * v2))
            }),
        )
    }

    /// Stacks matrices vertically.
    pub fn vstack(blocks: &[&RatMatrix]) -> Result<RatMatrix, LinalgError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            if b.cols != cols {
                return Err(LinalgError::DimensionMismatch {
                    op: "vstack",
                    left: cols,
                    right: b.cols,
                });
            }
            data.extend(b.data.iter().cloned());
        }
        Ok(RatMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }
}

fn sparse_dot(a: &[(usize, Rat)], b: &[(usize, Rat)]) -> Rat {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rat::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Exact product `f · g`.
pub fn compose(f: &RatMatrix, g: &RatMatrix) -> Result<RatMatrix, LinalgError> {
    if f.cols != g.rows {
        return Err(LinalgError::DimensionMismatch {
            op: "compose",
            left: f.cols,
            right: g.rows,
        });
    }
    let data = f
        .data
        .iter()
        .map(|frow| {
            let mut acc: SparseVec = Vec::new();
            for (k, v) in frow {
                acc = axpy(&acc, v, &g.data[*k]);
            }
            acc
        })
        .collect();
    Ok(RatMatrix {
        rows: f.rows,
        cols: g.cols,
        data,
    })
}

/// Incremental row-echelon form over sparse rows.
///
/// Pivot rows are normalized so their leading entry is one. Rows are only
/// reduced on their leading entry while inserting; [`Echelon::into_rref`]
/// performs the back substitution.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    pivots: Vec<Option<SparseVec>>,
    rank: usize,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, lead)) = v.first() {
            match &self.pivots[*c] {
                Some(p) => {
                    let alpha = -lead.clone();
                    v = axpy(&v, &alpha, p);
                }
                None => break,
            }
        }
        v
    }

    /// Eliminates every entry sitting in a pivot column.
    pub fn reduce_full(&self, mut v: SparseVec) -> SparseVec {
        let mut pos = 0;
        while pos < v.len() {
            let c = v[pos].0;
            match &self.pivots[c] {
                Some(p) => {
                    let alpha = -v[pos].1.clone();
                    v = axpy(&v, &alpha, p);
                    // entries before `pos` are untouched since `p` starts at column `c`
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Inserts a row; returns whether it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.cols));
        let mut v = self.reduce_leading(v);
        let Some((c, lead)) = v.first() else {
            return false;
        };
        let c = *c;
        let inv = lead.recip();
        scale_sparse(&mut v, &inv);
        self.pivots[c] = Some(v);
        self.rank += 1;
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce_full(v).is_empty()
    }

    /// Reduced row-echelon rows, ordered by pivot column.
    pub fn into_rref(mut self) -> Vec<SparseVec> {
        let pivot_cols: Vec<usize> = (0..self.cols).filter(|c| self.pivots[*c].is_some()).collect();
        for &c in pivot_cols.iter().rev() {
            let row = self.pivots[c].take().expect("pivot");
            let (head, tail) = row.split_at(1);
            let reduced_tail = self.reduce_full(tail.to_vec());
            let mut full = head.to_vec();
            full.extend(reduced_tail);
            self.pivots[c] = Some(full);
        }
        pivot_cols
            .into_iter()
            .map(|c| self.pivots[c].take().expect("pivot"))
            .collect()
    }
}

/// Dense reduced row-echelon form. Returns `(rref rows, pivot columns)`.
fn dense_rref(mut m: Vec<Vec<Rat>>, cols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn sparse_order(rows: &[SparseVec]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    order.sort_by_key(|&i| (rows[i].len(), rows[i][0].0));
    order
}

fn rref_rows(rows: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    if rows.len() * cols <= DENSE_THRESHOLD {
        let dense: Vec<Vec<Rat>> = rows.iter().map(|r| sparse_to_dense(r, cols)).collect();
        let (rref, _) = dense_rref(dense, cols);
        rref.iter().map(|r| dense_to_sparse(r)).collect()
    } else {
        let mut ech = Echelon::new(cols);
        for i in sparse_order(rows) {
            ech.insert(rows[i].clone());
        }
        ech.into_rref()
    }
}

fn rank_rows(rows: &[SparseVec], cols: usize) -> usize {
    if rows.len() * cols <= DENSE_THRESHOLD {
        let dense: Vec<Vec<Rat>> = rows.iter().map(|r| sparse_to_dense(r, cols)).collect();
        dense_rref(dense, cols).1.len()
    } else {
        let mut ech = Echelon::new(cols);
        let limit = rows.len().min(cols);
        for i in sparse_order(rows) {
            ech.insert(rows[i].clone());
            if ech.rank() == limit {
                break;
            }
        }
        ech.rank()
    }
}

/// Dimension of the column space.
pub fn rank(m: &RatMatrix) -> usize {
    // Eliminate along the shorter side.
    if m.rows <= m.cols {
        rank_rows(&m.data, m.cols)
    } else {
        let t = m.transpose();
        rank_rows(&t.data, t.cols)
    }
}

/// Rank computed by the dense routine regardless of size. Used as an oracle in tests.
pub fn rank_dense(m: &RatMatrix) -> usize {
    dense_rref(m.to_dense(), m.cols).1.len()
}

/// Null space of `m`, as a canonical subspace of `Q^cols`.
pub fn kernel(m: &RatMatrix) -> Subspace {
    let rref = rref_rows(&m.data, m.cols);
    let pivot_cols: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    // For each free column f: x_f = 1, x_{p_i} = -rref_i[f].
    let mut basis: Vec<SparseVec> = (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| vec![(f, Rat::one())])
        .collect();
    let free_index: Vec<Option<usize>> = {
        let mut idx = vec![None; m.cols];
        let mut k = 0;
        for (f, slot) in idx.iter_mut().enumerate() {
            if !is_pivot[f] {
                *slot = Some(k);
                k += 1;
            }
        }
        idx
    };
    for (row, &p) in rref.iter().zip(&pivot_cols) {
        for (c, v) in row.iter().skip(1) {
            if let Some(k) = free_index[*c] {
                basis[k].push((p, -v.clone()));
            }
        }
    }
    for b in &mut basis {
        b.sort_by_key(|(c, _)| *c);
    }
    Subspace::span(m.cols, basis)
}

/// Column space of `m`, as a canonical subspace of `Q^rows`.
pub fn image(m: &RatMatrix) -> Subspace {
    let t = m.transpose();
    Subspace::span(m.rows, t.data)
}

/// `dim(big) - dim(small)` after checking `small ⊆ big`.
pub fn quotient_dim(big: &Subspace, small: &Subspace) -> Result<usize, LinalgError> {
    if big.ambient_dim != small.ambient_dim {
        return Err(LinalgError::AmbientMismatch(big.ambient_dim, small.ambient_dim));
    }
    if !small.is_subspace_of(big) {
        return Err(LinalgError::ContainmentViolation);
    }
    Ok(big.dim() - small.dim())
}

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// The reduced echelon basis is unique, so two `Subspace`s compare equal
/// exactly when they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| vec![(i, Rat::one())]).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) sparse vectors.
    pub fn span(ambient_dim: usize, vectors: Vec<SparseVec>) -> Self {
        let vectors: Vec<SparseVec> = vectors.into_iter().filter(|v| !v.is_empty()).collect();
        Subspace {
            ambient_dim,
            basis: rref_rows(&vectors, ambient_dim),
        }
    }

    pub fn span_dense(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Self {
        Self::span(ambient_dim, vectors.iter().map(|v| dense_to_sparse(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn dense_basis(&self) -> Vec<Vec<Rat>> {
        self.basis.iter().map(|b| sparse_to_dense(b, self.ambient_dim)).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b[0].0).collect()
    }

    /// Matrix whose columns are the basis vectors (`ambient × dim`).
    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_sparse_rows(self.ambient_dim, self.basis.clone()).transpose()
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient_dim);
        for b in &self.basis {
            ech.pivots[b[0].0] = Some(b.clone());
            ech.rank += 1;
        }
        ech
    }

    pub fn contains_sparse(&self, v: &[(usize, Rat)]) -> bool {
        self.coordinates_sparse(v).is_some()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.contains_sparse(&dense_to_sparse(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates_sparse(&self, v: &[(usize, Rat)]) -> Option<Vec<Rat>> {
        // In reduced echelon form the coefficient of basis vector i is v[pivot_i].
        let coords: Vec<Rat> = self
            .basis
            .iter()
            .map(|b| sparse_get(v, b[0].0).cloned().unwrap_or_else(Rat::zero))
            .collect();
        let mut residual = v.to_vec();
        for (b, c) in self.basis.iter().zip(&coords) {
            if !c.is_zero() {
                residual = axpy(&residual, &-c.clone(), b);
            }
        }
        residual.is_empty().then_some(coords)
    }

    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        self.coordinates_sparse(&dense_to_sparse(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.ambient_dim != other.ambient_dim || self.dim() > other.dim() {
            return false;
        }
        let ech = other.echelon();
        self.basis.iter().all(|b| ech.contains(b.clone()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient_dim, all))
    }

    /// Matrix sending a vector of the subspace to its basis coordinates
    /// (`dim × ambient`); reads the pivot entries.
    pub fn coordinate_matrix(&self) -> RatMatrix {
        RatMatrix::from_triplets(
            self.dim(),
            self.ambient_dim,
            self.basis.iter().enumerate().map(|(i, b)| (i, b[0].0, Rat::one())),
        )
    }
}
