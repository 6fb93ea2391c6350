//! Finite-dimensional associative algebras given by structure constants.
//!
//! Basis elements are `e_0, .., e_{n-1}` and `e_i e_j = Σ_k c[i][j][k] e_k`.
//! The product table is stored sparsely, one vector per ordered pair `(i, j)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{
    axpy, dense_to_sparse, kernel, sparse_to_dense, Rat, RatMatrix, SparseVec, Subspace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure constants are not associative: (e{0} e{1}) e{2} != e{0} (e{1} e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails on basis element e{0}")]
    UnitLawFails(usize),
    #[error("malformed algebra data: {0}")]
    Shape(String),
    #[error("basis matrices do not span a subalgebra: product of {0} and {1} leaves the span")]
    NotClosed(usize, usize),
}

/// Finite-dimensional associative algebra over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    table: Vec<SparseVec>,
    unit: Option<Vec<Rat>>,
}

impl Algebra {
    /// From a dense structure-constant tensor `c[i][j][k]`.
    pub fn new(
        dim: usize,
        constants: &[Vec<Vec<Rat>>],
        unit: Option<Vec<Rat>>,
    ) -> Result<Self, AlgebraError> {
        if constants.len() != dim {
            return Err(AlgebraError::Shape(format!(
                "expected {dim} rows of structure constants, got {}",
                constants.len()
            )));
        }
        let mut table = Vec::with_capacity(dim * dim);
        for (i, row) in constants.iter().enumerate() {
            if row.len() != dim {
                return Err(AlgebraError::Shape(format!("c[{i}] has length {}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != dim {
                    return Err(AlgebraError::Shape(format!("c[{i}][{j}] has length {}", v.len())));
                }
                table.push(dense_to_sparse(v));
            }
        }
        Self::from_table(dim, table, unit)
    }

    /// From sparse products, indexed `i * dim + j`.
    pub fn from_table(
        dim: usize,
        table: Vec<SparseVec>,
        unit: Option<Vec<Rat>>,
    ) -> Result<Self, AlgebraError> {
        if table.len() != dim * dim {
            return Err(AlgebraError::Shape(format!(
                "expected {} products, got {}",
                dim * dim,
                table.len()
            )));
        }
        if table.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(AlgebraError::Shape("product coordinate out of range".into()));
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(AlgebraError::Shape(format!("unit has length {}", u.len())));
            }
        }
        let table = table
            .into_iter()
            .map(|v| RatMatrix::from_sparse_rows(dim, vec![v]).row(0).to_vec())
            .collect();
        Ok(Algebra { dim, table, unit })
    }

    /// The ground field `Q`.
    pub fn field() -> Self {
        Algebra {
            dim: 1,
            table: vec![vec![(0, Rat::one())]],
            unit: Some(vec![Rat::one()]),
        }
    }

    /// Algebra with identically zero multiplication (no unit).
    pub fn zero_product(dim: usize) -> Self {
        Algebra {
            dim,
            table: vec![Vec::new(); dim * dim],
            unit: None,
        }
    }

    /// `Q^n` with componentwise product.
    pub fn diagonal(n: usize) -> Self {
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            table[i * n + i] = vec![(i, Rat::one())];
        }
        Algebra {
            dim: n,
            table,
            unit: Some(vec![Rat::one(); n]),
        }
    }

    /// Full matrix algebra `M_n(Q)`; basis `E_ij` in lexicographic order.
    pub fn matrix(n: usize) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let dim = n * n;
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[idx(i, j) * dim + idx(j, l)] = vec![(idx(i, l), Rat::one())];
                }
            }
        }
        let mut unit = vec![Rat::zero(); dim];
        for i in 0..n {
            unit[idx(i, i)] = Rat::one();
        }
        Algebra {
            dim,
            table,
            unit: Some(unit),
        }
    }

    /// Upper triangular `n × n` matrices; basis `E_ij` (`i <= j`) in lexicographic order.
    pub fn upper_triangular(n: usize) -> Self {
        let units: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        Self::from_matrix_units(n, &units)
    }

    /// Lower triangular `n × n` matrices; basis `E_ij` (`i >= j`) in lexicographic order.
    pub fn lower_triangular(n: usize) -> Self {
        let units: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..=i).map(move |j| (i, j)))
            .collect();
        Self::from_matrix_units(n, &units)
    }

    fn from_matrix_units(n: usize, units: &[(usize, usize)]) -> Self {
        let basis: Vec<RatMatrix> = units
            .iter()
            .map(|&(i, j)| RatMatrix::from_triplets(n, n, [(i, j, Rat::one())]))
            .collect();
        Self::from_matrix_basis(&basis).expect("matrix units span a subalgebra")
    }

    /// Truncated polynomial ring `Q[x]/(x^n)`, basis `1, x, .., x^{n-1}`.
    pub fn truncated_polynomial(n: usize) -> Self {
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    table[i * n + j] = vec![(i + j, Rat::one())];
                }
            }
        }
        let mut unit = vec![Rat::zero(); n];
        unit[0] = Rat::one();
        Algebra {
            dim: n,
            table,
            unit: Some(unit),
        }
    }

    /// Subalgebra of a matrix algebra spanned by the given linearly independent
    /// matrices. Fails if the span is not closed under multiplication; the unit
    /// is found by solving for the identity matrix in the span (if present).
    pub fn from_matrix_basis(basis: &[RatMatrix]) -> Result<Self, AlgebraError> {
        let dim = basis.len();
        let flat = |m: &RatMatrix| -> SparseVec {
            let cols = m.cols();
            let mut v: SparseVec = m.triplets().map(|(r, c, x)| (r * cols + c, x.clone())).collect();
            v.sort_by_key(|(i, _)| *i);
            v
        };
        let Some(first) = basis.first() else {
            return Ok(Algebra::zero_product(0));
        };
        let ambient = first.rows() * first.cols();
        let vectors: Vec<SparseVec> = basis.iter().map(flat).collect();
        // Coordinates in the given basis: solve via the span's echelon form.
        let span = Subspace::span(ambient, vectors.clone());
        if span.dim() != dim {
            return Err(AlgebraError::Shape("basis matrices are linearly dependent".into()));
        }
        let to_basis = coordinate_change(&span, &vectors);
        let coords = |v: &SparseVec| -> Option<Vec<Rat>> {
            let echelon_coords = span.coordinates_sparse(v)?;
            Some(to_basis.mul_vec(&echelon_coords))
        };
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod = crate::linalg::compose(&basis[i], &basis[j])
                    .map_err(|e| AlgebraError::Shape(e.to_string()))?;
                let c = coords(&flat(&prod)).ok_or(AlgebraError::NotClosed(i, j))?;
                table.push(dense_to_sparse(&c));
            }
        }
        let unit = coords(&flat(&RatMatrix::identity(first.rows())));
        Algebra::from_table(dim, table, unit)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&[Rat]> {
        self.unit.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// `e_i e_j` as a sparse coordinate vector.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.table[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rat {
        self.product(i, j)
            .iter()
            .find(|(c, _)| *c == k)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Dense structure-constant tensor.
    pub fn constants(&self) -> Vec<Vec<Vec<Rat>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| sparse_to_dense(self.product(i, j), self.dim))
                    .collect()
            })
            .collect()
    }

    /// Product of two sparse elements.
    pub fn mul_sparse(&self, x: &[(usize, Rat)], y: &[(usize, Rat)]) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                acc = axpy(&acc, &(a * b), self.product(*i, *j));
            }
        }
        acc
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        sparse_to_dense(&self.mul_sparse(&dense_to_sparse(x), &dense_to_sparse(y)), self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    /// Matrix of `y ↦ e_i y`.
    pub fn left_mult(&self, i: usize) -> RatMatrix {
        RatMatrix::from_triplets(
            self.dim,
            self.dim,
            (0..self.dim).flat_map(|j| self.product(i, j).iter().map(move |(k, v)| (*k, j, v.clone()))),
        )
    }

    /// Matrix of `y ↦ y e_i`.
    pub fn right_mult(&self, i: usize) -> RatMatrix {
        RatMatrix::from_triplets(
            self.dim,
            self.dim,
            (0..self.dim).flat_map(|j| self.product(j, i).iter().map(move |(k, v)| (*k, j, v.clone()))),
        )
    }

    /// Matrix of `y ↦ x y` for an arbitrary element `x`.
    pub fn left_mult_by(&self, x: &[Rat]) -> RatMatrix {
        combine(self.dim, x, |i| self.left_mult(i))
    }

    /// Matrix of `y ↦ y x` for an arbitrary element `x`.
    pub fn right_mult_by(&self, x: &[Rat]) -> RatMatrix {
        combine(self.dim, x, |i| self.right_mult(i))
    }

    /// Checks associativity on all basis triples and the two-sided unit law.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.product(i, j);
                for k in 0..self.dim {
                    let left = self.mul_sparse(ij, &[(k, Rat::one())]);
                    let right = self.mul_sparse(&[(i, Rat::one())], self.product(j, k));
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            let u = dense_to_sparse(u);
            for i in 0..self.dim {
                let e = vec![(i, Rat::one())];
                if self.mul_sparse(&u, &e) != e || self.mul_sparse(&e, &u) != e {
                    return Err(AlgebraError::UnitLawFails(i));
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Same space with `a ∘ b = ba`.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let table = (0..d * d)
            .map(|p| self.product(p % d, p / d).to_vec())
            .collect();
        Algebra {
            dim: d,
            table,
            unit: self.unit.clone(),
        }
    }

    /// `A_+ = A ⊕ Q` with a freshly adjoined unit as the last basis element.
    pub fn unitization(&self) -> Algebra {
        let d = self.dim;
        let n = d + 1;
        let mut table = vec![Vec::new(); n * n];
        for i in 0..d {
            for j in 0..d {
                table[i * n + j] = self.product(i, j).to_vec();
            }
            table[i * n + d] = vec![(i, Rat::one())];
            table[d * n + i] = vec![(i, Rat::one())];
        }
        table[d * n + d] = vec![(d, Rat::one())];
        let mut unit = vec![Rat::zero(); n];
        unit[d] = Rat::one();
        Algebra {
            dim: n,
            table,
            unit: Some(unit),
        }
    }

    /// `A ⊗ B^op` with `(a₁⊗b₁)(a₂⊗b₂) = a₁a₂ ⊗ b₂b₁`; basis index `i * dim(B) + j`.
    pub fn tensor_op(a: &Algebra, b: &Algebra) -> Algebra {
        let (da, db) = (a.dim, b.dim);
        let n = da * db;
        let mut table = Vec::with_capacity(n * n);
        for p in 0..n {
            let (a1, b1) = (p / db, p % db);
            for q in 0..n {
                let (a2, b2) = (q / db, q % db);
                let mut v: SparseVec = Vec::new();
                for (ka, va) in a.product(a1, a2) {
                    for (kb, vb) in b.product(b2, b1) {
                        v.push((ka * db + kb, va * vb));
                    }
                }
                v.sort_by_key(|(k, _)| *k);
                table.push(v);
            }
        }
        let unit = match (&a.unit, &b.unit) {
            (Some(ua), Some(ub)) => Some(
                (0..n)
                    .map(|p| &ua[p / db] * &ub[p % db])
                    .collect(),
            ),
            _ => None,
        };
        Algebra { dim: n, table, unit }
    }

    /// `A × B` with componentwise product; basis `[A | B]`.
    pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
        let n = a.dim + b.dim;
        let mut table = vec![Vec::new(); n * n];
        for i in 0..a.dim {
            for j in 0..a.dim {
                table[i * n + j] = a.product(i, j).to_vec();
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                table[(a.dim + i) * n + a.dim + j] = b
                    .product(i, j)
                    .iter()
                    .map(|(k, v)| (a.dim + k, v.clone()))
                    .collect();
            }
        }
        let unit = match (&a.unit, &b.unit) {
            (Some(ua), Some(ub)) => Some(ua.iter().chain(ub).cloned().collect()),
            _ => None,
        };
        Algebra { dim: n, table, unit }
    }

    /// The center `{x : x e_i = e_i x for all i}`.
    pub fn center(&self) -> Subspace {
        let blocks: Vec<RatMatrix> = (0..self.dim)
            .map(|i| {
                self.right_mult(i)
                    .sub(&self.left_mult(i))
                    .expect("square blocks")
            })
            .collect();
        let refs: Vec<&RatMatrix> = blocks.iter().collect();
        match RatMatrix::vstack(&refs) {
            Ok(m) if self.dim > 0 => kernel(&m),
            _ => Subspace::zero(self.dim),
        }
    }

    /// Re-expresses the algebra in the basis `f_i = Σ_j p[j][i] e_j`
    /// (columns of `p` are the new basis vectors). `p` must be invertible.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<Algebra, AlgebraError> {
        let d = self.dim;
        if p.rows() != d || p.cols() != d {
            return Err(AlgebraError::Shape("change of basis must be square".into()));
        }
        let cols: Vec<Vec<Rat>> = (0..d)
            .map(|i| sparse_to_dense(&p.column(i), d))
            .collect();
        let span = Subspace::span_dense(d, &cols);
        if span.dim() != d {
            return Err(AlgebraError::Shape("change of basis is singular".into()));
        }
        let sparse_cols: Vec<SparseVec> = cols.iter().map(|c| dense_to_sparse(c)).collect();
        let to_new = coordinate_change(&span, &sparse_cols);
        let express = |v: &[Rat]| -> Vec<Rat> {
            let ech = span
                .coordinates(v)
                .expect("full-rank span contains every vector");
            to_new.mul_vec(&ech)
        };
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&cols[i], &cols[j]);
                table.push(dense_to_sparse(&express(&prod)));
            }
        }
        let unit = self.unit.as_ref().map(|u| express(u));
        Algebra::from_table(d, table, unit)
    }
}

/// Matrix converting echelon-basis coordinates of `span` into coordinates
/// with respect to the (independent) `vectors` spanning it.
pub(crate) fn coordinate_change(span: &Subspace, vectors: &[SparseVec]) -> RatMatrix {
    let n = vectors.len();
    // Column i of `m` = echelon coordinates of vectors[i]; invert m.
    let cols: Vec<Vec<Rat>> = vectors
        .iter()
        .map(|v| span.coordinates_sparse(v).expect("vector in its own span"))
        .collect();
    let m = RatMatrix::from_columns(n, &cols);
    invert(&m).expect("independent vectors give an invertible coordinate matrix")
}

/// Exact inverse of a square matrix, or `None` if singular.
pub fn invert(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    // Row-reduce [m | I].
    let mut aug: Vec<Vec<Rat>> = m
        .to_dense()
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !aug[r][c].is_zero())?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = aug[c].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    let inv: Vec<Vec<Rat>> = aug.into_iter().map(|row| row[n..].to_vec()).collect();
    Some(RatMatrix::from_dense(n, n, &inv))
}

fn combine(dim: usize, x: &[Rat], f: impl Fn(usize) -> RatMatrix) -> RatMatrix {
    let mut acc = RatMatrix::zeros(dim, dim);
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add_scaled(c, &f(i)).expect("same shape");
        }
    }
    acc
}
