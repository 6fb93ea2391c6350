//! Bimodules over pairs of algebras, described by action matrices.
//!
//! A bimodule `X` over `(A, B)` stores one `dim X × dim X` matrix per basis
//! element of `A` (the left action `x ↦ e_i x`) and one per basis element of
//! `B` (the right action `x ↦ x f_j`). One-sided modules are bimodules over
//! the ground field on the other side: a left `E`-module is an `(E, Q)`
//! bimodule, a right `E`-module a `(Q, E)` bimodule.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{invert, Algebra};
use crate::linalg::{compose, image, Rat, RatMatrix, SparseVec, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimoduleError {
    #[error("left action is not multiplicative on (e{0}, e{1})")]
    LeftActionNotHom(usize, usize),
    #[error("right action is not anti-multiplicative on (e{0}, e{1})")]
    RightActionNotAntiHom(usize, usize),
    #[error("left action of e{0} does not commute with right action of e{1}")]
    ActionsDontCommute(usize, usize),
    #[error("{0:?} action of the unit is not the identity")]
    NotUnital(Side),
    #[error("modules are defined over different algebras")]
    AlgebraMismatch,
    #[error("supplied corner element is not an idempotent")]
    NotIdempotent,
    #[error("corner subspaces have total dimension {found}, expected {expected} (module is not unital)")]
    CornersDontSpan { found: usize, expected: usize },
    #[error("action does not preserve the subspace")]
    NotInvariant,
    #[error("malformed bimodule data: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_act: Vec<RatMatrix>,
    right_act: Vec<RatMatrix>,
}

impl Bimodule {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_act: Vec<RatMatrix>,
        right_act: Vec<RatMatrix>,
    ) -> Result<Self, BimoduleError> {
        if left_act.len() != left.dim() || right_act.len() != right.dim() {
            return Err(BimoduleError::Shape(format!(
                "expected {} left and {} right action matrices, got {} and {}",
                left.dim(),
                right.dim(),
                left_act.len(),
                right_act.len()
            )));
        }
        if left_act
            .iter()
            .chain(&right_act)
            .any(|m| m.rows() != dim || m.cols() != dim)
        {
            return Err(BimoduleError::Shape(format!("action matrices must be {dim}x{dim}")));
        }
        Ok(Bimodule {
            left,
            right,
            dim,
            left_act,
            right_act,
        })
    }

    /// `A` acting on itself by left and right multiplication.
    pub fn regular(alg: Arc<Algebra>) -> Self {
        let d = alg.dim();
        let left_act = (0..d).map(|i| alg.left_mult(i)).collect();
        let right_act = (0..d).map(|i| alg.right_mult(i)).collect();
        Bimodule {
            left: alg.clone(),
            right: alg,
            dim: d,
            left_act,
            right_act,
        }
    }

    /// Left `E`-module, stored as an `(E, Q)` bimodule.
    pub fn left_module(alg: Arc<Algebra>, left_act: Vec<RatMatrix>) -> Result<Self, BimoduleError> {
        let dim = left_act.first().map_or(0, RatMatrix::rows);
        Self::new(
            alg,
            Arc::new(Algebra::field()),
            dim,
            left_act,
            vec![RatMatrix::identity(dim)],
        )
    }

    /// Right `E`-module, stored as a `(Q, E)` bimodule.
    pub fn right_module(alg: Arc<Algebra>, right_act: Vec<RatMatrix>) -> Result<Self, BimoduleError> {
        let dim = right_act.first().map_or(0, RatMatrix::rows);
        Self::new(
            Arc::new(Algebra::field()),
            alg,
            dim,
            vec![RatMatrix::identity(dim)],
            right_act,
        )
    }

    pub fn zero(left: Arc<Algebra>, right: Arc<Algebra>) -> Self {
        let left_act = vec![RatMatrix::zeros(0, 0); left.dim()];
        let right_act = vec![RatMatrix::zeros(0, 0); right.dim()];
        Bimodule {
            left,
            right,
            dim: 0,
            left_act,
            right_act,
        }
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_act(&self, i: usize) -> &RatMatrix {
        &self.left_act[i]
    }

    pub fn right_act(&self, j: usize) -> &RatMatrix {
        &self.right_act[j]
    }

    pub fn left_actions(&self) -> &[RatMatrix] {
        &self.left_act
    }

    pub fn right_actions(&self) -> &[RatMatrix] {
        &self.right_act
    }

    /// Matrix of `x ↦ a x` for an arbitrary element `a` of the left algebra.
    pub fn left_action_by(&self, a: &[Rat]) -> RatMatrix {
        linear_combination(self.dim, a, &self.left_act)
    }

    /// Matrix of `x ↦ x b` for an arbitrary element `b` of the right algebra.
    pub fn right_action_by(&self, b: &[Rat]) -> RatMatrix {
        linear_combination(self.dim, b, &self.right_act)
    }

    /// Checks the hom / anti-hom laws, commutation, and unitality.
    pub fn validate(&self) -> Result<(), BimoduleError> {
        self.validate_actions()?;
        if let Some(u) = self.left.unit() {
            if !self.left_action_by(u).is_identity() {
                return Err(BimoduleError::NotUnital(Side::Left));
            }
        }
        if let Some(u) = self.right.unit() {
            if !self.right_action_by(u).is_identity() {
                return Err(BimoduleError::NotUnital(Side::Right));
            }
        }
        Ok(())
    }

    /// As [`Bimodule::validate`] without the unit law.
    pub fn validate_actions(&self) -> Result<(), BimoduleError> {
        let dl = self.left.dim();
        for i in 0..dl {
            for j in 0..dl {
                let lhs = compose(&self.left_act[i], &self.left_act[j]).expect("square");
                let rhs = self.left_action_by_sparse(self.left.product(i, j));
                if lhs != rhs {
                    return Err(BimoduleError::LeftActionNotHom(i, j));
                }
            }
        }
        let dr = self.right.dim();
        for i in 0..dr {
            for j in 0..dr {
                // x (f_i f_j) = (x f_i) f_j
                let lhs = compose(&self.right_act[j], &self.right_act[i]).expect("square");
                let rhs = self.right_action_by_sparse(self.right.product(i, j));
                if lhs != rhs {
                    return Err(BimoduleError::RightActionNotAntiHom(i, j));
                }
            }
        }
        for i in 0..dl {
            for j in 0..dr {
                let lr = compose(&self.left_act[i], &self.right_act[j]).expect("square");
                let rl = compose(&self.right_act[j], &self.left_act[i]).expect("square");
                if lr != rl {
                    return Err(BimoduleError::ActionsDontCommute(i, j));
                }
            }
        }
        Ok(())
    }

    fn left_action_by_sparse(&self, a: &[(usize, Rat)]) -> RatMatrix {
        sparse_combination(self.dim, a, &self.left_act)
    }

    fn right_action_by_sparse(&self, b: &[(usize, Rat)]) -> RatMatrix {
        sparse_combination(self.dim, b, &self.right_act)
    }

    /// Dual module `X*` with `(a f)(x) = f(x a)` and `(f a)(x) = f(a x)`.
    ///
    /// The left action on `X*` comes from the right action on `X` and vice
    /// versa, so the dual of an `(A, B)`-bimodule is a `(B, A)`-bimodule.
    pub fn dual(&self) -> Bimodule {
        Bimodule {
            left: self.right.clone(),
            right: self.left.clone(),
            dim: self.dim,
            left_act: self.right_act.iter().map(RatMatrix::transpose).collect(),
            right_act: self.left_act.iter().map(RatMatrix::transpose).collect(),
        }
    }

    /// Direct sum `X ⊕ Y` over the same pair of algebras.
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule, BimoduleError> {
        if self.left != other.left || self.right != other.right {
            return Err(BimoduleError::AlgebraMismatch);
        }
        let n = self.dim + other.dim;
        let block = |a: &RatMatrix, b: &RatMatrix| {
            RatMatrix::from_triplets(
                n,
                n,
                a.triplets()
                    .map(|(r, c, v)| (r, c, v.clone()))
                    .chain(b.triplets().map(|(r, c, v)| (self.dim + r, self.dim + c, v.clone()))),
            )
        };
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: n,
            left_act: self.left_act.iter().zip(&other.left_act).map(|(a, b)| block(a, b)).collect(),
            right_act: self.right_act.iter().zip(&other.right_act).map(|(a, b)| block(a, b)).collect(),
        })
    }

    /// Same module in the basis given by the columns of the invertible matrix `p`.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<Bimodule, BimoduleError> {
        let pinv = invert(p).ok_or_else(|| BimoduleError::Shape("singular change of basis".into()))?;
        let conj = |m: &RatMatrix| compose(&pinv, &compose(m, p).expect("square")).expect("square");
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: self.dim,
            left_act: self.left_act.iter().map(conj).collect(),
            right_act: self.right_act.iter().map(conj).collect(),
        })
    }

    /// Restriction of scalars along algebra maps `left_map: L' → L` and
    /// `right_map: R' → R`, given as matrices whose columns are the images of
    /// the new basis elements.
    pub fn restrict(
        &self,
        new_left: Arc<Algebra>,
        left_map: &RatMatrix,
        new_right: Arc<Algebra>,
        right_map: &RatMatrix,
    ) -> Bimodule {
        let left_act = (0..new_left.dim())
            .map(|i| self.left_action_by_sparse(&left_map.column(i)))
            .collect();
        let right_act = (0..new_right.dim())
            .map(|j| self.right_action_by_sparse(&right_map.column(j)))
            .collect();
        Bimodule {
            left: new_left,
            right: new_right,
            dim: self.dim,
            left_act,
            right_act,
        }
    }

    /// An `(A, B)`-bimodule as a left module over `E = A ⊗ B^op`:
    /// `(a ⊗ b) x = a x b`.
    pub fn as_left_tensor_module(&self) -> Bimodule {
        let e = Arc::new(Algebra::tensor_op(&self.left, &self.right));
        let db = self.right.dim();
        let acts = (0..e.dim())
            .map(|p| compose(&self.left_act[p / db], &self.right_act[p % db]).expect("square"))
            .collect();
        Bimodule::left_module(e, acts).expect("shapes agree")
    }

    /// A `(B, A)`-bimodule as a right module over `E = A ⊗ B^op`:
    /// `x (a ⊗ b) = b x a`.
    pub fn as_right_tensor_module(&self) -> Bimodule {
        let e = Arc::new(Algebra::tensor_op(&self.right, &self.left));
        let db = self.left.dim();
        let acts = (0..e.dim())
            .map(|p| compose(&self.left_act[p % db], &self.right_act[p / db]).expect("square"))
            .collect();
        Bimodule::right_module(e, acts).expect("shapes agree")
    }

    /// Matrix of `v ↦ M v` restricted to an invariant subspace, in the
    /// subspace's echelon coordinates.
    fn restrict_to(space: &Subspace, m: &RatMatrix) -> Result<RatMatrix, BimoduleError> {
        let cols: Vec<Vec<Rat>> = space
            .basis()
            .iter()
            .map(|b| {
                space
                    .coordinates_sparse(&m.mul_sparse_vec(b))
                    .ok_or(BimoduleError::NotInvariant)
            })
            .collect::<Result<_, _>>()?;
        Ok(RatMatrix::from_columns(space.dim(), &cols))
    }

    /// Submodule carried by an invariant subspace, in echelon coordinates.
    pub fn submodule(&self, space: &Subspace) -> Result<Bimodule, BimoduleError> {
        let left_act = self
            .left_act
            .iter()
            .map(|m| Self::restrict_to(space, m))
            .collect::<Result<_, _>>()?;
        let right_act = self
            .right_act
            .iter()
            .map(|m| Self::restrict_to(space, m))
            .collect::<Result<_, _>>()?;
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: space.dim(),
            left_act,
            right_act,
        })
    }
}

fn linear_combination(dim: usize, coeffs: &[Rat], mats: &[RatMatrix]) -> RatMatrix {
    let sparse: SparseVec = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    sparse_combination(dim, &sparse, mats)
}

fn sparse_combination(dim: usize, coeffs: &[(usize, Rat)], mats: &[RatMatrix]) -> RatMatrix {
    let mut acc = RatMatrix::zeros(dim, dim);
    for (i, c) in coeffs {
        acc = acc.add_scaled(c, &mats[*i]).expect("same shape");
    }
    acc
}

/// `Hom(M, N)` for left `E`-modules `M`, `N`, as an `E`-bimodule with
/// `(e f)(v) = e f(v)` and `(f e)(v) = f(e v)`.
///
/// A map `f` is stored row-major as a `dim N × dim M` matrix: coordinate
/// `p * dim M + q` is the entry `f[p][q]`.
pub fn hom_bimodule(m: &Bimodule, n: &Bimodule) -> Result<Bimodule, BimoduleError> {
    if m.left != n.left {
        return Err(BimoduleError::AlgebraMismatch);
    }
    let e = m.left.clone();
    let id_m = RatMatrix::identity(m.dim);
    let id_n = RatMatrix::identity(n.dim);
    let left_act = n.left_act.iter().map(|l| l.kron(&id_m)).collect();
    let right_act = m.left_act.iter().map(|l| id_n.kron(&l.transpose())).collect();
    Ok(Bimodule {
        left: e.clone(),
        right: e,
        dim: m.dim * n.dim,
        left_act,
        right_act,
    })
}

/// Dimension of the space of module maps `M → N` between left modules,
/// solved directly from the intertwining equations `f L_M(e_i) = L_N(e_i) f`.
pub fn intertwiner_dim(m: &Bimodule, n: &Bimodule) -> Result<usize, BimoduleError> {
    let h = hom_bimodule(m, n)?;
    let blocks: Vec<RatMatrix> = (0..h.left.dim())
        .map(|i| h.right_act[i].sub(&h.left_act[i]).expect("same shape"))
        .collect();
    if h.dim == 0 {
        return Ok(0);
    }
    let refs: Vec<&RatMatrix> = blocks.iter().collect();
    let stacked = RatMatrix::vstack(&refs).expect("same width");
    Ok(crate::linalg::kernel(&stacked).dim())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Corner {
    AA,
    AB,
    BA,
    BB,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::AA, Corner::AB, Corner::BA, Corner::BB];
}

/// Splitting of a `T`-bimodule by a pair of orthogonal idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerSplit {
    pub x_aa: Subspace,
    pub x_ab: Subspace,
    pub x_ba: Subspace,
    pub x_bb: Subspace,
    pub p_aa: RatMatrix,
    pub p_ab: RatMatrix,
    pub p_ba: RatMatrix,
    pub p_bb: RatMatrix,
}

impl CornerSplit {
    pub fn corner(&self, which: Corner) -> &Subspace {
        match which {
            Corner::AA => &self.x_aa,
            Corner::AB => &self.x_ab,
            Corner::BA => &self.x_ba,
            Corner::BB => &self.x_bb,
        }
    }

    pub fn projection(&self, which: Corner) -> &RatMatrix {
        match which {
            Corner::AA => &self.p_aa,
            Corner::AB => &self.p_ab,
            Corner::BA => &self.p_ba,
            Corner::BB => &self.p_bb,
        }
    }

    /// `(dim X_AA, dim X_AB, dim X_BA, dim X_BB)`.
    pub fn dims(&self) -> [usize; 4] {
        Corner::ALL.map(|c| self.corner(c).dim())
    }
}

/// Splits `x` (a bimodule over `(T, T)`) into `e_a X e_a`, `e_a X e_b`,
/// `e_b X e_a`, `e_b X e_b`.
pub fn corner_split(x: &Bimodule, e_a: &[Rat], e_b: &[Rat]) -> Result<CornerSplit, BimoduleError> {
    let t = &x.left;
    if x.left != x.right {
        return Err(BimoduleError::AlgebraMismatch);
    }
    if e_a.len() != t.dim() || e_b.len() != t.dim() {
        return Err(BimoduleError::Shape("idempotent has wrong length".into()));
    }
    if t.mul(e_a, e_a) != e_a || t.mul(e_b, e_b) != e_b {
        return Err(BimoduleError::NotIdempotent);
    }
    let (la, lb) = (x.left_action_by(e_a), x.left_action_by(e_b));
    let (ra, rb) = (x.right_action_by(e_a), x.right_action_by(e_b));
    let proj = |l: &RatMatrix, r: &RatMatrix| compose(l, r).expect("square");
    let (p_aa, p_ab, p_ba, p_bb) = (proj(&la, &ra), proj(&la, &rb), proj(&lb, &ra), proj(&lb, &rb));
    let split = CornerSplit {
        x_aa: image(&p_aa),
        x_ab: image(&p_ab),
        x_ba: image(&p_ba),
        x_bb: image(&p_bb),
        p_aa,
        p_ab,
        p_ba,
        p_bb,
    };
    let total = split
        .x_aa
        .sum(&split.x_ab)
        .and_then(|s| s.sum(&split.x_ba))
        .and_then(|s| s.sum(&split.x_bb))
        .expect("same ambient");
    let summed: usize = split.dims().iter().sum();
    if total.dim() != x.dim || summed != x.dim {
        return Err(BimoduleError::CornersDontSpan {
            found: total.dim(),
            expected: x.dim,
        });
    }
    Ok(split)
}

/// One corner of a `T`-bimodule as a bimodule over the corner algebras,
/// with actions pulled back along `incl_a: A → T` and `incl_b: B → T`.
pub fn corner_as_bimodule(
    x: &Bimodule,
    split: &CornerSplit,
    which: Corner,
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    incl_a: &RatMatrix,
    incl_b: &RatMatrix,
) -> Result<Bimodule, BimoduleError> {
    let (left, lmap, right, rmap) = match which {
        Corner::AA => (a, incl_a, a, incl_a),
        Corner::AB => (a, incl_a, b, incl_b),
        Corner::BA => (b, incl_b, a, incl_a),
        Corner::BB => (b, incl_b, b, incl_b),
    };
    let pulled = x.restrict(left.clone(), lmap, right.clone(), rmap);
    pulled.submodule(split.corner(which))
}

/// `X ⊗_E Y = (X ⊗ Y) / span{x e ⊗ y − x ⊗ e y}`.
///
/// Quotient coordinates are the non-pivot coordinates of the relation
/// subspace's echelon form; `section` maps them back to representatives.
#[derive(Debug, Clone)]
pub struct TensorQuotient {
    pub dim: usize,
    pub relations: Subspace,
    /// `dim × (dim X · dim Y)`.
    pub projection: RatMatrix,
    /// `(dim X · dim Y) × dim`, with `projection · section = id`.
    pub section: RatMatrix,
}

impl TensorQuotient {
    /// Quotient of `Q^ambient` by `relations`.
    pub fn new(relations: Subspace) -> Self {
        let ambient = relations.ambient_dim();
        let mut is_pivot = vec![false; ambient];
        let mut pivot_row = vec![usize::MAX; ambient];
        for (r, c) in relations.pivots().into_iter().enumerate() {
            is_pivot[c] = true;
            pivot_row[c] = r;
        }
        let free: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        let mut free_index = vec![usize::MAX; ambient];
        for (k, &c) in free.iter().enumerate() {
            free_index[c] = k;
        }
        let mut trip = Vec::new();
        for c in 0..ambient {
            if !is_pivot[c] {
                trip.push((free_index[c], c, Rat::one()));
            } else {
                // e_c ≡ e_c − row = −(non-pivot part of the row)
                for (c2, v) in relations.basis()[pivot_row[c]].iter().skip(1) {
                    trip.push((free_index[*c2], c, -v.clone()));
                }
            }
        }
        let dim = free.len();
        let projection = RatMatrix::from_triplets(dim, ambient, trip);
        let section = RatMatrix::from_triplets(
            ambient,
            dim,
            free.iter().enumerate().map(|(k, &c)| (c, k, Rat::one())),
        );
        TensorQuotient {
            dim,
            relations,
            projection,
            section,
        }
    }
}

/// Tensor product over `E` of `x` (right action by `E`) and `y` (left action by `E`).
/// Basis of `X ⊗ Y` is indexed `p * dim Y + q`.
pub fn tensor_over(x: &Bimodule, y: &Bimodule) -> Result<TensorQuotient, BimoduleError> {
    if x.right != y.left {
        return Err(BimoduleError::AlgebraMismatch);
    }
    let (dx, dy) = (x.dim, y.dim);
    let mut relations: Vec<SparseVec> = Vec::new();
    let xr_t: Vec<RatMatrix> = x.right_act.iter().map(RatMatrix::transpose).collect();
    let yl_t: Vec<RatMatrix> = y.left_act.iter().map(RatMatrix::transpose).collect();
    for i in 0..x.right.dim() {
        for p in 0..dx {
            // column p of R_X(e_i) = x_p e_i
            let xp_e = xr_t[i].row(p);
            for q in 0..dy {
                let e_yq = yl_t[i].row(q);
                let mut v: Vec<(usize, usize, Rat)> = xp_e
                    .iter()
                    .map(|(p2, c)| (0, p2 * dy + q, c.clone()))
                    .chain(e_yq.iter().map(|(q2, c)| (0, p * dy + q2, -c.clone())))
                    .collect();
                v.sort_by_key(|t| t.1);
                let row = RatMatrix::from_triplets(1, dx * dy, v.drain(..));
                if !row.row(0).is_empty() {
                    relations.push(row.row(0).to_vec());
                }
            }
        }
    }
    Ok(TensorQuotient::new(Subspace::span(dx * dy, relations)))
}
