//! Triangular algebras `T = [[A, M], [0, B]]`.
//!
//! The basis of `T` is `[A-basis | M-basis | B-basis]`, so the block
//! embeddings and projections are index-range maps.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::bimodule::{Bimodule, BimoduleError};
use crate::linalg::{compose, Rat, RatMatrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangularError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
}

#[derive(Debug, Clone)]
pub struct TriangularData {
    pub a: Arc<Algebra>,
    pub b: Arc<Algebra>,
    /// The off-diagonal `(A, B)`-bimodule.
    pub m: Bimodule,
    pub t: Arc<Algebra>,
    /// Image of `1_A` in `T`.
    pub e_a: Vec<Rat>,
    /// Image of `1_B` in `T`.
    pub e_b: Vec<Rat>,
    /// `dim T × dim A`.
    pub incl_a: RatMatrix,
    /// `dim T × dim B`.
    pub incl_b: RatMatrix,
    /// `dim A × dim T`.
    pub proj_a: RatMatrix,
    /// `dim M × dim T`.
    pub proj_m: RatMatrix,
    /// `dim B × dim T`.
    pub proj_b: RatMatrix,
}

fn block_inclusion(total: usize, offset: usize, size: usize) -> RatMatrix {
    RatMatrix::from_triplets(total, size, (0..size).map(|i| (offset + i, i, Rat::one())))
}

impl TriangularData {
    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    /// Index range of the `M` block inside the `T` basis.
    pub fn m_range(&self) -> std::ops::Range<usize> {
        self.a.dim()..self.a.dim() + self.m.dim()
    }

    /// `(a, m, b)` assembled into a coordinate vector of `T`.
    pub fn element(&self, a: &[Rat], m: &[Rat], b: &[Rat]) -> Vec<Rat> {
        a.iter().chain(m).chain(b).cloned().collect()
    }
}

/// Assembles `T` blockwise: `(a, m, b)(a', m', b') = (aa', am' + mb', bb')`.
fn assemble(a: &Arc<Algebra>, m: &Bimodule, b: &Arc<Algebra>) -> Result<TriangularData, TriangularError> {
    if m.left_algebra() != a || m.right_algebra() != b {
        return Err(BimoduleError::AlgebraMismatch.into());
    }
    let (da, dm, db) = (a.dim(), m.dim(), b.dim());
    let n = da + dm + db;
    let (off_m, off_b) = (da, da + dm);
    let mut table: Vec<SparseVec> = vec![Vec::new(); n * n];
    let shift = |v: &[(usize, Rat)], off: usize| -> SparseVec { v.iter().map(|(k, x)| (k + off, x.clone())).collect() };
    for i in 0..da {
        for j in 0..da {
            table[i * n + j] = a.product(i, j).to_vec();
        }
        for q in 0..dm {
            // e_i m_q = column q of L(e_i)
            table[i * n + off_m + q] = shift(&m.left_act(i).column(q), off_m);
        }
    }
    for q in 0..dm {
        for j in 0..db {
            table[(off_m + q) * n + off_b + j] = shift(&m.right_act(j).column(q), off_m);
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[(off_b + i) * n + off_b + j] = shift(b.product(i, j), off_b);
        }
    }
    let (Some(ua), Some(ub)) = (a.unit(), b.unit()) else {
        return Err(AlgebraError::Shape("corner algebras must be unital".into()).into());
    };
    let mut unit = ua.to_vec();
    unit.extend(std::iter::repeat_n(Rat::zero(), dm));
    unit.extend(ub.iter().cloned());
    let e_a: Vec<Rat> = ua
        .iter()
        .cloned()
        .chain(std::iter::repeat_n(Rat::zero(), dm + db))
        .collect();
    let e_b: Vec<Rat> = std::iter::repeat_n(Rat::zero(), da + dm)
        .chain(ub.iter().cloned())
        .collect();
    let unital = m.validate().is_ok();
    let t = Algebra::from_table(n, table, unital.then_some(unit))?;
    t.validate()?;
    Ok(TriangularData {
        a: a.clone(),
        b: b.clone(),
        m: m.clone(),
        t: Arc::new(t),
        e_a,
        e_b,
        incl_a: block_inclusion(n, 0, da),
        incl_b: block_inclusion(n, off_b, db),
        proj_a: block_inclusion(n, 0, da).transpose(),
        proj_m: block_inclusion(n, off_m, dm).transpose(),
        proj_b: block_inclusion(n, off_b, db).transpose(),
    })
}

/// Builds `T = [[A, M], [0, B]]` for a unital `(A, B)`-bimodule `M`.
pub fn build_triangular(
    a: Arc<Algebra>,
    m: Bimodule,
    b: Arc<Algebra>,
) -> Result<TriangularData, TriangularError> {
    a.validate()?;
    b.validate()?;
    m.validate()?;
    assemble(&a, &m, &b)
}

/// `T` acting on itself.
pub fn t_as_bimodule(td: &TriangularData) -> Bimodule {
    Bimodule::regular(td.t.clone())
}

/// `T*` with the dual actions.
pub fn t_dual_bimodule(td: &TriangularData) -> Bimodule {
    t_as_bimodule(td).dual()
}

/// `M` as a `T`-bimodule: `(a, m, b) x = a x` and `x (a, m, b) = x b`.
pub fn m_as_t_bimodule(td: &TriangularData) -> Result<Bimodule, TriangularError> {
    let x = td
        .m
        .restrict(td.t.clone(), &td.proj_a, td.t.clone(), &td.proj_b);
    x.validate()?;
    Ok(x)
}

/// `T_k = [[A, T_{k-1}], [0, B]]` with `T_0 = T`, iterated `depth` times.
///
/// `T_{k-1}` is an `(A, B)`-bimodule by multiplication with the images of
/// `A` and `B`. Since `1_A` only acts as the corner projection `e_A`, that
/// bimodule is not unital and `T_k` (for `k ≥ 1`) has no two-sided unit;
/// each level is still checked for associativity.
pub fn nested_triangular(td: &TriangularData, depth: usize) -> Result<TriangularData, TriangularError> {
    let mut cur = td.clone();
    for _ in 0..depth {
        let inner = Bimodule::regular(cur.t.clone()).restrict(
            td.a.clone(),
            &cur.incl_a,
            td.b.clone(),
            &cur.incl_b,
        );
        inner.validate_actions()?;
        cur = assemble(&td.a, &inner, &td.b)?;
    }
    Ok(cur)
}

/// `T_k` as a `T`-bimodule: `T` acts on the left through `T → A → T_k`
/// and on the right through `T → B → T_k`.
pub fn nested_as_t_bimodule(td: &TriangularData, nested: &TriangularData) -> Result<Bimodule, TriangularError> {
    let left = compose(&nested.incl_a, &td.proj_a).expect("block shapes");
    let right = compose(&nested.incl_b, &td.proj_b).expect("block shapes");
    let x = Bimodule::regular(nested.t.clone()).restrict(td.t.clone(), &left, td.t.clone(), &right);
    x.validate_actions()?;
    Ok(x)
}
