//! Bar resolutions over `E₊` and the derived functors Ext and Tor.
//!
//! `B_n(X) = E₊ ⊗ E^{⊗n} ⊗ X` with basis `(s, i_1, .., i_n, k)` indexed
//! `(s · dim(E)^n + I) · dim X + k`; `s` runs over the basis of `E₊`, whose
//! adjoined unit is the last element. The differential is
//! `d_n(a ⊗ a_1 ⊗ .. ⊗ a_{n+1} ⊗ x) = a a_1 ⊗ a_2 ⊗ .. ⊗ x
//!   + Σ_k (−1)^k a ⊗ .. ⊗ a_k a_{k+1} ⊗ .. ⊗ x
//!   + (−1)^{n+1} a ⊗ a_1 ⊗ .. ⊗ a_n ⊗ a_{n+1} x`
//! and the augmentation is `π(a ⊗ x) = a x`.
//!
//! Left modules are `(E, Q)` bimodules and right modules are `(Q, E)`
//! bimodules. Tor takes its arguments in the order (right, left).

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::bimodule::{hom_bimodule, tensor_over, Bimodule, BimoduleError, TensorQuotient};
use crate::hochschild::{cohomology_dim, HochschildError};
use crate::linalg::{compose, int, kernel, rank, LinalgError, Rat, RatMatrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivedError {
    #[error("module is not defined over the given algebra")]
    AlgebraMismatch,
    #[error("bar complex fails to be exact at degree {degree}")]
    ExactnessFailure { degree: usize },
    #[error("bar differentials do not compose to zero at degree {degree}")]
    BrokenComplex { degree: usize },
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone)]
pub struct BarComplex {
    pub base: Arc<Algebra>,
    /// `E₊`, with the adjoined unit as its last basis element.
    pub unitized: Arc<Algebra>,
    pub module: Bimodule,
    pub max_degree: usize,
    /// `dim B_n` for `n = 0..=max_degree`.
    pub dims: Vec<usize>,
    /// `π : B_0 → X`.
    pub augmentation: RatMatrix,
    /// `d_n : B_{n+1} → B_n` for `n = 0..max_degree`.
    pub differentials: Vec<RatMatrix>,
}

fn pow(base: usize, n: usize) -> usize {
    (0..n).fold(1usize, |acc, _| acc.saturating_mul(base))
}

fn sign(k: usize) -> Rat {
    int(if k.is_multiple_of(2) { 1 } else { -1 })
}

fn digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

fn fold_digits(ds: impl IntoIterator<Item = usize>, base: usize) -> usize {
    ds.into_iter().fold(0, |acc, x| acc * base + x)
}

fn check_left(e: &Algebra, m: &Bimodule) -> Result<(), DerivedError> {
    if m.left_algebra().as_ref() != e {
        return Err(DerivedError::AlgebraMismatch);
    }
    Ok(())
}

/// Left action matrices of `E₊` on a left `E`-module: the adjoined unit acts
/// as the identity.
fn unitized_left_actions(m: &Bimodule) -> Vec<RatMatrix> {
    let mut acts = m.left_actions().to_vec();
    acts.push(RatMatrix::identity(m.dim()));
    acts
}

fn unitized_right_actions(m: &Bimodule) -> Vec<RatMatrix> {
    let mut acts = m.right_actions().to_vec();
    acts.push(RatMatrix::identity(m.dim()));
    acts
}

impl BarComplex {
    /// Assembles `π` and `d_0 .. d_{max_degree−1}` without checking them.
    pub fn build(e: Arc<Algebra>, x: &Bimodule, max_degree: usize) -> Result<Self, DerivedError> {
        check_left(&e, x)?;
        let ep = Arc::new(e.unitization());
        let (de, dx) = (e.dim(), x.dim());
        let dims: Vec<usize> = (0..=max_degree)
            .map(|n| (de + 1).saturating_mul(pow(de, n)).saturating_mul(dx))
            .collect();
        let acts = unitized_left_actions(x);
        let mut trip = Vec::new();
        for (s, act) in acts.iter().enumerate() {
            for (r, k, v) in act.triplets() {
                trip.push((r, s * dx + k, v.clone()));
            }
        }
        let augmentation = RatMatrix::from_triplets(dx, dims[0], trip);
        let left_t: Vec<RatMatrix> = x.left_actions().iter().map(RatMatrix::transpose).collect();
        let differentials = (0..max_degree)
            .into_par_iter()
            .map(|n| bar_differential(&ep, de, dx, &left_t, n))
            .collect();
        Ok(BarComplex {
            base: e,
            unitized: ep,
            module: x.clone(),
            max_degree,
            dims,
            augmentation,
            differentials,
        })
    }

    /// `B_n` as a left `E₊`-module.
    pub fn term_module(&self, n: usize) -> Bimodule {
        let rest = self.dims[n] / (self.base.dim() + 1);
        let id = RatMatrix::identity(rest);
        let acts = (0..self.unitized.dim())
            .map(|t| self.unitized.left_mult(t).kron(&id))
            .collect();
        Bimodule::left_module(self.unitized.clone(), acts).expect("square actions")
    }
}

/// `d_n : B_{n+1} → B_n`.
fn bar_differential(ep: &Algebra, de: usize, dx: usize, left_t: &[RatMatrix], n: usize) -> RatMatrix {
    let tuples = pow(de, n + 1);
    let dn = pow(de, n);
    let rows = (de + 1) * dn * dx;
    let cols = (de + 1) * tuples * dx;
    let s_last = sign(n + 1);
    let mut trip = Vec::new();
    for s in 0..=de {
        for j in 0..tuples {
            let ds = digits(j, de, n + 1);
            let tail = j % dn;
            let head = j / de;
            for l in 0..dx {
                let col = (s * tuples + j) * dx + l;
                // a a_1 ⊗ a_2 ⊗ .. ⊗ x
                for (m, c) in ep.product(s, ds[0]) {
                    trip.push(((m * dn + tail) * dx + l, col, c.clone()));
                }
                for k in 1..=n {
                    let sk = sign(k);
                    for (m, c) in ep.product(ds[k - 1], ds[k]) {
                        let merged = fold_digits(
                            ds[..k - 1].iter().copied().chain([*m]).chain(ds[k + 1..].iter().copied()),
                            de,
                        );
                        trip.push(((s * dn + merged) * dx + l, col, c * &sk));
                    }
                }
                // (−1)^{n+1} a ⊗ a_1 ⊗ .. ⊗ a_n ⊗ a_{n+1} x
                for (k2, v) in left_t[ds[n]].row(l) {
                    trip.push(((s * dn + head) * dx + k2, col, v * &s_last));
                }
            }
        }
    }
    RatMatrix::from_triplets(rows, cols, trip)
}

/// Bar resolution of `x` through degree `max_degree`, with the complex law and
/// exactness of the augmented complex verified by rank counting.
pub fn bar_resolution(e: Arc<Algebra>, x: &Bimodule, max_degree: usize) -> Result<BarComplex, DerivedError> {
    let bar = BarComplex::build(e, x, max_degree)?;
    if !compose(&bar.augmentation, bar.differentials.first().unwrap_or(&RatMatrix::zeros(bar.dims[0], 0)))?
        .is_zero()
    {
        return Err(DerivedError::BrokenComplex { degree: 0 });
    }
    for n in 1..bar.differentials.len() {
        if !compose(&bar.differentials[n - 1], &bar.differentials[n])?.is_zero() {
            return Err(DerivedError::BrokenComplex { degree: n });
        }
    }
    let pi_rank = rank(&bar.augmentation);
    if pi_rank != x.dim() {
        return Err(DerivedError::ExactnessFailure { degree: 0 });
    }
    let ranks: Vec<usize> = bar.differentials.par_iter().map(rank).collect();
    // Exactness at B_n needs the rank of d_n, so the top degree is unchecked.
    for n in 0..ranks.len() {
        let incoming = if n == 0 { pi_rank } else { ranks[n - 1] };
        if incoming + ranks[n] != bar.dims[n] {
            return Err(DerivedError::ExactnessFailure { degree: n });
        }
    }
    Ok(bar)
}

/// Module maps `B → Y` over `E₊`, as a subspace of `Hom_Q(B, Y)` vectorized
/// row-major (`y · dim B + b`).
fn module_maps(b: &Bimodule, y_acts: &[RatMatrix], dim_y: usize) -> Subspace {
    let db = b.dim();
    let ambient = dim_y * db;
    if ambient == 0 {
        return Subspace::zero(0);
    }
    let id_y = RatMatrix::identity(dim_y);
    let id_b = RatMatrix::identity(db);
    // The adjoined unit gives no constraint.
    let blocks: Vec<RatMatrix> = b.left_actions()[..b.left_actions().len() - 1]
        .par_iter()
        .zip(&y_acts[..y_acts.len() - 1])
        .map(|(lb, ly)| id_y.kron(&lb.transpose()).sub(&ly.kron(&id_b)).expect("same shape"))
        .collect();
    if blocks.is_empty() {
        return Subspace::full(ambient);
    }
    let refs: Vec<&RatMatrix> = blocks.iter().collect();
    kernel(&RatMatrix::vstack(&refs).expect("same width"))
}

/// Rank of `φ ↦ φ ∘ d` on a subspace of maps `B_k → Y`.
fn precompose_rank(space: &Subspace, d: &RatMatrix, dim_y: usize) -> usize {
    if space.dim() == 0 {
        return 0;
    }
    let pull = RatMatrix::identity(dim_y).kron(&d.transpose());
    let images = compose(&pull, &space.basis_matrix()).expect("shapes agree");
    rank(&images)
}

/// `dim Ext^n_E(M, Y)` from `Hom_E(B(M), Y)`.
pub fn ext_dim(e: &Arc<Algebra>, m: &Bimodule, y: &Bimodule, n: usize) -> Result<usize, DerivedError> {
    check_left(e, m)?;
    check_left(e, y)?;
    let bar = bar_resolution(e.clone(), m, n + 1)?;
    let y_acts = unitized_left_actions(y);
    let spaces: Vec<Subspace> = (n.saturating_sub(1)..=n)
        .into_par_iter()
        .map(|k| module_maps(&bar.term_module(k), &y_acts, y.dim()))
        .collect();
    let current = spaces.last().expect("degree n");
    let outgoing = precompose_rank(current, &bar.differentials[n], y.dim());
    let incoming = if n == 0 {
        0
    } else {
        precompose_rank(&spaces[0], &bar.differentials[n - 1], y.dim())
    };
    Ok(current.dim() - outgoing - incoming)
}

/// `dim H^n(E, Hom(M, Y))`, computed without any resolution.
pub fn ext_via_hochschild(e: &Algebra, m: &Bimodule, y: &Bimodule, n: usize) -> Result<usize, DerivedError> {
    check_left(e, m)?;
    check_left(e, y)?;
    Ok(cohomology_dim(e, &hom_bimodule(m, y)?, n)?)
}

/// `dim Tor_n^E(X, M)` for a right module `xr` and a left module `m`.
pub fn tor_dim(e: &Arc<Algebra>, xr: &Bimodule, m: &Bimodule, n: usize) -> Result<usize, DerivedError> {
    check_left(e, m)?;
    if xr.right_algebra().as_ref() != e.as_ref() {
        return Err(DerivedError::AlgebraMismatch);
    }
    let bar = bar_resolution(e.clone(), m, n + 1)?;
    let x_plus = Bimodule::right_module(bar.unitized.clone(), unitized_right_actions(xr))?;
    let quotients: Vec<TensorQuotient> = (0..=n + 1)
        .into_par_iter()
        .map(|k| tensor_over(&x_plus, &bar.term_module(k)))
        .collect::<Result<_, _>>()?;
    let id_x = RatMatrix::identity(xr.dim());
    let induced_rank = |k: usize| -> Result<usize, DerivedError> {
        let lifted = id_x.kron(&bar.differentials[k]);
        let map = compose(&quotients[k].projection, &compose(&lifted, &quotients[k + 1].section)?)?;
        Ok(rank(&map))
    };
    let outgoing = if n == 0 { 0 } else { induced_rank(n - 1)? };
    let incoming = induced_rank(n)?;
    Ok(quotients[n].dim - outgoing - incoming)
}
