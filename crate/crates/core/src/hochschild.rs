//! Hochschild cochain and chain complexes as explicit matrices.
//!
//! A cochain `f ∈ C^n(A, X)` is encoded by its values on basis tuples:
//! coordinate `(i_1, .., i_n, k)` is the `k`-th component of
//! `f(e_{i_1}, .., e_{i_n})`. Chains in `C_n(A, X) = A^{⊗n} ⊗ X` use the same
//! indexing for `e_{i_1} ⊗ .. ⊗ e_{i_n} ⊗ x_k`. Tuples are enumerated
//! lexicographically: index `((i_1 d + i_2) d + ..) · dim X + k`.
//!
//! The chain boundary is
//! `d_n(a_1 ⊗ .. ⊗ a_{n+1} ⊗ x) = a_2 ⊗ .. ⊗ a_{n+1} ⊗ x a_1
//!   + Σ_k (−1)^k a_1 ⊗ .. ⊗ a_k a_{k+1} ⊗ .. ⊗ x
//!   + (−1)^{n+1} a_1 ⊗ .. ⊗ a_n ⊗ a_{n+1} x`,
//! which makes `δ^n` on `C^n(A, X*)` exactly the transpose of `d_n`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::linalg::{compose, image, int, kernel, quotient_dim, rank, LinalgError, Rat, RatMatrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("coefficient bimodule is not defined over the given algebra on both sides")]
    AlgebraMismatch,
    #[error("differential does not square to zero at degree {0}")]
    BrokenComplex(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexSide {
    Cochain,
    Chain,
}

/// `(dim A)^n · dim X`, saturating.
pub fn space_dim(alg_dim: usize, x_dim: usize, n: usize) -> usize {
    let mut acc = x_dim;
    for _ in 0..n {
        acc = acc.saturating_mul(alg_dim);
    }
    acc
}

fn check(a: &Algebra, x: &Bimodule) -> Result<(), HochschildError> {
    if x.left_algebra().as_ref() != a || x.right_algebra().as_ref() != a {
        return Err(HochschildError::AlgebraMismatch);
    }
    Ok(())
}

fn digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

/// Index of the tuple obtained by replacing positions `p, p+1` by `m`.
fn merged_index(ds: &[usize], p: usize, m: usize, base: usize) -> usize {
    ds[..p]
        .iter()
        .chain(std::iter::once(&m))
        .chain(&ds[p + 2..])
        .fold(0, |acc, &x| acc * base + x)
}

fn sign(k: usize) -> Rat {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Matrix of `δ^n : C^n(A, X) → C^{n+1}(A, X)`.
pub fn coboundary_matrix(a: &Algebra, x: &Bimodule, n: usize) -> Result<RatMatrix, HochschildError> {
    check(a, x)?;
    let (d, dx) = (a.dim(), x.dim());
    let tuples = space_dim(d, 1, n + 1);
    let dn = space_dim(d, 1, n);
    let mut trip = Vec::new();
    for j in 0..tuples {
        let ds = digits(j, d, n + 1);
        // a_1 f(a_2, .., a_{n+1})
        let tail = j % dn.max(1);
        for (k, l, v) in x.left_act(ds[0]).triplets() {
            trip.push((j * dx + k, tail * dx + l, v.clone()));
        }
        // Σ (−1)^k f(.., a_k a_{k+1}, ..)
        for k in 1..=n {
            let s = sign(k);
            for (m, c) in a.product(ds[k - 1], ds[k]) {
                let merged = merged_index(&ds, k - 1, *m, d);
                let coeff = c * &s;
                for xk in 0..dx {
                    trip.push((j * dx + xk, merged * dx + xk, coeff.clone()));
                }
            }
        }
        // (−1)^{n+1} f(a_1, .., a_n) a_{n+1}
        let head = j / d;
        let s = sign(n + 1);
        for (k, l, v) in x.right_act(ds[n]).triplets() {
            trip.push((j * dx + k, head * dx + l, v * &s));
        }
    }
    Ok(RatMatrix::from_triplets(tuples * dx, dn * dx, trip))
}

/// Matrix of `d_n : C_{n+1}(A, X) → C_n(A, X)`.
pub fn boundary_matrix(a: &Algebra, x: &Bimodule, n: usize) -> Result<RatMatrix, HochschildError> {
    check(a, x)?;
    let (d, dx) = (a.dim(), x.dim());
    let tuples = space_dim(d, 1, n + 1);
    let dn = space_dim(d, 1, n);
    // Row l of the transpose is the image of x_l.
    let right_t: Vec<RatMatrix> = x.right_actions().iter().map(RatMatrix::transpose).collect();
    let left_t: Vec<RatMatrix> = x.left_actions().iter().map(RatMatrix::transpose).collect();
    let mut trip = Vec::new();
    for j in 0..tuples {
        let ds = digits(j, d, n + 1);
        let tail = j % dn.max(1);
        let head = j / d;
        let s_last = sign(n + 1);
        for l in 0..dx {
            let col = j * dx + l;
            // a_2 ⊗ .. ⊗ a_{n+1} ⊗ x a_1
            for (k, v) in right_t[ds[0]].row(l) {
                trip.push((tail * dx + k, col, v.clone()));
            }
            for k in 1..=n {
                let s = sign(k);
                for (m, c) in a.product(ds[k - 1], ds[k]) {
                    let merged = merged_index(&ds, k - 1, *m, d);
                    trip.push((merged * dx + l, col, c * &s));
                }
            }
            // (−1)^{n+1} a_1 ⊗ .. ⊗ a_n ⊗ a_{n+1} x
            for (k, v) in left_t[ds[n]].row(l) {
                trip.push((head * dx + k, col, v * &s_last));
            }
        }
    }
    Ok(RatMatrix::from_triplets(dn * dx, tuples * dx, trip))
}

/// `dim H^n(A, X) = dim Z^n / B^n`, with the containment `B^n ⊆ Z^n` checked.
pub fn cohomology_dim(a: &Algebra, x: &Bimodule, n: usize) -> Result<usize, HochschildError> {
    let cocycles = kernel(&coboundary_matrix(a, x, n)?);
    let coboundaries = if n == 0 {
        Subspace::zero(x.dim())
    } else {
        image(&coboundary_matrix(a, x, n - 1)?)
    };
    Ok(quotient_dim(&cocycles, &coboundaries)?)
}

/// `dim H_n(A, X)`; `H_0 = X / im d_0`.
pub fn homology_dim(a: &Algebra, x: &Bimodule, n: usize) -> Result<usize, HochschildError> {
    let cycles = if n == 0 {
        Subspace::full(x.dim())
    } else {
        kernel(&boundary_matrix(a, x, n - 1)?)
    };
    let boundaries = image(&boundary_matrix(a, x, n)?);
    Ok(quotient_dim(&cycles, &boundaries)?)
}

/// `{x : a x = x a for all a}`, solved directly from the action matrices.
pub fn invariants(x: &Bimodule) -> Result<Subspace, HochschildError> {
    if x.left_algebra() != x.right_algebra() {
        return Err(HochschildError::AlgebraMismatch);
    }
    if x.dim() == 0 || x.left_algebra().dim() == 0 {
        return Ok(Subspace::full(x.dim()));
    }
    let blocks: Vec<RatMatrix> = x
        .left_actions()
        .iter()
        .zip(x.right_actions())
        .map(|(l, r)| l.sub(r).expect("square"))
        .collect();
    let refs: Vec<&RatMatrix> = blocks.iter().collect();
    Ok(kernel(&RatMatrix::vstack(&refs)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub space_dim: usize,
    /// Rank of the differential leaving this degree.
    pub outgoing_rank: usize,
    pub kernel_dim: usize,
    /// Rank of the differential arriving at this degree.
    pub incoming_rank: usize,
    pub homology_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub side: ComplexSide,
    pub max_degree: usize,
    pub degrees: Vec<DegreeReport>,
    /// Every composite of consecutive differentials was checked to be zero.
    pub certified: bool,
}

impl ComplexReport {
    pub fn homology_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.homology_dim).collect()
    }
}

/// Per-degree dimensions for degrees `0..=max_degree`.
///
/// Cochain side: map `n` is `δ^n : C^n → C^{n+1}`. Chain side: map `n` is
/// `d_n : C_{n+1} → C_n`. Maps `0..=max_degree` are built and ranked in
/// parallel; consecutive composites are checked to vanish exactly before any
/// homology dimension is reported.
pub fn complex_report(
    a: &Algebra,
    x: &Bimodule,
    side: ComplexSide,
    max_degree: usize,
) -> Result<ComplexReport, HochschildError> {
    check(a, x)?;
    let maps: Vec<RatMatrix> = (0..=max_degree)
        .into_par_iter()
        .map(|n| match side {
            ComplexSide::Cochain => coboundary_matrix(a, x, n),
            ComplexSide::Chain => boundary_matrix(a, x, n),
        })
        .collect::<Result<_, _>>()?;
    let ranks: Vec<usize> = maps.par_iter().map(rank).collect();
    let broken: Vec<usize> = (1..=max_degree)
        .into_par_iter()
        .filter(|&n| {
            let composite = match side {
                ComplexSide::Cochain => compose(&maps[n], &maps[n - 1]),
                ComplexSide::Chain => compose(&maps[n - 1], &maps[n]),
            };
            !composite.expect("consecutive maps compose").is_zero()
        })
        .collect();
    if let Some(&n) = broken.first() {
        return Err(HochschildError::BrokenComplex(n));
    }
    let degrees = (0..=max_degree)
        .map(|n| {
            let space = space_dim(a.dim(), x.dim(), n);
            let (outgoing, incoming) = match side {
                ComplexSide::Cochain => (ranks[n], if n == 0 { 0 } else { ranks[n - 1] }),
                ComplexSide::Chain => (if n == 0 { 0 } else { ranks[n - 1] }, ranks[n]),
            };
            let kernel_dim = space - outgoing;
            DegreeReport {
                degree: n,
                space_dim: space,
                outgoing_rank: outgoing,
                kernel_dim,
                incoming_rank: incoming,
                homology_dim: kernel_dim
                    .checked_sub(incoming)
                    .expect("image fits in kernel once d∘d = 0"),
            }
        })
        .collect();
    Ok(ComplexReport {
        side,
        max_degree,
        degrees,
        certified: true,
    })
}
