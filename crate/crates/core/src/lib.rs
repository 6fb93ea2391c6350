//! Exact Hochschild (co)homology and derived functors for finite-dimensional
//! algebras over the rationals, with a focus on triangular algebras.

pub mod algebra;
pub mod bimodule;
pub mod derived;
pub mod hochschild;
pub mod linalg;
pub mod samples;
pub mod triangular;
pub mod theorems;
pub mod cli;
