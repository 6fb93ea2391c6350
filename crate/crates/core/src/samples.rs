//! Small algebras, modules and triangular algebras used by the fixtures,
//! the test suites and the CLI's built-in names.

use std::sync::Arc;

use num_traits::One;

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::linalg::{int, Rat, RatMatrix};
use crate::triangular::{build_triangular, TriangularData};

fn unit_matrix(n: usize, i: usize, j: usize) -> RatMatrix {
    RatMatrix::from_triplets(n, n, [(i, j, Rat::one())])
}

/// `Q^n` as a left module over upper triangular `n × n` matrices.
pub fn column_module(n: usize) -> Bimodule {
    let alg = Arc::new(Algebra::upper_triangular(n));
    let acts = (0..n)
        .flat_map(|i| (i..n).map(move |j| unit_matrix(n, i, j)))
        .collect();
    Bimodule::left_module(alg, acts).expect("matrix units")
}

/// `Q^n` as a left module over `M_n(Q)`.
pub fn matrix_column_module(n: usize) -> Bimodule {
    let alg = Arc::new(Algebra::matrix(n));
    let acts = (0..n * n).map(|p| unit_matrix(n, p / n, p % n)).collect();
    Bimodule::left_module(alg, acts).expect("matrix units")
}

/// One-dimensional left module on which `e_i` acts by `values[i]`
/// (`values` must be an algebra map to `Q`).
pub fn character_module(alg: Arc<Algebra>, values: &[i64]) -> Bimodule {
    let acts = values
        .iter()
        .map(|&v| RatMatrix::from_triplets(1, 1, [(0, 0, int(v))]))
        .collect();
    Bimodule::left_module(alg, acts).expect("one-dimensional")
}

/// Simple module of upper triangular `n × n` matrices at vertex `k`.
pub fn simple_module(n: usize, k: usize) -> Bimodule {
    let alg = Arc::new(Algebra::upper_triangular(n));
    let values: Vec<i64> = (0..n)
        .flat_map(|i| (i..n).map(move |j| i64::from(i == j && i == k)))
        .collect();
    character_module(alg, &values)
}

/// `V ⊗ W` for a left `A`-module `V` and a right `B`-module `W`.
pub fn outer_bimodule(v: &Bimodule, w: &Bimodule) -> Bimodule {
    let (iv, iw) = (RatMatrix::identity(v.dim()), RatMatrix::identity(w.dim()));
    Bimodule::new(
        v.left_algebra().clone(),
        w.right_algebra().clone(),
        v.dim() * w.dim(),
        v.left_actions().iter().map(|l| l.kron(&iw)).collect(),
        w.right_actions().iter().map(|r| iv.kron(r)).collect(),
    )
    .expect("tensor shapes")
}

/// Left module `V` over `A` viewed as an `(A, Q)`-bimodule with the right
/// algebra replaced by `b` acting through the character `values`.
pub fn with_right_character(v: &Bimodule, b: Arc<Algebra>, values: &[i64]) -> Bimodule {
    let w = Bimodule::right_module(
        b,
        values
            .iter()
            .map(|&x| RatMatrix::from_triplets(1, 1, [(0, 0, int(x))]))
            .collect(),
    )
    .expect("one-dimensional");
    outer_bimodule(v, &w)
}

fn q() -> Arc<Algebra> {
    Arc::new(Algebra::field())
}

/// `T3 = [[Q, Q], [0, Q]]`, the upper triangular 2 × 2 matrices.
pub fn t3_data() -> TriangularData {
    build_triangular(q(), Bimodule::regular(q()), q()).expect("T3")
}

#[derive(Debug, Clone)]
pub struct NamedTriangular {
    pub name: &'static str,
    pub data: TriangularData,
}

/// `[[Q, Q^2], [0, Q]]`, the Kronecker algebra.
pub fn kronecker_data() -> TriangularData {
    let m = Bimodule::left_module(q(), vec![RatMatrix::identity(2)]).expect("Q^2");
    build_triangular(q(), m, q()).expect("Kronecker")
}

/// `[[Q^2, Q], [0, Q]]` with only the first idempotent of `Q^2` acting.
pub fn one_corner_data() -> TriangularData {
    let a = Arc::new(Algebra::diagonal(2));
    build_triangular(a.clone(), character_module(a, &[1, 0]), q()).expect("Q^2 corner")
}

/// `[[M_2, Q^2], [0, Q]]` with `M_2` acting on column vectors.
pub fn matrix_corner_data() -> TriangularData {
    let a = Arc::new(Algebra::matrix(2));
    build_triangular(a, matrix_column_module(2), q()).expect("M2 corner")
}

/// `[[Q[x]/x^2, Q], [0, Q]]` with `x` acting by zero.
pub fn dual_numbers_data() -> TriangularData {
    let a = Arc::new(Algebra::truncated_polynomial(2));
    build_triangular(a.clone(), character_module(a, &[1, 0]), q()).expect("dual numbers corner")
}

/// `[[Q, Q], [0, Q[x]/x^2]]` with `x` acting by zero on the right.
pub fn dual_numbers_right_data() -> TriangularData {
    let b = Arc::new(Algebra::truncated_polynomial(2));
    let m = with_right_character(&Bimodule::left_module(q(), vec![RatMatrix::identity(1)]).unwrap(), b.clone(), &[1, 0]);
    build_triangular(q(), m, b).expect("right dual numbers corner")
}

/// `[[Q, 0], [0, Q]] = Q × Q`.
pub fn split_data() -> TriangularData {
    build_triangular(q(), Bimodule::zero(q(), q()), q()).expect("Q x Q")
}

/// `[[T3, Q^2], [0, Q]]`, the upper triangular 3 × 3 matrices.
pub fn t3_column_data() -> TriangularData {
    let a = Arc::new(Algebra::upper_triangular(2));
    build_triangular(a, column_module(2), q()).expect("T3 column")
}

/// Every triangular algebra the test suites iterate over.
pub fn triangular_catalog() -> Vec<TriangularData> {
    named_triangular_catalog().into_iter().map(|n| n.data).collect()
}

pub fn named_triangular_catalog() -> Vec<NamedTriangular> {
    vec![
        NamedTriangular { name: "t3", data: t3_data() },
        NamedTriangular { name: "kronecker", data: kronecker_data() },
        NamedTriangular { name: "one_corner", data: one_corner_data() },
        NamedTriangular { name: "dual_numbers", data: dual_numbers_data() },
        NamedTriangular { name: "dual_numbers_right", data: dual_numbers_right_data() },
        NamedTriangular { name: "split", data: split_data() },
        NamedTriangular { name: "t3_column", data: t3_column_data() },
        NamedTriangular { name: "matrix_corner", data: matrix_corner_data() },
    ]
}

/// Named algebra constructors understood by instance files (`builtin = "..."`).
pub fn builtin_algebra(name: &str) -> Option<Algebra> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, a.parse::<usize>().ok()?),
        None => (name, 0),
    };
    Some(match head {
        "field" => Algebra::field(),
        "diagonal" => Algebra::diagonal(arg),
        "matrix" => Algebra::matrix(arg),
        "upper" => Algebra::upper_triangular(arg),
        "lower" => Algebra::lower_triangular(arg),
        "truncated" => Algebra::truncated_polynomial(arg),
        "dual_numbers" => Algebra::truncated_polynomial(2),
        "kronecker" => kronecker_data().t.as_ref().clone(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_modules_validate() {
        for m in [
            column_module(2),
            column_module(3),
            matrix_column_module(2),
            simple_module(2, 0),
            simple_module(2, 1),
        ] {
            assert_eq!(m.validate(), Ok(()));
        }
    }

    #[test]
    fn catalog_builds() {
        let dims: Vec<usize> = triangular_catalog().iter().map(|t| t.dim()).collect();
        assert_eq!(dims, vec![3, 4, 4, 4, 4, 2, 6, 7]);
        assert_eq!(t3_column_data().t.center().dim(), 1);
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_algebra("matrix:2").unwrap().dim(), 4);
        assert_eq!(builtin_algebra("kronecker").unwrap().dim(), 4);
        assert!(builtin_algebra("nope").is_none());
    }
}
