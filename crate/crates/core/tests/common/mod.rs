//! Random small algebras and bimodules shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use hochwerk::algebra::{invert, Algebra};
use hochwerk::bimodule::Bimodule;
use hochwerk::linalg::{int, Rat, RatMatrix};
use hochwerk::triangular::{build_triangular, TriangularData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Seed {
    pub alg: Algebra,
    pub characters: Vec<Vec<i64>>,
}

pub fn seeds() -> Vec<Seed> {
    let s = |alg, characters: &[&[i64]]| Seed {
        alg,
        characters: characters.iter().map(|c| c.to_vec()).collect(),
    };
    vec![
        s(Algebra::field(), &[&[1]]),
        s(Algebra::diagonal(2), &[&[1, 0], &[0, 1]]),
        s(Algebra::diagonal(3), &[&[1, 0, 0], &[0, 0, 1]]),
        s(Algebra::truncated_polynomial(2), &[&[1, 0]]),
        s(Algebra::truncated_polynomial(3), &[&[1, 0, 0]]),
        s(Algebra::upper_triangular(2), &[&[1, 0, 0], &[0, 0, 1]]),
        s(Algebra::lower_triangular(2), &[&[1, 0, 0], &[0, 0, 1]]),
        s(Algebra::zero_product(2), &[&[0, 0]]),
    ]
}

fn scalar(v: i64) -> RatMatrix {
    RatMatrix::from_triplets(1, 1, [(0, 0, int(v))])
}

pub fn character_bimodule(a: &Arc<Algebra>, left: &[i64], right: &[i64]) -> Bimodule {
    Bimodule::new(
        a.clone(),
        a.clone(),
        1,
        left.iter().map(|&v| scalar(v)).collect(),
        right.iter().map(|&v| scalar(v)).collect(),
    )
    .expect("one-dimensional")
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    loop {
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = RatMatrix::from_dense(n, n, &rows);
        if invert(&m).is_some() {
            return m;
        }
    }
}

/// A seed algebra in a random basis with a random bimodule of dimension at
/// most 4 built from regular, dual and character pieces.
pub fn random_pair(rng: &mut ChaCha8Rng) -> (String, Arc<Algebra>, Bimodule) {
    let all = seeds();
    let seed = &all[rng.gen_range(0..all.len())];
    let base = Arc::new(seed.alg.clone());
    let d = base.dim();
    let mut pieces: Vec<(String, Bimodule)> = Vec::new();
    let mut total = 0;
    while pieces.is_empty() || (total < 4 && rng.gen_bool(0.5)) {
        let (name, piece) = match rng.gen_range(0..3) {
            0 if total + d <= 4 => ("reg".to_string(), Bimodule::regular(base.clone())),
            1 if total + d <= 4 => ("dual".to_string(), Bimodule::regular(base.clone()).dual()),
            _ => {
                let l = rng.gen_range(0..seed.characters.len());
                let r = rng.gen_range(0..seed.characters.len());
                (
                    format!("chi{l}{r}"),
                    character_bimodule(&base, &seed.characters[l], &seed.characters[r]),
                )
            }
        };
        if total + piece.dim() > 4 {
            break;
        }
        total += piece.dim();
        pieces.push((name, piece));
    }
    let mut x = pieces[0].1.clone();
    for (_, p) in &pieces[1..] {
        x = x.direct_sum(p).expect("same algebras");
    }
    let p = random_invertible(rng, d);
    let alg = Arc::new(base.change_basis(&p).expect("invertible"));
    let x = x.restrict(alg.clone(), &p, alg.clone(), &p);
    let q = random_invertible(rng, x.dim());
    let x = x.change_basis(&q).expect("invertible");
    let names: Vec<&str> = pieces.iter().map(|(n, _)| n.as_str()).collect();
    (format!("dim{d}[{}]", names.join("+")), alg, x)
}


pub fn pair_from_seed(seed: u64) -> (String, Arc<Algebra>, Bimodule) {
    random_pair(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Triangular algebra over two unital seed algebras with `M` a sum of one
/// or two character bimodules.
pub fn random_triangular(seed: u64) -> TriangularData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unital: Vec<Seed> = seeds().into_iter().filter(|s| s.alg.is_unital()).collect();
    let a = &unital[rng.gen_range(0..unital.len())];
    let b = &unital[rng.gen_range(0..unital.len())];
    let (aa, ab) = (Arc::new(a.alg.clone()), Arc::new(b.alg.clone()));
    let piece = |rng: &mut ChaCha8Rng| {
        let l = &a.characters[rng.gen_range(0..a.characters.len())];
        let r = &b.characters[rng.gen_range(0..b.characters.len())];
        Bimodule::new(
            aa.clone(),
            ab.clone(),
            1,
            l.iter().map(|&v| scalar(v)).collect(),
            r.iter().map(|&v| scalar(v)).collect(),
        )
        .expect("one-dimensional")
    };
    let mut m = piece(&mut rng);
    if rng.gen_bool(0.5) {
        m = m.direct_sum(&piece(&mut rng)).expect("same algebras");
    }
    build_triangular(aa, m, ab).expect("valid corners")
}
