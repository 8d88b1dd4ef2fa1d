//! Seeded random instances for property tests, benchmarks and CLI trials.

use rand::Rng;

use crate::polytope::{random_unimodular, LatticePolytope, Point, UnimodularMap};

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(-bound..=bound)).collect()
}

/// Random element of `SL_n(Z)` built from `steps` elementary moves.
pub fn random_sl<R: Rng>(rng: &mut R, n: usize, steps: usize) -> UnimodularMap {
    random_unimodular(n, rng.random(), steps)
}

/// Random lattice polytope in `[0, max_coord]^n` of affine dimension exactly
/// `dim`. Lower-dimensional instances are cut out by random equations with
/// coefficients in `{-1, 0, 1}`.
pub fn random_polytope<R: Rng>(
    rng: &mut R,
    n: usize,
    dim: usize,
    max_coord: i64,
    max_points: usize,
) -> LatticePolytope {
    assert!(dim <= n, "dimension {dim} exceeds ambient {n}");
    loop {
        let equations: Vec<(Vec<i64>, i64)> = (0..n - dim)
            .map(|_| {
                let a: Vec<i64> = loop {
                    let a: Vec<i64> = (0..n).map(|_| rng.random_range(-1..=1)).collect();
                    if a.iter().any(|&x| x != 0) {
                        break a;
                    }
                };
                let b = rng.random_range(0..=max_coord);
                (a, b)
            })
            .collect();
        let pool = box_points(n, max_coord)
            .into_iter()
            .filter(|x| {
                equations
                    .iter()
                    .all(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<i64>() == *b)
            })
            .collect::<Vec<_>>();
        if pool.len() < dim + 1 {
            continue;
        }
        let count = rng.random_range(dim + 1..=max_points.max(dim + 1));
        let pts: Vec<Point> = (0..count)
            .map(|_| pool[rng.random_range(0..pool.len())].clone())
            .collect();
        let p = LatticePolytope::from_points(&pts).expect("sampled points share a dimension");
        if p.dim() == Some(dim) {
            return p;
        }
    }
}

/// Random full-dimensional lattice polygon in `[0, max_coord]^2`.
pub fn random_polygon<R: Rng>(rng: &mut R, max_coord: i64) -> LatticePolytope {
    random_polytope(rng, 2, 2, max_coord, 7)
}

fn box_points(n: usize, max_coord: i64) -> Vec<Point> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max_coord).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
