//! Fixtures shared by the benchmarks.

use lattice_tensor::polytope::{standard_simplex, unit_cube};
use lattice_tensor::sample::{random_polygon, random_polytope};
use lattice_tensor::LatticePolytope;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn simplex(n: usize) -> LatticePolytope {
    standard_simplex(n, n).expect("standard simplex")
}

pub fn cube(n: usize, k: u64) -> LatticePolytope {
    unit_cube(n)
        .and_then(|c| c.dilate(k))
        .expect("dilated cube")
}

/// Full-dimensional random polytope in `[0, 4]^n`, fixed by `seed`.
pub fn random_full(n: usize, seed: u64) -> LatticePolytope {
    random_polytope(&mut ChaCha8Rng::seed_from_u64(seed), n, n, 4, 8)
}

pub fn polygon(seed: u64, max_coord: i64) -> LatticePolytope {
    random_polygon(&mut ChaCha8Rng::seed_from_u64(seed), max_coord)
}
