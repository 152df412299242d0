//! Seeded generators for graphs and matrices.

use girthbound_core::{BipartiteGraph, NonnegMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const MAX_DENOMINATOR: i64 = 64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each of the `v * w` pairs is an edge independently with probability `p`.
pub fn bipartite<R: Rng>(rng: &mut R, v: usize, w: usize, p: f64) -> BipartiteGraph {
    let pairs = (0..v).flat_map(|i| (0..w).map(move |j| (i, j))).collect::<Vec<_>>();
    let chosen = pairs.into_iter().filter(|_| rng.gen_bool(p));
    BipartiteGraph::from_edges(v, w, chosen).expect("pairs are distinct and in range")
}

/// Class sizes uniform in `1..=max_side`, density uniform in `[0, 1]`.
pub fn bipartite_any<R: Rng>(rng: &mut R, max_side: usize) -> BipartiteGraph {
    let v = rng.gen_range(1..=max_side);
    let w = rng.gen_range(1..=max_side);
    let p = rng.gen_range(0.0..=1.0);
    bipartite(rng, v, w, p)
}

/// A uniform rational in `[0, max]` with denominator at most [`MAX_DENOMINATOR`].
pub fn rational<R: Rng>(rng: &mut R, max: i64) -> BigRational {
    let q = rng.gen_range(1..=MAX_DENOMINATOR);
    let p = rng.gen_range(0..=max * q);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Entries are independent [`rational`] draws in `[0, max_entry]`.
pub fn matrix<R: Rng>(rng: &mut R, v: usize, w: usize, max_entry: i64) -> NonnegMatrix {
    let rows = (0..v).map(|_| (0..w).map(|_| rational(rng, max_entry)).collect()).collect();
    NonnegMatrix::new(rows).expect("entries are nonnegative and rows equal length")
}

/// `(rho, gamma)` uniform on the admissible box: every row sum `>= 2 rho`
/// and every column sum `>= 2 gamma`.
pub fn admissible_parameters<R: Rng>(rng: &mut R, m: &NonnegMatrix) -> (BigRational, BigRational) {
    let min_row = m.row_sums().iter().min().cloned().expect("matrix is nonempty");
    let min_col = m.col_sums().iter().min().cloned().expect("matrix is nonempty");
    let mut fraction = || BigRational::new(BigInt::from(rng.gen_range(0..=MAX_DENOMINATOR)), BigInt::from(2 * MAX_DENOMINATOR));
    (min_row * fraction(), min_col * fraction())
}
