//! Instance fixtures shared by the criterion benchmarks.

use m5gb_core::gensys::{gen_dense_quadratic, System};

/// The dense quadratic instance with `2n` polynomials over `F_101`.
pub fn dense_instance(n: usize, seed: u64) -> System {
    gen_dense_quadratic(n, 2 * n, 101, seed).expect("valid parameters")
}
