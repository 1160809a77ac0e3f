//! Two small systems used throughout the tests.

use ark_ff::PrimeField;

use crate::{int, ConstraintSystem, Witness};

/// `w` is binary: one gate `a·b = c` with `a = b`, `a = c`, `a = w`.
pub fn binary<F: PrimeField>(w: F) -> ConstraintSystem<F> {
    let mut cs = ConstraintSystem::new();
    let i = cs.add_multiplication();
    let one = F::one();
    cs.add_linear(vec![(i, one)], vec![(i, -one)], vec![], F::zero()).expect("index in range");
    cs.add_linear(vec![(i, one)], vec![], vec![(i, -one)], F::zero()).expect("index in range");
    cs.add_linear(vec![(i, one)], vec![], vec![], w).expect("index in range");
    cs
}

/// The natural witness `(w, w, w²)`.
pub fn binary_witness<F: PrimeField>(w: F) -> Witness<F> {
    let mut wit = Witness::zeros(1);
    wit.set_product(1, w, w);
    wit
}

/// `w` has a `k`-bit decomposition. Gate `i` holds the scaled bit
/// `a_i ∈ {0, 2^{i-1}}` with `b_i = a_i − 2^{i-1}` and `c_i = 0`, and
/// `Σ a_i = w`.
pub fn bit_decomposition<F: PrimeField>(k: usize, w: F) -> ConstraintSystem<F> {
    let mut cs = ConstraintSystem::new();
    let first = cs.add_multiplications(k);
    let one = F::one();
    for j in 0..k {
        let i = first + j;
        let pow = int::<F>(1 << j);
        cs.add_linear(vec![(i, one)], vec![(i, -one)], vec![], pow).expect("index in range");
        cs.add_linear(vec![], vec![], vec![(i, one)], F::zero()).expect("index in range");
    }
    cs.add_linear((first..first + k).map(|i| (i, one)).collect(), vec![], vec![], w)
        .expect("index in range");
    cs
}

/// Witness from the scaled bits `a_i` (each 0 or `2^{i-1}`).
pub fn bit_decomposition_witness<F: PrimeField>(scaled_bits: &[u64]) -> Witness<F> {
    let mut wit = Witness::zeros(scaled_bits.len());
    for (j, a) in scaled_bits.iter().enumerate() {
        let a = F::from(*a);
        wit.set_product(j + 1, a, a - int::<F>(1 << j));
    }
    wit
}

/// Scaled bits of `w` over `k` positions.
pub fn scaled_bits(w: u64, k: usize) -> Vec<u64> {
    (0..k).map(|j| w & (1 << j)).collect()
}
