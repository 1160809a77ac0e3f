use ark_ec::pairing::Pairing;
use ark_ec::{AffineRepr, CurveGroup};

use zkclaim_algebra::pairing_product_is_identity;

use crate::trace::{Phase, VerifyTrace};

/// A pairing-product equation `Π e(a_i, b_i) = 1`.
#[derive(Debug, Clone)]
pub struct PairingCheck<E: Pairing> {
    pairs: Vec<(E::G1Affine, E::G2Affine)>,
}

impl<E: Pairing> Default for PairingCheck<E> {
    fn default() -> Self {
        Self { pairs: Vec::new() }
    }
}

impl<E: Pairing> PairingCheck<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, a: E::G1Affine, b: E::G2Affine) {
        self.pairs.push((a, b));
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(E::G1Affine, E::G2Affine)] {
        &self.pairs
    }

    /// Fold `other^rho` into this equation: both hold iff the product holds,
    /// except with probability about 1/p over the choice of `rho`.
    pub fn merge_scaled(&mut self, other: &PairingCheck<E>, rho: E::ScalarField, trace: &mut VerifyTrace) {
        trace.g1_mul(other.pairs.len());
        for (a, b) in &other.pairs {
            self.pairs.push(((a.into_group() * rho).into_affine(), *b));
        }
    }

    /// Evaluate as a single pairing-product equation, recording it in `trace`
    /// under [`Phase::PairingCheck`].
    pub fn verify(&self, trace: &mut VerifyTrace) -> bool {
        let prev = trace.phase();
        trace.set_phase(Phase::PairingCheck);
        trace.pairing_equation(self.pairs.len());
        trace.set_phase(prev);
        pairing_product_is_identity::<E>(&self.pairs)
    }
}
