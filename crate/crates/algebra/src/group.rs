use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::{CurveGroup, VariableBaseMSM};
use ark_ff::Zero;

use crate::error::AlgebraError;

/// Multi-scalar multiplication `Σ s_i · P_i`.
pub fn msm<G>(scalars: &[G::ScalarField], points: &[G::Affine]) -> Result<G, AlgebraError>
where
    G: CurveGroup + VariableBaseMSM<MulBase = <G as CurveGroup>::Affine>,
{
    if scalars.len() != points.len() {
        return Err(AlgebraError::MsmLength { scalars: scalars.len(), points: points.len() });
    }
    Ok(G::msm_unchecked(points, scalars))
}

pub fn pairing<E: Pairing>(a: E::G1Affine, b: E::G2Affine) -> PairingOutput<E> {
    E::pairing(a, b)
}

/// `Π e(a_i, b_i) == 1`, evaluated with one shared final exponentiation.
pub fn pairing_product_is_identity<E: Pairing>(pairs: &[(E::G1Affine, E::G2Affine)]) -> bool {
    let (a, b): (Vec<_>, Vec<_>) = pairs.iter().cloned().unzip();
    E::multi_pairing(a, b).is_zero()
}
