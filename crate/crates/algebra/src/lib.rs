//! Pairing-friendly group and scalar-field arithmetic.
//!
//! Arithmetic is delegated to arkworks; this crate pins the byte encodings
//! (big-endian coordinates, EIP-197 ordering for G2), the subgroup checks on
//! decoding, and the keccak-based `hash_to_scalar` used by every transcript.

mod curve;
mod error;
mod field;
mod group;
mod hash;

pub use curve::{CurveId, PairingCurve};
pub use error::AlgebraError;
pub use field::{scalar_arith, scalar_from_bytes, scalar_from_i64, scalar_to_bytes, ScalarOp};
pub use group::{msm, pairing, pairing_product_is_identity};
pub use hash::{hash_to_scalar, keccak256};

pub use ark_bls12_381::Bls12_381;
pub use ark_bn254::Bn254;

/// Scalar field of a pairing curve.
pub type Fr<E> = <E as ark_ec::pairing::Pairing>::ScalarField;
/// Affine G1 element.
pub type G1<E> = <E as ark_ec::pairing::Pairing>::G1Affine;
/// Affine G2 element.
pub type G2<E> = <E as ark_ec::pairing::Pairing>::G2Affine;
/// Projective G1 element.
pub type G1Proj<E> = <E as ark_ec::pairing::Pairing>::G1;
/// Projective G2 element.
pub type G2Proj<E> = <E as ark_ec::pairing::Pairing>::G2;
/// Target group element.
pub type Gt<E> = ark_ec::pairing::PairingOutput<E>;

/// Hex-encode with the lowercase `0x` prefix used in every JSON artifact.
pub fn to_hex(bytes: &[u8]) -> String {
    format!("0x{}", hex::encode(bytes))
}

/// Inverse of [`to_hex`]; the `0x` prefix is optional.
pub fn from_hex(s: &str) -> Result<Vec<u8>, AlgebraError> {
    let body = s.strip_prefix("0x").unwrap_or(s);
    hex::decode(body).map_err(|e| AlgebraError::Hex(e.to_string()))
}
