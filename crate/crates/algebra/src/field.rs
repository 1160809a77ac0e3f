use ark_ff::{BigInteger, Field, PrimeField};

use crate::error::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    /// Unary: `b` is ignored.
    Inv,
    /// Unary: `b` is ignored.
    Neg,
}

/// Canonical residue arithmetic; `Inv` of zero is an error.
pub fn scalar_arith<F: Field>(a: F, b: F, op: ScalarOp) -> Result<F, AlgebraError> {
    Ok(match op {
        ScalarOp::Add => a + b,
        ScalarOp::Sub => a - b,
        ScalarOp::Mul => a * b,
        ScalarOp::Inv => a.inverse().ok_or(AlgebraError::InverseOfZero)?,
        ScalarOp::Neg => -a,
    })
}

/// 32-byte big-endian encoding.
pub fn scalar_to_bytes<F: PrimeField>(f: &F) -> [u8; 32] {
    let be = f.into_bigint().to_bytes_be();
    let mut out = [0u8; 32];
    out[32 - be.len()..].copy_from_slice(&be);
    out
}

/// Decode a 32-byte big-endian scalar, rejecting values `>= p`.
pub fn scalar_from_bytes<F: PrimeField>(bytes: &[u8]) -> Result<F, AlgebraError> {
    if bytes.len() != 32 {
        return Err(AlgebraError::Length { expected: 32, got: bytes.len() });
    }
    let f = F::from_be_bytes_mod_order(bytes);
    if scalar_to_bytes(&f)[..] != bytes[..] {
        return Err(AlgebraError::NonCanonicalScalar);
    }
    Ok(f)
}

/// Embed a signed machine integer.
pub fn scalar_from_i64<F: PrimeField>(v: i64) -> F {
    if v < 0 {
        -F::from(v.unsigned_abs())
    } else {
        F::from(v as u64)
    }
}
