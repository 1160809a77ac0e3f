use std::fmt;
use std::str::FromStr;

use ark_ec::pairing::Pairing;
use ark_ec::AffineRepr;
use ark_ff::{BigInteger, PrimeField};

use crate::error::AlgebraError;

/// Selectable pairing parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveId {
    /// alt_bn128, the curve behind Ethereum's pairing precompile.
    Bn254,
    Bls12_381,
}

impl CurveId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveId::Bn254 => "bn254",
            CurveId::Bls12_381 => "bls12-381",
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            CurveId::Bn254 => 1,
            CurveId::Bls12_381 => 2,
        }
    }

    pub fn from_code(code: u8) -> Result<Self, AlgebraError> {
        match code {
            1 => Ok(CurveId::Bn254),
            2 => Ok(CurveId::Bls12_381),
            other => Err(AlgebraError::UnknownCurve(other.to_string())),
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CurveId {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bn254" | "alt_bn128" | "bn128" => Ok(CurveId::Bn254),
            "bls12-381" | "bls12_381" | "bls" => Ok(CurveId::Bls12_381),
            _ => Err(AlgebraError::UnknownCurve(s.to_string())),
        }
    }
}

/// A pairing engine together with its wire encoding.
///
/// G1 encodes as `x || y`, G2 as `x.c1 || x.c0 || y.c1 || y.c0`, each
/// coordinate big-endian and `COORD_BYTES` wide. The identity is all zeros.
pub trait PairingCurve: Pairing {
    const ID: CurveId;
    const COORD_BYTES: usize;
    const G1_BYTES: usize = 2 * Self::COORD_BYTES;
    const G2_BYTES: usize = 4 * Self::COORD_BYTES;
    const SCALAR_BYTES: usize = 32;

    fn g1_to_bytes(p: &Self::G1Affine) -> Vec<u8>;
    fn g1_from_bytes(bytes: &[u8]) -> Result<Self::G1Affine, AlgebraError>;
    fn g2_to_bytes(p: &Self::G2Affine) -> Vec<u8>;
    fn g2_from_bytes(bytes: &[u8]) -> Result<Self::G2Affine, AlgebraError>;
}

fn coord_to_bytes<F: PrimeField>(f: &F, width: usize, out: &mut Vec<u8>) {
    let be = f.into_bigint().to_bytes_be();
    // BigInt limbs may be wider than the coordinate slot; strip the padding.
    out.extend_from_slice(&be[be.len() - width..]);
}

fn coord_from_bytes<F: PrimeField>(bytes: &[u8]) -> Result<F, AlgebraError> {
    let f = F::from_be_bytes_mod_order(bytes);
    let mut back = Vec::with_capacity(bytes.len());
    coord_to_bytes(&f, bytes.len(), &mut back);
    if back != bytes {
        return Err(AlgebraError::NonCanonicalCoordinate);
    }
    Ok(f)
}

fn check_len(bytes: &[u8], expected: usize) -> Result<(), AlgebraError> {
    if bytes.len() != expected {
        return Err(AlgebraError::Length { expected, got: bytes.len() });
    }
    Ok(())
}

macro_rules! impl_pairing_curve {
    ($engine:ty, $id:expr, $width:expr, $fq:ty, $fq2:ty, $g1:ty, $g2:ty) => {
        impl PairingCurve for $engine {
            const ID: CurveId = $id;
            const COORD_BYTES: usize = $width;

            fn g1_to_bytes(p: &$g1) -> Vec<u8> {
                let mut out = Vec::with_capacity(2 * $width);
                match p.xy() {
                    None => out.resize(2 * $width, 0),
                    Some((x, y)) => {
                        coord_to_bytes(x, $width, &mut out);
                        coord_to_bytes(y, $width, &mut out);
                    }
                }
                out
            }

            fn g1_from_bytes(bytes: &[u8]) -> Result<$g1, AlgebraError> {
                check_len(bytes, 2 * $width)?;
                if bytes.iter().all(|b| *b == 0) {
                    return Ok(<$g1>::zero());
                }
                let x: $fq = coord_from_bytes(&bytes[..$width])?;
                let y: $fq = coord_from_bytes(&bytes[$width..])?;
                let p = <$g1>::new_unchecked(x, y);
                if !p.is_on_curve() {
                    return Err(AlgebraError::NotOnCurve);
                }
                if !p.is_in_correct_subgroup_assuming_on_curve() {
                    return Err(AlgebraError::NotInSubgroup);
                }
                Ok(p)
            }

            fn g2_to_bytes(p: &$g2) -> Vec<u8> {
                let mut out = Vec::with_capacity(4 * $width);
                match p.xy() {
                    None => out.resize(4 * $width, 0),
                    Some((x, y)) => {
                        coord_to_bytes(&x.c1, $width, &mut out);
                        coord_to_bytes(&x.c0, $width, &mut out);
                        coord_to_bytes(&y.c1, $width, &mut out);
                        coord_to_bytes(&y.c0, $width, &mut out);
                    }
                }
                out
            }

            fn g2_from_bytes(bytes: &[u8]) -> Result<$g2, AlgebraError> {
                check_len(bytes, 4 * $width)?;
                if bytes.iter().all(|b| *b == 0) {
                    return Ok(<$g2>::zero());
                }
                let w = $width;
                let x1: $fq = coord_from_bytes(&bytes[..w])?;
                let x0: $fq = coord_from_bytes(&bytes[w..2 * w])?;
                let y1: $fq = coord_from_bytes(&bytes[2 * w..3 * w])?;
                let y0: $fq = coord_from_bytes(&bytes[3 * w..])?;
                let p = <$g2>::new_unchecked(<$fq2>::new(x0, x1), <$fq2>::new(y0, y1));
                if !p.is_on_curve() {
                    return Err(AlgebraError::NotOnCurve);
                }
                if !p.is_in_correct_subgroup_assuming_on_curve() {
                    return Err(AlgebraError::NotInSubgroup);
                }
                Ok(p)
            }
        }
    };
}

impl_pairing_curve!(
    ark_bn254::Bn254,
    CurveId::Bn254,
    32,
    ark_bn254::Fq,
    ark_bn254::Fq2,
    ark_bn254::G1Affine,
    ark_bn254::G2Affine
);

impl_pairing_curve!(
    ark_bls12_381::Bls12_381,
    CurveId::Bls12_381,
    48,
    ark_bls12_381::Fq,
    ark_bls12_381::Fq2,
    ark_bls12_381::G1Affine,
    ark_bls12_381::G2Affine
);
