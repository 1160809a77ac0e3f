//! Signatures binding a data provider's commitment to a location tag.
//!
//! A provider signs `H ‖ D` where `H` is the keccak digest of a canonical
//! location string and `D` the serialized commitment to its data polynomial.
//! The default scheme is deterministic ECDSA on secp256k1 over the keccak-256
//! prehash of that message.

use std::fmt;
use std::str::FromStr;

use k256::ecdsa::signature::hazmat::{PrehashSigner, PrehashVerifier};
use k256::ecdsa::{Signature as EcdsaSignature, SigningKey, VerifyingKey};
use rand::{CryptoRng, RngCore};
use thiserror::Error;

use zkclaim_algebra::{keccak256, PairingCurve};
use zkclaim_pcs::Commitment;

pub const SIGNATURE_BYTES: usize = 64;
pub const PUBLIC_KEY_BYTES: usize = 33;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigError {
    #[error("invalid public key encoding")]
    PublicKey,
    #[error("invalid secret key encoding")]
    SecretKey,
    #[error("signature must be {SIGNATURE_BYTES} bytes, got {0}")]
    SignatureLength(usize),
    #[error("malformed signature")]
    Signature,
    #[error("invalid location: {0}")]
    Location(String),
}

/// A sign/verify interface over byte messages. Any scheme that is correct,
/// unforgeable and non-reusable can stand in for [`Ecdsa`].
pub trait SignatureScheme {
    type SecretKey;
    type PublicKey: Clone;
    type Signature: Clone;

    fn keygen<R: RngCore + CryptoRng>(rng: &mut R) -> (Self::SecretKey, Self::PublicKey);
    fn sign(sk: &Self::SecretKey, msg: &[u8]) -> Self::Signature;
    fn verify(pk: &Self::PublicKey, msg: &[u8], sig: &Self::Signature) -> bool;
}

pub struct Ecdsa;

impl SignatureScheme for Ecdsa {
    type SecretKey = SigningKey;
    type PublicKey = PublicKey;
    type Signature = Signature;

    fn keygen<R: RngCore + CryptoRng>(rng: &mut R) -> (SigningKey, PublicKey) {
        let sk = SigningKey::random(rng);
        let pk = PublicKey(*sk.verifying_key());
        (sk, pk)
    }

    fn sign(sk: &SigningKey, msg: &[u8]) -> Signature {
        let digest = keccak256(msg);
        // RFC 6979 nonces; prehash signing only fails on an empty digest.
        let sig: EcdsaSignature = sk.sign_prehash(&digest).expect("32-byte prehash");
        Signature(sig.normalize_s().unwrap_or(sig))
    }

    fn verify(pk: &PublicKey, msg: &[u8], sig: &Signature) -> bool {
        let digest = keccak256(msg);
        pk.0.verify_prehash(&digest, &sig.0).is_ok()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct PublicKey(VerifyingKey);

impl PublicKey {
    /// SEC1 compressed encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.to_encoded_point(true).as_bytes().to_vec()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, SigError> {
        VerifyingKey::from_sec1_bytes(bytes).map(PublicKey).map_err(|_| SigError::PublicKey)
    }
}

impl fmt::Debug for PublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PublicKey({})", zkclaim_algebra::to_hex(&self.to_bytes()))
    }
}

/// `r ‖ s`, low-s normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature(EcdsaSignature);

impl Signature {
    pub fn to_bytes(&self) -> [u8; SIGNATURE_BYTES] {
        self.0.to_bytes().into()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, SigError> {
        if bytes.len() != SIGNATURE_BYTES {
            return Err(SigError::SignatureLength(bytes.len()));
        }
        EcdsaSignature::from_slice(bytes).map(Signature).map_err(|_| SigError::Signature)
    }
}

pub struct KeyPair {
    sk: SigningKey,
    pub pk: PublicKey,
}

impl KeyPair {
    pub fn generate<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        let (sk, pk) = Ecdsa::keygen(rng);
        Self { sk, pk }
    }

    /// Explicit export; nothing else in this crate serializes the secret.
    pub fn secret_bytes(&self) -> [u8; 32] {
        self.sk.to_bytes().into()
    }

    pub fn from_secret_bytes(bytes: &[u8]) -> Result<Self, SigError> {
        let sk = SigningKey::from_slice(bytes).map_err(|_| SigError::SecretKey)?;
        let pk = PublicKey(*sk.verifying_key());
        Ok(Self { sk, pk })
    }

    pub fn sign(&self, msg: &[u8]) -> Signature {
        Ecdsa::sign(&self.sk, msg)
    }
}

impl fmt::Debug for KeyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KeyPair").field("pk", &self.pk).finish_non_exhaustive()
    }
}

pub fn keygen<R: RngCore + CryptoRng>(rng: &mut R) -> KeyPair {
    KeyPair::generate(rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Epoch {
    Pre,
    Post,
}

impl Epoch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Epoch::Pre => "pre",
            Epoch::Post => "post",
        }
    }
}

impl FromStr for Epoch {
    type Err = SigError;

    fn from_str(s: &str) -> Result<Self, SigError> {
        match s {
            "pre" => Ok(Epoch::Pre),
            "post" => Ok(Epoch::Post),
            _ => Err(SigError::Location(format!("epoch must be pre or post, got {s:?}"))),
        }
    }
}

/// Where and when a raster was acquired.
#[derive(Debug, Clone, PartialEq)]
pub struct Location {
    pub lat: f64,
    pub lon: f64,
    pub epoch: Epoch,
    /// `YYYY-MM-DD`.
    pub date: String,
}

impl Location {
    pub fn new(lat: f64, lon: f64, epoch: Epoch, date: &str) -> Result<Self, SigError> {
        if !lat.is_finite() || !(-90.0..=90.0).contains(&lat) {
            return Err(SigError::Location(format!("latitude out of range: {lat}")));
        }
        if !lon.is_finite() || !(-180.0..=180.0).contains(&lon) {
            return Err(SigError::Location(format!("longitude out of range: {lon}")));
        }
        check_date(date)?;
        Ok(Self { lat, lon, epoch, date: date.to_string() })
    }

    /// `lat:<d>,lon:<d>,epoch:<pre|post>,date:<YYYY-MM-DD>`, decimals in
    /// shortest round-trip form with `-0` folded to `0`.
    pub fn canonical(&self) -> String {
        format!(
            "lat:{},lon:{},epoch:{},date:{}",
            self.lat + 0.0,
            self.lon + 0.0,
            self.epoch.as_str(),
            self.date
        )
    }

    pub fn tag(&self) -> LocationTag {
        LocationTag(keccak256(self.canonical().as_bytes()))
    }
}

fn check_date(date: &str) -> Result<(), SigError> {
    let bad = || SigError::Location(format!("date must be YYYY-MM-DD, got {date:?}"));
    let parts: Vec<&str> = date.split('-').collect();
    if parts.len() != 3 || parts[0].len() != 4 || parts[1].len() != 2 || parts[2].len() != 2 {
        return Err(bad());
    }
    if !parts.iter().all(|p| p.bytes().all(|b| b.is_ascii_digit())) {
        return Err(bad());
    }
    let month: u32 = parts[1].parse().map_err(|_| bad())?;
    let day: u32 = parts[2].parse().map_err(|_| bad())?;
    if !(1..=12).contains(&month) || !(1..=31).contains(&day) {
        return Err(bad());
    }
    Ok(())
}

/// `H = keccak256(canonical location)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocationTag(pub [u8; 32]);

impl LocationTag {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

/// `H ‖ D` as signed by a provider.
pub fn bundle_message<E: PairingCurve>(h: &LocationTag, d: &Commitment<E>) -> Vec<u8> {
    let mut msg = h.0.to_vec();
    msg.extend_from_slice(&d.to_bytes());
    msg
}

pub fn sign_data_bundle<E: PairingCurve>(kp: &KeyPair, h: &LocationTag, d: &Commitment<E>) -> Signature {
    kp.sign(&bundle_message(h, d))
}

pub fn verify_data_bundle<E: PairingCurve>(
    pk: &PublicKey,
    h: &LocationTag,
    d: &Commitment<E>,
    sig: &Signature,
) -> bool {
    Ecdsa::verify(pk, &bundle_message(h, d), sig)
}
