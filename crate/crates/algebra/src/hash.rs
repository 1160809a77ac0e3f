use std::sync::OnceLock;

use ark_ff::PrimeField;
use num_bigint::BigUint;
use sha3::{Digest, Keccak256};

pub fn keccak256(data: &[u8]) -> [u8; 32] {
    Keccak256::digest(data).into()
}

fn rejection_bound<F: PrimeField>() -> BigUint {
    let p: BigUint = F::MODULUS.into();
    let two256 = BigUint::from(1u8) << 256;
    (&two256 / &p) * p
}

/// Keccak-based hash onto the scalar field with domain separation.
///
/// The digest is `keccak256(u32_be(|tag|) || tag || data [|| ctr])`; digests
/// at or above the largest multiple of `p` below 2^256 are rejected and the
/// hash is retried with counter bytes 1, 2, ... so the reduction is unbiased.
pub fn hash_to_scalar<F: PrimeField>(domain_tag: &[u8], data: &[u8]) -> F {
    // Only the two supported fields occur; cache their bounds by modulus bits.
    static BOUNDS: OnceLock<std::sync::Mutex<Vec<(u32, BigUint)>>> = OnceLock::new();
    let bits = F::MODULUS_BIT_SIZE;
    let bound = {
        let cache = BOUNDS.get_or_init(Default::default);
        let mut cache = cache.lock().expect("bound cache poisoned");
        match cache.iter().find(|(b, _)| *b == bits) {
            Some((_, v)) => v.clone(),
            None => {
                let v = rejection_bound::<F>();
                cache.push((bits, v.clone()));
                v
            }
        }
    };

    let mut preimage = Vec::with_capacity(4 + domain_tag.len() + data.len() + 1);
    preimage.extend_from_slice(&(domain_tag.len() as u32).to_be_bytes());
    preimage.extend_from_slice(domain_tag);
    preimage.extend_from_slice(data);
    let mut ctr: u8 = 0;
    loop {
        let digest = keccak256(&preimage);
        if BigUint::from_bytes_be(&digest) < bound {
            return F::from_be_bytes_mod_order(&digest);
        }
        if ctr > 0 {
            preimage.pop();
        }
        ctr = ctr.wrapping_add(1);
        preimage.push(ctr);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keccak_empty_vector() {
        assert_eq!(
            hex::encode(keccak256(b"")),
            "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470"
        );
    }

    #[test]
    fn bound_is_multiple_of_modulus() {
        let p: BigUint = ark_bn254::Fr::MODULUS.into();
        let b = rejection_bound::<ark_bn254::Fr>();
        assert_eq!(&b % &p, BigUint::from(0u8));
        assert!(b + &p > BigUint::from(1u8) << 256);
    }
}
