use zkclaim_algebra::{Fr, PairingCurve};
use zkclaim_pcs::{rkzg_commit, Commitment, Srs, VerifierKey};
use zkclaim_poly::LaurentPoly;
use zkclaim_sigs::{sign_data_bundle, verify_data_bundle, KeyPair, LocationTag, PublicKey, Signature};

use crate::error::SonicError;

/// `d[X] = Σ_{t=1}^{m} d_t X^t`.
pub fn data_poly<F: ark_ff::Field>(values: &[F]) -> LaurentPoly<F> {
    LaurentPoly::from_terms(values.iter().enumerate().map(|(t, v)| (t as i64 + 1, *v)))
}

/// Everything a prover receives from one data provider.
#[derive(Debug, Clone)]
pub struct DataSource<E: PairingCurve> {
    pub id: String,
    pub values: Vec<Fr<E>>,
    /// The provider's own reference string; other sources never see it.
    pub srs: Srs<E>,
    pub commitment: Commitment<E>,
    pub tag: LocationTag,
    pub signature: Signature,
    pub pk: PublicKey,
}

impl<E: PairingCurve> DataSource<E> {
    /// Commit under `srs` and sign `H ‖ D`.
    pub fn create(
        id: &str,
        values: Vec<Fr<E>>,
        srs: Srs<E>,
        keys: &KeyPair,
        tag: LocationTag,
    ) -> Result<Self, SonicError> {
        let commitment = rkzg_commit(&srs, &data_poly(&values))?;
        let signature = sign_data_bundle(keys, &tag, &commitment);
        Ok(Self { id: id.to_string(), values, srs, commitment, tag, signature, pk: keys.pk })
    }

    pub fn poly(&self) -> LaurentPoly<Fr<E>> {
        data_poly(&self.values)
    }

    pub fn signature_valid(&self) -> bool {
        verify_data_bundle(&self.pk, &self.tag, &self.commitment, &self.signature)
    }

    pub fn public(&self) -> SourcePublic<E> {
        SourcePublic { pk: self.pk, tag: self.tag, vk: self.srs.vk() }
    }
}

/// What the verifier trusts about a source: its key, the expected location
/// tag, and its verifier key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourcePublic<E: PairingCurve> {
    pub pk: PublicKey,
    pub tag: LocationTag,
    pub vk: VerifierKey<E>,
}
