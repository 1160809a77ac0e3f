use ark_ff::{BigInteger, PrimeField};
use serde::{Deserialize, Serialize};
use zkclaim_algebra::{from_hex, to_hex, Fr, PairingCurve};
use zkclaim_pcs::{Commitment, Scheme, Srs};
use zkclaim_sigs::{LocationTag, PublicKey, Signature};
use zkclaim_sonic::DataSource;

use crate::BushfireError;

/// Serialized data bundle as a provider hands it to the insuree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataBundleJson {
    #[serde(default = "version_one")]
    pub version: u32,
    pub source_id: String,
    #[serde(rename = "H")]
    pub h: String,
    pub commitment: String,
    pub signature: String,
    pub pk: String,
    pub srs_digest: String,
    pub values: Vec<u64>,
}

fn version_one() -> u32 {
    1
}

fn to_u64<F: PrimeField>(f: &F) -> Option<u64> {
    let bytes = f.into_bigint().to_bytes_be();
    let (high, low) = bytes.split_at(bytes.len() - 8);
    high.iter().all(|b| *b == 0).then(|| u64::from_be_bytes(low.try_into().unwrap()))
}

impl DataBundleJson {
    pub fn from_source<E: PairingCurve>(src: &DataSource<E>) -> Result<Self, BushfireError> {
        let values = src
            .values
            .iter()
            .map(to_u64)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| BushfireError::Bundle("value exceeds u64".into()))?;
        Ok(Self {
            version: 1,
            source_id: src.id.clone(),
            h: to_hex(src.tag.as_bytes()),
            commitment: to_hex(&src.commitment.to_bytes()),
            signature: to_hex(&src.signature.to_bytes()),
            pk: to_hex(&src.pk.to_bytes()),
            srs_digest: to_hex(&src.srs.digest()),
            values,
        })
    }

    /// Rebuild the source under the provider's SRS. The SRS digest and the
    /// commitment must both match what the bundle claims.
    pub fn into_source<E: PairingCurve>(&self, srs: Srs<E>) -> Result<DataSource<E>, BushfireError> {
        let bad = |what: &str| BushfireError::Bundle(format!("{} in bundle {}", what, self.source_id));
        if from_hex(&self.srs_digest).map_err(|_| bad("malformed srs_digest"))? != srs.digest() {
            return Err(bad("srs digest mismatch"));
        }
        let h: [u8; 32] = from_hex(&self.h)
            .ok()
            .and_then(|b| b.try_into().ok())
            .ok_or_else(|| bad("malformed H"))?;
        let point = E::g1_from_bytes(&from_hex(&self.commitment).map_err(|_| bad("malformed commitment"))?)
            .map_err(|_| bad("malformed commitment"))?;
        let signature = Signature::from_bytes(&from_hex(&self.signature).map_err(|_| bad("malformed signature"))?)
            .map_err(|_| bad("malformed signature"))?;
        let pk = PublicKey::from_bytes(&from_hex(&self.pk).map_err(|_| bad("malformed pk"))?).map_err(|_| bad("malformed pk"))?;
        let src = DataSource {
            id: self.source_id.clone(),
            values: self.values.iter().map(|v| Fr::<E>::from(*v)).collect(),
            srs,
            commitment: Commitment { point, scheme: Scheme::Rkzg },
            tag: LocationTag(h),
            signature,
            pk,
        };
        let recomputed = zkclaim_pcs::rkzg_commit(&src.srs, &src.poly()).map_err(|_| bad("values exceed srs degree"))?;
        if recomputed.point != src.commitment.point {
            return Err(bad("commitment does not match values"));
        }
        Ok(src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, BushfireError> {
        serde_json::from_str(text).map_err(|e| BushfireError::Bundle(e.to_string()))
    }
}
