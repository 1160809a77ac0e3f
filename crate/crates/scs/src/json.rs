use ark_ff::PrimeField;
use serde::{Deserialize, Serialize};
use zkclaim_algebra::{from_hex, scalar_from_bytes, scalar_to_bytes, to_hex};

use crate::{ConstraintSystem, ScsError, SparseVec};

/// Debug/fixture form: counts plus sparse `(index, hex scalar)` triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystemJson {
    pub n: usize,
    pub q: usize,
    pub linear: Vec<LinearJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearJson {
    pub u: Vec<(usize, String)>,
    pub v: Vec<(usize, String)>,
    pub w: Vec<(usize, String)>,
    pub k: String,
}

fn enc<F: PrimeField>(f: &F) -> String {
    to_hex(&scalar_to_bytes(f))
}

fn dec<F: PrimeField>(s: &str) -> Result<F, ScsError> {
    let bytes = from_hex(s).map_err(|e| ScsError::Format(e.to_string()))?;
    scalar_from_bytes(&bytes).map_err(|e| ScsError::Format(e.to_string()))
}

fn enc_vec<F: PrimeField>(v: &SparseVec<F>) -> Vec<(usize, String)> {
    v.iter().map(|(i, c)| (*i, enc(c))).collect()
}

fn dec_vec<F: PrimeField>(v: &[(usize, String)]) -> Result<SparseVec<F>, ScsError> {
    v.iter().map(|(i, s)| Ok((*i, dec(s)?))).collect()
}

impl<F: PrimeField> ConstraintSystem<F> {
    pub fn to_json(&self) -> ConstraintSystemJson {
        ConstraintSystemJson {
            n: self.n,
            q: self.q(),
            linear: self
                .linear
                .iter()
                .map(|lc| LinearJson { u: enc_vec(&lc.u), v: enc_vec(&lc.v), w: enc_vec(&lc.w), k: enc(&lc.k) })
                .collect(),
        }
    }

    pub fn from_json(json: &ConstraintSystemJson) -> Result<Self, ScsError> {
        if json.q != json.linear.len() {
            return Err(ScsError::Format(format!("q = {} but {} constraints listed", json.q, json.linear.len())));
        }
        let mut cs = ConstraintSystem::new();
        cs.add_multiplications(json.n);
        for lc in &json.linear {
            cs.add_linear(dec_vec(&lc.u)?, dec_vec(&lc.v)?, dec_vec(&lc.w)?, dec(&lc.k)?)?;
        }
        Ok(cs)
    }
}
