use std::fmt;
use std::str::FromStr;

use ark_ec::{AffineRepr, CurveGroup};
use ark_ff::One;
use serde::{Deserialize, Serialize};
use zkclaim_algebra::{from_hex, scalar_from_bytes, scalar_to_bytes, to_hex, CurveId, Fr, PairingCurve, G1};
use zkclaim_sigs::{PublicKey, Signature};

use crate::error::SonicError;

pub const PROOF_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Single data-free circuit, seven individual openings.
    Basic,
    /// Signed data sources, individual openings.
    Dat,
    /// Signed data sources, one batched opening.
    Ev,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Dat => "dat",
            Variant::Ev => "ev",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = SonicError;

    fn from_str(s: &str) -> Result<Self, SonicError> {
        match s {
            "basic" => Ok(Variant::Basic),
            "dat" => Ok(Variant::Dat),
            "ev" => Ok(Variant::Ev),
            _ => Err(SonicError::Format(format!("unknown variant {s:?}"))),
        }
    }
}

/// The seven scalars every variant opens:
/// `r₁ = r[z,1]`, `r₂ = r[zy,1]`, `t = t[z,y]`, `k = k̂[y]`,
/// `s = s[z,y]`, `s₁ = s[1,y]` (from `S_X`), `s₂ = s[1,y]` (from `S_Y`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreEvals<F> {
    pub r1: F,
    pub r2: F,
    pub t: F,
    pub k: F,
    pub s: F,
    pub s1: F,
    pub s2: F,
}

impl<F: Copy> CoreEvals<F> {
    fn to_vec(self) -> Vec<F> {
        vec![self.r1, self.r2, self.t, self.k, self.s, self.s1, self.s2]
    }

    fn from_slice(v: &[F]) -> Self {
        Self { r1: v[0], r2: v[1], t: v[2], k: v[3], s: v[4], s1: v[5], s2: v[6] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicProof<E: PairingCurve> {
    pub r: G1<E>,
    pub t: G1<E>,
    pub s_x: G1<E>,
    pub evals: CoreEvals<Fr<E>>,
    /// Witnesses for `r@z, r@zy, t@z, k̂@y, s_X@z, s_X@1, s_Y@y`.
    pub openings: [G1<E>; 7],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataProof<E: PairingCurve> {
    pub d: Vec<G1<E>>,
    pub r: G1<E>,
    pub r_tilde: G1<E>,
    pub t: G1<E>,
    pub s_x: G1<E>,
    pub evals: CoreEvals<Fr<E>>,
    pub r_tilde_val: Fr<E>,
    pub d_vals: Vec<Fr<E>>,
    pub openings: [G1<E>; 7],
    pub r_tilde_opening: G1<E>,
    /// Each under its source's own reference string.
    pub d_openings: Vec<G1<E>>,
    pub signatures: Vec<Signature>,
    pub public_keys: Vec<PublicKey>,
}

/// Number of polynomials in the main batch and their point-set sizes:
/// `r̃{z}, r{z,zy}, t{z}, k̂{y}, s_X{z,1}, s_Y{y}`.
pub const BATCH_SET_SIZES: [usize; 6] = [1, 2, 1, 1, 2, 1];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchedProof<E: PairingCurve> {
    pub d: Vec<G1<E>>,
    pub r: G1<E>,
    pub r_tilde: G1<E>,
    pub t: G1<E>,
    pub s_x: G1<E>,
    pub r_tilde_val: Fr<E>,
    pub evals: CoreEvals<Fr<E>>,
    pub d_vals: Vec<Fr<E>>,
    /// Interpolant coefficients, ascending, one list per batch member,
    /// zero-padded to the size of its point set.
    pub gammas: Vec<Vec<Fr<E>>>,
    pub pi1: G1<E>,
    pub pi2: G1<E>,
    pub d_openings: Vec<G1<E>>,
    pub signatures: Vec<Signature>,
    pub public_keys: Vec<PublicKey>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SonicProof<E: PairingCurve> {
    Basic(BasicProof<E>),
    Dat(DataProof<E>),
    Ev(BatchedProof<E>),
}

/// A proof flattened by element kind; each list is in transcript order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofParts<E: PairingCurve> {
    pub variant: Variant,
    pub sources: usize,
    pub points: Vec<G1<E>>,
    pub scalars: Vec<Fr<E>>,
    pub gammas: Vec<Vec<Fr<E>>>,
    pub signatures: Vec<Signature>,
    pub public_keys: Vec<PublicKey>,
}

impl<E: PairingCurve> ProofParts<E> {
    /// Points absorbed before the scalars; the rest are opening witnesses.
    fn leading_points(&self) -> usize {
        match self.variant {
            Variant::Basic => 3,
            Variant::Dat | Variant::Ev => self.sources + 4,
        }
    }

    fn expected_counts(variant: Variant, j: usize) -> (usize, usize, usize) {
        match variant {
            Variant::Basic => (10, 7, 0),
            Variant::Dat => (j + 4 + 7 + 1 + j, 8 + j, j),
            Variant::Ev => (j + 4 + 2 + j, 8 + j, j),
        }
    }

    fn check_shape(&self) -> Result<(), SonicError> {
        let (p, s, sig) = Self::expected_counts(self.variant, self.sources);
        let gammas_ok = match self.variant {
            Variant::Ev => {
                self.gammas.len() == BATCH_SET_SIZES.len()
                    && self.gammas.iter().zip(BATCH_SET_SIZES).all(|(g, n)| g.len() == n)
            }
            _ => self.gammas.is_empty(),
        };
        if self.points.len() != p
            || self.scalars.len() != s
            || self.signatures.len() != sig
            || self.public_keys.len() != sig
            || !gammas_ok
        {
            return Err(SonicError::Format(format!(
                "{} proof with {} sources: {} points, {} scalars, {} signatures",
                self.variant,
                self.sources,
                self.points.len(),
                self.scalars.len(),
                self.signatures.len()
            )));
        }
        if self.variant == Variant::Basic && self.sources != 0 {
            return Err(SonicError::Format("basic proofs carry no sources".into()));
        }
        Ok(())
    }

    /// Canonical encoding in absorb order: leading commitments, scalars,
    /// γ lists, opening witnesses, signatures.
    pub fn to_bytes(&self) -> Vec<u8> {
        let lead = self.leading_points();
        let mut out = Vec::new();
        for p in &self.points[..lead] {
            out.extend(E::g1_to_bytes(p));
        }
        for s in self.scalars.iter().chain(self.gammas.iter().flatten()) {
            out.extend(scalar_to_bytes(s));
        }
        for p in &self.points[lead..] {
            out.extend(E::g1_to_bytes(p));
        }
        for s in &self.signatures {
            out.extend(s.to_bytes());
        }
        out
    }

    pub fn into_proof(self) -> Result<SonicProof<E>, SonicError> {
        self.check_shape()?;
        let j = self.sources;
        let p = &self.points;
        let s = &self.scalars;
        Ok(match self.variant {
            Variant::Basic => SonicProof::Basic(BasicProof {
                r: p[0],
                t: p[1],
                s_x: p[2],
                evals: CoreEvals::from_slice(s),
                openings: p[3..10].try_into().expect("shape checked"),
            }),
            Variant::Dat => SonicProof::Dat(DataProof {
                d: p[..j].to_vec(),
                r: p[j],
                r_tilde: p[j + 1],
                t: p[j + 2],
                s_x: p[j + 3],
                evals: CoreEvals::from_slice(s),
                r_tilde_val: s[7],
                d_vals: s[8..].to_vec(),
                openings: p[j + 4..j + 11].try_into().expect("shape checked"),
                r_tilde_opening: p[j + 11],
                d_openings: p[j + 12..].to_vec(),
                signatures: self.signatures,
                public_keys: self.public_keys,
            }),
            Variant::Ev => SonicProof::Ev(BatchedProof {
                d: p[..j].to_vec(),
                r: p[j],
                r_tilde: p[j + 1],
                t: p[j + 2],
                s_x: p[j + 3],
                r_tilde_val: s[0],
                evals: CoreEvals::from_slice(&s[1..8]),
                d_vals: s[8..].to_vec(),
                gammas: self.gammas,
                pi1: p[j + 4],
                pi2: p[j + 5],
                d_openings: p[j + 6..].to_vec(),
                signatures: self.signatures,
                public_keys: self.public_keys,
            }),
        })
    }
}

impl<E: PairingCurve> SonicProof<E> {
    pub fn variant(&self) -> Variant {
        match self {
            SonicProof::Basic(_) => Variant::Basic,
            SonicProof::Dat(_) => Variant::Dat,
            SonicProof::Ev(_) => Variant::Ev,
        }
    }

    pub fn sources(&self) -> usize {
        match self {
            SonicProof::Basic(_) => 0,
            SonicProof::Dat(p) => p.d.len(),
            SonicProof::Ev(p) => p.d.len(),
        }
    }

    pub fn parts(&self) -> ProofParts<E> {
        match self {
            SonicProof::Basic(p) => {
                let mut points = vec![p.r, p.t, p.s_x];
                points.extend(p.openings);
                ProofParts {
                    variant: Variant::Basic,
                    sources: 0,
                    points,
                    scalars: p.evals.to_vec(),
                    gammas: Vec::new(),
                    signatures: Vec::new(),
                    public_keys: Vec::new(),
                }
            }
            SonicProof::Dat(p) => {
                let mut points = p.d.clone();
                points.extend([p.r, p.r_tilde, p.t, p.s_x]);
                points.extend(p.openings);
                points.push(p.r_tilde_opening);
                points.extend(&p.d_openings);
                let mut scalars = p.evals.to_vec();
                scalars.push(p.r_tilde_val);
                scalars.extend(&p.d_vals);
                ProofParts {
                    variant: Variant::Dat,
                    sources: p.d.len(),
                    points,
                    scalars,
                    gammas: Vec::new(),
                    signatures: p.signatures.clone(),
                    public_keys: p.public_keys.clone(),
                }
            }
            SonicProof::Ev(p) => {
                let mut points = p.d.clone();
                points.extend([p.r, p.r_tilde, p.t, p.s_x, p.pi1, p.pi2]);
                points.extend(&p.d_openings);
                let mut scalars = vec![p.r_tilde_val];
                scalars.extend(p.evals.to_vec());
                scalars.extend(&p.d_vals);
                ProofParts {
                    variant: Variant::Ev,
                    sources: p.d.len(),
                    points,
                    scalars,
                    gammas: p.gammas.clone(),
                    signatures: p.signatures.clone(),
                    public_keys: p.public_keys.clone(),
                }
            }
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.parts().to_bytes()
    }

    /// Group elements, scalars (γ entries included) and signatures.
    pub fn element_count(&self) -> usize {
        let p = self.parts();
        p.points.len() + p.scalars.len() + p.gammas.iter().map(Vec::len).sum::<usize>() + p.signatures.len()
    }

    /// Size in 32-byte words.
    pub fn word_count(&self) -> usize {
        self.to_bytes().len().div_ceil(32)
    }

    /// Every proof obtained by perturbing exactly one element, labelled by
    /// the element it changes.
    pub fn mutations(&self) -> Vec<(String, SonicProof<E>)> {
        let base = self.parts();
        let mut out = Vec::new();
        let mut push = |label: String, parts: ProofParts<E>| {
            out.push((label, parts.into_proof().expect("shape preserved")));
        };
        for i in 0..base.points.len() {
            let mut m = base.clone();
            m.points[i] = (m.points[i].into_group() + G1::<E>::generator()).into_affine();
            push(format!("point[{i}]"), m);
        }
        for i in 0..base.scalars.len() {
            let mut m = base.clone();
            m.scalars[i] += Fr::<E>::one();
            push(format!("scalar[{i}]"), m);
        }
        for (i, g) in base.gammas.iter().enumerate() {
            for c in 0..g.len() {
                let mut m = base.clone();
                m.gammas[i][c] += Fr::<E>::one();
                push(format!("gamma[{i}][{c}]"), m);
            }
        }
        for i in 0..base.signatures.len() {
            let mut m = base.clone();
            m.signatures[i] = flip_signature(&m.signatures[i]);
            push(format!("signature[{i}]"), m);
        }
        out
    }

    pub fn to_json(&self) -> ProofJson {
        let p = self.parts();
        let hex_scalars = |v: &[Fr<E>]| v.iter().map(|s| to_hex(&scalar_to_bytes(s))).collect::<Vec<_>>();
        ProofJson {
            version: PROOF_VERSION,
            variant: p.variant.as_str().to_string(),
            curve: E::ID.as_str().to_string(),
            sources: p.sources,
            points: p.points.iter().map(|q| to_hex(&E::g1_to_bytes(q))).collect(),
            scalars: hex_scalars(&p.scalars),
            gammas: p.gammas.iter().map(|g| hex_scalars(g)).collect(),
            signatures: p.signatures.iter().map(|s| to_hex(&s.to_bytes())).collect(),
            public_keys: p.public_keys.iter().map(|k| to_hex(&k.to_bytes())).collect(),
        }
    }

    pub fn from_json(json: &ProofJson) -> Result<Self, SonicError> {
        let fmt = |e: String| SonicError::Format(e);
        if json.version != PROOF_VERSION {
            return Err(fmt(format!("unsupported proof version {}", json.version)));
        }
        let curve: CurveId = json.curve.parse().map_err(|e: zkclaim_algebra::AlgebraError| fmt(e.to_string()))?;
        if curve != E::ID {
            return Err(fmt(format!("proof is for {curve}, expected {}", E::ID)));
        }
        let bytes = |s: &str| from_hex(s).map_err(|e| fmt(e.to_string()));
        let scalar = |s: &String| -> Result<Fr<E>, SonicError> {
            scalar_from_bytes(&bytes(s)?).map_err(|e| fmt(e.to_string()))
        };
        let parts = ProofParts {
            variant: json.variant.parse()?,
            sources: json.sources,
            points: json
                .points
                .iter()
                .map(|s| E::g1_from_bytes(&bytes(s)?).map_err(|e| fmt(e.to_string())))
                .collect::<Result<_, _>>()?,
            scalars: json.scalars.iter().map(scalar).collect::<Result<_, _>>()?,
            gammas: json
                .gammas
                .iter()
                .map(|g| g.iter().map(scalar).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?,
            signatures: json
                .signatures
                .iter()
                .map(|s| Signature::from_bytes(&bytes(s)?).map_err(|e| fmt(e.to_string())))
                .collect::<Result<_, _>>()?,
            public_keys: json
                .public_keys
                .iter()
                .map(|s| PublicKey::from_bytes(&bytes(s)?).map_err(|e| fmt(e.to_string())))
                .collect::<Result<_, _>>()?,
        };
        parts.into_proof()
    }
}

/// Flip one bit of `s`, moving to the next bit if the result is not a
/// well-formed signature.
fn flip_signature(sig: &Signature) -> Signature {
    let bytes = sig.to_bytes();
    for bit in 0..256 {
        let mut b = bytes;
        b[63 - bit / 8] ^= 1 << (bit % 8);
        if let Ok(s) = Signature::from_bytes(&b) {
            return s;
        }
    }
    unreachable!("some single-bit change of s is in range")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofJson {
    pub version: u32,
    pub variant: String,
    pub curve: String,
    pub sources: usize,
    pub points: Vec<String>,
    pub scalars: Vec<String>,
    pub gammas: Vec<Vec<String>>,
    pub signatures: Vec<String>,
    pub public_keys: Vec<String>,
}
