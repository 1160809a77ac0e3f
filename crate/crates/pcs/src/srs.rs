use ark_ec::scalar_mul::fixed_base::FixedBase;
use ark_ec::{AffineRepr, CurveGroup, Group};
use ark_ff::{Field, PrimeField, UniformRand};
use rand::RngCore;
use serde::{Deserialize, Serialize};

use zkclaim_algebra::{
    from_hex, keccak256, pairing, to_hex, CurveId, Fr, PairingCurve, G1Proj, G2Proj, G1, G2,
};

use crate::error::PcsError;

pub const SRS_MAGIC: &[u8; 8] = b"ZKCSRS01";

/// Number of 32-byte words in the on-chain verifier subset: g (2) + h, h^α, h^{αx} (4 each).
pub const VERIFIER_SUBSET_WORDS: usize = 14;

/// Structured reference string for all three commitment schemes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Srs<E: PairingCurve> {
    d: usize,
    /// `g^{x^i}` for `i ∈ [-d, d]`, stored at index `i + d`.
    g_powers: Vec<G1<E>>,
    /// `g^{αx^i}` for `i ∈ [-d, d] \ {0}`.
    g_alpha_powers: Vec<G1<E>>,
    pub h: G2<E>,
    pub h_x: G2<E>,
    pub h_alpha: G2<E>,
    pub h_alpha_x: G2<E>,
}

/// The G1/G2 elements a verifier needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifierKey<E: PairingCurve> {
    pub g: G1<E>,
    pub h: G2<E>,
    pub h_x: G2<E>,
    pub h_alpha: G2<E>,
    pub h_alpha_x: G2<E>,
}

fn sample_trapdoor<F: Field + UniformRand, R: RngCore>(rng: &mut R) -> F {
    loop {
        let v = F::rand(rng);
        if !v.is_zero() && !v.is_one() {
            return v;
        }
    }
}

fn fixed_base_g1<E: PairingCurve>(base: G1Proj<E>, scalars: &[Fr<E>]) -> Vec<G1<E>> {
    let bits = Fr::<E>::MODULUS_BIT_SIZE as usize;
    let window = FixedBase::get_mul_window_size(scalars.len());
    let table = FixedBase::get_window_table(bits, window, base);
    let proj: Vec<G1Proj<E>> = FixedBase::msm(bits, window, &table, scalars);
    G1Proj::<E>::normalize_batch(&proj)
}

impl<E: PairingCurve> Srs<E> {
    /// Sample a trapdoor `(α, x)` from `F \ {0, 1}`, build every power, and
    /// drop the trapdoor.
    pub fn setup<R: RngCore>(d: usize, rng: &mut R) -> Result<Self, PcsError> {
        if d == 0 {
            return Err(PcsError::ZeroDegree);
        }
        let alpha: Fr<E> = sample_trapdoor(rng);
        let x: Fr<E> = sample_trapdoor(rng);
        Ok(Self::from_trapdoor(d, alpha, x))
    }

    /// Deterministic construction from a known trapdoor. Only for tests and
    /// reproducible fixtures; a real deployment must never learn `(α, x)`.
    pub fn from_trapdoor(d: usize, alpha: Fr<E>, x: Fr<E>) -> Self {
        let xinv = x.inverse().expect("trapdoor x is nonzero");
        let mut exps = Vec::with_capacity(2 * d + 1);
        let mut acc = xinv.pow([d as u64]);
        for _ in 0..=2 * d {
            exps.push(acc);
            acc *= x;
        }
        let alpha_exps: Vec<Fr<E>> = exps
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != d)
            .map(|(_, e)| alpha * e)
            .collect();
        let g = G1Proj::<E>::generator();
        let h = G2Proj::<E>::generator();
        Srs {
            d,
            g_powers: fixed_base_g1::<E>(g, &exps),
            g_alpha_powers: fixed_base_g1::<E>(g, &alpha_exps),
            h: h.into_affine(),
            h_x: (h * x).into_affine(),
            h_alpha: (h * alpha).into_affine(),
            h_alpha_x: (h * (alpha * x)).into_affine(),
        }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn curve(&self) -> CurveId {
        E::ID
    }

    /// `g^{x^i}`, or `None` outside `[-d, d]`.
    pub fn g_power(&self, i: i64) -> Option<&G1<E>> {
        if i.unsigned_abs() as usize > self.d {
            return None;
        }
        self.g_powers.get((i + self.d as i64) as usize)
    }

    /// `g^{αx^i}`; exponent 0 is absent by construction.
    pub fn g_alpha_power(&self, i: i64) -> Option<&G1<E>> {
        if i == 0 || i.unsigned_abs() as usize > self.d {
            return None;
        }
        let idx = if i < 0 { i + self.d as i64 } else { i + self.d as i64 - 1 };
        self.g_alpha_powers.get(idx as usize)
    }

    pub fn g_powers(&self) -> &[G1<E>] {
        &self.g_powers
    }

    pub fn g_alpha_powers(&self) -> &[G1<E>] {
        &self.g_alpha_powers
    }

    pub fn vk(&self) -> VerifierKey<E> {
        VerifierKey {
            g: self.g_powers[self.d],
            h: self.h,
            h_x: self.h_x,
            h_alpha: self.h_alpha,
            h_alpha_x: self.h_alpha_x,
        }
    }

    /// Structural pairing checks: `e(g^{x^{i+1}}, h) = e(g^{x^i}, h^x)` and the
    /// analogous α-shifted relations. `full` checks every index, otherwise a
    /// handful spread across the range.
    pub fn check_consistency(&self, full: bool) -> Result<(), PcsError> {
        let d = self.d as i64;
        if self.g_powers.len() != 2 * self.d + 1 || self.g_alpha_powers.len() != 2 * self.d {
            return Err(PcsError::Inconsistent("array lengths"));
        }
        if self.g_powers[self.d] != G1::<E>::generator() || self.h != G2::<E>::generator() {
            return Err(PcsError::Inconsistent("generators"));
        }
        let indices: Vec<i64> = if full {
            (-d..d).collect()
        } else {
            let mut v = vec![-d, -1, 0, d - 1];
            v.push(d / 2);
            v.sort_unstable();
            v.dedup();
            v
        };
        for i in indices {
            let lo = *self.g_power(i).unwrap();
            let hi = *self.g_power(i + 1).unwrap();
            if pairing::<E>(hi, self.h) != pairing::<E>(lo, self.h_x) {
                return Err(PcsError::Inconsistent("g powers"));
            }
            if let Some(a) = self.g_alpha_power(i) {
                if pairing::<E>(*a, self.h) != pairing::<E>(lo, self.h_alpha) {
                    return Err(PcsError::Inconsistent("alpha powers"));
                }
            }
        }
        if pairing::<E>(*self.g_power(1).unwrap(), self.h_alpha) != pairing::<E>(self.vk().g, self.h_alpha_x) {
            return Err(PcsError::Inconsistent("h^{αx}"));
        }
        Ok(())
    }

    /// Binary container: magic, curve code, `d` (u32 BE), then
    /// length-prefixed G1 arrays and the four G2 elements.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 5 + (4 * self.d + 1) * E::G1_BYTES + 4 * E::G2_BYTES + 12);
        out.extend_from_slice(SRS_MAGIC);
        out.push(E::ID.code());
        out.extend_from_slice(&(self.d as u32).to_be_bytes());
        for arr in [&self.g_powers, &self.g_alpha_powers] {
            out.extend_from_slice(&(arr.len() as u32).to_be_bytes());
            for p in arr.iter() {
                out.extend_from_slice(&E::g1_to_bytes(p));
            }
        }
        out.extend_from_slice(&4u32.to_be_bytes());
        for p in [&self.h, &self.h_x, &self.h_alpha, &self.h_alpha_x] {
            out.extend_from_slice(&E::g2_to_bytes(p));
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, PcsError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(8)? != SRS_MAGIC {
            return Err(PcsError::Format("bad magic".into()));
        }
        let curve = CurveId::from_code(r.take(1)?[0])?;
        if curve != E::ID {
            return Err(PcsError::Format(format!("srs is for {curve}, expected {}", E::ID)));
        }
        let d = r.u32()? as usize;
        let n = r.u32()? as usize;
        if n != 2 * d + 1 {
            return Err(PcsError::Format("g-power count".into()));
        }
        let g_powers = (0..n)
            .map(|_| E::g1_from_bytes(r.take(E::G1_BYTES)?).map_err(PcsError::from))
            .collect::<Result<Vec<_>, _>>()?;
        let n = r.u32()? as usize;
        if n != 2 * d {
            return Err(PcsError::Format("alpha-power count".into()));
        }
        let g_alpha_powers = (0..n)
            .map(|_| E::g1_from_bytes(r.take(E::G1_BYTES)?).map_err(PcsError::from))
            .collect::<Result<Vec<_>, _>>()?;
        if r.u32()? != 4 {
            return Err(PcsError::Format("g2 count".into()));
        }
        let mut g2 = Vec::with_capacity(4);
        for _ in 0..4 {
            g2.push(E::g2_from_bytes(r.take(E::G2_BYTES)?)?);
        }
        if r.pos != bytes.len() {
            return Err(PcsError::Format("trailing bytes".into()));
        }
        let srs = Srs { d, g_powers, g_alpha_powers, h: g2[0], h_x: g2[1], h_alpha: g2[2], h_alpha_x: g2[3] };
        srs.check_consistency(false)?;
        Ok(srs)
    }

    /// keccak-256 of the binary container.
    pub fn digest(&self) -> [u8; 32] {
        keccak256(&self.to_bytes())
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], PcsError> {
        if self.pos + n > self.bytes.len() {
            return Err(PcsError::Format("truncated srs".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, PcsError> {
        Ok(u32::from_be_bytes(self.take(4)?.try_into().unwrap()))
    }
}

/// JSON form of a [`VerifierKey`] plus the on-chain subset accounting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierKeyJson {
    pub version: u32,
    pub curve: String,
    pub degree: usize,
    pub element_count: usize,
    pub g: String,
    pub h: String,
    pub h_x: String,
    pub h_alpha: String,
    pub h_alpha_x: String,
    /// The on-chain subset `g ‖ h ‖ h^α ‖ h^{αx}` split into coordinate words.
    pub words: Vec<String>,
}

impl<E: PairingCurve> VerifierKey<E> {
    /// Coordinates of `g, h, h^α, h^{αx}`: the elements an on-chain verifier stores.
    pub fn subset_words(&self) -> Vec<Vec<u8>> {
        let mut bytes = E::g1_to_bytes(&self.g);
        for p in [&self.h, &self.h_alpha, &self.h_alpha_x] {
            bytes.extend_from_slice(&E::g2_to_bytes(p));
        }
        bytes.chunks(E::COORD_BYTES).map(|c| c.to_vec()).collect()
    }

    pub fn subset_bytes(&self) -> usize {
        self.subset_words().iter().map(Vec::len).sum()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = E::g1_to_bytes(&self.g);
        for p in [&self.h, &self.h_x, &self.h_alpha, &self.h_alpha_x] {
            out.extend_from_slice(&E::g2_to_bytes(p));
        }
        out
    }

    pub fn digest(&self) -> [u8; 32] {
        keccak256(&self.to_bytes())
    }

    pub fn to_json(&self, degree: usize) -> VerifierKeyJson {
        let words = self.subset_words();
        VerifierKeyJson {
            version: 1,
            curve: E::ID.to_string(),
            degree,
            element_count: words.len(),
            g: to_hex(&E::g1_to_bytes(&self.g)),
            h: to_hex(&E::g2_to_bytes(&self.h)),
            h_x: to_hex(&E::g2_to_bytes(&self.h_x)),
            h_alpha: to_hex(&E::g2_to_bytes(&self.h_alpha)),
            h_alpha_x: to_hex(&E::g2_to_bytes(&self.h_alpha_x)),
            words: words.iter().map(|w| to_hex(w)).collect(),
        }
    }

    pub fn from_json(j: &VerifierKeyJson) -> Result<Self, PcsError> {
        if j.curve.parse::<CurveId>()? != E::ID {
            return Err(PcsError::Format(format!("verifier key is for {}", j.curve)));
        }
        let g1 = |s: &str| -> Result<G1<E>, PcsError> { Ok(E::g1_from_bytes(&from_hex(s)?)?) };
        let g2 = |s: &str| -> Result<G2<E>, PcsError> { Ok(E::g2_from_bytes(&from_hex(s)?)?) };
        Ok(VerifierKey {
            g: g1(&j.g)?,
            h: g2(&j.h)?,
            h_x: g2(&j.h_x)?,
            h_alpha: g2(&j.h_alpha)?,
            h_alpha_x: g2(&j.h_alpha_x)?,
        })
    }
}
