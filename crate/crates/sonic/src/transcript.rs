use ark_ff::PrimeField;
use zkclaim_algebra::{hash_to_scalar, keccak256, scalar_to_bytes, PairingCurve, G1};

/// Fiat-Shamir transcript over a keccak chain.
///
/// Each absorb replaces the state with
/// `keccak(state ‖ u32(|label|) ‖ label ‖ u32(|data|) ‖ data)`. A challenge is
/// `hash_to_scalar(label, state)` and is absorbed back under its own label,
/// so later challenges depend on earlier ones.
#[derive(Debug, Clone)]
pub struct Transcript {
    state: [u8; 32],
    log: Vec<(String, Vec<u8>)>,
    hash_inputs: Vec<usize>,
}

impl Transcript {
    pub fn new(domain: &str) -> Self {
        let mut t = Self { state: [0u8; 32], log: Vec::new(), hash_inputs: Vec::new() };
        t.absorb("domain", domain.as_bytes());
        t
    }

    pub fn absorb(&mut self, label: &str, data: &[u8]) {
        let mut buf = Vec::with_capacity(40 + label.len() + data.len());
        buf.extend_from_slice(&self.state);
        buf.extend_from_slice(&(label.len() as u32).to_be_bytes());
        buf.extend_from_slice(label.as_bytes());
        buf.extend_from_slice(&(data.len() as u32).to_be_bytes());
        buf.extend_from_slice(data);
        self.state = keccak256(&buf);
        self.hash_inputs.push(buf.len());
        self.log.push((label.to_string(), data.to_vec()));
    }

    pub fn absorb_point<E: PairingCurve>(&mut self, label: &str, p: &G1<E>) {
        self.absorb(label, &E::g1_to_bytes(p));
    }

    pub fn absorb_scalar<F: PrimeField>(&mut self, label: &str, f: &F) {
        self.absorb(label, &scalar_to_bytes(f));
    }

    pub fn challenge<F: PrimeField>(&mut self, label: &str) -> F {
        let c = hash_to_scalar::<F>(label.as_bytes(), &self.state);
        self.hash_inputs.push(4 + label.len() + 32);
        self.absorb_scalar(label, &c);
        c
    }

    /// A challenge outside `forbidden`, re-derived under `label#1`, `label#2`,
    /// ... on collision.
    pub fn challenge_excluding<F: PrimeField>(&mut self, label: &str, forbidden: &[F]) -> F {
        let mut c = self.challenge::<F>(label);
        let mut ctr = 1;
        while forbidden.contains(&c) {
            c = self.challenge::<F>(&format!("{label}#{ctr}"));
            ctr += 1;
        }
        c
    }

    pub fn state(&self) -> [u8; 32] {
        self.state
    }

    /// Every `(label, bytes)` absorbed so far, challenges included.
    pub fn log(&self) -> &[(String, Vec<u8>)] {
        &self.log
    }

    /// Input length of every keccak call made so far.
    pub fn hash_inputs(&self) -> &[usize] {
        &self.hash_inputs
    }
}
