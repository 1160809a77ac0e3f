//! Operation counters emitted by instrumented verifiers.
//!
//! Verifiers tag each primitive they execute with the current [`Phase`]; the
//! insurance crate prices the resulting counts with a gas table.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phase {
    ProcessingInput,
    ComputingPsi,
    ComputingTheta,
    ComputingPhi,
    PairingCheck,
    OtherEquations,
    Others,
}

impl Phase {
    pub const ALL: [Phase; 7] = [
        Phase::ProcessingInput,
        Phase::ComputingPsi,
        Phase::ComputingTheta,
        Phase::ComputingPhi,
        Phase::PairingCheck,
        Phase::OtherEquations,
        Phase::Others,
    ];

    /// Row label used in gas reports.
    pub fn label(&self) -> &'static str {
        match self {
            Phase::ProcessingInput => "Processing Input",
            Phase::ComputingPsi => "Computing Ψ_i",
            Phase::ComputingTheta => "Computing Θ",
            Phase::ComputingPhi => "Computing Φ",
            Phase::PairingCheck => "Checking Pairing Equations",
            Phase::OtherEquations => "Checking Other Equations",
            Phase::Others => "Others",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub pairing_equations: u64,
    pub pairings: u64,
    pub g1_muls: u64,
    pub g1_adds: u64,
    pub field_ops: u64,
    pub hash_words: u64,
    pub input_bytes: u64,
    pub signature_checks: u64,
    /// 32-byte words read from contract storage.
    pub storage_words: u64,
    pub transactions: u64,
}

impl OpCounts {
    pub fn add(&mut self, other: &OpCounts) {
        self.pairing_equations += other.pairing_equations;
        self.pairings += other.pairings;
        self.g1_muls += other.g1_muls;
        self.g1_adds += other.g1_adds;
        self.field_ops += other.field_ops;
        self.hash_words += other.hash_words;
        self.input_bytes += other.input_bytes;
        self.signature_checks += other.signature_checks;
        self.storage_words += other.storage_words;
        self.transactions += other.transactions;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyTrace {
    current: Phase,
    counts: BTreeMap<Phase, OpCounts>,
}

impl Default for VerifyTrace {
    fn default() -> Self {
        Self { current: Phase::Others, counts: BTreeMap::new() }
    }
}

impl VerifyTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.current = phase;
    }

    pub fn phase(&self) -> Phase {
        self.current
    }

    fn slot(&mut self) -> &mut OpCounts {
        self.counts.entry(self.current).or_default()
    }

    pub fn pairing_equation(&mut self, pairs: usize) {
        let s = self.slot();
        s.pairing_equations += 1;
        s.pairings += pairs as u64;
    }

    pub fn g1_mul(&mut self, n: usize) {
        self.slot().g1_muls += n as u64;
    }

    pub fn g1_add(&mut self, n: usize) {
        self.slot().g1_adds += n as u64;
    }

    pub fn field_ops(&mut self, n: usize) {
        self.slot().field_ops += n as u64;
    }

    /// Record a keccak invocation over `bytes` input bytes.
    pub fn hash(&mut self, bytes: usize) {
        self.slot().hash_words += bytes.div_ceil(32) as u64;
    }

    pub fn input(&mut self, bytes: usize) {
        self.slot().input_bytes += bytes as u64;
    }

    pub fn signature_check(&mut self) {
        self.slot().signature_checks += 1;
    }

    pub fn storage_read(&mut self, words: usize) {
        self.slot().storage_words += words as u64;
    }

    pub fn transaction(&mut self) {
        self.slot().transactions += 1;
    }

    pub fn by_phase(&self, phase: Phase) -> OpCounts {
        self.counts.get(&phase).copied().unwrap_or_default()
    }

    pub fn phases(&self) -> impl Iterator<Item = (Phase, OpCounts)> + '_ {
        self.counts.iter().map(|(p, c)| (*p, *c))
    }

    pub fn total(&self) -> OpCounts {
        let mut t = OpCounts::default();
        for c in self.counts.values() {
            t.add(c);
        }
        t
    }

    /// Append every counter of `other` to the matching phase of `self`.
    pub fn absorb(&mut self, other: &VerifyTrace) {
        for (p, c) in &other.counts {
            self.counts.entry(*p).or_default().add(c);
        }
    }
}
