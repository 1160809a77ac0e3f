use serde::{Deserialize, Serialize};
use zkclaim_pcs::{OpCounts, Phase, VerifyTrace};

/// Gas per primitive. Defaults follow the Ethereum precompile schedule
/// (EIP-1108 pairing and BN254 add/mul prices, 16 gas per calldata byte,
/// keccak word cost, cold `SLOAD`/`SSTORE`, ecrecover).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GasCostModel {
    pub pairing_base: u64,
    pub pairing_per_pair: u64,
    pub g1_add: u64,
    pub g1_mul: u64,
    pub field_op: u64,
    pub keccak_per_word: u64,
    pub calldata_per_byte: u64,
    pub signature_check: u64,
    pub storage_read_word: u64,
    pub storage_write_word: u64,
    pub transaction_base: u64,
}

impl Default for GasCostModel {
    fn default() -> Self {
        Self {
            pairing_base: 45_000,
            pairing_per_pair: 34_000,
            g1_add: 150,
            g1_mul: 6_000,
            field_op: 8,
            keccak_per_word: 6,
            calldata_per_byte: 16,
            signature_check: 3_000,
            storage_read_word: 2_100,
            storage_write_word: 20_000,
            transaction_base: 21_000,
        }
    }
}

impl GasCostModel {
    pub fn price(&self, c: &OpCounts) -> u64 {
        c.pairing_equations * self.pairing_base
            + c.pairings * self.pairing_per_pair
            + c.g1_adds * self.g1_add
            + c.g1_muls * self.g1_mul
            + c.field_ops * self.field_op
            + c.hash_words * self.keccak_per_word
            + c.input_bytes * self.calldata_per_byte
            + c.signature_checks * self.signature_check
            + c.storage_words * self.storage_read_word
            + c.transactions * self.transaction_base
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GasRow {
    pub operation: String,
    pub gas: u64,
    pub counts: OpCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GasReport {
    pub rows: Vec<GasRow>,
    pub total: u64,
    pub pairing_equations: u64,
}

impl GasReport {
    pub fn row(&self, operation: &str) -> Option<&GasRow> {
        self.rows.iter().find(|r| r.operation == operation)
    }
}

fn row_label(phase: Phase, counts: &OpCounts) -> String {
    match (phase, counts.pairing_equations) {
        (Phase::PairingCheck, 1) => "Checking Single Pairing Equation".into(),
        (Phase::PairingCheck, k) => format!("Checking {k} Pairing Equations"),
        _ => phase.label().into(),
    }
}

/// Price each phase of `trace`; rows follow the verifier's phase order and
/// omit phases the verifier never entered.
pub fn estimate_gas(trace: &VerifyTrace, model: &GasCostModel) -> GasReport {
    let mut rows = Vec::new();
    for phase in Phase::ALL {
        let counts = trace.by_phase(phase);
        if counts == OpCounts::default() {
            continue;
        }
        rows.push(GasRow { operation: row_label(phase, &counts), gas: model.price(&counts), counts });
    }
    let total = rows.iter().map(|r| r.gas).sum();
    GasReport { rows, total, pairing_equations: trace.total().pairing_equations }
}
