//! Simulated two-contract insurance flow: one global verifier contract per
//! reference string, individual policies that hold location hashes and
//! provider keys, an in-memory ledger, and a gas model priced from
//! instrumented verification traces.

mod contract;
mod gas;
mod ledger;
mod scenario;

pub use contract::{
    Chain, ClaimReceipt, ClaimRecord, ContractError, GlobalHandle, Policy, PolicyDraft, PolicyState, Provider, VerifierKind,
};
pub use gas::{estimate_gas, GasCostModel, GasReport, GasRow};
pub use ledger::{Ledger, LedgerError, Transfer};
pub use scenario::{run_scenario, Action, Artifacts, Scenario, ScenarioReport, StepReport};
