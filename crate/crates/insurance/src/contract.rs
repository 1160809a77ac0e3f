use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use zkclaim_algebra::{keccak256, PairingCurve};
use zkclaim_bushfire::{CircuitLayout, DataSplit, FixedPointParams};
use zkclaim_pcs::{Phase, VerifierKey, VerifyTrace, VERIFIER_SUBSET_WORDS};
use zkclaim_sigs::{LocationTag, PublicKey, PUBLIC_KEY_BYTES};
use zkclaim_sonic::{verify, CircuitKey, SonicProof, SourcePublic, Variant};

use crate::gas::{estimate_gas, GasCostModel, GasReport};
use crate::ledger::{Ledger, LedgerError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VerifierKind {
    /// Per-opening verification of data-bearing proofs.
    #[serde(rename = "sonic")]
    Sonic,
    /// Batched verification, verifier subset in contract storage.
    #[serde(rename = "enhanced")]
    Enhanced,
    /// Batched verification, verifier subset shipped with each claim.
    #[serde(rename = "enhanced+")]
    EnhancedPlus,
}

impl VerifierKind {
    pub const ALL: [VerifierKind; 3] = [VerifierKind::Sonic, VerifierKind::Enhanced, VerifierKind::EnhancedPlus];

    pub fn as_str(&self) -> &'static str {
        match self {
            VerifierKind::Sonic => "sonic",
            VerifierKind::Enhanced => "enhanced",
            VerifierKind::EnhancedPlus => "enhanced+",
        }
    }

    /// Proof variant this verifier accepts.
    pub fn variant(&self) -> Variant {
        match self {
            VerifierKind::Sonic => Variant::Dat,
            VerifierKind::Enhanced | VerifierKind::EnhancedPlus => Variant::Ev,
        }
    }

    fn subset_on_chain(&self) -> bool {
        !matches!(self, VerifierKind::EnhancedPlus)
    }
}

impl fmt::Display for VerifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VerifierKind {
    type Err = ContractError;

    fn from_str(s: &str) -> Result<Self, ContractError> {
        VerifierKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| ContractError::Config(format!("unknown verifier {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GlobalHandle {
    pub kind: VerifierKind,
    pub vk_digest: [u8; 32],
}

#[derive(Debug, Clone)]
struct GlobalContract<E: PairingCurve> {
    vk: VerifierKey<E>,
    deploy_gas: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyState {
    Created,
    Funded,
    Active,
    Settled,
    Expired,
}

/// A registered data provider: signing key plus its commitment verifier key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provider<E: PairingCurve> {
    pub pk: PublicKey,
    pub vk: VerifierKey<E>,
}

/// Terms the insurer proposes. One location hash per data source, in
/// data-slot order; only hashes reach the contract, never coordinates.
#[derive(Debug, Clone)]
pub struct PolicyDraft<E: PairingCurve> {
    pub policy_id: String,
    pub insurer: String,
    pub insuree: String,
    pub premium: u64,
    pub sum_insured: u64,
    pub expiry: u64,
    pub pixels: usize,
    pub params: FixedPointParams,
    pub split: DataSplit,
    pub location_hashes: Vec<LocationTag>,
    pub providers: Vec<Provider<E>>,
    pub key: CircuitKey<E>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub at: u64,
    pub accepted: bool,
    pub proof_digest: [u8; 32],
    pub gas: u64,
}

#[derive(Debug, Clone)]
pub struct Policy<E: PairingCurve> {
    pub policy_id: String,
    pub insurer: String,
    pub insuree: String,
    pub premium: u64,
    pub sum_insured: u64,
    pub expiry: u64,
    pub location_hashes: Vec<LocationTag>,
    pub params_digest: [u8; 32],
    pub providers: Vec<Provider<E>>,
    pub key: CircuitKey<E>,
    pub global: GlobalHandle,
    pub state: PolicyState,
    pub claims: Vec<ClaimRecord>,
}

impl<E: PairingCurve> Policy<E> {
    pub fn escrow_account(&self) -> String {
        format!("policy:{}", self.policy_id)
    }

    /// What the verifier checks the proof's data commitments against.
    pub fn sources(&self) -> Vec<SourcePublic<E>> {
        self.providers
            .iter()
            .zip(&self.location_hashes)
            .map(|(p, h)| SourcePublic { pk: p.pk, tag: *h, vk: p.vk.clone() })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("unknown global verifier contract")]
    UnknownGlobal,
    #[error("policy {0} already exists")]
    DuplicatePolicy(String),
    #[error("no policy {0}")]
    UnknownPolicy(String),
    #[error("policy {id} is {state:?}, expected {expected}")]
    WrongState { id: String, state: PolicyState, expected: &'static str },
    #[error("policy {0} is past expiry")]
    Expired(String),
    #[error("policy {0} has not reached expiry")]
    NotExpired(String),
    #[error("replayed claim on policy {0}")]
    Replay(String),
    #[error("policy draft: {0}")]
    Draft(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

#[derive(Debug, Clone)]
pub struct ClaimReceipt {
    pub accepted: bool,
    pub trace: VerifyTrace,
    pub gas: GasReport,
}

/// The simulated chain: ledger, logical clock, global verifier contracts and
/// individual policies. Every mutating call is applied in order.
#[derive(Debug, Clone)]
pub struct Chain<E: PairingCurve> {
    pub ledger: Ledger,
    pub now: u64,
    pub model: GasCostModel,
    globals: BTreeMap<GlobalHandle, GlobalContract<E>>,
    policies: BTreeMap<String, Policy<E>>,
    accepted_proofs: BTreeSet<[u8; 32]>,
}

impl<E: PairingCurve> Default for Chain<E> {
    fn default() -> Self {
        Self::new(GasCostModel::default())
    }
}

const KEY_WORDS: usize = 4;
const EVM_WORD: usize = 32;
const PK_WORDS: usize = PUBLIC_KEY_BYTES.div_ceil(EVM_WORD);

impl<E: PairingCurve> Chain<E> {
    pub fn new(model: GasCostModel) -> Self {
        Self {
            ledger: Ledger::new(),
            now: 0,
            model,
            globals: BTreeMap::new(),
            policies: BTreeMap::new(),
            accepted_proofs: BTreeSet::new(),
        }
    }

    /// Deploy (or find) the global verifier for `kind` over `vk`. Storage
    /// modes keep the verifier subset in contract storage; enhanced+ stores
    /// only its digest.
    pub fn deploy_global(&mut self, kind: VerifierKind, vk: &VerifierKey<E>) -> GlobalHandle {
        let handle = GlobalHandle { kind, vk_digest: vk.digest() };
        if !self.globals.contains_key(&handle) {
            let words = if kind.subset_on_chain() { vk.subset_words().len() } else { 1 };
            let m = &self.model;
            let deploy_gas = m.transaction_base
                + words as u64 * m.storage_write_word
                + (words * E::COORD_BYTES) as u64 * m.calldata_per_byte;
            self.globals.insert(handle, GlobalContract { vk: vk.clone(), deploy_gas });
        }
        handle
    }

    pub fn global_count(&self) -> usize {
        self.globals.len()
    }

    pub fn deployment_gas(&self, handle: &GlobalHandle) -> Option<u64> {
        self.globals.get(handle).map(|g| g.deploy_gas)
    }

    /// Verifier-subset size in uint256 words.
    pub fn subset_elements(&self, handle: &GlobalHandle) -> Option<usize> {
        self.globals.get(handle).map(|g| g.vk.subset_words().len())
    }

    pub fn deploy_individual(&mut self, global: GlobalHandle, draft: PolicyDraft<E>) -> Result<&Policy<E>, ContractError> {
        let g = self.globals.get(&global).ok_or(ContractError::UnknownGlobal)?;
        if self.policies.contains_key(&draft.policy_id) {
            return Err(ContractError::DuplicatePolicy(draft.policy_id));
        }
        if draft.location_hashes.is_empty() || draft.location_hashes.len() != draft.providers.len() {
            return Err(ContractError::Draft(format!(
                "{} location hashes for {} providers",
                draft.location_hashes.len(),
                draft.providers.len()
            )));
        }
        if draft.key.vk != g.vk {
            return Err(ContractError::Draft("circuit key was built under a different reference string".into()));
        }
        let expected = CircuitLayout::new(draft.pixels, draft.params.k_bits).data_layout(draft.split);
        if draft.key.layout != expected || expected.sources() != draft.providers.len() {
            return Err(ContractError::Draft("circuit key does not match pixels, params and data split".into()));
        }
        draft.params.check_pixels(draft.pixels).map_err(|e| ContractError::Draft(e.to_string()))?;
        let policy = Policy {
            params_digest: draft.params.digest(),
            policy_id: draft.policy_id.clone(),
            insurer: draft.insurer,
            insuree: draft.insuree,
            premium: draft.premium,
            sum_insured: draft.sum_insured,
            expiry: draft.expiry,
            location_hashes: draft.location_hashes,
            providers: draft.providers,
            key: draft.key,
            global,
            state: PolicyState::Created,
            claims: Vec::new(),
        };
        Ok(self.policies.entry(draft.policy_id).or_insert(policy))
    }

    pub fn policy(&self, id: &str) -> Option<&Policy<E>> {
        self.policies.get(id)
    }

    pub fn policies(&self) -> impl Iterator<Item = &Policy<E>> {
        self.policies.values()
    }

    fn policy_mut(&mut self, id: &str) -> Result<&mut Policy<E>, ContractError> {
        self.policies.get_mut(id).ok_or_else(|| ContractError::UnknownPolicy(id.to_string()))
    }

    fn expect_state(p: &Policy<E>, state: PolicyState, expected: &'static str) -> Result<(), ContractError> {
        if p.state != state {
            return Err(ContractError::WrongState { id: p.policy_id.clone(), state: p.state, expected });
        }
        Ok(())
    }

    /// Insurer escrows the sum insured.
    pub fn fund(&mut self, id: &str) -> Result<(), ContractError> {
        let p = self.policy_mut(id)?;
        Self::expect_state(p, PolicyState::Created, "created")?;
        let (from, to, amount) = (p.insurer.clone(), p.escrow_account(), p.sum_insured);
        self.ledger.transfer(&from, &to, amount, &format!("fund {id}"))?;
        self.policy_mut(id)?.state = PolicyState::Funded;
        Ok(())
    }

    /// Insuree pays the premium to the insurer, activating cover.
    pub fn pay_premium(&mut self, id: &str) -> Result<(), ContractError> {
        let p = self.policy_mut(id)?;
        Self::expect_state(p, PolicyState::Funded, "funded")?;
        let (from, to, amount) = (p.insuree.clone(), p.insurer.clone(), p.premium);
        self.ledger.transfer(&from, &to, amount, &format!("premium {id}"))?;
        self.policy_mut(id)?.state = PolicyState::Active;
        Ok(())
    }

    pub fn advance_time(&mut self, ticks: u64) {
        self.now += ticks;
    }

    /// Close an unclaimed policy after expiry and return the escrow.
    pub fn expire(&mut self, id: &str) -> Result<(), ContractError> {
        let now = self.now;
        let p = self.policy_mut(id)?;
        if !matches!(p.state, PolicyState::Funded | PolicyState::Active) {
            return Err(ContractError::WrongState { id: id.into(), state: p.state, expected: "funded or active" });
        }
        if now < p.expiry {
            return Err(ContractError::NotExpired(id.into()));
        }
        let (from, to, amount) = (p.escrow_account(), p.insurer.clone(), p.sum_insured);
        self.ledger.transfer(&from, &to, amount, &format!("expire {id}"))?;
        self.policy_mut(id)?.state = PolicyState::Expired;
        Ok(())
    }

    /// Verify `proof` against the policy's location hashes and providers.
    /// Accepted claims pay out and settle the policy; rejected ones leave it
    /// active. A gas report is produced either way.
    pub fn submit_claim(&mut self, id: &str, proof: &SonicProof<E>) -> Result<ClaimReceipt, ContractError> {
        let now = self.now;
        let p = self.policy(id).ok_or_else(|| ContractError::UnknownPolicy(id.into()))?;
        if p.state == PolicyState::Settled {
            return Err(ContractError::Replay(id.into()));
        }
        Self::expect_state(p, PolicyState::Active, "active")?;
        if now >= p.expiry {
            return Err(ContractError::Expired(id.into()));
        }
        let bytes = proof.to_bytes();
        let digest = keccak256(&bytes);
        if self.accepted_proofs.contains(&digest) {
            return Err(ContractError::Replay(id.into()));
        }
        let kind = p.global.kind;

        let mut trace = VerifyTrace::new();
        trace.set_phase(Phase::Others);
        trace.transaction();
        trace.set_phase(Phase::ProcessingInput);
        let j = p.providers.len();
        let subset = VERIFIER_SUBSET_WORDS * (1 + j);
        trace.storage_read(KEY_WORDS + j * (PK_WORDS + 1));
        if kind.subset_on_chain() {
            trace.storage_read(subset);
        } else {
            // Subsets arrive as calldata and are checked against stored digests.
            trace.input(subset * E::COORD_BYTES);
            trace.hash(subset * E::COORD_BYTES);
            trace.storage_read(1 + j);
        }
        let accepted = proof.variant() == kind.variant() && verify(&p.key, &p.sources(), proof, &mut trace);
        let gas = estimate_gas(&trace, &self.model);

        let record = ClaimRecord { at: now, accepted, proof_digest: digest, gas: gas.total };
        if accepted {
            let (from, to, amount) = (p.escrow_account(), p.insuree.clone(), p.sum_insured);
            self.ledger.transfer(&from, &to, amount, &format!("payout {id}"))?;
            self.accepted_proofs.insert(digest);
        }
        let p = self.policy_mut(id)?;
        p.claims.push(record);
        if accepted {
            p.state = PolicyState::Settled;
        }
        Ok(ClaimReceipt { accepted, trace, gas })
    }
}
