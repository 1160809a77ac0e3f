use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use zkclaim_algebra::PairingCurve;
use zkclaim_sonic::SonicProof;

use crate::contract::{Chain, PolicyDraft, PolicyState, VerifierKind};
use crate::gas::GasCostModel;

/// Scripted run of the policy lifecycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub version: u32,
    pub verifier: VerifierKind,
    /// Opening balances.
    pub accounts: BTreeMap<String, u64>,
    pub actions: Vec<Action>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum Action {
    /// Deploy the individual policy named by `policy`, and the global
    /// verifier for its reference string unless already deployed.
    Deploy { policy: String },
    Fund { policy_id: String },
    Premium { policy_id: String },
    AdvanceTime { ticks: u64 },
    Claim { policy_id: String, proof: String },
    Expire { policy_id: String },
}

/// Resolves the artifacts a scenario refers to by name.
pub trait Artifacts<E: PairingCurve> {
    fn policy(&self, name: &str) -> Result<PolicyDraft<E>, String>;
    fn proof(&self, name: &str) -> Result<SonicProof<E>, String>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub step: usize,
    pub action: Action,
    pub ok: bool,
    pub detail: String,
    pub gas: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub steps: Vec<StepReport>,
    pub balances: BTreeMap<String, u64>,
    pub states: BTreeMap<String, PolicyState>,
    pub conserved: bool,
}

impl ScenarioReport {
    pub fn claims_accepted(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.action, Action::Claim { .. }) && s.ok && s.detail == "accepted").count()
    }

    pub fn errors(&self) -> usize {
        self.steps.iter().filter(|s| !s.ok).count()
    }
}

/// Run every action in order. Failing actions are reported and skipped;
/// they never stop the script.
pub fn run_scenario<E: PairingCurve>(
    scenario: &Scenario,
    artifacts: &dyn Artifacts<E>,
    model: GasCostModel,
) -> (ScenarioReport, Chain<E>) {
    let mut chain = Chain::<E>::new(model);
    for (account, amount) in &scenario.accounts {
        chain.ledger.mint(account, *amount);
    }
    let supply = chain.ledger.supply();
    let mut steps = Vec::new();
    for (step, action) in scenario.actions.iter().enumerate() {
        let mut gas = None;
        let outcome: Result<String, String> = match action {
            Action::Deploy { policy } => artifacts.policy(policy).and_then(|draft| {
                let handle = chain.deploy_global(scenario.verifier, &draft.key.vk);
                chain.deploy_individual(handle, draft).map(|p| format!("deployed {}", p.policy_id)).map_err(|e| e.to_string())
            }),
            Action::Fund { policy_id } => chain.fund(policy_id).map(|_| "funded".into()).map_err(|e| e.to_string()),
            Action::Premium { policy_id } => chain.pay_premium(policy_id).map(|_| "active".into()).map_err(|e| e.to_string()),
            Action::AdvanceTime { ticks } => {
                chain.advance_time(*ticks);
                Ok(format!("now {}", chain.now))
            }
            Action::Claim { policy_id, proof } => artifacts.proof(proof).and_then(|proof| {
                chain.submit_claim(policy_id, &proof).map_err(|e| e.to_string()).map(|r| {
                    gas = Some(r.gas.total);
                    if r.accepted { "accepted" } else { "rejected" }.to_string()
                })
            }),
            Action::Expire { policy_id } => chain.expire(policy_id).map(|_| "expired".into()).map_err(|e| e.to_string()),
        };
        let (ok, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, e),
        };
        steps.push(StepReport { step, action: action.clone(), ok, detail, gas });
    }
    let states = chain.policies().map(|p| (p.policy_id.clone(), p.state)).collect();
    let report = ScenarioReport {
        steps,
        balances: chain.ledger.balances().clone(),
        states,
        conserved: chain.ledger.total() == supply,
    };
    (report, chain)
}
