use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("{account} holds {balance}, cannot pay {amount}")]
    InsufficientFunds { account: String, balance: u64, amount: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub from: String,
    pub to: String,
    pub amount: u64,
    pub memo: String,
}

/// Account balances with an append-only transfer log. Currency enters only
/// through [`Ledger::mint`]; transfers move it without changing the total.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    balances: BTreeMap<String, u64>,
    log: Vec<Transfer>,
    supply: u64,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mint(&mut self, account: &str, amount: u64) {
        *self.balances.entry(account.to_string()).or_default() += amount;
        self.supply += amount;
    }

    pub fn balance(&self, account: &str) -> u64 {
        self.balances.get(account).copied().unwrap_or(0)
    }

    pub fn transfer(&mut self, from: &str, to: &str, amount: u64, memo: &str) -> Result<(), LedgerError> {
        let balance = self.balance(from);
        if balance < amount {
            return Err(LedgerError::InsufficientFunds { account: from.to_string(), balance, amount });
        }
        self.balances.insert(from.to_string(), balance - amount);
        *self.balances.entry(to.to_string()).or_default() += amount;
        self.log.push(Transfer { from: from.into(), to: to.into(), amount, memo: memo.into() });
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.balances.values().sum()
    }

    /// Everything ever minted.
    pub fn supply(&self) -> u64 {
        self.supply
    }

    pub fn balances(&self) -> &BTreeMap<String, u64> {
        &self.balances
    }

    pub fn log(&self) -> &[Transfer] {
        &self.log
    }
}
