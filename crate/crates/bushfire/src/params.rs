use serde::{Deserialize, Serialize};
use zkclaim_algebra::keccak256;

use crate::BushfireError;

/// Fixed-point claim parameters. NBR values are integers scaled by `scale`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointParams {
    pub scale: i64,
    /// Severity threshold κ, already multiplied by `scale`.
    pub kappa_scaled: i64,
    /// Minimum number of severely burnt pixels ε.
    pub epsilon: u64,
    /// Strict bound on `Σ(θ⁻)² + Σ(θ⁺)²`.
    pub theta_max: u64,
    pub k_bits: u32,
}

impl Default for FixedPointParams {
    fn default() -> Self {
        Self { scale: 1000, kappa_scaled: 660, epsilon: 1, theta_max: 4096, k_bits: 12 }
    }
}

impl FixedPointParams {
    pub fn validate(&self) -> Result<(), BushfireError> {
        let bad = |msg: String| Err(BushfireError::Params(msg));
        if self.k_bits == 0 || self.k_bits > 40 {
            return bad(format!("k_bits = {} outside [1, 40]", self.k_bits));
        }
        if self.scale <= 0 {
            return bad(format!("scale = {} must be positive", self.scale));
        }
        if self.kappa_scaled <= 0 || self.kappa_scaled >= 2 * self.scale {
            return bad(format!("kappa_scaled = {} outside (0, {})", self.kappa_scaled, 2 * self.scale));
        }
        if 2 * self.scale >= self.range() {
            return bad(format!("2·scale = {} needs more than {} bits", 2 * self.scale, self.k_bits));
        }
        if self.theta_max == 0 || self.theta_max as i64 > self.range() {
            return bad(format!("theta_max = {} outside [1, 2^{}]", self.theta_max, self.k_bits));
        }
        Ok(())
    }

    /// keccak-256 of the compact JSON encoding; policies record this.
    pub fn digest(&self) -> [u8; 32] {
        keccak256(&serde_json::to_vec(self).expect("params serialize"))
    }

    /// `2^k`: every range-checked quantity lies in `[0, 2^k)`.
    pub fn range(&self) -> i64 {
        1 << self.k_bits
    }

    /// Pixel counts must keep `Σi − ε` below `2^k`.
    pub fn check_pixels(&self, n: usize) -> Result<(), BushfireError> {
        self.validate()?;
        if n == 0 || n as i64 >= self.range() {
            return Err(BushfireError::Params(format!("{n} pixels do not fit {} bits", self.k_bits)));
        }
        if self.epsilon as i64 >= self.range() {
            return Err(BushfireError::Params(format!("epsilon = {} does not fit {} bits", self.epsilon, self.k_bits)));
        }
        Ok(())
    }
}
