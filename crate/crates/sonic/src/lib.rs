//! Sonic-style arguments for claims over signed, committed data.
//!
//! Three variants share one constraint system encoding:
//!
//! * `basic`: the simplified protocol with seven individual restricted KZG
//!   openings.
//! * `dat`: the witness carries data sequences committed and signed by
//!   independent providers, each under its own reference string; the
//!   verifier checks `r[z,1] = r̃[z,1] + Σ d_j(z) z^{offset_j}`.
//! * `ev`: as `dat`, with all main-SRS openings proven by one batched
//!   multi-point opening and the per-source openings folded into the same
//!   pairing product.
//!
//! All challenges come from a keccak transcript.

mod error;
mod key;
mod proof;
mod protocol;
mod source;
mod transcript;

pub use error::SonicError;
pub use key::{preprocess, CircuitKey, DataLayout};
pub use proof::{
    BasicProof, BatchedProof, CoreEvals, DataProof, ProofJson, ProofParts, SonicProof, Variant, BATCH_SET_SIZES,
    PROOF_VERSION,
};
pub use protocol::{
    prove_basic, prove_basic_with_key, prove_batched, prove_with_data, verify, verify_basic, verify_basic_traced,
    verify_batched, verify_batched_traced, verify_with_data, verify_with_data_traced,
};
pub use source::{data_poly, DataSource, SourcePublic};
pub use transcript::Transcript;
