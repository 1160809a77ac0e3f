//! Polynomial commitments over a pairing curve: plain KZG, restricted KZG
//! (no commitments to nonzero constant terms), and restricted KZG with
//! batched multi-point openings.

mod batch;
mod check;
mod error;
mod kzg;
mod srs;
pub mod trace;

pub use batch::{
    opening_gammas, rkzgb_batch_check, rkzgb_batch_open, rkzgb_batch_open_with, rkzgb_batch_verify, rkzgb_batch_verify_traced,
    union_points, BatchOpeningClaim, BatchProof,
};
pub use check::PairingCheck;
pub use error::PcsError;
pub use kzg::{
    commit_plain, kzg_check, kzg_commit, kzg_open, kzg_verify, rkzg_check, rkzg_commit, rkzg_open, rkzg_verify,
    rkzg_verify_traced, Commitment, OpeningProof, Scheme,
};
pub use srs::{Srs, VerifierKey, VerifierKeyJson, SRS_MAGIC, VERIFIER_SUBSET_WORDS};
pub use trace::{OpCounts, Phase, VerifyTrace};
