//! Parametric bushfire claim: fixed-point dNBR over NIR/SWIR rasters, the
//! constraint system that proves "at least ε pixels burnt above κ", its
//! witness builder, and a plain integer oracle for the same claim.

mod bundle;
mod circuit;
mod nbr;
mod params;
mod raster;

use thiserror::Error;

pub use bundle::DataBundleJson;
pub use circuit::{build_bushfire_cs, build_bushfire_witness, BushfireAssignment, BushfireWitness, CircuitLayout, DataSplit};
pub use nbr::{compute_nbr_fixed, ground_truth_claim, pixel_nbrs, ClaimOutcome, PixelNbr};
pub use params::FixedPointParams;
pub use raster::{format_band, load_band, load_raster, parse_band, write_raster, Band, RasterPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BushfireError {
    #[error("raster: {0}")]
    Raster(String),
    #[error("negative raster value {0}")]
    NegativeValue(i64),
    #[error("pixel {pixel}: NIR + SWIR = 0")]
    ZeroDenominator { pixel: usize },
    #[error("parameters: {0}")]
    Params(String),
    #[error("pixel {pixel}: dNBR excess {value} does not fit the bit width")]
    BitOverflow { pixel: usize, value: i64 },
    #[error("rounding residue Σθ² = {sum} reaches theta_max = {theta_max}")]
    ThetaBound { sum: u64, theta_max: u64 },
    #[error("data bundle: {0}")]
    Bundle(String),
    #[error("io: {0}")]
    Io(String),
}
