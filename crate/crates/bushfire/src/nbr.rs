use crate::{BushfireError, FixedPointParams, RasterPair};

/// `n = round(scale·(r−s)/(r+s))` (ties away from zero) and the residue
/// `θ = scale·(r−s) − n·(r+s)`.
pub fn compute_nbr_fixed(r: u64, s: u64, scale: i64) -> Result<(i64, i64), BushfireError> {
    let den = (r + s) as i128;
    if den == 0 {
        return Err(BushfireError::ZeroDenominator { pixel: 0 });
    }
    let num = scale as i128 * (r as i128 - s as i128);
    let q = (2 * num.abs() + den) / (2 * den);
    let n = if num < 0 { -q } else { q };
    let theta = num - n * den;
    Ok((n as i64, theta as i64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelNbr {
    pub n_pre: i64,
    pub theta_pre: i64,
    pub n_post: i64,
    pub theta_post: i64,
}

impl PixelNbr {
    pub fn dnbr(&self) -> i64 {
        self.n_pre - self.n_post
    }
}

pub fn pixel_nbrs(rasters: &RasterPair, scale: i64) -> Result<Vec<PixelNbr>, BushfireError> {
    (0..rasters.pixels())
        .map(|i| {
            let guard = |_| BushfireError::ZeroDenominator { pixel: i };
            let (n_pre, theta_pre) = compute_nbr_fixed(rasters.pre_nir[i], rasters.pre_swir[i], scale).map_err(guard)?;
            let (n_post, theta_post) = compute_nbr_fixed(rasters.post_nir[i], rasters.post_swir[i], scale).map_err(guard)?;
            Ok(PixelNbr { n_pre, theta_pre, n_post, theta_post })
        })
        .collect()
}

/// Plain-integer evaluation of the claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimOutcome {
    /// `G = Σ 1(dNBR_i ≥ κ) − ε`.
    pub g: i64,
    pub valid: bool,
    pub dnbr: Vec<i64>,
    pub burnt: Vec<bool>,
    pub theta_sq_sum: u64,
}

pub fn ground_truth_claim(rasters: &RasterPair, params: &FixedPointParams) -> Result<ClaimOutcome, BushfireError> {
    let px = pixel_nbrs(rasters, params.scale)?;
    let dnbr: Vec<i64> = px.iter().map(PixelNbr::dnbr).collect();
    let burnt: Vec<bool> = dnbr.iter().map(|d| *d >= params.kappa_scaled).collect();
    let g = burnt.iter().filter(|b| **b).count() as i64 - params.epsilon as i64;
    let theta_sq_sum = px
        .iter()
        .map(|p| (p.theta_pre * p.theta_pre + p.theta_post * p.theta_post) as u64)
        .sum::<u64>();
    let valid = g >= 0 && theta_sq_sum < params.theta_max;
    Ok(ClaimOutcome { g, valid, dnbr, burnt, theta_sq_sum })
}
