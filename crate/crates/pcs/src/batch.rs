//! Restricted KZG with multi-polynomial, multi-point batch opening.
//!
//! For polynomials `f_i` opened on sets `S_i ⊆ S` with interpolants `γ_i`:
//!
//! ```text
//! f̂(X)  = Σ β^{i−1} Z_{S∖S_i}(X) (f_i(X) − γ_i(X))      π₁ = g^{p(x)},  p = f̂ / Z_S
//! ℓ_μ(X) = Σ Ψ_i (f_i(X) − γ_i(μ)) − Z_S(μ) p(X)         π₂ = g^{w(x)},  w = ℓ_μ / (X − μ)
//! Ψ_i    = β^{i−1} Z_{S∖S_i}(μ)
//! ```
//!
//! and the verifier checks `e(π₂, h^{αx}) = e(Θ, h) · e(Φ′, h^α)` with
//! `Θ = Σ Ψ_i F_i` and `Φ′ = μπ₂ − Z_S(μ)π₁ − (Σ γ_i(μ)Ψ_i)·g`.

use ark_ec::CurveGroup;
use ark_ff::{One, Zero};

use zkclaim_algebra::{msm, Fr, PairingCurve, G1Proj, G1};
use zkclaim_poly::{lagrange_interpolate, vanishing_poly, LaurentPoly};

use crate::check::PairingCheck;
use crate::error::PcsError;
use crate::kzg::{commit_plain, Commitment};
use crate::srs::{Srs, VerifierKey};
use crate::trace::{Phase, VerifyTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchProof<E: PairingCurve> {
    pub pi1: G1<E>,
    pub pi2: G1<E>,
}

/// One polynomial's share of a batch: its commitment, the points it is
/// opened at, and the interpolant of the claimed values on those points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchOpeningClaim<E: PairingCurve> {
    pub commitment: Commitment<E>,
    pub points: Vec<Fr<E>>,
    pub gamma: LaurentPoly<Fr<E>>,
}

fn has_duplicates<T: PartialEq>(v: &[T]) -> bool {
    v.iter().enumerate().any(|(i, a)| v[..i].contains(a))
}

/// `∪ S_i` in first-seen order.
pub fn union_points<F: PartialEq + Copy>(sets: &[Vec<F>]) -> Vec<F> {
    let mut out: Vec<F> = Vec::new();
    for s in sets {
        for p in s {
            if !out.contains(p) {
                out.push(*p);
            }
        }
    }
    out
}

fn product_excluding<F: ark_ff::Field>(all: &[F], skip: &[F], mu: F) -> F {
    all.iter().filter(|s| !skip.contains(s)).map(|s| mu - s).product()
}

/// Interpolants `γ_i` through `(z, f_i(z))` for `z ∈ S_i`.
pub fn opening_gammas<E: PairingCurve>(
    polys: &[LaurentPoly<Fr<E>>],
    point_sets: &[Vec<Fr<E>>],
) -> Result<Vec<LaurentPoly<Fr<E>>>, PcsError> {
    if polys.len() != point_sets.len() {
        return Err(PcsError::LengthMismatch(polys.len(), point_sets.len()));
    }
    polys
        .iter()
        .zip(point_sets)
        .map(|(f, s)| {
            let pts = s.iter().map(|z| Ok((*z, f.eval(*z)?))).collect::<Result<Vec<_>, PcsError>>()?;
            Ok(lagrange_interpolate(&pts)?)
        })
        .collect()
}

/// Produce `(π₁, π₂)`. Fails with [`PcsError::InexactDivision`] when some
/// `γ_i` disagrees with `f_i` on `S_i`.
pub fn rkzgb_batch_open<E: PairingCurve>(
    srs: &Srs<E>,
    polys: &[LaurentPoly<Fr<E>>],
    point_sets: &[Vec<Fr<E>>],
    gammas: &[LaurentPoly<Fr<E>>],
    beta: Fr<E>,
    mu: Fr<E>,
) -> Result<BatchProof<E>, PcsError> {
    rkzgb_batch_open_with(srs, polys, point_sets, gammas, beta, |_| mu).map(|(proof, _)| proof)
}

/// As [`rkzgb_batch_open`], with `μ` derived from `π₁` once it exists
/// (the non-interactive order). Returns the proof and the `μ` used.
pub fn rkzgb_batch_open_with<E: PairingCurve>(
    srs: &Srs<E>,
    polys: &[LaurentPoly<Fr<E>>],
    point_sets: &[Vec<Fr<E>>],
    gammas: &[LaurentPoly<Fr<E>>],
    beta: Fr<E>,
    derive_mu: impl FnOnce(&G1<E>) -> Fr<E>,
) -> Result<(BatchProof<E>, Fr<E>), PcsError> {
    if polys.len() != point_sets.len() || polys.len() != gammas.len() {
        return Err(PcsError::LengthMismatch(polys.len(), point_sets.len().min(gammas.len())));
    }
    for (f, s) in polys.iter().zip(point_sets) {
        if !f.constant_term().is_zero() {
            return Err(PcsError::NonZeroConstantTerm);
        }
        if s.is_empty() || has_duplicates(s) {
            return Err(PcsError::BadPointSet);
        }
    }
    let all = union_points(point_sets);
    let work_bound = srs.degree() as u64 + all.len() as u64;

    let mut f_hat = LaurentPoly::zero_with_bound(work_bound);
    let mut beta_pow = Fr::<E>::one();
    for ((f, s), gamma) in polys.iter().zip(point_sets).zip(gammas) {
        let rest: Vec<Fr<E>> = all.iter().filter(|p| !s.contains(p)).copied().collect();
        let diff = f - gamma;
        let term = if rest.is_empty() {
            diff
        } else {
            vanishing_poly(&rest)?.mul(&diff, work_bound)?
        };
        f_hat = &f_hat + &term.scale(beta_pow);
        beta_pow *= beta;
    }
    let p = f_hat.divide_by_vanishing(&all)?;
    let pi1 = commit_plain(srs, &p)?;

    let mu = derive_mu(&pi1);
    if all.contains(&mu) {
        return Err(PcsError::ChallengeInSet);
    }
    let mut ell = LaurentPoly::zero_with_bound(work_bound);
    let mut beta_pow = Fr::<E>::one();
    for ((f, s), gamma) in polys.iter().zip(point_sets).zip(gammas) {
        let psi = beta_pow * product_excluding(&all, s, mu);
        let shifted = f - &LaurentPoly::constant(gamma.eval(mu)?);
        ell = &ell + &shifted.scale(psi);
        beta_pow *= beta;
    }
    let z_mu: Fr<E> = all.iter().map(|s| mu - s).product();
    ell = &ell - &p.scale(z_mu);
    let (w, rem) = ell.div_rem_linear(mu)?;
    if !rem.is_zero() {
        return Err(PcsError::InexactDivision);
    }
    Ok((BatchProof { pi1, pi2: commit_plain(srs, &w)? }, mu))
}

/// Build the single pairing-product equation of the batch, or `None` when
/// the claims are malformed (empty or repeated points, oversized `γ_i`,
/// `μ ∈ S`).
pub fn rkzgb_batch_check<E: PairingCurve>(
    vk: &VerifierKey<E>,
    claims: &[BatchOpeningClaim<E>],
    beta: Fr<E>,
    mu: Fr<E>,
    proof: &BatchProof<E>,
    trace: &mut VerifyTrace,
) -> Option<PairingCheck<E>> {
    for c in claims {
        if c.points.is_empty() || has_duplicates(&c.points) {
            return None;
        }
        if c.gamma.has_negative_terms() || c.gamma.max_exp().map_or(false, |e| e as usize >= c.points.len()) {
            return None;
        }
    }
    let sets: Vec<Vec<Fr<E>>> = claims.iter().map(|c| c.points.clone()).collect();
    let all = union_points(&sets);
    if all.contains(&mu) {
        return None;
    }

    trace.set_phase(Phase::ComputingPsi);
    let mut psis = Vec::with_capacity(claims.len());
    let mut beta_pow = Fr::<E>::one();
    for c in claims {
        psis.push(beta_pow * product_excluding(&all, &c.points, mu));
        trace.field_ops(2 * (all.len() - c.points.len()) + 2);
        beta_pow *= beta;
    }
    let z_mu: Fr<E> = all.iter().map(|s| mu - s).product();
    trace.field_ops(2 * all.len());

    trace.set_phase(Phase::ComputingTheta);
    let bases: Vec<G1<E>> = claims.iter().map(|c| c.commitment.point).collect();
    trace.g1_mul(claims.len());
    trace.g1_add(claims.len().saturating_sub(1));
    let theta = msm::<G1Proj<E>>(&psis, &bases).ok()?;

    trace.set_phase(Phase::ComputingPhi);
    let mut gamma_sum = Fr::<E>::zero();
    for (c, psi) in claims.iter().zip(&psis) {
        gamma_sum += c.gamma.eval(mu).ok()? * psi;
        trace.field_ops(2 * c.points.len() + 2);
    }
    trace.g1_mul(3);
    trace.g1_add(2);
    let phi = proof.pi2 * mu - proof.pi1 * z_mu - vk.g * gamma_sum;

    let mut check = PairingCheck::new();
    check.push(proof.pi2, vk.h_alpha_x);
    check.push((-theta).into_affine(), vk.h);
    check.push((-phi).into_affine(), vk.h_alpha);
    Some(check)
}

pub fn rkzgb_batch_verify<E: PairingCurve>(
    vk: &VerifierKey<E>,
    claims: &[BatchOpeningClaim<E>],
    beta: Fr<E>,
    mu: Fr<E>,
    proof: &BatchProof<E>,
) -> bool {
    let mut trace = VerifyTrace::new();
    rkzgb_batch_verify_traced(vk, claims, beta, mu, proof, &mut trace)
}

pub fn rkzgb_batch_verify_traced<E: PairingCurve>(
    vk: &VerifierKey<E>,
    claims: &[BatchOpeningClaim<E>],
    beta: Fr<E>,
    mu: Fr<E>,
    proof: &BatchProof<E>,
    trace: &mut VerifyTrace,
) -> bool {
    match rkzgb_batch_check(vk, claims, beta, mu, proof, trace) {
        Some(check) => check.verify(trace),
        None => false,
    }
}
