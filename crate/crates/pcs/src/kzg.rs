use ark_ec::{AffineRepr, CurveGroup};
use ark_ff::Zero;

use zkclaim_algebra::{msm, Fr, PairingCurve, G1Proj, G1};
use zkclaim_poly::LaurentPoly;

use crate::check::PairingCheck;
use crate::error::PcsError;
use crate::srs::{Srs, VerifierKey};
use crate::trace::VerifyTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Kzg,
    Rkzg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Commitment<E: PairingCurve> {
    pub point: G1<E>,
    pub scheme: Scheme,
}

impl<E: PairingCurve> Commitment<E> {
    pub fn to_bytes(&self) -> Vec<u8> {
        E::g1_to_bytes(&self.point)
    }
}

/// Witness `π = g^{q(x)}` for a single evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpeningProof<E: PairingCurve> {
    pub pi: G1<E>,
}

/// `Σ c_i · base(i)` over the terms of `f`.
fn commit_with<E: PairingCurve>(
    srs: &Srs<E>,
    f: &LaurentPoly<Fr<E>>,
    base: impl Fn(i64) -> Option<G1<E>>,
) -> Result<G1<E>, PcsError> {
    let mut points = Vec::with_capacity(f.num_terms());
    let mut scalars = Vec::with_capacity(f.num_terms());
    for (e, c) in f.terms() {
        let p = base(e).ok_or(PcsError::DegreeOverflow { exp: e, d: srs.degree() })?;
        points.push(p);
        scalars.push(c);
    }
    Ok(msm::<G1Proj<E>>(&scalars, &points)?.into_affine())
}

/// `g^{f(x)}` using the plain powers.
pub fn commit_plain<E: PairingCurve>(srs: &Srs<E>, f: &LaurentPoly<Fr<E>>) -> Result<G1<E>, PcsError> {
    commit_with(srs, f, |i| srs.g_power(i).copied())
}

pub fn kzg_commit<E: PairingCurve>(srs: &Srs<E>, f: &LaurentPoly<Fr<E>>) -> Result<Commitment<E>, PcsError> {
    Ok(Commitment { point: commit_plain(srs, f)?, scheme: Scheme::Kzg })
}

/// Returns `(f(z), g^{q(x)})` with `q = (f − f(z))/(X − z)`.
pub fn kzg_open<E: PairingCurve>(
    srs: &Srs<E>,
    f: &LaurentPoly<Fr<E>>,
    z: Fr<E>,
) -> Result<(Fr<E>, OpeningProof<E>), PcsError> {
    let (q, v) = f.div_rem_linear(z)?;
    Ok((v, OpeningProof { pi: commit_plain(srs, &q)? }))
}

/// `e(F − v·g + z·π, h) · e(−π, h^x) = 1`, the rearranged form of
/// `e(F·g^{−v}, h) = e(π, h^x·h^{−z})` that keeps every scalar in G1.
pub fn kzg_check<E: PairingCurve>(
    vk: &VerifierKey<E>,
    f: &Commitment<E>,
    z: Fr<E>,
    v: Fr<E>,
    proof: &OpeningProof<E>,
    trace: &mut VerifyTrace,
) -> PairingCheck<E> {
    trace.g1_mul(2);
    trace.g1_add(2);
    let lhs = f.point.into_group() - vk.g * v + proof.pi * z;
    let mut check = PairingCheck::new();
    check.push(lhs.into_affine(), vk.h);
    check.push((-proof.pi.into_group()).into_affine(), vk.h_x);
    check
}

pub fn kzg_verify<E: PairingCurve>(
    vk: &VerifierKey<E>,
    f: &Commitment<E>,
    z: Fr<E>,
    v: Fr<E>,
    proof: &OpeningProof<E>,
) -> bool {
    let mut trace = VerifyTrace::new();
    kzg_check(vk, f, z, v, proof, &mut trace).verify(&mut trace)
}

/// `g^{α f(x)}`; fails unless the constant term of `f` is zero.
pub fn rkzg_commit<E: PairingCurve>(srs: &Srs<E>, f: &LaurentPoly<Fr<E>>) -> Result<Commitment<E>, PcsError> {
    if !f.constant_term().is_zero() {
        return Err(PcsError::NonZeroConstantTerm);
    }
    let point = commit_with(srs, f, |i| srs.g_alpha_power(i).copied())?;
    Ok(Commitment { point, scheme: Scheme::Rkzg })
}

/// Same quotient as [`kzg_open`]; `π` uses the plain powers.
pub fn rkzg_open<E: PairingCurve>(
    srs: &Srs<E>,
    f: &LaurentPoly<Fr<E>>,
    z: Fr<E>,
) -> Result<(Fr<E>, OpeningProof<E>), PcsError> {
    kzg_open(srs, f, z)
}

/// `e(π, h^{αx}) · e(g^v π^{−z}, h^α) · e(−F, h) = 1`.
pub fn rkzg_check<E: PairingCurve>(
    vk: &VerifierKey<E>,
    f: &Commitment<E>,
    z: Fr<E>,
    v: Fr<E>,
    proof: &OpeningProof<E>,
    trace: &mut VerifyTrace,
) -> PairingCheck<E> {
    trace.g1_mul(2);
    trace.g1_add(1);
    let mid = vk.g * v - proof.pi * z;
    let mut check = PairingCheck::new();
    check.push(proof.pi, vk.h_alpha_x);
    check.push(mid.into_affine(), vk.h_alpha);
    check.push((-f.point.into_group()).into_affine(), vk.h);
    check
}

pub fn rkzg_verify<E: PairingCurve>(
    vk: &VerifierKey<E>,
    f: &Commitment<E>,
    z: Fr<E>,
    v: Fr<E>,
    proof: &OpeningProof<E>,
) -> bool {
    let mut trace = VerifyTrace::new();
    rkzg_verify_traced(vk, f, z, v, proof, &mut trace)
}

pub fn rkzg_verify_traced<E: PairingCurve>(
    vk: &VerifierKey<E>,
    f: &Commitment<E>,
    z: Fr<E>,
    v: Fr<E>,
    proof: &OpeningProof<E>,
    trace: &mut VerifyTrace,
) -> bool {
    rkzg_check(vk, f, z, v, proof, trace).verify(trace)
}
