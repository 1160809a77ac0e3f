use ark_ff::{Field, One, Zero};
use zkclaim_algebra::{Fr, PairingCurve, G1};
use zkclaim_pcs::{
    opening_gammas, rkzg_check, rkzg_commit, rkzg_open, rkzgb_batch_check, rkzgb_batch_open_with, union_points,
    BatchOpeningClaim, BatchProof, Commitment, OpeningProof, PairingCheck, Phase, Scheme, Srs, VerifierKey,
    VerifyTrace,
};
use zkclaim_poly::LaurentPoly;
use zkclaim_scs::{build_r_poly, compute_t, ConstraintSystem, RPoly, SkPolys, Witness};
use zkclaim_sigs::verify_data_bundle;

use crate::error::SonicError;
use crate::key::{check_degree, preprocess, CircuitKey, DataLayout};
use crate::proof::{BasicProof, BatchedProof, CoreEvals, DataProof, SonicProof, Variant, BATCH_SET_SIZES};
use crate::source::{DataSource, SourcePublic};
use crate::transcript::Transcript;

const DOMAIN: &str = "zkclaim-sonic-v1";

fn rkzg<E: PairingCurve>(point: G1<E>) -> Commitment<E> {
    Commitment { point, scheme: Scheme::Rkzg }
}

fn start<E: PairingCurve>(key: &CircuitKey<E>, variant: Variant) -> Transcript {
    let mut tr = Transcript::new(DOMAIN);
    tr.absorb("variant", variant.as_str().as_bytes());
    key.absorb_into(&mut tr);
    tr
}

fn challenge_y<F: Field + ark_ff::PrimeField>(tr: &mut Transcript) -> F {
    tr.challenge_excluding("y", &[F::zero(), F::one()])
}

/// `z ∉ {0, 1, y, y⁻¹}` keeps `z, zy, y, 1` pairwise distinct.
fn challenge_z<F: ark_ff::PrimeField>(tr: &mut Transcript, y: F) -> F {
    let yinv = y.inverse().expect("y ≠ 0");
    tr.challenge_excluding("z", &[F::zero(), F::one(), y, yinv])
}

fn absorb_evals<F: ark_ff::PrimeField>(tr: &mut Transcript, e: &CoreEvals<F>) {
    for (label, v) in [("r1", e.r1), ("r2", e.r2), ("t", e.t), ("k", e.k), ("s", e.s), ("s1", e.s1), ("s2", e.s2)] {
        tr.absorb_scalar(label, &v);
    }
}

/// Polynomials the prover holds once `y` is known.
struct Round<E: PairingCurve> {
    r: LaurentPoly<Fr<E>>,
    t: LaurentPoly<Fr<E>>,
    s_x: LaurentPoly<Fr<E>>,
    s_y: LaurentPoly<Fr<E>>,
    k: LaurentPoly<Fr<E>>,
    com_t: G1<E>,
    com_s_x: G1<E>,
}

impl<E: PairingCurve> Round<E> {
    fn new(srs: &Srs<E>, sk: &SkPolys<Fr<E>>, r: &RPoly<Fr<E>>, y: Fr<E>) -> Result<Self, SonicError> {
        let t = compute_t(r, sk, y)?;
        let s_x = sk.s_x(y)?;
        Ok(Self {
            com_t: rkzg_commit(srs, &t)?.point,
            com_s_x: rkzg_commit(srs, &s_x)?.point,
            r: r.poly().clone(),
            t,
            s_x,
            s_y: sk.s_y(Fr::<E>::one())?,
            k: sk.k_hat(),
        })
    }

    /// The seven `(polynomial, point)` pairs, in proof order.
    fn claims(&self, y: Fr<E>, z: Fr<E>) -> [(&LaurentPoly<Fr<E>>, Fr<E>); 7] {
        [
            (&self.r, z),
            (&self.r, z * y),
            (&self.t, z),
            (&self.k, y),
            (&self.s_x, z),
            (&self.s_x, Fr::<E>::one()),
            (&self.s_y, y),
        ]
    }

    fn open_all(&self, srs: &Srs<E>, y: Fr<E>, z: Fr<E>) -> Result<(CoreEvals<Fr<E>>, [G1<E>; 7]), SonicError> {
        let mut vals = [Fr::<E>::zero(); 7];
        let mut pis = [G1::<E>::default(); 7];
        for (i, (f, p)) in self.claims(y, z).into_iter().enumerate() {
            let (v, pi) = rkzg_open(srs, f, p)?;
            vals[i] = v;
            pis[i] = pi.pi;
        }
        let evals =
            CoreEvals { r1: vals[0], r2: vals[1], t: vals[2], k: vals[3], s: vals[4], s1: vals[5], s2: vals[6] };
        Ok((evals, pis))
    }

    fn evals(&self, y: Fr<E>, z: Fr<E>) -> Result<CoreEvals<Fr<E>>, SonicError> {
        let mut v = [Fr::<E>::zero(); 7];
        for (i, (f, p)) in self.claims(y, z).into_iter().enumerate() {
            v[i] = f.eval(p).map_err(zkclaim_pcs::PcsError::from)?;
        }
        Ok(CoreEvals { r1: v[0], r2: v[1], t: v[2], k: v[3], s: v[4], s1: v[5], s2: v[6] })
    }
}

pub fn prove_basic<E: PairingCurve>(
    srs: &Srs<E>,
    cs: &ConstraintSystem<Fr<E>>,
    wit: &Witness<Fr<E>>,
) -> Result<SonicProof<E>, SonicError> {
    let key = preprocess(srs, cs, DataLayout::without_data(cs.n()))?;
    prove_basic_with_key(srs, &key, cs, wit)
}

pub fn prove_basic_with_key<E: PairingCurve>(
    srs: &Srs<E>,
    key: &CircuitKey<E>,
    cs: &ConstraintSystem<Fr<E>>,
    wit: &Witness<Fr<E>>,
) -> Result<SonicProof<E>, SonicError> {
    check_degree(srs, cs)?;
    if !cs.is_satisfied(wit)? {
        return Err(SonicError::Unsatisfied);
    }
    let r = build_r_poly(wit);
    let com_r = rkzg_commit(srs, r.poly())?.point;

    let mut tr = start(key, Variant::Basic);
    tr.absorb_point::<E>("R", &com_r);
    let y = challenge_y::<Fr<E>>(&mut tr);

    let round = Round::new(srs, &cs.sk_polys(), &r, y)?;
    tr.absorb_point::<E>("T", &round.com_t);
    tr.absorb_point::<E>("S_X", &round.com_s_x);
    let z = challenge_z(&mut tr, y);

    let (evals, openings) = round.open_all(srs, y, z)?;
    Ok(SonicProof::Basic(BasicProof { r: com_r, t: round.com_t, s_x: round.com_s_x, evals, openings }))
}

/// `t = r₁(r₂ + s) − k` and `s₁ = s₂`.
fn scalar_equations<F: Field>(e: &CoreEvals<F>, trace: &mut VerifyTrace) -> bool {
    trace.field_ops(4);
    e.t == e.r1 * (e.r2 + e.s) - e.k && e.s1 == e.s2
}

/// The seven opening checks against `R, T, S_X, K, S_Y`.
#[allow(clippy::too_many_arguments)]
fn core_opening_checks<E: PairingCurve>(
    vk: &VerifierKey<E>,
    key: &CircuitKey<E>,
    r: G1<E>,
    t: G1<E>,
    s_x: G1<E>,
    e: &CoreEvals<Fr<E>>,
    openings: &[G1<E>; 7],
    y: Fr<E>,
    z: Fr<E>,
    trace: &mut VerifyTrace,
) -> Vec<PairingCheck<E>> {
    let one = Fr::<E>::one();
    let claims = [
        (r, z, e.r1),
        (r, z * y, e.r2),
        (t, z, e.t),
        (key.k.point, y, e.k),
        (s_x, z, e.s),
        (s_x, one, e.s1),
        (key.s_y.point, y, e.s2),
    ];
    trace.field_ops(1);
    claims
        .iter()
        .zip(openings)
        .map(|((c, p, v), pi)| rkzg_check(vk, &rkzg(*c), *p, *v, &OpeningProof { pi: *pi }, trace))
        .collect()
}

fn record_input<E: PairingCurve>(proof: &SonicProof<E>, trace: &mut VerifyTrace) {
    trace.set_phase(Phase::ProcessingInput);
    trace.input(proof.to_bytes().len());
}

fn record_hashes(tr: &Transcript, trace: &mut VerifyTrace) {
    let prev = trace.phase();
    trace.set_phase(Phase::ProcessingInput);
    for n in tr.hash_inputs() {
        trace.hash(*n);
    }
    trace.set_phase(prev);
}

pub fn verify_basic<E: PairingCurve>(key: &CircuitKey<E>, proof: &SonicProof<E>) -> bool {
    verify_basic_traced(key, proof, &mut VerifyTrace::new())
}

pub fn verify_basic_traced<E: PairingCurve>(
    key: &CircuitKey<E>,
    proof: &SonicProof<E>,
    trace: &mut VerifyTrace,
) -> bool {
    let SonicProof::Basic(p) = proof else { return false };
    if key.layout.sources() != 0 {
        return false;
    }
    record_input(proof, trace);
    let mut tr = start(key, Variant::Basic);
    tr.absorb_point::<E>("R", &p.r);
    let y = challenge_y::<Fr<E>>(&mut tr);
    tr.absorb_point::<E>("T", &p.t);
    tr.absorb_point::<E>("S_X", &p.s_x);
    let z = challenge_z(&mut tr, y);
    record_hashes(&tr, trace);

    trace.set_phase(Phase::OtherEquations);
    let scalars_ok = scalar_equations(&p.evals, trace);

    trace.set_phase(Phase::PairingCheck);
    let checks = core_opening_checks(&key.vk, key, p.r, p.t, p.s_x, &p.evals, &p.openings, y, z, trace);
    let pairings_ok = checks.iter().fold(true, |ok, c| c.verify(trace) && ok);
    trace.set_phase(Phase::Others);
    scalars_ok && pairings_ok
}

/// Witness for the full system: `a = (ã, d_1, …, d_J)`, `b` and `c`
/// zero over the data slots. Also returns `r̃`, the part of `r` outside
/// the data slots.
fn extend_witness<E: PairingCurve>(
    cs: &ConstraintSystem<Fr<E>>,
    core: &Witness<Fr<E>>,
    sources: &[DataSource<E>],
) -> Result<(DataLayout, Witness<Fr<E>>, RPoly<Fr<E>>, RPoly<Fr<E>>), SonicError> {
    let layout = DataLayout::new(core.n(), sources.iter().map(|s| s.values.len()).collect());
    if layout.total() != cs.n() {
        return Err(SonicError::LayoutMismatch(format!(
            "core witness {} + data {} ≠ {} gates",
            core.n(),
            layout.data_len(),
            cs.n()
        )));
    }
    if sources.is_empty() {
        return Err(SonicError::LayoutMismatch("no data sources".into()));
    }
    let mut full = core.clone();
    let mut tilde = core.clone();
    for s in sources {
        full.a.extend(&s.values);
        tilde.a.extend(std::iter::repeat(Fr::<E>::zero()).take(s.values.len()));
        for w in [&mut full, &mut tilde] {
            w.b.extend(std::iter::repeat(Fr::<E>::zero()).take(s.values.len()));
            w.c.extend(std::iter::repeat(Fr::<E>::zero()).take(s.values.len()));
        }
    }
    let r = build_r_poly(&full);
    let r_tilde = build_r_poly(&tilde);
    Ok((layout, full, r, r_tilde))
}

fn check_sources<E: PairingCurve>(sources: &[DataSource<E>]) -> Result<(), SonicError> {
    for (j, s) in sources.iter().enumerate() {
        if !s.signature_valid() {
            return Err(SonicError::SignatureInvalid(j));
        }
        if rkzg_commit(&s.srs, &s.poly())? != s.commitment {
            return Err(SonicError::DataMismatch(j));
        }
    }
    Ok(())
}

/// Everything both data-carrying provers compute before the openings.
struct DataRound<E: PairingCurve> {
    tr: Transcript,
    round: Round<E>,
    r_tilde: LaurentPoly<Fr<E>>,
    com_r: G1<E>,
    com_r_tilde: G1<E>,
    y: Fr<E>,
    z: Fr<E>,
}

fn data_round<E: PairingCurve>(
    srs: &Srs<E>,
    cs: &ConstraintSystem<Fr<E>>,
    core: &Witness<Fr<E>>,
    sources: &[DataSource<E>],
    variant: Variant,
) -> Result<DataRound<E>, SonicError> {
    check_degree(srs, cs)?;
    check_sources(sources)?;
    let (layout, full, r, r_tilde) = extend_witness(cs, core, sources)?;
    if !cs.is_satisfied(&full)? {
        return Err(SonicError::Unsatisfied);
    }
    let key = preprocess(srs, cs, layout)?;
    let com_r = rkzg_commit(srs, r.poly())?.point;
    let com_r_tilde = rkzg_commit(srs, r_tilde.poly())?.point;

    let mut tr = start(&key, variant);
    for s in sources {
        tr.absorb_point::<E>("D", &s.commitment.point);
    }
    tr.absorb_point::<E>("R", &com_r);
    tr.absorb_point::<E>("R~", &com_r_tilde);
    let y = challenge_y::<Fr<E>>(&mut tr);

    let round = Round::new(srs, &cs.sk_polys(), &r, y)?;
    tr.absorb_point::<E>("T", &round.com_t);
    tr.absorb_point::<E>("S_X", &round.com_s_x);
    let z = challenge_z(&mut tr, y);
    Ok(DataRound { tr, round, r_tilde: r_tilde.into_poly(), com_r, com_r_tilde, y, z })
}

pub fn prove_with_data<E: PairingCurve>(
    srs: &Srs<E>,
    cs: &ConstraintSystem<Fr<E>>,
    core: &Witness<Fr<E>>,
    sources: &[DataSource<E>],
) -> Result<SonicProof<E>, SonicError> {
    let dr = data_round(srs, cs, core, sources, Variant::Dat)?;
    let (evals, openings) = dr.round.open_all(srs, dr.y, dr.z)?;
    let (r_tilde_val, r_tilde_pi) = rkzg_open(srs, &dr.r_tilde, dr.z)?;
    let mut d_vals = Vec::new();
    let mut d_openings = Vec::new();
    for s in sources {
        let (v, pi) = rkzg_open(&s.srs, &s.poly(), dr.z)?;
        d_vals.push(v);
        d_openings.push(pi.pi);
    }
    Ok(SonicProof::Dat(DataProof {
        d: sources.iter().map(|s| s.commitment.point).collect(),
        r: dr.com_r,
        r_tilde: dr.com_r_tilde,
        t: dr.round.com_t,
        s_x: dr.round.com_s_x,
        evals,
        r_tilde_val,
        d_vals,
        openings,
        r_tilde_opening: r_tilde_pi.pi,
        d_openings,
        signatures: sources.iter().map(|s| s.signature).collect(),
        public_keys: sources.iter().map(|s| s.pk).collect(),
    }))
}

/// `σ_j` over `H ‖ D_j` under the registered key, one per source.
fn signature_checks<E: PairingCurve>(
    sources: &[SourcePublic<E>],
    d: &[G1<E>],
    sigs: &[zkclaim_sigs::Signature],
    pks: &[zkclaim_sigs::PublicKey],
    trace: &mut VerifyTrace,
) -> bool {
    trace.set_phase(Phase::Others);
    let mut ok = true;
    for (j, src) in sources.iter().enumerate() {
        trace.signature_check();
        ok &= pks[j] == src.pk && verify_data_bundle(&src.pk, &src.tag, &rkzg::<E>(d[j]), &sigs[j]);
    }
    ok
}

/// `r₁ = r̃ + Σ d_j z^{offset_j}`.
fn decomposition_holds<F: Field>(
    layout: &DataLayout,
    r1: F,
    r_tilde: F,
    d_vals: &[F],
    z: F,
    trace: &mut VerifyTrace,
) -> bool {
    let mut acc = r_tilde;
    for (j, d) in d_vals.iter().enumerate() {
        let off = layout.offset(j) as u64;
        trace.field_ops(2 + 2 * (64 - off.leading_zeros() as usize));
        acc += *d * z.pow([off]);
    }
    acc == r1
}

pub fn verify_with_data<E: PairingCurve>(
    key: &CircuitKey<E>,
    sources: &[SourcePublic<E>],
    proof: &SonicProof<E>,
) -> bool {
    verify_with_data_traced(key, sources, proof, &mut VerifyTrace::new())
}

pub fn verify_with_data_traced<E: PairingCurve>(
    key: &CircuitKey<E>,
    sources: &[SourcePublic<E>],
    proof: &SonicProof<E>,
    trace: &mut VerifyTrace,
) -> bool {
    let SonicProof::Dat(p) = proof else { return false };
    let j = p.d.len();
    if sources.len() != j || key.layout.sources() != j {
        return false;
    }
    record_input(proof, trace);
    let mut tr = start(key, Variant::Dat);
    for d in &p.d {
        tr.absorb_point::<E>("D", d);
    }
    tr.absorb_point::<E>("R", &p.r);
    tr.absorb_point::<E>("R~", &p.r_tilde);
    let y = challenge_y::<Fr<E>>(&mut tr);
    tr.absorb_point::<E>("T", &p.t);
    tr.absorb_point::<E>("S_X", &p.s_x);
    let z = challenge_z(&mut tr, y);
    record_hashes(&tr, trace);

    let sigs_ok = signature_checks(sources, &p.d, &p.signatures, &p.public_keys, trace);

    trace.set_phase(Phase::OtherEquations);
    let scalars_ok = scalar_equations(&p.evals, trace)
        && decomposition_holds(&key.layout, p.evals.r1, p.r_tilde_val, &p.d_vals, z, trace);

    trace.set_phase(Phase::PairingCheck);
    let mut checks = core_opening_checks(&key.vk, key, p.r, p.t, p.s_x, &p.evals, &p.openings, y, z, trace);
    checks.push(rkzg_check(
        &key.vk,
        &rkzg(p.r_tilde),
        z,
        p.r_tilde_val,
        &OpeningProof { pi: p.r_tilde_opening },
        trace,
    ));
    for (idx, src) in sources.iter().enumerate() {
        checks.push(rkzg_check(
            &src.vk,
            &rkzg(p.d[idx]),
            z,
            p.d_vals[idx],
            &OpeningProof { pi: p.d_openings[idx] },
            trace,
        ));
    }
    let pairings_ok = checks.iter().fold(true, |ok, c| c.verify(trace) && ok);
    trace.set_phase(Phase::Others);
    sigs_ok && scalars_ok && pairings_ok
}

fn batch_point_sets<F: Field>(y: F, z: F) -> Vec<Vec<F>> {
    vec![vec![z], vec![z, z * y], vec![z], vec![y], vec![z, F::one()], vec![y]]
}

fn padded_coeffs<F: Field>(g: &LaurentPoly<F>, len: usize) -> Vec<F> {
    (0..len as i64).map(|e| g.coeff(e)).collect()
}

fn absorb_batch_scalars<F: ark_ff::PrimeField>(
    tr: &mut Transcript,
    r_tilde: F,
    evals: &CoreEvals<F>,
    d_vals: &[F],
    gammas: &[Vec<F>],
) {
    tr.absorb_scalar("r~", &r_tilde);
    absorb_evals(tr, evals);
    for d in d_vals {
        tr.absorb_scalar("d", d);
    }
    for g in gammas {
        let mut bytes = Vec::new();
        for c in g {
            bytes.extend(zkclaim_algebra::scalar_to_bytes(c));
        }
        tr.absorb("gamma", &bytes);
    }
}

pub fn prove_batched<E: PairingCurve>(
    srs: &Srs<E>,
    cs: &ConstraintSystem<Fr<E>>,
    core: &Witness<Fr<E>>,
    sources: &[DataSource<E>],
) -> Result<SonicProof<E>, SonicError> {
    let mut dr = data_round(srs, cs, core, sources, Variant::Ev)?;
    let (y, z) = (dr.y, dr.z);
    let evals = dr.round.evals(y, z)?;
    let r_tilde_val = dr.r_tilde.eval(z).map_err(zkclaim_pcs::PcsError::from)?;

    let mut d_vals = Vec::new();
    let mut d_openings = Vec::new();
    for s in sources {
        let (v, pi) = rkzg_open(&s.srs, &s.poly(), z)?;
        d_vals.push(v);
        d_openings.push(pi.pi);
    }

    let polys = vec![
        dr.r_tilde.clone(),
        dr.round.r.clone(),
        dr.round.t.clone(),
        dr.round.k.clone(),
        dr.round.s_x.clone(),
        dr.round.s_y.clone(),
    ];
    let sets = batch_point_sets(y, z);
    let gamma_polys = opening_gammas::<E>(&polys, &sets)?;
    let gammas: Vec<Vec<Fr<E>>> =
        gamma_polys.iter().zip(BATCH_SET_SIZES).map(|(g, n)| padded_coeffs(g, n)).collect();

    let tr = &mut dr.tr;
    absorb_batch_scalars(tr, r_tilde_val, &evals, &d_vals, &gammas);
    let beta = tr.challenge_excluding::<Fr<E>>("beta", &[Fr::<E>::zero()]);
    let mut forbidden = union_points(&sets);
    forbidden.push(Fr::<E>::zero());
    let (batch, _mu): (BatchProof<E>, _) =
        rkzgb_batch_open_with(srs, &polys, &sets, &gamma_polys, beta, |pi1| {
            tr.absorb_point::<E>("pi1", pi1);
            tr.challenge_excluding("mu", &forbidden)
        })?;

    Ok(SonicProof::Ev(BatchedProof {
        d: sources.iter().map(|s| s.commitment.point).collect(),
        r: dr.com_r,
        r_tilde: dr.com_r_tilde,
        t: dr.round.com_t,
        s_x: dr.round.com_s_x,
        r_tilde_val,
        evals,
        d_vals,
        gammas,
        pi1: batch.pi1,
        pi2: batch.pi2,
        d_openings,
        signatures: sources.iter().map(|s| s.signature).collect(),
        public_keys: sources.iter().map(|s| s.pk).collect(),
    }))
}

pub fn verify_batched<E: PairingCurve>(
    key: &CircuitKey<E>,
    sources: &[SourcePublic<E>],
    proof: &SonicProof<E>,
) -> bool {
    verify_batched_traced(key, sources, proof, &mut VerifyTrace::new())
}

pub fn verify_batched_traced<E: PairingCurve>(
    key: &CircuitKey<E>,
    sources: &[SourcePublic<E>],
    proof: &SonicProof<E>,
    trace: &mut VerifyTrace,
) -> bool {
    let SonicProof::Ev(p) = proof else { return false };
    let j = p.d.len();
    if sources.len() != j || key.layout.sources() != j {
        return false;
    }
    record_input(proof, trace);
    let mut tr = start(key, Variant::Ev);
    for d in &p.d {
        tr.absorb_point::<E>("D", d);
    }
    tr.absorb_point::<E>("R", &p.r);
    tr.absorb_point::<E>("R~", &p.r_tilde);
    let y = challenge_y::<Fr<E>>(&mut tr);
    tr.absorb_point::<E>("T", &p.t);
    tr.absorb_point::<E>("S_X", &p.s_x);
    let z = challenge_z(&mut tr, y);
    absorb_batch_scalars(&mut tr, p.r_tilde_val, &p.evals, &p.d_vals, &p.gammas);
    let beta = tr.challenge_excluding::<Fr<E>>("beta", &[Fr::<E>::zero()]);
    let sets = batch_point_sets(y, z);
    let mut forbidden = union_points(&sets);
    forbidden.push(Fr::<E>::zero());
    tr.absorb_point::<E>("pi1", &p.pi1);
    let mu = tr.challenge_excluding("mu", &forbidden);
    tr.absorb_point::<E>("pi2", &p.pi2);
    for pi in &p.d_openings {
        tr.absorb_point::<E>("pi_d", pi);
    }
    let rho = tr.challenge_excluding::<Fr<E>>("rho", &[Fr::<E>::zero()]);
    record_hashes(&tr, trace);

    let sigs_ok = signature_checks(sources, &p.d, &p.signatures, &p.public_keys, trace);

    // Claimed γ_i must interpolate the opened scalars.
    trace.set_phase(Phase::OtherEquations);
    let e = &p.evals;
    let expected: [&[Fr<E>]; 6] =
        [&[p.r_tilde_val], &[e.r1, e.r2], &[e.t], &[e.k], &[e.s, e.s1], &[e.s2]];
    let gamma_polys: Vec<LaurentPoly<Fr<E>>> =
        p.gammas.iter().map(|g| LaurentPoly::from_coeffs(g)).collect();
    let mut scalars_ok = true;
    for ((g, pts), vals) in gamma_polys.iter().zip(&sets).zip(expected) {
        for (pt, v) in pts.iter().zip(vals) {
            trace.field_ops(2 * pts.len());
            scalars_ok &= g.eval(*pt).ok() == Some(*v);
        }
    }
    scalars_ok &= scalar_equations(e, trace);
    scalars_ok &= decomposition_holds(&key.layout, e.r1, p.r_tilde_val, &p.d_vals, z, trace);

    let commitments = [p.r_tilde, p.r, p.t, key.k.point, p.s_x, key.s_y.point];
    let claims: Vec<BatchOpeningClaim<E>> = commitments
        .iter()
        .zip(&sets)
        .zip(gamma_polys)
        .map(|((c, pts), gamma)| BatchOpeningClaim { commitment: rkzg(*c), points: pts.clone(), gamma })
        .collect();
    let batch = BatchProof { pi1: p.pi1, pi2: p.pi2 };
    let Some(mut check) = rkzgb_batch_check(&key.vk, &claims, beta, mu, &batch, trace) else {
        trace.set_phase(Phase::Others);
        return false;
    };

    // Per-source openings live under foreign reference strings; fold them
    // into the same product with powers of ρ.
    trace.set_phase(Phase::PairingCheck);
    let mut rho_pow = rho;
    for (idx, src) in sources.iter().enumerate() {
        let c = rkzg_check(&src.vk, &rkzg(p.d[idx]), z, p.d_vals[idx], &OpeningProof { pi: p.d_openings[idx] }, trace);
        check.merge_scaled(&c, rho_pow, trace);
        rho_pow *= rho;
    }
    let pairing_ok = check.verify(trace);
    trace.set_phase(Phase::Others);
    sigs_ok && scalars_ok && pairing_ok
}

/// Dispatch on the proof variant.
pub fn verify<E: PairingCurve>(
    key: &CircuitKey<E>,
    sources: &[SourcePublic<E>],
    proof: &SonicProof<E>,
    trace: &mut VerifyTrace,
) -> bool {
    match proof.variant() {
        Variant::Basic => sources.is_empty() && verify_basic_traced(key, proof, trace),
        Variant::Dat => verify_with_data_traced(key, sources, proof, trace),
        Variant::Ev => verify_batched_traced(key, sources, proof, trace),
    }
}
