use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{anyhow, ensure};
use serde::Serialize;
use zkclaim_algebra::{Fr, PairingCurve};
use zkclaim_bushfire::{
    build_bushfire_cs, build_bushfire_witness, ground_truth_claim, CircuitLayout, DataSplit, FixedPointParams, RasterPair,
};
use zkclaim_insurance::{Chain, GasCostModel, PolicyDraft, Provider, VerifierKind};
use zkclaim_pcs::{Srs, VerifyTrace};
use zkclaim_scs::ConstraintSystem;
use zkclaim_sigs::{keygen, Epoch, Location};
use zkclaim_sonic::{preprocess, prove_batched, prove_with_data, verify, DataSource, SonicProof};

use crate::commands::{rng, simulate_claim};

/// One row of the published scaling table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReferenceRow {
    pub pixels: usize,
    pub linear: usize,
    pub multiplications: usize,
    pub proof_kb: f64,
    pub proving_s: f64,
    pub memory_mb: f64,
}

pub const REFERENCE_TABLE: [ReferenceRow; 5] = [
    ReferenceRow { pixels: 4, linear: 232, multiplications: 222, proof_kb: 1.22, proving_s: 177.0, memory_mb: 16.9 },
    ReferenceRow { pixels: 8, linear: 400, multiplications: 378, proof_kb: 1.22, proving_s: 350.0, memory_mb: 51.5 },
    ReferenceRow { pixels: 16, linear: 736, multiplications: 690, proof_kb: 1.22, proving_s: 652.0, memory_mb: 178.3 },
    ReferenceRow { pixels: 32, linear: 1408, multiplications: 1314, proof_kb: 1.22, proving_s: 1615.0, memory_mb: 659.3 },
    ReferenceRow { pixels: 64, linear: 2752, multiplications: 2562, proof_kb: 1.22, proving_s: 5061.0, memory_mb: 6510.0 },
];

pub fn reference_row(pixels: usize) -> Option<ReferenceRow> {
    REFERENCE_TABLE.iter().copied().find(|r| r.pixels == pixels)
}

/// Least-squares line through `(x, y)` points, returned as `(slope, intercept)`.
pub fn affine_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub pixels: usize,
    pub multiplications: usize,
    pub linear: usize,
    pub srs_degree: usize,
    pub setup_ms: f64,
    pub prove_ms: f64,
    pub verify_ms: f64,
    pub proof_bytes: usize,
    pub peak_rss_kb: Option<u64>,
    pub gas_sonic: u64,
    pub gas_enhanced: u64,
    pub gas_enhanced_plus: u64,
    pub reference: Option<ReferenceRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub curve: &'static str,
    pub rows: Vec<BenchRow>,
}

fn reset_peak_rss() {
    // Writing 5 resets VmHWM on Linux; elsewhere this is a no-op.
    let _ = std::fs::write("/proc/self/clear_refs", "5");
}

fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

/// Half the pixels burn, the rest stay unchanged; every NBR is exact so
/// the rounding residues vanish.
pub fn bench_raster(pixels: usize) -> RasterPair {
    let px: Vec<_> = (0..pixels)
        .map(|i| if i % 2 == 0 { (3000, 1000, 1000, 3000) } else { (2000, 2000, 2000, 2000) })
        .collect();
    RasterPair::from_pixels(&px).expect("bench raster")
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn bench_size<E: PairingCurve>(pixels: usize, seed: u64, repeat: usize) -> anyhow::Result<BenchRow> {
    let params = FixedPointParams::default();
    params.check_pixels(pixels)?;
    let raster = bench_raster(pixels);
    ensure!(ground_truth_claim(&raster, &params)?.valid, "bench raster must satisfy the claim");
    let cs: ConstraintSystem<Fr<E>> = build_bushfire_cs(pixels, &params)?;
    let degree = cs.required_degree();

    let t = Instant::now();
    let srs = Srs::<E>::setup(degree, &mut rng(seed, &format!("bench-srs:{pixels}")))?;
    let setup_ms = ms(t);
    let provider_srs = Srs::<E>::setup(4 * pixels, &mut rng(seed, &format!("bench-provider:{pixels}")))?;
    let keys = keygen(&mut rng(seed, "bench-keys"));
    let tag = Location::new(-35.72, 150.18, Epoch::Post, "2020-01-05")?.tag();

    let wit = build_bushfire_witness::<Fr<E>>(&raster, &params)?;
    let values = wit.source_values(DataSplit::Single).remove(0);
    let sources = vec![DataSource::create("sat", values, provider_srs.clone(), &keys, tag)?];
    let layout = CircuitLayout::new(pixels, params.k_bits).data_layout(DataSplit::Single);
    let key = preprocess(&srs, &cs, layout)?;

    let repeat = repeat.max(1);
    reset_peak_rss();
    let mut prove_ms = 0.0;
    let mut ev: Option<SonicProof<E>> = None;
    for _ in 0..repeat {
        let t = Instant::now();
        ev = Some(prove_batched(&srs, &cs, &wit.core, &sources)?);
        prove_ms += ms(t);
    }
    let peak_rss_kb = peak_rss_kb();
    let ev = ev.expect("repeat >= 1");
    let dat = prove_with_data(&srs, &cs, &wit.core, &sources)?;

    let publics: Vec<_> = sources.iter().map(DataSource::public).collect();
    let mut verify_ms = 0.0;
    for _ in 0..repeat {
        let t = Instant::now();
        ensure!(verify(&key, &publics, &ev, &mut VerifyTrace::default()), "bench proof failed to verify");
        verify_ms += ms(t);
    }

    let draft = PolicyDraft {
        policy_id: format!("bench-{pixels}"),
        insurer: "insurer".into(),
        insuree: "insuree".into(),
        premium: 1,
        sum_insured: 10,
        expiry: u64::MAX,
        pixels,
        params,
        split: DataSplit::Single,
        location_hashes: vec![tag],
        providers: vec![Provider { pk: keys.pk, vk: provider_srs.vk() }],
        key,
    };
    let gas = |kind: VerifierKind, proof: &SonicProof<E>| -> anyhow::Result<u64> {
        let receipt = simulate_claim(draft.clone(), kind, proof, GasCostModel::default())?;
        ensure!(receipt.accepted, "{kind} verifier rejected the bench proof");
        Ok(receipt.gas.total)
    };

    Ok(BenchRow {
        pixels,
        multiplications: cs.n(),
        linear: cs.q(),
        srs_degree: degree,
        setup_ms,
        prove_ms: prove_ms / repeat as f64,
        verify_ms: verify_ms / repeat as f64,
        proof_bytes: ev.to_bytes().len(),
        peak_rss_kb,
        gas_sonic: gas(VerifierKind::Sonic, &dat)?,
        gas_enhanced: gas(VerifierKind::Enhanced, &ev)?,
        gas_enhanced_plus: gas(VerifierKind::EnhancedPlus, &ev)?,
        reference: reference_row(pixels),
    })
}

pub fn run_bench<E: PairingCurve>(sizes: &[usize], seed: u64, repeat: usize) -> anyhow::Result<BenchReport> {
    if sizes.is_empty() {
        return Err(anyhow!("no sizes given"));
    }
    let rows = sizes.iter().map(|&n| bench_size::<E>(n, seed, repeat)).collect::<anyhow::Result<_>>()?;
    Ok(BenchReport { curve: E::ID.as_str(), rows })
}

/// Global verifier deployment gas per kind, for the footer of the table.
pub fn deployment_gas<E: PairingCurve>(seed: u64) -> anyhow::Result<Vec<(VerifierKind, u64)>> {
    let srs = Srs::<E>::setup(8, &mut rng(seed, "bench-deploy"))?;
    let mut chain = Chain::<E>::new(GasCostModel::default());
    Ok(VerifierKind::ALL
        .iter()
        .map(|&k| {
            let h = chain.deploy_global(k, &srs.vk());
            (k, chain.deployment_gas(&h).unwrap_or(0))
        })
        .collect())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

pub fn format_bench(report: &BenchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "curve {}", report.curve);
    let _ = writeln!(
        out,
        "{:>6} {:>7} {:>7} {:>7} {:>7} {:>10} {:>9} {:>11} {:>10} {:>9} {:>9} {:>10} {:>10} {:>10}",
        "pixels", "mult", "ref", "linear", "ref", "prove ms", "ref s", "verify ms", "proof B", "ref KB",
        "RSS MB", "ref MB", "gas sonic", "gas enh"
    );
    for r in &report.rows {
        let p = r.reference;
        let _ = writeln!(
            out,
            "{:>6} {:>7} {:>7} {:>7} {:>7} {:>10.1} {:>9} {:>11.1} {:>10} {:>9} {:>9} {:>10} {:>10} {:>10}",
            r.pixels,
            r.multiplications,
            opt(p.map(|p| p.multiplications)),
            r.linear,
            opt(p.map(|p| p.linear)),
            r.prove_ms,
            opt(p.map(|p| p.proving_s)),
            r.verify_ms,
            r.proof_bytes,
            opt(p.map(|p| p.proof_kb)),
            opt(r.peak_rss_kb.map(|k| format!("{:.1}", k as f64 / 1024.0))),
            opt(p.map(|p| p.memory_mb)),
            r.gas_sonic,
            r.gas_enhanced,
        );
    }
    if let Some(r) = report.rows.first() {
        let _ = writeln!(
            out,
            "claim gas at n={}: sonic {} enhanced {} enhanced+ {} (ratio {:.3})",
            r.pixels,
            r.gas_sonic,
            r.gas_enhanced,
            r.gas_enhanced_plus,
            r.gas_enhanced as f64 / r.gas_sonic as f64
        );
    }
    if report.rows.len() >= 2 {
        let fit = |f: fn(&BenchRow) -> usize| {
            affine_fit(&report.rows.iter().map(|r| (r.pixels as f64, f(r) as f64)).collect::<Vec<_>>())
        };
        let (ms, mi) = fit(|r| r.multiplications);
        let (ls, li) = fit(|r| r.linear);
        let _ = writeln!(out, "fit: mult {ms:.1}n + {mi:.1}, linear {ls:.1}n + {li:.1} (reference 39n + 66, 42n + 64)");
    }
    out
}
