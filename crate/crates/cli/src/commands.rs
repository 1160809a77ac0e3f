use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::json;
use zkclaim_algebra::{keccak256, to_hex, Fr, PairingCurve};
use zkclaim_bushfire::{
    build_bushfire_cs, build_bushfire_witness, ground_truth_claim, load_raster, BushfireError, CircuitLayout,
    DataBundleJson, DataSplit, FixedPointParams, RasterPair,
};
use zkclaim_insurance::{
    run_scenario, Artifacts, Chain, ClaimReceipt, GasCostModel, GasReport, PolicyDraft, Provider, Scenario, VerifierKind,
};
use zkclaim_pcs::{Srs, VerifierKey};
use zkclaim_scs::ConstraintSystem;
use zkclaim_sigs::{keygen as sig_keygen, Epoch, Location};
use zkclaim_sonic::{preprocess, prove_batched, prove_with_data, DataSource, ProofJson, SonicProof, Variant};

use crate::error::{CliError, CliResult};
use crate::files::{
    load_params, load_policy, load_srs, load_vk, read_json, srs_bin, verifier_json, write_file, write_json, KeyFile,
    ParamsFile, PolicyFile, Workspace, VERSION,
};

/// Options shared by every command.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub ws: Workspace,
    pub seed: u64,
    pub force: bool,
}

/// Human-readable text plus the same facts as JSON.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    /// Set when the command ran to completion but the verdict is a rejection.
    pub rejected: bool,
}

/// Deterministic randomness for one purpose: ChaCha20 keyed by
/// `keccak(label ‖ seed)`.
pub fn rng(seed: u64, label: &str) -> ChaCha20Rng {
    let mut input = label.as_bytes().to_vec();
    input.extend_from_slice(&seed.to_be_bytes());
    ChaCha20Rng::from_seed(keccak256(&input))
}

/// `lat,lon,epoch,date`, e.g. `-35.72,150.18,post,2020-01-05`.
pub fn parse_location(s: &str) -> anyhow::Result<Location> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [lat, lon, epoch, date] = parts[..] else {
        bail!("location must be lat,lon,epoch,date; got {s:?}");
    };
    let epoch: Epoch = epoch.parse()?;
    Ok(Location::new(lat.parse().context("latitude")?, lon.parse().context("longitude")?, epoch, date)?)
}

pub fn setup<E: PairingCurve>(ctx: &Ctx, degree: usize, out: Option<PathBuf>) -> CliResult<Report> {
    let dir = out.unwrap_or_else(|| ctx.ws.srs().join("main"));
    let label = format!("setup:{}", dir.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default());
    for f in [srs_bin(&dir), verifier_json(&dir)] {
        if f.exists() && !ctx.force {
            return Err(CliError::Usage(anyhow!("{} exists; pass --force to overwrite", f.display())));
        }
    }
    let srs = Srs::<E>::setup(degree, &mut rng(ctx.seed, &label)).map_err(anyhow::Error::from)?;
    srs.check_consistency(degree <= 512).map_err(anyhow::Error::from)?;
    write_file(&srs_bin(&dir), &srs.to_bytes(), ctx.force)?;
    let vk = srs.vk().to_json(degree);
    write_json(&verifier_json(&dir), &vk, ctx.force)?;
    Ok(Report {
        text: format!(
            "wrote {} (degree {degree}, {}) and verifier subset of {} elements\nsrs digest {}",
            dir.display(),
            E::ID,
            vk.element_count,
            to_hex(&srs.digest())
        ),
        json: json!({"dir": dir, "degree": degree, "curve": E::ID.as_str(), "verifier_elements": vk.element_count, "digest": to_hex(&srs.digest())}),
        rejected: false,
    })
}

pub fn keygen(ctx: &Ctx, name: &str, out: Option<PathBuf>) -> CliResult<Report> {
    let path = out.unwrap_or_else(|| ctx.ws.keys().join(format!("{name}.json")));
    let kp = sig_keygen(&mut rng(ctx.seed, &format!("keygen:{name}")));
    let file = KeyFile::from_pair(&kp);
    let public = path.with_extension("pub.json");
    write_json(&path, &file, ctx.force)?;
    write_json(&public, &file.public(), ctx.force)?;
    Ok(Report {
        text: format!("wrote {} and {}\npk {}", path.display(), public.display(), file.pk),
        json: json!({"key": path, "public": public, "pk": file.pk}),
        rejected: false,
    })
}

pub fn params(ctx: &Ctx, params: FixedPointParams, out: Option<PathBuf>) -> CliResult<Report> {
    params.validate().map_err(anyhow::Error::from)?;
    let path = out.unwrap_or_else(|| ctx.ws.policies().join("params.json"));
    write_json(&path, &ParamsFile { version: VERSION, params }, ctx.force)?;
    Ok(Report { text: format!("wrote {}", path.display()), json: json!({"params": path, "digest": to_hex(&params.digest())}), rejected: false })
}

#[derive(Debug, Clone)]
pub struct PolicyArgs {
    pub id: String,
    pub insurer: String,
    pub insuree: String,
    pub premium: u64,
    pub sum_insured: u64,
    pub expiry: u64,
    pub pixels: usize,
    pub params: Option<PathBuf>,
    pub split: DataSplit,
    pub locations: Vec<String>,
    pub provider_keys: Vec<PathBuf>,
    pub provider_srs: Vec<PathBuf>,
    pub srs: PathBuf,
    pub out: Option<PathBuf>,
}

/// Build the circuit key for the policy terms and write the policy file.
pub fn policy<E: PairingCurve>(ctx: &Ctx, a: PolicyArgs) -> CliResult<Report> {
    let params = match &a.params {
        Some(p) => load_params(p)?,
        None => FixedPointParams::default(),
    };
    let sources = a.split.lengths(a.pixels).len();
    if a.locations.len() != sources || a.provider_keys.len() != sources || a.provider_srs.len() != sources {
        return Err(CliError::Usage(anyhow!(
            "split {} needs {sources} --location, --provider-key and --provider-srs values",
            a.split.as_str()
        )));
    }
    let location_hashes = a.locations.iter().map(|l| parse_location(l).map(|l| l.tag())).collect::<anyhow::Result<Vec<_>>>()?;
    let providers = a
        .provider_keys
        .iter()
        .zip(&a.provider_srs)
        .map(|(k, s)| Ok(Provider { pk: KeyFile::load(k)?.public_key()?, vk: load_vk::<E>(s)? }))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let srs = load_srs::<E>(&a.srs)?;
    let cs: ConstraintSystem<Fr<E>> = build_bushfire_cs(a.pixels, &params).map_err(anyhow::Error::from)?;
    let layout = CircuitLayout::new(a.pixels, params.k_bits).data_layout(a.split);
    let key = preprocess(&srs, &cs, layout).map_err(anyhow::Error::from)?;
    let draft = PolicyDraft {
        policy_id: a.id.clone(),
        insurer: a.insurer,
        insuree: a.insuree,
        premium: a.premium,
        sum_insured: a.sum_insured,
        expiry: a.expiry,
        pixels: a.pixels,
        params,
        split: a.split,
        location_hashes,
        providers,
        key,
    };
    let path = a.out.unwrap_or_else(|| ctx.ws.policies().join(format!("{}.json", a.id)));
    write_json(&path, &PolicyFile::from_draft(&draft), ctx.force)?;
    Ok(Report {
        text: format!(
            "wrote {} ({} pixels, {} multiplication and {} linear constraints, {} source(s))",
            path.display(),
            a.pixels,
            cs.n(),
            cs.q(),
            sources
        ),
        json: json!({"policy": path, "multiplications": cs.n(), "linear": cs.q(), "sources": sources}),
        rejected: false,
    })
}

/// Which raster values a bundle carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    All,
    Pre,
    Post,
}

impl std::str::FromStr for Part {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "all" => Ok(Part::All),
            "pre" => Ok(Part::Pre),
            "post" => Ok(Part::Post),
            _ => bail!("part must be all, pre or post"),
        }
    }
}

fn part_values(r: &RasterPair, part: Part) -> Vec<u64> {
    let v = r.data_values();
    let half = v.len() / 2;
    match part {
        Part::All => v,
        Part::Pre => v[..half].to_vec(),
        Part::Post => v[half..].to_vec(),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn data_commit<E: PairingCurve>(
    ctx: &Ctx,
    raster: &Path,
    location: &str,
    key: &Path,
    srs: &Path,
    part: Part,
    id: &str,
    out: Option<PathBuf>,
) -> CliResult<Report> {
    let r = load_raster(raster).map_err(anyhow::Error::from)?;
    let tag = parse_location(location)?.tag();
    let kp = KeyFile::load(key)?.key_pair()?;
    let srs = load_srs::<E>(srs)?;
    let values = part_values(&r, part).into_iter().map(Fr::<E>::from).collect();
    let src = DataSource::create(id, values, srs, &kp, tag).map_err(anyhow::Error::from)?;
    if !src.signature_valid() {
        return Err(CliError::Usage(anyhow!("fresh signature does not verify")));
    }
    let bundle = DataBundleJson::from_source(&src).map_err(anyhow::Error::from)?;
    let path = out.unwrap_or_else(|| ctx.ws.data().join(format!("{id}.json")));
    write_json(&path, &bundle, ctx.force)?;
    Ok(Report {
        text: format!(
            "wrote {} ({} values, {}x{} raster)\nH {}\nD {}",
            path.display(),
            bundle.values.len(),
            r.width,
            r.height,
            bundle.h,
            bundle.commitment
        ),
        json: json!({"bundle": path, "H": bundle.h, "commitment": bundle.commitment, "srs_digest": bundle.srs_digest}),
        rejected: false,
    })
}

/// Rebuild each bundle's data source under the matching provider SRS and
/// check it against the policy's registered providers and location hashes.
pub fn load_sources<E: PairingCurve>(
    draft: &PolicyDraft<E>,
    bundles: &[PathBuf],
    provider_srs: &[PathBuf],
) -> CliResult<Vec<DataSource<E>>> {
    let srss = provider_srs.iter().map(|p| load_srs::<E>(p)).collect::<anyhow::Result<Vec<_>>>()?;
    if bundles.len() != draft.providers.len() {
        return Err(CliError::Usage(anyhow!("policy expects {} bundle(s), got {}", draft.providers.len(), bundles.len())));
    }
    let mut loaded = Vec::new();
    for path in bundles {
        let bundle: DataBundleJson = read_json(path)?;
        let digest = zkclaim_algebra::from_hex(&bundle.srs_digest).map_err(anyhow::Error::from)?;
        let srs = srss
            .iter()
            .find(|s| s.digest().as_slice() == digest.as_slice())
            .ok_or_else(|| anyhow!("no --provider-srs matches the digest in {}", path.display()))?;
        let src = bundle
            .into_source::<E>(srs.clone())
            .map_err(|e| CliError::domain(format!("{}: {e}", path.display())))?;
        if !src.signature_valid() {
            return Err(CliError::domain(format!("{}: signature does not bind H and D", path.display())));
        }
        loaded.push((path, Some(src)));
    }
    // Each policy slot takes the bundle signed by its provider for its location.
    let mut sources = Vec::new();
    for (j, (provider, tag)) in draft.providers.iter().zip(&draft.location_hashes).enumerate() {
        let slot = loaded.iter_mut().find(|(_, s)| {
            s.as_ref().is_some_and(|s| s.pk == provider.pk && s.srs.vk() == provider.vk && s.tag == *tag)
        });
        match slot.and_then(|(_, s)| s.take()) {
            Some(src) => sources.push(src),
            None => {
                return Err(CliError::domain(format!(
                    "no bundle is signed by registered provider {j} for the policy's location hash"
                )))
            }
        }
    }
    Ok(sources)
}

fn raster_from_sources<E: PairingCurve>(sources: &[DataSource<E>], pixels: usize) -> CliResult<RasterPair> {
    let values: Vec<u64> = sources
        .iter()
        .flat_map(|s| s.values.iter())
        .map(|v| {
            let s = v.to_string();
            s.parse::<u64>().map_err(|_| anyhow!("data value {s} is not a raster count"))
        })
        .collect::<anyhow::Result<_>>()?;
    if values.len() != 4 * pixels {
        return Err(CliError::Usage(anyhow!("bundles carry {} values, policy needs {}", values.len(), 4 * pixels)));
    }
    let band = |k: usize| values[k * pixels..(k + 1) * pixels].to_vec();
    RasterPair::new(pixels, 1, band(0), band(1), band(2), band(3)).map_err(|e| CliError::domain(e.to_string()))
}

pub struct ProveArgs {
    pub policy: PathBuf,
    pub bundles: Vec<PathBuf>,
    pub provider_srs: Vec<PathBuf>,
    pub srs: PathBuf,
    pub params: Option<PathBuf>,
    pub variant: Variant,
    pub out: Option<PathBuf>,
}

pub fn prove<E: PairingCurve>(ctx: &Ctx, a: ProveArgs) -> CliResult<Report> {
    if a.variant == Variant::Basic {
        return Err(CliError::Usage(anyhow!("variant basic carries no data sources; bushfire claims need dat or ev")));
    }
    let draft = load_policy::<E>(&a.policy)?;
    if let Some(p) = &a.params {
        if load_params(p)? != draft.params {
            return Err(CliError::Usage(anyhow!("{} differs from the policy parameters", p.display())));
        }
    }
    let sources = load_sources(&draft, &a.bundles, &a.provider_srs)?;
    let raster = raster_from_sources(&sources, draft.pixels)?;
    let truth = ground_truth_claim(&raster, &draft.params).map_err(|e| CliError::domain(e.to_string()))?;
    if !truth.valid {
        return Err(CliError::domain(format!(
            "claim conditions not satisfied (G = {}, Σθ² = {}, θ_max = {})",
            truth.g, truth.theta_sq_sum, draft.params.theta_max
        )));
    }
    let wit = build_bushfire_witness::<Fr<E>>(&raster, &draft.params).map_err(|e| match e {
        BushfireError::ThetaBound { .. } | BushfireError::BitOverflow { .. } => {
            CliError::domain(format!("claim conditions not satisfied: {e}"))
        }
        other => CliError::Usage(other.into()),
    })?;
    let cs: ConstraintSystem<Fr<E>> = build_bushfire_cs(draft.pixels, &draft.params).map_err(anyhow::Error::from)?;
    let srs = load_srs::<E>(&a.srs)?;
    if srs.vk() != draft.key.vk {
        return Err(CliError::Usage(anyhow!("--srs is not the reference string the policy was built for")));
    }
    let proof = match a.variant {
        Variant::Dat => prove_with_data(&srs, &cs, &wit.core, &sources),
        _ => prove_batched(&srs, &cs, &wit.core, &sources),
    }
    .map_err(|e| CliError::domain(format!("claim conditions not satisfied: {e}")))?;
    let path = a.out.unwrap_or_else(|| ctx.ws.proofs().join(format!("{}-{}.json", draft.policy_id, a.variant)));
    write_json(&path, &proof.to_json(), ctx.force)?;
    let bytes = proof.to_bytes().len();
    Ok(Report {
        text: format!(
            "wrote {} (variant {}, {} elements, {bytes} bytes); {} burnt pixel(s), G = {}",
            path.display(),
            a.variant,
            proof.element_count(),
            truth.burnt.iter().filter(|b| **b).count(),
            truth.g
        ),
        json: json!({"proof": path, "variant": a.variant.as_str(), "elements": proof.element_count(), "bytes": bytes, "g": truth.g}),
        rejected: false,
    })
}

pub fn load_proof<E: PairingCurve>(path: &Path) -> anyhow::Result<SonicProof<E>> {
    let json: ProofJson = read_json(path)?;
    if json.version != VERSION {
        bail!("{}: unsupported version {}", path.display(), json.version);
    }
    SonicProof::from_json(&json).with_context(|| format!("decoding {}", path.display()))
}

/// Run one claim through a fresh simulated chain holding only this policy.
pub fn simulate_claim<E: PairingCurve>(
    draft: PolicyDraft<E>,
    kind: VerifierKind,
    proof: &SonicProof<E>,
    model: GasCostModel,
) -> anyhow::Result<ClaimReceipt> {
    let mut chain = Chain::<E>::new(model);
    chain.ledger.mint(&draft.insurer, draft.sum_insured);
    chain.ledger.mint(&draft.insuree, draft.premium);
    let id = draft.policy_id.clone();
    let handle = chain.deploy_global(kind, &draft.key.vk);
    chain.deploy_individual(handle, draft)?;
    chain.fund(&id)?;
    chain.pay_premium(&id)?;
    Ok(chain.submit_claim(&id, proof)?)
}

pub fn gas_table(report: &GasReport) -> String {
    let mut out = String::new();
    let width = report.rows.iter().map(|r| r.operation.chars().count()).max().unwrap_or(0).max(5);
    for r in &report.rows {
        let pad = width - r.operation.chars().count();
        let _ = writeln!(out, "  {}{}  {:>9}", r.operation, " ".repeat(pad), r.gas);
    }
    let _ = write!(out, "  Total{}  {:>9}", " ".repeat(width - 5), report.total);
    out
}

pub fn default_kind(v: Variant) -> VerifierKind {
    match v {
        Variant::Dat | Variant::Basic => VerifierKind::Sonic,
        Variant::Ev => VerifierKind::Enhanced,
    }
}

pub fn verify<E: PairingCurve>(proof: &Path, policy: &Path, kind: Option<VerifierKind>) -> CliResult<Report> {
    let proof = load_proof::<E>(proof)?;
    let draft = load_policy::<E>(policy)?;
    let kind = kind.unwrap_or_else(|| default_kind(proof.variant()));
    let receipt = simulate_claim(draft, kind, &proof, GasCostModel::default())?;
    let verdict = if receipt.accepted { "accepted" } else { "rejected" };
    Ok(Report {
        text: format!("{verdict} (verifier {kind}, {} pairing equation(s))\n{}", receipt.gas.pairing_equations, gas_table(&receipt.gas)),
        json: json!({"accepted": receipt.accepted, "verifier": kind.as_str(), "gas": receipt.gas}),
        rejected: !receipt.accepted,
    })
}

struct FileArtifacts {
    base: PathBuf,
}

impl<E: PairingCurve> Artifacts<E> for FileArtifacts {
    fn policy(&self, name: &str) -> Result<PolicyDraft<E>, String> {
        load_policy::<E>(&self.base.join(name)).map_err(|e| format!("{e:#}"))
    }

    fn proof(&self, name: &str) -> Result<SonicProof<E>, String> {
        load_proof::<E>(&self.base.join(name)).map_err(|e| format!("{e:#}"))
    }
}

/// Run a scenario script. Artifact names resolve relative to the script.
pub fn claim<E: PairingCurve>(scenario: &Path) -> CliResult<Report> {
    let s: Scenario = read_json(scenario)?;
    if s.version != VERSION {
        return Err(CliError::Usage(anyhow!("{}: unsupported version {}", scenario.display(), s.version)));
    }
    let base = scenario.parent().map(Path::to_path_buf).unwrap_or_default();
    let (report, _) = run_scenario::<E>(&s, &FileArtifacts { base }, GasCostModel::default());
    let mut text = String::new();
    for step in &report.steps {
        let gas = step.gas.map(|g| format!(" gas {g}")).unwrap_or_default();
        let action = serde_json::to_string(&step.action).unwrap_or_default();
        let mark = if step.ok { "ok " } else { "ERR" };
        let _ = writeln!(text, "{:>3} {mark} {action} -> {}{gas}", step.step, step.detail);
    }
    for (acct, bal) in &report.balances {
        let _ = writeln!(text, "balance {acct} = {bal}");
    }
    let _ = write!(text, "conserved: {}", report.conserved);
    let rejected = report.steps.iter().any(|s| s.detail == "rejected");
    Ok(Report { text, json: serde_json::to_value(&report)?, rejected: report.errors() > 0 || rejected })
}

/// Verifier key of an SRS directory (re-exported for scripts and tests).
pub fn verifier_key<E: PairingCurve>(dir: &Path) -> anyhow::Result<VerifierKey<E>> {
    load_vk(dir)
}
