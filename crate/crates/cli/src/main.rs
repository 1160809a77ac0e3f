use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zkclaim_algebra::{Bls12_381, Bn254, CurveId, PairingCurve};
use zkclaim_bushfire::{DataSplit, FixedPointParams};
use zkclaim_cli::bench::{deployment_gas, format_bench, run_bench};
use zkclaim_cli::commands::{self, Part, PolicyArgs, ProveArgs};
use zkclaim_cli::files::Workspace;
use zkclaim_cli::{CliError, CliResult, Ctx, Report};
use zkclaim_insurance::VerifierKind;
use zkclaim_sonic::Variant;

/// Zero-knowledge parametric insurance claims over committed satellite data.
#[derive(Parser)]
#[command(name = "zkclaim", version)]
struct Cli {
    /// Root directory for srs/, keys/, policies/, data/, proofs/ and reports/.
    #[arg(long, global = true, default_value = ".")]
    workspace: PathBuf,
    /// Seed for every random choice the command makes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    force: bool,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value = "bn254")]
    curve: CurveId,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a structured reference string and its verifier subset.
    Setup {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a signing key pair.
    Keygen {
        #[arg(long, default_value = "provider")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a fixed-point parameter file.
    Params(ParamsCmd),
    /// Preprocess the bushfire circuit and write a policy.
    Policy(PolicyCmd),
    /// Commit to raster data and sign it with its location hash.
    DataCommit {
        #[arg(long)]
        raster: PathBuf,
        /// lat,lon,epoch,date
        #[arg(long, allow_hyphen_values = true)]
        location: String,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        srs: PathBuf,
        #[arg(long, default_value = "all")]
        part: Part,
        #[arg(long, default_value = "sat")]
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prove that the committed data satisfies the policy's claim condition.
    Prove {
        #[arg(long)]
        policy: PathBuf,
        #[arg(long = "bundle", num_args = 1.., required = true)]
        bundles: Vec<PathBuf>,
        #[arg(long = "provider-srs", num_args = 1.., required = true)]
        provider_srs: Vec<PathBuf>,
        #[arg(long)]
        srs: PathBuf,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value = "ev")]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Submit a proof to a simulated policy contract.
    Verify {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        policy: PathBuf,
        /// sonic, enhanced or enhanced+ (default follows the proof variant).
        #[arg(long)]
        verifier: Option<VerifierKind>,
    },
    /// Run a scenario script against the simulated chain.
    Claim {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Measure constraint counts, proving cost, proof size and gas.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

#[derive(Args)]
struct ParamsCmd {
    #[arg(long, default_value_t = FixedPointParams::default().scale)]
    scale: i64,
    #[arg(long, default_value_t = FixedPointParams::default().kappa_scaled)]
    kappa: i64,
    #[arg(long, default_value_t = FixedPointParams::default().epsilon)]
    epsilon: u64,
    #[arg(long, default_value_t = FixedPointParams::default().theta_max)]
    theta_max: u64,
    #[arg(long, default_value_t = FixedPointParams::default().k_bits)]
    k_bits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PolicyCmd {
    #[arg(long)]
    id: String,
    #[arg(long, default_value = "insurer")]
    insurer: String,
    #[arg(long, default_value = "insuree")]
    insuree: String,
    #[arg(long)]
    premium: u64,
    #[arg(long)]
    sum_insured: u64,
    #[arg(long)]
    expiry: u64,
    #[arg(long)]
    pixels: usize,
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long, default_value = "single")]
    split: DataSplit,
    /// One per data source: lat,lon,epoch,date
    #[arg(long = "location", required = true, allow_hyphen_values = true)]
    locations: Vec<String>,
    /// Public key file of each data provider.
    #[arg(long = "provider-key", required = true)]
    provider_keys: Vec<PathBuf>,
    /// SRS directory or verifier.json of each data provider.
    #[arg(long = "provider-srs", required = true)]
    provider_srs: Vec<PathBuf>,
    #[arg(long)]
    srs: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run<E: PairingCurve>(cli: Cli) -> CliResult<Report> {
    let ctx = Ctx { ws: Workspace::new(cli.workspace), seed: cli.seed, force: cli.force };
    match cli.cmd {
        Cmd::Setup { degree, out } => commands::setup::<E>(&ctx, degree, out),
        Cmd::Keygen { name, out } => commands::keygen(&ctx, &name, out),
        Cmd::Params(p) => {
            let params = FixedPointParams {
                scale: p.scale,
                kappa_scaled: p.kappa,
                epsilon: p.epsilon,
                theta_max: p.theta_max,
                k_bits: p.k_bits,
            };
            commands::params(&ctx, params, p.out)
        }
        Cmd::Policy(p) => commands::policy::<E>(
            &ctx,
            PolicyArgs {
                id: p.id,
                insurer: p.insurer,
                insuree: p.insuree,
                premium: p.premium,
                sum_insured: p.sum_insured,
                expiry: p.expiry,
                pixels: p.pixels,
                params: p.params,
                split: p.split,
                locations: p.locations,
                provider_keys: p.provider_keys,
                provider_srs: p.provider_srs,
                srs: p.srs,
                out: p.out,
            },
        ),
        Cmd::DataCommit { raster, location, key, srs, part, id, out } => {
            commands::data_commit::<E>(&ctx, &raster, &location, &key, &srs, part, &id, out)
        }
        Cmd::Prove { policy, bundles, provider_srs, srs, params, variant, out } => commands::prove::<E>(
            &ctx,
            ProveArgs { policy, bundles, provider_srs, srs, params, variant, out },
        ),
        Cmd::Verify { proof, policy, verifier } => commands::verify::<E>(&proof, &policy, verifier),
        Cmd::Claim { scenario } => commands::claim::<E>(&scenario),
        Cmd::Bench { sizes, repeat } => {
            let report = run_bench::<E>(&sizes, ctx.seed, repeat)?;
            let deploy = deployment_gas::<E>(ctx.seed)?;
            let mut text = format_bench(&report);
            let line: Vec<String> = deploy.iter().map(|(k, g)| format!("{k} {g}")).collect();
            text.push_str(&format!("deployment gas: {}", line.join(", ")));
            let deploy_json: serde_json::Map<String, serde_json::Value> =
                deploy.iter().map(|(k, g)| (k.as_str().to_string(), (*g).into())).collect();
            Ok(Report {
                text,
                json: serde_json::json!({"bench": report, "deployment_gas": deploy_json}),
                rejected: false,
            })
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<Report> {
    match cli.curve {
        CurveId::Bn254 => run::<Bn254>(cli),
        CurveId::Bls12_381 => run::<Bls12_381>(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match dispatch(cli) {
        Ok(report) => {
            // A closed pipe is not an error worth reporting.
            let text = if json { serde_json::to_string_pretty(&report.json).unwrap_or_default() } else { report.text };
            let _ = writeln!(std::io::stdout(), "{text}");
            if report.rejected {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if json {
                let kind = if matches!(e, CliError::Domain(_)) { "rejected" } else { "error" };
                let _ = writeln!(std::io::stdout(), "{}", serde_json::json!({"status": kind, "message": e.to_string()}));
            }
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
