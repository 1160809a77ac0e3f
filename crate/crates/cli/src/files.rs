//! On-disk artifact formats. Every JSON file carries a `version` field.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use zkclaim_algebra::{from_hex, to_hex, CurveId, PairingCurve};
use zkclaim_bushfire::{DataSplit, FixedPointParams};
use zkclaim_insurance::{PolicyDraft, Provider};
use zkclaim_pcs::{Commitment, Scheme, Srs, VerifierKey, VerifierKeyJson};
use zkclaim_sigs::{KeyPair, LocationTag, PublicKey};
use zkclaim_sonic::CircuitKey;

use crate::error::{CliError, CliResult};

pub const VERSION: u32 = 1;

/// Standard workspace layout.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub root: PathBuf,
}

impl Workspace {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn dir(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn srs(&self) -> PathBuf {
        self.dir("srs")
    }
    pub fn keys(&self) -> PathBuf {
        self.dir("keys")
    }
    pub fn policies(&self) -> PathBuf {
        self.dir("policies")
    }
    pub fn data(&self) -> PathBuf {
        self.dir("data")
    }
    pub fn proofs(&self) -> PathBuf {
        self.dir("proofs")
    }
    pub fn reports(&self) -> PathBuf {
        self.dir("reports")
    }
}

/// Write `bytes`, refusing to replace an existing file unless `force`.
pub fn write_file(path: &Path, bytes: &[u8], force: bool) -> CliResult<()> {
    if path.exists() && !force {
        return Err(CliError::Usage(anyhow!("{} exists; pass --force to overwrite", path.display())));
    }
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T, force: bool) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(path, text.as_bytes(), force)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn check_version(found: u32, path: &Path) -> anyhow::Result<()> {
    if found != VERSION {
        bail!("{}: unsupported version {found}", path.display());
    }
    Ok(())
}

fn check_curve<E: PairingCurve>(curve: &str, path: &Path) -> anyhow::Result<()> {
    let id: CurveId = curve.parse().map_err(|e| anyhow!("{}: {e}", path.display()))?;
    if id != E::ID {
        bail!("{} is for {id}, running with --curve {}", path.display(), E::ID);
    }
    Ok(())
}

/// An SRS directory holds `srs.bin` and `verifier.json`.
pub fn srs_bin(dir: &Path) -> PathBuf {
    dir.join("srs.bin")
}

pub fn verifier_json(dir: &Path) -> PathBuf {
    dir.join("verifier.json")
}

/// Accepts either the SRS directory or the `srs.bin` inside it.
pub fn load_srs<E: PairingCurve>(path: &Path) -> anyhow::Result<Srs<E>> {
    let file = if path.is_dir() { srs_bin(path) } else { path.to_path_buf() };
    let bytes = fs::read(&file).with_context(|| format!("reading {}", file.display()))?;
    let srs = Srs::<E>::from_bytes(&bytes).with_context(|| format!("decoding {}", file.display()))?;
    Ok(srs)
}

/// Accepts the SRS directory or the `verifier.json` itself.
pub fn load_vk<E: PairingCurve>(path: &Path) -> anyhow::Result<VerifierKey<E>> {
    let file = if path.is_dir() { verifier_json(path) } else { path.to_path_buf() };
    let json: VerifierKeyJson = read_json(&file)?;
    check_version(json.version, &file)?;
    VerifierKey::from_json(&json).with_context(|| format!("decoding {}", file.display()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeyFile {
    pub version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub secret: Option<String>,
    pub pk: String,
}

impl KeyFile {
    pub fn from_pair(kp: &KeyPair) -> Self {
        Self { version: VERSION, secret: Some(to_hex(&kp.secret_bytes())), pk: to_hex(&kp.pk.to_bytes()) }
    }

    pub fn public(&self) -> Self {
        Self { version: VERSION, secret: None, pk: self.pk.clone() }
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let k: KeyFile = read_json(path)?;
        check_version(k.version, path)?;
        Ok(k)
    }

    pub fn key_pair(&self) -> anyhow::Result<KeyPair> {
        let secret = self.secret.as_ref().ok_or_else(|| anyhow!("key file holds no secret key"))?;
        Ok(KeyPair::from_secret_bytes(&from_hex(secret)?)?)
    }

    pub fn public_key(&self) -> anyhow::Result<PublicKey> {
        Ok(PublicKey::from_bytes(&from_hex(&self.pk)?)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsFile {
    pub version: u32,
    #[serde(flatten)]
    pub params: FixedPointParams,
}

pub fn load_params(path: &Path) -> anyhow::Result<FixedPointParams> {
    let f: ParamsFile = read_json(path)?;
    check_version(f.version, path)?;
    f.params.validate()?;
    Ok(f.params)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProviderJson {
    pub pk: String,
    pub vk: VerifierKeyJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitKeyJson {
    pub vk: VerifierKeyJson,
    pub s_y: String,
    pub k: String,
}

/// Policy terms plus everything the verifier needs: location hashes,
/// registered providers and the circuit key.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolicyFile {
    pub version: u32,
    pub curve: String,
    pub policy_id: String,
    pub insurer: String,
    pub insuree: String,
    pub premium: u64,
    pub sum_insured: u64,
    pub expiry: u64,
    pub pixels: usize,
    pub params: FixedPointParams,
    pub split: DataSplit,
    pub location_hashes: Vec<String>,
    pub providers: Vec<ProviderJson>,
    pub key: CircuitKeyJson,
}

fn point<E: PairingCurve>(hex: &str) -> anyhow::Result<Commitment<E>> {
    Ok(Commitment { point: E::g1_from_bytes(&from_hex(hex)?)?, scheme: Scheme::Rkzg })
}

impl PolicyFile {
    pub fn from_draft<E: PairingCurve>(d: &PolicyDraft<E>) -> Self {
        // Policies do not record the degree of the reference string.
        let degree = 0;
        Self {
            version: VERSION,
            curve: E::ID.to_string(),
            policy_id: d.policy_id.clone(),
            insurer: d.insurer.clone(),
            insuree: d.insuree.clone(),
            premium: d.premium,
            sum_insured: d.sum_insured,
            expiry: d.expiry,
            pixels: d.pixels,
            params: d.params,
            split: d.split,
            location_hashes: d.location_hashes.iter().map(|h| to_hex(h.as_bytes())).collect(),
            providers: d
                .providers
                .iter()
                .map(|p| ProviderJson { pk: to_hex(&p.pk.to_bytes()), vk: p.vk.to_json(degree) })
                .collect(),
            key: CircuitKeyJson {
                vk: d.key.vk.to_json(degree),
                s_y: to_hex(&d.key.s_y.to_bytes()),
                k: to_hex(&d.key.k.to_bytes()),
            },
        }
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let p: PolicyFile = read_json(path)?;
        check_version(p.version, path)?;
        Ok(p)
    }

    pub fn to_draft<E: PairingCurve>(&self, path: &Path) -> anyhow::Result<PolicyDraft<E>> {
        check_curve::<E>(&self.curve, path)?;
        let location_hashes = self
            .location_hashes
            .iter()
            .map(|h| {
                let bytes: [u8; 32] = from_hex(h)?.try_into().map_err(|_| anyhow!("location hash must be 32 bytes"))?;
                Ok(LocationTag(bytes))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let providers = self
            .providers
            .iter()
            .map(|p| {
                Ok(Provider { pk: PublicKey::from_bytes(&from_hex(&p.pk)?)?, vk: VerifierKey::from_json(&p.vk)? })
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let layout = zkclaim_bushfire::CircuitLayout::new(self.pixels, self.params.k_bits).data_layout(self.split);
        let key = CircuitKey {
            vk: VerifierKey::from_json(&self.key.vk)?,
            s_y: point::<E>(&self.key.s_y)?,
            k: point::<E>(&self.key.k)?,
            layout,
        };
        Ok(PolicyDraft {
            policy_id: self.policy_id.clone(),
            insurer: self.insurer.clone(),
            insuree: self.insuree.clone(),
            premium: self.premium,
            sum_insured: self.sum_insured,
            expiry: self.expiry,
            pixels: self.pixels,
            params: self.params,
            split: self.split,
            location_hashes,
            providers,
            key,
        })
    }
}

pub fn load_policy<E: PairingCurve>(path: &Path) -> anyhow::Result<PolicyDraft<E>> {
    PolicyFile::load(path)?.to_draft(path)
}
