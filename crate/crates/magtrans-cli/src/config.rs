//! Run configuration and structured input files.
//!
//! All numeric coefficients in input files are exact rational strings like
//! `"3/4"` or `"-2"`.  Paths inside a config file are resolved relative to
//! the directory containing the config file itself.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use magtrans::fock::AntisymMatrix;
use magtrans::phase::{rat_from_str, Rat};
use magtrans::simplicial::AntisymTensor3;
use serde::Deserialize;

/// Top-level run configuration; every field has a default so the binary
/// also works without a config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Ambient dimension (and number of Fock colors).
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    /// Path to a flux tensor file; the unit tensor `dx1^dx2^dx3` when absent.
    #[serde(default)]
    pub tensor_file: Option<PathBuf>,
    /// Path to a pairing matrix file; `omega_12 = 1` when absent.
    #[serde(default)]
    pub omega_file: Option<PathBuf>,
    /// Fock mode cutoff `M`.
    #[serde(default = "default_cutoff", alias = "m")]
    pub cutoff: i64,
    /// Fock guard band width.
    #[serde(default = "default_guard")]
    pub guard: i64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Residual tolerance for float-based checks.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_dimension() -> usize {
    3
}
fn default_cutoff() -> i64 {
    6
}
fn default_guard() -> i64 {
    2
}
fn default_seed() -> u64 {
    42
}
fn default_samples() -> usize {
    200
}
fn default_tolerance() -> f64 {
    1e-6
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dimension: default_dimension(),
            tensor_file: None,
            omega_file: None,
            cutoff: default_cutoff(),
            guard: default_guard(),
            seed: default_seed(),
            samples: default_samples(),
            tolerance: default_tolerance(),
        }
    }
}

/// A flux tensor as a list of strictly upper terms (1-based indices).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub n: usize,
    pub terms: Vec<TensorTerm>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorTerm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

/// An antisymmetric pairing matrix as upper entries (0-based indices).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaFile {
    pub n: usize,
    pub entries: Vec<OmegaEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

/// Input for the `fock-cocycle` subcommand.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockCocycleInput {
    pub n: usize,
    #[serde(alias = "m")]
    pub cutoff: i64,
    pub guard: i64,
    pub omega: Vec<OmegaEntry>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

/// Fully resolved inputs: the config plus loaded tensor and pairing.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub config: RunConfig,
    pub tensor: AntisymTensor3,
    pub omega: AntisymMatrix,
}

fn parse_rat(s: &str, what: &str) -> Result<Rat> {
    rat_from_str(s).with_context(|| format!("invalid rational {s:?} in {what}"))
}

pub fn load_config(path: Option<&Path>) -> Result<(RunConfig, Option<PathBuf>)> {
    match path {
        None => Ok((RunConfig::default(), None)),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read config file {}", p.display()))?;
            let config: RunConfig = serde_json::from_str(&text)
                .with_context(|| format!("malformed config file {}", p.display()))?;
            let base = p.parent().map(Path::to_path_buf);
            Ok((config, base))
        }
    }
}

fn resolve_path(base: Option<&Path>, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        match base {
            Some(b) => b.join(p),
            None => p.to_path_buf(),
        }
    }
}

pub fn load_tensor(path: &Path, expected_n: usize) -> Result<AntisymTensor3> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read tensor file {}", path.display()))?;
    let file: TensorFile = serde_json::from_str(&text)
        .with_context(|| format!("malformed tensor file {}", path.display()))?;
    if file.n != expected_n {
        bail!(
            "tensor file {} has n = {}, config dimension is {}",
            path.display(),
            file.n,
            expected_n
        );
    }
    let mut terms = Vec::with_capacity(file.terms.len());
    for t in &file.terms {
        if t.i == t.j || t.j == t.k || t.i == t.k {
            bail!("tensor term ({}, {}, {}) repeats an index", t.i, t.j, t.k);
        }
        if !(1..=file.n).contains(&t.i) || !(1..=file.n).contains(&t.j) || !(1..=file.n).contains(&t.k)
        {
            bail!(
                "tensor term ({}, {}, {}) is outside 1..={}",
                t.i,
                t.j,
                t.k,
                file.n
            );
        }
        terms.push((t.i, t.j, t.k, parse_rat(&t.value, "tensor file")?));
    }
    Ok(AntisymTensor3::from_terms(file.n, &terms))
}

pub fn build_omega(n: usize, entries: &[OmegaEntry], what: &str) -> Result<AntisymMatrix> {
    let mut upper = Vec::with_capacity(entries.len());
    for e in entries {
        if e.i >= e.j || e.j >= n {
            bail!(
                "pairing entry ({}, {}) must satisfy i < j < n = {n} in {what}",
                e.i,
                e.j
            );
        }
        upper.push((e.i, e.j, parse_rat(&e.value, what)?));
    }
    AntisymMatrix::from_upper(n, &upper).map_err(|e| anyhow::anyhow!("{what}: {e}"))
}

pub fn load_omega(path: &Path, expected_n: usize) -> Result<AntisymMatrix> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read pairing file {}", path.display()))?;
    let file: OmegaFile = serde_json::from_str(&text)
        .with_context(|| format!("malformed pairing file {}", path.display()))?;
    if file.n != expected_n {
        bail!(
            "pairing file {} has n = {}, config dimension is {}",
            path.display(),
            file.n,
            expected_n
        );
    }
    build_omega(file.n, &file.entries, "pairing file")
}

/// Loads the config and its referenced inputs, applying defaults: the unit
/// tensor on (1,2,3) and the unit pairing on (0,1).
pub fn resolve(path: Option<&Path>) -> Result<Resolved> {
    let (config, base) = load_config(path)?;
    if config.dimension < 3 {
        bail!("dimension must be at least 3, got {}", config.dimension);
    }
    let tensor = match &config.tensor_file {
        Some(p) => load_tensor(&resolve_path(base.as_deref(), p), config.dimension)?,
        None => AntisymTensor3::from_terms(
            config.dimension,
            &[(1, 2, 3, Rat::from_integer(1.into()))],
        ),
    };
    let omega = match &config.omega_file {
        Some(p) => load_omega(&resolve_path(base.as_deref(), p), config.dimension)?,
        None => build_omega(
            config.dimension,
            &[OmegaEntry {
                i: 0,
                j: 1,
                value: "1".into(),
            }],
            "default pairing",
        )?,
    };
    Ok(Resolved {
        config,
        tensor,
        omega,
    })
}

pub fn load_fock_cocycle_input(path: &Path) -> Result<FockCocycleInput> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read input file {}", path.display()))?;
    let input: FockCocycleInput = serde_json::from_str(&text)
        .with_context(|| format!("malformed input file {}", path.display()))?;
    if input.p.len() != input.n || input.q.len() != input.n {
        bail!(
            "shift vectors must have length n = {}, got {} and {}",
            input.n,
            input.p.len(),
            input.q.len()
        );
    }
    Ok(input)
}
