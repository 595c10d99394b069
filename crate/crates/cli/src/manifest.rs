//! Run manifests and the metadata sidecar written next to augmented output.

use std::path::{Path, PathBuf};

use dbaug_core::{AugmentationPolicy, DbaParams, Label, SizingRule, SkipDiagnostic, Window};
use serde::{Deserialize, Serialize};

use crate::failure::{CliResult, Failure};

/// Every parameter of an `augment` run. Replaying a manifest reproduces the
/// run's output byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub train: PathBuf,
    pub out: PathBuf,
    pub seed: u64,
    pub k: usize,
    pub boosted: usize,
    pub seed_weight: f64,
    pub boosted_weight: f64,
    pub residual_mass: f64,
    pub multiplier: usize,
    pub dba_iters: usize,
    pub dba_tol: f64,
    /// Input delimiter; `None` means auto-detect.
    pub delimiter: Option<char>,
    /// Sakoe-Chiba radius; `None` means unconstrained.
    pub window: Option<usize>,
}

impl RunManifest {
    pub fn policy(&self) -> AugmentationPolicy {
        AugmentationPolicy {
            neighbor_count: self.k,
            boosted_count: self.boosted,
            seed_weight: self.seed_weight,
            boosted_weight: self.boosted_weight,
            residual_mass: self.residual_mass,
            sizing: SizingRule::BalanceToLargest {
                multiplier: self.multiplier,
            },
            master_seed: self.seed,
        }
    }

    pub fn dba_params(&self) -> DbaParams {
        DbaParams {
            max_iters: self.dba_iters,
            rel_tol: self.dba_tol,
            window: window(self.window),
        }
    }
}

pub fn window(radius: Option<usize>) -> Window {
    radius.map_or(Window::Unconstrained, Window::SakoeChiba)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassCount {
    pub label: Label,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub original: Vec<ClassCount>,
    pub generated: Vec<ClassCount>,
    pub skipped: Vec<SkipDiagnostic>,
    pub total_instances: usize,
    pub output_delimiter: char,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub manifest: RunManifest,
    pub report: RunReport,
}

/// Default sidecar location: `<out>.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Loads a manifest from either a full sidecar or a bare manifest object.
pub fn load(path: &Path) -> CliResult<RunManifest> {
    let text = crate::files::read_text(path)?;
    if let Ok(sidecar) = serde_json::from_str::<Sidecar>(&text) {
        return Ok(sidecar.manifest);
    }
    serde_json::from_str::<RunManifest>(&text)
        .map_err(|e| Failure::parse(format!("{}: not a run manifest: {e}", path.display())))
}
