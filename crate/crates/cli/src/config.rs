//! JSON run configurations.
//!
//! Data paths written in a config file are resolved against the directory that
//! holds the file; paths given as flags are taken as they are.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use tengraph::experiment::SweepConfig;
use tengraph::sampling::{GraphKind, GraphSpec, ScenarioKind};
use tengraph::transfer::TransferOptions;

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn base_dir(config: Option<&Path>) -> Option<PathBuf> {
    config.and_then(Path::parent).map(Path::to_path_buf)
}

fn resolve(base: Option<&Path>, p: &Path) -> PathBuf {
    match base {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p.to_path_buf(),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphConfig {
    pub kind: GraphKind,
    pub dims: Vec<usize>,
}

/// `simulate` parameters. The graph seed of every replication is its own seed.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub scenario: ScenarioKind,
    pub graph: GraphConfig,
    /// Target sample size.
    pub n: usize,
    /// Values of `K` (scenario one) or `card_A` (scenario two).
    pub values: Vec<usize>,
    pub reps: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub transfer: TransferOptions,
    /// Also write every generated dataset under `data/`.
    #[serde(default)]
    pub dump_data: bool,
}

impl SimulateConfig {
    pub fn sweep(&self) -> SweepConfig {
        SweepConfig {
            scenario: self.scenario,
            graph: GraphSpec {
                kind: self.graph.kind,
                dims: self.graph.dims.clone(),
                seed: 0,
            },
            n: self.n,
            values: self.values.clone(),
            reps: self.reps,
            base_seed: self.base_seed,
            transfer: self.transfer.clone(),
        }
    }
}

/// Where the target and auxiliary sample files live.
#[derive(Debug, Clone)]
pub struct Inputs {
    pub target: PathBuf,
    pub auxiliaries: Vec<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateConfig {
    pub target: Option<PathBuf>,
    #[serde(default)]
    pub auxiliaries: Vec<PathBuf>,
    #[serde(default)]
    pub transfer: TransferOptions,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    pub target: Option<PathBuf>,
    #[serde(default)]
    pub auxiliaries: Vec<PathBuf>,
    #[serde(default = "default_folds")]
    pub folds: usize,
    /// One-based.
    #[serde(default = "default_mode")]
    pub mode: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub transfer: TransferOptions,
}

fn default_folds() -> usize {
    5
}

fn default_mode() -> usize {
    1
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target: None,
            auxiliaries: Vec::new(),
            folds: default_folds(),
            mode: default_mode(),
            seed: 0,
            transfer: TransferOptions::default(),
        }
    }
}

/// Flags win over the config file; auxiliaries given as flags replace the
/// configured list rather than extend it.
pub fn inputs(
    config: Option<&Path>,
    target: Option<PathBuf>,
    auxiliaries: Vec<PathBuf>,
    flag_target: Option<&Path>,
    flag_aux: &[PathBuf],
) -> Result<Inputs> {
    let base = base_dir(config);
    let target = match (flag_target, target) {
        (Some(t), _) => t.to_path_buf(),
        (None, Some(t)) => resolve(base.as_deref(), &t),
        (None, None) => bail!("no target data: pass --target or set \"target\" in the config"),
    };
    let auxiliaries: Vec<PathBuf> = if flag_aux.is_empty() {
        auxiliaries.iter().map(|p| resolve(base.as_deref(), p)).collect()
    } else {
        flag_aux.to_vec()
    };
    if auxiliaries.is_empty() {
        bail!("no auxiliary data: pass --aux or set \"auxiliaries\" in the config");
    }
    Ok(Inputs { target, auxiliaries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_paths_are_relative_to_the_file() {
        let got = inputs(
            Some(Path::new("runs/a/est.json")),
            Some("t.tgt".into()),
            vec!["x.tgt".into(), "/abs/y.tgt".into()],
            None,
            &[],
        )
        .unwrap();
        assert_eq!(got.target, Path::new("runs/a/t.tgt"));
        assert_eq!(got.auxiliaries, vec![PathBuf::from("runs/a/x.tgt"), PathBuf::from("/abs/y.tgt")]);

        let flags = inputs(
            Some(Path::new("runs/a/est.json")),
            Some("t.tgt".into()),
            vec!["x.tgt".into()],
            Some(Path::new("other.tgt")),
            &["z.tgt".into()],
        )
        .unwrap();
        assert_eq!(flags.target, Path::new("other.tgt"));
        assert_eq!(flags.auxiliaries, vec![PathBuf::from("z.tgt")]);
        assert!(inputs(None, None, vec![], None, &["z.tgt".into()]).is_err());
        assert!(inputs(None, Some("t".into()), vec![], None, &[]).is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = serde_json::from_str::<SimulateConfig>(
            r#"{"scenario": "one", "graph": {"kind": "chain", "dims": [4, 4]},
                "n": 20, "values": [1], "reps": 1, "rep": 3}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("unknown field `rep`"), "{err}");
        assert_eq!(err.line(), 2);
    }

    #[test]
    fn eval_defaults() {
        let cfg: EvalConfig = serde_json::from_str(r#"{"target": "t.tgt"}"#).unwrap();
        assert_eq!((cfg.folds, cfg.mode, cfg.seed), (5, 1, 0));
    }
}
