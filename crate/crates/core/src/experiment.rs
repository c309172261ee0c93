//! Replications of the simulation scenarios and their summaries.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{evaluate, MetricReport};
use crate::sampling::{gen_scenario, GraphSpec, ScenarioConfig, ScenarioKind};
use crate::tlasso::tlasso_fit;
use crate::transfer::{PreparedTransfer, TransferOptions, WeightKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "Tlasso")]
    Tlasso,
    #[serde(rename = "proposed")]
    Proposed,
    #[serde(rename = "proposed.v")]
    ProposedV,
    #[serde(rename = "oracle")]
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Tlasso => "Tlasso",
            Method::Proposed => "proposed",
            Method::ProposedV => "proposed.v",
            Method::Oracle => "oracle",
        }
    }

    pub fn for_scenario(kind: ScenarioKind) -> &'static [Method] {
        match kind {
            ScenarioKind::One => &[Method::Tlasso, Method::Proposed, Method::ProposedV],
            ScenarioKind::Two => &[Method::Tlasso, Method::Proposed, Method::ProposedV, Method::Oracle],
        }
    }
}

/// `None` marks a method that does not apply (oracle with no informative domain).
pub type MethodResult = (Method, Option<MetricReport>);

/// Runs every method of the scenario on one generated dataset.
pub fn run_replication(cfg: &ScenarioConfig, transfer: &TransferOptions) -> Result<Vec<MethodResult>> {
    let data = gen_scenario(cfg)?;
    let truth = data
        .target
        .truth
        .as_ref()
        .ok_or_else(|| Error::Config("generated target has no truth".into()))?
        .to_normalized()?;
    let opts = TransferOptions {
        seed: cfg.seed,
        ..transfer.clone()
    };
    let mut out = Vec::new();

    let tl = tlasso_fit(&data.target.samples, &opts.tlasso)?;
    out.push((Method::Tlasso, Some(evaluate(&tl.precisions, &truth)?)));

    let prepared = PreparedTransfer::new(&data.target, &data.auxiliaries, &opts)?;
    for (method, kind) in [(Method::Proposed, WeightKind::Naive), (Method::ProposedV, WeightKind::Adaptive)] {
        let fit = prepared.finish(kind, &opts)?;
        out.push((method, Some(evaluate(&fit.final_precisions()?, &truth)?)));
    }

    if cfg.scenario == ScenarioKind::Two {
        let informative: Vec<usize> = data
            .auxiliaries
            .iter()
            .enumerate()
            .filter(|(_, a)| a.informative == Some(true))
            .map(|(k, _)| k)
            .collect();
        let report = if informative.is_empty() {
            None
        } else {
            let fit = prepared.restrict(&informative)?.finish(WeightKind::Naive, &opts)?;
            Some(evaluate(&fit.final_precisions()?, &truth)?)
        };
        out.push((Method::Oracle, report));
    }
    Ok(out)
}

/// A sweep over `K` (scenario one) or `card_A` (scenario two).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub scenario: ScenarioKind,
    pub graph: GraphSpec,
    pub n: usize,
    pub values: Vec<usize>,
    pub reps: usize,
    pub base_seed: u64,
    #[serde(default)]
    pub transfer: TransferOptions,
}

impl SweepConfig {
    /// Name of the swept column.
    pub fn sweep_name(&self) -> &'static str {
        match self.scenario {
            ScenarioKind::One => "K",
            ScenarioKind::Two => "card_A",
        }
    }

    /// Seed of replication `rep` (one-based).
    pub fn seed(&self, rep: usize) -> u64 {
        self.base_seed.wrapping_add(rep as u64)
    }

    pub fn scenario_config(&self, value: usize, rep: usize) -> ScenarioConfig {
        let graph = GraphSpec {
            seed: self.seed(rep),
            ..self.graph.clone()
        };
        match self.scenario {
            ScenarioKind::One => ScenarioConfig::scenario_one(graph, self.n, value, self.seed(rep)),
            ScenarioKind::Two => ScenarioConfig::scenario_two(graph, self.n, value, self.seed(rep)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Config("reps must be at least 1".into()));
        }
        if self.values.is_empty() {
            return Err(Error::Config(format!("no {} values to sweep", self.sweep_name())));
        }
        for &v in &self.values {
            self.scenario_config(v, 1).validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRow {
    pub value: usize,
    pub rep: usize,
    pub seed: u64,
    pub method: Method,
    pub report: Option<MetricReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationFailure {
    pub value: usize,
    pub rep: usize,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    /// Sorted by (value, rep, method).
    pub rows: Vec<SimulationRow>,
    pub failures: Vec<ReplicationFailure>,
}

/// Runs every (value, rep) pair on the current rayon pool. A failed
/// replication is recorded and the sweep carries on.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = cfg
        .values
        .iter()
        .flat_map(|&v| (1..=cfg.reps).map(move |r| (v, r)))
        .collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(value, rep)| {
            let sc = cfg.scenario_config(value, rep);
            let res = run_replication(&sc, &cfg.transfer);
            match &res {
                Ok(_) => log::info!("{}={value} rep {rep} done", cfg.sweep_name()),
                Err(e) => log::error!("{}={value} rep {rep} failed: {e}", cfg.sweep_name()),
            }
            (value, rep, sc.seed, res)
        })
        .collect();
    let mut out = SweepOutcome::default();
    for (value, rep, seed, res) in results {
        match res {
            Ok(methods) => out.rows.extend(methods.into_iter().map(|(method, report)| SimulationRow {
                value,
                rep,
                seed,
                method,
                report,
            })),
            Err(e) => out.failures.push(ReplicationFailure {
                value,
                rep,
                seed,
                error: e.to_string(),
            }),
        }
    }
    out.rows.sort_by_key(|r| (r.value, r.rep, r.method));
    out.failures.sort_by_key(|f| (f.value, f.rep));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub value: usize,
    pub method: Method,
    /// Replications with a report.
    pub reps: usize,
    pub means: [f64; 7],
    /// Standard errors of the means.
    pub std_errors: [f64; 7],
}

/// Per (value, method) means of every metric; methods without any report are skipped.
pub fn summarize(rows: &[SimulationRow]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, Method), Vec<[f64; 7]>> = BTreeMap::new();
    for r in rows {
        if let Some(rep) = &r.report {
            groups.entry((r.value, r.method)).or_default().push(rep.values());
        }
    }
    groups
        .into_iter()
        .map(|((value, method), vals)| {
            let n = vals.len() as f64;
            let mut means = [0.0; 7];
            let mut std_errors = [0.0; 7];
            for i in 0..7 {
                means[i] = vals.iter().map(|v| v[i]).sum::<f64>() / n;
                if vals.len() > 1 {
                    let var = vals.iter().map(|v| (v[i] - means[i]).powi(2)).sum::<f64>() / (n - 1.0);
                    std_errors[i] = (var / n).sqrt();
                }
            }
            SummaryRow {
                value,
                method,
                reps: vals.len(),
                means,
                std_errors,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::GraphKind;

    fn small(scenario: ScenarioKind, values: Vec<usize>) -> SweepConfig {
        SweepConfig {
            scenario,
            graph: GraphSpec {
                kind: GraphKind::Chain,
                dims: vec![4, 3],
                seed: 0,
            },
            n: 20,
            values,
            reps: 2,
            base_seed: 100,
            transfer: TransferOptions::default(),
        }
    }

    #[test]
    fn row_accounting_and_order() {
        let out = run_sweep(&small(ScenarioKind::One, vec![2, 1])).unwrap();
        assert!(out.failures.is_empty());
        assert_eq!(out.rows.len(), 2 * 2 * 3);
        let keys: Vec<_> = out.rows.iter().map(|r| (r.value, r.rep, r.method)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(out.rows[0].seed, 101);
        assert_eq!(summarize(&out.rows).len(), 2 * 3);
    }

    #[test]
    fn oracle_is_empty_without_informative_domains() {
        let out = run_sweep(&small(ScenarioKind::Two, vec![0])).unwrap();
        assert!(out.failures.is_empty(), "{:?}", out.failures);
        let oracle: Vec<_> = out.rows.iter().filter(|r| r.method == Method::Oracle).collect();
        assert_eq!(oracle.len(), 2);
        assert!(oracle.iter().all(|r| r.report.is_none()));
        assert!(summarize(&out.rows).iter().all(|s| s.method != Method::Oracle));
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = small(ScenarioKind::Two, vec![1]);
        assert_eq!(run_sweep(&cfg).unwrap().rows, run_sweep(&cfg).unwrap().rows);
    }

    #[test]
    fn invalid_sweeps() {
        let mut cfg = small(ScenarioKind::One, vec![1]);
        cfg.reps = 0;
        assert!(run_sweep(&cfg).is_err());
        let cfg = small(ScenarioKind::Two, vec![6]);
        assert!(run_sweep(&cfg).is_err());
    }
}
