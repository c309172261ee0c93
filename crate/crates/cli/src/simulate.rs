use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::json;

use tengraph::experiment::{run_sweep, summarize, SimulationRow, SummaryRow, SweepConfig};
use tengraph::io::{save_matrix, save_samples};
use tengraph::metrics::MetricReport;
use tengraph::sampling::gen_scenario;

use crate::config::SimulateConfig;

/// Metric cell of a method that does not apply to the replication.
pub const NOT_APPLICABLE: &str = "n/a";

pub fn row_header(sweep_name: &str) -> Vec<String> {
    let mut h: Vec<String> = ["scenario", "graph", "rep", "seed", "method", sweep_name]
        .iter()
        .map(|s| s.to_string())
        .collect();
    h.extend(MetricReport::FIELDS.iter().map(|s| s.to_string()));
    h
}

pub fn summary_header(sweep_name: &str) -> Vec<String> {
    let mut h: Vec<String> = ["scenario", "graph", sweep_name, "method", "reps"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    h.extend(MetricReport::FIELDS.iter().map(|s| s.to_string()));
    h.extend(MetricReport::FIELDS.iter().map(|s| format!("se_{s}")));
    h
}

fn write_rows(path: &Path, sweep: &SweepConfig, rows: &[SimulationRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(row_header(sweep.sweep_name()))?;
    for r in rows {
        let mut rec = vec![
            sweep.scenario.name().to_string(),
            sweep.graph.kind.name().to_string(),
            r.rep.to_string(),
            r.seed.to_string(),
            r.method.name().to_string(),
            r.value.to_string(),
        ];
        match &r.report {
            Some(m) => rec.extend(m.values().iter().map(f64::to_string)),
            None => rec.extend(std::iter::repeat_n(NOT_APPLICABLE.to_string(), MetricReport::FIELDS.len())),
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn write_summary(path: &Path, sweep: &SweepConfig, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(summary_header(sweep.sweep_name()))?;
    for r in rows {
        let mut rec = vec![
            sweep.scenario.name().to_string(),
            sweep.graph.kind.name().to_string(),
            r.value.to_string(),
            r.method.name().to_string(),
            r.reps.to_string(),
        ];
        rec.extend(r.means.iter().map(f64::to_string));
        rec.extend(r.std_errors.iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `results.csv`, `summary.csv` and `failures.json` into `out`.
/// Returns the number of failed replications.
pub fn simulate(cfg: &SimulateConfig, out: &Path) -> Result<usize> {
    let sweep = cfg.sweep();
    sweep.validate()?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let outcome = run_sweep(&sweep)?;
    write_rows(&out.join("results.csv"), &sweep, &outcome.rows)?;
    write_summary(&out.join("summary.csv"), &sweep, &summarize(&outcome.rows))?;
    fs::write(
        out.join("failures.json"),
        serde_json::to_string_pretty(&outcome.failures)? + "\n",
    )?;
    if cfg.dump_data {
        dump_datasets(&sweep, &out.join("data"))?;
    }
    log::info!(
        "{} rows, {} failed replications",
        outcome.rows.len(),
        outcome.failures.len()
    );
    Ok(outcome.failures.len())
}

/// One directory per (value, rep) holding the sample files, the target truth,
/// a manifest and an `inputs.json` usable as an `estimate` or `eval` config.
fn dump_datasets(sweep: &SweepConfig, root: &Path) -> Result<()> {
    for &value in &sweep.values {
        for rep in 1..=sweep.reps {
            let sc = sweep.scenario_config(value, rep);
            let data = gen_scenario(&sc)?;
            let dir = root
                .join(format!("{}_{value}", sweep.sweep_name()))
                .join(format!("rep_{rep}"));
            fs::create_dir_all(&dir)?;
            save_samples(dir.join("target.tgt"), &data.target.samples)?;
            let mut truth = Vec::new();
            if let Some(t) = &data.target.truth {
                for (m, omega) in t.as_slice().iter().enumerate() {
                    let file = format!("truth_{}.tgt", m + 1);
                    save_matrix(dir.join(&file), omega)?;
                    truth.push(file);
                }
            }
            let mut aux = Vec::new();
            let mut files = Vec::new();
            for (k, a) in data.auxiliaries.iter().enumerate() {
                let file = format!("aux_{}.tgt", k + 1);
                save_samples(dir.join(&file), &a.samples)?;
                aux.push(json!({ "file": file, "n": a.len(), "informative": a.informative }));
                files.push(file);
            }
            let manifest = json!({
                "scenario": sc.scenario,
                "graph": sc.graph,
                "n": sc.n,
                "seed": sc.seed,
                "h01": data.h01,
                "h02": data.h02,
                "s_bar": data.s_bar,
                "target": "target.tgt",
                "truth": truth,
                "auxiliaries": aux,
            });
            fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
            let inputs = json!({ "target": "target.tgt", "auxiliaries": files });
            fs::write(dir.join("inputs.json"), serde_json::to_string_pretty(&inputs)? + "\n")?;
        }
    }
    Ok(())
}
