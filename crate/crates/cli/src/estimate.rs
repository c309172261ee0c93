use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::json;

use tengraph::io::{load_samples, save_matrix};
use tengraph::sampling::{DomainData, DomainLabel};
use tengraph::transfer::{transfer_fit, ColumnChoice, TransferOptions};
use tengraph::Matrix;

use crate::config::Inputs;

pub fn load_domains(inputs: &Inputs) -> Result<(DomainData, Vec<DomainData>)> {
    let read = |label, path: &Path| -> Result<DomainData> {
        let samples = load_samples(path).with_context(|| format!("cannot load {}", path.display()))?;
        Ok(DomainData::new(label, samples)?)
    };
    let target = read(DomainLabel::Target, &inputs.target)?;
    let aux = inputs
        .auxiliaries
        .iter()
        .enumerate()
        .map(|(k, p)| read(DomainLabel::Auxiliary(k), p))
        .collect::<Result<Vec<_>>>()?;
    Ok((target, aux))
}

/// `(i, j, value)` for every nonzero `i < j`, one-based.
pub fn edge_list(omega: &Matrix) -> Vec<(usize, usize, f64)> {
    let p = omega.nrows();
    let mut edges = Vec::new();
    for j in 0..p {
        for i in 0..j {
            if omega[(i, j)] != 0.0 {
                edges.push((i + 1, j + 1, omega[(i, j)]));
            }
        }
    }
    edges
}

fn write_edges(path: &Path, omega: &Matrix) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["i", "j", "value"])?;
    for (i, j, v) in edge_list(omega) {
        w.write_record([i.to_string(), j.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Column bitmap: `1` where the transfer column was kept.
fn bitmap(choices: &[ColumnChoice]) -> String {
    choices
        .iter()
        .map(|c| match c {
            ColumnChoice::Transfer => '1',
            ColumnChoice::Initial => '0',
        })
        .collect()
}

pub fn estimate(inputs: &Inputs, options: &TransferOptions, out: &Path) -> Result<()> {
    let (target, aux) = load_domains(inputs)?;
    let fit = transfer_fit(&target, &aux, options)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    fs::write(out.join("fit.json"), serde_json::to_string_pretty(&fit)? + "\n")?;

    let mut modes = Vec::new();
    for (m, mode) in fit.modes.iter().enumerate() {
        let tag = m + 1;
        save_matrix(out.join(format!("omega_{tag}.tgt")), &mode.final_sym)?;
        save_matrix(out.join(format!("delta_{tag}.tgt")), &mode.divergence)?;
        write_edges(&out.join(format!("edges_{tag}.csv")), &mode.final_sym)?;
        modes.push(json!({
            "mode": tag,
            "lambda1": mode.lambda1,
            "lambda2": mode.lambda2,
            "selected_transfer": bitmap(&mode.choices),
            "min_eigenvalue": mode.min_eigenvalue,
            "omega": format!("omega_{tag}.tgt"),
            "delta": format!("delta_{tag}.tgt"),
            "edges": format!("edges_{tag}.csv"),
        }));
        if mode.min_eigenvalue <= 0.0 {
            log::warn!("mode {tag}: symmetrized estimate has min eigenvalue {}", mode.min_eigenvalue);
        }
    }
    let summary = json!({
        "dims": fit.dims,
        "scheme": fit.weights.kind,
        "weights": fit.weights.alphas,
        "h_hat": fit.weights.h_hat,
        "train": fit.split.train.len(),
        "holdout": fit.split.holdout.len(),
        "modes": modes,
    });
    fs::write(out.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(())
}
