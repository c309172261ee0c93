use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

use tengraph::experiment::Method;
use tengraph::metrics::{cv_relative_error, CvOptions, CvReport};
use tengraph::transfer::TransferOptions;

use crate::config::Inputs;
use crate::estimate::load_domains;

pub const HEADER: [&str; 4] = ["fold", "method", "pe", "relative_error"];

/// Rows of `cv.csv`: every (fold, method), then one `mean` row per method.
/// Relative errors divide by the Tlasso error of the same row group.
pub fn cv_rows(report: &CvReport) -> Vec<[String; 4]> {
    let group = |fold: String, pe: [f64; 3]| {
        [Method::Tlasso, Method::Proposed, Method::ProposedV]
            .into_iter()
            .zip(pe)
            .map(move |(m, e)| [fold.clone(), m.name().to_string(), e.to_string(), (e / pe[0]).to_string()])
    };
    let mut rows: Vec<[String; 4]> = report
        .folds
        .iter()
        .flat_map(|f| group((f.fold + 1).to_string(), [f.pe_tlasso, f.pe_proposed, f.pe_proposed_v]))
        .collect();
    rows.extend(group(
        "mean".into(),
        [report.pe_tlasso, report.pe_proposed, report.pe_proposed_v],
    ));
    rows
}

pub fn eval(inputs: &Inputs, folds: usize, mode: usize, seed: u64, transfer: &TransferOptions, out: &Path) -> Result<()> {
    if mode == 0 {
        bail!("--mode is one-based");
    }
    let (target, aux) = load_domains(inputs)?;
    let opts = CvOptions {
        folds,
        mode: mode - 1,
        seed,
        transfer: transfer.clone(),
    };
    let report = cv_relative_error(&target, &aux, &opts)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut w = csv::Writer::from_path(out.join("cv.csv"))?;
    w.write_record(HEADER)?;
    for row in cv_rows(&report) {
        w.write_record(&row)?;
    }
    w.flush()?;
    fs::write(out.join("cv.json"), serde_json::to_string_pretty(&report)? + "\n")?;
    log::info!(
        "relative error: proposed {:.4}, proposed.v {:.4}",
        report.rel_proposed,
        report.rel_proposed_v
    );
    Ok(())
}
