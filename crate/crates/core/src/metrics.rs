//! Estimation error, support recovery, KL divergence and prediction error.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, purpose, TARGET_DOMAIN};
use crate::sampling::{DomainData, DomainLabel};
use crate::tensor::{kron_reversed, log_det_spd, Matrix, PrecisionSet};
use crate::tlasso::{mode_covariance, tlasso_fit};
use crate::transfer::{PreparedTransfer, TransferOptions, WeightKind};

/// Above this total dimension the Kronecker error is computed from traces only.
pub const MATERIALIZE_LIMIT: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub kron_frob_error: f64,
    pub mode_frob_error_avg: f64,
    pub mode_max_error_avg: f64,
    pub kron_tpr: f64,
    pub kron_tnr: f64,
    pub mode_tpr_avg: f64,
    pub mode_tnr_avg: f64,
}

impl MetricReport {
    pub const FIELDS: [&'static str; 7] = [
        "kron_frob_error",
        "mode_frob_error_avg",
        "mode_max_error_avg",
        "kron_tpr",
        "kron_tnr",
        "mode_tpr_avg",
        "mode_tnr_avg",
    ];

    pub fn values(&self) -> [f64; 7] {
        [
            self.kron_frob_error,
            self.mode_frob_error_avg,
            self.mode_max_error_avg,
            self.kron_tpr,
            self.kron_tnr,
            self.mode_tpr_avg,
            self.mode_tnr_avg,
        ]
    }
}

fn check_dims(est: &[Matrix], truth: &[Matrix]) -> Result<()> {
    let shapes = |s: &[Matrix]| s.iter().map(|m| m.shape()).collect::<Vec<_>>();
    if shapes(est) != shapes(truth) || est.is_empty() {
        return Err(Error::Dimension(format!(
            "estimate shapes {:?} do not match truth {:?}",
            shapes(est),
            shapes(truth)
        )));
    }
    Ok(())
}

/// `‖⊗Â − ⊗C‖_F` by materializing both products.
pub fn kron_frob_error_materialized(est: &[Matrix], truth: &[Matrix]) -> Result<f64> {
    check_dims(est, truth)?;
    Ok((kron_reversed(est) - kron_reversed(truth)).norm())
}

/// `‖⊗Â − ⊗C‖_F² = Π‖Â_m‖² − 2Π tr(Â_mᵀC_m) + Π‖C_m‖²`.
pub fn kron_frob_error_expanded(est: &[Matrix], truth: &[Matrix]) -> Result<f64> {
    check_dims(est, truth)?;
    let aa: f64 = est.iter().map(Matrix::norm_squared).product();
    let cc: f64 = truth.iter().map(Matrix::norm_squared).product();
    let ac: f64 = est.iter().zip(truth).map(|(a, c)| a.dot(c)).product();
    Ok((aa - 2.0 * ac + cc).max(0.0).sqrt())
}

pub fn kron_frob_error(est: &[Matrix], truth: &[Matrix]) -> Result<f64> {
    let p: usize = est.iter().map(Matrix::nrows).product();
    if p <= MATERIALIZE_LIMIT {
        kron_frob_error_materialized(est, truth)
    } else {
        kron_frob_error_expanded(est, truth)
    }
}

/// Off-diagonal confusion counts of one mode, plus the diagonal nonzero count
/// of each matrix (needed for the Kronecker support).
#[derive(Debug, Clone, Copy, Default)]
struct SupportCounts {
    /// Estimated nonzero where truth is nonzero, over all entries.
    both: f64,
    /// Truth nonzero, over all entries.
    truth: f64,
    /// Estimated zero where truth is zero, over all entries.
    both_zero: f64,
    /// Truth zero, over all entries.
    truth_zero: f64,
    /// Same four counts restricted to the diagonal.
    diag_both: f64,
    diag_truth: f64,
    diag_both_zero: f64,
    diag_truth_zero: f64,
}

fn support_counts(est: &Matrix, truth: &Matrix) -> SupportCounts {
    let mut c = SupportCounts::default();
    for j in 0..truth.ncols() {
        for i in 0..truth.nrows() {
            let (e, t) = (est[(i, j)] != 0.0, truth[(i, j)] != 0.0);
            let diag = i == j;
            if t {
                c.truth += 1.0;
                if e {
                    c.both += 1.0;
                }
                if diag {
                    c.diag_truth += 1.0;
                    if e {
                        c.diag_both += 1.0;
                    }
                }
            } else {
                c.truth_zero += 1.0;
                if !e {
                    c.both_zero += 1.0;
                }
                if diag {
                    c.diag_truth_zero += 1.0;
                    if !e {
                        c.diag_both_zero += 1.0;
                    }
                }
            }
        }
    }
    c
}

fn rate(hit: f64, total: f64) -> f64 {
    if total > 0.0 {
        hit / total
    } else {
        1.0
    }
}

/// Off-diagonal TPR and TNR of one mode.
fn mode_rates(c: &SupportCounts) -> (f64, f64) {
    (
        rate(c.both - c.diag_both, c.truth - c.diag_truth),
        rate(c.both_zero - c.diag_both_zero, c.truth_zero - c.diag_truth_zero),
    )
}

/// Off-diagonal TPR and TNR on the Kronecker support, where an entry of
/// `⊗A` is nonzero iff every factor entry is. Diagonal entries of the product
/// are exactly the products of diagonal entries, so their counts are removed.
fn kron_rates(counts: &[SupportCounts], est: &[Matrix], truth: &[Matrix]) -> (f64, f64) {
    let total: f64 = truth.iter().map(|t| (t.nrows() * t.ncols()) as f64).product();
    let truth_nz: f64 = counts.iter().map(|c| c.truth).product();
    let both_nz: f64 = counts.iter().map(|c| c.both).product();
    let diag_truth_nz: f64 = counts.iter().map(|c| c.diag_truth).product();
    let diag_both_nz: f64 = counts.iter().map(|c| c.diag_both).product();

    let est_nz_counts: Vec<f64> = est.iter().map(|e| e.iter().filter(|&&x| x != 0.0).count() as f64).collect();
    let est_nz: f64 = est_nz_counts.iter().product();
    let diag_est_nz: f64 = est
        .iter()
        .map(|e| (0..e.nrows()).filter(|&i| e[(i, i)] != 0.0).count() as f64)
        .product();
    let diag_total: f64 = truth.iter().map(|t| t.nrows() as f64).product();

    // Zero in both: total − (truth nz) − (est nz) + (both nz).
    let both_zero = total - truth_nz - est_nz + both_nz;
    let diag_both_zero = diag_total - diag_truth_nz - diag_est_nz + diag_both_nz;
    let tpr = rate(both_nz - diag_both_nz, truth_nz - diag_truth_nz);
    let tnr = rate(both_zero - diag_both_zero, (total - truth_nz) - (diag_total - diag_truth_nz));
    (tpr, tnr)
}

/// Compares symmetrized estimates to the Frobenius-normalized truth.
pub fn evaluate(est: &PrecisionSet, truth: &PrecisionSet) -> Result<MetricReport> {
    let (e, t) = (est.as_slice(), truth.as_slice());
    check_dims(e, t)?;
    if !truth.is_normalized() {
        return Err(Error::Config("truth must be Frobenius-normalized".into()));
    }
    let m = e.len() as f64;
    let counts: Vec<SupportCounts> = e.iter().zip(t).map(|(a, b)| support_counts(a, b)).collect();
    let (mut tpr, mut tnr) = (0.0, 0.0);
    for c in &counts {
        let (a, b) = mode_rates(c);
        tpr += a;
        tnr += b;
    }
    let (kron_tpr, kron_tnr) = kron_rates(&counts, e, t);
    Ok(MetricReport {
        kron_frob_error: kron_frob_error(e, t)?,
        mode_frob_error_avg: e.iter().zip(t).map(|(a, b)| (a - b).norm()).sum::<f64>() / m,
        mode_max_error_avg: e.iter().zip(t).map(|(a, b)| (a - b).amax()).sum::<f64>() / m,
        kron_tpr,
        kron_tnr,
        mode_tpr_avg: tpr / m,
        mode_tnr_avg: tnr / m,
    })
}

/// `−(p/2p_m) log det(Δ+I) + (p/2p_m) tr(Δ)`.
///
/// `Δ+I` is a product of two SPD matrices for every realizable divergence, so
/// its eigenvalues are real and positive even when it is not symmetric.
pub fn kl_divergence_delta(delta: &Matrix, p: usize, pm: usize) -> Result<f64> {
    let q = delta.nrows();
    if delta.ncols() != q || q != pm || pm == 0 || !p.is_multiple_of(pm) {
        return Err(Error::Dimension(format!(
            "Δ of shape {:?} with p = {p}, p_m = {pm}",
            delta.shape()
        )));
    }
    let shifted = delta + Matrix::identity(q, q);
    let scale = shifted.amax().max(1.0);
    let mut log_det = 0.0;
    for ev in shifted.complex_eigenvalues().iter() {
        if ev.im.abs() > 1e-9 * scale || ev.re <= 0.0 {
            return Err(Error::NotPd);
        }
        log_det += ev.re.ln();
    }
    let c = p as f64 / (2.0 * pm as f64);
    Ok(-c * log_det + c * delta.trace())
}

/// `−(1/p_m) log det Ω̂ + (1/p_m) tr(Σ_test Ω̂)`.
pub fn prediction_error(omega: &Matrix, sigma_test: &Matrix) -> Result<f64> {
    if omega.shape() != sigma_test.shape() || !omega.is_square() {
        return Err(Error::Dimension(format!(
            "Ω̂ {:?} vs Σ_test {:?}",
            omega.shape(),
            sigma_test.shape()
        )));
    }
    let pm = omega.nrows() as f64;
    let log_det = log_det_spd(omega)?;
    Ok((-log_det + (sigma_test * omega).trace()) / pm)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CvOptions {
    pub folds: usize,
    /// Zero-based mode whose precision is scored.
    pub mode: usize,
    /// Seed of the fold assignment.
    pub seed: u64,
    pub transfer: TransferOptions,
}

impl Default for CvOptions {
    fn default() -> Self {
        Self {
            folds: 5,
            mode: 0,
            seed: 0,
            transfer: TransferOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoldErrors {
    pub fold: usize,
    pub pe_tlasso: f64,
    pub pe_proposed: f64,
    pub pe_proposed_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub folds: Vec<FoldErrors>,
    pub pe_tlasso: f64,
    pub pe_proposed: f64,
    pub pe_proposed_v: f64,
    pub rel_proposed: f64,
    pub rel_proposed_v: f64,
}

/// Fold index of every sample: a seeded shuffle dealt round-robin.
pub fn fold_assignment(n: usize, folds: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng::stream(seed, TARGET_DOMAIN, purpose::FOLDS));
    let mut fold = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        fold[i] = pos % folds;
    }
    fold
}

/// K-fold prediction error of Tlasso, the naive-weight and the adaptive-weight
/// transfer estimators on one mode. The test covariance of each fold is
/// whitened with the Tlasso fit of the training part.
pub fn cv_relative_error(target: &DomainData, auxiliaries: &[DomainData], opts: &CvOptions) -> Result<CvReport> {
    let n = target.len();
    if opts.folds < 2 || n < 2 * opts.folds {
        return Err(Error::InsufficientData(format!(
            "{n} samples cannot fill {} folds of at least 2",
            opts.folds
        )));
    }
    if opts.mode >= target.dims().len() {
        return Err(Error::ModeOutOfRange {
            mode: opts.mode,
            order: target.dims().len(),
        });
    }
    let assignment = fold_assignment(n, opts.folds, opts.seed);
    let mut folds = Vec::with_capacity(opts.folds);
    for f in 0..opts.folds {
        let (mut train, mut test) = (Vec::new(), Vec::new());
        for (i, s) in target.samples.iter().enumerate() {
            if assignment[i] == f {
                test.push(s.clone());
            } else {
                train.push(s.clone());
            }
        }
        let tl = tlasso_fit(&train, &opts.transfer.tlasso)?;
        let sigma_test = mode_covariance(&test, opts.mode, tl.precisions.as_slice())?;
        let train_domain = DomainData::new(DomainLabel::Target, train)?;
        let prepared = PreparedTransfer::new(&train_domain, auxiliaries, &opts.transfer)?;
        let naive = prepared.finish(WeightKind::Naive, &opts.transfer)?;
        let adaptive = prepared.finish(WeightKind::Adaptive, &opts.transfer)?;
        folds.push(FoldErrors {
            fold: f,
            pe_tlasso: prediction_error(tl.precisions.get(opts.mode), &sigma_test)?,
            pe_proposed: prediction_error(&naive.modes[opts.mode].final_sym, &sigma_test)?,
            pe_proposed_v: prediction_error(&adaptive.modes[opts.mode].final_sym, &sigma_test)?,
        });
    }
    let mean = |get: fn(&FoldErrors) -> f64| folds.iter().map(get).sum::<f64>() / folds.len() as f64;
    let pe_tlasso = mean(|f| f.pe_tlasso);
    let pe_proposed = mean(|f| f.pe_proposed);
    let pe_proposed_v = mean(|f| f.pe_proposed_v);
    Ok(CvReport {
        pe_tlasso,
        pe_proposed,
        pe_proposed_v,
        rel_proposed: pe_proposed / pe_tlasso,
        rel_proposed_v: pe_proposed_v / pe_tlasso,
        folds,
    })
}
