use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::steps::{
    bic_select_lambda2, estimate_divergence, lambda1_default, lambda2_grid, select_columns, symmetrize_final,
    BicPoint, CdSettings, ColumnChoice, GridSpec,
};
use super::weights::{weights_adaptive, weights_naive, WeightKind, WeightScheme};
use crate::error::{Error, Result};
use crate::rng::{self, purpose, TARGET_DOMAIN};
use crate::sampling::DomainData;
use crate::tensor::{Matrix, PrecisionSet, Tensor};
use crate::tlasso::{mode_covariance, tlasso_fit, TlassoDiagnostics, TlassoSettings};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TransferOptions {
    pub scheme: WeightKind,
    /// Fraction of target samples used for the initializer; the rest drive column selection.
    pub split_fraction: f64,
    /// Seed of the target split.
    pub seed: u64,
    /// Used for the target initializer, the held-out fit and every auxiliary fit.
    pub tlasso: TlassoSettings,
    pub cd: CdSettings,
    pub grid: GridSpec,
}

impl Default for TransferOptions {
    fn default() -> Self {
        Self {
            scheme: WeightKind::Naive,
            split_fraction: 0.6,
            seed: 0,
            tlasso: TlassoSettings::default(),
            cd: CdSettings::default(),
            grid: GridSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSplit {
    /// Indices used for the initializer.
    pub train: Vec<usize>,
    /// Indices used for column selection.
    pub holdout: Vec<usize>,
}

impl SampleSplit {
    fn new(n: usize, fraction: f64, seed: u64) -> Result<Self> {
        if !(fraction > 0.0 && fraction < 1.0) {
            return Err(Error::Config(format!("split fraction must lie in (0, 1), got {fraction}")));
        }
        let n_train = (fraction * n as f64).floor() as usize;
        if n_train < 2 || n - n_train < 2 {
            return Err(Error::Split(format!(
                "{n} target samples split into {n_train} and {}; both folds need at least 2",
                n - n_train
            )));
        }
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng::stream(seed, TARGET_DOMAIN, purpose::SPLIT));
        let mut train = idx[..n_train].to_vec();
        let mut holdout = idx[n_train..].to_vec();
        train.sort_unstable();
        holdout.sort_unstable();
        Ok(Self { train, holdout })
    }
}

fn pick(samples: &[Tensor], idx: &[usize]) -> Vec<Tensor> {
    idx.iter().map(|&i| samples[i].clone()).collect()
}

fn mode_covariances(samples: &[Tensor], precisions: &PrecisionSet) -> Result<Vec<Matrix>> {
    (0..precisions.order())
        .map(|m| mode_covariance(samples, m, precisions.as_slice()))
        .collect()
}

/// Everything that does not depend on the weighting scheme: the split, the
/// initializers, the per-domain auxiliary mode covariances and the held-out
/// covariances.
#[derive(Debug, Clone)]
pub struct PreparedTransfer {
    dims: Vec<usize>,
    split: SampleSplit,
    initial: PrecisionSet,
    initial_diagnostics: TlassoDiagnostics,
    heldout_covariances: Vec<Matrix>,
    aux_sizes: Vec<usize>,
    /// `[k][m]`
    aux_covariances: Vec<Vec<Matrix>>,
}

/// Rescales `sigma` so that `tr(Ω̂⁽⁰⁾ sigma) = p_m`.
///
/// Each domain's Kronecker factors are identified only up to a shared constant,
/// so the overall level of `Σ̂_m⁽ᵏ⁾` carries no information about the target.
pub fn match_scale(init: &Matrix, sigma: Matrix) -> Result<Matrix> {
    let p = sigma.nrows();
    let t = (init * &sigma).trace();
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NotPsd(t));
    }
    Ok(sigma * (p as f64 / t))
}

impl PreparedTransfer {
    pub fn new(target: &DomainData, auxiliaries: &[DomainData], options: &TransferOptions) -> Result<Self> {
        if auxiliaries.is_empty() {
            return Err(Error::NoDomains);
        }
        let dims = target.dims().to_vec();
        if let Some(bad) = auxiliaries.iter().find(|a| a.dims() != dims.as_slice()) {
            return Err(Error::Dimension(format!(
                "auxiliary dims {:?} differ from target dims {dims:?}",
                bad.dims()
            )));
        }
        let split = SampleSplit::new(target.len(), options.split_fraction, options.seed)?;
        let train = pick(&target.samples, &split.train);
        let holdout = pick(&target.samples, &split.holdout);

        let ((initial, heldout), aux) = rayon::join(
            || {
                rayon::join(
                    || tlasso_fit(&train, &options.tlasso),
                    || -> Result<Vec<Matrix>> {
                        let fit = tlasso_fit(&holdout, &options.tlasso)?;
                        mode_covariances(&holdout, &fit.precisions)
                    },
                )
            },
            || {
                auxiliaries
                    .par_iter()
                    .map(|a| {
                        let fit = tlasso_fit(&a.samples, &options.tlasso)?;
                        mode_covariances(&a.samples, &fit.precisions)
                    })
                    .collect::<Result<Vec<_>>>()
            },
        );
        let initial = initial?;
        log::debug!(
            "initializer on {} samples: {} outer iterations",
            split.train.len(),
            initial.diagnostics.outer_iters
        );
        Ok(Self {
            dims,
            split,
            initial: initial.precisions,
            initial_diagnostics: initial.diagnostics,
            heldout_covariances: heldout?,
            aux_sizes: auxiliaries.iter().map(DomainData::len).collect(),
            aux_covariances: aux?,
        })
    }

    pub fn num_auxiliaries(&self) -> usize {
        self.aux_sizes.len()
    }

    pub fn initial(&self) -> &PrecisionSet {
        &self.initial
    }

    /// The same preparation using only the listed auxiliary domains.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::NoDomains);
        }
        if let Some(&k) = keep.iter().find(|&&k| k >= self.aux_sizes.len()) {
            return Err(Error::Config(format!(
                "auxiliary index {k} out of range for {} domains",
                self.aux_sizes.len()
            )));
        }
        Ok(Self {
            aux_sizes: keep.iter().map(|&k| self.aux_sizes[k]).collect(),
            aux_covariances: keep.iter().map(|&k| self.aux_covariances[k].clone()).collect(),
            ..self.clone()
        })
    }

    fn weights(&self, kind: WeightKind) -> Result<WeightScheme> {
        match kind {
            WeightKind::Naive => weights_naive(&self.aux_sizes),
            WeightKind::Adaptive => {
                let divergences: Vec<Vec<Matrix>> = self
                    .aux_covariances
                    .iter()
                    .map(|covs| {
                        covs.iter()
                            .enumerate()
                            .map(|(m, s)| {
                                let p = s.nrows();
                                self.initial.get(m) * s - Matrix::identity(p, p)
                            })
                            .collect()
                    })
                    .collect();
                weights_adaptive(&self.aux_sizes, &divergences)
            }
        }
    }

    pub fn finish(&self, kind: WeightKind, options: &TransferOptions) -> Result<TransferFit> {
        let weights = self.weights(kind)?;
        let n_total: usize = self.aux_sizes.iter().sum();
        let n_train = self.split.train.len();
        let p: usize = self.dims.iter().product();
        let modes = (0..self.dims.len())
            .into_par_iter()
            .map(|m| {
                let pm = self.dims[m];
                let mut sigma_a = Matrix::zeros(pm, pm);
                let init = self.initial.get(m);
                for (alpha, covs) in weights.alphas.iter().zip(&self.aux_covariances) {
                    sigma_a += match_scale(init, covs[m].clone())? * *alpha;
                }
                // Work where Σ̂ᴬ has unit mean diagonal; B̂ is unchanged by this.
                let scale = sigma_a.trace() / pm as f64;
                if !(scale > 0.0) {
                    return Err(Error::NotPsd(scale));
                }
                let sigma_std = &sigma_a / scale;
                let init_std = init * scale;
                let lambda1 = lambda1_default(&init_std, pm, n_train, p)?;
                let divergence = estimate_divergence(&init_std, &sigma_std, lambda1)?;
                let grid = lambda2_grid(&sigma_std, &divergence, &options.grid)?;
                let bic = bic_select_lambda2(&sigma_std, &divergence, &grid, n_total, &init_std, &options.cd)?;
                let norm = bic.precision.norm();
                if !(norm > 0.0) {
                    return Err(Error::Dimension(format!("mode {m}: transfer estimate vanished")));
                }
                let transfer = &bic.precision / norm;
                let selection = select_columns(init, &transfer, &self.heldout_covariances[m])?;
                let fin = symmetrize_final(&selection.matrix)?;
                if fin.min_eigenvalue <= 0.0 {
                    log::warn!("mode {m}: final estimate has ψ_min = {:.3e}", fin.min_eigenvalue);
                }
                Ok(ModeTransfer {
                    initial: init.clone(),
                    divergence,
                    sigma_scale: scale,
                    transfer,
                    choices: selection.choices,
                    residuals_initial: selection.residuals_initial,
                    residuals_transfer: selection.residuals_transfer,
                    final_raw: selection.matrix,
                    final_sym: fin.matrix,
                    min_eigenvalue: fin.min_eigenvalue,
                    lambda1,
                    lambda2: bic.lambda,
                    bic_path: bic.path,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TransferFit {
            dims: self.dims.clone(),
            split: self.split.clone(),
            weights,
            modes,
            initial_diagnostics: self.initial_diagnostics.clone(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModeTransfer {
    #[serde(with = "crate::io::serde_matrix")]
    pub initial: Matrix,
    #[serde(with = "crate::io::serde_matrix")]
    pub divergence: Matrix,
    /// Mean diagonal of `Σ̂ᴬ`. The divergence step and the `λ₂` search run on
    /// `Σ̂ᴬ / sigma_scale` and `Ω̂⁽⁰⁾ · sigma_scale`, so `lambda1`, `lambda2`
    /// and the BIC path refer to that scale.
    pub sigma_scale: f64,
    /// Rescaled to unit Frobenius norm.
    #[serde(with = "crate::io::serde_matrix")]
    pub transfer: Matrix,
    pub choices: Vec<ColumnChoice>,
    pub residuals_initial: Vec<f64>,
    pub residuals_transfer: Vec<f64>,
    #[serde(with = "crate::io::serde_matrix")]
    pub final_raw: Matrix,
    #[serde(with = "crate::io::serde_matrix")]
    pub final_sym: Matrix,
    pub min_eigenvalue: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub bic_path: Vec<BicPoint>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransferFit {
    pub dims: Vec<usize>,
    pub split: SampleSplit,
    pub weights: WeightScheme,
    pub modes: Vec<ModeTransfer>,
    pub initial_diagnostics: TlassoDiagnostics,
}

impl TransferFit {
    /// The symmetrized final estimates.
    pub fn final_precisions(&self) -> Result<PrecisionSet> {
        PrecisionSet::new(self.modes.iter().map(|m| m.final_sym.clone()).collect())
    }

    pub fn initial_precisions(&self) -> Result<PrecisionSet> {
        PrecisionSet::new(self.modes.iter().map(|m| m.initial.clone()).collect())
    }
}

pub fn transfer_fit(target: &DomainData, auxiliaries: &[DomainData], options: &TransferOptions) -> Result<TransferFit> {
    PreparedTransfer::new(target, auxiliaries, options)?.finish(options.scheme, options)
}
