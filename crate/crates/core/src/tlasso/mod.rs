//! Single-domain separable estimation.
//!
//! Each mode's precision is fit by a graphical lasso on the mode covariance of
//! the data whitened along every other mode, alternating over modes until the
//! estimates stop moving.

mod glasso;

pub use glasso::{glasso, glasso_objective, kkt_residual, GlassoFit, GlassoSettings};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{sym_sqrt, symmetrize, Matrix, PrecisionSet, Tensor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Penalty {
    /// `λ_m = c·√(p_m log p_m / (n p))`.
    Default { c: f64 },
    /// One value per mode.
    Fixed(Vec<f64>),
}

impl Default for Penalty {
    fn default() -> Self {
        Penalty::Default { c: 2.0 }
    }
}

impl Penalty {
    pub fn resolve(&self, dims: &[usize], n: usize) -> Result<Vec<f64>> {
        let lambdas = match self {
            Penalty::Default { c } => {
                let p: usize = dims.iter().product();
                dims.iter()
                    .map(|&pm| default_lambda(*c, pm, n, p))
                    .collect::<Vec<_>>()
            }
            Penalty::Fixed(values) => {
                if values.len() != dims.len() {
                    return Err(Error::Config(format!(
                        "{} penalties given for {} modes",
                        values.len(),
                        dims.len()
                    )));
                }
                values.clone()
            }
        };
        if lambdas.iter().any(|l| !(l.is_finite() && *l >= 0.0)) {
            return Err(Error::Config(format!("penalties must be finite and ≥ 0: {lambdas:?}")));
        }
        Ok(lambdas)
    }
}

pub fn default_lambda(c: f64, pm: usize, n: usize, p: usize) -> f64 {
    let pm_f = pm as f64;
    c * (pm_f * pm_f.ln() / (n as f64 * p as f64)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TlassoSettings {
    pub lambda: Penalty,
    pub max_outer_iters: usize,
    pub outer_tol: f64,
    pub glasso: GlassoSettings,
}

impl Default for TlassoSettings {
    fn default() -> Self {
        Self {
            lambda: Penalty::default(),
            max_outer_iters: 5,
            outer_tol: 1e-3,
            glasso: GlassoSettings::default(),
        }
    }
}

fn check_samples(samples: &[Tensor]) -> Result<&[usize]> {
    let first = samples
        .first()
        .ok_or_else(|| Error::InsufficientData("no samples".into()))?;
    if let Some(bad) = samples.iter().find(|s| s.dims() != first.dims()) {
        return Err(Error::Dimension(format!(
            "sample dims {:?} differ from {:?}",
            bad.dims(),
            first.dims()
        )));
    }
    Ok(first.dims())
}

/// `S_m = (p_m / (n p)) Σᵢ V_i V_iᵀ` with `V_i` the mode-`mode` unfolding of
/// sample `i` whitened by `Ω_k^{1/2}` along every other mode `k`.
/// `precisions[mode]` is ignored.
pub fn mode_covariance(samples: &[Tensor], mode: usize, precisions: &[Matrix]) -> Result<Matrix> {
    let dims = check_samples(samples)?;
    if mode >= dims.len() {
        return Err(Error::ModeOutOfRange {
            mode,
            order: dims.len(),
        });
    }
    if precisions.len() != dims.len() {
        return Err(Error::Dimension(format!(
            "{} precisions given for an order-{} tensor",
            precisions.len(),
            dims.len()
        )));
    }
    let mut roots = Vec::with_capacity(dims.len());
    for (k, om) in precisions.iter().enumerate() {
        if k == mode {
            roots.push(None);
            continue;
        }
        if om.shape() != (dims[k], dims[k]) {
            return Err(Error::Dimension(format!(
                "mode {k} precision is {}x{}, data has p_{k} = {}",
                om.nrows(),
                om.ncols(),
                dims[k]
            )));
        }
        roots.push(Some(sym_sqrt(om)?));
    }
    let refs: Vec<Option<&Matrix>> = roots.iter().map(Option::as_ref).collect();
    let pm = dims[mode];
    let p: usize = dims.iter().product();
    let mut acc = Matrix::zeros(pm, pm);
    for x in samples {
        let v = x.multi_mode_product(&refs)?.unfold(mode)?;
        acc += &v * v.transpose();
    }
    acc *= pm as f64 / (samples.len() as f64 * p as f64);
    Ok(symmetrize(&acc))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TlassoDiagnostics {
    pub lambdas: Vec<f64>,
    pub outer_iters: usize,
    pub converged: bool,
    /// Largest relative Frobenius change per outer iteration.
    pub changes: Vec<f64>,
    /// Graphical lasso objective trace of the last update of each mode.
    pub objective_traces: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct TlassoFit {
    pub precisions: PrecisionSet,
    pub diagnostics: TlassoDiagnostics,
}

pub fn tlasso_fit(samples: &[Tensor], settings: &TlassoSettings) -> Result<TlassoFit> {
    let dims = check_samples(samples)?.to_vec();
    let n = samples.len();
    let p: usize = dims.iter().product();
    if let Some(&pm) = dims.iter().find(|&&pm| n * p / pm < 2) {
        return Err(Error::InsufficientData(format!(
            "n·p/p_m = {} < 2 for a mode of size {pm}",
            n * p / pm
        )));
    }
    if settings.outer_tol <= 0.0 || settings.max_outer_iters == 0 {
        return Err(Error::Config("outer tolerance and iteration cap must be positive".into()));
    }
    let lambdas = settings.lambda.resolve(&dims, n)?;

    let mut current = PrecisionSet::identity(&dims).into_inner();
    let mut changes = Vec::new();
    let mut traces = vec![Vec::new(); dims.len()];
    let mut converged = false;
    for _ in 0..settings.max_outer_iters {
        let mut worst: f64 = 0.0;
        for m in 0..dims.len() {
            let s = mode_covariance(samples, m, &current)?;
            let fit = glasso(&s, lambdas[m], &settings.glasso)?;
            let updated = &fit.precision / fit.precision.norm();
            let change = (&updated - &current[m]).norm() / current[m].norm();
            worst = worst.max(change);
            current[m] = updated;
            traces[m] = fit.objective_trace;
        }
        changes.push(worst);
        if worst < settings.outer_tol {
            converged = true;
            break;
        }
    }
    let diagnostics = TlassoDiagnostics {
        lambdas,
        outer_iters: changes.len(),
        converged,
        changes,
        objective_traces: traces,
    };
    Ok(TlassoFit {
        precisions: PrecisionSet::new(current)?,
        diagnostics,
    })
}
