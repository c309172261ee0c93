use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::loss::loss_omega;
use super::soft_threshold;
use crate::error::{Error, Result};
use crate::tensor::{check_symmetric, min_eigenvalue, one_inf_norm, symmetrize, Matrix};

/// Residual differences below this count as ties in column selection.
pub const SELECTION_TIE_TOL: f64 = 1e-12;

const BIC_TIE_TOL: f64 = 1e-12;

fn check_pair(a: &Matrix, b: &Matrix) -> Result<usize> {
    let p = a.nrows();
    if a.shape() != (p, p) || b.shape() != (p, p) {
        return Err(Error::Dimension(format!(
            "expected conformable square matrices, got {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(p)
}

/// `Δ̂ = 𝒯(Ω̂⁽⁰⁾Σ̂ᴬ − I, λ₁)` entrywise, the exact minimizer of
/// `loss_delta + λ₁‖Δ‖₁`.
pub fn estimate_divergence(init: &Matrix, sigma_a: &Matrix, lambda1: f64) -> Result<Matrix> {
    let p = check_pair(init, sigma_a)?;
    if !(lambda1 >= 0.0) {
        return Err(Error::Config(format!("λ₁ must be ≥ 0, got {lambda1}")));
    }
    let b = init * sigma_a - Matrix::identity(p, p);
    Ok(b.map(|x| soft_threshold(x, lambda1)))
}

/// `λ₁ = 2‖Ω̂⁽⁰⁾‖_{1,∞} √(p_m ln p_m / (n p))`.
pub fn lambda1_default(init: &Matrix, pm: usize, n: usize, p: usize) -> Result<f64> {
    if pm < 2 {
        return Err(Error::Config(format!("λ₁ needs a mode of size ≥ 2, got {pm}")));
    }
    if n == 0 || p == 0 {
        return Err(Error::Config("λ₁ needs n, p ≥ 1".into()));
    }
    let pm = pm as f64;
    Ok(2.0 * one_inf_norm(init) * (pm * pm.ln() / (n as f64 * p as f64)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CdSettings {
    /// Stop a column once the largest coordinate change in a sweep is below this.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for CdSettings {
    fn default() -> Self {
        Self { tol: 1e-8, max_sweeps: 1000 }
    }
}

#[derive(Debug, Clone)]
pub struct ColumnSolution {
    pub theta: Vec<f64>,
    pub sweeps: usize,
    pub converged: bool,
    /// Objective at the start and after every sweep.
    pub objective_trace: Vec<f64>,
}

/// `½θᵀΣθ − bᵀθ + λ Σ_{i≠j} |θ_i|`.
pub fn column_objective(sigma: &Matrix, b: &[f64], j: usize, lambda: f64, theta: &[f64]) -> f64 {
    let p = theta.len();
    let mut quad = 0.0;
    let mut lin = 0.0;
    let mut pen = 0.0;
    for i in 0..p {
        let mut row = 0.0;
        for k in 0..p {
            row += sigma[(i, k)] * theta[k];
        }
        quad += theta[i] * row;
        lin += b[i] * theta[i];
        if i != j {
            pen += theta[i].abs();
        }
    }
    0.5 * quad - lin + lambda * pen
}

/// Cyclic coordinate descent for one column of the transfer precision:
/// `θ_i ← 𝒯(b_i − Σ_{k≠i} Σ_ik θ_k, λ·1{i≠j}) / Σ_ii`.
pub fn transfer_column(
    sigma: &Matrix,
    b: &[f64],
    j: usize,
    lambda: f64,
    init: &[f64],
    settings: &CdSettings,
) -> ColumnSolution {
    let p = b.len();
    let mut theta = init.to_vec();
    // r = Σθ
    let mut r: Vec<f64> = (0..p).map(|i| (0..p).map(|k| sigma[(i, k)] * theta[k]).sum()).collect();
    let mut trace = vec![column_objective(sigma, b, j, lambda, &theta)];
    for sweep in 1..=settings.max_sweeps {
        let mut largest: f64 = 0.0;
        for i in 0..p {
            let sii = sigma[(i, i)];
            let xi = b[i] - (r[i] - sii * theta[i]);
            let pen = if i == j { 0.0 } else { lambda };
            let new = soft_threshold(xi, pen) / sii;
            let change = new - theta[i];
            if change != 0.0 {
                for k in 0..p {
                    r[k] += sigma[(k, i)] * change;
                }
                theta[i] = new;
                largest = largest.max(change.abs());
            }
        }
        trace.push(column_objective(sigma, b, j, lambda, &theta));
        if largest < settings.tol {
            return ColumnSolution {
                theta,
                sweeps: sweep,
                converged: true,
                objective_trace: trace,
            };
        }
    }
    ColumnSolution {
        theta,
        sweeps: settings.max_sweeps,
        converged: false,
        objective_trace: trace,
    }
}

/// Solves `min_Ω loss_omega(Ω, Σ̂ᴬ, Δ̂) + λ₂‖Ω‖_{1,off}` one column at a time,
/// starting from `init`. The result is generally asymmetric.
pub fn transfer_precision(
    sigma_a: &Matrix,
    delta: &Matrix,
    lambda2: f64,
    init: &Matrix,
    settings: &CdSettings,
) -> Result<Matrix> {
    let p = check_pair(sigma_a, delta)?;
    check_pair(sigma_a, init)?;
    check_symmetric(sigma_a)?;
    if (0..p).any(|i| !(sigma_a[(i, i)] > 0.0)) {
        return Err(Error::Config("Σ̂ᴬ needs a strictly positive diagonal".into()));
    }
    if !(lambda2 >= 0.0) {
        return Err(Error::Config(format!("λ₂ must be ≥ 0, got {lambda2}")));
    }
    let mut out = Matrix::zeros(p, p);
    let mut failed = None;
    for j in 0..p {
        let mut b: Vec<f64> = delta.row(j).iter().copied().collect();
        b[j] += 1.0;
        let start: Vec<f64> = init.column(j).iter().copied().collect();
        let sol = transfer_column(sigma_a, &b, j, lambda2, &start, settings);
        if !sol.converged {
            failed.get_or_insert(sol.sweeps);
        }
        out.set_column(j, &nalgebra::DVector::from_vec(sol.theta));
    }
    match failed {
        None => Ok(out),
        Some(iterations) => Err(Error::NotConverged {
            what: "transfer coordinate descent",
            iterations,
            last: Box::new(out),
        }),
    }
}

/// `½tr(ΩᵀΣ̂ᴬΩ) − tr((Δ̂ᵀ+I)Ω) + (ln N / N)‖Ω‖₀`.
pub fn bic_criterion(sigma_a: &Matrix, delta: &Matrix, omega: &Matrix, n_total: usize) -> Result<f64> {
    let nz = omega.iter().filter(|&&x| x != 0.0).count() as f64;
    let n = n_total as f64;
    Ok(loss_omega(omega, sigma_a, delta)? + n.ln() / n * nz)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridSpec {
    pub size: usize,
    /// Smallest grid value as a fraction of the largest.
    pub ratio: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { size: 20, ratio: 0.01 }
    }
}

/// Log-spaced ascending grid ending at the smallest `λ₂` whose column
/// solutions are all diagonal.
pub fn lambda2_grid(sigma_a: &Matrix, delta: &Matrix, spec: &GridSpec) -> Result<Vec<f64>> {
    let p = check_pair(sigma_a, delta)?;
    if spec.size == 0 || !(spec.ratio > 0.0 && spec.ratio <= 1.0) {
        return Err(Error::Config(format!("invalid λ₂ grid {spec:?}")));
    }
    let mut lambda_max: f64 = 0.0;
    for j in 0..p {
        let bj = delta[(j, j)] + 1.0;
        for i in (0..p).filter(|&i| i != j) {
            let g = delta[(j, i)] - sigma_a[(i, j)] * bj / sigma_a[(j, j)];
            lambda_max = lambda_max.max(g.abs());
        }
    }
    if lambda_max == 0.0 {
        return Ok(vec![0.0]);
    }
    if spec.size == 1 {
        return Ok(vec![lambda_max]);
    }
    let lo = (lambda_max * spec.ratio).ln();
    let hi = lambda_max.ln();
    let step = (hi - lo) / (spec.size - 1) as f64;
    Ok((0..spec.size).map(|t| (lo + step * t as f64).exp()).collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BicPoint {
    pub lambda: f64,
    /// `None` when the fit at this value failed.
    pub criterion: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BicSelection {
    pub lambda: f64,
    pub precision: Matrix,
    pub criterion: f64,
    pub path: Vec<BicPoint>,
}

/// Fits every grid value and keeps the BIC minimizer; ties go to the larger `λ₂`.
pub fn bic_select_lambda2(
    sigma_a: &Matrix,
    delta: &Matrix,
    grid: &[f64],
    n_total: usize,
    init: &Matrix,
    settings: &CdSettings,
) -> Result<BicSelection> {
    if grid.is_empty() {
        return Err(Error::Config("empty λ₂ grid".into()));
    }
    if n_total < 2 {
        return Err(Error::InsufficientData(format!("BIC needs N ≥ 2, got {n_total}")));
    }
    let fits: Vec<Result<(Matrix, f64)>> = grid
        .par_iter()
        .map(|&lambda| {
            let omega = transfer_precision(sigma_a, delta, lambda, init, settings)?;
            let c = bic_criterion(sigma_a, delta, &omega, n_total)?;
            Ok((omega, c))
        })
        .collect();

    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]));
    let mut best: Option<usize> = None;
    for &t in &order {
        if let Ok((_, c)) = &fits[t] {
            let better = match best {
                None => true,
                Some(b) => {
                    let cb = fits[b].as_ref().map(|f| f.1).unwrap_or(f64::INFINITY);
                    *c <= cb + BIC_TIE_TOL
                }
            };
            if better {
                best = Some(t);
            }
        }
    }
    let path = grid
        .iter()
        .zip(&fits)
        .map(|(&lambda, f)| BicPoint {
            lambda,
            criterion: f.as_ref().ok().map(|f| f.1),
        })
        .collect();
    match best {
        Some(t) => {
            let lambda = grid[t];
            let (precision, criterion) = fits.into_iter().nth(t).expect("index in range")?;
            Ok(BicSelection {
                lambda,
                precision,
                criterion,
                path,
            })
        }
        None => {
            let last = order[order.len() - 1];
            Err(fits.into_iter().nth(last).expect("index in range").unwrap_err())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnChoice {
    Initial,
    Transfer,
}

#[derive(Debug, Clone)]
pub struct Selection {
    pub choices: Vec<ColumnChoice>,
    pub residuals_initial: Vec<f64>,
    pub residuals_transfer: Vec<f64>,
    pub matrix: Matrix,
}

/// Keeps, per column, whichever of `Ω̂⁽⁰⁾` and `Ω̂` gives the smaller
/// `‖Σ̃ω − e_j‖₂²`. Ties go to the transfer column.
pub fn select_columns(init: &Matrix, transfer: &Matrix, sigma_tilde: &Matrix) -> Result<Selection> {
    let p = check_pair(init, transfer)?;
    check_pair(init, sigma_tilde)?;
    let r0 = sigma_tilde * init;
    let r1 = sigma_tilde * transfer;
    let mut matrix = Matrix::zeros(p, p);
    let mut choices = Vec::with_capacity(p);
    let mut res0 = Vec::with_capacity(p);
    let mut res1 = Vec::with_capacity(p);
    for j in 0..p {
        let residual = |m: &Matrix| -> f64 {
            (0..p)
                .map(|i| {
                    let d = m[(i, j)] - if i == j { 1.0 } else { 0.0 };
                    d * d
                })
                .sum()
        };
        let (a, b) = (residual(&r0), residual(&r1));
        let choice = if b - a < SELECTION_TIE_TOL {
            ColumnChoice::Transfer
        } else {
            ColumnChoice::Initial
        };
        let src = match choice {
            ColumnChoice::Transfer => transfer,
            ColumnChoice::Initial => init,
        };
        matrix.set_column(j, &src.column(j));
        choices.push(choice);
        res0.push(a);
        res1.push(b);
    }
    Ok(Selection {
        choices,
        residuals_initial: res0,
        residuals_transfer: res1,
        matrix,
    })
}

#[derive(Debug, Clone)]
pub struct SymmetrizedFinal {
    pub matrix: Matrix,
    /// Reported only; no projection is applied.
    pub min_eigenvalue: f64,
}

/// `(Ω + Ωᵀ)/2`.
pub fn symmetrize_final(omega: &Matrix) -> Result<SymmetrizedFinal> {
    check_pair(omega, omega)?;
    let matrix = symmetrize(omega);
    let min_eigenvalue = min_eigenvalue(&matrix);
    Ok(SymmetrizedFinal { matrix, min_eigenvalue })
}
