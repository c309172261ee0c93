//! Graphical lasso for one mode:
//!
//! `min_Ω (1/p)[-log det Ω + tr(SΩ)] + λ‖Ω‖_{1,off}`
//!
//! Multiplying through by `p` gives the usual graphical lasso with off-diagonal
//! penalty `ρ = λ·p`. The solver is block coordinate descent over columns on
//! the primal: each column update fixes the remaining `(p-1)×(p-1)` block,
//! solves the column's lasso subproblem by cyclic coordinate descent, and sets
//! the diagonal entry in closed form. `W = Ω⁻¹` is carried along with rank-one
//! updates. Every column update decreases the objective, so the trace is
//! monotone, and every iterate stays positive definite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{check_symmetric, log_det_spd, min_eigenvalue, spd_inverse, Matrix, EIGEN_CLAMP};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GlassoSettings {
    /// Maximum number of full column sweeps.
    pub max_iters: usize,
    /// Stop once the KKT residual drops below `tol·max(1, max_i S_ii)`.
    pub tol: f64,
    pub inner_max_iters: usize,
    pub inner_tol: f64,
}

impl Default for GlassoSettings {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            tol: 1e-7,
            inner_max_iters: 1000,
            inner_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlassoFit {
    #[serde(with = "crate::io::serde_matrix")]
    pub precision: Matrix,
    pub sweeps: usize,
    /// Objective after initialization and after every sweep.
    pub objective_trace: Vec<f64>,
    pub kkt_residual: f64,
}

/// `(1/p)[-log det Ω + tr(SΩ)] + λ‖Ω‖_{1,off}`; `+∞` when `Ω` is not PD.
pub fn glasso_objective(s: &Matrix, omega: &Matrix, lambda: f64) -> f64 {
    let p = s.nrows() as f64;
    let Ok(log_det) = log_det_spd(omega) else {
        return f64::INFINITY;
    };
    let trace: f64 = s.component_mul(omega).sum();
    (trace - log_det) / p + lambda * crate::tensor::norms(omega).one_off
}

/// Largest violation of the optimality conditions with `W = Ω⁻¹`, `ρ = λp`:
/// `W_ii = S_ii`; `W_ij − S_ij = ρ·sign(Ω_ij)` where `Ω_ij ≠ 0`;
/// `|W_ij − S_ij| ≤ ρ` where `Ω_ij = 0`.
pub fn kkt_residual(s: &Matrix, omega: &Matrix, lambda: f64) -> Result<f64> {
    let w = spd_inverse(omega)?;
    Ok(kkt_residual_with(s, omega, &w, lambda * s.nrows() as f64))
}

fn kkt_residual_with(s: &Matrix, omega: &Matrix, w: &Matrix, rho: f64) -> f64 {
    let p = s.nrows();
    let mut worst: f64 = 0.0;
    for j in 0..p {
        for i in 0..p {
            let g = w[(i, j)] - s[(i, j)];
            let r = if i == j {
                g.abs()
            } else if omega[(i, j)] == 0.0 {
                (g.abs() - rho).max(0.0)
            } else {
                (g - rho * omega[(i, j)].signum()).abs()
            };
            worst = worst.max(r);
        }
    }
    worst
}

fn soft(z: f64, t: f64) -> f64 {
    crate::transfer::soft_threshold(z, t)
}

pub fn glasso(s: &Matrix, lambda: f64, settings: &GlassoSettings) -> Result<GlassoFit> {
    check_symmetric(s)?;
    if lambda < 0.0 || !lambda.is_finite() {
        return Err(Error::Config(format!("penalty must be finite and ≥ 0, got {lambda}")));
    }
    let p = s.nrows();
    let psi = min_eigenvalue(s);
    let floor = EIGEN_CLAMP * s.amax().max(1.0);
    if psi < -floor {
        return Err(Error::NotPsd(psi));
    }
    if lambda == 0.0 && psi <= floor {
        return Err(Error::NotPd);
    }
    if let Some(i) = (0..p).find(|&i| s[(i, i)] <= 0.0) {
        return Err(Error::NotPsd(s[(i, i)]));
    }

    let rho = lambda * p as f64;
    let tol = settings.tol * (0..p).map(|i| s[(i, i)]).fold(1.0, f64::max);
    let mut omega = Matrix::from_fn(p, p, |i, j| if i == j { 1.0 / s[(i, i)] } else { 0.0 });
    let mut w = Matrix::from_fn(p, p, |i, j| if i == j { s[(i, i)] } else { 0.0 });
    let mut trace = vec![glasso_objective(s, &omega, lambda)];

    let mut kkt = kkt_residual_with(s, &omega, &w, rho);
    if kkt < tol || p == 1 {
        return Ok(GlassoFit {
            precision: omega,
            sweeps: 0,
            objective_trace: trace,
            kkt_residual: kkt,
        });
    }

    let mut a = Matrix::zeros(p - 1, p - 1);
    let mut gamma = vec![0.0; p - 1];
    let mut s12 = vec![0.0; p - 1];
    let mut a_gamma = vec![0.0; p - 1];
    for sweep in 1..=settings.max_iters {
        for j in 0..p {
            let idx: Vec<usize> = (0..p).filter(|&i| i != j).collect();
            let s22 = s[(j, j)];
            let w22 = w[(j, j)];
            // A = Ω₁₁⁻¹ = W₁₁ − w₁₂w₁₂ᵀ / w₂₂
            for (r, &ir) in idx.iter().enumerate() {
                for (c, &ic) in idx.iter().enumerate() {
                    a[(r, c)] = w[(ir, ic)] - w[(ir, j)] * w[(ic, j)] / w22;
                }
                gamma[r] = omega[(ir, j)];
                s12[r] = s[(ir, j)];
            }
            // min_γ ½ s22 γᵀAγ + s12ᵀγ + ρ‖γ‖₁
            for r in 0..p - 1 {
                a_gamma[r] = (0..p - 1).map(|c| a[(r, c)] * gamma[c]).sum();
            }
            for _ in 0..settings.inner_max_iters {
                let mut max_step: f64 = 0.0;
                for r in 0..p - 1 {
                    let q_rr = s22 * a[(r, r)];
                    let partial = s12[r] + s22 * (a_gamma[r] - a[(r, r)] * gamma[r]);
                    let new = -soft(partial, rho) / q_rr;
                    let step = new - gamma[r];
                    if step != 0.0 {
                        for c in 0..p - 1 {
                            a_gamma[c] += a[(c, r)] * step;
                        }
                        gamma[r] = new;
                        max_step = max_step.max(step.abs());
                    }
                }
                if max_step < settings.inner_tol {
                    break;
                }
            }
            let quad: f64 = gamma.iter().zip(&a_gamma).map(|(g, ag)| g * ag).sum();
            omega[(j, j)] = 1.0 / s22 + quad;
            for (r, &ir) in idx.iter().enumerate() {
                omega[(ir, j)] = gamma[r];
                omega[(j, ir)] = gamma[r];
            }
            // block inverse with Schur complement 1/s22
            for (r, &ir) in idx.iter().enumerate() {
                for (c, &ic) in idx.iter().enumerate() {
                    w[(ir, ic)] = a[(r, c)] + s22 * a_gamma[r] * a_gamma[c];
                }
                w[(ir, j)] = -s22 * a_gamma[r];
                w[(j, ir)] = -s22 * a_gamma[r];
            }
            w[(j, j)] = s22;
        }
        // refresh W to keep rank-one drift out of the KKT check
        w = spd_inverse(&omega)?;
        trace.push(glasso_objective(s, &omega, lambda));
        kkt = kkt_residual_with(s, &omega, &w, rho);
        if kkt < tol {
            return Ok(GlassoFit {
                precision: omega,
                sweeps: sweep,
                objective_trace: trace,
                kkt_residual: kkt,
            });
        }
    }
    Err(Error::NotConverged {
        what: "graphical lasso",
        iterations: settings.max_iters,
        last: Box::new(omega),
    })
}
