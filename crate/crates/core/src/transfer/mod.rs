//! Transfer estimation of mode precisions from auxiliary domains.
//!
//! For every mode the target precision is related to the weighted auxiliary
//! covariance `Σᴬ` through the divergence matrix `Δ = ΩΣᴬ − I`. The estimator
//!
//! 1. fits separable initializers on part of the target data and on every
//!    auxiliary domain, and pools the auxiliary mode covariances into `Σ̂ᴬ`;
//! 2. soft-thresholds `Ω̂⁽⁰⁾Σ̂ᴬ − I` to get `Δ̂`, then solves a column-wise lasso
//!    for `Ω̂` with `Σ̂ᴬΩ ≈ Δ̂ᵀ + I`;
//! 3. picks, column by column, whichever of `Ω̂⁽⁰⁾` and `Ω̂` better inverts a
//!    covariance estimated on the held-out target samples, and symmetrizes.

mod fit;
mod loss;
mod steps;
mod weights;

pub use fit::{transfer_fit, ModeTransfer, PreparedTransfer, SampleSplit, TransferFit, TransferOptions};
pub use loss::{divergence_objective, loss_delta, loss_omega};
pub use steps::{
    bic_criterion, bic_select_lambda2, column_objective, estimate_divergence, lambda1_default, lambda2_grid,
    select_columns, symmetrize_final, transfer_column, transfer_precision, BicPoint, BicSelection, CdSettings,
    ColumnChoice, ColumnSolution, GridSpec, Selection, SymmetrizedFinal, SELECTION_TIE_TOL,
};
pub use weights::{h_hat, weights_adaptive, weights_naive, WeightKind, WeightScheme, H_FLOOR};

/// `sign(z)·max(0, |z| − λ)`.
pub fn soft_threshold(z: f64, lambda: f64) -> f64 {
    if z > lambda {
        z - lambda
    } else if z < -lambda {
        z + lambda
    } else {
        0.0
    }
}
