use crate::error::{Error, Result};
use crate::tensor::Matrix;

fn check_square(mats: &[&Matrix]) -> Result<usize> {
    let p = mats[0].nrows();
    if mats.iter().any(|m| m.shape() != (p, p)) {
        let shapes: Vec<_> = mats.iter().map(|m| m.shape()).collect();
        return Err(Error::Dimension(format!("expected conformable square matrices, got {shapes:?}")));
    }
    Ok(p)
}

/// `½ tr(ΔᵀΔ) − tr((ΩΣᴬ − I)ᵀΔ)`, minimized at `Δ = ΩΣᴬ − I`.
pub fn loss_delta(delta: &Matrix, sigma_a: &Matrix, omega: &Matrix) -> Result<f64> {
    let p = check_square(&[delta, sigma_a, omega])?;
    let b = omega * sigma_a - Matrix::identity(p, p);
    Ok(0.5 * delta.norm_squared() - b.dot(delta))
}

/// `½ tr(ΩᵀΣᴬΩ) − ⟨Δᵀ + I, Ω⟩`.
///
/// The gradient is `ΣᴬΩ − (Δᵀ + I)`, so with `Δ = Ω*Σᴬ − I` and symmetric
/// `Ω*`, `Σᴬ` the unique minimizer is `Ω*` itself. Column `j` of the problem
/// pairs `Ω_(j)` with row `j` of `Δ` (plus `e_j`).
pub fn loss_omega(omega: &Matrix, sigma_a: &Matrix, delta: &Matrix) -> Result<f64> {
    let p = check_square(&[omega, sigma_a, delta])?;
    let target = delta.transpose() + Matrix::identity(p, p);
    Ok(0.5 * (omega.transpose() * sigma_a * omega).trace() - target.dot(omega))
}

/// `loss_delta + λ₁‖Δ‖₁` with the ℓ₁ norm over every entry.
pub fn divergence_objective(delta: &Matrix, sigma_a: &Matrix, omega: &Matrix, lambda1: f64) -> Result<f64> {
    Ok(loss_delta(delta, sigma_a, omega)? + lambda1 * delta.iter().map(|x| x.abs()).sum::<f64>())
}
