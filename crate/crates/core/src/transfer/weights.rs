use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{one_inf_norm, Matrix};

/// Floor on `ĥ_k` so a domain that matches the target exactly still gets a finite weight.
pub const H_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    /// Proportional to sample size.
    Naive,
    /// Proportional to sample size over estimated divergence.
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightScheme {
    pub kind: WeightKind,
    pub alphas: Vec<f64>,
    pub h_hat: Option<Vec<f64>>,
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::NoDomains);
    }
    if sizes.contains(&0) {
        return Err(Error::InsufficientData("auxiliary domain with no samples".into()));
    }
    Ok(())
}

fn normalize(raw: Vec<f64>) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// `α_k = n_k / N`.
pub fn weights_naive(sizes: &[usize]) -> Result<WeightScheme> {
    check_sizes(sizes)?;
    Ok(WeightScheme {
        kind: WeightKind::Naive,
        alphas: normalize(sizes.iter().map(|&n| n as f64).collect()),
        h_hat: None,
    })
}

/// `ĥ_k = max_m ‖Δ̂_m^(k)‖_{1,∞}`; `divergences[k][m]`.
pub fn h_hat(divergences: &[Vec<Matrix>]) -> Vec<f64> {
    divergences
        .iter()
        .map(|per_mode| per_mode.iter().map(one_inf_norm).fold(0.0, f64::max))
        .collect()
}

/// `α_k ∝ n_k / max(ĥ_k, ε)`.
pub fn weights_adaptive(sizes: &[usize], divergences: &[Vec<Matrix>]) -> Result<WeightScheme> {
    check_sizes(sizes)?;
    if divergences.len() != sizes.len() {
        return Err(Error::Dimension(format!(
            "{} divergence sets for {} domains",
            divergences.len(),
            sizes.len()
        )));
    }
    let h = h_hat(divergences);
    let raw = sizes.iter().zip(&h).map(|(&n, &hk)| n as f64 / hk.max(H_FLOOR)).collect();
    Ok(WeightScheme {
        kind: WeightKind::Adaptive,
        alphas: normalize(raw),
        h_hat: Some(h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scalar_divergence(h: f64) -> Vec<Matrix> {
        vec![Matrix::from_element(1, 1, h)]
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15)
    }

    #[test]
    fn naive_examples() {
        assert!(close(&weights_naive(&[80, 80]).unwrap().alphas, &[0.5, 0.5]));
        assert!(close(&weights_naive(&[100, 50, 50]).unwrap().alphas, &[0.5, 0.25, 0.25]));
        assert_eq!(weights_naive(&[7]).unwrap().alphas, vec![1.0]);
        assert!(matches!(weights_naive(&[]), Err(Error::NoDomains)));
    }

    #[test]
    fn adaptive_examples() {
        let w = weights_adaptive(&[50, 50], &[scalar_divergence(1.0), scalar_divergence(2.0)]).unwrap();
        assert!(close(&w.alphas, &[2.0 / 3.0, 1.0 / 3.0]));
        let w = weights_adaptive(&[100, 50], &[scalar_divergence(1.0), scalar_divergence(1.0)]).unwrap();
        assert!(close(&w.alphas, &[2.0 / 3.0, 1.0 / 3.0]));
        assert!(weights_adaptive(&[], &[]).is_err());
    }

    #[test]
    fn zero_divergence_dominates() {
        let w = weights_adaptive(
            &[80, 100, 60],
            &[scalar_divergence(0.0), scalar_divergence(0.01), scalar_divergence(0.5)],
        )
        .unwrap();
        assert!(w.alphas[0] > 0.999);
    }

    #[test]
    fn h_hat_takes_max_over_modes() {
        let d = vec![
            Matrix::from_row_slice(2, 2, &[0.1, -0.2, 0.3, 0.0]),
            Matrix::from_row_slice(2, 2, &[0.0, 0.05, 0.0, 0.05]),
        ];
        assert!(close(&h_hat(&[d]), &[0.4]));
    }

    proptest! {
        #[test]
        fn simplex_and_scale_invariance(
            sizes in prop::collection::vec(1usize..200, 1..6),
            hs in prop::collection::vec(0.0f64..3.0, 6),
            factor in 1usize..5,
        ) {
            let divs: Vec<Vec<Matrix>> = sizes.iter().zip(&hs).map(|(_, &h)| scalar_divergence(h)).collect();
            let scaled: Vec<usize> = sizes.iter().map(|n| n * factor).collect();
            for (a, b) in [
                (weights_naive(&sizes).unwrap(), weights_naive(&scaled).unwrap()),
                (weights_adaptive(&sizes, &divs).unwrap(), weights_adaptive(&scaled, &divs).unwrap()),
            ] {
                prop_assert!((a.alphas.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                prop_assert!(a.alphas.iter().all(|&x| x >= 0.0));
                for (x, y) in a.alphas.iter().zip(&b.alphas) {
                    prop_assert!((x - y).abs() < 1e-12);
                }
            }
        }
    }
}
