//! Synthetic ground truth: precision graphs, tensor-normal sampling and the
//! two multi-domain simulation scenarios.
//!
//! Generated target precisions are Frobenius-normalized before sampling, so
//! the data follow the identifiability convention the estimators assume.

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, purpose, Rng};
use crate::tensor::{min_eigenvalue, spd_inverse, sym_sqrt, symmetrize, Matrix, PrecisionSet, Tensor};

/// Nearest-neighbor graphs connect each node to this many neighbors.
pub const NN_NEIGHBORS: usize = 4;
/// Diagonal margin added on top of `|ψ_min|` for nearest-neighbor precisions.
pub const NN_EIGEN_MARGIN: f64 = 0.2;

pub const INFORMATIVE_PROB_ZERO: f64 = 0.9;
pub const NON_INFORMATIVE_PROB_ZERO: f64 = 0.75;

/// Auxiliary covariances whose smallest eigenvalue falls below this get a ridge.
const AUX_EIGEN_FLOOR: f64 = 1e-6;
const AUX_RIDGE_MARGIN: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Chain,
    NearestNeighbor,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Chain => "chain",
            GraphKind::NearestNeighbor => "nearest_neighbor",
        }
    }

    fn min_dim(self) -> usize {
        match self {
            GraphKind::Chain => 2,
            GraphKind::NearestNeighbor => NN_NEIGHBORS + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub dims: Vec<usize>,
    pub seed: u64,
}

impl GraphSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Config("graph dims must be non-empty".into()));
        }
        let min = self.kind.min_dim();
        if let Some(&d) = self.dims.iter().find(|&&d| d < min) {
            return Err(Error::Config(format!(
                "{} graphs need every dimension ≥ {min}, got {d}",
                self.kind.name()
            )));
        }
        Ok(())
    }
}

/// Chain-graph precision.
///
/// Node positions `s_1 < ⋯ < s_p` have gaps `s_{i+1} - s_i ~ Unif(0.5, 1)` and
/// covariance `Σ_ij = exp(-|s_i - s_j| / 2)`. This is a Gaussian Markov chain
/// with lag-one correlations `φ_i = exp(-ρ_i / 2)`, whose precision is exactly
/// tridiagonal and is written down in closed form here.
pub fn gen_chain_precision(p: usize, rng: &mut Rng) -> Matrix {
    let gaps: Vec<f64> = (0..p.saturating_sub(1)).map(|_| rng.random_range(0.5..1.0)).collect();
    chain_precision_from_gaps(&gaps)
}

pub(crate) fn chain_precision_from_gaps(gaps: &[f64]) -> Matrix {
    let p = gaps.len() + 1;
    let phi: Vec<f64> = gaps.iter().map(|r| (-r / 2.0).exp()).collect();
    let mut omega = Matrix::zeros(p, p);
    for i in 0..p {
        let mut d = 1.0;
        if i > 0 {
            // conditional variance of x_i given x_{i-1}
            d = 1.0 / (1.0 - phi[i - 1] * phi[i - 1]);
        }
        if i + 1 < p {
            let f = phi[i];
            d += f * f / (1.0 - f * f);
            let off = -f / (1.0 - f * f);
            omega[(i, i + 1)] = off;
            omega[(i + 1, i)] = off;
        }
        omega[(i, i)] = d;
    }
    omega
}

/// Nearest-neighbor-graph precision.
pub fn gen_nn_precision(p: usize, rng: &mut Rng) -> Matrix {
    let points: Vec<(f64, f64)> = (0..p).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
    let mut adjacent = vec![vec![false; p]; p];
    for i in 0..p {
        let mut others: Vec<(f64, usize)> = (0..p)
            .filter(|&j| j != i)
            .map(|j| {
                let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                (dx * dx + dy * dy, j)
            })
            .collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, j) in others.iter().take(NN_NEIGHBORS) {
            adjacent[i][j] = true;
            adjacent[j][i] = true;
        }
    }
    let mut omega = Matrix::zeros(p, p);
    for j in 0..p {
        for i in 0..j {
            if adjacent[i][j] {
                let magnitude = rng.random_range(0.5..=1.0);
                let value = if rng.random::<bool>() { magnitude } else { -magnitude };
                omega[(i, j)] = value;
                omega[(j, i)] = value;
            }
        }
    }
    let shift = min_eigenvalue(&omega).abs() + NN_EIGEN_MARGIN;
    for i in 0..p {
        omega[(i, i)] += shift;
    }
    omega
}

/// Frobenius-normalized target precisions, one per mode.
pub fn target_precisions(spec: &GraphSpec) -> Result<PrecisionSet> {
    spec.validate()?;
    let mats = spec
        .dims
        .iter()
        .enumerate()
        .map(|(m, &p)| {
            let mut rng = rng::stream(spec.seed, rng::TARGET_DOMAIN, purpose::GRAPH + m as u64);
            match spec.kind {
                GraphKind::Chain => gen_chain_precision(p, &mut rng),
                GraphKind::NearestNeighbor => gen_nn_precision(p, &mut rng),
            }
        })
        .collect();
    PrecisionSet::normalized(mats)
}

/// Draws `n` samples with `vec(X) ~ N(0, Σ_M ⊗ ⋯ ⊗ Σ_1)`, `Σ_m = Ω_m⁻¹`.
pub fn sample_tensor_normal(prec: &PrecisionSet, n: usize, rng: &mut Rng) -> Result<Vec<Tensor>> {
    let covs = prec.covariances()?;
    sample_from_covariances(&covs, n, rng)
}

/// Each sample is `Z ×₁ Σ₁^{1/2} ⋯ ×_M Σ_M^{1/2}` with i.i.d. standard normal `Z`.
pub fn sample_from_covariances(covs: &[Matrix], n: usize, rng: &mut Rng) -> Result<Vec<Tensor>> {
    let roots = covs.iter().map(sym_sqrt).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = covs.iter().map(|c| c.nrows()).collect();
    let len: usize = dims.iter().product();
    let refs: Vec<Option<&Matrix>> = roots.iter().map(Some).collect();
    (0..n)
        .map(|_| {
            let z: Vec<f64> = (0..len).map(|_| StandardNormal.sample(rng)).collect();
            Tensor::new(dims.clone(), z)?.multi_mode_product(&refs)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaSpec {
    /// Probability that a raw divergence entry is exactly zero.
    pub prob_zero: f64,
    /// Nonzero entries are `Unif[-magnitude, magnitude]`.
    pub magnitude: f64,
}

#[derive(Debug, Clone)]
pub struct AuxiliaryTruth {
    pub covariances: Vec<Matrix>,
    /// Realized `Ω_m Σ_m^(k) − I`, recomputed after the PD floor.
    pub divergences: Vec<Matrix>,
}

pub fn make_auxiliary(target: &PrecisionSet, spec: DeltaSpec, rng: &mut Rng) -> Result<AuxiliaryTruth> {
    let mut covariances = Vec::with_capacity(target.order());
    let mut divergences = Vec::with_capacity(target.order());
    for omega in target.as_slice() {
        let p = omega.nrows();
        let sigma = spd_inverse(omega)?;
        let raw = Matrix::from_fn(p, p, |_, _| {
            if rng.random::<f64>() < spec.prob_zero {
                0.0
            } else {
                rng.random_range(-spec.magnitude..=spec.magnitude)
            }
        });
        let mut aux = symmetrize(&(&sigma * (raw + Matrix::identity(p, p))));
        let psi = min_eigenvalue(&aux);
        if psi < AUX_EIGEN_FLOOR {
            let ridge = psi.abs() + AUX_RIDGE_MARGIN;
            for i in 0..p {
                aux[(i, i)] += ridge;
            }
        }
        divergences.push(omega * &aux - Matrix::identity(p, p));
        covariances.push(aux);
    }
    Ok(AuxiliaryTruth {
        covariances,
        divergences,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainLabel {
    Target,
    Auxiliary(usize),
}

#[derive(Debug, Clone)]
pub struct DomainData {
    pub label: DomainLabel,
    pub samples: Vec<Tensor>,
    pub truth: Option<PrecisionSet>,
    pub divergences: Option<Vec<Matrix>>,
    pub informative: Option<bool>,
}

impl DomainData {
    pub fn new(label: DomainLabel, samples: Vec<Tensor>) -> Result<Self> {
        let first = samples
            .first()
            .ok_or_else(|| Error::InsufficientData("a domain needs at least one sample".into()))?;
        if let Some(bad) = samples.iter().find(|s| s.dims() != first.dims()) {
            return Err(Error::Dimension(format!(
                "sample dims {:?} differ from {:?}",
                bad.dims(),
                first.dims()
            )));
        }
        Ok(Self {
            label,
            samples,
            truth: None,
            divergences: None,
            informative: None,
        })
    }

    pub fn dims(&self) -> &[usize] {
        self.samples[0].dims()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    One,
    Two,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::One => "one",
            ScenarioKind::Two => "two",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub graph: GraphSpec,
    /// Target sample size.
    pub n: usize,
    /// Number of auxiliary domains.
    pub k: usize,
    /// Sample size of every auxiliary domain.
    pub n_k: usize,
    /// Number of informative auxiliaries (all of them in scenario one).
    pub card_a: usize,
    pub seed: u64,
}

impl ScenarioConfig {
    /// `K` informative auxiliaries of size 80.
    pub fn scenario_one(graph: GraphSpec, n: usize, k: usize, seed: u64) -> Self {
        Self {
            scenario: ScenarioKind::One,
            graph,
            n,
            k,
            n_k: 80,
            card_a: k,
            seed,
        }
    }

    /// Five auxiliaries of size 100, `card_a` of them informative.
    pub fn scenario_two(graph: GraphSpec, n: usize, card_a: usize, seed: u64) -> Self {
        Self {
            scenario: ScenarioKind::Two,
            graph,
            n,
            k: 5,
            n_k: 100,
            card_a,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.graph.validate()?;
        if self.n == 0 || self.n_k == 0 {
            return Err(Error::Config("sample sizes must be positive".into()));
        }
        if self.card_a > self.k {
            return Err(Error::Config(format!(
                "card_A = {} exceeds K = {}",
                self.card_a, self.k
            )));
        }
        if self.scenario == ScenarioKind::One && self.card_a != self.k {
            return Err(Error::Config("scenario one has every auxiliary informative".into()));
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.graph.dims.iter().product()
    }

    /// `√(p̄ log p̄ / (n p))` with `p̄ = max_m p_m`.
    pub fn base_magnitude(&self) -> f64 {
        let pbar = *self.graph.dims.iter().max().unwrap_or(&1) as f64;
        (pbar * pbar.ln() / (self.n as f64 * self.total_dim() as f64)).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioData {
    pub target: DomainData,
    pub auxiliaries: Vec<DomainData>,
    pub h01: f64,
    pub h02: f64,
    /// Largest column support size over all target precisions.
    pub s_bar: usize,
}

/// Largest number of nonzeros in any column of any member.
pub fn max_column_support(prec: &PrecisionSet) -> usize {
    prec.as_slice()
        .iter()
        .flat_map(|m| m.column_iter().map(|c| c.iter().filter(|x| **x != 0.0).count()).collect::<Vec<_>>())
        .max()
        .unwrap_or(0)
}

pub fn gen_scenario(cfg: &ScenarioConfig) -> Result<ScenarioData> {
    cfg.validate()?;
    let truth = target_precisions(&cfg.graph)?;
    let s_bar = max_column_support(&truth);
    let h01 = cfg.base_magnitude();
    let h02 = 10.0 * s_bar as f64 * h01;

    let mut rng = rng::stream(cfg.seed, rng::TARGET_DOMAIN, purpose::SAMPLES);
    let mut target = DomainData::new(DomainLabel::Target, sample_tensor_normal(&truth, cfg.n, &mut rng)?)?;

    let mut auxiliaries = Vec::with_capacity(cfg.k);
    for k in 0..cfg.k {
        let informative = k < cfg.card_a;
        let spec = if informative {
            DeltaSpec {
                prob_zero: INFORMATIVE_PROB_ZERO,
                magnitude: h01,
            }
        } else {
            DeltaSpec {
                prob_zero: NON_INFORMATIVE_PROB_ZERO,
                magnitude: h02,
            }
        };
        let domain = rng::auxiliary_domain(k);
        let aux = make_auxiliary(&truth, spec, &mut rng::stream(cfg.seed, domain, purpose::DIVERGENCE))?;
        let samples = sample_from_covariances(
            &aux.covariances,
            cfg.n_k,
            &mut rng::stream(cfg.seed, domain, purpose::SAMPLES),
        )?;
        let precisions = aux.covariances.iter().map(spd_inverse).collect::<Result<Vec<_>>>()?;
        let mut data = DomainData::new(DomainLabel::Auxiliary(k), samples)?;
        data.truth = Some(PrecisionSet::new(precisions.into_iter().map(|m| symmetrize(&m)).collect())?);
        data.divergences = Some(aux.divergences);
        data.informative = Some(informative);
        log::debug!(
            "auxiliary {k}: informative={informative}, max |Δ|_1,inf = {:.4}",
            data.divergences
                .as_ref()
                .map(|d| d.iter().map(crate::tensor::one_inf_norm).fold(0.0, f64::max))
                .unwrap_or(0.0)
        );
        auxiliaries.push(data);
    }
    target.truth = Some(truth);
    log::debug!("scenario {}: h01={h01:.5} h02={h02:.5} s_bar={s_bar}", cfg.scenario.name());
    Ok(ScenarioData {
        target,
        auxiliaries,
        h01,
        h02,
        s_bar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::kron_reversed;
    use statrs::distribution::{ContinuousCDF, Normal};

    fn chain_spec(dims: Vec<usize>, seed: u64) -> GraphSpec {
        GraphSpec {
            kind: GraphKind::Chain,
            dims,
            seed,
        }
    }

    #[test]
    fn chain_covariance_has_unit_diagonal_and_banded_neighbors() {
        for seed in 0..20 {
            let mut rng = rng::stream(seed, 0, 0);
            let omega = gen_chain_precision(8, &mut rng);
            let sigma = omega.clone().try_inverse().unwrap();
            for i in 0..8 {
                assert!((sigma[(i, i)] - 1.0).abs() < 1e-10);
                if i + 1 < 8 {
                    let v = sigma[(i, i + 1)];
                    assert!(v >= (-0.5f64).exp() - 1e-12 && v <= (-0.25f64).exp() + 1e-12);
                }
            }
            // Σ_ij = Π of neighbor correlations along the chain
            for i in 0..6 {
                let prod = sigma[(i, i + 1)] * sigma[(i + 1, i + 2)];
                assert!((sigma[(i, i + 2)] - prod).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn chain_precision_is_tridiagonal_and_pd() {
        for seed in 0..20 {
            let omega = gen_chain_precision(12, &mut rng::stream(seed, 0, 0));
            for i in 0usize..12 {
                for j in 0..12 {
                    let band = i.abs_diff(j) <= 1;
                    assert_eq!(omega[(i, j)] != 0.0, band, "({i},{j})");
                }
            }
            assert!(min_eigenvalue(&omega) > 0.0);
        }
    }

    #[test]
    fn chain_precision_inverts_exponential_covariance() {
        let gaps = [0.6, 0.9, 0.75];
        let s: Vec<f64> = std::iter::once(0.0)
            .chain(gaps.iter().scan(0.0, |acc, g| {
                *acc += g;
                Some(*acc)
            }))
            .collect();
        let sigma = Matrix::from_fn(4, 4, |i, j| (-(s[i] - s[j]).abs() / 2.0).exp());
        let omega = chain_precision_from_gaps(&gaps);
        assert!((omega * sigma - Matrix::identity(4, 4)).amax() < 1e-12);
    }

    #[test]
    fn nn_precision_properties() {
        for seed in 0..25 {
            let p = 12;
            let omega = gen_nn_precision(p, &mut rng::stream(seed, 0, 1));
            assert_eq!(crate::tensor::max_asymmetry(&omega), 0.0);
            assert!(min_eigenvalue(&omega) >= NN_EIGEN_MARGIN - 1e-8);
            for i in 0..p {
                let degree = (0..p).filter(|&j| j != i && omega[(i, j)] != 0.0).count();
                assert!((NN_NEIGHBORS..p).contains(&degree), "degree {degree}");
                for j in 0..p {
                    if i != j && omega[(i, j)] != 0.0 {
                        let a = omega[(i, j)].abs();
                        assert!((0.5..=1.0).contains(&a));
                    }
                }
            }
        }
    }

    #[test]
    fn graph_spec_validation() {
        assert!(chain_spec(vec![1, 3], 0).validate().is_err());
        let nn = GraphSpec {
            kind: GraphKind::NearestNeighbor,
            dims: vec![4],
            seed: 0,
        };
        assert!(nn.validate().is_err());
    }

    #[test]
    fn identity_sampler_gives_standard_normal_entries() {
        let prec = PrecisionSet::new(vec![Matrix::identity(4, 4), Matrix::identity(5, 5)]).unwrap();
        let samples = sample_tensor_normal(&prec, 500, &mut rng::stream(2024, 0, 0)).unwrap();
        let mut pooled: Vec<f64> = samples.iter().flat_map(|s| s.data().to_vec()).collect();
        assert_eq!(pooled.len(), 10_000);
        pooled.sort_by(f64::total_cmp);
        let n = pooled.len() as f64;
        let norm = Normal::new(0.0, 1.0).unwrap();
        let d = pooled
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = norm.cdf(x);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max);
        // KS critical value at α = 0.01 is ≈ 1.628/√n
        assert!(d < 1.628 / n.sqrt(), "KS statistic {d}");
        let mean = pooled.iter().sum::<f64>() / n;
        assert!(mean.abs() < 4.0 / n.sqrt());
    }

    #[test]
    fn sampler_matches_kronecker_covariance() {
        let prec = PrecisionSet::new(vec![
            gen_chain_precision(3, &mut rng::stream(9, 0, 0)),
            gen_chain_precision(2, &mut rng::stream(9, 0, 1)),
        ])
        .unwrap();
        let covs = prec.covariances().unwrap();
        let expected = kron_reversed(&covs);
        let n = 20_000;
        let samples = sample_tensor_normal(&prec, n, &mut rng::stream(77, 0, 0)).unwrap();
        let mut emp = Matrix::zeros(6, 6);
        for s in &samples {
            let v = nalgebra::DVector::from_column_slice(s.data());
            emp += &v * v.transpose();
        }
        emp /= n as f64;
        let err = (emp - &expected).amax();
        assert!(err < 0.05, "max-abs error {err}");
    }

    #[test]
    fn unperturbed_auxiliary_matches_target() {
        let prec = target_precisions(&chain_spec(vec![4, 3], 1)).unwrap();
        let aux = make_auxiliary(
            &prec,
            DeltaSpec {
                prob_zero: 1.0,
                magnitude: 0.5,
            },
            &mut rng::stream(0, 1, 0),
        )
        .unwrap();
        for (m, (cov, delta)) in aux.covariances.iter().zip(&aux.divergences).enumerate() {
            let sigma = spd_inverse(prec.get(m)).unwrap();
            assert!((cov - sigma).amax() < 1e-12);
            assert!(delta.amax() < 1e-10);
        }
    }

    #[test]
    fn realized_divergence_identity_holds() {
        let prec = target_precisions(&chain_spec(vec![6, 5], 3)).unwrap();
        for seed in 0..10 {
            let aux = make_auxiliary(
                &prec,
                DeltaSpec {
                    prob_zero: 0.75,
                    magnitude: 2.0,
                },
                &mut rng::stream(seed, 1, 0),
            )
            .unwrap();
            for (m, (cov, delta)) in aux.covariances.iter().zip(&aux.divergences).enumerate() {
                assert!(min_eigenvalue(cov) > 0.0);
                let p = cov.nrows();
                let resid = prec.get(m) * cov - delta - Matrix::identity(p, p);
                assert!(resid.amax() < 1e-12);
            }
        }
    }

    #[test]
    fn informative_divergences_are_much_smaller() {
        let graph = chain_spec(vec![10, 10], 5);
        let cfg = ScenarioConfig::scenario_two(graph, 50, 0, 0);
        let prec = target_precisions(&cfg.graph).unwrap();
        let h01 = cfg.base_magnitude();
        let h02 = 10.0 * max_column_support(&prec) as f64 * h01;
        let (mut small, mut large) = (0.0, 0.0);
        for seed in 0..100 {
            let draw = |prob_zero, magnitude| {
                make_auxiliary(&prec, DeltaSpec { prob_zero, magnitude }, &mut rng::stream(seed, 1, 0))
                    .unwrap()
                    .divergences
                    .iter()
                    .map(crate::tensor::one_inf_norm)
                    .fold(0.0, f64::max)
            };
            small += draw(INFORMATIVE_PROB_ZERO, h01);
            large += draw(NON_INFORMATIVE_PROB_ZERO, h02);
        }
        assert!(small * 10.0 < large, "informative {small} vs non-informative {large}");
    }

    #[test]
    fn scenario_one_layout() {
        let cfg = ScenarioConfig::scenario_one(chain_spec(vec![5, 4], 1), 20, 3, 11);
        let data = gen_scenario(&cfg).unwrap();
        assert_eq!(data.auxiliaries.len(), 3);
        assert_eq!(data.s_bar, 3);
        for aux in &data.auxiliaries {
            assert_eq!(aux.informative, Some(true));
            assert_eq!(aux.len(), 80);
        }
        assert_eq!(data.target.len(), 20);
        assert!(data.target.truth.as_ref().unwrap().is_normalized());
    }

    #[test]
    fn scenario_two_layout() {
        let cfg = ScenarioConfig::scenario_two(chain_spec(vec![5, 4], 1), 20, 0, 11);
        let data = gen_scenario(&cfg).unwrap();
        assert_eq!(data.auxiliaries.len(), 5);
        assert!(data.auxiliaries.iter().all(|a| a.informative == Some(false) && a.len() == 100));
        let cfg = ScenarioConfig::scenario_two(chain_spec(vec![5, 4], 1), 20, 2, 11);
        let flags: Vec<_> = gen_scenario(&cfg).unwrap().auxiliaries.iter().map(|a| a.informative).collect();
        assert_eq!(flags, [Some(true), Some(true), Some(false), Some(false), Some(false)]);
    }

    #[test]
    fn scenario_validation() {
        let mut cfg = ScenarioConfig::scenario_two(chain_spec(vec![5, 4], 1), 20, 6, 11);
        assert!(cfg.validate().is_err());
        cfg.card_a = 2;
        cfg.n = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn scenarios_are_deterministic() {
        let cfg = ScenarioConfig::scenario_two(chain_spec(vec![4, 3], 8), 10, 2, 99);
        let a = gen_scenario(&cfg).unwrap();
        let b = gen_scenario(&cfg).unwrap();
        assert_eq!(a.target.samples, b.target.samples);
        for (x, y) in a.auxiliaries.iter().zip(&b.auxiliaries) {
            assert_eq!(x.samples, y.samples);
            assert_eq!(x.divergences, y.divergences);
        }
    }
}
