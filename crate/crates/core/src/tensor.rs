//! Dense tensors and the symmetric-matrix algebra used by the estimators.
//!
//! Tensors are stored column-major (first index fastest). The mode-`m`
//! unfolding follows the Kolda–Bader column ordering, so that for
//! `vec(X)` = the raw data buffer,
//!
//! `vec(X ×₁ A₁ ⋯ ×_M A_M) = (A_M ⊗ ⋯ ⊗ A₁) · vec(X)`.
//!
//! Mode indices are 0-based throughout the library.

use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;

/// Relative tolerance for symmetry checks on covariance / precision inputs.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Eigenvalues above `-EIGEN_CLAMP` are treated as round-off and clamped to 0.
pub const EIGEN_CLAMP: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    dims: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(dims: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dimension(format!(
                "tensor dims must be non-empty and positive, got {dims:?}"
            )));
        }
        let len: usize = dims.iter().product();
        if len != data.len() {
            return Err(Error::Dimension(format!(
                "dims {dims:?} need {len} values, got {}",
                data.len()
            )));
        }
        Ok(Self { dims, data })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let len = dims.iter().product();
        Self::new(dims, vec![0.0; len])
    }

    /// Views a matrix as an order-2 tensor (nalgebra is already column-major).
    pub fn from_matrix(mat: &Matrix) -> Self {
        Self {
            dims: vec![mat.nrows(), mat.ncols()],
            data: mat.as_slice().to_vec(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// Total number of entries, `p = Π p_m`.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Column-major data, which is also `vec(X)`.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        debug_assert_eq!(index.len(), self.dims.len());
        let mut offset = 0;
        let mut stride = 1;
        for (&i, &d) in index.iter().zip(&self.dims) {
            debug_assert!(i < d);
            offset += i * stride;
            stride *= d;
        }
        self.data[offset]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.order() {
            return Err(Error::ModeOutOfRange {
                mode,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// (product of dims before `mode`, dims[mode], product of dims after `mode`)
    fn split_at_mode(dims: &[usize], mode: usize) -> (usize, usize, usize) {
        let left = dims[..mode].iter().product();
        let right = dims[mode + 1..].iter().product();
        (left, dims[mode], right)
    }

    /// Mode-`mode` matricization, shape `p_m × (p / p_m)`.
    pub fn unfold(&self, mode: usize) -> Result<Matrix> {
        self.check_mode(mode)?;
        let (left, pm, right) = Self::split_at_mode(&self.dims, mode);
        let mut out = Matrix::zeros(pm, left * right);
        for b in 0..right {
            for i in 0..pm {
                let src = left * (i + pm * b);
                for a in 0..left {
                    out[(i, a + left * b)] = self.data[src + a];
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`Tensor::unfold`].
    pub fn fold(mat: &Matrix, mode: usize, dims: &[usize]) -> Result<Self> {
        if mode >= dims.len() {
            return Err(Error::ModeOutOfRange {
                mode,
                order: dims.len(),
            });
        }
        let (left, pm, right) = Self::split_at_mode(dims, mode);
        if mat.nrows() != pm || mat.ncols() != left * right {
            return Err(Error::Dimension(format!(
                "cannot fold a {}x{} matrix into dims {dims:?} along mode {mode}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let mut data = vec![0.0; left * pm * right];
        for b in 0..right {
            for i in 0..pm {
                let dst = left * (i + pm * b);
                for a in 0..left {
                    data[dst + a] = mat[(i, a + left * b)];
                }
            }
        }
        Self::new(dims.to_vec(), data)
    }

    /// `X ×_mode A` for `A` of shape `d × p_mode`.
    pub fn mode_product(&self, mode: usize, a: &Matrix) -> Result<Self> {
        self.check_mode(mode)?;
        let (left, pm, right) = Self::split_at_mode(&self.dims, mode);
        if a.ncols() != pm {
            return Err(Error::Dimension(format!(
                "mode-{mode} product needs {pm} columns, matrix has {}",
                a.ncols()
            )));
        }
        let d = a.nrows();
        let mut dims = self.dims.clone();
        dims[mode] = d;
        let mut out = vec![0.0; left * d * right];
        for b in 0..right {
            for i in 0..pm {
                let src = &self.data[left * (i + pm * b)..left * (i + pm * b) + left];
                for j in 0..d {
                    let aji = a[(j, i)];
                    if aji == 0.0 {
                        continue;
                    }
                    let dst = &mut out[left * (j + d * b)..left * (j + d * b) + left];
                    for (o, x) in dst.iter_mut().zip(src) {
                        *o += aji * x;
                    }
                }
            }
        }
        Self::new(dims, out)
    }

    /// Applies `mats[m]` along every mode `m` where it is `Some`.
    pub fn multi_mode_product(&self, mats: &[Option<&Matrix>]) -> Result<Self> {
        if mats.len() != self.order() {
            return Err(Error::Dimension(format!(
                "expected {} mode matrices, got {}",
                self.order(),
                mats.len()
            )));
        }
        let mut out = self.clone();
        for (m, a) in mats.iter().enumerate() {
            if let Some(a) = a {
                out = out.mode_product(m, a)?;
            }
        }
        Ok(out)
    }
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

/// `mats[M-1] ⊗ ⋯ ⊗ mats[0]`, the ordering that matches column-major `vec`.
pub fn kron_reversed(mats: &[Matrix]) -> Matrix {
    let mut iter = mats.iter().rev();
    let first = iter.next().cloned().unwrap_or_else(|| Matrix::identity(1, 1));
    iter.fold(first, |acc, m| kron(&acc, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixNorms {
    pub frobenius: f64,
    pub max_abs: f64,
    /// Largest column ℓ₁ norm.
    pub one_inf: f64,
    /// Sum of absolute off-diagonal entries.
    pub one_off: f64,
}

pub fn norms(a: &Matrix) -> MatrixNorms {
    let mut one_off = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            if i != j {
                one_off += a[(i, j)].abs();
            }
        }
    }
    MatrixNorms {
        frobenius: a.norm(),
        max_abs: a.amax(),
        one_inf: one_inf_norm(a),
        one_off,
    }
}

pub fn one_inf_norm(a: &Matrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_asymmetry(a: &Matrix) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..j {
            worst = worst.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    worst
}

pub fn check_symmetric(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let asym = max_asymmetry(a);
    if asym > SYMMETRY_TOL * a.amax().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

/// `(A + Aᵀ) / 2`.
pub fn symmetrize(a: &Matrix) -> Matrix {
    (a + a.transpose()) * 0.5
}

pub fn min_eigenvalue(a: &Matrix) -> f64 {
    SymmetricEigen::new(symmetrize(a))
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Symmetric square root `U diag(√λ) Uᵀ` of a symmetric PSD matrix.
pub fn sym_sqrt(a: &Matrix) -> Result<Matrix> {
    check_symmetric(a)?;
    let eig = SymmetricEigen::new(symmetrize(a));
    let tol = EIGEN_CLAMP * a.amax().max(1.0);
    let mut roots = eig.eigenvalues.clone();
    for l in roots.iter_mut() {
        if *l < -tol {
            return Err(Error::NotPsd(*l));
        }
        *l = l.max(0.0).sqrt();
    }
    let u = &eig.eigenvectors;
    Ok(symmetrize(&(u * Matrix::from_diagonal(&roots) * u.transpose())))
}

pub fn spd_inverse(a: &Matrix) -> Result<Matrix> {
    let chol = Cholesky::new(symmetrize(a)).ok_or(Error::NotPd)?;
    Ok(symmetrize(&chol.inverse()))
}

pub fn log_det_spd(a: &Matrix) -> Result<f64> {
    let chol = Cholesky::new(symmetrize(a)).ok_or(Error::NotPd)?;
    Ok(2.0 * chol.l().diagonal().iter().map(|x| x.ln()).sum::<f64>())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixRole {
    Covariance,
    Precision,
    Divergence,
    Generic,
}

/// A square matrix attached to one mode, tagged with what it represents.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMatrix {
    role: MatrixRole,
    entries: Matrix,
}

impl ModeMatrix {
    pub fn new(role: MatrixRole, entries: Matrix) -> Result<Self> {
        match role {
            MatrixRole::Covariance | MatrixRole::Precision => check_symmetric(&entries)?,
            MatrixRole::Divergence | MatrixRole::Generic => {
                if !entries.is_square() {
                    return Err(Error::Dimension(format!(
                        "mode matrix must be square, got {}x{}",
                        entries.nrows(),
                        entries.ncols()
                    )));
                }
            }
        }
        Ok(Self { role, entries })
    }

    pub fn role(&self) -> MatrixRole {
        self.role
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_entries(self) -> Matrix {
        self.entries
    }
}

/// One precision matrix per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionSet {
    mats: Vec<Matrix>,
    normalized: bool,
}

impl PrecisionSet {
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::Dimension("precision set needs at least one mode".into()));
        }
        for m in &mats {
            check_symmetric(m)?;
        }
        let normalized = mats.iter().all(|m| (m.norm() - 1.0).abs() < 1e-8);
        Ok(Self { mats, normalized })
    }

    /// Rescales every member to unit Frobenius norm.
    pub fn normalized(mats: Vec<Matrix>) -> Result<Self> {
        let mats = mats
            .into_iter()
            .map(|m| {
                let f = m.norm();
                if f > 0.0 {
                    m / f
                } else {
                    m
                }
            })
            .collect();
        Self::new(mats)
    }

    /// `I / ‖I‖_F` on every mode.
    pub fn identity(dims: &[usize]) -> Self {
        let mats = dims
            .iter()
            .map(|&d| Matrix::identity(d, d) / (d as f64).sqrt())
            .collect();
        Self {
            mats,
            normalized: true,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn dims(&self) -> Vec<usize> {
        self.mats.iter().map(|m| m.nrows()).collect()
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn get(&self, mode: usize) -> &Matrix {
        &self.mats[mode]
    }

    pub fn as_slice(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn into_inner(self) -> Vec<Matrix> {
        self.mats
    }

    pub fn to_normalized(&self) -> Result<Self> {
        Self::normalized(self.mats.clone())
    }

    /// Inverse of every member (the mode covariances).
    pub fn covariances(&self) -> Result<Vec<Matrix>> {
        self.mats.iter().map(spd_inverse).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
        (a - b).amax()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
        Matrix::from_fn(r, c, |_, _| rng.random_range(-1.0..1.0))
    }

    fn random_spd(rng: &mut ChaCha8Rng, p: usize) -> Matrix {
        let a = random_matrix(rng, p, p);
        &a * a.transpose() + Matrix::identity(p, p) * 0.5
    }

    fn random_tensor(rng: &mut ChaCha8Rng, dims: &[usize]) -> Tensor {
        let len = dims.iter().product();
        Tensor::new(dims.to_vec(), (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn unfold_matrix_cases() {
        let m = Matrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let t = Tensor::from_matrix(&m);
        assert_eq!(t.unfold(0).unwrap(), m);
        assert_eq!(t.unfold(1).unwrap(), m.transpose());
    }

    #[test]
    fn unfold_cube_mode_one() {
        let t = Tensor::new(vec![2, 2, 2], (1..=8).map(f64::from).collect()).unwrap();
        let expected = Matrix::from_row_slice(2, 4, &[1.0, 3.0, 5.0, 7.0, 2.0, 4.0, 6.0, 8.0]);
        assert_eq!(t.unfold(0).unwrap(), expected);
    }

    #[test]
    fn unfold_matches_index_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let dims = [3, 2, 4];
        let t = random_tensor(&mut rng, &dims);
        for m in 0..3 {
            let u = t.unfold(m).unwrap();
            for i0 in 0..3 {
                for i1 in 0..2 {
                    for i2 in 0..4 {
                        let idx = [i0, i1, i2];
                        // j = Σ_{k≠m} i_k J_k with J_k = Π_{k'<k, k'≠m} p_k'
                        let mut j = 0;
                        let mut stride = 1;
                        for k in 0..3 {
                            if k != m {
                                j += idx[k] * stride;
                                stride *= dims[k];
                            }
                        }
                        assert_eq!(u[(idx[m], j)], t.get(&idx));
                    }
                }
            }
        }
    }

    #[test]
    fn mode_out_of_range() {
        let t = Tensor::zeros(vec![2, 2]).unwrap();
        assert!(matches!(t.unfold(2), Err(Error::ModeOutOfRange { .. })));
        assert!(matches!(
            t.mode_product(0, &Matrix::identity(3, 3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn invalid_tensor_shapes() {
        assert!(Tensor::new(vec![2, 3], vec![0.0; 5]).is_err());
        assert!(Tensor::new(vec![], vec![]).is_err());
        assert!(Tensor::new(vec![2, 0], vec![]).is_err());
    }

    #[test]
    fn mode_product_identity_and_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = random_tensor(&mut rng, &[3, 4, 2]);
        assert_eq!(t.mode_product(1, &Matrix::identity(4, 4)).unwrap(), t);

        let v = random_tensor(&mut rng, &[4]);
        let a = random_matrix(&mut rng, 3, 4);
        let av = &a * nalgebra::DVector::from_column_slice(v.data());
        let out = v.mode_product(0, &a).unwrap();
        assert_eq!(out.dims(), &[3]);
        for (x, y) in out.data().iter().zip(av.iter()) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn sequential_products_on_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = random_matrix(&mut rng, 3, 4);
        let a = random_matrix(&mut rng, 5, 3);
        let b = random_matrix(&mut rng, 2, 4);
        let t = Tensor::from_matrix(&x);
        let out = t.mode_product(0, &a).unwrap().mode_product(1, &b).unwrap();
        let direct = &a * &x * b.transpose();
        assert_eq!(out.dims(), &[5, 2]);
        assert!(max_diff(&out.unfold(0).unwrap(), &direct) < 1e-12);
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            kron(&Matrix::identity(2, 2), &Matrix::identity(3, 3)),
            Matrix::identity(6, 6)
        );
        let a = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0]));
        let b = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 4.0]));
        let expected = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 4.0, 6.0, 8.0]));
        assert_eq!(kron(&a, &b), expected);
        let k = kron(&Matrix::zeros(2, 3), &Matrix::zeros(4, 5));
        assert_eq!(k.shape(), (8, 15));
    }

    #[test]
    fn sym_sqrt_examples() {
        assert!(max_diff(&sym_sqrt(&Matrix::identity(3, 3)).unwrap(), &Matrix::identity(3, 3)) < 1e-14);
        let d = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 9.0]));
        let r = sym_sqrt(&d).unwrap();
        let expected = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 3.0]));
        assert!(max_diff(&r, &expected) < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [2, 5, 8] {
            let a = random_spd(&mut rng, p);
            let b = sym_sqrt(&a).unwrap();
            assert!((&b * &b - &a).norm() / a.norm() < 1e-10);
            assert!((&a * &b - &b * &a).norm() < 1e-9 * a.norm() * b.norm());
            assert_eq!(max_asymmetry(&b), 0.0);
        }
    }

    #[test]
    fn sym_sqrt_rejects_bad_input() {
        let asym = Matrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(sym_sqrt(&asym), Err(Error::NotSymmetric(_))));
        let indefinite = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -0.1]);
        assert!(matches!(sym_sqrt(&indefinite), Err(Error::NotPsd(_))));
        // round-off below zero is clamped
        let nearly = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1e-13]);
        assert!(sym_sqrt(&nearly).is_ok());
    }

    #[test]
    fn norm_examples() {
        let n = norms(&Matrix::identity(3, 3));
        assert!((n.frobenius - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!((n.max_abs, n.one_inf, n.one_off), (1.0, 1.0, 0.0));

        let n = norms(&Matrix::from_row_slice(2, 2, &[1.0, -2.0, 3.0, 4.0]));
        assert_eq!(n.one_inf, 6.0);
        assert_eq!(n.one_off, 5.0);
        assert_eq!(n.max_abs, 4.0);

        let n = norms(&Matrix::zeros(3, 3));
        assert_eq!((n.frobenius, n.max_abs, n.one_inf, n.one_off), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn precision_set_normalization() {
        let set = PrecisionSet::normalized(vec![Matrix::identity(3, 3) * 4.0, Matrix::identity(2, 2)]).unwrap();
        assert!(set.is_normalized());
        for m in set.as_slice() {
            assert!((m.norm() - 1.0).abs() < 1e-12);
        }
        assert!(PrecisionSet::new(vec![Matrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])]).is_err());
        assert!(ModeMatrix::new(MatrixRole::Divergence, Matrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).is_ok());
        assert!(ModeMatrix::new(MatrixRole::Covariance, Matrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).is_err());
    }

    #[test]
    fn log_det_and_inverse() {
        let a = Matrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        assert!((log_det_spd(&a).unwrap() - 3f64.ln()).abs() < 1e-14);
        assert!(max_diff(&(spd_inverse(&a).unwrap() * &a), &Matrix::identity(2, 2)) < 1e-14);
        assert!(spd_inverse(&Matrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0])).is_err());
    }

    fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(1usize..5, 1..=4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn unfold_fold_round_trip(dims in dims_strategy(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_tensor(&mut rng, &dims);
            for m in 0..dims.len() {
                let back = Tensor::fold(&t.unfold(m).unwrap(), m, &dims).unwrap();
                prop_assert_eq!(&back, &t);
            }
        }

        #[test]
        fn unfold_commutes_with_mode_product(dims in dims_strategy(), d in 1usize..5, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_tensor(&mut rng, &dims);
            for m in 0..dims.len() {
                let a = random_matrix(&mut rng, d, dims[m]);
                let lhs = t.mode_product(m, &a).unwrap().unfold(m).unwrap();
                let rhs = &a * t.unfold(m).unwrap();
                prop_assert!(max_diff(&lhs, &rhs) < 1e-12);
            }
        }

        #[test]
        fn vec_matches_kronecker(order in 2usize..=3, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dims: Vec<usize> = (0..order).map(|_| rng.random_range(1..4)).collect();
            let out_dims: Vec<usize> = (0..order).map(|_| rng.random_range(1..4)).collect();
            let t = random_tensor(&mut rng, &dims);
            let mats: Vec<Matrix> = (0..order).map(|m| random_matrix(&mut rng, out_dims[m], dims[m])).collect();
            let refs: Vec<Option<&Matrix>> = mats.iter().map(Some).collect();
            let lhs = t.multi_mode_product(&refs).unwrap();
            let rhs = kron_reversed(&mats) * nalgebra::DVector::from_column_slice(t.data());
            for (x, y) in lhs.data().iter().zip(rhs.iter()) {
                prop_assert!((x - y).abs() < 1e-10);
            }
        }
    }
}
