//! Sparse precision-matrix estimation for tensor Gaussian graphical models,
//! with transfer learning from heterogeneous auxiliary domains.
//!
//! The crate is organized bottom-up:
//!
//! - [`tensor`]: dense column-major tensors, unfolding, mode products and the
//!   symmetric-matrix helpers used everywhere else.
//! - [`io`]: the `TGT1` binary tensor format.
//! - [`sampling`]: chain / nearest-neighbor graphs, tensor-normal sampling and
//!   the two multi-domain simulation scenarios.
//! - [`tlasso`]: single-domain separable estimation (per-mode graphical lasso
//!   inside an alternating outer loop).
//! - [`transfer`]: divergence estimation, transfer precision estimation,
//!   auxiliary weights and the column-selection safeguard.
//! - [`metrics`]: estimation error, support recovery, prediction error and the
//!   cross-validation protocol.
//! - [`experiment`]: replication driver used by the CLI and the acceptance suite.

pub mod error;
pub mod experiment;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod sampling;
pub mod tensor;
pub mod tlasso;
pub mod transfer;

pub use error::{Error, Result};
pub use tensor::{Matrix, ModeMatrix, PrecisionSet, Tensor};
