//! Finite element solver for stochastic time-fractional diffusion on the
//! unit interval, driven by fractional Gaussian noise.
//!
//! The fully discrete scheme combines backward Euler convolution quadrature
//! in time with piecewise linear finite elements in space. Supporting
//! modules provide exact fractional Gaussian noise sampling ([`fgn`]), the
//! noise expansion and its finite element loads ([`noise`]), semi-analytic
//! references for validation ([`oracle`], [`mittag_leffler`]), and Monte
//! Carlo convergence studies ([`study`]).

pub mod cq;
pub mod fem;
pub mod fgn;
pub mod mittag_leffler;
pub mod noise;
pub mod oracle;
pub mod stepper;
pub mod streams;
pub mod study;

pub use cq::{bdf1_weights, predicted_spatial_rate, predicted_temporal_rate, CqWeights};
pub use fgn::{
    circulant_spectrum, embedding_transform, fgn_autocovariance, sample_fgn, FgnParams,
    IncrementSequence,
};
pub use fem::{
    assemble_mass, assemble_stiffness, l2_norm, l2_project, refine_interpolate,
    solve_tridiagonal, FemFunction, Mesh, TridiagonalMatrix,
};
pub use mittag_leffler::mittag_leffler;
pub use noise::{
    eigenpair, load_increment, mode_load_coefficients, sample_trajectory, FgnTrajectory,
    NoiseSpec,
};
pub use oracle::{
    exact_deterministic, expansion_load, l2_distance, parabola_expansion, parabola_load,
    semidiscrete_ml_reference, spectral_deterministic_reference,
    spectral_stochastic_reference, SineExpansion,
};
pub use stepper::{run, step_matrix, SolutionHistory, SolverConfig, Stepper};
pub use study::{
    coarsen_increments, deterministic_study, rate, run_study, spatial_study, temporal_study,
    InitialData, RateRow, RateTable, StudyConfig, StudyKind,
};

/// Errors produced by solver construction and execution.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter violated its domain (value and constraint in the message).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The circulant embedding produced an eigenvalue too negative to be
    /// roundoff; the covariance cannot be sampled exactly at this size.
    #[error("circulant embedding failed: eigenvalue {eigenvalue:.3e} below -{tolerance:.3e}")]
    EmbeddingFailure { eigenvalue: f64, tolerance: f64 },
    /// A tridiagonal factorization or solve hit a zero or unstable pivot.
    #[error("tridiagonal solve failed: {0}")]
    SingularSystem(String),
    /// The solve finished but its residual exceeded the contract tolerance.
    #[error("residual {residual:.3e} exceeds {bound:.3e}")]
    ResidualTooLarge { residual: f64, bound: f64 },
    /// An operation received structurally incompatible inputs.
    #[error("incompatible input: {0}")]
    Incompatible(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
