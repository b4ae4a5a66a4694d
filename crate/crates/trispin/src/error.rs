//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, validation, and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("spin site {site} out of range 1..={n_spins}")]
    SiteOutOfRange { site: usize, n_spins: usize },

    #[error("{n_spins} spins exceeds the dense-matrix budget of {max} spins")]
    TooManySpins { n_spins: usize, max: usize },

    #[error("matrix is not Hermitian (max |A - A^dag| = {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },

    #[error("state vector norm {norm} deviates from 1 beyond tolerance")]
    NotNormalized { norm: f64 },

    #[error("density matrix invalid: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("invalid Hamiltonian parameters: {reason}")]
    InvalidParams { reason: String },

    #[error("invalid schedule: {reason}")]
    InvalidSchedule { reason: String },

    #[error("schedule step {m} out of range 0..={max}")]
    StepOutOfRange { m: usize, max: usize },

    #[error("non-physical decoherence parameters: {reason}")]
    NonPhysicalDecoherence { reason: String },

    #[error("initial Hamiltonian has a {degeneracy}-fold degenerate ground state; adiabatic scan requires a unique one")]
    DegenerateInitialState { degeneracy: usize },

    #[error("per-substep decoherence requires Trotter evolution with substeps")]
    NoiseGranularityMismatch,

    #[error("scan range is empty or inverted: [{lo}, {hi}]")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("operation requires {expected} spins, got {got}")]
    WrongSpinCount { expected: usize, got: usize },

    #[error("witness offset {offset} outside (0, 1)")]
    InvalidWitnessOffset { offset: f64 },

    #[error("coupling {name} is zero but required as a divisor")]
    ZeroCouplingDivisor { name: &'static str },

    #[error("series lengths differ: {values} values vs {norms} norms")]
    SeriesLengthMismatch { values: usize, norms: usize },

    #[error("signal norm at step {step} is non-positive ({value})")]
    NonPositiveNorm { step: f64, value: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("named case {case} pins {key}; use `case = custom` to override it")]
    CaseOverrideConflict { case: char, key: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
