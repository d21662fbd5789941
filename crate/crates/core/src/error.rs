use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} generator pairs")]
    DimensionMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range 1..={generators}")]
    GeneratorOutOfRange { index: usize, generators: usize },

    #[error("{n_pairs} generator pairs exceeds the supported maximum of {max}")]
    TooManyPairs { n_pairs: usize, max: usize },

    #[error("pair count n = {n} outside supported range {min}..={max}")]
    PairCountOutOfRange { n: usize, min: usize, max: usize },

    #[error("coupling strength must be a positive finite number, got {0}")]
    InvalidCoupling(f64),

    #[error("decay rate must be a positive finite number, got {0}")]
    InvalidDecay(f64),

    #[error("binding energy must be a positive finite number, got {0}")]
    InvalidEnergy(f64),

    #[error("super-dimension M = {super_dimension} > 1: the bound-state energy is only defined for M <= 1")]
    UnsupportedDimension { super_dimension: f64 },

    #[error("radial integral diverges for super-dimension M = {super_dimension} (requires M <= 1)")]
    Divergent { super_dimension: f64 },

    #[error("wave functions are only available for one bosonic dimension, got m = {m}")]
    RequiresOneBoson { m: u32 },

    #[error("quadrature did not reach tolerance {target:e}: estimated error {achieved:e} after {intervals} intervals")]
    QuadratureFailed { target: f64, achieved: f64, intervals: usize },

    #[error("QR iteration did not converge within {iterations} iterations")]
    EigenNoConvergence { iterations: usize },

    #[error("wave function has zero norm")]
    ZeroNorm,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
