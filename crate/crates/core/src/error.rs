use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude count {got} does not match product of dims {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("every subsystem dimension must be at least 2, got {0:?}")]
    InvalidDims(Vec<usize>),
    #[error("operation needs a tripartite state, got {0} subsystems")]
    NotTripartite(usize),
    #[error("state norm {norm:e} is too close to zero")]
    ZeroNorm { norm: f64 },
    #[error("state is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimsMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("coefficients violate |a1|^2 + |a2|^2 = 1 (sum {sum})")]
    CoefficientNorm { sum: f64 },
    #[error("generator index pair ({i}, {j}) invalid for dimension {dim}")]
    InvalidGeneratorPair { i: usize, j: usize, dim: usize },
    #[error("generator dimension must be at least 2, got {0}")]
    GeneratorDim(usize),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix of size {size} does not match subsystem dims {dims:?}")]
    MatrixDims { size: usize, dims: Vec<usize> },
    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemIndex { index: usize, count: usize },
    #[error("dense oracle capped at total dimension {cap}, state has {dim}")]
    OracleTooLarge { dim: usize, cap: usize },
    #[error("concurrence paths disagree: minors {generator} vs purity {purity}")]
    ConcurrenceMismatch { generator: f64, purity: f64 },
    #[error("lemma inputs must be strictly positive")]
    NonPositive,
    #[error("mixing weight p = {0} outside [0, 1]")]
    WeightOutOfRange(f64),
    #[error("empty grid")]
    EmptyGrid,
    #[error("invalid named state {0:?}")]
    NamedState(String),
    #[error("state file: {0}")]
    StateFile(String),
    #[error("curve fit failed: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
