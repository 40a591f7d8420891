use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: symmetry violation {violation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { violation: f64, tolerance: f64 },

    #[error("matrix is not anti-Hermitian: violation {violation:.3e} exceeds {tolerance:.3e}")]
    NotAntiHermitian { violation: f64, tolerance: f64 },

    #[error("matrix is not unitary: |U^dag U - I|_F = {violation:.3e} exceeds {tolerance:.3e}")]
    NotUnitary { violation: f64, tolerance: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("decoupling residual {residual:.3e} exceeds {tolerance:.3e}")]
    DecouplingResidual { residual: f64, tolerance: f64 },

    #[error("closed-form star transform requires uniform couplings")]
    NonuniformCouplings,

    #[error("operation requires a periodic lattice")]
    OpenBoundary,

    #[error("spin count {m} exceeds the dense-matrix guard of {max}")]
    TooManySpins { m: usize, max: usize },

    #[error("initial state has support {support:.3e} on ancilla sites")]
    AncillaSupport { support: f64 },

    #[error(
        "target coupling {target:.6e} outside achievable range [{lo:.6e}, {hi:.6e}] (angular units)"
    )]
    TargetOutOfRange { target: f64, lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
