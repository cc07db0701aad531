use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid precision configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported zeta argument: {0}")]
    UnsupportedZetaArgument(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid characteristic: {0}")]
    InvalidCharacteristic(String),

    #[error("unsupported genus {0} (only 1 and 2 are implemented)")]
    UnsupportedGenus(usize),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("degree mismatch: form {form} has degree {expected}, point has degree {found}")]
    DegreeMismatch {
        form: String,
        expected: u8,
        found: u8,
    },

    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),

    #[error("sign calibration failed: {0}")]
    SignCalibration(String),

    #[error("grid too small: need at least {required}, got {grid}")]
    GridTooSmall { grid: usize, required: usize },

    #[error("form vanishes on the contour around {point} even after shrinking to radius {radius}")]
    ZeroOnContour { point: String, radius: f64 },

    #[error("reduction did not terminate within {steps} steps; trace: {}", trace.join(" | "))]
    ReductionDiverged { steps: usize, trace: Vec<String> },

    #[error(
        "quadrature did not converge: error {error:.3e} > tolerance {tolerance:.3e}; worst cell [{:.6}, {:.6}] with error {:.3e}",
        worst_cell.0, worst_cell.1, worst_cell.2
    )]
    QuadratureDiverged {
        error: f64,
        tolerance: f64,
        worst_cell: (f64, f64, f64),
    },

    #[error("unsupported divisor: {0}")]
    UnsupportedDivisor(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("embedding not defined at 2")]
    PrimeTwo,

    #[error("{0} is not an odd prime <= 101")]
    BadPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),
}
