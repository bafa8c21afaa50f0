use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("1F1 lower parameter b = {0} is a non-positive integer")]
    KummerPole(Complex64),

    #[error("series did not converge after {0} terms")]
    NonConvergence(usize),

    #[error("quadrature did not converge: estimated relative error {estimate:e}")]
    Quadrature { estimate: f64 },

    #[error("parabolic basis vectors are undefined at the coordinate origin")]
    Origin,

    #[error("no maximum of the transverse factor found for u < {0}")]
    NoMaximum(f64),

    #[error("field vanishes everywhere in the calibration window")]
    ZeroField,

    #[error("empty sampling band: {0}")]
    EmptyBand(&'static str),

    #[error("unknown quantity kind `{0}`")]
    UnknownKind(String),

    #[error("step size underflow at t = {t} (position {position:?})")]
    StepUnderflow { t: f64, position: [f64; 3] },

    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },

    /// `line` and `column` are 1-based; 0 when the problem is not tied to
    /// one place in the text (a cross-field constraint).
    #[error("config error{}: {message}", position(*line, *column))]
    Config { line: usize, column: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status: 1 for configuration, usage and I/O problems,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_)
            | Error::EmptyBand(_)
            | Error::UnknownKind(_)
            | Error::Config { .. }
            | Error::Io(_) => 1,
            Error::KummerPole(_)
            | Error::NonConvergence(_)
            | Error::Quadrature { .. }
            | Error::Origin
            | Error::NoMaximum(_)
            | Error::ZeroField
            | Error::StepUnderflow { .. }
            | Error::NonFinite { .. } => 3,
        }
    }
}

fn position(line: usize, column: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!(" at line {line}, column {column}")
    }
}
