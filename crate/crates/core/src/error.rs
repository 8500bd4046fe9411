use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("w/h = {wh} is outside the model validity window [{min}, {max}]")]
    OutOfRange { wh: f64, min: f64, max: f64 },

    #[error("impedance {target} ohm is not reachable; achievable range is [{min}, {max}] ohm")]
    UnreachableImpedance { target: f64, min: f64, max: f64 },

    #[error("singular network: S-parameter denominator vanished")]
    SingularNetwork,

    #[error("frequency grid has no point in the {0}")]
    InsufficientGrid(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
