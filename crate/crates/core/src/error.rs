use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} is {value}, above the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("lattice is not contained in the reference lattice")]
    NotASublattice,
    #[error("lattice index {index} is not a power of {p}")]
    IndexNotPPower { index: String, p: u64 },
    #[error("tensor power is still faithful at r = {r_max}")]
    ThresholdBeyondLimit { r_max: usize },
    #[error("image is not divisible by {p}^{exponent}")]
    DivisibilityFailure { p: u64, exponent: u32 },
    #[error("element acts as zero")]
    ZeroImage,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_limit(what: &'static str, value: u128, limit: u128) -> Result<()> {
    if value > limit {
        Err(Error::SizeLimit { what, value, limit })
    } else {
        Ok(())
    }
}
