use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial degree {degree} exceeds the configured maximum {max}")]
    DegreeOverflow { degree: usize, max: usize },

    #[error("quadrature order {order} is not supported (must be 1..={max})")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("parameter `{name}` must be strictly positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("cutoff mismatch: {left:?} vs {right:?}")]
    CutoffMismatch { left: [usize; 3], right: [usize; 3] },

    #[error("state truncation too lossy: tail mass {tail_mass:e} exceeds {limit:e}")]
    Truncation { tail_mass: f64, limit: f64 },

    #[error("basis index {index:?} lies outside cutoff {cutoff:?}")]
    IndexOutOfRange { index: [usize; 3], cutoff: [usize; 3] },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
