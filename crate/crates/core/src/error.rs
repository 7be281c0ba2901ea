use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point outside symbol domain: {coordinate} = {value} not in [{lo}, {hi}]")]
    Domain {
        coordinate: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("capability error: {0}")]
    Capability(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("energy {energy} is too close to a critical value (min |grad H| = {min_grad:e})")]
    SingularShell { energy: f64, min_grad: f64 },
    #[error("insufficient data: {usable} usable points, need at least {required}")]
    InsufficientData { usable: usize, required: usize },
    #[error("phase is not single-valued on the circle: winding defect {defect:e} (phase jump {jump} is not a multiple of 2*pi*hbar)")]
    Winding { jump: f64, defect: f64 },
    #[error("mode ({m1}, {m2}) is outside the lattice range |m| <= {limit}")]
    Aliasing { m1: i64, m2: i64, limit: i64 },
    #[error("integer overflow in exact arithmetic: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
