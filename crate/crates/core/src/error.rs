use thiserror::Error;

/// Errors produced by the propagation model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EitError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// `Re(xi z)` exceeded the representable range of `cosh`/`sinh`.
    #[error("transfer overflow: Re(xi z) = {re_xi_z:.3e} exceeds {limit}")]
    Overflow { re_xi_z: f64, limit: f64 },

    #[error("at two-photon detuning {delta:.6e} rad/s: {source}")]
    AtDetuning {
        delta: f64,
        #[source]
        source: Box<EitError>,
    },

    #[error("time window too small: {0}")]
    WindowTooSmall(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, EitError>;

pub(crate) fn check(cond: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if cond && value.is_finite() {
        Ok(())
    } else {
        Err(EitError::InvalidParameter { name, value, reason })
    }
}
