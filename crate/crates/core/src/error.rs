//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while configuring or evaluating a run.
///
/// Parameter problems name the offending field so callers can surface it
/// verbatim; the numeric diagnostics ([`Error::Truncation`],
/// [`Error::NegativeCattiness`]) signal that a result would be meaningless
/// rather than that an input was malformed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar field failed validation.
    #[error("invalid parameter `{name}`: {reason} (got {value})")]
    InvalidParam {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The input-output denominator vanished. Only reachable for a coupled
    /// cavity with g = gamma = delta = 0; the empty cavity takes a closed
    /// form that never divides by it.
    #[error("scattering denominator vanished (g, gamma and delta are all zero)")]
    DegenerateDenominator,

    /// Dimensionless ratios scale by 1/g^2 and need a nonzero coupling.
    #[error("dimensionless parameters are undefined for g = 0")]
    ZeroCoupling,

    /// A sweep grid was empty, non-finite or not strictly increasing.
    #[error("invalid sweep grid: {reason}")]
    InvalidGrid { reason: &'static str },

    /// The Fock cutoff left too much coherent-state probability outside the
    /// truncated basis for the evaluation to be trusted.
    #[error("Fock truncation at n_max = {n_max} discards tail mass {tail:.3e} (limit {limit:.0e})")]
    Truncation { n_max: usize, tail: f64, limit: f64 },

    /// The cattiness witness came out negative beyond the roundoff guard.
    #[error("cattiness {value:.6e} is negative beyond the {guard:.0e} guard")]
    NegativeCattiness { value: f64, guard: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
