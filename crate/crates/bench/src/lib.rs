//! Shared fixtures for the criterion benches: representative parameter
//! points at the rates used throughout the test suite, so every bench
//! measures the same work the library does in practice.

use catoptric::{C64, CavityParams, RunConfig};

/// Cavity rates of the reference experiment: strong coupling with a
/// moderately lossy atom, no transmission, on resonance.
pub fn reference_cavity() -> CavityParams {
    CavityParams {
        g: 7.8,
        gamma: 3.0,
        kappa_r: 2.3,
        kappa_t: 0.0,
        delta: 0.0,
    }
}

/// A run at the reference rates with a chosen size and pass count.
pub fn reference_run(alpha_sq: f64, m_cycles: u32, epsilon: f64) -> RunConfig {
    RunConfig {
        alpha: C64::new(alpha_sq.sqrt(), 0.0),
        m_cycles,
        epsilon,
        cavity: reference_cavity(),
        trace_enabled: false,
    }
}
