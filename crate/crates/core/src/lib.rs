//! Deterministic coherent-state model of optical cat generation by
//! repeated reflection off a single-atom cavity.
//!
//! A pulse bounces between two switching mirrors; on every pass one zone of
//! the folded mode meets a one-sided cavity whose atom sits in a
//! superposition of a coupled and an uncoupled state. The uncoupled branch
//! reflects with a phase flip, the coupled branch without one, so the two
//! branches of the joint state walk apart in phase space while transmission,
//! atomic scattering and mirror absorption leak which-path information into
//! the environment. Everything stays Gaussian-coherent, which keeps the
//! model exact: each branch is a list of coherent amplitudes and the
//! decoherence between branches is a product of loss-mode overlaps this
//! crate tracks in the log domain.
//!
//! Layout:
//! - [`coherent`]: two-zone amplitude pairs, splitter action, overlap
//!   accumulation.
//! - [`cavity`]: reflection/transmission/scattering coefficients of the
//!   atom-cavity mirror.
//! - [`engine`]: the pass-by-pass protocol and its loss ledger, plus the
//!   simpler splitter-chain and single-bounce references.
//! - [`metrics`]: cat fidelity, the cattiness witness, and an independent
//!   number-basis evaluation of the witness.
//! - [`experiments`]: sweeps, mirror-loss tolerance searches, delay-line
//!   geometry.
//! - [`validation`]: the deterministic self-check suite.
//!
//! Rates (`g`, `gamma`, `kappa_r`, `kappa_t`, `delta`) are all in the same
//! angular-frequency unit; only their ratios matter.

pub mod cavity;
pub mod coherent;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod metrics;
pub mod validation;

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;

pub use cavity::{scatter_coeffs, AtomState, CavityParams, ScatterCoeffs};
pub use coherent::{
    coherent_overlap, log_coherent_overlap, phase_shift, ModePair, OverlapAccumulator,
};
pub use engine::{
    run_chain, run_multiple_reflection, run_single_reflection, ChainConfig, ChainOutcome,
    CycleSnapshot, LossChannel, LossEvent, ObjectState, RunConfig, RunOutcome,
};
pub use error::{Error, Result};
pub use experiments::{
    build_grid, configure, find_epsilon_tolerance, geometry_estimate, run_and_report, sweep,
    GeometryEstimate, SearchMethod, SingleReflectionRow, SweepAxis, SweepRow, SweepSpec,
    ToleranceMetric, ToleranceResult, EPSILON_SEARCH_MAX, SPEED_OF_LIGHT,
};
pub use metrics::{
    cattiness, cattiness_floored, cattiness_fock_oracle, cattiness_fock_oracle_flipped,
    coherent_fock_vector, effective_fidelity, fidelity, metrics_report, FockTruncation,
    MetricsReport,
};
pub use validation::{run_all, CheckResult, FaultInjection};
