//! The reflection protocols.
//!
//! Three simulators share the coherent-amplitude algebra:
//!
//! * [`run_chain`]: the lossless chain of N identical splitters with a
//!   pass/block/phase object between consecutive ones, the textbook
//!   interaction-free-measurement ladder.
//! * [`run_multiple_reflection`]: the folded two-zone interferometer that
//!   bounces the pulse M times off a pair of cavities, one empty and one
//!   holding the atom. Both atomic branches evolve side by side and every
//!   amplitude leaking out (cavity transmission, atomic scattering, imperfect
//!   steering optics) is recorded in a per-cycle ledger.
//! * [`run_single_reflection`]: the one-bounce baseline the multi-cycle
//!   scheme is compared against.
//!
//! The branches never mix: the atom state is a spectator label, so each
//! branch is a classical linear-optics calculation and entanglement enters
//! only through overlaps computed downstream.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::cavity::{scatter_coeffs, AtomState, CavityParams};
use crate::coherent::{log_coherent_overlap, ModePair, OverlapAccumulator};
use crate::error::{Error, Result};

/// What sits in Zone 1 of the splitter chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectState {
    /// Nothing; the rotations compound freely.
    Pass,
    /// A perfect absorber that empties Zone 1 after every splitter but the
    /// last.
    Block,
    /// A pi phase plate on Zone 1 between splitters.
    Phase,
}

/// Lossless chain of `n_stages` identical splitters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainConfig {
    /// Input coherent amplitude (enters Zone 0).
    pub alpha: C64,
    /// Number of splitters N.
    pub n_stages: u32,
    /// Rotation angle of each splitter, in (0, pi/2].
    pub theta: f64,
    /// The object between consecutive splitters.
    pub object: ObjectState,
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(Error::InvalidParam {
                name: "alpha",
                value: self.alpha.norm(),
                reason: "must be finite",
            });
        }
        if self.n_stages == 0 {
            return Err(Error::InvalidParam {
                name: "n_stages",
                value: 0.0,
                reason: "must be >= 1",
            });
        }
        if !(self.theta.is_finite() && self.theta > 0.0 && self.theta <= PI / 2.0) {
            return Err(Error::InvalidParam {
                name: "theta",
                value: self.theta,
                reason: "must lie in (0, pi/2]",
            });
        }
        Ok(())
    }
}

/// Final state of a chain run plus whatever the absorber swallowed.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOutcome {
    pub state: ModePair,
    /// Amplitudes absorbed after splitters 1..N-1; empty unless the object
    /// is [`ObjectState::Block`].
    pub absorbed: Vec<C64>,
}

/// Propagate `alpha` through the splitter chain.
pub fn run_chain(config: &ChainConfig) -> Result<ChainOutcome> {
    config.validate()?;
    let mut state = ModePair::new(config.alpha, C64::ZERO);
    let mut absorbed = Vec::new();
    for stage in 1..=config.n_stages {
        state = state.bs_transform(config.theta);
        if stage == config.n_stages {
            break; // no object after the final splitter
        }
        match config.object {
            ObjectState::Pass => {}
            ObjectState::Block => {
                absorbed.push(state.zone1);
                state.zone1 = C64::ZERO;
            }
            ObjectState::Phase => {
                state.zone1 = -state.zone1;
            }
        }
    }
    Ok(ChainOutcome { state, absorbed })
}

/// One folded-interferometer simulation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    /// Input coherent amplitude; `|alpha|^2` is the mean photon number.
    pub alpha: C64,
    /// Number of reflection cycles M. The splitter angle is pi/(2 M).
    pub m_cycles: u32,
    /// Intensity fraction the steering optics absorb per zone per cycle.
    pub epsilon: f64,
    /// Rates shared by the two cavities.
    pub cavity: CavityParams,
    /// Record per-cycle zone amplitudes of both branches.
    pub trace_enabled: bool,
}

impl RunConfig {
    /// Splitter angle pi/(2 M) that walks Zone 0 to -alpha over M cycles.
    pub fn theta(&self) -> f64 {
        PI / (2.0 * self.m_cycles as f64)
    }

    pub fn validate(&self) -> Result<()> {
        self.cavity.validate()?;
        if !self.alpha.is_finite() {
            return Err(Error::InvalidParam {
                name: "alpha",
                value: self.alpha.norm(),
                reason: "must be finite",
            });
        }
        if self.m_cycles == 0 {
            return Err(Error::InvalidParam {
                name: "m_cycles",
                value: 0.0,
                reason: "must be >= 1",
            });
        }
        if !(self.epsilon.is_finite() && (0.0..1.0).contains(&self.epsilon)) {
            return Err(Error::InvalidParam {
                name: "epsilon",
                value: self.epsilon,
                reason: "must lie in [0, 1)",
            });
        }
        Ok(())
    }
}

/// Where a loss amplitude escaped.
///
/// Variant order is the emission order within each cycle; the ledger and the
/// running accumulator both follow it, so their sums agree bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LossChannel {
    /// Transmission through the empty Zone-0 cavity.
    Cavity0Trans,
    /// Atomic scattering at the Zone-0 cavity; always zero (no atom there).
    Cavity0Scat,
    /// Transmission through the Zone-1 cavity.
    Cavity1Trans,
    /// Atomic scattering at the Zone-1 cavity; zero in the down branch.
    Cavity1Scat,
    /// Steering-optics absorption in Zone 0.
    Mirror0,
    /// Steering-optics absorption in Zone 1.
    Mirror1,
}

impl LossChannel {
    pub const ALL: [LossChannel; 6] = [
        LossChannel::Cavity0Trans,
        LossChannel::Cavity0Scat,
        LossChannel::Cavity1Trans,
        LossChannel::Cavity1Scat,
        LossChannel::Mirror0,
        LossChannel::Mirror1,
    ];
}

/// One recorded pair of branch loss amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossEvent {
    /// Cycle index, 1-based.
    pub cycle: u32,
    pub channel: LossChannel,
    /// Amplitude lost in the coupled (up) branch.
    pub amp_up: C64,
    /// Amplitude lost in the uncoupled (down) branch.
    pub amp_down: C64,
}

/// Zone amplitudes of both branches at the end of one cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleSnapshot {
    pub cycle: u32,
    pub up: ModePair,
    pub down: ModePair,
}

/// Everything a protocol run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Final Zone-0 amplitude of the coupled branch.
    pub c0_up: C64,
    /// Final Zone-1 amplitude of the coupled branch.
    pub c1_up: C64,
    /// Final Zone-0 amplitude of the uncoupled branch.
    pub c0_down: C64,
    /// Final Zone-1 amplitude of the uncoupled branch.
    pub c1_down: C64,
    /// `log <loss_down|loss_up>` accumulated over the ledger channels only;
    /// see [`RunOutcome::total_loss_log_overlap`] for the full environment.
    pub loss_log_overlap: C64,
    /// Largest per-cycle intensity incident on the Zone-1 cavity in the
    /// coupled branch; stays well below 1 whenever the weak-excitation
    /// treatment of the atom is trustworthy.
    pub v_max: f64,
    /// Amplitude of the cat the run actually prepared: `-c0_down`.
    pub alpha_ef: C64,
    /// Full per-cycle, per-channel loss ledger.
    pub events: Vec<LossEvent>,
    /// End-of-cycle snapshots when tracing was requested.
    pub trace: Option<Vec<CycleSnapshot>>,
}

impl RunOutcome {
    /// Log-overlap of the complete loss environments of the two branches:
    /// the recorded channels plus the residual Zone-1 modes, which also stay
    /// behind unmeasured. `exp` of this multiplies the cross terms of the
    /// branch density matrix.
    pub fn total_loss_log_overlap(&self) -> C64 {
        self.loss_log_overlap + log_coherent_overlap(self.c1_down, self.c1_up)
    }
}

/// Bookkeeping shared by both engines: the accumulator and the event ledger
/// always move together.
struct LossLedger {
    acc: OverlapAccumulator,
    events: Vec<LossEvent>,
}

impl LossLedger {
    fn with_capacity(events: usize) -> Self {
        LossLedger {
            acc: OverlapAccumulator::new(),
            events: Vec::with_capacity(events),
        }
    }

    fn record(&mut self, cycle: u32, channel: LossChannel, amp_up: C64, amp_down: C64) {
        self.acc.add_channel(amp_up, amp_down);
        self.events.push(LossEvent {
            cycle,
            channel,
            amp_up,
            amp_down,
        });
    }
}

/// Run the M-cycle folded interferometer for both atomic branches.
///
/// Per cycle: splitter in, pi phase on both zones, cavity reflections (the
/// coupled branch sees the atom in Zone 1, everything else reflects off the
/// empty response), splitter out, then the steering optics keep a fraction
/// `1 - epsilon` of each zone's intensity. Transmission, scattering and
/// steering losses all land in the ledger as they happen.
pub fn run_multiple_reflection(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let theta = config.theta();
    let empty = scatter_coeffs(&config.cavity, AtomState::Down)?;
    let coupled = scatter_coeffs(&config.cavity, AtomState::Up)?;
    let keep = (1.0 - config.epsilon).sqrt();
    let lose = config.epsilon.sqrt();

    let mut up = ModePair::new(config.alpha, C64::ZERO);
    let mut down = up;
    let mut ledger = LossLedger::with_capacity(6 * config.m_cycles as usize);
    let mut trace = config
        .trace_enabled
        .then(|| Vec::with_capacity(config.m_cycles as usize));
    let mut v_max = 0.0f64;

    for cycle in 1..=config.m_cycles {
        up = up.bs_transform(theta).negated();
        down = down.bs_transform(theta).negated();

        // incidence on the Zone-1 cavity, the only place the atom is driven
        v_max = v_max.max(up.zone1.norm_sqr());

        ledger.record(
            cycle,
            LossChannel::Cavity0Trans,
            empty.t * up.zone0,
            empty.t * down.zone0,
        );
        ledger.record(
            cycle,
            LossChannel::Cavity0Scat,
            empty.s * up.zone0,
            empty.s * down.zone0,
        );
        ledger.record(
            cycle,
            LossChannel::Cavity1Trans,
            coupled.t * up.zone1,
            empty.t * down.zone1,
        );
        ledger.record(
            cycle,
            LossChannel::Cavity1Scat,
            coupled.s * up.zone1,
            empty.s * down.zone1,
        );
        up = ModePair::new(empty.r * up.zone0, coupled.r * up.zone1);
        down = ModePair::new(empty.r * down.zone0, empty.r * down.zone1);

        up = up.bs_transform(theta);
        down = down.bs_transform(theta);

        ledger.record(
            cycle,
            LossChannel::Mirror0,
            lose * up.zone0,
            lose * down.zone0,
        );
        ledger.record(
            cycle,
            LossChannel::Mirror1,
            lose * up.zone1,
            lose * down.zone1,
        );
        up = up.scaled(keep);
        down = down.scaled(keep);

        if let Some(snapshots) = &mut trace {
            snapshots.push(CycleSnapshot { cycle, up, down });
        }
    }

    Ok(RunOutcome {
        c0_up: up.zone0,
        c1_up: up.zone1,
        c0_down: down.zone0,
        c1_down: down.zone1,
        loss_log_overlap: ledger.acc.log_overlap(),
        v_max,
        alpha_ef: -down.zone0,
        events: ledger.events,
        trace,
    })
}

/// One direct bounce off the Zone-1 cavity, the baseline the folded scheme
/// is measured against. `m_cycles` plays no role; the steering optics act
/// once on the way out.
pub fn run_single_reflection(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let empty = scatter_coeffs(&config.cavity, AtomState::Down)?;
    let coupled = scatter_coeffs(&config.cavity, AtomState::Up)?;
    let keep = (1.0 - config.epsilon).sqrt();
    let lose = config.epsilon.sqrt();

    let mut ledger = LossLedger::with_capacity(3);
    ledger.record(
        1,
        LossChannel::Cavity1Trans,
        coupled.t * config.alpha,
        empty.t * config.alpha,
    );
    ledger.record(
        1,
        LossChannel::Cavity1Scat,
        coupled.s * config.alpha,
        empty.s * config.alpha,
    );
    let reflected_up = coupled.r * config.alpha;
    let reflected_down = empty.r * config.alpha;
    ledger.record(
        1,
        LossChannel::Mirror0,
        lose * reflected_up,
        lose * reflected_down,
    );
    let c0_up = reflected_up * keep;
    let c0_down = reflected_down * keep;

    let up = ModePair::new(c0_up, C64::ZERO);
    let down = ModePair::new(c0_down, C64::ZERO);
    Ok(RunOutcome {
        c0_up,
        c1_up: C64::ZERO,
        c0_down,
        c1_down: C64::ZERO,
        loss_log_overlap: ledger.acc.log_overlap(),
        v_max: config.alpha.norm_sqr(),
        alpha_ef: -c0_down,
        events: ledger.events,
        trace: config
            .trace_enabled
            .then(|| vec![CycleSnapshot { cycle: 1, up, down }]),
    })
}
