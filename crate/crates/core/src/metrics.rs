//! State-quality metrics for one run: fidelity against an even-cat target,
//! the cattiness witness in closed form, and an independent truncated-Fock
//! evaluation of the witness used to cross-check the closed form.
//!
//! Conventions: the run leaves the branch mixture
//! `(|c0_up>|up> + |c0_down>|down>)/sqrt(2)` entangled with its loss
//! environment; tracing the environment out multiplies every cross term by
//! `L = <loss_down|loss_up>` (residual Zone-1 modes included). All metrics
//! below are functions of `c0_up`, `c0_down` and `L` alone.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::coherent::{coherent_overlap, log_coherent_overlap};
use crate::engine::RunOutcome;
use crate::error::{Error, Result};

/// Half-width of the interval around 0 and 1 inside which fidelity roundoff
/// is snapped to the boundary.
const UNIT_GUARD: f64 = 1e-12;
/// Cattiness more negative than this is reported as a diagnostic error
/// rather than clamped.
const NEGATIVE_GUARD: f64 = 1e-12;
/// Largest coherent-state tail mass the Fock oracle will silently discard.
const TAIL_LIMIT: f64 = 1e-10;

/// Headline numbers for one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    /// Fidelity against the even cat of the requested target amplitude.
    pub fidelity: f64,
    /// Fidelity against the cat the run itself prepared (`alpha_ef`).
    pub effective_fidelity: f64,
    /// Cattiness witness.
    pub cattiness: f64,
    /// Mean photon number of the prepared cat.
    pub alpha_ef_sq: f64,
}

fn clamp_unit(x: f64) -> f64 {
    if x < 0.0 && x >= -UNIT_GUARD {
        0.0
    } else if x > 1.0 && x <= 1.0 + UNIT_GUARD {
        1.0
    } else {
        x
    }
}

/// Fidelity of the decohered branch mixture against the even cat
/// `(|target> + |-target>)/sqrt(2)` (large-amplitude normalization):
///
/// `F = (|<t|u>|^2 + |<-t|d>|^2 + 2 Re[<t|u> conj(<-t|d>) L]) / 4`
///
/// where `u`, `d` are the branch Zone-0 amplitudes and `L` the full loss
/// overlap. Clamped into [0, 1] only within a 1e-12 guard.
pub fn fidelity(outcome: &RunOutcome, target: C64) -> f64 {
    let loss = outcome.total_loss_log_overlap().exp();
    let o_up = coherent_overlap(target, outcome.c0_up);
    let o_down = coherent_overlap(-target, outcome.c0_down);
    let f = 0.25
        * (o_up.norm_sqr()
            + o_down.norm_sqr()
            + 2.0 * (o_up * o_down.conj() * loss).re);
    clamp_unit(f)
}

/// [`fidelity`] against `alpha_ef = -c0_down`, the amplitude the run
/// actually reached.
pub fn effective_fidelity(outcome: &RunOutcome) -> f64 {
    fidelity(outcome, outcome.alpha_ef)
}

/// Cattiness witness of the branch mixture:
///
/// `C_a = (|L|^2 - |<u|d>|^2) |u - d|^2 / 4`.
///
/// An ideal run reaches `|alpha|^2 (1 - e^{-4 |alpha|^2})`. Values inside
/// the 1e-12 roundoff guard clamp to zero; anything more negative (the
/// witness certifies nothing there) comes back as
/// [`Error::NegativeCattiness`] so report-level callers notice.
pub fn cattiness(outcome: &RunOutcome) -> Result<f64> {
    let value = cattiness_raw(outcome);
    if value < -NEGATIVE_GUARD {
        return Err(Error::NegativeCattiness {
            value,
            guard: NEGATIVE_GUARD,
        });
    }
    Ok(value.max(0.0))
}

/// The witness without the sign policy; scans use this and floor at zero.
pub(crate) fn cattiness_raw(outcome: &RunOutcome) -> f64 {
    let loss_sq = (2.0 * outcome.total_loss_log_overlap().re).exp();
    let branch_sq = (2.0 * log_coherent_overlap(outcome.c0_up, outcome.c0_down).re).exp();
    let separation = (outcome.c0_up - outcome.c0_down).norm_sqr();
    0.25 * (loss_sq - branch_sq) * separation
}

/// Cattiness witness floored at zero, for sweep tables and threshold
/// searches where a non-certifying (negative) value just means "fails any
/// positive threshold".
pub fn cattiness_floored(outcome: &RunOutcome) -> f64 {
    cattiness_raw(outcome).max(0.0)
}

/// Fock cutoff for the oracle basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockTruncation {
    pub n_max: usize,
}

impl FockTruncation {
    /// Cutoff comfortably past the Poisson tails of both branch amplitudes:
    /// `n_max = ceil(lambda + 10 sqrt(lambda) + 20)` with `lambda` the larger
    /// `|c0|^2`. Leaves tail mass around 1e-16 for desk-scale amplitudes.
    pub fn for_outcome(outcome: &RunOutcome) -> Self {
        let lambda = outcome.c0_up.norm_sqr().max(outcome.c0_down.norm_sqr());
        FockTruncation {
            n_max: (lambda + 10.0 * lambda.sqrt() + 20.0).ceil() as usize,
        }
    }

    /// Poisson probability mass of `|alpha>` beyond `n_max`.
    pub fn tail_mass(&self, alpha: C64) -> f64 {
        let lambda = alpha.norm_sqr();
        let mut term = (-lambda).exp();
        let mut cumulative = term;
        for n in 1..=self.n_max {
            term *= lambda / n as f64;
            cumulative += term;
        }
        (1.0 - cumulative).max(0.0)
    }
}

/// Fock-basis column of `|alpha>` up to `n_max`:
/// `v[0] = e^{-|alpha|^2/2}`, `v[n] = v[n-1] alpha / sqrt(n)`.
pub fn coherent_fock_vector(alpha: C64, n_max: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(n_max + 1);
    v.push(C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0));
    for n in 1..=n_max {
        let prev = v[n - 1];
        v.push(prev * alpha / (n as f64).sqrt());
    }
    v
}

/// Cattiness evaluated directly in a truncated Fock basis, with no use of
/// the closed form: builds the unnormalized two-branch density matrix
///
/// `rho = (|u><u| + |d><d| + L |u><d| + conj(L) |d><u|) / 2`
///
/// and returns `Tr[n rho^2] - Tr[rho a rho a^dagger]`. Exists purely to
/// cross-check [`cattiness`]; it is O(n_max^3) per call.
pub fn cattiness_fock_oracle(outcome: &RunOutcome, trunc: FockTruncation) -> Result<f64> {
    fock_witness(outcome, trunc, false)
}

/// Same evaluation with the heralding sign flipped (the other measurement
/// record negates both cross terms); the witness is independent of it.
pub fn cattiness_fock_oracle_flipped(outcome: &RunOutcome, trunc: FockTruncation) -> Result<f64> {
    fock_witness(outcome, trunc, true)
}

fn fock_witness(outcome: &RunOutcome, trunc: FockTruncation, flip_cross: bool) -> Result<f64> {
    for amp in [outcome.c0_up, outcome.c0_down] {
        let tail = trunc.tail_mass(amp);
        if tail > TAIL_LIMIT {
            return Err(Error::Truncation {
                n_max: trunc.n_max,
                tail,
                limit: TAIL_LIMIT,
            });
        }
    }
    let n = trunc.n_max + 1;
    let up = coherent_fock_vector(outcome.c0_up, trunc.n_max);
    let down = coherent_fock_vector(outcome.c0_down, trunc.n_max);
    let loss = outcome.total_loss_log_overlap().exp();
    let sign = if flip_cross { -1.0 } else { 1.0 };

    let mut rho = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let direct = up[i] * up[j].conj() + down[i] * down[j].conj();
            let cross = loss * up[i] * down[j].conj() + loss.conj() * down[i] * up[j].conj();
            rho[(i, j)] = 0.5 * (direct + sign * cross);
        }
    }

    let mut lower = Array2::<C64>::zeros((n, n));
    for i in 0..n - 1 {
        lower[(i, i + 1)] = C64::new(((i + 1) as f64).sqrt(), 0.0);
    }
    let raise = lower.t().mapv(|z| z.conj());

    let rho_sq = rho.dot(&rho);
    let number_term: f64 = (0..n).map(|i| i as f64 * rho_sq[(i, i)].re).sum();
    let hopped = rho.dot(&lower).dot(&rho).dot(&raise);
    let hop_term: f64 = (0..n).map(|i| hopped[(i, i)].re).sum();
    Ok(number_term - hop_term)
}

/// The standard report for one outcome: fidelity against `target`, the
/// effective fidelity, cattiness and the prepared cat's intensity.
pub fn metrics_report(outcome: &RunOutcome, target: C64) -> Result<MetricsReport> {
    Ok(MetricsReport {
        fidelity: fidelity(outcome, target),
        effective_fidelity: effective_fidelity(outcome),
        cattiness: cattiness(outcome)?,
        alpha_ef_sq: outcome.alpha_ef.norm_sqr(),
    })
}
