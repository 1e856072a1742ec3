//! Coherent-amplitude algebra: two-zone mode pairs, beam-splitter rotations,
//! coherent-state overlaps, and a log-domain accumulator for products of
//! loss-channel overlaps.
//!
//! Every optical element in this crate maps coherent states to coherent
//! states, so a whole run is tracked by complex amplitudes alone. The only
//! place quantumness shows up numerically is in overlaps between branches,
//! `<b|a> = exp(-|a|^2/2 - |b|^2/2 + conj(b) a)`, and a run multiplies
//! hundreds of such factors together; the accumulator therefore sums their
//! logs instead of multiplying values that individually underflow.

use num_complex::Complex64 as C64;

/// Coherent amplitudes of the two interferometer zones.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModePair {
    /// Zone 0, the arm holding the empty reference cavity.
    pub zone0: C64,
    /// Zone 1, the arm holding the atom-cavity system.
    pub zone1: C64,
}

impl ModePair {
    pub fn new(zone0: C64, zone1: C64) -> Self {
        ModePair { zone0, zone1 }
    }

    /// Mean photon number summed over both zones.
    pub fn total_intensity(&self) -> f64 {
        self.zone0.norm_sqr() + self.zone1.norm_sqr()
    }

    /// Beam-splitter rotation by `theta`:
    /// `(u, v) -> (u cos(theta) - v sin(theta), u sin(theta) + v cos(theta))`.
    ///
    /// A plain SO(2) rotation, so the total intensity is conserved and
    /// `-theta` undoes it.
    pub fn bs_transform(&self, theta: f64) -> Self {
        let (sin, cos) = theta.sin_cos();
        ModePair {
            zone0: self.zone0 * cos - self.zone1 * sin,
            zone1: self.zone0 * sin + self.zone1 * cos,
        }
    }

    /// Flip the sign of both zones.
    ///
    /// This is a pi phase on the pair, applied exactly (no `e^{i pi}`
    /// roundoff), because the fold-mirror convention uses it every cycle.
    pub fn negated(&self) -> Self {
        ModePair {
            zone0: -self.zone0,
            zone1: -self.zone1,
        }
    }

    /// Scale both zones by a real factor.
    pub fn scaled(&self, factor: f64) -> Self {
        ModePair {
            zone0: self.zone0 * factor,
            zone1: self.zone1 * factor,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.zone0.is_finite() && self.zone1.is_finite()
    }
}

/// Single-mode phase shift `amp -> e^{i phi} amp`.
pub fn phase_shift(amp: C64, phi: f64) -> C64 {
    amp * C64::from_polar(1.0, phi)
}

/// Natural log of the coherent-state overlap `<bra|ket>`:
/// `-|bra|^2/2 - |ket|^2/2 + conj(bra) ket`.
pub fn log_coherent_overlap(bra: C64, ket: C64) -> C64 {
    C64::new(-0.5 * (bra.norm_sqr() + ket.norm_sqr()), 0.0) + bra.conj() * ket
}

/// Coherent-state overlap `<bra|ket>`; magnitude is at most 1 and `<a|a> = 1`.
pub fn coherent_overlap(bra: C64, ket: C64) -> C64 {
    log_coherent_overlap(bra, ket).exp()
}

/// Running product of loss-channel overlaps `<l_down|l_up>`, held in the log
/// domain.
///
/// Each channel contributes `-|l_up|^2/2 - |l_down|^2/2 + conj(l_down) l_up`.
/// The real part of one contribution equals
/// `-(|l_up| - |l_down|)^2/2 - (|l_up||l_down| - Re[conj(l_down) l_up])`,
/// which Cauchy-Schwarz keeps non-positive; any positive roundoff residue is
/// clamped so the accumulated magnitude can never leave the unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OverlapAccumulator {
    log_overlap: C64,
}

impl OverlapAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fold in one loss channel that carried `l_up` in the up branch and
    /// `l_down` in the down branch.
    pub fn add_channel(&mut self, l_up: C64, l_down: C64) {
        let mut inc = log_coherent_overlap(l_down, l_up);
        if inc.re > 0.0 {
            // mathematically impossible; strip float noise from
            // near-identical branch amplitudes
            inc.re = 0.0;
        }
        self.log_overlap += inc;
    }

    /// Accumulated `log <loss_down|loss_up>` over all channels so far.
    pub fn log_overlap(&self) -> C64 {
        self.log_overlap
    }

    /// The overlap product itself.
    pub fn overlap(&self) -> C64 {
        self.log_overlap.exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn bs_rotates_vacuum_input() {
        let alpha = c(1.7, 0.0);
        let out = ModePair::new(alpha, C64::ZERO).bs_transform(0.3);
        assert_abs_diff_eq!(out.zone0.re, 1.7 * 0.3f64.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(out.zone1.re, 1.7 * 0.3f64.sin(), epsilon = 1e-15);
        assert_eq!(out.zone0.im, 0.0);
        assert_eq!(out.zone1.im, 0.0);
    }

    #[test]
    fn bs_zero_angle_is_identity() {
        let state = ModePair::new(c(0.2, -1.1), c(3.0, 0.5));
        assert_eq!(state.bs_transform(0.0), state);
    }

    #[test]
    fn bs_quarter_turn_swaps_modes_with_sign() {
        let out = ModePair::new(c(3.0, 0.0), c(0.0, 4.0))
            .bs_transform(std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(out.zone0.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.zone0.im, -4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.zone1.re, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.zone1.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bs_preserves_intensity_and_inverts() {
        let state = ModePair::new(c(1.3, -0.4), c(-2.2, 0.9));
        let rotated = state.bs_transform(0.7713);
        assert_abs_diff_eq!(
            rotated.total_intensity(),
            state.total_intensity(),
            epsilon = 1e-12
        );
        let back = rotated.bs_transform(-0.7713);
        assert_abs_diff_eq!(back.zone0.re, state.zone0.re, epsilon = 1e-12);
        assert_abs_diff_eq!(back.zone0.im, state.zone0.im, epsilon = 1e-12);
        assert_abs_diff_eq!(back.zone1.re, state.zone1.re, epsilon = 1e-12);
        assert_abs_diff_eq!(back.zone1.im, state.zone1.im, epsilon = 1e-12);
    }

    #[test]
    fn phase_shift_pi_negates() {
        let alpha = c(2.0, 0.0);
        let shifted = phase_shift(alpha, std::f64::consts::PI);
        assert_abs_diff_eq!(shifted.re, -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(shifted.im, 0.0, epsilon = 1e-12);
        let twice = phase_shift(shifted, std::f64::consts::PI);
        assert_abs_diff_eq!(twice.re, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(twice.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn phase_shift_half_pi_multiplies_by_i() {
        let out = phase_shift(c(1.0, 1.0), std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(out.re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.im, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn self_overlap_is_one() {
        let alpha = c(1.9, -0.6);
        let o = coherent_overlap(alpha, alpha);
        assert_eq!(o, c(1.0, 0.0));
    }

    // Value pinned by a 60-term Fock-basis inner product
    // sum_n conj(v_b[n]) v_a[n] with v[0] = e^{-|a|^2/2}, v[n] = v[n-1] a/sqrt(n):
    // for b = -a, |a|^2 = 4 the sum converges to e^{-8}.
    #[test]
    fn opposite_amplitude_overlap_matches_fock_sum() {
        let alpha = c(2.0, 0.0);
        let o = coherent_overlap(-alpha, alpha);
        assert_abs_diff_eq!(o.re, 3.3546262790251185e-4, epsilon = 1e-16);
        assert_eq!(o.im, 0.0);

        // recompute the pinned value from the Fock expansion right here
        let mut term = (-4.0f64).exp(); // v_a[0] * conj(v_b[0])
        let mut sum = term;
        for n in 1..60 {
            term *= (2.0 * -2.0) / n as f64;
            sum += term;
        }
        assert_abs_diff_eq!(sum, o.re, epsilon = 1e-15);
    }

    #[test]
    fn vacuum_overlap_matches_fock_sum() {
        let beta = c(1.464f64.sqrt(), 0.0);
        let o = coherent_overlap(C64::ZERO, beta);
        assert_abs_diff_eq!(o.re, 0.480946135285778, epsilon = 1e-15);
        assert_eq!(o.im, 0.0);
    }

    #[test]
    fn accumulator_empty_channel_is_neutral() {
        let mut acc = OverlapAccumulator::new();
        acc.add_channel(C64::ZERO, C64::ZERO);
        assert_eq!(acc.log_overlap(), C64::ZERO);
        assert_eq!(acc.overlap(), c(1.0, 0.0));
    }

    #[test]
    fn accumulator_vacuum_bra_gives_half_intensity() {
        let beta = c(1.2, -0.7);
        let mut acc = OverlapAccumulator::new();
        acc.add_channel(beta, C64::ZERO);
        assert_abs_diff_eq!(acc.log_overlap().re, -0.5 * beta.norm_sqr(), epsilon = 1e-15);
        assert_abs_diff_eq!(acc.log_overlap().im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn accumulator_identical_amplitudes_change_nothing() {
        let beta = c(0.8, 2.3);
        let mut acc = OverlapAccumulator::new();
        acc.add_channel(beta, beta);
        // exact: the norm cancellation reuses the same roundings
        assert_eq!(acc.log_overlap(), C64::ZERO);
    }

    #[test]
    fn accumulator_matches_direct_product() {
        let channels = [
            (c(0.3, 0.1), c(0.25, 0.12)),
            (c(-1.1, 0.0), c(0.0, 0.0)),
            (c(0.0, 0.9), c(0.1, 0.85)),
            (c(2.0, -0.3), c(1.9, -0.35)),
        ];
        let mut acc = OverlapAccumulator::new();
        let mut product = c(1.0, 0.0);
        for (up, down) in channels {
            acc.add_channel(up, down);
            product *= coherent_overlap(down, up);
        }
        let got = acc.overlap();
        assert_abs_diff_eq!(got.re, product.re, epsilon = 1e-12 * product.norm());
        assert_abs_diff_eq!(got.im, product.im, epsilon = 1e-12 * product.norm());
        assert!(got.norm() <= 1.0);
    }
}
