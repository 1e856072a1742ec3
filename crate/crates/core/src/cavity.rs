//! Steady-state input-output response of the atom-cavity system.
//!
//! A resonant probe hitting the front mirror splits into three coherent
//! components: the reflected amplitude `r`, transmission through the back
//! mirror `t`, and scattering out of the atomic channel `s`. With the atom
//! coupled (state up) the response is
//!
//! ```text
//! D = kappa (gamma + i delta) + g^2,   kappa = kappa_r + kappa_t
//! r = 1 - 2 kappa_r (gamma + i delta) / D
//! t = -2 sqrt(kappa_t kappa_r) (gamma + i delta) / D
//! s = 2 g sqrt(kappa_r gamma) / D
//! ```
//!
//! and with the atom in the uncoupled state the cavity acts empty: the same
//! expressions at g = 0 collapse to constants independent of gamma and
//! delta, which is the form used directly (it doubles as the gamma = delta =
//! 0 limit). `|r|^2 + |t|^2 + |s|^2 = 1` holds exactly: the numerator of the
//! sum rearranges to `|D|^2`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Hyperfine state of the intracavity atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomState {
    /// Coupled to the cavity mode.
    Up,
    /// Uncoupled; the cavity responds as if empty.
    Down,
}

/// Atom and cavity rates.
///
/// A stored value x stands for the angular rate 2 pi x MHz; every formula
/// uses ratios of these, so the 2 pi never materializes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    /// Atom-cavity coupling strength.
    pub g: f64,
    /// Atomic polarization decay rate (half the spontaneous-emission rate).
    pub gamma: f64,
    /// Field decay through the front (probe-side) mirror.
    pub kappa_r: f64,
    /// Field decay through the back mirror plus intracavity losses.
    pub kappa_t: f64,
    /// Probe detuning from the common atom-cavity resonance; may be negative.
    pub delta: f64,
}

impl CavityParams {
    pub fn validate(&self) -> Result<()> {
        let check = |name, value: f64, nonneg: bool| -> Result<()> {
            if !value.is_finite() {
                return Err(Error::InvalidParam {
                    name,
                    value,
                    reason: "must be finite",
                });
            }
            if nonneg && value < 0.0 {
                return Err(Error::InvalidParam {
                    name,
                    value,
                    reason: "must be >= 0",
                });
            }
            Ok(())
        };
        check("g", self.g, true)?;
        check("gamma", self.gamma, true)?;
        check("kappa_r", self.kappa_r, true)?;
        check("kappa_t", self.kappa_t, true)?;
        check("delta", self.delta, false)?;
        if self.kappa_r <= 0.0 {
            return Err(Error::InvalidParam {
                name: "kappa_r",
                value: self.kappa_r,
                reason: "must be > 0",
            });
        }
        Ok(())
    }

    /// Total field decay rate `kappa = kappa_r + kappa_t`.
    pub fn kappa(&self) -> f64 {
        self.kappa_r + self.kappa_t
    }

    /// The cooperativity-style ratios `(gamma_tilde, delta_tilde) =
    /// (kappa_r gamma / g^2, kappa_r delta / g^2)`.
    ///
    /// `1/gamma_tilde` is the cooperativity; the coupled-cavity reflectivity
    /// at delta = kappa_t = 0 is `(1 - gamma_tilde)/(1 + gamma_tilde)`.
    pub fn dimensionless(&self) -> Result<(f64, f64)> {
        self.validate()?;
        if self.g == 0.0 {
            return Err(Error::ZeroCoupling);
        }
        let scale = self.kappa_r / (self.g * self.g);
        Ok((scale * self.gamma, scale * self.delta))
    }

    /// Fraction of incident intensity lost when the empty cavity reflects:
    /// `1 - ((kappa_t - kappa_r)/kappa)^2`, in [0, 1].
    pub fn empty_cavity_loss(&self) -> f64 {
        let r = (self.kappa_t - self.kappa_r) / self.kappa();
        1.0 - r * r
    }
}

/// Complex response of one cavity reflection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterCoeffs {
    /// Reflected amplitude per unit incident amplitude.
    pub r: C64,
    /// Amplitude transmitted through the back mirror.
    pub t: C64,
    /// Amplitude scattered out of the atomic channel.
    pub s: C64,
}

impl ScatterCoeffs {
    /// `|r|^2 + |t|^2 + |s|^2`; equal to 1 up to roundoff for valid params.
    pub fn intensity_sum(&self) -> f64 {
        self.r.norm_sqr() + self.t.norm_sqr() + self.s.norm_sqr()
    }
}

/// Input-output coefficients of the cavity with the atom in `state`.
///
/// Errors with [`Error::DegenerateDenominator`] only for the coupled state
/// at g = gamma = delta = 0, where the response is genuinely undefined.
pub fn scatter_coeffs(params: &CavityParams, state: AtomState) -> Result<ScatterCoeffs> {
    params.validate()?;
    let kappa = params.kappa();
    match state {
        AtomState::Down => {
            // empty cavity: the g = 0 response is flat in gamma and delta
            let r = C64::new((params.kappa_t - params.kappa_r) / kappa, 0.0);
            let t = C64::new(-2.0 * (params.kappa_t * params.kappa_r).sqrt() / kappa, 0.0);
            Ok(ScatterCoeffs {
                r,
                t,
                s: C64::ZERO,
            })
        }
        AtomState::Up => {
            let z = C64::new(params.gamma, params.delta);
            let denom = kappa * z + params.g * params.g;
            if denom == C64::ZERO {
                return Err(Error::DegenerateDenominator);
            }
            let r = C64::new(1.0, 0.0) - 2.0 * params.kappa_r * z / denom;
            let t = -2.0 * (params.kappa_t * params.kappa_r).sqrt() * z / denom;
            let s = 2.0 * params.g * (params.kappa_r * params.gamma).sqrt() / denom;
            Ok(ScatterCoeffs { r, t, s })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // the workhorse parameter point used throughout: g, gamma, kappa_r of
    // 2 pi x (7.8, 3.0, 2.3) MHz, one-sided cavity, on resonance
    fn workhorse() -> CavityParams {
        CavityParams {
            g: 7.8,
            gamma: 3.0,
            kappa_r: 2.3,
            kappa_t: 0.0,
            delta: 0.0,
        }
    }

    #[test]
    fn coupled_reflection_loss_near_anchor() {
        let c = scatter_coeffs(&workhorse(), AtomState::Up).unwrap();
        // on resonance: r = 1 - 2 kappa_r gamma / (kappa gamma + g^2), real
        let expected = 1.0 - 13.8 / 67.74;
        assert_abs_diff_eq!(c.r.re, expected, epsilon = 1e-15);
        assert_eq!(c.r.im, 0.0);
        // reflectivity loss of the coupled cavity sits close to 36.6%
        let loss = 1.0 - c.r.norm_sqr();
        assert!((loss - 0.366).abs() < 1e-3, "loss = {loss}");
    }

    #[test]
    fn unitarity_at_workhorse_point() {
        for state in [AtomState::Up, AtomState::Down] {
            let c = scatter_coeffs(&workhorse(), state).unwrap();
            assert_abs_diff_eq!(c.intensity_sum(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn lossless_coupled_cavity_reflects_perfectly() {
        let params = CavityParams {
            g: 5.0,
            gamma: 0.0,
            kappa_r: 1.0,
            kappa_t: 0.0,
            delta: 0.0,
        };
        let c = scatter_coeffs(&params, AtomState::Up).unwrap();
        assert_eq!(c.r, C64::new(1.0, 0.0));
        assert_eq!(c.t, C64::ZERO);
        assert_eq!(c.s, C64::ZERO);
    }

    #[test]
    fn one_sided_empty_cavity_flips_sign() {
        let c = scatter_coeffs(&workhorse(), AtomState::Down).unwrap();
        assert_eq!(c.r, C64::new(-1.0, 0.0));
        assert_eq!(c.t, C64::ZERO);
        assert_eq!(c.s, C64::ZERO);
    }

    #[test]
    fn critical_damping_kills_reflection() {
        // gamma = g^2 / kappa_r zeroes the coupled reflectivity
        let params = CavityParams {
            g: 7.8,
            gamma: 7.8 * 7.8 / 2.3,
            kappa_r: 2.3,
            kappa_t: 0.0,
            delta: 0.0,
        };
        let c = scatter_coeffs(&params, AtomState::Up).unwrap();
        assert_abs_diff_eq!(c.r.norm(), 0.0, epsilon = 1e-15);
        // everything leaves through the atom
        assert_abs_diff_eq!(c.s.norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn empty_cavity_loss_anchor() {
        let params = CavityParams {
            g: 7.8,
            gamma: 3.0,
            kappa_r: 2.3,
            kappa_t: 0.2,
            delta: 0.0,
        };
        let loss = params.empty_cavity_loss();
        assert_abs_diff_eq!(loss, 1.0 - (2.1f64 / 2.5).powi(2), epsilon = 1e-15);
        assert!((loss - 0.294).abs() < 5e-3, "loss = {loss}");
    }

    #[test]
    fn empty_cavity_loss_edges() {
        let mut params = workhorse();
        assert_eq!(params.empty_cavity_loss(), 0.0);
        params.kappa_t = params.kappa_r;
        assert_eq!(params.empty_cavity_loss(), 1.0);
    }

    #[test]
    fn dimensionless_anchor_and_edges() {
        let (gamma_tilde, delta_tilde) = workhorse().dimensionless().unwrap();
        assert_abs_diff_eq!(gamma_tilde, 6.9 / 60.84, epsilon = 1e-15);
        assert!((gamma_tilde - 0.1134).abs() < 1e-4);
        assert_eq!(delta_tilde, 0.0);

        let mut params = workhorse();
        params.gamma = 0.0;
        assert_eq!(params.dimensionless().unwrap().0, 0.0);

        params.delta = -params.g * params.g / params.kappa_r;
        assert_abs_diff_eq!(params.dimensionless().unwrap().1, -1.0, epsilon = 1e-15);

        params.g = 0.0;
        assert_eq!(params.dimensionless(), Err(Error::ZeroCoupling));
    }

    #[test]
    fn degenerate_denominator_detected() {
        let params = CavityParams {
            g: 0.0,
            gamma: 0.0,
            kappa_r: 1.0,
            kappa_t: 0.5,
            delta: 0.0,
        };
        assert_eq!(
            scatter_coeffs(&params, AtomState::Up),
            Err(Error::DegenerateDenominator)
        );
        // the empty-cavity response stays finite at the same point
        assert!(scatter_coeffs(&params, AtomState::Down).is_ok());
    }

    #[test]
    fn invalid_params_name_the_field() {
        let mut params = workhorse();
        params.kappa_r = 0.0;
        match params.validate() {
            Err(Error::InvalidParam { name, .. }) => assert_eq!(name, "kappa_r"),
            other => panic!("expected invalid kappa_r, got {other:?}"),
        }
        let mut params = workhorse();
        params.gamma = -1.0;
        match params.validate() {
            Err(Error::InvalidParam { name, .. }) => assert_eq!(name, "gamma"),
            other => panic!("expected invalid gamma, got {other:?}"),
        }
    }

    #[test]
    fn detuning_conjugates_coefficients() {
        let mut plus = workhorse();
        plus.delta = 1.7;
        plus.kappa_t = 0.4;
        let mut minus = plus;
        minus.delta = -1.7;
        let cp = scatter_coeffs(&plus, AtomState::Up).unwrap();
        let cm = scatter_coeffs(&minus, AtomState::Up).unwrap();
        assert_eq!(cm.r, cp.r.conj());
        assert_eq!(cm.t, cp.t.conj());
        assert_eq!(cm.s, cp.s.conj());
    }
}
