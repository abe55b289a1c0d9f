//! Weak dwell time, survival probabilities, and the Zeno time-scale
//! family.
//!
//! The weak value of the dwell time for a decaying level between
//! pre-selection at `t_i` and post-selection at `t_f` is
//!
//! ```text
//! tau_w = Int_{t_i}^{t_f} exp(-gamma (t - t_i))
//!         * (1 - exp(-2 gamma (t_f - t))) / (1 - exp(-2 gamma (t_f - t_i))) dt
//! ```
//!
//! Two closed forms for it are carried side by side:
//!
//! * [`DwellForm::Tanh`] — `tanh(gamma tau_m / 2) / gamma`, the literal
//!   antiderivative of the integrand above; it matches
//!   [`dwell_weak_numeric`] to quadrature accuracy and tends to
//!   `tau_m / 2` as `gamma -> 0`.
//! * [`DwellForm::Coth`] — `coth(gamma tau_m / 2) / gamma`, the form the
//!   Zeno chain is built on; it diverges as `tau_m -> 0` and saturates at
//!   `1/gamma` for long windows.
//!
//! The two are exact duals (`coth * tanh * gamma^2 = 1`) and the product
//! rule `coth_form * tau_m -> 2 / gamma^2` at small `gamma tau_m` leads to
//! the weak Zeno time `sqrt(2)/gamma`. Which form a caller wants is a
//! modeling choice, so both stay available and each is tested against its
//! own ground truth.

use crate::constants::HBAR;
use crate::dissipation::{decay_gamma, EnergyTriple};
use crate::error::{Error, Result};
use crate::numerics::{integrate, ToleranceSpec};

/// Pre-selection instant `t_i` and post-selection instant `t_f` (s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementWindow {
    t_i: f64,
    t_f: f64,
}

impl MeasurementWindow {
    pub fn new(t_i: f64, t_f: f64) -> Result<Self> {
        if !t_i.is_finite() || !t_f.is_finite() || !(t_f > t_i) {
            return Err(Error::InvalidWindow { t_i, t_f });
        }
        Ok(Self { t_i, t_f })
    }

    /// Window of length `tau_m` starting at zero.
    pub fn from_duration(tau_m: f64) -> Result<Self> {
        Self::new(0.0, tau_m)
    }

    pub fn t_i(&self) -> f64 {
        self.t_i
    }

    pub fn t_f(&self) -> f64 {
        self.t_f
    }

    /// Measurement time `tau_m = t_f - t_i` (s).
    pub fn tau_m(&self) -> f64 {
        self.t_f - self.t_i
    }
}

/// Closed dwell-time form to evaluate; see the module docs for how the
/// two relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DwellForm {
    /// `coth(gamma tau_m / 2) / gamma`; pole at `gamma tau_m = 0`.
    Coth,
    /// `tanh(gamma tau_m / 2) / gamma`; equals the dwell integral.
    Tanh,
}

/// Aggregated inputs for the Zeno time-scale family; whichever field is
/// present selects the formula in [`ZenoInputs::resolve`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ZenoInputs {
    /// Energy uncertainty of the initial state (J).
    pub delta_h: Option<f64>,
    /// Lifetime of the decaying state (s).
    pub tau_l: Option<f64>,
    /// Measurement time (s).
    pub tau_m: Option<f64>,
    /// Energy triple for the weak-measurement form.
    pub energies: Option<EnergyTriple>,
}

/// Which Zeno formula produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZenoMethod {
    /// `hbar / delta_h`.
    Variance,
    /// `sqrt(tau_l * tau_m)`.
    Geometric,
    /// `sqrt(2) hbar / sqrt((h_i - h_f)(h_i - h_0))`.
    WeakEnergy,
}

/// A Zeno time in seconds with the formula that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoEstimate {
    pub seconds: f64,
    pub method: ZenoMethod,
}

impl ZenoInputs {
    /// Pick the most specific available formula: energy triple, then
    /// energy uncertainty, then the lifetime/measurement pair.
    pub fn resolve(&self) -> Result<ZenoEstimate> {
        if let Some(e) = &self.energies {
            return Ok(ZenoEstimate {
                seconds: zeno_time_weak(e)?,
                method: ZenoMethod::WeakEnergy,
            });
        }
        if let Some(dh) = self.delta_h {
            return Ok(ZenoEstimate {
                seconds: zeno_time_variance(dh)?,
                method: ZenoMethod::Variance,
            });
        }
        if let (Some(tau_l), Some(tau_m)) = (self.tau_l, self.tau_m) {
            return Ok(ZenoEstimate {
                seconds: zeno_time_geometric(tau_l, tau_m)?,
                method: ZenoMethod::Geometric,
            });
        }
        Err(Error::MissingZenoInput(
            "need an energy triple, an energy uncertainty, or a lifetime/measurement-time pair",
        ))
    }
}

/// A probability clamped to [0, 1], flagged when clamping fired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampedProbability {
    pub value: f64,
    /// True when the raw expansion left [0, 1] and was clamped.
    pub clamped: bool,
}

/// Pulsed survival with integer pulse count and the leftover interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulsedSurvival {
    pub probability: f64,
    pub full_pulses: u64,
    /// Remaining time after the last full pulse (s).
    pub remainder: f64,
}

fn integrand_value(t: f64, gamma: f64, w: &MeasurementWindow) -> f64 {
    if gamma == 0.0 {
        // Analytic limit of the 0/0 ratio: a linear ramp down to t_f.
        return (w.t_f - t) / (w.t_f - w.t_i);
    }
    // 1 - e^{-x} = -expm1(-x) keeps tiny gamma*tau exact.
    let ratio = (-2.0 * gamma * (w.t_f - t)).exp_m1() / (-2.0 * gamma * w.tau_m()).exp_m1();
    (-gamma * (t - w.t_i)).exp() * ratio
}

/// The dwell integrand
/// `exp(-gamma (t - t_i)) (1 - exp(-2 gamma (t_f - t))) / (1 - exp(-2 gamma tau_m))`
/// evaluated at `t` inside the window.
pub fn dwell_integrand(t: f64, gamma: f64, w: &MeasurementWindow) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::NegativeRate(gamma));
    }
    Ok(integrand_value(t, gamma, w))
}

/// Weak dwell time by adaptive quadrature of [`dwell_integrand`] over the
/// window. For `gamma = 0` the integrand is an exact linear ramp and the
/// integral is `tau_m / 2`.
pub fn dwell_weak_numeric(gamma: f64, w: &MeasurementWindow, tol: &ToleranceSpec) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::NegativeRate(gamma));
    }
    if gamma == 0.0 {
        return Ok(w.tau_m() / 2.0);
    }
    integrate(|t| integrand_value(t, gamma, w), w.t_i, w.t_f, tol)
}

/// Closed dwell time in the requested form; see [`DwellForm`].
pub fn dwell_closed(gamma: f64, w: &MeasurementWindow, form: DwellForm) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::NegativeRate(gamma));
    }
    let z = 0.5 * gamma * w.tau_m();
    match form {
        DwellForm::Tanh => {
            if gamma == 0.0 {
                Ok(w.tau_m() / 2.0)
            } else {
                Ok(z.tanh() / gamma)
            }
        }
        DwellForm::Coth => {
            if z == 0.0 {
                Err(Error::CothPole)
            } else {
                Ok(1.0 / (z.tanh() * gamma))
            }
        }
    }
}

/// Energy uncertainty `sqrt(<H^2> - <H>^2)` (J).
///
/// Rounding can push the variance slightly negative; anything beyond
/// -1e-12 relative to the input scale is a real inconsistency and is
/// rejected, tiny negatives are clamped to zero.
pub fn energy_variance(mean_h: f64, mean_h_sq: f64) -> Result<f64> {
    let var = mean_h_sq - mean_h * mean_h;
    if var < 0.0 {
        let scale = mean_h_sq.abs().max(mean_h * mean_h);
        if var < -1e-12 * scale {
            return Err(Error::NegativeVariance(var));
        }
        return Ok(0.0);
    }
    Ok(var.sqrt())
}

/// Short-time survival `1 - (delta_h * t / hbar)^2`, clamped to [0, 1].
///
/// The quadratic expansion only means anything for
/// `delta_h * t / hbar <= 1`; past that the value is clamped and flagged.
pub fn survival_short(delta_h: f64, t: f64) -> ClampedProbability {
    let x = delta_h * t / HBAR;
    let raw = 1.0 - x * x;
    if raw < 0.0 {
        ClampedProbability {
            value: 0.0,
            clamped: true,
        }
    } else {
        ClampedProbability {
            value: raw,
            clamped: false,
        }
    }
}

fn check_pulse_domain(tau_m: f64, tau_z: f64, total_t: f64) -> Result<()> {
    if !(tau_z > 0.0) {
        return Err(Error::NonPositive {
            name: "tau_z",
            value: tau_z,
        });
    }
    if !(tau_m >= 0.0) {
        return Err(Error::NonPositive {
            name: "tau_m",
            value: tau_m,
        });
    }
    if tau_m == 0.0 {
        return Ok(());
    }
    if tau_m >= tau_z {
        return Err(Error::PulseIntervalTooLong { tau_m, tau_z });
    }
    if total_t < tau_m {
        return Err(Error::TotalTimeTooShort { total_t, tau_m });
    }
    Ok(())
}

/// Survival after pulsed measurement every `tau_m` up to `total_t`,
/// `[1 - (tau_m/tau_z)^2]^(total_t/tau_m)`.
///
/// The exponent is used as a real number (continuum limit over pulse
/// counts); [`survival_pulsed_integer`] rounds down instead. `tau_m = 0`
/// returns 1 exactly: continuous observation freezes the state.
pub fn survival_pulsed(tau_m: f64, tau_z: f64, total_t: f64) -> Result<f64> {
    check_pulse_domain(tau_m, tau_z, total_t)?;
    if tau_m == 0.0 {
        return Ok(1.0);
    }
    let r = tau_m / tau_z;
    Ok((1.0 - r * r).powf(total_t / tau_m))
}

/// Integer-pulse variant of [`survival_pulsed`]: `floor(total_t/tau_m)`
/// full pulses, plus free evolution over the remainder interval.
pub fn survival_pulsed_integer(tau_m: f64, tau_z: f64, total_t: f64) -> Result<PulsedSurvival> {
    check_pulse_domain(tau_m, tau_z, total_t)?;
    if tau_m == 0.0 {
        return Ok(PulsedSurvival {
            probability: 1.0,
            full_pulses: 0,
            remainder: total_t,
        });
    }
    let n = (total_t / tau_m).floor();
    let remainder = total_t - n * tau_m;
    let r = tau_m / tau_z;
    let r_rem = remainder / tau_z;
    Ok(PulsedSurvival {
        probability: (1.0 - r * r).powi(n as i32) * (1.0 - r_rem * r_rem),
        full_pulses: n as u64,
        remainder,
    })
}

/// Exponential limit of the pulsed survival,
/// `exp(-total_t * tau_m / tau_z^2)`, valid for `tau_m << tau_z`.
pub fn survival_exponential(tau_m: f64, tau_z: f64, total_t: f64) -> Result<f64> {
    check_pulse_domain(tau_m, tau_z, total_t)?;
    if tau_m == 0.0 {
        return Ok(1.0);
    }
    Ok((-total_t * tau_m / (tau_z * tau_z)).exp())
}

/// Zeno time from the energy uncertainty, `hbar / delta_h` (s).
pub fn zeno_time_variance(delta_h: f64) -> Result<f64> {
    if delta_h == 0.0 {
        return Err(Error::ZeroUncertainty);
    }
    if !(delta_h > 0.0) {
        return Err(Error::NonPositive {
            name: "delta_h",
            value: delta_h,
        });
    }
    Ok(HBAR / delta_h)
}

/// Zeno time as the geometric mean of lifetime and measurement time,
/// `sqrt(tau_l * tau_m)` (s).
pub fn zeno_time_geometric(tau_l: f64, tau_m: f64) -> Result<f64> {
    if !(tau_l > 0.0) {
        return Err(Error::NonPositive {
            name: "tau_l",
            value: tau_l,
        });
    }
    if !(tau_m > 0.0) {
        return Err(Error::NonPositive {
            name: "tau_m",
            value: tau_m,
        });
    }
    Ok((tau_l * tau_m).sqrt())
}

/// Weak-measurement Zeno time,
/// `sqrt(2) hbar / sqrt((h_i - h_f)(h_i - h_0))` (s), i.e.
/// `sqrt(2)/gamma` with the closed decay constant.
pub fn zeno_time_weak(e: &EnergyTriple) -> Result<f64> {
    if e.postselection_gap() == 0.0 {
        return Err(Error::NoDissipation);
    }
    Ok(std::f64::consts::SQRT_2 / decay_gamma(e))
}
