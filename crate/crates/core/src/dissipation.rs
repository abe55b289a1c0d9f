//! Dissipative decay from a retarded evolution equation.
//!
//! The environment is modeled by evolving the state with a finite time
//! step delta, the chronon, instead of a continuous derivative. An
//! exponential trial solution `exp(-alpha t)` then satisfies
//!
//! ```text
//! alpha = ln(1 + i (H_i - H_0) delta / hbar) / delta
//! ```
//!
//! whose real part damps the amplitude. The truncated expansion used by
//! the decay chain keeps unit coefficients,
//!
//! ```text
//! alpha ~ i (H_i - H_0)/hbar + (H_i - H_0)^2 delta / hbar^2
//!         - i (H_i - H_0)^3 delta^2 / hbar^3
//! ```
//!
//! giving the decay constant `gamma = (H_i - H_0)^2 delta / hbar^2` and a
//! shifted oscillation frequency. Matching that shift to a final level
//! `H_f` fixes the chronon,
//!
//! ```text
//! delta = hbar/(H_i - H_0) * sqrt((H_i - H_f)/(H_i - H_0))
//! ```
//!
//! and substituting back gives the closed decay constant
//! `gamma = sqrt((H_i - H_f)(H_i - H_0)) / hbar`. These two routes to
//! gamma agree identically, which the tests pin down.
//!
//! All energies are plain f64 joules; the dynamic range involved
//! (1e-34 .. 1e-10) sits comfortably inside double precision.

use num_complex::Complex64;

use crate::constants::HBAR;
use crate::error::{Error, Result};

/// The three energy levels driving the dissipation chain: initial
/// (pre-selected) level `h_i`, final (post-selected) level `h_f`, and the
/// ground/reference level `h_0`, all in joules.
///
/// Construction enforces `h_i > h_0` (the decay constant must be real and
/// positive) and `h_i >= h_f` (the square root in the closed decay
/// constant needs a nonnegative product). `h_f` may sit above or below
/// `h_0`. The degenerate case `h_i = h_f` is accepted and maps to zero
/// dissipation, so sweeps can pass through it continuously.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyTriple {
    h_i: f64,
    h_f: f64,
    h_0: f64,
}

impl EnergyTriple {
    pub fn new(h_i: f64, h_f: f64, h_0: f64) -> Result<Self> {
        if !h_i.is_finite() || !h_f.is_finite() || !h_0.is_finite() {
            return Err(Error::InvalidEnergyTriple("levels must be finite"));
        }
        if !(h_i > h_0) {
            return Err(Error::InvalidEnergyTriple("h_i must lie strictly above h_0"));
        }
        if !(h_i >= h_f) {
            return Err(Error::InvalidEnergyTriple("h_i must not lie below h_f"));
        }
        Ok(Self { h_i, h_f, h_0 })
    }

    pub fn h_i(&self) -> f64 {
        self.h_i
    }

    pub fn h_f(&self) -> f64 {
        self.h_f
    }

    pub fn h_0(&self) -> f64 {
        self.h_0
    }

    /// H_i - H_0, the excitation above the reference level (J).
    pub fn excitation_gap(&self) -> f64 {
        self.h_i - self.h_0
    }

    /// H_i - H_f, the pre/post-selection mismatch (J).
    pub fn postselection_gap(&self) -> f64 {
        self.h_i - self.h_f
    }
}

/// Chronon value plus a flag marking the dissipation-free limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChrononDelta {
    /// The chronon in seconds.
    pub seconds: f64,
    /// True when `h_i = h_f`: the chronon vanishes and nothing decays.
    pub zero_dissipation: bool,
}

/// Truncated-expansion value plus a flag for arguments outside the
/// comfortable convergence range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesAlpha {
    /// Complex rate in 1/s; real part decays, imaginary part oscillates.
    pub value: Complex64,
    /// True when `(h_i - h_0) * delta / hbar >= 1`.
    pub outside_domain: bool,
}

/// Phase and damping accumulated by the effective evolution after time t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveEvolution {
    /// Accumulated phase in radians.
    pub phase: f64,
    /// Remaining amplitude fraction, `exp(-gamma t)`.
    pub decay_factor: f64,
}

/// Chronon, decay constant and effective oscillation frequency of one
/// energy triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipationResult {
    /// Chronon (s).
    pub delta: f64,
    /// Decay constant (1/s).
    pub gamma: f64,
    /// Shifted oscillation frequency (rad/s).
    pub omega_eff: f64,
}

/// The chronon `delta = hbar/(H_i - H_0) * sqrt((H_i - H_f)/(H_i - H_0))`.
pub fn chronon_delta(e: &EnergyTriple) -> ChrononDelta {
    let gap = e.excitation_gap();
    let mismatch = e.postselection_gap();
    if mismatch == 0.0 {
        return ChrononDelta {
            seconds: 0.0,
            zero_dissipation: true,
        };
    }
    ChrononDelta {
        seconds: HBAR / gap * (mismatch / gap).sqrt(),
        zero_dissipation: false,
    }
}

/// Decay constant from an explicit chronon,
/// `gamma = (h_i - h_0)^2 delta / hbar^2`.
pub fn decay_gamma_from_delta(h_i: f64, h_0: f64, delta: f64) -> Result<f64> {
    if !(h_i > h_0) {
        return Err(Error::InvalidEnergyTriple("h_i must lie strictly above h_0"));
    }
    if !(delta >= 0.0) {
        return Err(Error::NegativeChronon(delta));
    }
    let gap = h_i - h_0;
    Ok(gap * gap * delta / (HBAR * HBAR))
}

/// Closed decay constant `gamma = sqrt((H_i - H_f)(H_i - H_0)) / hbar`.
///
/// Equals [`decay_gamma_from_delta`] evaluated at the chronon of the same
/// triple; the identity holds to machine precision.
pub fn decay_gamma(e: &EnergyTriple) -> f64 {
    (e.postselection_gap() * e.excitation_gap()).sqrt() / HBAR
}

/// Exact complex rate `alpha = ln(1 + i (h_i - h_0) delta / hbar) / delta`
/// on the principal branch.
///
/// The argument `1 + ix` has positive real part for every valid input, so
/// the principal branch is continuous over the whole domain of use.
pub fn alpha_exact(h_i: f64, h_0: f64, delta: f64) -> Result<Complex64> {
    if delta == 0.0 {
        return Err(Error::ZeroChronon);
    }
    if !(delta > 0.0) {
        return Err(Error::NegativeChronon(delta));
    }
    let x = (h_i - h_0) * delta / HBAR;
    Ok(Complex64::new(1.0, x).ln() / delta)
}

/// Truncated expansion of the complex rate with unit coefficients,
/// `i w + w^2 delta - i w^3 delta^2` for `w = (h_i - h_0)/hbar`.
///
/// This is the form the decay chain is built on: its real part equals the
/// decay constant of [`decay_gamma_from_delta`] exactly. Note it is not
/// the Taylor polynomial of the exact logarithm (see [`alpha_taylor`]);
/// the two differ at second order in `w * delta`.
pub fn alpha_series(h_i: f64, h_0: f64, delta: f64) -> SeriesAlpha {
    let gap = h_i - h_0;
    let w = gap / HBAR;
    let x = w * delta;
    SeriesAlpha {
        // The real part uses the same expression as decay_gamma_from_delta
        // so the two agree bit for bit.
        value: Complex64::new(
            gap * gap * delta / (HBAR * HBAR),
            w - w * w * w * delta * delta,
        ),
        outside_domain: x.abs() >= 1.0,
    }
}

/// Third-order Taylor polynomial of the exact logarithm,
/// `i w + w^2 delta / 2 - i w^3 delta^2 / 3`.
///
/// Its distance from [`alpha_exact`] is bounded by the first omitted term
/// of the alternating log series: `|taylor - exact| * delta <= x^4` for
/// `x = w * delta <= 1/2`.
pub fn alpha_taylor(h_i: f64, h_0: f64, delta: f64) -> SeriesAlpha {
    let w = (h_i - h_0) / HBAR;
    let x = w * delta;
    SeriesAlpha {
        value: Complex64::new(
            w * w * delta / 2.0,
            w - w * w * w * delta * delta / 3.0,
        ),
        outside_domain: x.abs() >= 1.0,
    }
}

/// Effective oscillation frequency `w - w^3 delta^2` with
/// `w = (h_i - h_0)/hbar` (rad/s).
pub fn omega_eff(e: &EnergyTriple, delta: f64) -> f64 {
    let w = e.excitation_gap() / HBAR;
    w - w * w * w * delta * delta
}

/// Phase and decay factor accumulated after time `t` under the effective
/// evolution `exp[-i (w - w^3 delta^2) t - gamma t]`.
pub fn effective_evolution(e: &EnergyTriple, delta: f64, t: f64) -> Result<EffectiveEvolution> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    if !(delta >= 0.0) {
        return Err(Error::NegativeChronon(delta));
    }
    let gamma = decay_gamma_from_delta(e.h_i, e.h_0, delta)?;
    Ok(EffectiveEvolution {
        phase: omega_eff(e, delta) * t,
        decay_factor: (-gamma * t).exp(),
    })
}

/// Bundle chronon, decay constant and effective frequency for one triple.
pub fn dissipation_result(e: &EnergyTriple) -> DissipationResult {
    let delta = chronon_delta(e).seconds;
    DissipationResult {
        delta,
        gamma: decay_gamma(e),
        omega_eff: omega_eff(e, delta),
    }
}
