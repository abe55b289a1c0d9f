//! Discretized-bath decay model with pulsed projective measurement.
//!
//! One reference level (index n = 0) couples with a real constant `H` to
//! a symmetric ladder of 2N bath levels at energies `n * delta_e`,
//! `n in {-N..-1, 1..N}`. In the interaction picture the single-excitation
//! amplitudes obey
//!
//! ```text
//! da_0/dt = -i (H/hbar) sum_{n != 0} a_n exp(-i n dE t / hbar)
//! da_n/dt = -i (H/hbar) a_0 exp(+i n dE t / hbar)
//! ```
//!
//! which is exactly unitary, so the total norm is a built-in correctness
//! probe for the RK4 integration. The model exhibits the three regimes the
//! closed formulas describe: quadratic short-time decay with
//! `1 - P = 2N (H t / hbar)^2` (energy uncertainty `H sqrt(2N)`), an
//! intermediate exponential window for dense baths, and Zeno freezing
//! under repeated projection.
//!
//! A projective measurement collapses the state back onto the reference
//! level and renormalizes, so the survival after `n` pulses is the
//! single-interval survival raised to the n-th power (a deterministic
//! expectation; no stochastic sampling).

use std::io::{self, Write};

use num_complex::Complex64;

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::numerics::{fit_line, FitResult, Rk4Stepper};

/// Window bounds on `1 - P` inside which the decay law is quadratic to
/// the accuracy the fits assume.
const QUADRATIC_WINDOW: (f64, f64) = (1e-8, 1e-3);
/// Minimum number of samples for the short-time exponent fit.
const QUADRATIC_MIN_SAMPLES: usize = 10;

/// A bath of `2 n_levels` atoms, spaced `delta_e` apart symmetrically
/// around the reference level, each coupled to it with the real constant
/// `coupling`. All energies in joules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathModel {
    n_levels: usize,
    delta_e: f64,
    coupling: f64,
}

impl BathModel {
    pub fn new(n_levels: usize, delta_e: f64, coupling: f64) -> Result<Self> {
        if n_levels < 1 {
            return Err(Error::InvalidBathModel("n_levels must be at least 1"));
        }
        if !(delta_e >= 0.0) || !delta_e.is_finite() {
            return Err(Error::InvalidBathModel("delta_e must be finite and nonnegative"));
        }
        if !(coupling >= 0.0) || !coupling.is_finite() {
            return Err(Error::InvalidBathModel("coupling must be finite and nonnegative"));
        }
        Ok(Self {
            n_levels,
            delta_e,
            coupling,
        })
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn delta_e(&self) -> f64 {
        self.delta_e
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// State dimension `2N + 1`.
    pub fn dim(&self) -> usize {
        2 * self.n_levels + 1
    }

    /// Index of the reference amplitude in the state vector.
    pub fn reference_index(&self) -> usize {
        self.n_levels
    }

    /// Energy uncertainty of the reference state, `H sqrt(2N)` (J).
    pub fn energy_uncertainty(&self) -> f64 {
        self.coupling * (2.0 * self.n_levels as f64).sqrt()
    }

    /// Zeno time of the reference state, `hbar / (H sqrt(2N))` (s).
    pub fn zeno_time(&self) -> Result<f64> {
        crate::tunneling::zeno_time_variance(self.energy_uncertainty())
    }

    /// Largest step that resolves both the fastest bath phase
    /// (`dt <= 0.1 hbar / (N dE)`) and the coupling rotation
    /// (`dt <= 0.01 hbar / (H sqrt(2N))`).
    pub fn max_step(&self) -> f64 {
        let bandwidth = self.n_levels as f64 * self.delta_e;
        let phase_limit = if bandwidth > 0.0 {
            0.1 * HBAR / bandwidth
        } else {
            f64::INFINITY
        };
        let dh = self.energy_uncertainty();
        let coupling_limit = if dh > 0.0 {
            0.01 * HBAR / dh
        } else {
            f64::INFINITY
        };
        phase_limit.min(coupling_limit)
    }
}

/// Time series of the reference amplitude and the total bath occupation.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTrajectory {
    times: Vec<f64>,
    a0: Vec<Complex64>,
    bath_norm: Vec<f64>,
}

impl AmplitudeTrajectory {
    /// Build a trajectory from reference amplitudes alone, assigning the
    /// complementary norm to the bath. Intended for synthetic inputs and
    /// replayed data.
    pub fn from_reference_amplitudes(times: Vec<f64>, a0: Vec<Complex64>) -> Result<Self> {
        if times.len() != a0.len() {
            return Err(Error::InvalidTrajectory("times and amplitudes differ in length"));
        }
        if times.is_empty() {
            return Err(Error::InvalidTrajectory("trajectory must hold at least one sample"));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidTrajectory("times must be strictly increasing"));
        }
        let bath_norm = a0.iter().map(|z| 1.0 - z.norm_sqr()).collect();
        Ok(Self {
            times,
            a0,
            bath_norm,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn a0(&self) -> &[Complex64] {
        &self.a0
    }

    pub fn bath_norm(&self) -> &[f64] {
        &self.bath_norm
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Survival probability `|a_0|^2` at sample `k`.
    pub fn survival(&self, k: usize) -> f64 {
        self.a0[k].norm_sqr()
    }

    /// Final survival probability.
    pub fn final_survival(&self) -> f64 {
        self.a0.last().map(|z| z.norm_sqr()).unwrap_or(1.0)
    }

    /// Largest deviation of `|a_0|^2 + bath_norm` from 1 over the run.
    pub fn max_norm_drift(&self) -> f64 {
        self.a0
            .iter()
            .zip(&self.bath_norm)
            .map(|(z, b)| (z.norm_sqr() + b - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Write the trajectory as CSV with columns
    /// `t_seconds,re_a0,im_a0,p_survival,bath_norm`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t_seconds,re_a0,im_a0,p_survival,bath_norm")?;
        for k in 0..self.len() {
            writeln!(
                out,
                "{},{},{},{},{}",
                fmt_f64(self.times[k]),
                fmt_f64(self.a0[k].re),
                fmt_f64(self.a0[k].im),
                fmt_f64(self.survival(k)),
                fmt_f64(self.bath_norm[k]),
            )?;
        }
        Ok(())
    }
}

// Shortest round-trip float formatting, scientific for extreme magnitudes.
fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.abs() >= 1e-4 && x.abs() < 1e6 {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Pulsed-measurement schedule: total time `T` divided into intervals of
/// `tau_m`, with `n_pulses = floor(T / tau_m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSchedule {
    total_t: f64,
    tau_m: f64,
    n_pulses: u64,
}

impl MeasurementSchedule {
    pub fn new(total_t: f64, tau_m: f64) -> Result<Self> {
        if !(tau_m > 0.0) || !tau_m.is_finite() {
            return Err(Error::InvalidSchedule("tau_m must be positive"));
        }
        let n_pulses = (total_t / tau_m).floor();
        if !(n_pulses >= 1.0) {
            return Err(Error::InvalidSchedule("total time must cover at least one pulse"));
        }
        Ok(Self {
            total_t,
            tau_m,
            n_pulses: n_pulses as u64,
        })
    }

    /// Divide `total_t` into exactly `n_pulses` equal intervals.
    pub fn from_pulse_count(total_t: f64, n_pulses: u64) -> Result<Self> {
        if n_pulses < 1 {
            return Err(Error::InvalidSchedule("need at least one pulse"));
        }
        if !(total_t > 0.0) || !total_t.is_finite() {
            return Err(Error::InvalidSchedule("total time must be positive"));
        }
        Ok(Self {
            total_t,
            tau_m: total_t / n_pulses as f64,
            n_pulses,
        })
    }

    pub fn total_t(&self) -> f64 {
        self.total_t
    }

    pub fn tau_m(&self) -> f64 {
        self.tau_m
    }

    pub fn n_pulses(&self) -> u64 {
        self.n_pulses
    }
}

fn rhs_into(t: f64, amps: &[Complex64], model: &BathModel, out: &mut [Complex64]) {
    let rate = model.coupling / HBAR;
    let omega = model.delta_e / HBAR;
    let reference = model.reference_index();
    let a0 = amps[reference];
    let minus_i = Complex64::new(0.0, -1.0);

    let mut bath_sum = Complex64::new(0.0, 0.0);
    for (idx, &a) in amps.iter().enumerate() {
        let n = idx as f64 - reference as f64;
        if idx == reference {
            continue;
        }
        let phase = Complex64::from_polar(1.0, n * omega * t);
        bath_sum += a * phase.conj();
        out[idx] = minus_i * rate * a0 * phase;
    }
    out[reference] = minus_i * rate * bath_sum;
}

/// Interaction-picture derivatives of the amplitude vector; see the
/// module docs for the equations.
pub fn bath_rhs(t: f64, amplitudes: &[Complex64], model: &BathModel) -> Result<Vec<Complex64>> {
    if amplitudes.len() != model.dim() {
        return Err(Error::DimensionMismatch {
            got: amplitudes.len(),
            expected: model.dim(),
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); model.dim()];
    rhs_into(t, amplitudes, model, &mut out);
    Ok(out)
}

/// Closure form of the right-hand side for use with
/// [`crate::numerics::solve_ode_complex`].
pub fn bath_rhs_closure(
    model: &BathModel,
) -> impl Fn(f64, &[Complex64], &mut [Complex64]) + '_ {
    move |t, y, dy| rhs_into(t, y, model, dy)
}

/// Evolve the bath from `a_0 = 1` up to `t_end`, recording the reference
/// amplitude and bath occupation at every step.
///
/// The requested `dt` must satisfy [`BathModel::max_step`]; it is then
/// shrunk so an integer number of uniform steps lands exactly on `t_end`.
pub fn evolve_bath(model: &BathModel, t_end: f64, dt: f64) -> Result<AmplitudeTrajectory> {
    if !(dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    if !(t_end >= 0.0) {
        return Err(Error::BackwardTimeSpan { t0: 0.0, t1: t_end });
    }
    let max_step = model.max_step();
    if dt > max_step {
        return Err(Error::StepTooLarge {
            dt,
            suggested: max_step,
        });
    }

    let dim = model.dim();
    let reference = model.reference_index();
    let mut y = vec![Complex64::new(0.0, 0.0); dim];
    y[reference] = Complex64::new(1.0, 0.0);

    let mut times = vec![0.0];
    let mut a0 = vec![y[reference]];
    let mut bath_norm = vec![0.0];

    if t_end > 0.0 {
        let n_steps = (t_end / dt).ceil().max(1.0) as usize;
        let h = t_end / n_steps as f64;
        let mut stepper = Rk4Stepper::new(dim);
        let rhs = bath_rhs_closure(model);

        times.reserve(n_steps);
        a0.reserve(n_steps);
        bath_norm.reserve(n_steps);

        for k in 0..n_steps {
            let t = k as f64 * h;
            stepper.step(&rhs, t, &mut y, h);
            if y.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFiniteState {
                    step: k + 1,
                    t: t + h,
                });
            }
            let t_next = if k + 1 == n_steps {
                t_end
            } else {
                (k + 1) as f64 * h
            };
            times.push(t_next);
            a0.push(y[reference]);
            bath_norm.push(
                y.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != reference)
                    .map(|(_, z)| z.norm_sqr())
                    .sum(),
            );
        }
    }

    Ok(AmplitudeTrajectory {
        times,
        a0,
        bath_norm,
    })
}

/// Survival probability `|a_0(tau_m)|^2` after one uninterrupted
/// evolution over `tau_m`.
pub fn survival_single(model: &BathModel, tau_m: f64, dt: f64) -> Result<f64> {
    if tau_m == 0.0 {
        return Ok(1.0);
    }
    Ok(evolve_bath(model, tau_m, dt)?.final_survival())
}

/// Survival under the schedule's repeated projective measurement: the
/// single-interval survival raised to the pulse count.
pub fn survival_repeated(model: &BathModel, schedule: &MeasurementSchedule, dt: f64) -> Result<f64> {
    let p1 = survival_single(model, schedule.tau_m(), dt)?;
    Ok(p1.powi(schedule.n_pulses() as i32))
}

/// Log-log fit of `1 - P` against `t` over the quadratic window
/// `1e-8 <= 1 - P <= 1e-3`; the slope is the short-time decay exponent
/// (2 for unitary models).
pub fn short_time_exponent(traj: &AmplitudeTrajectory) -> Result<FitResult> {
    let mut log_t = Vec::new();
    let mut log_decay = Vec::new();
    for k in 0..traj.len() {
        let t = traj.times[k];
        let decay = 1.0 - traj.survival(k);
        if t > 0.0 && decay >= QUADRATIC_WINDOW.0 && decay <= QUADRATIC_WINDOW.1 {
            log_t.push(t.ln());
            log_decay.push(decay.ln());
        }
    }
    if log_t.len() < QUADRATIC_MIN_SAMPLES {
        return Err(Error::QuadraticWindowTooSparse {
            found: log_t.len(),
            needed: QUADRATIC_MIN_SAMPLES,
        });
    }
    fit_line(&log_t, &log_decay)
}

/// Least-squares slope of `ln |a_0|^2` against `t` over `window`; the
/// fitted amplitude decay constant is `-slope / 2`.
pub fn fit_decay_rate(traj: &AmplitudeTrajectory, window: (f64, f64)) -> Result<FitResult> {
    let (lo, hi) = window;
    let t0 = *traj.times.first().expect("trajectory is never empty");
    let t1 = *traj.times.last().expect("trajectory is never empty");
    if !(lo < hi) || lo < t0 || hi > t1 {
        return Err(Error::WindowOutsideTrajectory { lo, hi, t0, t1 });
    }
    let mut ts = Vec::new();
    let mut log_p = Vec::new();
    for k in 0..traj.len() {
        let t = traj.times[k];
        if t < lo || t > hi {
            continue;
        }
        let p = traj.survival(k);
        if p <= 1e-12 {
            return Err(Error::SurvivalUnderflow { p, t });
        }
        ts.push(t);
        log_p.push(p.ln());
    }
    fit_line(&ts, &log_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::solve_ode_complex;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    // Desk-scale model used throughout: 2N = 32 bath atoms, level spacing
    // well inside the coupling bandwidth.
    fn model16() -> BathModel {
        BathModel::new(16, 1e-26, 1e-25).unwrap()
    }

    #[test]
    fn model_validation_and_derived_scales() {
        assert!(BathModel::new(0, 1e-26, 1e-25).is_err());
        assert!(BathModel::new(4, -1.0, 1e-25).is_err());
        let m = model16();
        assert_eq!(m.dim(), 33);
        assert_eq!(m.reference_index(), 16);
        assert_relative_eq!(
            m.energy_uncertainty(),
            1e-25 * 32.0_f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn rhs_from_fresh_reference_state() {
        let m = model16();
        let mut y = vec![Complex64::new(0.0, 0.0); m.dim()];
        y[m.reference_index()] = Complex64::new(1.0, 0.0);
        let dy = bath_rhs(0.0, &y, &m).unwrap();
        assert_eq!(dy[m.reference_index()], Complex64::new(0.0, 0.0));
        let expected = Complex64::new(0.0, -1e-25 / HBAR);
        for (idx, d) in dy.iter().enumerate() {
            if idx != m.reference_index() {
                assert_abs_diff_eq!(d.re, expected.re, epsilon = 1e-20);
                assert_abs_diff_eq!(d.im, expected.im, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn rhs_rejects_wrong_dimension() {
        let m = model16();
        let y = vec![Complex64::new(0.0, 0.0); 5];
        assert!(matches!(
            bath_rhs(0.0, &y, &m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_coupling_never_decays() {
        let m = BathModel::new(4, 1e-26, 0.0).unwrap();
        let traj = evolve_bath(&m, 1e-10, 1e-12).unwrap();
        for k in 0..traj.len() {
            assert_eq!(traj.survival(k), 1.0);
        }
    }

    #[test]
    fn step_size_guard_suggests_limit() {
        let m = model16();
        let res = evolve_bath(&m, 1e-10, 1.0);
        match res {
            Err(Error::StepTooLarge { suggested, .. }) => {
                assert_relative_eq!(suggested, m.max_step(), max_relative = 1e-15);
            }
            other => panic!("expected step-size error, got {other:?}"),
        }
    }

    #[test]
    fn norm_is_conserved() {
        let m = model16();
        let traj = evolve_bath(&m, 7.5e-13, 5e-14).unwrap();
        assert!(traj.max_norm_drift() <= 1e-8);
    }

    #[test]
    fn short_time_decay_is_quadratic() {
        let m = model16();
        let traj = evolve_bath(&m, 7.5e-13, 5e-14).unwrap();

        // 1 - P matches 2N (H t / hbar)^2 inside the window.
        let prefactor = 2.0 * 16.0 * (1e-25 / HBAR) * (1e-25 / HBAR);
        for k in 1..traj.len() {
            let t = traj.times()[k];
            let decay = 1.0 - traj.survival(k);
            if (QUADRATIC_WINDOW.0..=QUADRATIC_WINDOW.1).contains(&decay) {
                assert_relative_eq!(decay, prefactor * t * t, max_relative = 0.01);
            }
        }

        let fit = short_time_exponent(&traj).unwrap();
        assert_abs_diff_eq!(fit.slope, 2.0, epsilon = 0.05);
        assert!(fit.r_squared > 0.999);
    }

    #[test]
    fn short_time_survival_formula() {
        let m = model16();
        let dh = m.energy_uncertainty();
        let tau = 0.01 * HBAR / dh;
        let p = survival_single(&m, tau, 5e-14).unwrap();
        let expected = 1.0 - (dh * tau / HBAR).powi(2);
        assert_relative_eq!(p, expected, max_relative = 1e-4);
    }

    #[test]
    fn time_reversal_recovers_initial_state() {
        let m = model16();
        let t_end = 2e-11;
        let dt = 1e-13;
        let mut y0 = vec![Complex64::new(0.0, 0.0); m.dim()];
        y0[m.reference_index()] = Complex64::new(1.0, 0.0);

        let fwd = solve_ode_complex(bath_rhs_closure(&m), &y0, 0.0, t_end, dt).unwrap();
        let y_end = fwd.last().unwrap().1.clone();

        // Reversed flow: z(s) = y(t_end - s) obeys z' = -f(t_end - s, z).
        let back = solve_ode_complex(
            |s, y, dy| {
                rhs_into(t_end - s, y, &m, dy);
                for d in dy.iter_mut() {
                    *d = -*d;
                }
            },
            &y_end,
            0.0,
            t_end,
            dt,
        )
        .unwrap();
        let y_back = &back.last().unwrap().1;
        let a0 = y_back[m.reference_index()];
        assert!((a0 - Complex64::new(1.0, 0.0)).norm() <= 1e-6);
    }

    #[test]
    fn ladder_symmetry_of_amplitudes() {
        let m = model16();
        let mut y0 = vec![Complex64::new(0.0, 0.0); m.dim()];
        y0[m.reference_index()] = Complex64::new(1.0, 0.0);
        let traj = solve_ode_complex(bath_rhs_closure(&m), &y0, 0.0, 2e-11, 1e-13).unwrap();
        let reference = m.reference_index();
        for (_, y) in traj.iter().step_by(50) {
            for n in 1..=m.n_levels() {
                let plus = y[reference + n].norm();
                let minus = y[reference - n].norm();
                assert_abs_diff_eq!(plus, minus, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn step_halving_is_fourth_order() {
        let m = model16();
        let t_end = 0.3 * m.zeno_time().unwrap();
        let base = {
            let requested = 0.01 * HBAR / m.energy_uncertainty();
            let n = (t_end / requested).ceil();
            t_end / n
        };
        let a = |dt: f64| {
            evolve_bath(&m, t_end, dt).unwrap().a0().last().copied().unwrap()
        };
        let y1 = a(base);
        let y2 = a(base / 2.0);
        let y4 = a(base / 4.0);
        let ratio = (y1 - y2).norm() / ((y2 - y4).norm());
        assert!(
            (ratio - 16.0).abs() <= 2.0,
            "expected ~16x per halving, got {ratio}"
        );
    }

    #[test]
    fn zeno_ordering_of_repeated_measurement() {
        let m = model16();
        let total = 0.8 * m.zeno_time().unwrap();
        let dt = 0.01 * HBAR / m.energy_uncertainty();
        let mut prev = 0.0;
        for n in [1u64, 2, 4, 8, 16] {
            let schedule = MeasurementSchedule::from_pulse_count(total, n).unwrap();
            let p = survival_repeated(&m, &schedule, dt).unwrap();
            assert!(
                p >= prev,
                "survival must not drop when pulses increase (n = {n})"
            );
            prev = p;
        }
        assert!(prev > 0.9, "frequent measurement should freeze the decay");
    }

    #[test]
    fn single_pulse_equals_uninterrupted_run() {
        let m = model16();
        let total = 0.2 * m.zeno_time().unwrap();
        let dt = 0.01 * HBAR / m.energy_uncertainty();
        let schedule = MeasurementSchedule::from_pulse_count(total, 1).unwrap();
        assert_eq!(
            survival_repeated(&m, &schedule, dt).unwrap(),
            survival_single(&m, total, dt).unwrap()
        );
    }

    #[test]
    fn repeated_measurement_matches_pulsed_formula() {
        let m = model16();
        let tz = m.zeno_time().unwrap();
        let tau_m = 0.05 * tz;
        let total = 16.0 * tau_m;
        let dt = 0.01 * HBAR / m.energy_uncertainty();
        let schedule = MeasurementSchedule::new(total, tau_m).unwrap();
        let sim = survival_repeated(&m, &schedule, dt).unwrap();
        let formula = crate::tunneling::survival_pulsed(tau_m, tz, total).unwrap();
        assert_relative_eq!(sim, formula, max_relative = 0.05);
    }

    #[test]
    fn dense_bath_shows_exponential_window() {
        // 2N = 512 levels, bandwidth ~20x the target decay rate.
        let omega = 1e9;
        let n = 256usize;
        let gamma_target = n as f64 * omega / 20.0;
        let coupling = HBAR * (gamma_target * omega / std::f64::consts::PI).sqrt();
        let m = BathModel::new(n, HBAR * omega, coupling).unwrap();
        let dt = m.max_step();
        let t_end = 2.5 / gamma_target;
        let traj = evolve_bath(&m, t_end, dt).unwrap();

        let fit = fit_decay_rate(&traj, (0.3 / gamma_target, 2.0 / gamma_target)).unwrap();
        let gamma_fit = -fit.slope / 2.0;
        assert!(gamma_fit > 0.0);
        assert!(
            fit.r_squared >= 0.99,
            "exponential window not linear enough: r^2 = {}",
            fit.r_squared
        );
        // The fitted rate is reported, not pinned to a formula; it should
        // at least sit at the right order of magnitude.
        assert!(gamma_fit > 0.1 * gamma_target && gamma_fit < 10.0 * gamma_target);
    }

    #[test]
    fn synthetic_exponents_distinguish_regimes() {
        let times: Vec<f64> = (1..200).map(|k| 1e-8 * 1.05_f64.powi(k)).collect();

        // Quadratic: 1 - P = c t^2.
        let c = 1e4;
        let quad: Vec<Complex64> = times
            .iter()
            .map(|&t| Complex64::new((1.0 - c * t * t).sqrt(), 0.0))
            .collect();
        let traj = AmplitudeTrajectory::from_reference_amplitudes(times.clone(), quad).unwrap();
        let fit = short_time_exponent(&traj).unwrap();
        assert_abs_diff_eq!(fit.slope, 2.0, epsilon = 1e-6);
        assert!(fit.r_squared > 1.0 - 1e-9);

        // Exponential: P = exp(-2 gamma t), small decay looks linear in t.
        let gamma = 1.0;
        let expo: Vec<Complex64> = times
            .iter()
            .map(|&t| Complex64::new((-gamma * t).exp(), 0.0))
            .collect();
        let traj = AmplitudeTrajectory::from_reference_amplitudes(times, expo).unwrap();
        let fit = short_time_exponent(&traj).unwrap();
        assert_abs_diff_eq!(fit.slope, 1.0, epsilon = 0.01);
    }

    #[test]
    fn sparse_window_is_rejected() {
        let times = vec![0.0, 1.0, 2.0];
        let a0 = vec![Complex64::new(1.0, 0.0); 3];
        let traj = AmplitudeTrajectory::from_reference_amplitudes(times, a0).unwrap();
        assert!(matches!(
            short_time_exponent(&traj),
            Err(Error::QuadraticWindowTooSparse { .. })
        ));
    }

    #[test]
    fn decay_fit_on_synthetic_exponential() {
        let gamma = 1e9;
        let times: Vec<f64> = (0..=1000).map(|k| k as f64 * 1e-12).collect();
        let a0: Vec<Complex64> = times
            .iter()
            .map(|&t| Complex64::new((-gamma * t).exp(), 0.0))
            .collect();
        let traj = AmplitudeTrajectory::from_reference_amplitudes(times, a0).unwrap();
        let fit = fit_decay_rate(&traj, (1e-10, 9e-10)).unwrap();
        assert_relative_eq!(-fit.slope / 2.0, gamma, max_relative = 1e-6);
        assert!(fit.r_squared > 1.0 - 1e-12);

        assert!(matches!(
            fit_decay_rate(&traj, (0.5e-9, 2e-9)),
            Err(Error::WindowOutsideTrajectory { .. })
        ));
    }

    #[test]
    fn decay_fit_flat_when_nothing_decays() {
        let m = BathModel::new(4, 1e-26, 0.0).unwrap();
        let traj = evolve_bath(&m, 1e-10, 1e-12).unwrap();
        let fit = fit_decay_rate(&traj, (1e-11, 9e-11)).unwrap();
        assert_abs_diff_eq!(-fit.slope / 2.0, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn schedule_construction() {
        let s = MeasurementSchedule::new(1.0, 0.3).unwrap();
        assert_eq!(s.n_pulses(), 3);
        let s = MeasurementSchedule::from_pulse_count(1.0, 4).unwrap();
        assert_eq!(s.tau_m(), 0.25);
        assert!(MeasurementSchedule::new(0.1, 0.3).is_err());
        assert!(MeasurementSchedule::new(1.0, 0.0).is_err());
    }

    #[test]
    fn csv_export_shape() {
        let m = BathModel::new(2, 1e-26, 1e-25).unwrap();
        let traj = evolve_bath(&m, 1e-12, 1e-13).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t_seconds,re_a0,im_a0,p_survival,bath_norm"
        );
        assert_eq!(text.lines().count(), traj.len() + 1);
        assert!(text.ends_with('\n'));
        assert!(!text.contains('\r'));
    }
}
