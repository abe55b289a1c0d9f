//! Fixed-step fourth-order Runge–Kutta integration of complex amplitude
//! vectors.
//!
//! The right-hand side writes its derivative into a caller-provided
//! buffer, `rhs(t, y, dydt)`, so the hot loop allocates nothing.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Reusable RK4 stage buffers for a fixed state dimension.
#[derive(Debug, Clone)]
pub struct Rk4Stepper {
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Rk4Stepper {
    pub fn new(dim: usize) -> Self {
        let zeros = vec![Complex64::new(0.0, 0.0); dim];
        Self {
            k1: zeros.clone(),
            k2: zeros.clone(),
            k3: zeros.clone(),
            k4: zeros.clone(),
            scratch: zeros,
        }
    }

    /// Advance `y` in place from `t` to `t + h`.
    pub fn step<F>(&mut self, rhs: &F, t: f64, y: &mut [Complex64], h: f64)
    where
        F: Fn(f64, &[Complex64], &mut [Complex64]),
    {
        let n = y.len();
        rhs(t, y, &mut self.k1);
        for i in 0..n {
            self.scratch[i] = y[i] + 0.5 * h * self.k1[i];
        }
        rhs(t + 0.5 * h, &self.scratch, &mut self.k2);
        for i in 0..n {
            self.scratch[i] = y[i] + 0.5 * h * self.k2[i];
        }
        rhs(t + 0.5 * h, &self.scratch, &mut self.k3);
        for i in 0..n {
            self.scratch[i] = y[i] + h * self.k3[i];
        }
        rhs(t + h, &self.scratch, &mut self.k4);
        for i in 0..n {
            y[i] += h / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

/// Integrate `dy/dt = rhs(t, y)` from `t0` to `t1` with uniform steps.
///
/// The requested `dt` is shrunk just enough that an integer number of
/// steps lands exactly on `t1`, so the final time is within `dt` of `t1`
/// and in fact equal to it. The trajectory is sampled at every step,
/// starting with `(t0, y0)`.
pub fn solve_ode_complex<F>(
    rhs: F,
    y0: &[Complex64],
    t0: f64,
    t1: f64,
    dt: f64,
) -> Result<Vec<(f64, Vec<Complex64>)>>
where
    F: Fn(f64, &[Complex64], &mut [Complex64]),
{
    if !(dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    if !(t1 >= t0) {
        return Err(Error::BackwardTimeSpan { t0, t1 });
    }

    let span = t1 - t0;
    let mut out = Vec::new();
    out.push((t0, y0.to_vec()));
    if span == 0.0 {
        return Ok(out);
    }

    let n_steps = (span / dt).ceil().max(1.0) as usize;
    let h = span / n_steps as f64;
    let mut y = y0.to_vec();
    let mut stepper = Rk4Stepper::new(y.len());
    out.reserve(n_steps);

    for k in 0..n_steps {
        let t = t0 + k as f64 * h;
        stepper.step(&rhs, t, &mut y, h);
        if y.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteState {
                step: k + 1,
                t: t + h,
            });
        }
        let t_next = if k + 1 == n_steps {
            t1
        } else {
            t0 + (k + 1) as f64 * h
        };
        out.push((t_next, y.clone()));
    }
    Ok(out)
}
