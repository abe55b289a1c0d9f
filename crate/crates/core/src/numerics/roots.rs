//! Bracketed root finding: bisection with secant acceleration.

use crate::error::{Error, Result};
use crate::numerics::ToleranceSpec;

/// Find a root of `f` inside the bracket `[lo, hi]`.
///
/// Requires a sign change, `f(lo)·f(hi) <= 0`. Converges when
/// `|f(x)| <= abs_tol` or the bracket width drops below `rel_tol·|x|`.
/// A secant step is tried each iteration and accepted when it lands
/// strictly inside the bracket and shrinks it; otherwise the step falls
/// back to bisection, so the bracket width halves at least every other
/// iteration.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: &ToleranceSpec) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa * fb < 0.0) {
        return Err(Error::InvalidBracket { lo, hi });
    }

    let converged = |x: f64, fx: f64, width: f64| -> bool {
        (tol.abs_tol > 0.0 && fx.abs() <= tol.abs_tol)
            || (tol.rel_tol > 0.0 && width <= tol.rel_tol * x.abs())
    };

    let max_iter = tol.max_subdivisions.max(100);
    for iter in 0..max_iter {
        let width = b - a;
        let mid = a + 0.5 * width;

        // Secant candidate from the bracket endpoints.
        let mut x = if iter % 2 == 0 && fb != fa {
            let xs = b - fb * (b - a) / (fb - fa);
            if xs > a && xs < b {
                xs
            } else {
                mid
            }
        } else {
            mid
        };
        if x <= a || x >= b {
            x = mid;
        }
        if x <= a || x >= b {
            // Bracket exhausted at f64 resolution.
            return Ok(if fa.abs() <= fb.abs() { a } else { b });
        }

        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fa * fx < 0.0 {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        if converged(x, fx, b - a) {
            return Ok(x);
        }
    }

    let best = if fa.abs() <= fb.abs() { a } else { b };
    Err(Error::RootDidNotConverge {
        best,
        iterations: max_iter,
    })
}
