//! Self-contained numerical kernels used as independent oracles for the
//! analytic formulas in the rest of the crate.
//!
//! * [`integrate`] — globally adaptive Gauss–Kronrod quadrature,
//! * [`find_root`] — bracketed bisection with secant acceleration,
//! * [`solve_ode_complex`] — fixed-step RK4 for complex amplitude vectors,
//! * [`fit_line`] — ordinary least squares with coefficient of
//!   determination.
//!
//! All operations are pure functions of their inputs and safe to call
//! concurrently. Improper integrals are handled by caller-provided
//! truncation: every integrand in this crate decays as a known Gaussian
//! or exponential, so the truncation bound is computable up front.

pub mod fit;
pub mod ode;
pub mod quadrature;
pub mod roots;

pub use fit::{fit_line, FitResult};
pub use ode::{solve_ode_complex, Rk4Stepper};
pub use quadrature::{integrate, ToleranceSpec};
pub use roots::find_root;
