use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors from the numerical kernels and the physics layers on top of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tolerance spec invalid: {0}")]
    InvalidTolerance(&'static str),

    #[error("integration bounds invalid: a = {a} must not exceed b = {b}")]
    InvalidBounds { a: f64, b: f64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions; \
         best estimate {best:e} with error bound {error_bound:e}"
    )]
    QuadratureDidNotConverge {
        best: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    #[error("non-finite integrand value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("root bracket [{lo}, {hi}] invalid: f has the same sign at both ends")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("root search did not converge within {iterations} iterations; best x = {best}")]
    RootDidNotConverge { best: f64, iterations: usize },

    #[error("step size must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("integration must run forward in time: t0 = {t0}, t1 = {t1}")]
    BackwardTimeSpan { t0: f64, t1: f64 },

    #[error("non-finite state at step {step} (t = {t:e})")]
    NonFiniteState { step: usize, t: f64 },

    #[error("line fit needs at least two samples, got {0}")]
    TooFewSamples(usize),

    #[error("line fit input lengths differ: {xs} x values vs {ys} y values")]
    MismatchedLengths { xs: usize, ys: usize },

    #[error("line fit degenerate: all x values equal")]
    DegenerateAbscissas,

    #[error("energy levels invalid: {0}")]
    InvalidEnergyTriple(&'static str),

    #[error(
        "chronon is zero; the exact logarithm degenerates and the rate \
         limit i(h_i - h_0)/hbar applies instead"
    )]
    ZeroChronon,

    #[error("chronon must be nonnegative, got {0}")]
    NegativeChronon(f64),

    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("measurement window invalid: t_f = {t_f} must exceed t_i = {t_i}")]
    InvalidWindow { t_i: f64, t_f: f64 },

    #[error("decay rate must be nonnegative, got {0}")]
    NegativeRate(f64),

    #[error(
        "coth dwell form diverges at gamma * tau_m = 0; the tanh form or \
         the numeric integral cover the zero-dissipation limit"
    )]
    CothPole,

    #[error("variance is negative beyond rounding: <H^2> - <H>^2 = {0:e}")]
    NegativeVariance(f64),

    #[error("zeno time undefined for zero energy uncertainty (an eigenstate never decays)")]
    ZeroUncertainty,

    #[error("zeno time undefined when the pre- and post-selected levels coincide (no dissipation)")]
    NoDissipation,

    #[error("pulse interval tau_m = {tau_m} must stay below the zeno time tau_z = {tau_z}")]
    PulseIntervalTooLong { tau_m: f64, tau_z: f64 },

    #[error("total time {total_t} shorter than one pulse interval {tau_m}")]
    TotalTimeTooShort { total_t: f64, tau_m: f64 },

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("no zeno-time input provided: {0}")]
    MissingZenoInput(&'static str),

    #[error("double-well parameters invalid: {0}")]
    InvalidDoubleWell(&'static str),

    #[error("no double-well structure: 9A^2 = {nine_a_sq} must exceed 32B = {thirty_two_b}")]
    NoDoubleWell { nine_a_sq: f64, thirty_two_b: f64 },

    #[error("asymmetry energy is zero; switching zeno time undefined")]
    ZeroAsymmetry,

    #[error("bath model invalid: {0}")]
    InvalidBathModel(&'static str),

    #[error("amplitude vector has dimension {got}, bath model needs {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("step dt = {dt:e} too coarse for the bath phases; use dt <= {suggested:e}")]
    StepTooLarge { dt: f64, suggested: f64 },

    #[error(
        "quadratic window holds {found} samples with 1e-8 <= 1 - P <= 1e-3; \
         need at least {needed}"
    )]
    QuadraticWindowTooSparse { found: usize, needed: usize },

    #[error("fit window [{lo:e}, {hi:e}] outside the trajectory span [{t0:e}, {t1:e}]")]
    WindowOutsideTrajectory { lo: f64, hi: f64, t0: f64, t1: f64 },

    #[error("survival probability {p:e} at t = {t:e} too small for a log fit")]
    SurvivalUnderflow { p: f64, t: f64 },

    #[error("measurement schedule invalid: {0}")]
    InvalidSchedule(&'static str),

    #[error("trajectory invalid: {0}")]
    InvalidTrajectory(&'static str),
}
