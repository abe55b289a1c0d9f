//! Flag definitions.
//!
//! Numeric flags take an optional unit suffix (`0.5K`, `21.6ps`, `1e-25J`,
//! `1e9 1/s` written as `1e91/s`); bare numbers use each flag's documented
//! SI default. See [`crate::units`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Config;

#[derive(Parser, Debug)]
#[command(
    name = "zenodwell",
    version,
    about = "Dwell times and Zeno time scales for dissipative tunneling"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,

    /// Flat `key = value` file supplying defaults; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// Emit the result records as a JSON array on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the result records to a CSV file.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weak dwell time from the decay constant or an energy triple.
    Dwell(DwellArgs),
    /// Zeno time from an uncertainty, lifetime pair, energy triple, or
    /// asymmetry energy.
    Zeno(ZenoArgs),
    /// Asymmetric quartic double well: extrema, ground energy, bias,
    /// switching Zeno time.
    Doublewell(DoublewellArgs),
    /// Pulsed and exponential survival probabilities.
    Survival(SurvivalArgs),
    /// Evolve the discretized bath model and fit its decay regimes.
    Bathsim(BathsimArgs),
    /// Evaluate another command over a parameter grid, emitting CSV.
    Sweep(SweepArgs),
}

macro_rules! merge_options {
    ($out:expr, $cfg:expr, $( ($field:ident, $key:literal) ),+ $(,)?) => {
        $( if $out.$field.is_none() { $out.$field = $cfg.get($key); } )+
    };
}

#[derive(Args, Debug, Clone, Default)]
pub struct DwellArgs {
    /// Decay constant (default unit 1/s).
    #[arg(long)]
    pub gamma: Option<String>,

    /// Pre-selected level (default unit J; also eV, K).
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<String>,

    /// Post-selected level (default unit J; also eV, K).
    #[arg(long, allow_hyphen_values = true)]
    pub hf: Option<String>,

    /// Ground/reference level (default unit J; also eV, K).
    #[arg(long, allow_hyphen_values = true)]
    pub h0: Option<String>,

    /// Measurement time (default unit s; also ps).
    #[arg(long)]
    pub tm: Option<String>,

    /// Closed form to evaluate: paper-coth (default), derived-tanh, or
    /// numeric.
    #[arg(long)]
    pub form: Option<String>,

    /// Emit all three forms side by side plus the duality check
    /// coth_form * tanh_form * gamma^2.
    #[arg(long)]
    pub all: bool,
}

impl DwellArgs {
    pub fn merged(&self, cfg: &Config) -> Self {
        let mut out = self.clone();
        merge_options!(
            out, cfg,
            (gamma, "gamma"),
            (hi, "hi"),
            (hf, "hf"),
            (h0, "h0"),
            (tm, "tm"),
            (form, "form"),
        );
        out
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct ZenoArgs {
    /// Energy uncertainty of the initial state (default unit J; also eV, K).
    #[arg(long = "delta-h")]
    pub delta_h: Option<String>,

    /// Lifetime of the decaying state (default unit s; also ps).
    #[arg(long = "tau-l")]
    pub tau_l: Option<String>,

    /// Measurement time (default unit s; also ps).
    #[arg(long = "tau-m")]
    pub tau_m: Option<String>,

    /// Pre-selected level (default unit J; also eV, K).
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<String>,

    /// Post-selected level (default unit J; also eV, K).
    #[arg(long, allow_hyphen_values = true)]
    pub hf: Option<String>,

    /// Ground/reference level (default unit J; also eV, K).
    #[arg(long, allow_hyphen_values = true)]
    pub h0: Option<String>,

    /// Asymmetry energy for the switching form (default unit J; also eV, K).
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon0: Option<String>,
}

impl ZenoArgs {
    pub fn merged(&self, cfg: &Config) -> Self {
        let mut out = self.clone();
        merge_options!(
            out, cfg,
            (delta_h, "delta-h"),
            (tau_l, "tau-l"),
            (tau_m, "tau-m"),
            (hi, "hi"),
            (hf, "hf"),
            (h0, "h0"),
            (epsilon0, "epsilon0"),
        );
        out
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct DoublewellArgs {
    /// Cubic asymmetry coefficient A (dimensionless, default 14).
    #[arg(long = "A")]
    pub coeff_a: Option<String>,

    /// Quadratic coefficient B (dimensionless, default 45).
    #[arg(long = "B")]
    pub coeff_b: Option<String>,

    /// Quantum-ness parameter beta^2 (dimensionless, default 1).
    #[arg(long)]
    pub beta2: Option<String>,

    /// Energy scale V0 (default unit J; also eV, K). Enables absolute
    /// joule outputs.
    #[arg(long)]
    pub v0: Option<String>,

    /// Particle mass (kg). Give together with --omega0 and --a.
    #[arg(long)]
    pub m: Option<String>,

    /// Harmonic frequency (default unit 1/s).
    #[arg(long)]
    pub omega0: Option<String>,

    /// Length scale (m). Give together with --m and --omega0.
    #[arg(long)]
    pub a: Option<String>,

    /// Override the asymmetry energy for the switching Zeno time
    /// (default unit J; also eV, K).
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon0: Option<String>,

    /// Write potential curve samples (columns xi, V_over_V0) here.
    #[arg(long, value_name = "PATH")]
    pub curve: Option<PathBuf>,

    /// Number of curve samples (default 501).
    #[arg(long)]
    pub curve_points: Option<String>,
}

impl DoublewellArgs {
    pub fn merged(&self, cfg: &Config) -> Self {
        let mut out = self.clone();
        merge_options!(
            out, cfg,
            (coeff_a, "A"),
            (coeff_b, "B"),
            (beta2, "beta2"),
            (v0, "v0"),
            (m, "m"),
            (omega0, "omega0"),
            (a, "a"),
            (epsilon0, "epsilon0"),
            (curve_points, "curve-points"),
        );
        out
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct SurvivalArgs {
    /// Zeno time (default unit s; also ps).
    #[arg(long = "tau-z")]
    pub tau_z: Option<String>,

    /// Pulse interval (default unit s; also ps).
    #[arg(long = "tau-m")]
    pub tau_m: Option<String>,

    /// Total observation time (default unit s; also ps).
    #[arg(long = "T")]
    pub total_t: Option<String>,

    /// Count whole pulses only and report the remainder interval.
    #[arg(long)]
    pub integer_pulses: bool,

    /// Write a survival curve swept over T (CSV) here.
    #[arg(long, value_name = "PATH")]
    pub curve: Option<PathBuf>,

    /// Number of curve samples (default 200).
    #[arg(long)]
    pub curve_points: Option<String>,
}

impl SurvivalArgs {
    pub fn merged(&self, cfg: &Config) -> Self {
        let mut out = self.clone();
        merge_options!(
            out, cfg,
            (tau_z, "tau-z"),
            (tau_m, "tau-m"),
            (total_t, "T"),
            (curve_points, "curve-points"),
        );
        out
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct BathsimArgs {
    /// Bath half-width N; the state holds 2N+1 amplitudes.
    #[arg(long = "N")]
    pub n_levels: Option<String>,

    /// Bath level spacing (default unit J; also eV, K).
    #[arg(long = "dE")]
    pub delta_e: Option<String>,

    /// Reference-bath coupling (default unit J; also eV, K).
    #[arg(long)]
    pub coupling: Option<String>,

    /// Evolution time (default unit s; also ps).
    #[arg(long = "t-end")]
    pub t_end: Option<String>,

    /// Integration step (default unit s; also ps).
    #[arg(long)]
    pub dt: Option<String>,

    /// Repeated projective measurements: pulse count over t-end.
    #[arg(long)]
    pub pulses: Option<String>,

    /// Write the trajectory CSV (t_seconds, re_a0, im_a0, p_survival,
    /// bath_norm) here.
    #[arg(long, value_name = "PATH")]
    pub traj: Option<PathBuf>,

    /// Decay-fit window as fractions of t-end, `lo:hi` (default 0.1:0.9).
    #[arg(long = "fit-window")]
    pub fit_window: Option<String>,
}

impl BathsimArgs {
    pub fn merged(&self, cfg: &Config) -> Self {
        let mut out = self.clone();
        merge_options!(
            out, cfg,
            (n_levels, "N"),
            (delta_e, "dE"),
            (coupling, "coupling"),
            (t_end, "t-end"),
            (dt, "dt"),
            (pulses, "pulses"),
            (fit_window, "fit-window"),
        );
        out
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct SweepArgs {
    /// Base command to evaluate: dwell, zeno, doublewell, or survival.
    #[arg(long)]
    pub command: Option<String>,

    /// Grid spec `param=start:stop:points[:log]`; values are bare numbers
    /// in the parameter's default unit.
    #[arg(long)]
    pub sweep: Option<String>,

    /// Remaining flags are forwarded to the base command.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    pub rest: Vec<String>,
}
