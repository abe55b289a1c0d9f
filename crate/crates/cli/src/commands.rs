//! The computation commands: argument resolution, library dispatch,
//! record assembly, and side-channel CSV files (curves, trajectories).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use zenodwell::bathsim::{
    evolve_bath, fit_decay_rate, short_time_exponent, survival_repeated, BathModel,
    MeasurementSchedule,
};
use zenodwell::constants::{seconds_to_picoseconds, HBAR};
use zenodwell::dissipation::{decay_gamma, EnergyTriple};
use zenodwell::doublewell::{
    asymmetry_epsilon, bias_coefficient, bias_h, extrema_closed, ground_energy_k0,
    potential_shape, tunneling_condition, zeno_time_switching, BiasSpec, DoubleWellParams,
};
use zenodwell::numerics::ToleranceSpec;
use zenodwell::tunneling::{
    dwell_closed, dwell_weak_numeric, survival_exponential, survival_pulsed,
    survival_pulsed_integer, zeno_time_geometric, zeno_time_variance, zeno_time_weak, DwellForm,
    MeasurementWindow,
};

use crate::cli::{BathsimArgs, DoublewellArgs, DwellArgs, SurvivalArgs, ZenoArgs};
use crate::records::{fmt_float, InputQuantity, ResultRecord, Unit};
use crate::units::{
    parse_or_default, parse_quantity, parse_required, parse_required_integer, Dimension,
};
use crate::AppError;

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), AppError> {
    fs::write(path, bytes)
        .map_err(|e| AppError::Io(format!("cannot write {}: {e}", path.display())))
}

fn triple_from_flags(
    hi: &Option<String>,
    hf: &Option<String>,
    h0: &Option<String>,
) -> Result<Option<(EnergyTriple, BTreeMap<String, InputQuantity>)>, AppError> {
    match (hi, hf, h0) {
        (None, None, None) => Ok(None),
        (Some(hi), Some(hf), Some(h0)) => {
            let hi = parse_quantity("hi", hi, Dimension::Energy)?;
            let hf = parse_quantity("hf", hf, Dimension::Energy)?;
            let h0 = parse_quantity("h0", h0, Dimension::Energy)?;
            let triple = EnergyTriple::new(hi, hf, h0)?;
            let mut inputs = BTreeMap::new();
            for (name, value) in [("hi", hi), ("hf", hf), ("h0", h0)] {
                inputs.insert(
                    name.to_string(),
                    InputQuantity {
                        value,
                        unit: Unit::Joule.symbol().to_string(),
                    },
                );
            }
            Ok(Some((triple, inputs)))
        }
        _ => Err(AppError::Usage(
            "the energy triple needs all three of --hi, --hf, --h0".into(),
        )),
    }
}

// ---------------------------------------------------------------------
// dwell
// ---------------------------------------------------------------------

pub fn dwell(args: &DwellArgs) -> Result<Vec<ResultRecord>, AppError> {
    let tau_m = parse_required("tm", &args.tm, Dimension::Time)?;
    let window = MeasurementWindow::from_duration(tau_m)?;

    let triple = triple_from_flags(&args.hi, &args.hf, &args.h0)?;
    let (gamma, mut inputs) = match (&args.gamma, triple) {
        (Some(g), None) => {
            let gamma = parse_quantity("gamma", g, Dimension::Rate)?;
            let mut inputs = BTreeMap::new();
            inputs.insert(
                "gamma".to_string(),
                InputQuantity {
                    value: gamma,
                    unit: Unit::PerSecond.symbol().to_string(),
                },
            );
            (gamma, inputs)
        }
        (None, Some((triple, inputs))) => (decay_gamma(&triple), inputs),
        (Some(_), Some(_)) => {
            return Err(AppError::Usage(
                "give either --gamma or the energy triple, not both".into(),
            ))
        }
        (None, None) => {
            return Err(AppError::Usage(
                "dwell needs --gamma or the energy triple --hi/--hf/--h0".into(),
            ))
        }
    };
    inputs.insert(
        "tm".to_string(),
        InputQuantity {
            value: tau_m,
            unit: Unit::Second.symbol().to_string(),
        },
    );

    let tol = ToleranceSpec::default();
    let mut records = Vec::new();

    if args.all {
        let coth = dwell_closed(gamma, &window, DwellForm::Coth)?;
        let tanh = dwell_closed(gamma, &window, DwellForm::Tanh)?;
        let numeric = dwell_weak_numeric(gamma, &window, &tol)?;
        records.push(
            ResultRecord::new("dwell_time_paper_coth", coth, Unit::Second, "dwell.coth")
                .with_inputs(&inputs),
        );
        records.push(
            ResultRecord::new("dwell_time_derived_tanh", tanh, Unit::Second, "dwell.tanh")
                .with_inputs(&inputs),
        );
        records.push(
            ResultRecord::new("dwell_time_numeric", numeric, Unit::Second, "dwell.integral")
                .with_inputs(&inputs),
        );
        records.push(
            ResultRecord::new(
                "duality_check",
                coth * tanh * gamma * gamma,
                Unit::Dimensionless,
                "dwell.duality",
            )
            .with_inputs(&inputs),
        );
        return Ok(records);
    }

    let form = args.form.as_deref().unwrap_or("paper-coth");
    let (value, formula) = match form {
        "paper-coth" => (dwell_closed(gamma, &window, DwellForm::Coth)?, "dwell.coth"),
        "derived-tanh" => (dwell_closed(gamma, &window, DwellForm::Tanh)?, "dwell.tanh"),
        "numeric" => (dwell_weak_numeric(gamma, &window, &tol)?, "dwell.integral"),
        other => {
            return Err(AppError::Usage(format!(
                "--form must be paper-coth, derived-tanh, or numeric, got '{other}'"
            )))
        }
    };
    records.push(
        ResultRecord::new("dwell_time", value, Unit::Second, formula).with_inputs(&inputs),
    );
    Ok(records)
}

// ---------------------------------------------------------------------
// zeno
// ---------------------------------------------------------------------

pub fn zeno(args: &ZenoArgs) -> Result<Vec<ResultRecord>, AppError> {
    let triple = triple_from_flags(&args.hi, &args.hf, &args.h0)?;

    let mut groups = 0;
    if args.epsilon0.is_some() {
        groups += 1;
    }
    if triple.is_some() {
        groups += 1;
    }
    if args.delta_h.is_some() {
        groups += 1;
    }
    if args.tau_l.is_some() || args.tau_m.is_some() {
        groups += 1;
    }
    if groups != 1 {
        return Err(AppError::Usage(
            "zeno needs exactly one input: --epsilon0, the energy triple, \
             --delta-h, or --tau-l with --tau-m"
                .into(),
        ));
    }

    let (seconds, formula, inputs) = if let Some(raw) = &args.epsilon0 {
        let eps = parse_quantity("epsilon0", raw, Dimension::Energy)?;
        let bias = BiasSpec::new(eps, eps.abs())?;
        let mut inputs = BTreeMap::new();
        inputs.insert(
            "epsilon0".to_string(),
            InputQuantity {
                value: eps,
                unit: Unit::Joule.symbol().to_string(),
            },
        );
        (zeno_time_switching(&bias)?, "zeno.switching", inputs)
    } else if let Some((triple, inputs)) = triple {
        (zeno_time_weak(&triple)?, "zeno.weak", inputs)
    } else if let Some(raw) = &args.delta_h {
        let dh = parse_quantity("delta-h", raw, Dimension::Energy)?;
        let mut inputs = BTreeMap::new();
        inputs.insert(
            "delta_h".to_string(),
            InputQuantity {
                value: dh,
                unit: Unit::Joule.symbol().to_string(),
            },
        );
        (zeno_time_variance(dh)?, "zeno.variance", inputs)
    } else {
        let tau_l = parse_required("tau-l", &args.tau_l, Dimension::Time)?;
        let tau_m = parse_required("tau-m", &args.tau_m, Dimension::Time)?;
        let mut inputs = BTreeMap::new();
        for (name, value) in [("tau_l", tau_l), ("tau_m", tau_m)] {
            inputs.insert(
                name.to_string(),
                InputQuantity {
                    value,
                    unit: Unit::Second.symbol().to_string(),
                },
            );
        }
        (zeno_time_geometric(tau_l, tau_m)?, "zeno.geometric", inputs)
    };

    Ok(vec![
        ResultRecord::new("zeno_time", seconds, Unit::Second, formula).with_inputs(&inputs),
        ResultRecord::new(
            "zeno_time_ps",
            seconds_to_picoseconds(seconds),
            Unit::Picosecond,
            formula,
        )
        .with_inputs(&inputs),
    ])
}

// ---------------------------------------------------------------------
// doublewell
// ---------------------------------------------------------------------

struct WellSetup {
    params: DoubleWellParams,
    /// True when the caller pinned real SI scales, so joule outputs mean
    /// something.
    absolute: bool,
}

fn resolve_well(args: &DoublewellArgs) -> Result<WellSetup, AppError> {
    let coeff_a = parse_or_default("A", &args.coeff_a, Dimension::Bare, 14.0)?;
    let coeff_b = parse_or_default("B", &args.coeff_b, Dimension::Bare, 45.0)?;

    let si_given = [&args.m, &args.omega0, &args.a]
        .iter()
        .filter(|v| v.is_some())
        .count();
    if si_given > 0 && si_given < 3 {
        return Err(AppError::Usage(
            "give all three of --m, --omega0, --a or none".into(),
        ));
    }

    if si_given == 3 {
        if args.beta2.is_some() {
            return Err(AppError::Usage(
                "--beta2 conflicts with --m/--omega0/--a (beta^2 is derived from them)".into(),
            ));
        }
        if args.v0.is_some() {
            return Err(AppError::Usage(
                "--v0 conflicts with --m/--omega0/--a (V0 is derived from them)".into(),
            ));
        }
        let m = parse_required("m", &args.m, Dimension::Bare)?;
        let omega0 = parse_required("omega0", &args.omega0, Dimension::Rate)?;
        let a = parse_required("a", &args.a, Dimension::Bare)?;
        return Ok(WellSetup {
            params: DoubleWellParams::new(m, omega0, a, coeff_a, coeff_b)?,
            absolute: true,
        });
    }

    let beta_sq = parse_or_default("beta2", &args.beta2, Dimension::Bare, 1.0)?;
    if let Some(raw) = &args.v0 {
        let v0 = parse_quantity("v0", raw, Dimension::Energy)?;
        if !(v0 > 0.0) {
            return Err(AppError::Domain("V0 must be positive".into()));
        }
        // Pin V0 and beta^2 with a = 1: omega0 = 2 V0/(hbar beta^2),
        // m = hbar beta^2 / omega0.
        let omega0 = 2.0 * v0 / (HBAR * beta_sq);
        let m = HBAR * beta_sq / omega0;
        return Ok(WellSetup {
            params: DoubleWellParams::new(m, omega0, 1.0, coeff_a, coeff_b)?,
            absolute: true,
        });
    }

    Ok(WellSetup {
        params: DoubleWellParams::from_beta_sq(coeff_a, coeff_b, beta_sq)?,
        absolute: false,
    })
}

pub fn doublewell(args: &DoublewellArgs) -> Result<Vec<ResultRecord>, AppError> {
    let setup = resolve_well(args)?;
    let p = &setup.params;
    let coeff_a = p.coeff_a();
    let coeff_b = p.coeff_b();
    let beta_sq = p.beta_sq();

    let mut inputs = BTreeMap::new();
    for (name, value) in [("A", coeff_a), ("B", coeff_b), ("beta2", beta_sq)] {
        inputs.insert(
            name.to_string(),
            InputQuantity {
                value,
                unit: Unit::Dimensionless.symbol().to_string(),
            },
        );
    }

    let (_, xi1, xi2) = extrema_closed(coeff_a, coeff_b)?;
    let eps_over_v0 = potential_shape(xi2, coeff_a, coeff_b);
    let k0 = ground_energy_k0(beta_sq, coeff_b);
    let coefficient = bias_coefficient(coeff_a, coeff_b)?;

    let mut records = vec![
        ResultRecord::new("xi1", xi1, Unit::Dimensionless, "doublewell.extrema")
            .with_inputs(&inputs),
        ResultRecord::new("xi2", xi2, Unit::Dimensionless, "doublewell.extrema")
            .with_inputs(&inputs),
        ResultRecord::new(
            "epsilon0_over_v0",
            eps_over_v0,
            Unit::Dimensionless,
            "doublewell.asymmetry",
        )
        .with_inputs(&inputs),
        ResultRecord::new("k0", k0, Unit::Dimensionless, "doublewell.ground_energy")
            .with_inputs(&inputs),
        ResultRecord::new(
            "bias_coefficient",
            coefficient,
            Unit::Dimensionless,
            "doublewell.bias",
        )
        .with_inputs(&inputs),
        ResultRecord::new(
            "tunneling_allowed",
            if tunneling_condition(beta_sq) { 1.0 } else { 0.0 },
            Unit::Dimensionless,
            "doublewell.condition",
        )
        .with_inputs(&inputs),
    ];

    // Absolute energies only when the caller pinned real scales.
    let mut eps_joule = None;
    if setup.absolute {
        let v0 = p.v0();
        let eps = asymmetry_epsilon(p);
        let h = bias_h(p);
        eps_joule = Some(eps);
        records.push(
            ResultRecord::new("v0", v0, Unit::Joule, "doublewell.scale").with_inputs(&inputs),
        );
        records.push(
            ResultRecord::new("epsilon0", eps, Unit::Joule, "doublewell.asymmetry")
                .with_inputs(&inputs),
        );
        records.push(
            ResultRecord::new("h", h, Unit::Joule, "doublewell.bias").with_inputs(&inputs),
        );
    }

    // Switching Zeno time from an explicit asymmetry or the derived one.
    let eps_for_zeno = match &args.epsilon0 {
        Some(raw) => Some(parse_quantity("epsilon0", raw, Dimension::Energy)?),
        None => eps_joule,
    };
    if let Some(eps) = eps_for_zeno {
        let bias = BiasSpec::new(eps, eps.abs())?;
        let tz = zeno_time_switching(&bias)?;
        let rec = ResultRecord::new("zeno_time_switching", tz, Unit::Second, "zeno.switching")
            .with_inputs(&inputs)
            .with_input("epsilon0", eps, Unit::Joule);
        records.push(rec.clone());
        records.push(ResultRecord {
            name: "zeno_time_switching_ps".to_string(),
            value: seconds_to_picoseconds(tz),
            unit: Unit::Picosecond.symbol().to_string(),
            ..rec
        });
    }

    if let Some(path) = &args.curve {
        let points = match &args.curve_points {
            Some(raw) => parse_required_integer("curve-points", &Some(raw.clone()))? as usize,
            None => 501,
        };
        if points < 2 {
            return Err(AppError::Usage("--curve-points must be at least 2".into()));
        }
        let margin = 0.15 * xi2;
        let lo = -margin;
        let hi = xi2 + margin;
        let mut buf = Vec::new();
        writeln!(buf, "xi,V_over_V0").map_err(|e| AppError::Io(e.to_string()))?;
        for k in 0..points {
            let xi = lo + (hi - lo) * k as f64 / (points - 1) as f64;
            writeln!(
                buf,
                "{},{}",
                fmt_float(xi),
                fmt_float(potential_shape(xi, coeff_a, coeff_b))
            )
            .map_err(|e| AppError::Io(e.to_string()))?;
        }
        write_file(path, &buf)?;
    }

    Ok(records)
}

// ---------------------------------------------------------------------
// survival
// ---------------------------------------------------------------------

pub fn survival(args: &SurvivalArgs) -> Result<Vec<ResultRecord>, AppError> {
    let tau_z = parse_required("tau-z", &args.tau_z, Dimension::Time)?;
    let tau_m = parse_required("tau-m", &args.tau_m, Dimension::Time)?;
    let total_t = parse_required("T", &args.total_t, Dimension::Time)?;

    let mut inputs = BTreeMap::new();
    for (name, value) in [("tau_z", tau_z), ("tau_m", tau_m), ("T", total_t)] {
        inputs.insert(
            name.to_string(),
            InputQuantity {
                value,
                unit: Unit::Second.symbol().to_string(),
            },
        );
    }

    let pulsed = survival_pulsed(tau_m, tau_z, total_t)?;
    let exponential = survival_exponential(tau_m, tau_z, total_t)?;

    let mut records = vec![
        ResultRecord::new(
            "survival_pulsed",
            pulsed,
            Unit::Dimensionless,
            "survival.pulsed",
        )
        .with_inputs(&inputs),
        ResultRecord::new(
            "survival_exponential",
            exponential,
            Unit::Dimensionless,
            "survival.exponential",
        )
        .with_inputs(&inputs),
        ResultRecord::new(
            "difference",
            pulsed - exponential,
            Unit::Dimensionless,
            "survival.difference",
        )
        .with_inputs(&inputs),
    ];

    if args.integer_pulses {
        let p = survival_pulsed_integer(tau_m, tau_z, total_t)?;
        records.push(
            ResultRecord::new(
                "survival_pulsed_integer",
                p.probability,
                Unit::Dimensionless,
                "survival.pulsed_integer",
            )
            .with_inputs(&inputs),
        );
        records.push(
            ResultRecord::new(
                "full_pulses",
                p.full_pulses as f64,
                Unit::Dimensionless,
                "survival.pulsed_integer",
            )
            .with_inputs(&inputs),
        );
        records.push(
            ResultRecord::new(
                "remainder",
                p.remainder,
                Unit::Second,
                "survival.pulsed_integer",
            )
            .with_inputs(&inputs),
        );
    }

    if let Some(path) = &args.curve {
        let points = match &args.curve_points {
            Some(raw) => parse_required_integer("curve-points", &Some(raw.clone()))? as usize,
            None => 200,
        };
        if points < 2 {
            return Err(AppError::Usage("--curve-points must be at least 2".into()));
        }
        let t_lo = tau_m.max(total_t / points as f64);
        let mut buf = Vec::new();
        writeln!(buf, "T,survival_pulsed,survival_exponential,difference")
            .map_err(|e| AppError::Io(e.to_string()))?;
        for k in 0..points {
            let t = t_lo + (total_t - t_lo) * k as f64 / (points - 1) as f64;
            let p = survival_pulsed(tau_m, tau_z, t)?;
            let e = survival_exponential(tau_m, tau_z, t)?;
            writeln!(
                buf,
                "{},{},{},{}",
                fmt_float(t),
                fmt_float(p),
                fmt_float(e),
                fmt_float(p - e)
            )
            .map_err(|e| AppError::Io(e.to_string()))?;
        }
        write_file(path, &buf)?;
    }

    Ok(records)
}

// ---------------------------------------------------------------------
// bathsim
// ---------------------------------------------------------------------

pub fn bathsim(args: &BathsimArgs) -> Result<Vec<ResultRecord>, AppError> {
    let n_levels = parse_required_integer("N", &args.n_levels)? as usize;
    let delta_e = parse_required("dE", &args.delta_e, Dimension::Energy)?;
    let coupling = parse_required("coupling", &args.coupling, Dimension::Energy)?;
    let t_end = parse_required("t-end", &args.t_end, Dimension::Time)?;
    let dt = parse_required("dt", &args.dt, Dimension::Time)?;

    let model = BathModel::new(n_levels, delta_e, coupling)?;
    let traj = evolve_bath(&model, t_end, dt)?;

    let mut inputs = BTreeMap::new();
    inputs.insert(
        "N".to_string(),
        InputQuantity {
            value: n_levels as f64,
            unit: Unit::Dimensionless.symbol().to_string(),
        },
    );
    for (name, value, unit) in [
        ("dE", delta_e, Unit::Joule),
        ("coupling", coupling, Unit::Joule),
        ("t_end", t_end, Unit::Second),
        ("dt", dt, Unit::Second),
    ] {
        inputs.insert(
            name.to_string(),
            InputQuantity {
                value,
                unit: unit.symbol().to_string(),
            },
        );
    }

    let mut records = vec![
        ResultRecord::new(
            "energy_uncertainty",
            model.energy_uncertainty(),
            Unit::Joule,
            "bath.uncertainty",
        )
        .with_inputs(&inputs),
        ResultRecord::new(
            "final_survival",
            traj.final_survival(),
            Unit::Dimensionless,
            "bath.evolve",
        )
        .with_inputs(&inputs),
        ResultRecord::new(
            "norm_drift",
            traj.max_norm_drift(),
            Unit::Dimensionless,
            "bath.evolve",
        )
        .with_inputs(&inputs),
    ];
    if let Ok(tz) = model.zeno_time() {
        records.push(
            ResultRecord::new("zeno_time", tz, Unit::Second, "zeno.variance")
                .with_inputs(&inputs),
        );
    }

    // Short-time exponent when the quadratic window is populated.
    match short_time_exponent(&traj) {
        Ok(fit) => {
            records.push(
                ResultRecord::new(
                    "short_time_exponent",
                    fit.slope,
                    Unit::Dimensionless,
                    "bath.exponent",
                )
                .with_inputs(&inputs),
            );
            records.push(
                ResultRecord::new(
                    "short_time_r2",
                    fit.r_squared,
                    Unit::Dimensionless,
                    "bath.exponent",
                )
                .with_inputs(&inputs),
            );
        }
        Err(e) => eprintln!("note: short-time exponent skipped: {e}"),
    }

    // Decay-rate fit over a window given as fractions of t_end.
    let (frac_lo, frac_hi) = match &args.fit_window {
        Some(raw) => {
            let (lo, hi) = raw.split_once(':').ok_or_else(|| {
                AppError::Usage("--fit-window must be 'lo:hi' fractions of t-end".into())
            })?;
            let lo: f64 = lo.trim().parse().map_err(|_| {
                AppError::Usage(format!("--fit-window: bad fraction '{lo}'"))
            })?;
            let hi: f64 = hi.trim().parse().map_err(|_| {
                AppError::Usage(format!("--fit-window: bad fraction '{hi}'"))
            })?;
            if !(0.0 <= lo && lo < hi && hi <= 1.0) {
                return Err(AppError::Usage(
                    "--fit-window fractions must satisfy 0 <= lo < hi <= 1".into(),
                ));
            }
            (lo, hi)
        }
        None => (0.1, 0.9),
    };
    if t_end > 0.0 {
        match fit_decay_rate(&traj, (frac_lo * t_end, frac_hi * t_end)) {
            Ok(fit) => {
                records.push(
                    ResultRecord::new(
                        "gamma_fit",
                        -fit.slope / 2.0,
                        Unit::PerSecond,
                        "bath.decay_fit",
                    )
                    .with_inputs(&inputs),
                );
                records.push(
                    ResultRecord::new(
                        "decay_fit_r2",
                        fit.r_squared,
                        Unit::Dimensionless,
                        "bath.decay_fit",
                    )
                    .with_inputs(&inputs),
                );
            }
            Err(e) => eprintln!("note: decay-rate fit skipped: {e}"),
        }
    }

    if let Some(raw) = &args.pulses {
        let pulses = parse_required_integer("pulses", &Some(raw.clone()))?;
        let schedule = MeasurementSchedule::from_pulse_count(t_end, pulses)?;
        let p = survival_repeated(&model, &schedule, dt)?;
        records.push(
            ResultRecord::new(
                "survival_repeated",
                p,
                Unit::Dimensionless,
                "survival.repeated",
            )
            .with_inputs(&inputs)
            .with_input("pulses", pulses as f64, Unit::Dimensionless),
        );
        records.push(
            ResultRecord::new("tau_m", schedule.tau_m(), Unit::Second, "survival.repeated")
                .with_inputs(&inputs)
                .with_input("pulses", pulses as f64, Unit::Dimensionless),
        );
    }

    if let Some(path) = &args.traj {
        let mut buf = Vec::new();
        traj.write_csv(&mut buf)
            .map_err(|e| AppError::Io(e.to_string()))?;
        write_file(path, &buf)?;
    }

    Ok(records)
}
