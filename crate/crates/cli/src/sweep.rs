//! Parameter sweeps: evaluate a base command over a 1-D grid and emit
//! one CSV row per grid point, in grid order.

use std::fs;
use std::io::Write;

use clap::Parser;

use crate::cli::{Cli, Command, OutputArgs, SweepArgs};
use crate::commands;
use crate::config::Config;
use crate::records::{fmt_float, ResultRecord};
use crate::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scale {
    Linear,
    Logarithmic,
}

#[derive(Debug, Clone)]
struct SweepSpec {
    parameter: String,
    start: f64,
    stop: f64,
    points: usize,
    scale: Scale,
}

impl SweepSpec {
    fn parse(raw: &str) -> Result<Self, AppError> {
        let usage = || {
            AppError::Usage(format!(
                "--sweep must be 'param=start:stop:points[:log]', got '{raw}'"
            ))
        };
        let (parameter, grid) = raw.split_once('=').ok_or_else(usage)?;
        let parts: Vec<&str> = grid.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(usage());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| usage())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| usage())?;
        let points: usize = parts[2].trim().parse().map_err(|_| usage())?;
        let scale = match parts.get(3).map(|s| s.trim()) {
            None => Scale::Linear,
            Some("log") => Scale::Logarithmic,
            Some(_) => return Err(usage()),
        };
        if points < 1 {
            return Err(AppError::Usage("--sweep needs at least 1 point".into()));
        }
        if points >= 2 && !(start < stop) {
            return Err(AppError::Usage("--sweep needs start < stop".into()));
        }
        if scale == Scale::Logarithmic && !(start > 0.0) {
            return Err(AppError::Usage(
                "--sweep log scale needs start > 0".into(),
            ));
        }
        Ok(Self {
            parameter: parameter.trim().to_string(),
            start,
            stop,
            points,
            scale,
        })
    }

    fn grid(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let n = self.points;
        (0..n)
            .map(|k| {
                let frac = k as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * frac,
                    Scale::Logarithmic => {
                        (self.start.ln() + (self.stop.ln() - self.start.ln()) * frac).exp()
                    }
                }
            })
            .collect()
    }
}

fn sweepable_parameters(command: &str) -> Result<&'static [&'static str], AppError> {
    match command {
        "dwell" => Ok(&["gamma", "tm"]),
        "zeno" => Ok(&["delta-h", "tau-l", "tau-m", "epsilon0"]),
        "doublewell" => Ok(&["A", "B", "beta2"]),
        "survival" => Ok(&["tau-z", "tau-m", "T"]),
        other => Err(AppError::Usage(format!(
            "--command must be dwell, zeno, doublewell, or survival, got '{other}'"
        ))),
    }
}

fn evaluate_point(
    command: &str,
    rest: &[String],
    parameter: &str,
    value: f64,
    cfg: &Config,
) -> Result<Vec<ResultRecord>, AppError> {
    let mut argv: Vec<String> = vec!["zenodwell".into(), command.into()];
    argv.extend(rest.iter().cloned());
    argv.push(format!("--{parameter}"));
    argv.push(format!("{value}"));

    let cli = Cli::try_parse_from(&argv).map_err(|e| AppError::Usage(e.to_string()))?;
    match &cli.command {
        Command::Dwell(args) => commands::dwell(&args.merged(cfg)),
        Command::Zeno(args) => commands::zeno(&args.merged(cfg)),
        Command::Doublewell(args) => commands::doublewell(&args.merged(cfg)),
        Command::Survival(args) => commands::survival(&args.merged(cfg)),
        _ => Err(AppError::Usage(
            "sweep supports dwell, zeno, doublewell, and survival".into(),
        )),
    }
}

pub fn run(args: &SweepArgs, cfg: &Config, out: &OutputArgs) -> Result<(), AppError> {
    let command = args
        .command
        .as_deref()
        .ok_or_else(|| AppError::Usage("missing required flag --command".into()))?;
    let spec_raw = args
        .sweep
        .as_deref()
        .ok_or_else(|| AppError::Usage("missing required flag --sweep".into()))?;
    let spec = SweepSpec::parse(spec_raw)?;

    let allowed = sweepable_parameters(command)?;
    if !allowed.contains(&spec.parameter.as_str()) {
        return Err(AppError::Usage(format!(
            "unknown sweep parameter '{}' for {command}; choose from {}",
            spec.parameter,
            allowed.join(", ")
        )));
    }
    let swept_flag = format!("--{}", spec.parameter);
    if args.rest.iter().any(|s| s == &swept_flag) {
        return Err(AppError::Usage(format!(
            "swept parameter {swept_flag} must not also be passed as a flag"
        )));
    }
    if out.json {
        return Err(AppError::Usage("sweep emits CSV; --json does not apply".into()));
    }

    let grid = spec.grid();
    let mut rows: Vec<(f64, Vec<ResultRecord>)> = Vec::with_capacity(grid.len());
    for value in grid {
        let records = evaluate_point(command, &args.rest, &spec.parameter, value, cfg)?;
        rows.push((value, records));
    }

    let header: Vec<String> = rows[0].1.iter().map(|r| r.name.clone()).collect();
    for (value, records) in &rows {
        let names: Vec<&str> = records.iter().map(|r| r.name.as_str()).collect();
        if names != header.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(AppError::Domain(format!(
                "record set changed across the grid at {} = {value}",
                spec.parameter
            )));
        }
    }

    let mut buf = Vec::new();
    writeln!(buf, "{},{}", spec.parameter, header.join(","))
        .map_err(|e| AppError::Io(e.to_string()))?;
    for (value, records) in &rows {
        let cells: Vec<String> = records.iter().map(|r| fmt_float(r.value)).collect();
        writeln!(buf, "{},{}", fmt_float(*value), cells.join(","))
            .map_err(|e| AppError::Io(e.to_string()))?;
    }

    match &out.csv {
        Some(path) => {
            fs::write(path, buf)
                .map_err(|e| AppError::Io(format!("cannot write {}: {e}", path.display())))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&buf)
                .map_err(|e| AppError::Io(e.to_string()))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_spec() {
        let s = SweepSpec::parse("gamma=0.001:10:50:log").unwrap();
        assert_eq!(s.parameter, "gamma");
        assert_eq!(s.points, 50);
        assert_eq!(s.scale, Scale::Logarithmic);
        let grid = s.grid();
        assert_eq!(grid.len(), 50);
        assert!((grid[0] - 0.001).abs() < 1e-12);
        assert!((grid[49] - 10.0).abs() < 1e-9);
    }

    #[test]
    fn single_point_grid() {
        let s = SweepSpec::parse("tm=2:2:1").unwrap();
        assert_eq!(s.grid(), vec![2.0]);
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(SweepSpec::parse("gamma").is_err());
        assert!(SweepSpec::parse("gamma=1:2").is_err());
        assert!(SweepSpec::parse("gamma=2:1:10").is_err());
        assert!(SweepSpec::parse("gamma=-1:2:10:log").is_err());
        assert!(SweepSpec::parse("gamma=1:2:10:cubic").is_err());
    }

    #[test]
    fn parameter_whitelists() {
        assert!(sweepable_parameters("dwell").unwrap().contains(&"gamma"));
        assert!(sweepable_parameters("bathsim").is_err());
    }
}
