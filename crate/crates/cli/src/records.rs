//! Named scalar results with units and provenance, plus the three output
//! formats (human table, JSON array, CSV).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::cli::OutputArgs;
use crate::AppError;

/// SI unit vocabulary for record values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Joule,
    Second,
    PerSecond,
    Kelvin,
    ElectronVolt,
    Dimensionless,
    Picosecond,
}

impl Unit {
    pub fn symbol(&self) -> &'static str {
        match self {
            Unit::Joule => "J",
            Unit::Second => "s",
            Unit::PerSecond => "s^-1",
            Unit::Kelvin => "K",
            Unit::ElectronVolt => "eV",
            Unit::Dimensionless => "dimensionless",
            Unit::Picosecond => "ps",
        }
    }
}

/// One named input that went into a result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputQuantity {
    pub value: f64,
    pub unit: String,
}

/// A named scalar result with its unit, formula id, and inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub name: String,
    pub value: f64,
    pub unit: String,
    pub formula_ref: String,
    pub inputs: BTreeMap<String, InputQuantity>,
}

impl ResultRecord {
    pub fn new(name: &str, value: f64, unit: Unit, formula_ref: &str) -> Self {
        Self {
            name: name.to_string(),
            value,
            unit: unit.symbol().to_string(),
            formula_ref: formula_ref.to_string(),
            inputs: BTreeMap::new(),
        }
    }

    pub fn with_input(mut self, name: &str, value: f64, unit: Unit) -> Self {
        self.inputs.insert(
            name.to_string(),
            InputQuantity {
                value,
                unit: unit.symbol().to_string(),
            },
        );
        self
    }

    pub fn with_inputs(mut self, inputs: &BTreeMap<String, InputQuantity>) -> Self {
        self.inputs.extend(inputs.iter().map(|(k, v)| (k.clone(), v.clone())));
        self
    }
}

/// Shortest round-trip float formatting with a fixed '.' separator;
/// scientific notation outside [1e-4, 1e6).
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.abs() >= 1e-4 && x.abs() < 1e6 {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Print records per the output flags and optionally write them as CSV.
pub fn emit(records: &[ResultRecord], out: &OutputArgs) -> Result<(), AppError> {
    if out.json {
        println!("{}", serde_json::to_string_pretty(records).expect("records serialize"));
    } else {
        for r in records {
            println!(
                "{:<28} {:>24} {:<14} [{}]",
                r.name,
                fmt_float(r.value),
                r.unit,
                r.formula_ref
            );
        }
    }
    if let Some(path) = &out.csv {
        let mut buf = Vec::new();
        write_records_csv(records, &mut buf)?;
        fs::write(path, buf)?;
    }
    Ok(())
}

/// CSV with columns `name,value,unit,formula_ref`.
pub fn write_records_csv<W: Write>(records: &[ResultRecord], mut out: W) -> Result<(), AppError> {
    writeln!(out, "name,value,unit,formula_ref")?;
    for r in records {
        writeln!(out, "{},{},{},{}", r.name, fmt_float(r.value), r.unit, r.formula_ref)?;
    }
    Ok(())
}
