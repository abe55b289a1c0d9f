//! Unit-suffix grammar for numeric flag values: `<number><unit>` with
//! unit drawn from {J, eV, K, s, ps, 1/s}. Bare numbers take the flag's
//! default SI unit. Kelvin converts through the thermal energy k_B·T and
//! electronvolts through the exact eV definition.

use zenodwell::constants::{ev_to_joule, kelvin_to_joule, PICOSECOND};

use crate::AppError;

/// What kind of quantity a flag expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// Joules; suffixes J, eV, K.
    Energy,
    /// Seconds; suffixes s, ps.
    Time,
    /// Inverse seconds; suffix 1/s.
    Rate,
    /// Dimensionless; no suffix allowed.
    Bare,
}

fn parse_number(flag: &str, text: &str) -> Result<f64, AppError> {
    text.trim().parse::<f64>().map_err(|_| {
        AppError::Usage(format!("--{flag}: cannot parse '{text}' as a number"))
    })
}

/// Parse a suffixed quantity into SI base units.
pub fn parse_quantity(flag: &str, raw: &str, dim: Dimension) -> Result<f64, AppError> {
    let s = raw.trim();
    if s.is_empty() {
        return Err(AppError::Usage(format!("--{flag}: empty value")));
    }
    match dim {
        Dimension::Energy => {
            // eV before J/K so the trailing V is not misread.
            if let Some(body) = s.strip_suffix("eV") {
                Ok(ev_to_joule(parse_number(flag, body)?))
            } else if let Some(body) = s.strip_suffix('J') {
                parse_number(flag, body)
            } else if let Some(body) = s.strip_suffix('K') {
                Ok(kelvin_to_joule(parse_number(flag, body)?))
            } else if ends_with_unit_letter(s) {
                Err(AppError::Usage(format!(
                    "--{flag}: expected an energy with suffix J, eV, or K, got '{s}'"
                )))
            } else {
                parse_number(flag, s)
            }
        }
        Dimension::Time => {
            if let Some(body) = s.strip_suffix("ps") {
                Ok(parse_number(flag, body)? * PICOSECOND)
            } else if let Some(body) = s.strip_suffix('s') {
                parse_number(flag, body)
            } else if ends_with_unit_letter(s) {
                Err(AppError::Usage(format!(
                    "--{flag}: expected a time with suffix s or ps, got '{s}'"
                )))
            } else {
                parse_number(flag, s)
            }
        }
        Dimension::Rate => {
            if let Some(body) = s.strip_suffix("1/s") {
                parse_number(flag, body)
            } else if ends_with_unit_letter(s) {
                Err(AppError::Usage(format!(
                    "--{flag}: expected a rate with suffix 1/s, got '{s}'"
                )))
            } else {
                parse_number(flag, s)
            }
        }
        Dimension::Bare => {
            if ends_with_unit_letter(s) {
                Err(AppError::Usage(format!(
                    "--{flag}: expected a bare number, got '{s}'"
                )))
            } else {
                parse_number(flag, s)
            }
        }
    }
}

// A trailing ASCII letter marks an (attempted) unit suffix; plain float
// syntax never ends in a letter.
fn ends_with_unit_letter(s: &str) -> bool {
    s.chars().last().is_some_and(|c| c.is_ascii_alphabetic())
}

/// Parse an optional flag, falling back to `default` when absent.
pub fn parse_or_default(
    flag: &str,
    raw: &Option<String>,
    dim: Dimension,
    default: f64,
) -> Result<f64, AppError> {
    match raw {
        Some(s) => parse_quantity(flag, s, dim),
        None => Ok(default),
    }
}

/// Parse a required flag, reporting a usage error when missing.
pub fn parse_required(flag: &str, raw: &Option<String>, dim: Dimension) -> Result<f64, AppError> {
    match raw {
        Some(s) => parse_quantity(flag, s, dim),
        None => Err(AppError::Usage(format!("missing required flag --{flag}"))),
    }
}

/// Parse a required positive integer flag.
pub fn parse_required_integer(flag: &str, raw: &Option<String>) -> Result<u64, AppError> {
    let s = raw
        .as_ref()
        .ok_or_else(|| AppError::Usage(format!("missing required flag --{flag}")))?;
    s.trim().parse::<u64>().map_err(|_| {
        AppError::Usage(format!("--{flag}: cannot parse '{s}' as a positive integer"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use zenodwell::constants::{EV, KB};

    #[test]
    fn energy_suffixes() {
        assert_eq!(
            parse_quantity("e", "0.5K", Dimension::Energy).unwrap(),
            0.5 * KB
        );
        assert_eq!(
            parse_quantity("e", "2eV", Dimension::Energy).unwrap(),
            2.0 * EV
        );
        assert_eq!(
            parse_quantity("e", "1e-25J", Dimension::Energy).unwrap(),
            1e-25
        );
        assert_eq!(parse_quantity("e", "3e-24", Dimension::Energy).unwrap(), 3e-24);
        assert!(parse_quantity("e", "5s", Dimension::Energy).is_err());
    }

    #[test]
    fn time_suffixes() {
        assert_eq!(parse_quantity("t", "3ps", Dimension::Time).unwrap(), 3e-12);
        assert_eq!(parse_quantity("t", "2s", Dimension::Time).unwrap(), 2.0);
        assert_eq!(parse_quantity("t", "0.25", Dimension::Time).unwrap(), 0.25);
        assert!(parse_quantity("t", "1J", Dimension::Time).is_err());
    }

    #[test]
    fn rate_suffix() {
        assert_eq!(parse_quantity("g", "1e91/s", Dimension::Rate).unwrap(), 1e9);
        assert_eq!(parse_quantity("g", "2.5", Dimension::Rate).unwrap(), 2.5);
        assert!(parse_quantity("g", "2K", Dimension::Rate).is_err());
    }

    #[test]
    fn bare_numbers_reject_suffixes() {
        assert_eq!(parse_quantity("B", "45", Dimension::Bare).unwrap(), 45.0);
        assert!(parse_quantity("B", "45J", Dimension::Bare).is_err());
    }

    #[test]
    fn garbage_is_a_usage_error() {
        let err = parse_quantity("x", "abc", Dimension::Time).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
