//! Physical constants in SI units.
//!
//! All values are CODATA 2018 exact-by-definition values.

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant (J/K).
pub const KB: f64 = 1.380_649e-23;

/// Electronvolt (J).
pub const EV: f64 = 1.602_176_634e-19;

/// One picosecond (s).
pub const PICOSECOND: f64 = 1e-12;

/// Convert a temperature to the thermal energy scale k_B·T (J).
pub fn kelvin_to_joule(t_kelvin: f64) -> f64 {
    KB * t_kelvin
}

/// Convert an energy in electronvolts to joules.
pub fn ev_to_joule(e_ev: f64) -> f64 {
    EV * e_ev
}

/// Convert seconds to picoseconds.
pub fn seconds_to_picoseconds(t_seconds: f64) -> f64 {
    t_seconds / PICOSECOND
}
