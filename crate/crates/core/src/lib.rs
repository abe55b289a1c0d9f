//! Weak-measurement dwell times and quantum Zeno time scales for
//! dissipative quantum systems.
//!
//! The library models an excited level decaying through its environment at
//! a rate set by a discrete time step (the chronon) of a retarded evolution
//! equation. On top of that it computes
//!
//! * the weak value of the dwell time between pre- and post-selection,
//!   both as a numerical integral and in closed form ([`tunneling`]),
//! * the Zeno time scales below which repeated projective measurement
//!   freezes the decay ([`tunneling`]),
//! * the asymmetric quartic double well used to describe an atom switching
//!   between two surfaces, with a variational Gaussian ground state
//!   ([`doublewell`]),
//! * a discretized bath model whose exact unitary dynamics serve as an
//!   empirical check on the decay and Zeno formulas ([`bathsim`]).
//!
//! Every closed form is backed by an independent numerical oracle
//! (adaptive quadrature, bracketed root finding, RK4 integration) from
//! [`numerics`]. All quantities are carried in SI units; the constants
//! live in [`constants`].

pub mod bathsim;
pub mod constants;
pub mod dissipation;
pub mod doublewell;
mod error;
pub mod numerics;
pub mod tunneling;

pub use error::{Error, Result};
