//! Design and verification toolkit for transport quantum logic gates on
//! trapped ions: one-qubit rotations and two-qubit geometric phase gates
//! executed by moving ions at constant velocity through stationary laser
//! beams, plus a laser-free variant driven by a periodic magnet array.
//!
//! The crate is organized around a high-accuracy error-function/quadrature
//! substrate ([`numerics`]), the trap/beam physics ([`physics`], [`beams`]),
//! the gate engines ([`rotations`], [`phasegate`], [`sympathetic`],
//! [`washboard`]), and an independent brute-force integrator
//! ([`drive_oracle`]) that cross-checks every closed form.

pub mod beams;
pub mod cli;
pub mod drive_oracle;
pub mod numerics;
pub mod phasegate;
pub mod physics;
pub mod rotations;
pub mod sympathetic;
pub mod washboard;

pub use num_complex::Complex64;
