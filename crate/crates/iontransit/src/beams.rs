//! Paraxial Gaussian beam model and the transit coupling envelope seen by
//! an ion crossing the beam at constant velocity.

use serde::{Deserialize, Serialize};

/// Errors from beam geometry and envelope construction.
#[derive(Debug, Clone, thiserror::Error)]
pub enum BeamError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("beam angle must lie strictly inside (0, pi), got {0} rad")]
    AngleOutOfRange(f64),
    #[error(
        "axial offset {z} m outside the collimated region (|z| < {limit} m); \
         curved wavefronts are not modeled"
    )]
    ParaxialDomain { z: f64, limit: f64 },
    #[error("transport direction is parallel to the beams (sin gamma = 0)")]
    DegenerateGeometry,
}

/// Relative orientation of the two Raman beams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BeamConfig {
    /// Nearly equal wavevectors; net photon recoil ~ 0 (one-qubit rotations).
    CoPropagating,
    /// Opposed wavevectors; momentum transfer 2k (two-qubit phase gates).
    CounterPropagating,
}

/// A focused TEM00 Gaussian beam pair crossing the transport axis.
/// Both beams share one transverse mode function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamGeometry {
    /// Waist (1/e field radius at focus), m.
    pub waist: f64,
    /// Optical wavelength, m.
    pub wavelength: f64,
    /// Angle between the beam axis and the transport direction, rad,
    /// strictly inside (0, pi).
    pub angle: f64,
    pub config: BeamConfig,
    /// Fraction of the Rayleigh range within which the collimated-beam
    /// approximation is accepted (default 0.1).
    pub paraxial_guard: f64,
}

impl BeamGeometry {
    pub fn new(
        waist: f64,
        wavelength: f64,
        angle: f64,
        config: BeamConfig,
    ) -> Result<Self, BeamError> {
        if !(waist > 0.0) {
            return Err(BeamError::NonPositive("beam waist"));
        }
        if !(wavelength > 0.0) {
            return Err(BeamError::NonPositive("wavelength"));
        }
        if !(angle > 0.0 && angle < std::f64::consts::PI) {
            return Err(BeamError::AngleOutOfRange(angle));
        }
        Ok(BeamGeometry { waist, wavelength, angle, config, paraxial_guard: 0.1 })
    }

    /// Wavenumber k = 2 pi / lambda, rad/m.
    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength
    }

    /// Rayleigh range z_r = k w0^2 / 2, m.
    pub fn rayleigh_range(&self) -> f64 {
        self.wavenumber() * self.waist * self.waist / 2.0
    }

    /// Relative field amplitude e^{-r^2/w0^2} at transverse radius `r` and
    /// axial offset `z` from the focus, valid only deep inside the Rayleigh
    /// range. Outside `paraxial_guard * z_r` the curved-wavefront region
    /// begins and the query is rejected rather than extrapolated.
    pub fn field_amplitude(&self, r: f64, z: f64) -> Result<f64, BeamError> {
        let limit = self.paraxial_guard * self.rayleigh_range();
        if z.abs() >= limit {
            return Err(BeamError::ParaxialDomain { z, limit });
        }
        Ok((-r * r / (self.waist * self.waist)).exp())
    }

    /// Gaussian coupling envelope swept by an ion crossing at speed `v`,
    /// with peak two-photon Rabi rate `omega_peak` at closest approach.
    pub fn envelope(&self, v: f64, omega_peak: f64) -> Result<TransitEnvelope, BeamError> {
        if !(v > 0.0) {
            return Err(BeamError::NonPositive("transport speed"));
        }
        let sin_gamma = self.angle.sin();
        if sin_gamma <= 1e-12 {
            return Err(BeamError::DegenerateGeometry);
        }
        Ok(TransitEnvelope {
            omega_peak,
            tau: self.waist / (std::f64::consts::SQRT_2 * v * sin_gamma),
            speed: v,
            start_offset: None,
        })
    }
}

/// Time-dependent Raman coupling Omega(t) = Omega_peak e^{-t^2/tau^2} felt
/// by an ion transported through the beam, with transit time constant
/// tau = w0 / (sqrt(2) v sin(gamma)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitEnvelope {
    /// Peak two-photon Rabi rate at beam center, rad/s.
    pub omega_peak: f64,
    /// Transit time constant, s.
    pub tau: f64,
    /// Transport speed, m/s.
    pub speed: f64,
    /// Distance from beam center at which the traverse starts, m
    /// (None = far enough that truncation is negligible).
    pub start_offset: Option<f64>,
}

impl TransitEnvelope {
    /// Instantaneous coupling Omega(t), rad/s; t = 0 at closest approach.
    pub fn coupling(&self, t: f64) -> f64 {
        let u = t / self.tau;
        self.omega_peak * (-u * u).exp()
    }
}
