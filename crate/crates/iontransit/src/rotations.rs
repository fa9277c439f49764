//! One-qubit transport gates: Bloch rotations from a beam transit, envelope
//! truncation error, velocity solving, Z rotations and the Z-R-Z synthesis
//! of arbitrary one-qubit unitaries, plus the per-site laser phase pitch.
//!
//! Convention: the pulse area is integral Omega(t) dt; the Bloch rotation
//! angle is twice that (a pulse area of pi/2 flips the qubit). Velocity
//! solving targets the Bloch angle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::beams::{BeamError, BeamGeometry, TransitEnvelope};
use crate::numerics::erf_real;
use crate::physics::IonSpecies;

const TAU_2PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone, thiserror::Error)]
pub enum RotationError {
    #[error("matrix is not unitary (max |U U^dag - I| = {0:.3e})")]
    NotUnitary(f64),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error(transparent)]
    Beam(#[from] BeamError),
}

/// Complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }

    pub fn adjoint(&self) -> Mat2 {
        let a = &self.0;
        Mat2([[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]])
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let a = &self.0;
        Mat2([[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]])
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// max entrywise |self - rhs|
    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        m
    }

    fn unitarity_defect(&self) -> f64 {
        self.mul(&self.adjoint()).max_abs_diff(&Mat2::identity())
    }
}

/// Bloch-sphere rotation R(theta, phi): polar angle theta about the equator
/// axis selected by the relative laser phase phi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneQubitRotation {
    pub theta: f64,
    pub phi: f64,
}

impl OneQubitRotation {
    pub fn matrix(&self) -> Mat2 {
        let c = Complex64::new((self.theta / 2.0).cos(), 0.0);
        let s = (self.theta / 2.0).sin();
        let mi = Complex64::new(0.0, -1.0);
        Mat2([
            [c, mi * s * Complex64::from_polar(1.0, -self.phi)],
            [mi * s * Complex64::from_polar(1.0, self.phi), c],
        ])
    }
}

/// Rotation about the Bloch z-axis: |up> -> e^{i phi} |up>,
/// |down> -> e^{-i phi} |down>.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZRotation {
    pub phi: f64,
}

impl ZRotation {
    pub fn matrix(&self) -> Mat2 {
        Mat2([
            [Complex64::from_polar(1.0, self.phi), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, -self.phi)],
        ])
    }
}

/// Fold the trailing Z of one synthesized operation into the leading Z of
/// the next: Z(b) Z(a) = Z(a + b), reduced mod 2 pi.
pub fn merge_z(prev_final: ZRotation, next_initial: ZRotation) -> ZRotation {
    ZRotation { phi: (prev_final.phi + next_initial.phi).rem_euclid(TAU_2PI) }
}

/// Pulse area of a traverse from -T to +T (None: full traverse):
/// integral Omega(t) dt = Omega_peak tau sqrt(pi) erf(T / tau).
pub fn pulse_area(env: &TransitEnvelope, half_window: Option<f64>) -> f64 {
    let full = env.omega_peak * env.tau * std::f64::consts::PI.sqrt();
    match half_window {
        Some(t) => full * erf_real(t / env.tau),
        None => full,
    }
}

/// Bloch rotation angle accumulated over the traverse: twice the pulse area.
pub fn rotation_angle(env: &TransitEnvelope, half_window: Option<f64>) -> f64 {
    2.0 * pulse_area(env, half_window)
}

/// Relative angle error and infidelity proxy from starting the traverse a
/// finite distance `start_offset` (m along the transport axis) from beam
/// center instead of infinitely far away.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationError {
    /// d(theta)/theta = 1 - erf(sqrt(2) D sin(gamma) / w0)
    pub relative_angle_error: f64,
    /// 1 - F ~ (d(theta)/theta)^2
    pub infidelity_bound: f64,
}

pub fn truncation_error(start_offset: f64, beam: &BeamGeometry) -> TruncationError {
    debug_assert!(start_offset >= 0.0);
    let rel = 1.0
        - erf_real(std::f64::consts::SQRT_2 * start_offset * beam.angle.sin() / beam.waist);
    TruncationError { relative_angle_error: rel, infidelity_bound: rel * rel }
}

/// Ratio of transport-gate duration to an equivalent square pulse on a
/// stationary ion, for a traverse truncated `d_cutoff` waists from center:
/// T_t / T_s = d_cutoff sqrt(2/pi) (~2.07 at the 2.6-waist cutoff).
pub fn transit_time_ratio(d_cutoff: f64) -> f64 {
    d_cutoff * (2.0 / std::f64::consts::PI).sqrt()
}

/// Transport speed that realizes the target Bloch angle over a full
/// traverse. Closed form: theta = sqrt(2 pi) Omega_peak w0 / (v sin gamma).
pub fn solve_velocity(
    beam: &BeamGeometry,
    omega_peak: f64,
    theta_target: f64,
) -> Result<f64, RotationError> {
    if !(omega_peak > 0.0) {
        return Err(RotationError::NonPositive("peak Rabi rate"));
    }
    if !(theta_target > 0.0) {
        return Err(RotationError::NonPositive("target rotation angle"));
    }
    let sin_gamma = beam.angle.sin();
    if sin_gamma <= 1e-12 {
        return Err(RotationError::Beam(BeamError::DegenerateGeometry));
    }
    Ok((TAU_2PI).sqrt() * omega_peak * beam.waist / (theta_target * sin_gamma))
}

/// Relative laser phase picked up between interaction sites separated by a
/// beam path of length `s0`, reduced mod 2 pi: 2 pi s0 / Lambda_0.
pub fn site_phase(s0: f64, species: &IonSpecies) -> f64 {
    debug_assert!(s0 >= 0.0);
    (TAU_2PI * s0 / species.hyperfine_wavelength()).rem_euclid(TAU_2PI)
}

/// Z-R-Z synthesis of a one-qubit unitary at a fixed rotation azimuth:
/// U = e^{i global_phase} Z(phi3) R(theta2, azimuth) Z(phi1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZrzDecomposition {
    pub phi1: f64,
    pub theta2: f64,
    pub phi3: f64,
    pub azimuth: f64,
    pub global_phase: f64,
}

impl ZrzDecomposition {
    pub fn matrix(&self) -> Mat2 {
        let r = OneQubitRotation { theta: self.theta2, phi: self.azimuth }.matrix();
        let z3 = ZRotation { phi: self.phi3 }.matrix();
        let z1 = ZRotation { phi: self.phi1 }.matrix();
        z3.mul(&r).mul(&z1).scale(Complex64::from_polar(1.0, self.global_phase))
    }
}

/// Decompose a unitary into Z(phi3) R(theta2, azimuth) Z(phi1) up to a
/// global phase, with theta2 in [0, pi]. The azimuth is the fixed relative
/// laser phase available at the rotation site.
pub fn decompose_one_qubit(u: &Mat2, azimuth: f64) -> Result<ZrzDecomposition, RotationError> {
    let defect = u.unitarity_defect();
    if defect > 1e-10 {
        return Err(RotationError::NotUnitary(defect));
    }
    // strip the global phase: V = e^{-i arg(det)/2} U has det ~ 1, so
    // V = [[a, b], [-conj b, conj a]]
    let global_phase = u.det().arg() / 2.0;
    let v = u.scale(Complex64::from_polar(1.0, -global_phase));
    let a = v.0[0][0];
    let b = v.0[0][1];
    let theta2 = 2.0 * b.norm().atan2(a.norm());
    // a = cos(theta2/2) e^{i(phi3+phi1)}, b = -i sin(theta2/2) e^{i(phi3-phi1-azimuth)}
    let sum = if a.norm() > 1e-12 { a.arg() } else { 0.0 };
    let diff = if b.norm() > 1e-12 {
        b.arg() + std::f64::consts::FRAC_PI_2 + azimuth
    } else {
        0.0
    };
    Ok(ZrzDecomposition {
        phi1: (sum - diff) / 2.0,
        theta2,
        phi3: (sum + diff) / 2.0,
        azimuth,
        global_phase,
    })
}
