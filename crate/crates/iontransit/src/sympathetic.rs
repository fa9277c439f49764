//! Gate drive on a general normal mode of a multi-ion crystal, for
//! configurations that co-trap refrigerator ions with the two qubit ions.
//! The mode eigenvector is an input (mixed-species mode structure is not
//! solved here); only the two qubit-ion amplitudes enter the drive.

use serde::{Deserialize, Serialize};

use crate::phasegate::{erfi_scaled_signed, DriveCoefficients};

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ModeError {
    #[error("mode frequency must be positive")]
    NonPositiveFrequency,
    #[error("eigenvector amplitudes must be finite")]
    NonFiniteAmplitude,
    #[error("eigenvector norm {0} exceeds 1 (amplitudes of a normalized mode)")]
    NotNormalized(f64),
    #[error("mode record needs at least omega and the two qubit amplitudes: {0}")]
    Malformed(String),
}

/// One motional eigenmode: frequency, the (real) eigenvector amplitudes on
/// the two qubit ions, and the remaining amplitudes on refrigerator ions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    /// Mode frequency, rad/s.
    pub omega_v: f64,
    /// Qubit-ion amplitudes of the normalized eigenvector.
    pub v1: f64,
    pub v2: f64,
    #[serde(default)]
    pub refrigerator_amplitudes: Vec<f64>,
}

impl ModeSpec {
    pub fn new(
        omega_v: f64,
        v1: f64,
        v2: f64,
        refrigerator_amplitudes: Vec<f64>,
    ) -> Result<Self, ModeError> {
        if !(omega_v > 0.0) {
            return Err(ModeError::NonPositiveFrequency);
        }
        let amps = [v1, v2].iter().chain(refrigerator_amplitudes.iter()).copied();
        let mut norm = 0.0;
        for a in amps {
            if !a.is_finite() {
                return Err(ModeError::NonFiniteAmplitude);
            }
            norm += a * a;
        }
        if norm > 1.0 + 1e-9 {
            return Err(ModeError::NotNormalized(norm));
        }
        Ok(ModeSpec { omega_v, v1, v2, refrigerator_amplitudes })
    }

    /// Parse one mode record `omega_hz,v1,v2[,r1,r2,...]`.
    pub fn from_csv_record(line: &str) -> Result<Self, ModeError> {
        let fields: Result<Vec<f64>, _> =
            line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        let fields = fields.map_err(|e| ModeError::Malformed(format!("{line:?}: {e}")))?;
        if fields.len() < 3 {
            return Err(ModeError::Malformed(format!("{line:?}: too few fields")));
        }
        ModeSpec::new(
            fields[0] * 2.0 * PI,
            fields[1],
            fields[2],
            fields[3..].to_vec(),
        )
    }

    /// The stretch mode of a bare two-ion crystal at `omega_v`.
    pub fn two_ion_stretch(omega_v: f64) -> Self {
        ModeSpec {
            omega_v,
            v1: std::f64::consts::FRAC_1_SQRT_2,
            v2: -std::f64::consts::FRAC_1_SQRT_2,
            refrigerator_amplitudes: vec![],
        }
    }
}

/// Drive amplitudes generalized to an arbitrary mode; reduces to the bare
/// two-ion coefficients at (v1, v2) = (1/sqrt2, -1/sqrt2) through the same
/// code path.
pub fn generalized_coefficients(
    mode: &ModeSpec,
    omega_up: f64,
    omega_down: f64,
    phi_half: f64,
) -> DriveCoefficients {
    DriveCoefficients::from_mode_amplitudes(mode.v1, mode.v2, omega_up, omega_down, phi_half)
}

/// Logical phase on a general mode:
///
///   Phi_L = pi e^{-delta^2 tau^2/2} erfi(delta tau/sqrt2)
///           v1 v2 eta^2 (Omega_up - Omega_down)^2 tau^2 cos(2 phi_half)
///
/// equal to the four-coefficient combination Phi_uu + Phi_dd - Phi_ud -
/// Phi_du, and to the two-ion closed form at v1 v2 = -1/2.
pub fn generalized_logic_phase(
    mode: &ModeSpec,
    omega_up: f64,
    omega_down: f64,
    eta: f64,
    delta: f64,
    tau: f64,
    phi_half: f64,
) -> f64 {
    let p = delta * tau / std::f64::consts::SQRT_2;
    let diff = omega_up - omega_down;
    PI * erfi_scaled_signed(p)
        * mode.v1
        * mode.v2
        * eta
        * eta
        * diff
        * diff
        * tau
        * tau
        * (2.0 * phi_half).cos()
}

/// Figure of merit for running the gate on this mode: |v1 v2| eta^2 with
/// the Lamb-Dicke factor evaluated at the mode frequency. Both qubit
/// amplitudes should be large while eta^2 ~ 1/omega_v favors low modes.
pub fn mode_suitability(mode: &ModeSpec, eta_at_mode: f64) -> f64 {
    (mode.v1 * mode.v2).abs() * eta_at_mode * eta_at_mode
}

/// How far the qubit-ion spacing sits from the nearest drive-phase lock
/// point dk_z d12 = n pi: returns (nearest n, deviation in rad). Reported,
/// not enforced.
pub fn spacing_phase_offset(delta_kz: f64, d12: f64) -> (i64, f64) {
    let x = delta_kz * d12 / PI;
    let n = x.round();
    (n as i64, (x - n) * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phasegate::{total_logic_phase, total_logic_phase_from_coefficients};
    use crate::physics::{IonSpecies, TrapContext};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn reduces_to_two_ion_coefficients_bitwise() {
        let mode = ModeSpec::two_ion_stretch(1e7);
        for phi in [0.0, 0.3, 1.9, PI] {
            let gen = generalized_coefficients(&mode, 2.2e6, -4.4e6, phi);
            let two = DriveCoefficients::two_ion_stretch(2.2e6, -4.4e6, phi);
            assert_eq!(gen, two, "shared code path must agree bit-for-bit");
        }
    }

    #[test]
    fn reduces_to_two_ion_logic_phase() {
        // v1 v2 = -1/2 reproduces the stretch-mode closed form, sign included
        let mode = ModeSpec::two_ion_stretch(1e7);
        let (up, down, eta, tau, phi) = (1.5e6, -3e6, 0.111, 2.1e-6, PI);
        let p = 2.7;
        let delta = p * SQRT_2 / tau;
        let gen = generalized_logic_phase(&mode, up, down, eta, delta, tau, phi);
        let two = total_logic_phase(up, down, eta, delta, tau, phi);
        assert!((gen - two).abs() <= 1e-14 * two.abs(), "{gen} vs {two}");
        assert!(gen < 0.0);
    }

    #[test]
    fn spectator_qubit_gives_no_entangling_phase() {
        // v2 = 0: every drive is proportional to a single-ion drive and the
        // logical-phase combination cancels
        let mode = ModeSpec::new(1e7, 0.8, 0.0, vec![0.3, 0.5]).unwrap();
        let c = generalized_coefficients(&mode, 2e6, 5e5, 0.9);
        assert_eq!(generalized_logic_phase(&mode, 2e6, 5e5, 0.1, 1e6, 1e-6, 0.9), 0.0);
        let four = total_logic_phase_from_coefficients(&c, 0.1, 1e6, 1e-6);
        assert!(four.abs() < 1e-12 * (2e6f64 * 2e6).powi(1) * 0.01);
    }

    #[test]
    fn symmetric_four_ion_stretch_mode() {
        // (q,r,r,q) reflection-symmetric stretch-type mode, v1 = -v2:
        // A_uu = -2 i v1 sin(phi) Omega_up
        let v1 = 0.62;
        let refr = (0.5f64 - v1 * v1).max(0.0).sqrt();
        let mode = ModeSpec::new(8e6, v1, -v1, vec![refr, -refr]).unwrap();
        for phi in [0.35f64, 1.1, 2.0] {
            let c = generalized_coefficients(&mode, 1.3e6, 0.4e6, phi);
            let want = num_complex::Complex64::new(0.0, -2.0 * v1 * phi.sin() * 1.3e6);
            assert!((c.a_uu - want).norm() < 1e-9);
        }
    }

    #[test]
    fn swap_symmetry_and_sign_flip() {
        let (up, down, eta, tau, phi) = (1.1e6, -0.7e6, 0.2, 1.6e-6, 0.77);
        let delta = 2.0 * SQRT_2 / tau;
        let m1 = ModeSpec::new(9e6, 0.6, -0.3, vec![]).unwrap();
        let m2 = ModeSpec::new(9e6, -0.3, 0.6, vec![]).unwrap();
        let c1 = generalized_coefficients(&m1, up, down, phi);
        let c2 = generalized_coefficients(&m2, up, down, phi);
        assert!((c1.a_ud.norm() - c2.a_du.norm()).abs() < 1e-9);
        assert!((c1.a_du.norm() - c2.a_ud.norm()).abs() < 1e-9);
        let p1 = generalized_logic_phase(&m1, up, down, eta, delta, tau, phi);
        let p2 = generalized_logic_phase(&m2, up, down, eta, delta, tau, phi);
        assert!((p1 - p2).abs() < 1e-14 * p1.abs());
        // global eigenvector sign flip
        let m3 = ModeSpec::new(9e6, -0.6, 0.3, vec![]).unwrap();
        let p3 = generalized_logic_phase(&m3, up, down, eta, delta, tau, phi);
        assert!((p1 - p3).abs() < 1e-14 * p1.abs());
    }

    #[test]
    fn two_path_agreement_random_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut kept = 0;
        while kept < 1000 {
            let v1: f64 = rng.gen_range(-0.7..0.7);
            let v2: f64 = rng.gen_range(-0.7..0.7);
            if (v1 * v2).abs() < 0.02 {
                continue;
            }
            let phi: f64 = rng.gen_range(-7.0..7.0);
            if (2.0 * phi).cos().abs() < 0.05 {
                continue;
            }
            kept += 1;
            let mode = ModeSpec::new(1e7, v1, v2, vec![]).unwrap();
            let down = rng.gen_range(0.5e6..5e6);
            let up = rng.gen_range(-3.0..0.8) * down;
            let eta = rng.gen_range(0.01..0.5);
            let tau = rng.gen_range(0.2e-6..30e-6);
            let p = rng.gen_range(0.05..4.5);
            let delta = p * SQRT_2 / tau;
            let closed = generalized_logic_phase(&mode, up, down, eta, delta, tau, phi);
            let coeffs = generalized_coefficients(&mode, up, down, phi);
            let four = total_logic_phase_from_coefficients(&coeffs, eta, delta, tau);
            assert!(
                (closed - four).abs() < 1e-10 * closed.abs(),
                "v=({v1},{v2}) phi={phi}: {closed} vs {four}"
            );
        }
    }

    #[test]
    fn suitability_prefers_low_frequency_modes() {
        let ctx = TrapContext::new(IonSpecies::be9(), 2.0 * PI * 4e6).unwrap();
        let dkz = 2.0 * IonSpecies::be9().wavenumber() * 0.5;
        let com = ModeSpec::new(ctx.omega_com, 0.5 * SQRT_2, 0.5 * SQRT_2, vec![]).unwrap();
        let stretch = ModeSpec::two_ion_stretch(ctx.omega_stretch());
        let s_com = mode_suitability(&com, ctx.lamb_dicke_at(dkz, com.omega_v));
        let s_str = mode_suitability(&stretch, ctx.lamb_dicke_at(dkz, stretch.omega_v));
        // same |v1 v2| = 1/2; eta^2 ~ 1/omega gives the sqrt(3) ratio
        assert!((s_com / s_str - 3.0f64.sqrt()).abs() < 1e-12);
        // zero qubit amplitude: mode is useless
        let dead = ModeSpec::new(1e7, 0.0, 0.9, vec![]).unwrap();
        assert_eq!(mode_suitability(&dead, 0.3), 0.0);
        // |v1 v2| <= 1/2 for any normalized two-ion mode
        for t in 0..100 {
            let a = (t as f64 / 100.0) * PI;
            let (v1, v2) = (a.cos(), a.sin());
            assert!((v1 * v2).abs() <= 0.5 + 1e-12);
        }
    }

    #[test]
    fn spacing_offset_reporting() {
        let (n, resid) = spacing_phase_offset(4.0e7, 3.6546e-6);
        assert!(n > 0);
        assert!(resid.abs() <= PI / 2.0);
        // exactly on a lock point
        let d = 10.0 * PI / 4.0e7;
        let (n10, r10) = spacing_phase_offset(4.0e7, d);
        assert_eq!(n10, 10);
        assert!(r10.abs() < 1e-9);
    }

    #[test]
    fn mode_record_parsing_and_validation() {
        let m = ModeSpec::from_csv_record("4.2e6, 0.70710678, -0.70710678").unwrap();
        assert!((m.omega_v - 2.0 * PI * 4.2e6).abs() < 1.0);
        assert!(m.refrigerator_amplitudes.is_empty());
        let m4 = ModeSpec::from_csv_record("6.0e6, 0.5, -0.5, 0.5, -0.5").unwrap();
        assert_eq!(m4.refrigerator_amplitudes.len(), 2);
        assert!(ModeSpec::from_csv_record("5e6, 0.9").is_err());
        assert!(ModeSpec::from_csv_record("5e6, 0.9, bogus").is_err());
        assert!(ModeSpec::new(1e6, 0.9, 0.9, vec![]).is_err(), "norm > 1");
        assert!(ModeSpec::new(-1e6, 0.1, 0.1, vec![]).is_err());
        assert!(ModeSpec::new(1e6, f64::NAN, 0.1, vec![]).is_err());
    }
}
