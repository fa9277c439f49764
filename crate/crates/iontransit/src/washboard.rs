//! Laser-free transport gate over a periodic magnet array: transporting a
//! stretched-state qubit pair across an alternating magnetization pattern
//! turns the static field corrugation into an oscillating state-dependent
//! force at omega_w = 2 pi v_w / d_m, playing the role the detuned beam
//! pair plays in the optical gate.

use serde::{Deserialize, Serialize};

use crate::physics::{constants, TrapContext};

const PI: f64 = std::f64::consts::PI;
/// Grid resolution for the dense-scan quantities (residual, extrema).
const SCAN_POINTS: usize = 10_000;

#[derive(Debug, Clone, thiserror::Error)]
pub enum WashboardError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error(
        "harmonic expansion invalid: modulation {modulation} T not below bias {bias} T"
    )]
    ExpansionInvalid { modulation: f64, bias: f64 },
}

/// Magnet-array geometry and transport parameters. Fields in tesla; the
/// modulation amplitude is the field ripple at the ion transport height
/// (an input, not derived from the magnetization pattern).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WashboardSpec {
    ///静 bias field B0, T.
    pub bias_field: f64,
    /// Washboard modulation amplitude B_w at ion height, T.
    pub modulation: f64,
    /// Magnetization period d_m, m.
    pub period: f64,
    /// Transport speed v_w, m/s.
    pub speed: f64,
    /// Smallest gyromagnetic ratio of the qubit states, rad/(s T);
    /// defaults to mu_B/hbar.
    pub gamma_min: f64,
}

impl WashboardSpec {
    pub fn new(
        bias_field: f64,
        modulation: f64,
        period: f64,
        speed: f64,
    ) -> Result<Self, WashboardError> {
        if !(bias_field > 0.0) {
            return Err(WashboardError::NonPositive("bias field"));
        }
        if !(modulation >= 0.0) {
            return Err(WashboardError::NonPositive("modulation amplitude"));
        }
        if modulation >= bias_field {
            return Err(WashboardError::ExpansionInvalid {
                modulation,
                bias: bias_field,
            });
        }
        if !(period > 0.0) {
            return Err(WashboardError::NonPositive("period"));
        }
        if !(speed > 0.0) {
            return Err(WashboardError::NonPositive("transport speed"));
        }
        Ok(WashboardSpec {
            bias_field,
            modulation,
            period,
            speed,
            gamma_min: constants::BOHR_MAGNETON / constants::HBAR,
        })
    }

    /// Drive frequency omega_w = 2 pi v_w / d_m, rad/s.
    pub fn omega_w(&self) -> f64 {
        2.0 * PI * self.speed / self.period
    }

    /// Exact field magnitude seen by the moving ion:
    /// |B|(t) = sqrt((B0 - Bw cos wt)^2 + (Bw sin wt)^2).
    pub fn field_total(&self, t: f64) -> f64 {
        let w = self.omega_w() * t;
        let para = self.bias_field - self.modulation * w.cos();
        let perp = self.modulation * w.sin();
        (para * para + perp * perp).sqrt()
    }
}

/// First-order harmonic split of the exact field: a raised DC value plus a
/// cosine ripple, with the numerically scanned worst-case remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicDecomposition {
    /// B0 (1 + (Bw/B0)^2 / 4), T.
    pub dc_field: f64,
    /// Ripple amplitude (= Bw), T.
    pub oscillation: f64,
    /// Drive frequency, rad/s.
    pub omega_w: f64,
    /// max_t |exact - approximation| over one period, T.
    pub residual: f64,
}

/// B_tot(t) ~ B0 (1 + (Bw/B0)^2/4) - Bw cos(omega_w t); the residual is
/// scanned on a dense grid over one period.
pub fn harmonic_decomposition(
    spec: &WashboardSpec,
) -> Result<HarmonicDecomposition, WashboardError> {
    if spec.modulation >= spec.bias_field {
        return Err(WashboardError::ExpansionInvalid {
            modulation: spec.modulation,
            bias: spec.bias_field,
        });
    }
    let ratio = spec.modulation / spec.bias_field;
    let dc = spec.bias_field * (1.0 + 0.25 * ratio * ratio);
    let omega_w = spec.omega_w();
    let period = 2.0 * PI / omega_w;
    let mut residual = 0.0f64;
    for i in 0..=SCAN_POINTS {
        let t = period * i as f64 / SCAN_POINTS as f64;
        let approx = dc - spec.modulation * (omega_w * t).cos();
        residual = residual.max((spec.field_total(t) - approx).abs());
    }
    Ok(HarmonicDecomposition { dc_field: dc, oscillation: spec.modulation, omega_w, residual })
}

/// Gate Rabi rate for a stretched-state pair riding the washboard:
/// Omega_m = (2 pi / d_m) z0 mu_B B_w / hbar, with z0 the two-ion COM
/// ground-state extent.
pub fn gate_rabi(spec: &WashboardSpec, ctx: &TrapContext) -> f64 {
    let z0 = ctx.mode_ground_extent(
        crate::physics::AxialMode::Com,
        crate::physics::IonCount::Two,
    );
    (2.0 * PI / spec.period) * z0 * constants::BOHR_MAGNETON * spec.modulation / constants::HBAR
}

/// Gate duration tau_m = pi / Omega_m.
pub fn gate_duration(spec: &WashboardSpec, ctx: &TrapContext) -> f64 {
    PI / gate_rabi(spec, ctx)
}

/// Magnetic Lamb-Dicke parameter eta_m = 2 pi z0 / d_m: the pattern period
/// replaces the optical wavelength, so it scales freely with d_m.
pub fn magnetic_lamb_dicke(spec: &WashboardSpec, ctx: &TrapContext) -> f64 {
    let z0 = ctx.mode_ground_extent(
        crate::physics::AxialMode::Com,
        crate::physics::IonCount::Two,
    );
    2.0 * PI * z0 / spec.period
}

/// Unwanted differential Z phase from the raised DC field over `duration`.
///
/// Encoding assumed: the |F=2, m_F = +-2> stretched pair with g_F = 1/2,
/// whose energies sit at +- mu_B |B|; the differential moment between the
/// two qubit states is then 2 mu_B, and the raised average field
/// Bw^2/(4 B0) accumulates phase (2 mu_B / hbar) dB t. Returned as
/// (total, total mod 2 pi), rad.
pub fn residual_z_phase(spec: &WashboardSpec, duration: f64) -> (f64, f64) {
    let dc_offset = spec.modulation * spec.modulation / (4.0 * spec.bias_field);
    let total = 2.0 * constants::BOHR_MAGNETON * dc_offset * duration / constants::HBAR;
    (total, total.rem_euclid(2.0 * PI))
}

/// Adiabatic-following margin: max_t [|dB/dt| / |B|] / (gamma_min min_t |B|),
/// scanned over one period with the analytic derivative
/// dB/dt = omega_w Bw (sin, cos). Much less than 1 means the spins track
/// the local field.
pub fn adiabaticity_margin(spec: &WashboardSpec) -> f64 {
    let omega_w = spec.omega_w();
    let db_dt = omega_w * spec.modulation; // |dB/dt| is constant
    let period = 2.0 * PI / omega_w;
    let mut max_rate = 0.0f64;
    let mut min_field = f64::INFINITY;
    for i in 0..=SCAN_POINTS {
        let b = spec.field_total(period * i as f64 / SCAN_POINTS as f64);
        max_rate = max_rate.max(db_dt / b);
        min_field = min_field.min(b);
    }
    max_rate / (spec.gamma_min * min_field)
}

/// Everything the washboard gate analysis produces, in one record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WashboardReport {
    /// Gate Rabi rate, rad/s.
    pub gate_rabi: f64,
    /// pi-time of the gate drive, s.
    pub gate_duration: f64,
    /// Magnetic Lamb-Dicke parameter.
    pub eta_m: f64,
    /// Drive frequency, rad/s.
    pub omega_w: f64,
    /// Raised DC field Bw^2/(4 B0), T.
    pub dc_offset: f64,
    /// Harmonic-split remainder, T.
    pub harmonic_residual: f64,
    /// Differential Z phase over one gate duration, rad (total, mod 2 pi).
    pub residual_z_phase: (f64, f64),
    pub adiabaticity_margin: f64,
    /// The two pi/4 washboard interactions of a spin-echo split would
    /// cancel this Z phase; noted for schedulers, not simulated here.
    pub spin_echo_note: String,
}

pub fn report(spec: &WashboardSpec, ctx: &TrapContext) -> Result<WashboardReport, WashboardError> {
    let h = harmonic_decomposition(spec)?;
    let tau_m = gate_duration(spec, ctx);
    Ok(WashboardReport {
        gate_rabi: gate_rabi(spec, ctx),
        gate_duration: tau_m,
        eta_m: magnetic_lamb_dicke(spec, ctx),
        omega_w: h.omega_w,
        dc_offset: h.dc_field - spec.bias_field,
        harmonic_residual: h.residual,
        residual_z_phase: residual_z_phase(spec, tau_m),
        adiabaticity_margin: adiabaticity_margin(spec),
        spin_echo_note: "splitting the gate into two pi/4-phase passes inside a spin echo \
                         cancels the residual Z phase"
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::IonSpecies;

    const GAUSS: f64 = 1e-4; // T

    fn paper_spec() -> WashboardSpec {
        WashboardSpec::new(120.0 * GAUSS, 20.0 * GAUSS, 20e-6, 80.0).unwrap()
    }

    fn ctx() -> TrapContext {
        TrapContext::new(IonSpecies::be9(), 2.0 * PI * 4e6).unwrap()
    }

    #[test]
    fn field_total_limits() {
        let s = paper_spec();
        // t = 0: exactly B0 - Bw
        assert_eq!(s.field_total(0.0), s.bias_field - s.modulation);
        // no modulation: constant B0
        let flat = WashboardSpec::new(120.0 * GAUSS, 0.0, 20e-6, 80.0).unwrap();
        for i in 0..10 {
            assert_eq!(flat.field_total(1e-7 * i as f64), flat.bias_field);
        }
        // time average exceeds B0 by ~Bw^2/(4 B0) = 0.833 G
        let period = 2.0 * PI / s.omega_w();
        let n = 40_000;
        let avg: f64 = (0..n)
            .map(|i| s.field_total(period * (i as f64 + 0.5) / n as f64))
            .sum::<f64>()
            / n as f64;
        let excess = (avg - s.bias_field) / GAUSS;
        assert!((excess - 0.8333).abs() < 0.01 * 0.8333, "{excess}");
    }

    #[test]
    fn harmonic_decomposition_paper_values() {
        let s = paper_spec();
        let h = harmonic_decomposition(&s).unwrap();
        assert!((h.omega_w / (2.0 * PI) - 4e6).abs() < 1.0);
        assert!((h.dc_field - s.bias_field - 0.83333333 * GAUSS).abs() < 1e-6 * GAUSS);
        assert_eq!(h.oscillation, s.modulation);
        // remainder bounded by the next expansion order
        let ratio = s.modulation / s.bias_field;
        assert!(h.residual <= 0.5 * ratio * ratio * s.modulation, "{}", h.residual);
        assert!(h.residual > 0.0);
        // vanishing modulation: zero remainder
        let flat = WashboardSpec::new(120.0 * GAUSS, 0.0, 20e-6, 80.0).unwrap();
        assert_eq!(harmonic_decomposition(&flat).unwrap().residual, 0.0);
    }

    #[test]
    fn gate_rabi_and_duration() {
        // mpmath: Omega_m = 2 pi x 73.6275 kHz, tau_m = 6.791 us
        let s = paper_spec();
        let om = gate_rabi(&s, &ctx());
        assert!((om / (2.0 * PI * 1e3) - 73.6274916958).abs() < 1e-6);
        assert!((om / (2.0 * PI * 1e3) - 73.5).abs() / 73.5 < 0.01);
        let tau = gate_duration(&s, &ctx());
        assert!((tau * 1e6 - 6.8).abs() / 6.8 < 0.02);
        // Omega ~ 1/d_m at fixed field
        let doubled = WashboardSpec::new(120.0 * GAUSS, 20.0 * GAUSS, 40e-6, 80.0).unwrap();
        assert!((gate_rabi(&doubled, &ctx()) - om / 2.0).abs() < 1e-9 * om);
    }

    #[test]
    fn magnetic_lamb_dicke_values() {
        let s = paper_spec();
        let eta = magnetic_lamb_dicke(&s, &ctx());
        assert!((eta - 2.63025875983e-3).abs() < 1e-12, "{eta}");
        // halving the period doubles eta_m
        let halved = WashboardSpec::new(120.0 * GAUSS, 20.0 * GAUSS, 10e-6, 80.0).unwrap();
        assert!((magnetic_lamb_dicke(&halved, &ctx()) - 2.0 * eta).abs() < 1e-15);
        // factorization Omega_m = eta_m mu_B Bw / hbar
        let om = gate_rabi(&s, &ctx());
        let want = eta * constants::BOHR_MAGNETON * s.modulation / constants::HBAR;
        assert!((om - want).abs() < 1e-9 * om);
    }

    #[test]
    fn residual_z_phase_paper_value() {
        let s = paper_spec();
        let tau = gate_duration(&s, &ctx());
        let (total, wrapped) = residual_z_phase(&s, tau);
        // ~2 pi x 15.9 of accumulated differential phase
        assert!((total / (2.0 * PI) - 15.9).abs() / 15.9 < 0.05, "{}", total / (2.0 * PI));
        assert!((0.0..2.0 * PI).contains(&wrapped));
        // linear in duration
        let (half, _) = residual_z_phase(&s, tau / 2.0);
        assert!((half - total / 2.0).abs() < 1e-12 * total);
        // no modulation, no phase
        let flat = WashboardSpec::new(120.0 * GAUSS, 0.0, 20e-6, 80.0).unwrap();
        assert_eq!(residual_z_phase(&flat, tau).0, 0.0);
    }

    #[test]
    fn adiabaticity_margin_paper_value() {
        let s = paper_spec();
        let m = adiabaticity_margin(&s);
        // mpmath: 5.71582e-3, comfortably adiabatic
        assert!((m - 5.71581880464e-3).abs() < 1e-8, "{m}");
        assert!(m < 0.05);
        // linear in transport speed
        let fast = WashboardSpec::new(120.0 * GAUSS, 20.0 * GAUSS, 20e-6, 160.0).unwrap();
        assert!((adiabaticity_margin(&fast) - 2.0 * m).abs() < 1e-12);
        // no modulation: nothing to follow
        let flat = WashboardSpec::new(120.0 * GAUSS, 0.0, 20e-6, 80.0).unwrap();
        assert_eq!(adiabaticity_margin(&flat), 0.0);
    }

    #[test]
    fn outputs_continuous_in_inputs() {
        // finite-difference sensitivity: no jumps beyond derivative * step
        let s = paper_spec();
        let c = ctx();
        let eps = 1e-6;
        let bumped = WashboardSpec::new(
            s.bias_field * (1.0 + eps),
            s.modulation * (1.0 + eps),
            s.period * (1.0 + eps),
            s.speed * (1.0 + eps),
        )
        .unwrap();
        let r0 = report(&s, &c).unwrap();
        let r1 = report(&bumped, &c).unwrap();
        assert!((r1.gate_rabi / r0.gate_rabi - 1.0).abs() < 10.0 * eps);
        assert!((r1.omega_w / r0.omega_w - 1.0).abs() < 10.0 * eps);
        assert!((r1.dc_offset / r0.dc_offset - 1.0).abs() < 10.0 * eps);
        assert!((r1.adiabaticity_margin / r0.adiabaticity_margin - 1.0).abs() < 10.0 * eps);
        assert!(
            (r1.residual_z_phase.0 / r0.residual_z_phase.0 - 1.0).abs() < 10.0 * eps
        );
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(WashboardSpec::new(0.0, 0.0, 20e-6, 80.0).is_err());
        assert!(matches!(
            WashboardSpec::new(100.0 * GAUSS, 120.0 * GAUSS, 20e-6, 80.0),
            Err(WashboardError::ExpansionInvalid { .. })
        ));
        assert!(WashboardSpec::new(120.0 * GAUSS, 20.0 * GAUSS, 0.0, 80.0).is_err());
        assert!(WashboardSpec::new(120.0 * GAUSS, 20.0 * GAUSS, 20e-6, -1.0).is_err());
    }
}
