//! Two-qubit transport phase gate engine: spin-dependent drive amplitudes,
//! closed-form phase-space displacement and geometric phase, the pi-phase
//! operating condition, the discrete beam-angle ladder, fidelity bound and
//! the gate-parameter designer.
//!
//! Working picture: a counter-propagating Raman pair detuned `delta` blue
//! of the stretch mode drives a spin-dependent coherent displacement while
//! the ion pair crosses the Gaussian beam. Each two-spin state |ss'> rides
//! a phase-space loop alpha(t) and picks up a geometric phase Phi_ss'; the
//! entangling (logical) phase is Phi_uu + Phi_dd - Phi_ud - Phi_du.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::{erf_complex, erfi_scaled, NumericsError};
use crate::physics::{PhysicsError, TrapContext};

const PI: f64 = std::f64::consts::PI;
const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, thiserror::Error)]
pub enum GateError {
    #[error("Rabi-rate ratio r = 1 leaves no spin dependence to drive the gate")]
    DegenerateRatio,
    #[error("harmonic index n = {n} outside the discrete-angle range 1..={max}")]
    OutOfRange { n: u32, max: u32 },
    #[error("harmonic index n = {0} is odd; odd indices leave like-spin drives on \
             (enable them explicitly if that is intended)")]
    OddIndex(u32),
    #[error("no transport speed solves the detuning condition: {0}")]
    NoSolution(&'static str),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
}

/// Two-qubit spin configuration labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinPair {
    UpUp,
    UpDown,
    DownUp,
    DownDown,
}

impl SpinPair {
    pub const ALL: [SpinPair; 4] = [SpinPair::UpUp, SpinPair::UpDown, SpinPair::DownUp, SpinPair::DownDown];

    pub fn label(&self) -> &'static str {
        match self {
            SpinPair::UpUp => "uu",
            SpinPair::UpDown => "ud",
            SpinPair::DownUp => "du",
            SpinPair::DownDown => "dd",
        }
    }
}

/// The four spin-dependent drive amplitudes at peak coupling, rad/s, for a
/// normal mode with qubit-ion amplitudes (v1, v2) and half-phase
/// phi_half = dk_z d / 2 between the ions:
///
///   A_ss' = v1 e^{-i phi} Omega_s + v2 e^{+i phi} Omega_s'
///
/// The two-ion stretch mode is (v1, v2) = (1/sqrt2, -1/sqrt2), for which
/// A_uu = -sqrt2 i sin(phi) Omega_up, A_ud = (Omega_up e^{-i phi} -
/// Omega_down e^{i phi})/sqrt2, and at phi = (n/2) pi with n even the
/// like-spin drives vanish with |A_ud|^2 = (Omega_up - Omega_down)^2 / 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveCoefficients {
    pub a_uu: Complex64,
    pub a_ud: Complex64,
    pub a_du: Complex64,
    pub a_dd: Complex64,
    /// Half the wavevector-transfer phase across the ion spacing, rad.
    pub phi_half: f64,
    pub omega_up: f64,
    pub omega_down: f64,
}

impl DriveCoefficients {
    /// General normal-mode form; `v1`, `v2` are the (real) eigenvector
    /// amplitudes on the two qubit ions.
    pub fn from_mode_amplitudes(
        v1: f64,
        v2: f64,
        omega_up: f64,
        omega_down: f64,
        phi_half: f64,
    ) -> Self {
        let em = Complex64::from_polar(1.0, -phi_half);
        let ep = Complex64::from_polar(1.0, phi_half);
        DriveCoefficients {
            a_uu: (v1 * em + v2 * ep) * omega_up,
            a_ud: v1 * em * omega_up + v2 * ep * omega_down,
            a_du: v1 * em * omega_down + v2 * ep * omega_up,
            a_dd: (v1 * em + v2 * ep) * omega_down,
            phi_half,
            omega_up,
            omega_down,
        }
    }

    /// Stretch mode of an equal-mass two-ion crystal.
    pub fn two_ion_stretch(omega_up: f64, omega_down: f64, phi_half: f64) -> Self {
        Self::from_mode_amplitudes(
            std::f64::consts::FRAC_1_SQRT_2,
            -std::f64::consts::FRAC_1_SQRT_2,
            omega_up,
            omega_down,
            phi_half,
        )
    }

    pub fn get(&self, pair: SpinPair) -> Complex64 {
        match pair {
            SpinPair::UpUp => self.a_uu,
            SpinPair::UpDown => self.a_ud,
            SpinPair::DownUp => self.a_du,
            SpinPair::DownDown => self.a_dd,
        }
    }

    /// |A_uu|^2 + |A_dd|^2 - |A_ud|^2 - |A_du|^2, the combination entering
    /// the logical phase (equals -(Omega_up - Omega_down)^2 cos(2 phi) for
    /// the two-ion stretch mode).
    pub fn logic_combination(&self) -> f64 {
        self.a_uu.norm_sqr() + self.a_dd.norm_sqr()
            - self.a_ud.norm_sqr()
            - self.a_du.norm_sqr()
    }
}

/// Doppler-induced relative detuning of counter-propagating beams seen by
/// an ion moving at `v` at angle `gamma` to the beam axis:
/// delta_0 = 2 |k| |v| cos(gamma).
pub fn doppler_detuning(wavenumber: f64, v: f64, gamma: f64) -> f64 {
    2.0 * wavenumber * v * gamma.cos()
}

/// Phase-space displacement of one spin state at time `t` for a Gaussian
/// drive A(t) = a0 e^{-t^2/tau^2} at detuning `delta`, starting from the
/// origin in the far past:
///
///   alpha(t) = e^{-delta^2 tau^2/4} (sqrt(pi) eta a0 tau / 2)
///              [erf(t/tau - i delta tau/2) + 1]
pub fn alpha_of_t(
    a0: Complex64,
    eta: f64,
    delta: f64,
    tau: f64,
    t: f64,
) -> Result<Complex64, GateError> {
    let half = delta * tau / 2.0;
    let e = erf_complex(Complex64::new(t / tau, -half))?;
    let prefactor = (-half * half).exp() * PI.sqrt() * eta * tau / 2.0;
    Ok(prefactor * a0 * (e + 1.0))
}

/// Final displacement after a full traverse:
/// alpha(inf) = e^{-delta^2 tau^2 / 4} sqrt(pi) eta a0 tau.
pub fn alpha_infinity(a0: Complex64, eta: f64, delta: f64, tau: f64) -> Complex64 {
    let half = delta * tau / 2.0;
    (-half * half).exp() * PI.sqrt() * eta * tau * a0
}

/// e^{-p^2} erfi(p) extended to negative p (odd).
pub(crate) fn erfi_scaled_signed(p: f64) -> f64 {
    if p < 0.0 {
        -erfi_scaled(-p)
    } else {
        erfi_scaled(p)
    }
}

/// Geometric phase accumulated by one spin state over a full traverse:
///
///   Phi = |eta a0|^2 tau^2 (pi/2) e^{-delta^2 tau^2/2} erfi(delta tau / sqrt2)
pub fn logic_phase_coeff(a0: Complex64, eta: f64, delta: f64, tau: f64) -> f64 {
    let p = delta * tau / SQRT_2;
    let scale = eta * a0.norm();
    scale * scale * tau * tau * (PI / 2.0) * erfi_scaled_signed(p)
}

/// Logical (entangling) phase of the two-ion stretch-mode gate:
///
///   Phi_L = -pi e^{-delta^2 tau^2/2} erfi(delta tau/sqrt2)
///           (1/2) eta^2 (Omega_up - Omega_down)^2 tau^2 cos(2 phi_half)
pub fn total_logic_phase(
    omega_up: f64,
    omega_down: f64,
    eta: f64,
    delta: f64,
    tau: f64,
    phi_half: f64,
) -> f64 {
    let p = delta * tau / SQRT_2;
    let diff = omega_up - omega_down;
    -PI * erfi_scaled_signed(p)
        * 0.5
        * eta
        * eta
        * diff
        * diff
        * tau
        * tau
        * (2.0 * phi_half).cos()
}

/// Same quantity assembled from the four drive amplitudes; agrees with
/// [`total_logic_phase`] identically and extends to arbitrary modes.
pub fn total_logic_phase_from_coefficients(
    coeffs: &DriveCoefficients,
    eta: f64,
    delta: f64,
    tau: f64,
) -> f64 {
    let p = delta * tau / SQRT_2;
    eta * eta * tau * tau * (PI / 2.0) * erfi_scaled_signed(p) * coeffs.logic_combination()
}

/// Solve the pi-phase condition
///   e^{-p^2} (1/2) eta^2 (Omega_up - Omega_down)^2 tau^2 erfi(p) = 1
/// for Omega_down, given the ratio r = Omega_up / Omega_down:
/// Omega_down = 1 / (eta tau |1 - r| sqrt(e^{-p^2} erfi(p) / 2)).
pub fn pi_phase_solve(eta: f64, delta: f64, tau: f64, ratio: f64) -> Result<f64, GateError> {
    if ratio == 1.0 {
        return Err(GateError::DegenerateRatio);
    }
    if !(eta > 0.0) {
        return Err(GateError::NonPositive("Lamb-Dicke factor"));
    }
    if !(tau > 0.0) {
        return Err(GateError::NonPositive("transit time"));
    }
    let p = delta * tau / SQRT_2;
    if !(p > 0.0) {
        return Err(GateError::NonPositive("adiabaticity parameter p = delta tau / sqrt2"));
    }
    Ok(1.0 / (eta * tau * (1.0 - ratio).abs() * (erfi_scaled(p) / 2.0).sqrt()))
}

/// Worst-case gate infidelity from the unclosed trajectory endpoint:
/// epsilon = 1 - F <= pi / erfi(p). Evaluated in scaled form so any p is
/// safe (no e^{p^2} overflow).
pub fn fidelity_bound(p: f64) -> Result<f64, GateError> {
    if !(p > 0.0) {
        return Err(GateError::NonPositive("adiabaticity parameter"));
    }
    Ok(PI * (-p * p).exp() / erfi_scaled(p))
}

/// One sample of a phase-space trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    /// Time in units of the transit constant tau.
    pub t_over_tau: f64,
    /// Mode displacement (dimensionless phase-space coordinates).
    pub alpha: Complex64,
    /// Geometric phase Im[integral conj(alpha) d(alpha)] accumulated since
    /// the first sample, rad.
    pub accumulated_phase: f64,
}

/// Phase-space path of one spin state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinTrajectory {
    pub pair: SpinPair,
    pub samples: Vec<TrajectorySample>,
    pub alpha_final: Complex64,
    pub total_phase: f64,
}

/// Sampled trajectories of all four spin states plus the logical phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseTrajectory {
    /// Adiabaticity parameter p = delta tau / sqrt2.
    pub p: f64,
    pub branches: Vec<SpinTrajectory>,
    /// Phi_uu + Phi_dd - Phi_ud - Phi_du from the accumulated phases, rad.
    pub logic_phase: f64,
}

impl PhaseTrajectory {
    /// Largest |alpha| reached by any branch.
    pub fn max_excursion(&self) -> f64 {
        self.branches
            .iter()
            .flat_map(|b| b.samples.iter())
            .map(|s| s.alpha.norm())
            .fold(0.0, f64::max)
    }
}

/// Trajectory of the pi-phase gate operating point, which depends only on
/// p once the phase condition is imposed:
///
///   alpha_ud(t) = sqrt(pi) (erf(t/tau - i p/sqrt2) + 1) / (2 sqrt(erfi p))
///
/// The du branch is the mirror image (-alpha); the like-spin branches
/// vanish by the even-harmonic spacing choice. The phase column is
/// accumulated per interval with two-point Gauss quadrature on the exact
/// integrand Im[conj(alpha) alpha'].
pub fn designed_trajectory(
    p: f64,
    t_lo_over_tau: f64,
    t_hi_over_tau: f64,
    n_samples: usize,
) -> Result<PhaseTrajectory, GateError> {
    if !(p > 0.0) {
        return Err(GateError::NonPositive("adiabaticity parameter"));
    }
    if n_samples < 2 || !(t_lo_over_tau < t_hi_over_tau) {
        return Err(GateError::NoSolution("need at least 2 samples over a nonempty span"));
    }
    let scale = 1.0 / erfi_via_scaled_sqrt(p)?;
    let alpha = |t: f64| -> Result<Complex64, GateError> {
        let e = erf_complex(Complex64::new(t, -p / SQRT_2))?;
        Ok(PI.sqrt() / 2.0 * scale * (e + 1.0))
    };
    // d alpha/dt = e^{-(t - i p/sqrt2)^2} / sqrt(erfi p); |.| <= e^{p^2/2}/sqrt(erfi)
    let d_alpha = |t: f64| -> Complex64 {
        let w = Complex64::new(t, -p / SQRT_2);
        (-w * w).exp() * scale
    };

    let step = (t_hi_over_tau - t_lo_over_tau) / (n_samples - 1) as f64;
    let gauss_offset = step / (2.0 * 3.0_f64.sqrt());
    let mut samples = Vec::with_capacity(n_samples);
    let mut phase = 0.0;
    let mut prev_t = t_lo_over_tau;
    for i in 0..n_samples {
        let t = t_lo_over_tau + step * i as f64;
        if i > 0 {
            let mid = 0.5 * (prev_t + t);
            for tg in [mid - gauss_offset, mid + gauss_offset] {
                let a = alpha(tg)?;
                phase += 0.5 * step * (a.conj() * d_alpha(tg)).im;
            }
        }
        samples.push(TrajectorySample { t_over_tau: t, alpha: alpha(t)?, accumulated_phase: phase });
        prev_t = t;
    }

    let ud_final = samples.last().expect("nonempty").alpha;
    let mirrored: Vec<TrajectorySample> = samples
        .iter()
        .map(|s| TrajectorySample { alpha: -s.alpha, ..*s })
        .collect();
    let zero: Vec<TrajectorySample> = samples
        .iter()
        .map(|s| TrajectorySample {
            alpha: Complex64::new(0.0, 0.0),
            accumulated_phase: 0.0,
            ..*s
        })
        .collect();
    let branches = vec![
        SpinTrajectory { pair: SpinPair::UpUp, samples: zero.clone(), alpha_final: Complex64::new(0.0, 0.0), total_phase: 0.0 },
        SpinTrajectory { pair: SpinPair::UpDown, samples, alpha_final: ud_final, total_phase: phase },
        SpinTrajectory { pair: SpinPair::DownUp, samples: mirrored, alpha_final: -ud_final, total_phase: phase },
        SpinTrajectory { pair: SpinPair::DownDown, samples: zero, alpha_final: Complex64::new(0.0, 0.0), total_phase: 0.0 },
    ];
    Ok(PhaseTrajectory { p, branches, logic_phase: -2.0 * phase })
}

/// sqrt(erfi(p)) computed through the scaled form: sqrt(e^{p^2} s(p))
/// = e^{p^2/2} sqrt(s); safe for p up to the erf strip limit.
fn erfi_via_scaled_sqrt(p: f64) -> Result<f64, GateError> {
    let s = erfi_scaled(p);
    let half = (0.5 * p * p).exp();
    if !half.is_finite() {
        return Err(GateError::Numerics(NumericsError::OverflowDomain {
            what: "adiabaticity parameter",
            value: p,
            limit: 2.0 * SQRT_2 * 12.0,
        }));
    }
    Ok(half * s.sqrt())
}

/// Peak spin-motion modulation depth eta * max_t |alpha(t)|; values well
/// below 1 keep the drive linear in the ion displacement (default
/// acceptance threshold 0.3).
pub fn lamb_dicke_validity(eta: f64, trajectory: &PhaseTrajectory) -> f64 {
    eta * trajectory.max_excursion()
}

/// Quanta gained from anomalous heating per phase-space revolution:
/// (dn/dt) * (2 pi / delta). Values much below 1 leave the gate usable.
pub fn heating_robustness(heating_rate: f64, delta: f64) -> Result<f64, GateError> {
    if !(delta > 0.0) {
        return Err(GateError::NonPositive("detuning"));
    }
    Ok(heating_rate * (2.0 * PI) / delta)
}

/// Beam angle locking the wavevector-transfer phase across the ion spacing
/// to a half-integer number of turns: 2 k cos(gamma_n) d = n pi.
pub fn discrete_angle(ctx: &TrapContext, wavenumber: f64, n: u32) -> Result<f64, GateError> {
    let d = ctx.equilibrium_distance();
    let max = (2.0 * wavenumber * d / PI).floor() as u32;
    if n == 0 || n > max {
        return Err(GateError::OutOfRange { n, max });
    }
    Ok(((n as f64) * PI / (2.0 * wavenumber * d)).acos())
}

/// All even-index discrete angles up to `n_max` (inclusive) that exist for
/// this trap and wavenumber.
pub fn discrete_angles(ctx: &TrapContext, wavenumber: f64, n_max: u32) -> Vec<(u32, f64)> {
    (1..=n_max / 2)
        .map(|half| 2 * half)
        .map_while(|n| discrete_angle(ctx, wavenumber, n).ok().map(|g| (n, g)))
        .collect()
}

/// Which transit-time definition a design was solved under.
///
/// The coupling envelope Omega(t) = Omega_peak e^{-t^2/tau^2} has 1/e
/// half-width tau = w0/(sqrt2 v sin gamma) (`Envelope`); the published
/// design tables are self-consistent under half that width,
/// tau = w0/(2 sqrt2 v sin gamma) (`HalfEnvelope`), and the designer uses
/// the latter so regenerated tables match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TauConvention {
    Envelope,
    HalfEnvelope,
}

impl TauConvention {
    pub fn transit_time(&self, waist: f64, v: f64, sin_gamma: f64) -> f64 {
        match self {
            TauConvention::Envelope => waist / (SQRT_2 * v * sin_gamma),
            TauConvention::HalfEnvelope => waist / (2.0 * SQRT_2 * v * sin_gamma),
        }
    }
}

/// One solved gate operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateDesign {
    /// Harmonic index of the angle condition 2 k cos(gamma) d = n pi.
    pub n: u32,
    /// Beam angle to the transport axis, rad.
    pub gamma: f64,
    /// Stretch-mode Lamb-Dicke factor.
    pub eta: f64,
    /// Transport speed, m/s.
    pub v: f64,
    /// Transit time under `tau_convention`, s.
    pub tau: f64,
    /// Detuning from the stretch mode (blue side), rad/s.
    pub delta: f64,
    /// Beam relative detuning 2 k v cos(gamma), rad/s.
    pub delta0: f64,
    /// Rabi rate of the |down> AC-Stark drive solving the pi-phase
    /// condition, rad/s.
    pub omega_down: f64,
    /// Omega_up = ratio * Omega_down, rad/s.
    pub omega_up: f64,
    /// Adiabaticity parameter delta tau / sqrt2.
    pub p: f64,
    /// Infidelity bound pi / erfi(p).
    pub epsilon_bound: f64,
    /// Logical phase at this operating point (:= -pi for even n), rad.
    pub logic_phase: f64,
    /// Half-phase dk_z d / 2 = n pi / 2, rad.
    pub phi_half: f64,
    /// Beam waist the design was solved for, m.
    pub waist: f64,
    /// Raman wavenumber, rad/m.
    pub wavenumber: f64,
    pub tau_convention: TauConvention,
}

impl GateDesign {
    /// Residuals of the three defining constraints, all relative:
    /// the angle condition, the pi-phase condition |Phi_L| = pi, and
    /// p = delta tau / sqrt2. All should sit at rounding level.
    pub fn constraint_residuals(&self, ctx: &TrapContext) -> [f64; 3] {
        let d = ctx.equilibrium_distance();
        let angle = (2.0 * self.wavenumber * self.gamma.cos() * d - self.n as f64 * PI).abs()
            / (self.n as f64 * PI);
        let phase = (total_logic_phase(
            self.omega_up,
            self.omega_down,
            self.eta,
            self.delta,
            self.tau,
            self.phi_half,
        )
        .abs()
            - PI)
            .abs()
            / PI;
        let p_res = (self.delta * self.tau / SQRT_2 - self.p).abs() / self.p;
        [angle, phase, p_res]
    }
}

/// Solve one gate operating point at harmonic index `n`.
///
/// Chain: gamma_n from the angle condition; v from requiring
/// p = (delta0 - omega_str) tau / sqrt2 with delta0 = 2 k v cos(gamma) on
/// the blue-detuned branch and the half-envelope transit time; then eta
/// and the pi-phase Rabi rate.
pub fn design_row(
    ctx: &TrapContext,
    waist: f64,
    wavenumber: f64,
    p_target: f64,
    ratio: f64,
    n: u32,
    allow_odd: bool,
) -> Result<GateDesign, GateError> {
    if !(waist > 0.0) {
        return Err(GateError::NonPositive("beam waist"));
    }
    if !(p_target > 0.0) {
        return Err(GateError::NonPositive("target adiabaticity parameter"));
    }
    if n % 2 == 1 && !allow_odd {
        return Err(GateError::OddIndex(n));
    }
    let gamma = discrete_angle(ctx, wavenumber, n)?;
    let (sin_g, cos_g) = gamma.sin_cos();
    let omega_str = ctx.omega_stretch();
    // p = (2 k v cos - omega_str) * w0 / (2 sqrt2 v sin) / sqrt2
    //   => v (2 k w0 cos - 4 p sin) = omega_str w0
    let denom = 2.0 * wavenumber * waist * cos_g - 4.0 * p_target * sin_g;
    if denom <= 0.0 {
        return Err(GateError::NoSolution(
            "blue-detuned branch requires 2 k w0 cos(gamma) > 4 p sin(gamma)",
        ));
    }
    let v = omega_str * waist / denom;
    let convention = TauConvention::HalfEnvelope;
    let tau = convention.transit_time(waist, v, sin_g);
    let delta0 = doppler_detuning(wavenumber, v, gamma);
    let delta = delta0 - omega_str;
    let eta = ctx.lamb_dicke_at(2.0 * wavenumber * cos_g, omega_str);
    let omega_down = pi_phase_solve(eta, delta, tau, ratio)?;
    let omega_up = ratio * omega_down;
    let phi_half = n as f64 * PI / 2.0;
    Ok(GateDesign {
        n,
        gamma,
        eta,
        v,
        tau,
        delta,
        delta0,
        omega_down,
        omega_up,
        p: p_target,
        epsilon_bound: fidelity_bound(p_target)?,
        logic_phase: total_logic_phase(omega_up, omega_down, eta, delta, tau, phi_half),
        phi_half,
        waist,
        wavenumber,
        tau_convention: convention,
    })
}
