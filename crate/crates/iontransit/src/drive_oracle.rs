//! Brute-force evaluation of the time-ordered displacement and phase
//! integrals for arbitrary drive envelopes:
//!
//!   d(alpha) = eta A(t) e^{i delta t} dt,
//!   alpha(t) = integral from t0,        Phi(t) = Im integral conj(alpha) d(alpha)
//!
//! This is the ground truth the closed forms are checked against, so it
//! deliberately shares no code with them: no error functions anywhere,
//! just spectral integration on adaptive panels. Each panel expands the
//! integrand in 16 Chebyshev coefficients, integrates the series term by
//! term (which also yields alpha inside the panel for the phase
//! integrand), and bisects while the coefficient tail is above budget.
//! The nested phase double-integral is folded into the same forward sweep
//! as d(Phi) = Im[conj(alpha) d(alpha)], keeping the cost linear.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const PI: f64 = std::f64::consts::PI;
/// Chebyshev order per panel.
const N_CHEB: usize = 16;
const MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, thiserror::Error)]
pub enum OracleError {
    #[error("invalid envelope: {0}")]
    InvalidEnvelope(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("error estimate {} above tolerance after {} panels",
            result.error_estimate, result.panels_used)]
    ToleranceNotMet { result: Box<OracleResult> },
}

/// Drive envelope shape A(t) (amplitude in rad/s after scaling by `a0`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EnvelopeShape {
    /// a0 e^{-t^2/tau^2}, centered on t = 0.
    Gaussian { tau: f64 },
    /// a0 on [0, duration], zero outside.
    Square { duration: f64 },
    /// Arbitrary sampled envelope, interpolated with a local cubic;
    /// zero outside the sampled range. Times strictly increasing.
    UserSampled { points: Vec<(f64, f64)> },
}

/// A spin-dependent coherent drive: envelope shape, peak amplitude,
/// Lamb-Dicke factor and detuning from the addressed mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub shape: EnvelopeShape,
    /// Peak drive amplitude, rad/s.
    pub a0: f64,
    pub eta: f64,
    /// Detuning, rad/s.
    pub delta: f64,
}

impl Envelope {
    pub fn gaussian(a0: f64, eta: f64, delta: f64, tau: f64) -> Result<Self, OracleError> {
        if !(tau > 0.0) {
            return Err(OracleError::InvalidEnvelope("gaussian tau must be positive"));
        }
        Ok(Envelope { shape: EnvelopeShape::Gaussian { tau }, a0, eta, delta })
    }

    pub fn square(a0: f64, eta: f64, delta: f64, duration: f64) -> Result<Self, OracleError> {
        if !(duration > 0.0) {
            return Err(OracleError::InvalidEnvelope("square duration must be positive"));
        }
        Ok(Envelope { shape: EnvelopeShape::Square { duration }, a0, eta, delta })
    }

    pub fn user_sampled(
        points: Vec<(f64, f64)>,
        a0: f64,
        eta: f64,
        delta: f64,
    ) -> Result<Self, OracleError> {
        if points.len() < 2 {
            return Err(OracleError::InvalidEnvelope("need at least two samples"));
        }
        let monotone = points.windows(2).all(|w| w[0].0 < w[1].0);
        if !monotone {
            return Err(OracleError::InvalidEnvelope("sample times must be strictly increasing"));
        }
        if points.iter().any(|(t, a)| !t.is_finite() || !a.is_finite()) {
            return Err(OracleError::InvalidEnvelope("samples must be finite"));
        }
        Ok(Envelope { shape: EnvelopeShape::UserSampled { points }, a0, eta, delta })
    }

    /// Envelope amplitude A(t), rad/s.
    pub fn amplitude(&self, t: f64) -> f64 {
        match &self.shape {
            EnvelopeShape::Gaussian { tau } => {
                let u = t / tau;
                self.a0 * (-u * u).exp()
            }
            EnvelopeShape::Square { duration } => {
                if (0.0..=*duration).contains(&t) {
                    self.a0
                } else {
                    0.0
                }
            }
            EnvelopeShape::UserSampled { points } => self.a0 * interp_cubic(points, t),
        }
    }

    /// Span outside which the envelope is (numerically) zero.
    pub fn support(&self) -> (f64, f64) {
        match &self.shape {
            EnvelopeShape::Gaussian { tau } => (-8.0 * tau, 8.0 * tau),
            EnvelopeShape::Square { duration } => (0.0, *duration),
            EnvelopeShape::UserSampled { points } => {
                (points.first().unwrap().0, points.last().unwrap().0)
            }
        }
    }

    /// Breakpoints interior to the integration range where smoothness is
    /// limited (square edges, interpolation knots).
    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let knots: Vec<f64> = match &self.shape {
            EnvelopeShape::Gaussian { .. } => vec![],
            EnvelopeShape::Square { duration } => vec![0.0, *duration],
            EnvelopeShape::UserSampled { points } => points.iter().map(|(t, _)| *t).collect(),
        };
        knots.into_iter().filter(|t| *t > lo && *t < hi).collect()
    }

    /// Heuristic bound on the amplitude error introduced by interpolating
    /// a sampled envelope: per-gap difference between the cubic and linear
    /// reconstructions at the gap midpoint, times the gap width.
    fn interpolation_error_scale(&self) -> f64 {
        match &self.shape {
            EnvelopeShape::UserSampled { points } => {
                let mut acc = 0.0;
                for w in points.windows(2) {
                    let (t0, v0) = w[0];
                    let (t1, v1) = w[1];
                    let mid = 0.5 * (t0 + t1);
                    let linear = 0.5 * (v0 + v1);
                    acc += (interp_cubic(points, mid) - linear).abs() * (t1 - t0);
                }
                acc * self.a0.abs() * self.eta.abs()
            }
            _ => 0.0,
        }
    }
}

/// Local 4-point Lagrange cubic through the bracketing samples (linear at
/// the range ends where only 3 points exist); zero outside the range.
fn interp_cubic(points: &[(f64, f64)], t: f64) -> f64 {
    let n = points.len();
    if t < points[0].0 || t > points[n - 1].0 {
        return 0.0;
    }
    let seg = match points.binary_search_by(|(tk, _)| tk.total_cmp(&t)) {
        Ok(k) => return points[k].1,
        Err(k) => k - 1, // t lies in (points[seg].0, points[seg+1].0)
    };
    let first = seg.saturating_sub(1).min(n.saturating_sub(4));
    let stencil = &points[first..(first + 4).min(n)];
    let mut acc = 0.0;
    for (i, (ti, vi)) in stencil.iter().enumerate() {
        let mut l = *vi;
        for (j, (tj, _)) in stencil.iter().enumerate() {
            if i != j {
                l *= (t - tj) / (ti - tj);
            }
        }
        acc += l;
    }
    acc
}

/// One point of the integrated trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleSample {
    pub t: f64,
    pub alpha: Complex64,
    pub phi: f64,
}

/// Integrated displacement/phase path with its error estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Adaptive grid samples, time-ordered, starting at (t0, 0, 0).
    pub samples: Vec<OracleSample>,
    pub alpha_final: Complex64,
    pub phi_final: f64,
    pub error_estimate: f64,
    pub panels_used: usize,
}

impl OracleResult {
    /// Linear interpolation of alpha at time `t` between grid samples.
    pub fn alpha_at(&self, t: f64) -> Complex64 {
        let s = &self.samples;
        if t <= s[0].t {
            return s[0].alpha;
        }
        if t >= s[s.len() - 1].t {
            return s[s.len() - 1].alpha;
        }
        let k = s.partition_point(|smp| smp.t <= t) - 1;
        let (a, b) = (&s[k], &s[k + 1]);
        let f = (t - a.t) / (b.t - a.t);
        a.alpha + (b.alpha - a.alpha) * f
    }
}

struct Sweep<'a> {
    env: &'a Envelope,
    tol_per_width: f64,
    max_panels: usize,
    panels_used: usize,
    alpha: Complex64,
    phi: f64,
    err: f64,
    samples: Vec<OracleSample>,
}

impl Sweep<'_> {
    fn drive(&self, t: f64) -> Complex64 {
        self.env.eta * self.env.amplitude(t) * Complex64::from_polar(1.0, self.env.delta * t)
    }

    /// Chebyshev panel: returns (d alpha, d phi, error estimate, integrand
    /// scale) for [lo, hi] assuming the sweep state holds alpha(lo).
    fn cheb_panel(&self, lo: f64, hi: f64) -> (Complex64, f64, f64, f64) {
        let n = N_CHEB;
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        // Chebyshev-Lobatto nodes x_j = -cos(j pi / n), ascending in t
        let mut g = [Complex64::new(0.0, 0.0); N_CHEB + 1];
        let mut xs = [0.0f64; N_CHEB + 1];
        for (j, (gj, xj)) in g.iter_mut().zip(xs.iter_mut()).enumerate() {
            let x = -(j as f64 * PI / n as f64).cos();
            *xj = x;
            *gj = self.drive(mid + half * x);
        }
        // coefficients c_k of g ~ sum c_k T_k(x)
        let mut c = [Complex64::new(0.0, 0.0); N_CHEB + 1];
        for (k, ck) in c.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, gj) in g.iter().enumerate() {
                // T_k(x_j) with x_j = -cos(j pi/n): T_k(-u) = (-1)^k T_k(u)
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                let tk = (k as f64 * j as f64 * PI / n as f64).cos()
                    * if k % 2 == 0 { 1.0 } else { -1.0 };
                acc += w * tk * *gj;
            }
            *ck = acc * (2.0 / n as f64);
        }
        c[n] *= 0.5;
        // antiderivative coefficients (in x): b_k = (c_{k-1} - c_{k+1})/(2k)
        let mut b = [Complex64::new(0.0, 0.0); N_CHEB + 2];
        for k in 1..=n + 1 {
            let prev = c[k - 1];
            let next = if k + 1 <= n { c[k + 1] } else { Complex64::new(0.0, 0.0) };
            b[k] = (prev - next) / (2.0 * k as f64) * half;
        }
        // fix b_0 so the antiderivative vanishes at x = -1
        let mut at_m1 = Complex64::new(0.0, 0.0);
        for (k, bk) in b.iter().enumerate().skip(1) {
            at_m1 += if k % 2 == 0 { *bk } else { -*bk };
        }
        b[0] = -at_m1;
        let eval_b = |x: f64| clenshaw(&b, x);
        // phase integrand h(x) = Im[conj(alpha(lo) + G(x)) g(x)]
        let mut h = [0.0f64; N_CHEB + 1];
        for (j, hj) in h.iter_mut().enumerate() {
            let a = self.alpha + eval_b(xs[j]);
            *hj = (a.conj() * g[j]).im;
        }
        let mut ch = [0.0f64; N_CHEB + 1];
        for (k, chk) in ch.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j, hj) in h.iter().enumerate() {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                acc += w
                    * hj
                    * (k as f64 * j as f64 * PI / n as f64).cos()
                    * if k % 2 == 0 { 1.0 } else { -1.0 };
            }
            *chk = acc * (2.0 / n as f64);
        }
        ch[n] *= 0.5;
        // integral over [-1,1] of T_k is 2/(1-k^2) for even k; ch[0] is
        // stored doubled (the a_0 convention), so its weight is halved
        let mut dphi = 0.0;
        for (k, chk) in ch.iter().enumerate().step_by(2) {
            let w = if k == 0 { 1.0 } else { 2.0 / (1.0 - (k * k) as f64) };
            dphi += chk * w;
        }
        dphi *= half;
        let dalpha = eval_b(1.0);
        // spectral tail as the error gauge, for both integrals
        let tail_a = (c[n - 1].norm() + c[n].norm()) * (hi - lo);
        let tail_h = (ch[n - 1].abs() + ch[n].abs()) * (hi - lo);
        let scale = g.iter().map(|v| v.norm()).fold(self.alpha.norm(), f64::max) * (hi - lo);
        (dalpha, dphi, tail_a.max(tail_h), scale)
    }

    fn run(&mut self, lo: f64, hi: f64, depth: u32) {
        let (dalpha, dphi, est, scale) = self.cheb_panel(lo, hi);
        let budget = self.tol_per_width * (hi - lo);
        // splitting below the panel's own rounding floor cannot help
        let floor = 64.0 * f64::EPSILON * scale;
        if est > budget.max(floor) && depth < MAX_DEPTH && self.panels_used < self.max_panels {
            let mid = 0.5 * (lo + hi);
            self.run(lo, mid, depth + 1);
            self.run(mid, hi, depth + 1);
            return;
        }
        self.panels_used += 1;
        self.alpha += dalpha;
        self.phi += dphi;
        self.err += est;
        self.samples.push(OracleSample { t: hi, alpha: self.alpha, phi: self.phi });
    }
}

fn clenshaw(b: &[Complex64], x: f64) -> Complex64 {
    let mut u1 = Complex64::new(0.0, 0.0);
    let mut u2 = Complex64::new(0.0, 0.0);
    for bk in b.iter().skip(1).rev() {
        let u = 2.0 * x * u1 - u2 + *bk;
        u2 = u1;
        u1 = u;
    }
    b[0] + x * u1 - u2
}

/// Integrate the drive over [t0, t1]: alpha(t) on an adaptive grid with
/// the geometric phase accumulated on the same sweep.
pub fn integrate_displacement(
    env: &Envelope,
    t0: f64,
    t1: f64,
    tol: f64,
) -> Result<OracleResult, OracleError> {
    if !(t0 < t1) || !t0.is_finite() || !t1.is_finite() {
        return Err(OracleError::InvalidInput("need finite t0 < t1"));
    }
    if !(tol > 0.0) {
        return Err(OracleError::InvalidInput("tolerance must be positive"));
    }
    // initial grid: envelope breakpoints plus a width cap of one
    // oscillation period and one envelope scale
    let mut cuts = vec![t0];
    cuts.extend(env.breakpoints(t0, t1));
    cuts.push(t1);
    let scale_cap = match &env.shape {
        EnvelopeShape::Gaussian { tau } => *tau,
        _ => f64::INFINITY,
    };
    let width_cap = if env.delta != 0.0 {
        (2.0 * PI / env.delta.abs()).min(scale_cap)
    } else {
        scale_cap
    };
    let mut sweep = Sweep {
        env,
        tol_per_width: tol / (t1 - t0),
        max_panels: 50_000,
        panels_used: 0,
        alpha: Complex64::new(0.0, 0.0),
        phi: 0.0,
        err: env.interpolation_error_scale(),
        samples: vec![OracleSample { t: t0, alpha: Complex64::new(0.0, 0.0), phi: 0.0 }],
    };
    for seg in cuts.windows(2) {
        let (lo, hi) = (seg[0], seg[1]);
        if hi <= lo {
            continue;
        }
        let pieces = if width_cap.is_finite() {
            ((hi - lo) / width_cap).ceil().max(1.0) as usize
        } else {
            1
        };
        let step = (hi - lo) / pieces as f64;
        for i in 0..pieces {
            let a = lo + step * i as f64;
            let b = if i + 1 == pieces { hi } else { lo + step * (i + 1) as f64 };
            sweep.run(a, b, 0);
        }
    }
    let result = OracleResult {
        alpha_final: sweep.alpha,
        phi_final: sweep.phi,
        error_estimate: sweep.err,
        panels_used: sweep.panels_used,
        samples: sweep.samples,
    };
    if result.error_estimate > tol {
        return Err(OracleError::ToleranceNotMet { result: Box::new(result) });
    }
    Ok(result)
}

/// Final displacement as the envelope's Fourier transform at the detuning:
/// eta integral A(t) e^{i delta t} dt over the envelope support, by
/// ordinary adaptive quadrature (independent of the panel sweep above).
pub fn fourier_displacement(env: &Envelope) -> Result<Complex64, OracleError> {
    let (lo, hi) = env.support();
    let f = |t: f64| env.eta * env.amplitude(t) * Complex64::from_polar(1.0, env.delta * t);
    let scale = (env.eta * env.a0).abs() * (hi - lo);
    let opts = crate::numerics::QuadratureOptions {
        tol: (scale * 1e-13).max(1e-300),
        max_panels: 16384,
        max_panel_width: if env.delta != 0.0 { Some(2.0 * PI / env.delta.abs()) } else { None },
    };
    match crate::numerics::integrate_adaptive_opts(f, lo, hi, &opts) {
        Ok(r) => Ok(r.value),
        Err(crate::numerics::NumericsError::ToleranceNotMet { .. }) => {
            Err(OracleError::InvalidInput("quadrature budget exhausted"))
        }
        Err(_) => Err(OracleError::InvalidInput("integrand evaluation failed")),
    }
}
