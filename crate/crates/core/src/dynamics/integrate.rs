//! Fixed-step RK4 with step halving until the first-integral drift target
//! is met.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::acceleration;
use super::constants::{first_integral, ReducedConstants};
use crate::error::{Error, Result};

/// Steps per estimated period on the first pass.
pub const STEPS_PER_PERIOD: f64 = 2000.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorSettings {
    /// Target for `max |H − H₀| / |H₀|`.
    pub drift_tol: f64,
    /// Refinement stops with an error once a pass would exceed this.
    pub max_steps: usize,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        IntegratorSettings { drift_tol: 1e-10, max_steps: 1 << 24 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    /// `max |H − H₀|`.
    pub max_abs: f64,
    /// `max |H − H₀| / (1 + H₀)`.
    pub relative: f64,
    pub step: f64,
    pub steps: usize,
    pub refinements: u32,
}

/// Uniformly stepped samples of `(φ, φ′)` on `[0, t_end]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedTrajectory {
    pub constants: ReducedConstants,
    pub step: f64,
    pub t_end: f64,
    pub phi: Vec<f64>,
    pub dphi: Vec<f64>,
    pub drift: DriftReport,
}

/// Run metadata written next to the trajectory CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMetadata {
    pub constants: ReducedConstants,
    pub t_end: f64,
    pub drift: DriftReport,
    pub period: Option<f64>,
    pub period_error: Option<f64>,
    pub max_abs_phi: f64,
}

fn rk4_pass(k: f64, phi0: f64, dphi0: f64, h: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut phi = Vec::with_capacity(n + 1);
    let mut dphi = Vec::with_capacity(n + 1);
    let (mut p, mut q) = (phi0, dphi0);
    phi.push(p);
    dphi.push(q);
    for _ in 0..n {
        let (k1p, k1q) = (q, acceleration(k, p));
        let (k2p, k2q) = (q + 0.5 * h * k1q, acceleration(k, p + 0.5 * h * k1p));
        let (k3p, k3q) = (q + 0.5 * h * k2q, acceleration(k, p + 0.5 * h * k2p));
        let (k4p, k4q) = (q + h * k3q, acceleration(k, p + h * k3p));
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        phi.push(p);
        dphi.push(q);
    }
    (phi, dphi)
}

/// Integrate `φ″ = −2φ³ − Kφ` from the constants' initial data over
/// `[0, t_end]`.
///
/// The first pass uses `T_est / 2000` with `T_est = 2π/√(K + 2B)`; the step
/// is halved until the relative drift meets `settings.drift_tol`.
pub fn integrate_phi(constants: &ReducedConstants, t_end: f64, settings: &IntegratorSettings) -> Result<ReducedTrajectory> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!("t_end must be positive and finite, got {t_end}")));
    }
    if !(settings.drift_tol > 0.0) {
        return Err(Error::InvalidParameter(format!("drift tolerance must be positive, got {}", settings.drift_tol)));
    }
    let k = constants.k;
    let h0 = first_integral(k, constants.phi0, constants.dphi0);
    let scale = k.abs() + 2.0 * constants.b();
    let t_est = if scale > 0.0 { 2.0 * PI / scale.sqrt() } else { t_end };
    let mut n = ((t_end / (t_est / STEPS_PER_PERIOD)).ceil() as usize).max(1);
    let target = settings.drift_tol * if h0 != 0.0 { h0.abs() } else { 1.0 };
    let mut refinements = 0;
    loop {
        if n > settings.max_steps {
            return Err(Error::Integration(format!(
                "drift target {} not reached within {} steps",
                settings.drift_tol, settings.max_steps
            )));
        }
        let h = t_end / n as f64;
        let (phi, dphi) = rk4_pass(k, constants.phi0, constants.dphi0, h, n);
        if phi.iter().chain(&dphi).any(|v| !v.is_finite()) {
            return Err(Error::Integration(format!("non-finite state with step {h}")));
        }
        let max_abs = phi
            .iter()
            .zip(&dphi)
            .map(|(&p, &q)| (first_integral(k, p, q) - h0).abs())
            .fold(0.0, f64::max);
        if max_abs <= target {
            let drift = DriftReport { max_abs, relative: max_abs / (1.0 + h0.abs()), step: h, steps: n, refinements };
            return Ok(ReducedTrajectory { constants: *constants, step: h, t_end, phi, dphi, drift });
        }
        n *= 2;
        refinements += 1;
    }
}

fn hermite(y0: f64, y1: f64, m0: f64, m1: f64, h: f64, s: f64) -> f64 {
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * m0 + (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * m1
}

impl ReducedTrajectory {
    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn time(&self, i: usize) -> f64 {
        if i + 1 == self.len() {
            self.t_end
        } else {
            self.step * i as f64
        }
    }

    /// `R = 2φ′` at sample `i`.
    pub fn r(&self, i: usize) -> f64 {
        2.0 * self.dphi[i]
    }

    /// `V = 2φ² + A` at sample `i`.
    pub fn v(&self, i: usize) -> f64 {
        2.0 * self.phi[i] * self.phi[i] + self.constants.a
    }

    pub fn first_integral_at(&self, i: usize) -> f64 {
        first_integral(self.constants.k, self.phi[i], self.dphi[i])
    }

    /// `(φ, φ′)` at any `t` in the span: cubic Hermite of `φ` on `(φ, φ′)` and
    /// of `φ′` on `(φ′, φ″)`, with `φ″` from the equation. Times within a
    /// few ulps of the span ends are clamped onto it.
    pub fn at(&self, t: f64) -> Result<(f64, f64)> {
        let end = self.t_end();
        let slack = 4.0 * f64::EPSILON * end.max(1.0);
        if !(t >= -slack && t <= end + slack) {
            return Err(Error::OutsideSpan { t, start: 0.0, end });
        }
        let t = t.clamp(0.0, end);
        let i = ((t / self.step).floor() as usize).min(self.len() - 2);
        let s = (t - self.time(i)) / self.step;
        let k = self.constants.k;
        let (p0, p1, q0, q1) = (self.phi[i], self.phi[i + 1], self.dphi[i], self.dphi[i + 1]);
        let phi = hermite(p0, p1, q0, q1, self.step, s);
        let dphi = hermite(q0, q1, acceleration(k, p0), acceleration(k, p1), self.step, s);
        Ok((phi, dphi))
    }

    pub fn max_abs_phi(&self) -> f64 {
        self.phi.iter().fold(0.0, |a, p| a.max(p.abs()))
    }

    /// Roots of `φ`, refined by bisection on the Hermite interpolant.
    pub fn zero_crossings(&self) -> Vec<f64> {
        self.roots(|tr, t| tr.at(t).map(|v| v.0).unwrap_or(f64::NAN), &self.phi)
    }

    /// Times and values of the local maxima of `φ` (roots of `φ′` where `φ > 0`).
    pub fn maxima(&self) -> Vec<(f64, f64)> {
        let dphi = self.dphi.clone();
        self.roots(|tr, t| tr.at(t).map(|v| v.1).unwrap_or(f64::NAN), &dphi)
            .into_iter()
            .filter_map(|t| self.at(t).ok().map(|(p, _)| (t, p)))
            .filter(|&(_, p)| p > 0.0)
            .collect()
    }

    fn roots(&self, f: impl Fn(&Self, f64) -> f64, samples: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..samples.len().saturating_sub(1) {
            let (y0, y1) = (samples[i], samples[i + 1]);
            if y0 == 0.0 {
                if i > 0 && samples[i - 1] != 0.0 && samples[i - 1].signum() != samples[i + 1].signum() {
                    out.push(self.time(i));
                }
                continue;
            }
            if y0.signum() == y1.signum() || y1 == 0.0 {
                continue;
            }
            let (mut lo, mut hi) = (self.time(i), self.time(i + 1));
            let flo = f(self, lo);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (f(self, mid) > 0.0) == (flo > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        out
    }

    /// Period from the mean spacing of zero crossings (two per period).
    pub fn crossing_period(&self) -> Option<f64> {
        let z = self.zero_crossings();
        if z.len() < 3 {
            return None;
        }
        Some(2.0 * (z[z.len() - 1] - z[0]) / (z.len() - 1) as f64)
    }

    /// Rows `t, φ, φ′, H, R, V` at `n` uniform times (including both ends).
    pub fn rows(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 output samples, got {n}")));
        }
        let end = self.t_end();
        (0..n)
            .map(|j| {
                let t = if j == n - 1 { end } else { end * j as f64 / (n - 1) as f64 };
                let (p, q) = self.at(t)?;
                Ok(vec![
                    t,
                    p,
                    q,
                    first_integral(self.constants.k, p, q),
                    2.0 * q,
                    2.0 * p * p + self.constants.a,
                ])
            })
            .collect()
    }

    pub fn metadata(&self) -> TrajectoryMetadata {
        let period = if self.constants.k >= 0.0 { super::period(self.constants.k, self.constants.b()).ok() } else { None };
        TrajectoryMetadata {
            constants: self.constants,
            t_end: self.t_end(),
            drift: self.drift,
            period: period.map(|p| p.value),
            period_error: period.map(|p| p.error),
            max_abs_phi: self.max_abs_phi(),
        }
    }
}

pub const TRAJECTORY_HEADER: [&str; 6] = ["t", "phi", "dphi", "H", "R", "V"];
