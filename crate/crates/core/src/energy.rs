//! Energy density `E = v² + (g²/N²)ρ² + |∇ψ|²`, its disk totals, and an
//! audit of the closed form for the invariant solution.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamics::quadrature::gauss_legendre;
use crate::error::{Error, Result};
use crate::model::{FieldSolution, FieldValues, PhysicalParams};
use crate::solution::InvariantSolution;

pub fn energy_density_direct(params: &PhysicalParams, u: &FieldValues, grad_psi: [f64; 2]) -> f64 {
    let r = params.g / params.n * u.rho;
    u.v * u.v + r * r + grad_psi[0] * grad_psi[0] + grad_psi[1] * grad_psi[1]
}

/// Density of `sol` at a point.
pub fn density_at(params: &PhysicalParams, sol: &dyn FieldSolution, t: f64, x: f64, z: f64) -> f64 {
    energy_density_direct(params, &sol.values(t, x, z), sol.psi_gradient(t, x, z))
}

/// Reference closed-form density for the invariant solution:
///
/// ```text
/// 4(1/f² − 1/N²)(x² − z²)(φ² + K)φ² + (f − K/f)²x² + (N − K/N)²z²
///   + 4(1/f² − 1/N²) xz (2φ² + K) φ′
/// ```
pub fn energy_density_closedform(params: &PhysicalParams, k: f64, phi: f64, dphi: f64, x: f64, z: f64) -> f64 {
    let (f, n) = (params.f, params.n);
    let c = 4.0 * (1.0 / (f * f) - 1.0 / (n * n));
    let phi2 = phi * phi;
    c * (x * x - z * z) * (phi2 + k) * phi2
        + (f - k / f).powi(2) * x * x
        + (n - k / n).powi(2) * z * z
        + c * x * z * (2.0 * phi2 + k) * dphi
}

/// The `xz` coefficient of the closed form, `4(1/f² − 1/N²)(2φ² + K)φ′`.
pub fn closedform_cross_coefficient(params: &PhysicalParams, k: f64, phi: f64, dphi: f64) -> f64 {
    4.0 * (1.0 / (params.f * params.f) - 1.0 / (params.n * params.n)) * (2.0 * phi * phi + k) * dphi
}

/// Disk total of the direct density for the invariant solution, from
/// integrating the exact quadratic form over `x² + z² ≤ R²`:
/// `(πR⁴/4)[(f − K/f)² + (N − K/N)² + 4B²(1/f² + 1/N²)]`.
pub fn invariant_disk_total(params: &PhysicalParams, k: f64, b2: f64, radius: f64) -> f64 {
    let (f, n) = (params.f, params.n);
    PI * radius.powi(4) / 4.0
        * ((f - k / f).powi(2) + (n - k / n).powi(2) + 4.0 * b2 * (1.0 / (f * f) + 1.0 / (n * n)))
}

/// Polar tensor rule: Gauss–Legendre in radius, trapezoid in angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskQuadrature {
    pub radial: usize,
    pub angular: usize,
    /// Accepted `|I(n) − I(2n)| / max(|I|, 1)`.
    pub tolerance: f64,
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        DiskQuadrature { radial: 32, angular: 128, tolerance: 1e-8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskTotal {
    pub value: f64,
    /// Difference against the rule with doubled node counts.
    pub error: f64,
}

fn disk_rule(density: &dyn Fn(f64, f64) -> f64, radius: f64, radial: usize, angular: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(radial);
    let dth = 2.0 * PI / angular as f64;
    let mut total = 0.0;
    for (xi, wi) in nodes.iter().zip(&weights) {
        let r = 0.5 * radius * (xi + 1.0);
        let ring: f64 = (0..angular)
            .map(|j| {
                let (s, c) = (j as f64 * dth).sin_cos();
                density(r * c, r * s)
            })
            .sum();
        total += wi * r * ring * dth;
    }
    0.5 * radius * total
}

/// `∬_{x² + z² ≤ R²} E dx dz` at time `t`.
pub fn total_energy_disk(
    params: &PhysicalParams,
    sol: &dyn FieldSolution,
    radius: f64,
    t: f64,
    rule: &DiskQuadrature,
) -> Result<DiskTotal> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!("disk radius must be positive, got {radius}")));
    }
    if rule.radial == 0 || rule.angular == 0 {
        return Err(Error::InvalidParameter("quadrature needs at least one node per direction".into()));
    }
    let density = |x: f64, z: f64| density_at(params, sol, t, x, z);
    let coarse = disk_rule(&density, radius, rule.radial, rule.angular);
    let fine = disk_rule(&density, radius, 2 * rule.radial, 2 * rule.angular);
    let error = (coarse - fine).abs();
    if !coarse.is_finite() || !fine.is_finite() {
        return Err(Error::Integration(format!("non-finite energy density at t = {t}")));
    }
    let tolerance = rule.tolerance * coarse.abs().max(1.0);
    if error > tolerance {
        return Err(Error::Quadrature { estimate: error, tolerance });
    }
    Ok(DiskTotal { value: coarse, error })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub radius: f64,
    pub times: Vec<f64>,
    pub totals: Vec<f64>,
    pub quadrature_errors: Vec<f64>,
    /// `(max − min) / max |total|`; zero when every total vanishes.
    pub max_relative_variation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub audit: Option<ClosedFormAudit>,
}

impl EnergyReport {
    pub fn csv_rows(&self) -> Vec<Vec<f64>> {
        (0..self.times.len()).map(|i| vec![self.times[i], self.totals[i], self.quadrature_errors[i]]).collect()
    }
}

pub const ENERGY_HEADER: [&str; 3] = ["t", "total_energy", "quadrature_error"];

/// Disk totals over `times` and their relative spread.
pub fn conservation_check(
    params: &PhysicalParams,
    sol: &dyn FieldSolution,
    radius: f64,
    times: &[f64],
    rule: &DiskQuadrature,
    tolerance: f64,
) -> Result<EnergyReport> {
    if times.is_empty() {
        return Err(Error::InvalidParameter("no time samples".into()));
    }
    let mut totals = Vec::with_capacity(times.len());
    let mut errors = Vec::with_capacity(times.len());
    for &t in times {
        let d = total_energy_disk(params, sol, radius, t, rule)?;
        totals.push(d.value);
        errors.push(d.error);
    }
    let max = totals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = totals.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = totals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let variation = if scale > 0.0 { (max - min) / scale } else { 0.0 };
    Ok(EnergyReport {
        radius,
        times: times.to_vec(),
        totals,
        quadrature_errors: errors,
        max_relative_variation: variation,
        tolerance,
        pass: variation <= tolerance,
        audit: None,
    })
}

/// Measured structure of `D = E_direct − E_closed` for an invariant solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormAudit {
    /// Least-squares `[c_xx, c_xz, c_zz]` of `D ≈ c_xx x² + c_xz xz + c_zz z²`
    /// over all audited points and times.
    pub fitted: [f64; 3],
    pub fit_residual: f64,
    /// `4B²/N², 0, 4B²/f²`.
    pub candidate: [f64; 3],
    pub b2: f64,
    /// Largest `(max_t D − min_t D)/(1 + max_t |D|)` over the audited points.
    pub max_time_variation: f64,
    pub max_abs_discrepancy: f64,
    /// Largest gap between the measured `xz` coefficient of `E_direct`
    /// and the closed-form one, relative to `1 + |coefficient|`.
    pub cross_term_error: f64,
    pub disk_total_closed_form: f64,
}

/// Compare the direct density of `sol` with the reference closed form.
pub fn closed_form_audit(
    sol: &InvariantSolution,
    times: &[f64],
    points: &[[f64; 2]],
    radius: f64,
) -> Result<ClosedFormAudit> {
    let p = &sol.spec.params;
    let c = &sol.spec.trajectory.constants;
    if times.is_empty() || points.is_empty() {
        return Err(Error::InvalidParameter("audit needs times and points".into()));
    }
    let mut normal = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    let mut per_point = vec![(f64::INFINITY, f64::NEG_INFINITY, 0.0f64); points.len()];
    let mut samples = Vec::new();
    let mut max_abs = 0.0f64;
    let mut cross_err = 0.0f64;
    for &t in times {
        let (phi, dphi) = sol.spec.trajectory.at(t)?;
        for (j, &[x, z]) in points.iter().enumerate() {
            let d = density_at(p, sol, t, x, z) - energy_density_closedform(p, c.k, phi, dphi, x, z);
            let e = &mut per_point[j];
            *e = (e.0.min(d), e.1.max(d), e.2.max(d.abs()));
            max_abs = max_abs.max(d.abs());
            let basis = [x * x, x * z, z * z];
            for a in 0..3 {
                rhs[a] += basis[a] * d;
                for b in 0..3 {
                    normal[a][b] += basis[a] * basis[b];
                }
            }
            samples.push((basis, d));
        }
        let measured = 0.5 * (density_at(p, sol, t, 1.0, 1.0) - density_at(p, sol, t, 1.0, -1.0));
        let closed = closedform_cross_coefficient(p, c.k, phi, dphi);
        cross_err = cross_err.max((measured - closed).abs() / (1.0 + closed.abs()));
    }
    let fitted = solve3(normal, rhs).ok_or_else(|| {
        Error::InvalidParameter("audit points do not determine a quadratic form".into())
    })?;
    let fit_residual = samples
        .iter()
        .map(|(b, d)| (b[0] * fitted[0] + b[1] * fitted[1] + b[2] * fitted[2] - d).abs())
        .fold(0.0, f64::max);
    let max_time_variation = per_point.iter().map(|(lo, hi, m)| (hi - lo) / (1.0 + m)).fold(0.0, f64::max);
    Ok(ClosedFormAudit {
        fitted,
        fit_residual,
        candidate: [4.0 * c.b2 / (p.n * p.n), 0.0, 4.0 * c.b2 / (p.f * p.f)],
        b2: c.b2,
        max_time_variation,
        max_abs_discrepancy: max_abs,
        cross_term_error: cross_err,
        disk_total_closed_form: invariant_disk_total(p, c.k, c.b2, radius),
    })
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let m = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= m * a[col][k];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Density samples along the rays `θ ∈ {0, π/4, π/2}` and on circles of
/// radius `R/2` and `R`: rows `t, r, theta, x, z, E_direct`.
pub fn density_profiles(params: &PhysicalParams, sol: &dyn FieldSolution, radius: f64, t: f64, n: usize) -> Vec<Vec<f64>> {
    let mut rows = Vec::new();
    for theta in [0.0, PI / 4.0, PI / 2.0] {
        for i in 0..n {
            let r = radius * i as f64 / (n.max(2) - 1) as f64;
            let (x, z) = (r * theta.cos(), r * theta.sin());
            rows.push(vec![t, r, theta, x, z, density_at(params, sol, t, x, z)]);
        }
    }
    for r in [0.5 * radius, radius] {
        for j in 0..n {
            let theta = 2.0 * PI * j as f64 / n.max(1) as f64;
            let (x, z) = (r * theta.cos(), r * theta.sin());
            rows.push(vec![t, r, theta, x, z, density_at(params, sol, t, x, z)]);
        }
    }
    rows
}

pub const PROFILE_HEADER: [&str; 6] = ["t", "r", "theta", "x", "z", "E"];
