use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::invariant::InvariantSolutionSpec;
use crate::error::{Error, Result};
use crate::model::{observed_order, pde_residual_relative, refinement_norms, FieldSolution, GridField, GridSpec, PhysicalParams, ResidualNorms};
use crate::symmetry::{finite_transform, FiniteTransform};

/// Axis-aligned sampling region in `(t, x, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub t: [f64; 2],
    pub x: [f64; 2],
    pub z: [f64; 2],
}

/// `n` uniform points in `region` from a ChaCha8 stream seeded with `seed`.
pub fn sample_points(seed: u64, n: usize, region: &SampleBox) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |[lo, hi]: [f64; 2]| if hi > lo { rng.gen_range(lo..hi) } else { lo };
    (0..n).map(|_| [draw(region.t), draw(region.x), draw(region.z)]).collect()
}

/// Reduction residuals at `t` with central differences of step `dt`:
/// `e₁ = 2φ′ − R`, `e₂ = V′ − 2Rφ`, `e₃ = R′ + 2Vφ + (N² + f²)φ`.
pub fn reduction_residuals(spec: &InvariantSolutionSpec, t: f64, dt: f64) -> Result<[f64; 3]> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("difference step must be positive, got {dt}")));
    }
    let tr = &spec.trajectory;
    let end = tr.t_end();
    if t - dt < 0.0 || t + dt > end {
        return Err(Error::OutsideSpan { t, start: dt, end: end - dt });
    }
    let a = tr.constants.a;
    let rv = |s: f64| -> Result<(f64, f64, f64)> {
        let (p, q) = tr.at(s)?;
        Ok((2.0 * q, 2.0 * p * p + a, p))
    };
    let (r, v, phi) = rv(t)?;
    let (rp, vp, _) = rv(t + dt)?;
    let (rm, vm, _) = rv(t - dt)?;
    let (_, dphi) = tr.at(t)?;
    let p = &spec.params;
    Ok([
        2.0 * dphi - r,
        (vp - vm) / (2.0 * dt) - 2.0 * r * phi,
        (rp - rm) / (2.0 * dt) + 2.0 * v * phi + (p.n * p.n + p.f * p.f) * phi,
    ])
}

/// Largest relative residual of the exact jets of `sol` over `points`.
pub fn analytic_residual_max(params: &PhysicalParams, sol: &dyn FieldSolution, points: &[[f64; 3]]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &[t, x, z] in points {
        let jet = sol
            .jet(t, x, z)
            .ok_or(Error::IncompleteJet { have: 0, need: 3 })?;
        for r in pde_residual_relative(params, &jet)? {
            if !r.is_finite() {
                return Err(Error::Integration(format!("non-finite residual at ({t}, {x}, {z})")));
            }
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

fn invariance(
    params: &PhysicalParams,
    sol: Arc<dyn FieldSolution>,
    transform: FiniteTransform,
    eps: f64,
    points: &[[f64; 3]],
) -> Result<f64> {
    let moved = finite_transform(transform, eps, sol.clone(), params)?;
    let mut worst = 0.0f64;
    for &[t, x, z] in points {
        let d = moved.try_values(t, x, z)?.max_abs_diff(&sol.values(t, x, z));
        if d.is_nan() {
            return Err(Error::Integration(format!("non-finite field at ({t}, {x}, {z})")));
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

/// `max |(T_ε u)(p) − u(p)|` for the rotation group.
pub fn rotation_invariance_check(
    params: &PhysicalParams,
    sol: Arc<dyn FieldSolution>,
    eps: f64,
    points: &[[f64; 3]],
) -> Result<f64> {
    invariance(params, sol, FiniteTransform::Rotation, eps, points)
}

/// Same deviation for the spatial dilation `(x, z, v, ρ, ψ) → (eᵉx, eᵉz, eᵉv, eᵉρ, e²ᵉψ)`.
pub fn dilation_invariance_check(
    params: &PhysicalParams,
    sol: Arc<dyn FieldSolution>,
    eps: f64,
    points: &[[f64; 3]],
) -> Result<f64> {
    invariance(params, sol, FiniteTransform::Dilation7, eps, points)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub coarse: ResidualNorms,
    pub fine: ResidualNorms,
    pub order: f64,
}

/// Finite-difference residuals of `sol` sampled on `spec` and on its
/// refinement, with the observed order.
pub fn fd_convergence(params: &PhysicalParams, sol: &dyn FieldSolution, spec: GridSpec) -> Result<ConvergenceReport> {
    let (coarse, fine) =
        refinement_norms(params, &GridField::sample(spec, sol)?, &GridField::sample(spec.refined(), sol)?)?;
    if !(coarse.max_overall().is_finite() && fine.max_overall().is_finite()) {
        return Err(Error::Integration("non-finite grid residual".into()));
    }
    let order = observed_order(&coarse, &fine);
    Ok(ConvergenceReport { coarse, fine, order })
}
