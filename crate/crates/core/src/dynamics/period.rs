use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::constants::amplitude_bound;
use super::quadrature::integrate;
use crate::error::{Error, Result};

pub const PERIOD_NODES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodEstimate {
    pub value: f64,
    /// `|T₆₄ − T₁₂₈|`.
    pub error: f64,
}

/// Oscillation period `T = 4∫₀^{C*} dφ / √(B² − φ⁴ − Kφ²)`.
///
/// With `φ = C* sin θ` the integrand becomes `1/√(C*² sin²θ + C*² + K)`,
/// which is smooth on `[0, π/2]`.
pub fn period(k: f64, b: f64) -> Result<PeriodEstimate> {
    if !(b > 0.0) {
        return Err(Error::UndefinedPeriod(format!("B = {b}: equilibrium has no period")));
    }
    let c = amplitude_bound(k, b)?;
    let c2 = c * c;
    let f = |th: f64| {
        let s = th.sin();
        1.0 / (c2 * s * s + c2 + k).sqrt()
    };
    let coarse = 4.0 * integrate(f, 0.0, FRAC_PI_2, PERIOD_NODES);
    let fine = 4.0 * integrate(f, 0.0, FRAC_PI_2, 2 * PERIOD_NODES);
    let error = (coarse - fine).abs();
    if !coarse.is_finite() || error > 1e-8 * coarse {
        return Err(Error::Quadrature { estimate: error, tolerance: 1e-8 * coarse });
    }
    Ok(PeriodEstimate { value: coarse, error })
}
