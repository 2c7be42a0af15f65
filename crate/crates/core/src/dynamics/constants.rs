use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PhysicalParams;

/// `H = φ′² + φ⁴ + Kφ²`, constant along solutions of the reduced equation.
pub fn first_integral(k: f64, phi: f64, dphi: f64) -> f64 {
    dphi * dphi + phi * phi * (phi * phi + k)
}

/// Turning-point amplitude: the non-negative root of `C⁴ + KC² = B²`,
/// i.e. `C² = (−K + √(K² + 4B²))/2`.
pub fn amplitude_bound(k: f64, b: f64) -> Result<f64> {
    if !(k.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite K = {k}, B = {b}")));
    }
    if k < 0.0 {
        return Err(Error::OutOfRegime(format!("amplitude bound needs K ≥ 0, got {k}")));
    }
    let b2 = b * b;
    // Cancellation-free form of (−K + √(K² + 4B²))/2.
    let c2 = if b2 == 0.0 { 0.0 } else { 2.0 * b2 / (k + (k * k + 4.0 * b2).sqrt()) };
    Ok(c2.sqrt())
}

/// Which of the two equivalent constants a configuration supplies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Offset {
    A(f64),
    K(f64),
}

/// Constants of one reduced trajectory. `B²` always comes from the initial
/// data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedConstants {
    pub a: f64,
    pub k: f64,
    pub b2: f64,
    /// `None` outside the `K ≥ 0` regime.
    pub c_star: Option<f64>,
    pub phi0: f64,
    pub dphi0: f64,
    pub exploratory: bool,
}

impl ReducedConstants {
    /// Constants for the bounded regime; `K < 0` is rejected.
    pub fn new(params: &PhysicalParams, offset: Offset, phi0: f64, dphi0: f64) -> Result<Self> {
        let c = Self::build(params, offset, phi0, dphi0, false)?;
        if c.k < 0.0 {
            return Err(Error::OutOfRegime(format!(
                "K = {} < 0; use ReducedConstants::exploratory for this regime",
                c.k
            )));
        }
        Ok(c)
    }

    /// Same construction with `K < 0` admitted and no amplitude bound claimed.
    pub fn exploratory(params: &PhysicalParams, offset: Offset, phi0: f64, dphi0: f64) -> Result<Self> {
        Self::build(params, offset, phi0, dphi0, true)
    }

    fn build(params: &PhysicalParams, offset: Offset, phi0: f64, dphi0: f64, exploratory: bool) -> Result<Self> {
        params.validate()?;
        if !(phi0.is_finite() && dphi0.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite initial data ({phi0}, {dphi0})")));
        }
        let shift = 0.5 * (params.f * params.f + params.n * params.n);
        let (a, k) = match offset {
            Offset::A(a) => (a, a + shift),
            Offset::K(k) => (k - shift, k),
        };
        if !(a.is_finite() && k.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite offset {offset:?}")));
        }
        let b2 = first_integral(k, phi0, dphi0);
        let c_star = if k >= 0.0 { Some(amplitude_bound(k, b2.sqrt())?) } else { None };
        Ok(ReducedConstants { a, k, b2, c_star, phi0, dphi0, exploratory })
    }

    pub fn b(&self) -> f64 {
        self.b2.max(0.0).sqrt()
    }

    pub fn require_bound(&self) -> Result<f64> {
        self.c_star.ok_or_else(|| Error::OutOfRegime(format!("no amplitude bound for K = {}", self.k)))
    }
}
