use crate::error::{Error, Result};
use crate::model::PhysicalParams;

/// Scaled variables `v* = f v`, `u = g ρ` and `α = f² − N²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NotationMap {
    pub f: f64,
    pub g: f64,
    pub alpha: f64,
}

impl NotationMap {
    pub fn new(params: &PhysicalParams) -> Self {
        NotationMap { f: params.f, g: params.g, alpha: params.alpha() }
    }

    /// `(v, ρ) → (v*, u)`.
    pub fn to_scaled(&self, v: f64, rho: f64) -> (f64, f64) {
        (self.f * v, self.g * rho)
    }

    /// `(v*, u) → (v, ρ)`; needs `f ≠ 0`.
    pub fn from_scaled(&self, v_star: f64, u: f64) -> Result<(f64, f64)> {
        if self.f == 0.0 {
            return Err(Error::OutOfRegime("v = v*/f is undefined for f = 0".into()));
        }
        Ok((v_star / self.f, u / self.g))
    }
}

/// Joint invariants of rotation and dilation:
///
/// ```text
/// J₁ = (x u + z v* + α x z) / (x² + z²)
/// J₂ = (x v* − z u + (α/2)(x² − z²)) / (x² + z²)
/// J₃ = ψ / (x² + z²)
/// ```
pub fn invariants_j(params: &PhysicalParams, x: f64, z: f64, v: f64, rho: f64, psi: f64) -> Result<[f64; 3]> {
    let r2 = x * x + z * z;
    if r2 == 0.0 {
        return Err(Error::SingularPoint("invariants are undefined at x = z = 0".into()));
    }
    let map = NotationMap::new(params);
    let (vs, u) = map.to_scaled(v, rho);
    let a = map.alpha;
    Ok([
        (x * u + z * vs + a * x * z) / r2,
        (x * vs - z * u + 0.5 * a * (x * x - z * z)) / r2,
        psi / r2,
    ])
}
