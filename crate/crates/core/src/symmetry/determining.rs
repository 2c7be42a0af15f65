use serde::Serialize;

use super::generator::Generator;
use super::manifold::manifold_defect;
use super::prolong::prolong;
use crate::error::{Error, Result};
use crate::model::{residual_terms, Jet, PhysicalParams};
use crate::scalar::Dual;

/// Jets whose consequence residual exceeds this are rejected.
pub const ON_MANIFOLD_TOL: f64 = 1e-10;

/// Prolonged action of a generator on the three residuals at one jet.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeterminingResidual {
    /// `pr X(rᵢ)`.
    pub absolute: [f64; 3],
    /// Largest single additive contribution to `pr X(rᵢ)`.
    pub scale: [f64; 3],
    /// `|pr X(rᵢ)| / (1 + scale)`.
    pub relative: [f64; 3],
}

impl DeterminingResidual {
    pub fn max_relative(&self) -> f64 {
        self.relative.iter().fold(0.0f64, |a, &b| a.max(b))
    }
}

/// Evaluate `pr X(rᵢ)` at an on-manifold jet.
///
/// The residuals carry no explicit dependence on `(t, x, z)` or on the
/// undifferentiated fields, so the prolonged action is the directional
/// derivative of each residual along the `ζ` coefficients.
pub fn determining_residual(gen: &Generator, params: &PhysicalParams, jet: &Jet) -> Result<DeterminingResidual> {
    let defect = manifold_defect(params, jet)?;
    if defect > ON_MANIFOLD_TOL {
        return Err(Error::OffManifold(defect));
    }
    let zeta = prolong(gen, jet)?;
    let terms = residual_terms(params, |f, m| Dual::<1>::new(jet.get(f, m), [zeta.get(f, m)]));
    let mut out = DeterminingResidual { absolute: [0.0; 3], scale: [0.0; 3], relative: [0.0; 3] };
    for eq in 0..3 {
        let contributions = terms.terms(eq).iter().map(|d| d.eps[0]);
        let (sum, scale) = contributions.fold((0.0, 0.0f64), |(s, m), c| (s + c, m.max(c.abs())));
        out.absolute[eq] = sum;
        out.scale[eq] = scale;
        out.relative[eq] = sum.abs() / (1.0 + scale);
    }
    Ok(out)
}
