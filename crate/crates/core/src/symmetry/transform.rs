//! Finite group actions obtained by solving the Lie equations of the catalog
//! generators, and their action on whole solutions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::functions::{HFunction, TimeFunction};
use crate::error::{Error, Result};
use crate::model::{Branch, FieldSolution, FieldValues, PhysicalParams};

/// RK4 steps used by the numerically integrated `h`-flow.
pub const FLOW_H_STEPS: usize = 1024;

/// One-parameter groups with closed-form or integrated flows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "function", rename_all = "snake_case")]
pub enum FiniteTransform {
    Rotation,
    Dilation7,
    Dilation8,
    ShiftV,
    ShiftRho,
    ShiftPsi(TimeFunction),
    GenTransX(TimeFunction),
    GenTransZ(TimeFunction),
    TimeShift,
    FlowH(HFunction),
}

impl FiniteTransform {
    pub fn admits(&self, branch: Branch) -> bool {
        match self {
            FiniteTransform::Rotation | FiniteTransform::ShiftV => branch == Branch::Rotating,
            FiniteTransform::FlowH(_) => branch == Branch::NonRotating,
            _ => true,
        }
    }

    pub fn is_closed_form(&self) -> bool {
        !matches!(self, FiniteTransform::FlowH(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            FiniteTransform::Rotation => "rotation",
            FiniteTransform::Dilation7 => "dilation7",
            FiniteTransform::Dilation8 => "dilation8",
            FiniteTransform::ShiftV => "shiftV",
            FiniteTransform::ShiftRho => "shiftRho",
            FiniteTransform::ShiftPsi(_) => "shiftPsi",
            FiniteTransform::GenTransX(_) => "genTransX",
            FiniteTransform::GenTransZ(_) => "genTransZ",
            FiniteTransform::TimeShift => "timeShift",
            FiniteTransform::FlowH(_) => "flowH",
        }
    }

    /// Image of the independent variables `(t, x, z)`.
    pub fn map_base(&self, eps: f64, [t, x, z]: [f64; 3]) -> [f64; 3] {
        match self {
            FiniteTransform::Rotation => {
                let (s, c) = eps.sin_cos();
                [t, x * c + z * s, z * c - x * s]
            }
            FiniteTransform::Dilation7 => {
                let e = eps.exp();
                [t, e * x, e * z]
            }
            FiniteTransform::Dilation8 => {
                let e = eps.exp();
                [e * t, e * e * x, e * e * z]
            }
            FiniteTransform::GenTransX(b) => [t, x + eps * b.eval(t), z],
            FiniteTransform::GenTransZ(c) => [t, x, z + eps * c.eval(t)],
            FiniteTransform::TimeShift => [t + eps, x, z],
            FiniteTransform::ShiftV
            | FiniteTransform::ShiftRho
            | FiniteTransform::ShiftPsi(_)
            | FiniteTransform::FlowH(_) => [t, x, z],
        }
    }

    /// Image of a full point `(t, x, z)` with field values `u`.
    pub fn map_point(
        &self,
        params: &PhysicalParams,
        eps: f64,
        base: [f64; 3],
        u: FieldValues,
    ) -> Result<([f64; 3], FieldValues)> {
        if eps == 0.0 {
            return Ok((base, u));
        }
        let [t, x, z] = base;
        let FieldValues { psi, v, rho } = u;
        let PhysicalParams { f, g, .. } = *params;
        let n2g = params.n2_over_g();
        let new_base = self.map_base(eps, base);
        let out = match self {
            FiniteTransform::Rotation => {
                let (s, c) = eps.sin_cos();
                let nf = params.n * params.n - f * f;
                FieldValues {
                    psi,
                    v: (f * v * c - g * rho * s + nf * z * s) / f,
                    rho: (g * rho * c + f * v * s - nf * x * s) / g,
                }
            }
            FiniteTransform::Dilation7 => {
                let e = eps.exp();
                FieldValues { psi: e * e * psi, v: e * v, rho: e * rho }
            }
            FiniteTransform::Dilation8 => {
                let e2m1 = (2.0 * eps).exp_m1();
                FieldValues {
                    psi: (3.0 * eps).exp() * psi,
                    v: v - f * x * e2m1,
                    rho: rho + n2g * z * e2m1,
                }
            }
            FiniteTransform::ShiftV => FieldValues { v: v + eps, ..u },
            FiniteTransform::ShiftRho => FieldValues { rho: rho + eps, ..u },
            FiniteTransform::ShiftPsi(a) => FieldValues { psi: psi + eps * a.eval(t), ..u },
            FiniteTransform::GenTransX(b) => FieldValues {
                psi: psi + eps * b.derivative().eval(t) * z,
                v: v - eps * f * b.eval(t),
                rho,
            },
            FiniteTransform::GenTransZ(c) => FieldValues {
                psi: psi - eps * c.derivative().eval(t) * x,
                v,
                rho: rho + eps * n2g * c.eval(t),
            },
            FiniteTransform::TimeShift => u,
            FiniteTransform::FlowH(h) => {
                // s = gρ − N²z is constant along the flow.
                let s = g * rho - params.n * params.n * z;
                let step = eps / FLOW_H_STEPS as f64;
                let rhs = |w: f64| h.eval(w, s);
                let mut w = v;
                for _ in 0..FLOW_H_STEPS {
                    let k1 = rhs(w);
                    let k2 = rhs(w + 0.5 * step * k1);
                    let k3 = rhs(w + 0.5 * step * k2);
                    let k4 = rhs(w + step * k3);
                    w += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                    if !w.is_finite() {
                        return Err(Error::Integration(format!("h-flow diverged at ε = {eps}")));
                    }
                }
                if eps != 0.0 && step == 0.0 {
                    return Err(Error::Integration("h-flow step underflow".into()));
                }
                FieldValues { v: w, ..u }
            }
        };
        Ok((new_base, out))
    }
}

/// A solution pushed forward by a finite transform.
pub struct Transformed {
    pub base: Arc<dyn FieldSolution>,
    pub transform: FiniteTransform,
    pub eps: f64,
    pub params: PhysicalParams,
}

impl Transformed {
    /// Values at the transformed point `(t̄, x̄, z̄)`.
    pub fn try_values(&self, t: f64, x: f64, z: f64) -> Result<FieldValues> {
        // Independent-variable flows do not involve the fields, so the
        // preimage is the base flow at −ε.
        let pre = self.transform.map_base(-self.eps, [t, x, z]);
        let u = self.base.values(pre[0], pre[1], pre[2]);
        Ok(self.transform.map_point(&self.params, self.eps, pre, u)?.1)
    }
}

impl FieldSolution for Transformed {
    fn values(&self, t: f64, x: f64, z: f64) -> FieldValues {
        self.try_values(t, x, z)
            .unwrap_or(FieldValues { psi: f64::NAN, v: f64::NAN, rho: f64::NAN })
    }
}

/// Push `sol` forward by the group element `eps` of `transform`.
pub fn finite_transform(
    transform: FiniteTransform,
    eps: f64,
    sol: Arc<dyn FieldSolution>,
    params: &PhysicalParams,
) -> Result<Transformed> {
    params.validate()?;
    if !eps.is_finite() {
        return Err(Error::InvalidParameter(format!("group parameter must be finite, got {eps}")));
    }
    if !transform.admits(params.branch()) {
        return Err(Error::CatalogMismatch(format!(
            "{} is not admitted for f = {}",
            transform.label(),
            params.f
        )));
    }
    if let FiniteTransform::ShiftPsi(tf) | FiniteTransform::GenTransX(tf) | FiniteTransform::GenTransZ(tf) = &transform
    {
        tf.validate()?;
    }
    Ok(Transformed { base: sol, transform, eps, params: *params })
}
