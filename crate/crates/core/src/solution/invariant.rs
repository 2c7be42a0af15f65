use std::sync::Arc;

use crate::dynamics::{acceleration, ReducedTrajectory};
use crate::error::{Error, Result};
use crate::model::{FieldSolution, FieldValues, Jet, PhysicalParams};
use crate::scalar::Scalar;
use crate::symmetry::TimeFunction;
use crate::taylor::{Taylor3, Var};

/// Physical parameters together with the reduced trajectory that drives
/// the invariant solution.
#[derive(Clone, Debug)]
pub struct InvariantSolutionSpec {
    pub params: PhysicalParams,
    pub trajectory: Arc<ReducedTrajectory>,
}

impl InvariantSolutionSpec {
    pub fn new(params: PhysicalParams, trajectory: Arc<ReducedTrajectory>) -> Result<Self> {
        params.validate()?;
        if params.f == 0.0 {
            return Err(Error::OutOfRegime("the invariant solution needs f ≠ 0".into()));
        }
        let c = &trajectory.constants;
        let k = c.a + 0.5 * (params.f * params.f + params.n * params.n);
        if (k - c.k).abs() > 1e-12 * (1.0 + c.k.abs()) {
            return Err(Error::InvalidParameter(format!(
                "trajectory constants (A = {}, K = {}) do not match f = {}, N = {}",
                c.a, c.k, params.f, params.n
            )));
        }
        Ok(InvariantSolutionSpec { params, trajectory })
    }

    /// `[φ, φ′, φ″, φ‴, φ⁗]` at `t`, higher derivatives from the equation.
    pub fn phi_derivatives(&self, t: f64) -> Result<[f64; 5]> {
        let k = self.trajectory.constants.k;
        let (p, q) = self.trajectory.at(t)?;
        let p2 = acceleration(k, p);
        let p3 = -6.0 * p * p * q - k * q;
        let p4 = -12.0 * p * q * q - 6.0 * p * p * p2 - k * p2;
        Ok([p, q, p2, p3, p4])
    }
}

/// Two algebraically equivalent ways to write the fields: through `A` or
/// through `K = A + (f² + N²)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionForm {
    A,
    K,
}

/// `ψ = (x² + z²)φ`, `v`, `ρ` linear in `(x, z)` with coefficients from
/// `φ, φ′`.
#[derive(Clone, Debug)]
pub struct InvariantSolution {
    pub spec: InvariantSolutionSpec,
    pub form: SolutionForm,
    v_shift: f64,
}

impl InvariantSolution {
    pub fn new(spec: InvariantSolutionSpec, form: SolutionForm) -> Self {
        InvariantSolution { spec, form, v_shift: 0.0 }
    }

    /// Copy with `V = 2φ² + A` replaced by `V + delta`; used as a negative
    /// control, the result no longer solves the system.
    pub fn with_v_shift(mut self, delta: f64) -> Self {
        self.v_shift = delta;
        self
    }

    fn fields<S: Scalar>(&self, x: S, z: S, phi: S, dphi: S) -> [S; 3] {
        let p = &self.spec.params;
        let (f2, n2) = (p.f * p.f, p.n * p.n);
        let c = &self.spec.trajectory.constants;
        let phi2 = phi * phi * 2.0 + self.v_shift;
        let (cv, cr) = match self.form {
            SolutionForm::A => (phi2 + (c.a + 0.5 * (n2 - f2)), phi2 + (c.a - 0.5 * (n2 - f2))),
            SolutionForm::K => (phi2 + (c.k - f2), phi2 + (c.k - n2)),
        };
        let psi = (x * x + z * z) * phi;
        let v = (cv * x + dphi * z * 2.0) * (1.0 / p.f);
        let rho = (dphi * x * 2.0 - cr * z) * (1.0 / p.g);
        [psi, v, rho]
    }

    pub fn try_values(&self, t: f64, x: f64, z: f64) -> Result<FieldValues> {
        let (phi, dphi) = self.spec.trajectory.at(t)?;
        let [psi, v, rho] = self.fields(x, z, phi, dphi);
        Ok(FieldValues { psi, v, rho })
    }

    /// Third-order jet from the polynomial spatial structure and the
    /// equation-supplied time derivatives of `φ`.
    pub fn try_jet(&self, t: f64, x: f64, z: f64) -> Result<Jet> {
        let d = self.spec.phi_derivatives(t)?;
        let ts = Taylor3::variable(Var::T, t);
        let phi = ts.compose([d[0], d[1], d[2], d[3]]);
        let dphi = ts.compose([d[1], d[2], d[3], d[4]]);
        let fields = self.fields(Taylor3::variable(Var::X, x), Taylor3::variable(Var::Z, z), phi, dphi);
        Ok(Jet::from_series([t, x, z], fields))
    }
}

impl FieldSolution for InvariantSolution {
    fn values(&self, t: f64, x: f64, z: f64) -> FieldValues {
        self.try_values(t, x, z).unwrap_or(FieldValues { psi: f64::NAN, v: f64::NAN, rho: f64::NAN })
    }

    fn jet(&self, t: f64, x: f64, z: f64) -> Option<Jet> {
        self.try_jet(t, x, z).ok()
    }

    fn psi_gradient(&self, t: f64, x: f64, z: f64) -> [f64; 2] {
        let phi = self.spec.trajectory.at(t).map(|v| v.0).unwrap_or(f64::NAN);
        [2.0 * x * phi, 2.0 * z * phi]
    }
}

/// General rotation/dilation-invariant form with arbitrary `R(t), V(t), φ(t)`:
/// `ψ = (x² + z²)φ`, `f v = (V − α/2)x + Rz`, `g ρ = Rx − (V + α/2)z`.
/// It solves the system only when `R = 2φ′`, `V′ = 2Rφ` and
/// `R′ + 2Vφ + (N² + f²)φ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSolution {
    pub params: PhysicalParams,
    pub r: TimeFunction,
    pub v: TimeFunction,
    pub phi: TimeFunction,
}

impl CandidateSolution {
    pub fn new(params: PhysicalParams, r: TimeFunction, v: TimeFunction, phi: TimeFunction) -> Result<Self> {
        params.validate()?;
        if params.f == 0.0 {
            return Err(Error::OutOfRegime("the candidate form needs f ≠ 0".into()));
        }
        for tf in [&r, &v, &phi] {
            tf.validate()?;
        }
        Ok(CandidateSolution { params, r, v, phi })
    }

    fn fields<S: Scalar>(&self, t: S, x: S, z: S) -> [S; 3] {
        let p = &self.params;
        let half_alpha = 0.5 * p.alpha();
        let (r, vv, phi) = (self.r.eval(t), self.v.eval(t), self.phi.eval(t));
        [
            (x * x + z * z) * phi,
            ((vv - half_alpha) * x + r * z) * (1.0 / p.f),
            (r * x - (vv + half_alpha) * z) * (1.0 / p.g),
        ]
    }
}

impl FieldSolution for CandidateSolution {
    fn values(&self, t: f64, x: f64, z: f64) -> FieldValues {
        let [psi, v, rho] = self.fields(t, x, z);
        FieldValues { psi, v, rho }
    }

    fn jet(&self, t: f64, x: f64, z: f64) -> Option<Jet> {
        let s = self.fields(Taylor3::variable(Var::T, t), Taylor3::variable(Var::X, x), Taylor3::variable(Var::Z, z));
        Some(Jet::from_series([t, x, z], s))
    }
}
