use crate::error::{Error, Result};
use crate::model::{FieldSolution, FieldValues, Jet, PhysicalParams};
use crate::scalar::Scalar;
use crate::taylor::{Taylor3, Var};

/// Exact plane internal wave `ψ = a sin θ`, `θ = kx + mz − ωt`, with
/// `ω² = (N²k² + f²m²)/(k² + m²)`. All Jacobian terms vanish, so the wave
/// solves the full nonlinear system on both the rotating and non-rotating
/// branches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWave {
    pub params: PhysicalParams,
    pub amplitude: f64,
    pub k: f64,
    pub m: f64,
    pub omega: f64,
}

impl PlaneWave {
    pub fn new(params: PhysicalParams, amplitude: f64, k: f64, m: f64) -> Result<Self> {
        params.validate()?;
        let kk = k * k + m * m;
        if !(kk > 0.0) || !amplitude.is_finite() {
            return Err(Error::InvalidParameter(format!("degenerate wave (a, k, m) = ({amplitude}, {k}, {m})")));
        }
        let omega = ((params.n * params.n * k * k + params.f * params.f * m * m) / kk).sqrt();
        if omega == 0.0 {
            return Err(Error::InvalidParameter("wave frequency is zero".into()));
        }
        Ok(PlaneWave { params, amplitude, k, m, omega })
    }

    fn fields<S: Scalar>(&self, t: S, x: S, z: S) -> [S; 3] {
        let p = &self.params;
        let s = (x * self.k + z * self.m - t * self.omega).sin();
        let a = self.amplitude;
        [
            s * a,
            s * (p.f * a * self.m / self.omega),
            s * (p.n * p.n * a * self.k / (p.g * self.omega)),
        ]
    }
}

impl FieldSolution for PlaneWave {
    fn values(&self, t: f64, x: f64, z: f64) -> FieldValues {
        let [psi, v, rho] = self.fields(t, x, z);
        FieldValues { psi, v, rho }
    }

    fn jet(&self, t: f64, x: f64, z: f64) -> Option<Jet> {
        let s = self.fields(Taylor3::variable(Var::T, t), Taylor3::variable(Var::X, x), Taylor3::variable(Var::Z, z));
        Some(Jet::from_series([t, x, z], s))
    }

    fn psi_gradient(&self, t: f64, x: f64, z: f64) -> [f64; 2] {
        let c = self.amplitude * (self.k * x + self.m * z - self.omega * t).cos();
        [self.k * c, self.m * c]
    }
}
