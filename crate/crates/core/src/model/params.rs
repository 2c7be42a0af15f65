use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which generator catalog a parameter set admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `f ≠ 0`: nine-operator catalog.
    Rotating,
    /// `f = 0`: catalog with the arbitrary function `h(v, gρ − N²z)`.
    NonRotating,
}

/// Constant physical parameters of the model.
///
/// `f` is the Coriolis parameter (1/s), `n` the buoyancy frequency (1/s),
/// `g` the gravitational acceleration (m/s²).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub f: f64,
    #[serde(rename = "N")]
    pub n: f64,
    pub g: f64,
}

impl PhysicalParams {
    pub fn new(f: f64, n: f64, g: f64) -> Result<Self> {
        let p = PhysicalParams { f, n, g };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n.is_finite() && self.n > 0.0) {
            return Err(Error::InvalidParameter(format!("N must be positive, got {}", self.n)));
        }
        if !(self.g.is_finite() && self.g > 0.0) {
            return Err(Error::InvalidParameter(format!("g must be positive, got {}", self.g)));
        }
        if !(self.f.is_finite() && self.f >= 0.0) {
            return Err(Error::InvalidParameter(format!("f must be non-negative, got {}", self.f)));
        }
        Ok(())
    }

    /// `α = f² − N²`.
    pub fn alpha(&self) -> f64 {
        self.f * self.f - self.n * self.n
    }

    /// `N²/g`.
    pub fn n2_over_g(&self) -> f64 {
        self.n * self.n / self.g
    }

    pub fn branch(&self) -> Branch {
        if self.f == 0.0 {
            Branch::NonRotating
        } else {
            Branch::Rotating
        }
    }

    pub fn require(&self, branch: Branch) -> Result<()> {
        if self.branch() == branch {
            Ok(())
        } else {
            Err(Error::CatalogMismatch(format!(
                "operation needs the {:?} branch, parameters have f = {}",
                branch, self.f
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_sign_is_f2_minus_n2() {
        let p = PhysicalParams::new(1.0, 2.0, 9.8).unwrap();
        assert_eq!(p.alpha(), -3.0);
        assert_eq!(p.branch(), Branch::Rotating);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PhysicalParams::new(1.0, 0.0, 9.8).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, -1.0).is_err());
        assert!(PhysicalParams::new(-0.1, 1.0, 1.0).is_err());
        let p = PhysicalParams::new(0.0, 1.0, 1.0).unwrap();
        assert!(p.require(Branch::Rotating).is_err());
        assert!(p.require(Branch::NonRotating).is_ok());
    }

    #[test]
    fn serializes_with_capital_n() {
        let p = PhysicalParams::new(1.0, 2.0, 9.8).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"f":1.0,"N":2.0,"g":9.8}"#);
    }
}
