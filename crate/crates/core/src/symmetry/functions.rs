//! The arbitrary functions appearing in the generator catalogs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Arbitrary function of time drawn from a family closed under
/// differentiation: polynomials of degree ≤ 4, `A sin(ωt + φ₀)`, `A e^{λt}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TimeFunction {
    /// Ascending coefficients `c₀ + c₁t + …`.
    Polynomial { coeffs: Vec<f64> },
    Sine { amplitude: f64, omega: f64, phase: f64 },
    Exponential { amplitude: f64, rate: f64 },
}

pub const MAX_POLY_DEGREE: usize = 4;

impl TimeFunction {
    pub fn polynomial(coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() > MAX_POLY_DEGREE + 1 {
            return Err(Error::InvalidParameter(format!(
                "polynomial degree {} exceeds {MAX_POLY_DEGREE}",
                coeffs.len() - 1
            )));
        }
        Ok(TimeFunction::Polynomial { coeffs: coeffs.to_vec() })
    }

    pub fn constant(c: f64) -> Self {
        TimeFunction::Polynomial { coeffs: vec![c] }
    }

    pub fn identity() -> Self {
        TimeFunction::Polynomial { coeffs: vec![0.0, 1.0] }
    }

    pub fn sine(amplitude: f64, omega: f64, phase: f64) -> Self {
        TimeFunction::Sine { amplitude, omega, phase }
    }

    pub fn exponential(amplitude: f64, rate: f64) -> Self {
        TimeFunction::Exponential { amplitude, rate }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = match self {
            TimeFunction::Polynomial { coeffs } => {
                if coeffs.len() > MAX_POLY_DEGREE + 1 {
                    return Err(Error::InvalidParameter("polynomial degree exceeds 4".into()));
                }
                coeffs.iter().all(|c| c.is_finite())
            }
            TimeFunction::Sine { amplitude, omega, phase } => {
                amplitude.is_finite() && omega.is_finite() && phase.is_finite()
            }
            TimeFunction::Exponential { amplitude, rate } => amplitude.is_finite() && rate.is_finite(),
        };
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("non-finite time function {self:?}")))
        }
    }

    pub fn eval<S: Scalar>(&self, t: S) -> S {
        match self {
            TimeFunction::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(S::zero(), |acc, &c| acc * t + c)
            }
            TimeFunction::Sine { amplitude, omega, phase } => ((t * *omega) + *phase).sin() * *amplitude,
            TimeFunction::Exponential { amplitude, rate } => (t * *rate).exp() * *amplitude,
        }
    }

    /// Exact derivative, staying inside the family.
    pub fn derivative(&self) -> TimeFunction {
        match self {
            TimeFunction::Polynomial { coeffs } => TimeFunction::Polynomial {
                coeffs: coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect(),
            },
            TimeFunction::Sine { amplitude, omega, phase } => TimeFunction::Sine {
                amplitude: amplitude * omega,
                omega: *omega,
                phase: phase + std::f64::consts::FRAC_PI_2,
            },
            TimeFunction::Exponential { amplitude, rate } => {
                TimeFunction::Exponential { amplitude: amplitude * rate, rate: *rate }
            }
        }
    }

    pub fn nth_derivative(&self, n: usize) -> TimeFunction {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// `false` only for functions whose derivative vanishes identically.
    pub fn is_nonconstant(&self) -> bool {
        match self {
            TimeFunction::Polynomial { coeffs } => coeffs.iter().skip(1).any(|&c| c != 0.0),
            TimeFunction::Sine { amplitude, omega, .. } => *amplitude != 0.0 && *omega != 0.0,
            TimeFunction::Exponential { amplitude, rate } => *amplitude != 0.0 && *rate != 0.0,
        }
    }

    /// Largest relative gap between the exact derivatives of order 1..=3 and
    /// central differences of the next lower derivative at `t`.
    pub fn derivative_consistency(&self, t: f64) -> f64 {
        let h = 1e-4;
        (1..=3)
            .map(|k| {
                let lower = self.nth_derivative(k - 1);
                let exact: f64 = self.nth_derivative(k).eval(t);
                let fd = (lower.eval(t + h) - lower.eval(t - h)) / (2.0 * h);
                (exact - fd).abs() / (1.0 + exact.abs())
            })
            .fold(0.0, f64::max)
    }
}

/// Arbitrary function `h(v, s)` of the `f = 0` catalog, with `s = gρ − N²z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HFunction {
    /// `h ≡ 1`.
    One,
    /// `h = s`.
    S,
    /// `h = −s`.
    NegS,
    /// `h = sin s`.
    SinS,
    /// `h = v·s`.
    VTimesS,
}

impl HFunction {
    pub const ALL: [HFunction; 5] = [HFunction::One, HFunction::S, HFunction::NegS, HFunction::SinS, HFunction::VTimesS];

    pub fn eval<S: Scalar>(&self, v: S, s: S) -> S {
        match self {
            HFunction::One => S::constant(1.0),
            HFunction::S => s,
            HFunction::NegS => -s,
            HFunction::SinS => s.sin(),
            HFunction::VTimesS => v * s,
        }
    }

    pub fn depends_on_s(&self) -> bool {
        !matches!(self, HFunction::One)
    }

    pub fn name(&self) -> &'static str {
        match self {
            HFunction::One => "1",
            HFunction::S => "s",
            HFunction::NegS => "-s",
            HFunction::SinS => "sin(s)",
            HFunction::VTimesS => "v*s",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family() -> Vec<TimeFunction> {
        vec![
            TimeFunction::polynomial(&[0.3, -1.0, 0.5, 2.0, -0.25]).unwrap(),
            TimeFunction::sine(1.5, 2.0, 0.3),
            TimeFunction::exponential(0.7, -0.8),
        ]
    }

    #[test]
    fn derivatives_agree_with_central_differences() {
        for f in family() {
            for t in [-0.9, 0.0, 0.37, 1.2] {
                assert!(f.derivative_consistency(t) < 1e-6, "{f:?} at {t}");
            }
        }
    }

    #[test]
    fn derivative_of_identity_is_one() {
        let d = TimeFunction::identity().derivative();
        assert_eq!(d.eval(12.5), 1.0);
        assert!(!d.is_nonconstant());
        assert!(TimeFunction::identity().is_nonconstant());
    }

    #[test]
    fn polynomial_degree_is_capped() {
        assert!(TimeFunction::polynomial(&[0.0; 6]).is_err());
        assert!(TimeFunction::polynomial(&[1.0; 5]).is_ok());
    }

    #[test]
    fn sine_derivative_is_cosine() {
        let f = TimeFunction::sine(2.0, 3.0, 0.1);
        let t = 0.4f64;
        let d: f64 = f.derivative().eval(t);
        assert!((d - 6.0 * (3.0 * t + 0.1).cos()).abs() < 1e-14);
    }

    #[test]
    fn h_family_values() {
        assert_eq!(HFunction::One.eval(3.0, 4.0), 1.0);
        assert_eq!(HFunction::S.eval(3.0, 4.0), 4.0);
        assert_eq!(HFunction::NegS.eval(3.0, 4.0), -4.0);
        assert_eq!(HFunction::VTimesS.eval(3.0, 4.0), 12.0);
        assert_eq!(HFunction::SinS.eval(3.0, 4.0f64), 4.0f64.sin());
    }
}
