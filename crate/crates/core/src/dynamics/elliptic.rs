//! Jacobi elliptic functions and the closed-form Duffing trajectory, used
//! as an independent check on the integrator and the period quadrature.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const AGM_MAX: usize = 64;

/// Complete elliptic integral of the first kind, parameter `m ∈ [0, 1)`.
pub fn ellipk(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::InvalidParameter(format!("ellipk needs 0 ≤ m < 1, got {m}")));
    }
    let (mut a, mut b) = (1.0f64, (1.0 - m).sqrt());
    for _ in 0..AGM_MAX {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    Ok(FRAC_PI_2 / a)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiValues {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// `sn, cn, dn` of `u` with parameter `m ∈ [0, 1)` by descending Landen
/// (arithmetic–geometric mean) transformation.
pub fn jacobi(u: f64, m: f64) -> Result<JacobiValues> {
    if !(0.0..1.0).contains(&m) || !u.is_finite() {
        return Err(Error::InvalidParameter(format!("jacobi needs finite u and 0 ≤ m < 1, got ({u}, {m})")));
    }
    let mut a = vec![1.0f64];
    let mut c = vec![m.sqrt()];
    let mut b = (1.0 - m).sqrt();
    while c.last().unwrap().abs() > 1e-16 && a.len() < AGM_MAX {
        let (an, bn) = (*a.last().unwrap(), b);
        a.push(0.5 * (an + bn));
        c.push(0.5 * (an - bn));
        b = (an * bn).sqrt();
    }
    let n = a.len() - 1;
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    let mut prev = phi;
    for j in (1..=n).rev() {
        prev = phi;
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = if n == 0 { 1.0 } else { cn / (prev - phi).cos() };
    Ok(JacobiValues { sn, cn, dn })
}

/// `φ(t) = C* cn(Ωt, m)` with `Ω² = K + 2C*²`, `m = C*²/Ω²`: the solution of
/// `φ″ + 2φ³ + Kφ = 0` through `(C*, 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipticOracle {
    pub c_star: f64,
    pub omega: f64,
    pub m: f64,
}

impl EllipticOracle {
    pub fn new(k: f64, c_star: f64) -> Result<Self> {
        if !(k >= 0.0 && c_star >= 0.0) {
            return Err(Error::OutOfRegime(format!("oracle needs K ≥ 0, C* ≥ 0; got ({k}, {c_star})")));
        }
        let omega2 = k + 2.0 * c_star * c_star;
        if omega2 == 0.0 {
            return Err(Error::UndefinedPeriod("K = C* = 0".into()));
        }
        Ok(EllipticOracle { c_star, omega: omega2.sqrt(), m: c_star * c_star / omega2 })
    }

    pub fn phi(&self, t: f64) -> Result<f64> {
        Ok(self.c_star * jacobi(self.omega * t, self.m)?.cn)
    }

    pub fn dphi(&self, t: f64) -> Result<f64> {
        let j = jacobi(self.omega * t, self.m)?;
        Ok(-self.c_star * self.omega * j.sn * j.dn)
    }

    pub fn period(&self) -> Result<f64> {
        Ok(4.0 * ellipk(self.m)? / self.omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // mpmath: ellipk(0.3), ellipfun(0.7, m=0.3), ellipfun(2.5, m=0.9)
        assert!((ellipk(0.3).unwrap() - 1.71388944817879106204).abs() < 1e-14);
        let j = jacobi(0.7, 0.3).unwrap();
        assert!((j.sn - 0.632304776310864549).abs() < 1e-14);
        assert!((j.cn - 0.774719736326929744).abs() < 1e-14);
        assert!((j.dn - 0.938113639681430207).abs() < 1e-14);
        assert!((jacobi(2.5, 0.9).unwrap().cn - 0.0247149710108986630).abs() < 1e-13);
    }

    #[test]
    fn circular_limit() {
        let j = jacobi(1.3, 0.0).unwrap();
        assert!((j.sn - 1.3f64.sin()).abs() < 1e-15 && j.dn == 1.0);
        assert!((ellipk(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn pythagorean_identities() {
        for (u, m) in [(0.1, 0.2), (3.7, 0.5), (-12.0, 0.45)] {
            let j = jacobi(u, m).unwrap();
            assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-14);
            assert!((j.dn * j.dn + m * j.sn * j.sn - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn quartic_oracle_has_half_parameter() {
        let o = EllipticOracle::new(0.0, 1.3).unwrap();
        assert_eq!(o.m, 0.5);
        let h = EllipticOracle::new(2.0, 1e-8).unwrap();
        assert!((h.omega - 2f64.sqrt()).abs() < 1e-12);
    }
}
