//! Pointwise residuals of the three governing equations
//!
//! ```text
//! r₁ = Δψ_t − gρ_x − f v_z − (ψ_x Δψ_z − ψ_z Δψ_x)
//! r₂ = v_t + f ψ_z − (ψ_x v_z − ψ_z v_x)
//! r₃ = ρ_t + (N²/g) ψ_x − (ψ_x ρ_z − ψ_z ρ_x)
//! ```
//!
//! Each residual is kept as its list of additive terms so callers can
//! normalize by the largest term.

use super::jet::{Field, Jet};
use super::params::PhysicalParams;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::taylor::MultiIndex;

const T: MultiIndex = MultiIndex::new(1, 0, 0);
const X: MultiIndex = MultiIndex::new(0, 1, 0);
const Z: MultiIndex = MultiIndex::new(0, 0, 1);
const TXX: MultiIndex = MultiIndex::new(1, 2, 0);
const TZZ: MultiIndex = MultiIndex::new(1, 0, 2);
const XXX: MultiIndex = MultiIndex::new(0, 3, 0);
const XXZ: MultiIndex = MultiIndex::new(0, 2, 1);
const XZZ: MultiIndex = MultiIndex::new(0, 1, 2);
const ZZZ: MultiIndex = MultiIndex::new(0, 0, 3);

/// Additive terms of the three residuals; equation 1 has eight terms,
/// equations 2 and 3 have four each.
#[derive(Clone, Copy, Debug)]
pub struct ResidualTerms<S> {
    pub eq1: [S; 8],
    pub eq2: [S; 4],
    pub eq3: [S; 4],
}

impl<S: Scalar> ResidualTerms<S> {
    pub fn terms(&self, eq: usize) -> &[S] {
        match eq {
            0 => &self.eq1,
            1 => &self.eq2,
            2 => &self.eq3,
            _ => panic!("equation index {eq} out of range"),
        }
    }

    pub fn sums(&self) -> [S; 3] {
        [0, 1, 2].map(|eq| self.terms(eq).iter().fold(S::zero(), |a, &b| a + b))
    }
}

impl ResidualTerms<f64> {
    /// `|Σ terms| / (1 + max |term|)` per equation.
    pub fn relative(&self) -> [f64; 3] {
        [0, 1, 2].map(|eq| {
            let terms = self.terms(eq);
            let sum: f64 = terms.iter().sum();
            let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
            sum.abs() / (1.0 + scale)
        })
    }
}

/// Residual terms with derivative entries supplied by `u(field, index)`.
pub fn residual_terms<S: Scalar>(
    params: &PhysicalParams,
    u: impl Fn(Field, MultiIndex) -> S,
) -> ResidualTerms<S> {
    let (f, g) = (params.f, params.g);
    let psi_x = u(Field::Psi, X);
    let psi_z = u(Field::Psi, Z);
    ResidualTerms {
        eq1: [
            u(Field::Psi, TXX),
            u(Field::Psi, TZZ),
            -(u(Field::Rho, X) * g),
            -(u(Field::V, Z) * f),
            -(psi_x * u(Field::Psi, XXZ)),
            -(psi_x * u(Field::Psi, ZZZ)),
            psi_z * u(Field::Psi, XXX),
            psi_z * u(Field::Psi, XZZ),
        ],
        eq2: [u(Field::V, T), psi_z * f, -(psi_x * u(Field::V, Z)), psi_z * u(Field::V, X)],
        eq3: [
            u(Field::Rho, T),
            psi_x * params.n2_over_g(),
            -(psi_x * u(Field::Rho, Z)),
            psi_z * u(Field::Rho, X),
        ],
    }
}

/// Residual terms evaluated on a jet.
pub fn jet_residual_terms(params: &PhysicalParams, jet: &Jet) -> Result<ResidualTerms<f64>> {
    jet.require_order(3)?;
    Ok(residual_terms(params, |f, m| jet.get(f, m)))
}

/// `(r₁, r₂, r₃)` at a jet.
pub fn pde_residual_pointwise(params: &PhysicalParams, jet: &Jet) -> Result<[f64; 3]> {
    Ok(jet_residual_terms(params, jet)?.sums())
}

/// Residuals divided by `1 + max |additive term|`.
pub fn pde_residual_relative(params: &PhysicalParams, jet: &Jet) -> Result<[f64; 3]> {
    Ok(jet_residual_terms(params, jet)?.relative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::jet::mi;
    use crate::taylor::ALL_INDICES;

    fn params() -> PhysicalParams {
        PhysicalParams::new(1.3, 2.1, 9.8).unwrap()
    }

    #[test]
    fn rest_state_has_zero_residual() {
        let jet = Jet::zeros([0.3, -0.2, 1.0]);
        assert_eq!(pde_residual_pointwise(&params(), &jet).unwrap(), [0.0; 3]);
    }

    #[test]
    fn constants_solve_the_system() {
        let mut jet = Jet::zeros([0.0; 3]);
        jet.set(Field::V, mi(""), 4.2);
        jet.set(Field::Rho, mi(""), -1.7);
        assert_eq!(pde_residual_pointwise(&params(), &jet).unwrap(), [0.0; 3]);
    }

    #[test]
    fn hand_evaluated_residual() {
        let p = params();
        let mut jet = Jet::zeros([0.0; 3]);
        jet.set(Field::Psi, mi("x"), 2.0);
        jet.set(Field::Psi, mi("z"), 3.0);
        jet.set(Field::Psi, mi("txx"), 1.0);
        jet.set(Field::Psi, mi("xxz"), 0.5);
        jet.set(Field::Psi, mi("xxx"), -1.0);
        jet.set(Field::Rho, mi("x"), 0.1);
        jet.set(Field::Rho, mi("t"), 0.25);
        jet.set(Field::V, mi("z"), 0.2);
        jet.set(Field::V, mi("x"), -0.4);
        let r = pde_residual_pointwise(&p, &jet).unwrap();
        let r1 = 1.0 - p.g * 0.1 - p.f * 0.2 - (2.0 * 0.5 - 3.0 * -1.0);
        let r2 = p.f * 3.0 - (2.0 * 0.2 - 3.0 * -0.4);
        let r3 = 0.25 + p.n2_over_g() * 2.0 - (0.0 - 3.0 * 0.1);
        assert!((r[0] - r1).abs() < 1e-14);
        assert!((r[1] - r2).abs() < 1e-14);
        assert!((r[2] - r3).abs() < 1e-14);
    }

    #[test]
    fn incomplete_jet_is_rejected() {
        let jet = Jet::with_order([0.0; 3], 2);
        assert!(pde_residual_pointwise(&params(), &jet).is_err());
    }

    #[test]
    fn linear_in_v_and_rho_entries_at_fixed_psi() {
        let p = params();
        let mut a = Jet::zeros([0.0; 3]);
        let mut b = Jet::zeros([0.0; 3]);
        for (k, m) in ALL_INDICES.iter().enumerate() {
            let psi = (k as f64 * 0.37).sin();
            a.set(Field::Psi, *m, psi);
            b.set(Field::Psi, *m, psi);
            a.set(Field::V, *m, (k as f64 * 1.1).cos());
            a.set(Field::Rho, *m, (k as f64 * 0.7).sin());
            b.set(Field::V, *m, (k as f64 * 0.3).cos());
            b.set(Field::Rho, *m, (k as f64 * 2.3).sin());
        }
        let mut sum = a.clone();
        for f in [Field::V, Field::Rho] {
            for m in ALL_INDICES {
                sum.set(f, m, a.get(f, m) + b.get(f, m));
            }
        }
        let zero_vr = {
            let mut z = a.clone();
            for f in [Field::V, Field::Rho] {
                for m in ALL_INDICES {
                    z.set(f, m, 0.0);
                }
            }
            z
        };
        let ra = pde_residual_pointwise(&p, &a).unwrap();
        let rb = pde_residual_pointwise(&p, &b).unwrap();
        let rs = pde_residual_pointwise(&p, &sum).unwrap();
        let r0 = pde_residual_pointwise(&p, &zero_vr).unwrap();
        for eq in 0..3 {
            // affine: r(a + b) − r(0) = (r(a) − r(0)) + (r(b) − r(0))
            assert!(((rs[eq] - r0[eq]) - (ra[eq] - r0[eq]) - (rb[eq] - r0[eq])).abs() < 1e-12);
        }
    }
}
