//! Third-order prolongation of a point vector field.
//!
//! Coefficients are computed by the recursion
//! `ζ_{J,i} = D_i ζ_J − Σ_k u_{J,k} D_i ξᵏ`, with every total derivative
//! taken on truncated Taylor series built from the jet. Since `ξ` and `η`
//! depend only on base and zeroth-order variables, order-3 coefficients only
//! read jet entries through order 3.

use super::generator::{eta_slot, Generator};
use crate::error::Result;
use crate::model::{Field, Jet};
use crate::scalar::Scalar;
use crate::taylor::{MultiIndex, Taylor3, Var, ALL_INDICES, N_COEFFS};

/// Prolonged coefficients `ζ` for each dependent variable and multi-index.
#[derive(Clone, Debug, PartialEq)]
pub struct ProlongedCoefficients {
    /// Base-point coefficients `(ξᵗ, ξˣ, ξᶻ)`.
    pub xi: [f64; 3],
    zeta: [[f64; N_COEFFS]; 3],
}

impl ProlongedCoefficients {
    pub fn get(&self, f: Field, m: MultiIndex) -> f64 {
        self.zeta[f as usize][m.index()]
    }

    pub fn values(&self, f: Field) -> &[f64; N_COEFFS] {
        &self.zeta[f as usize]
    }

    pub fn max_abs(&self) -> f64 {
        self.zeta.iter().flatten().fold(0.0, |a, v| a.max(v.abs()))
    }
}

/// Which direction to peel off a multi-index when recursing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Peel {
    First,
    Last,
}

/// Third-order prolongation of `gen` at `jet`.
pub fn prolong(gen: &Generator, jet: &Jet) -> Result<ProlongedCoefficients> {
    prolong_with(gen, jet, Peel::First)
}

/// As [`prolong`], choosing which direction the recursion peels first.
/// Both choices must agree; the alternative exists for consistency checks.
pub fn prolong_with(gen: &Generator, jet: &Jet, peel: Peel) -> Result<ProlongedCoefficients> {
    jet.require_order(3)?;
    let u: [Taylor3; 3] = Field::ALL.map(|f| jet.series(f));
    let args = [
        Taylor3::variable(Var::T, jet.base[0]),
        Taylor3::variable(Var::X, jet.base[1]),
        Taylor3::variable(Var::Z, jet.base[2]),
        u[Field::V as usize],
        u[Field::Rho as usize],
        u[Field::Psi as usize],
    ];
    let c = gen.coefficients(&args);
    let xi = [c[0], c[1], c[2]];
    // D_i ξᵏ
    let dxi: [[Taylor3; 3]; 3] = Var::ALL.map(|i| xi.map(|x| x.d(i)));

    let mut zeta = [[Taylor3::constant(0.0); N_COEFFS]; 3];
    let mut out = [[0.0; N_COEFFS]; 3];
    for f in Field::ALL {
        let fi = f as usize;
        zeta[fi][0] = c[eta_slot(f)];
        for m in ALL_INDICES.iter().skip(1) {
            let dirs = Var::ALL.iter().copied().filter(|v| m.count(*v) > 0);
            let i = match peel {
                Peel::First => dirs.clone().next(),
                Peel::Last => dirs.clone().next_back(),
            }
            .expect("non-empty multi-index");
            let j = m.minus(i).expect("direction present");
            let mut acc = zeta[fi][j.index()].d(i);
            for k in Var::ALL {
                acc = acc - u[fi].d_multi(j.plus(k)) * dxi[i as usize][k as usize];
            }
            zeta[fi][m.index()] = acc;
        }
        for (k, z) in zeta[fi].iter().enumerate() {
            out[fi][k] = z.value();
        }
    }
    Ok(ProlongedCoefficients { xi: xi.map(|x| x.value()), zeta: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{mi, PhysicalParams};
    use crate::symmetry::functions::TimeFunction;
    use crate::symmetry::generator::{catalog, Operator};

    fn random_jet(seed: u64) -> Jet {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut jet = Jet::zeros([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
        for f in Field::ALL {
            for m in ALL_INDICES {
                jet.set(f, m, rng.gen_range(-1.0..1.0));
            }
        }
        jet
    }

    fn params() -> PhysicalParams {
        PhysicalParams::new(1.2, 2.3, 9.8).unwrap()
    }

    fn gens() -> Vec<Generator> {
        catalog(
            &params(),
            &TimeFunction::sine(1.0, 2.0, 0.4),
            &TimeFunction::polynomial(&[0.1, 0.5, -0.3, 0.2, 0.05]).unwrap(),
            &TimeFunction::exponential(0.8, 0.6),
        )
        .unwrap()
    }

    #[test]
    fn time_translation_prolongs_to_zero() {
        let jet = random_jet(1);
        let z = prolong(&gens()[3], &jet).unwrap();
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn rho_shift_only_moves_rho() {
        let jet = random_jet(2);
        let z = prolong(&gens()[1], &jet).unwrap();
        assert_eq!(z.get(Field::Rho, MultiIndex::EMPTY), 1.0);
        let rest: f64 = Field::ALL
            .iter()
            .flat_map(|f| ALL_INDICES.iter().map(move |m| (*f, *m)))
            .filter(|(f, m)| !(*f == Field::Rho && m.order() == 0))
            .map(|(f, m)| z.get(f, m).abs())
            .sum();
        assert_eq!(rest, 0.0);
    }

    #[test]
    fn order_zero_equals_eta_exactly() {
        for seed in 0..5 {
            let jet = random_jet(seed);
            let p = [
                jet.base[0],
                jet.base[1],
                jet.base[2],
                jet.get(Field::V, MultiIndex::EMPTY),
                jet.get(Field::Rho, MultiIndex::EMPTY),
                jet.get(Field::Psi, MultiIndex::EMPTY),
            ];
            for g in gens() {
                let z = prolong(&g, &jet).unwrap();
                let eta = g.eval(&p);
                for f in Field::ALL {
                    assert_eq!(z.get(f, MultiIndex::EMPTY), eta[eta_slot(f)], "{} {}", g.id, f.name());
                }
            }
        }
    }

    #[test]
    fn dilation_first_derivative_weights() {
        // X₇: ζᵠ_x = ψ_x, ζᵛ_x = 0, ζᵠ_t = 2ψ_t
        let jet = random_jet(7);
        let z = prolong(&gens()[6], &jet).unwrap();
        assert!((z.get(Field::Psi, mi("x")) - jet.get(Field::Psi, mi("x"))).abs() < 1e-14);
        assert!(z.get(Field::V, mi("x")).abs() < 1e-14);
        assert!((z.get(Field::Psi, mi("t")) - 2.0 * jet.get(Field::Psi, mi("t"))).abs() < 1e-14);
        assert!((z.get(Field::Psi, mi("txx")) + 0.0 * jet.get(Field::Psi, mi("txx"))).abs() < 1e-13);
        assert!((z.get(Field::V, mi("xzz")) + 2.0 * jet.get(Field::V, mi("xzz"))).abs() < 1e-13);
    }

    #[test]
    fn peel_order_does_not_matter() {
        let jet = random_jet(11);
        for g in gens() {
            let a = prolong_with(&g, &jet, Peel::First).unwrap();
            let b = prolong_with(&g, &jet, Peel::Last).unwrap();
            for f in Field::ALL {
                for m in ALL_INDICES {
                    let (x, y) = (a.get(f, m), b.get(f, m));
                    assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()), "{} {} {m}: {x} vs {y}", g.id, f.name());
                }
            }
        }
    }

    #[test]
    fn time_dependent_psi_shift_prolongs_to_derivatives_of_a() {
        let a = TimeFunction::sine(1.3, 0.7, 0.2);
        let g = Generator::new("X3", Operator::ShiftPsi(a.clone()), params());
        let jet = random_jet(3);
        let t = jet.base[0];
        let z = prolong(&g, &jet).unwrap();
        for k in 0..=3 {
            let m = MultiIndex::new(k, 0, 0);
            let want: f64 = a.nth_derivative(k as usize).eval(t);
            assert!((z.get(Field::Psi, m) - want).abs() < 1e-14);
        }
        assert_eq!(z.get(Field::Psi, mi("x")), 0.0);
    }

    #[test]
    fn incomplete_jet_is_rejected() {
        let jet = Jet::with_order([0.0; 3], 2);
        assert!(prolong(&gens()[0], &jet).is_err());
    }
}
