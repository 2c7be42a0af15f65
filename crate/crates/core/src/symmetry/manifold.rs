//! Jets on the solution manifold.
//!
//! Principal derivatives are `v_t`, `ρ_t` and `ψ_txx`, together with every
//! differential consequence of the first two that stays inside the
//! third-order jet (`v_tx`, `v_tt`, …, `ρ_ttt`). All remaining entries are
//! parametric.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{mi, Field, Jet, PhysicalParams};
use crate::taylor::{MultiIndex, Taylor3, Var, ALL_INDICES};

/// Is `(field, index)` a principal derivative.
pub fn is_principal(f: Field, m: MultiIndex) -> bool {
    match f {
        Field::V | Field::Rho => m.count(Var::T) > 0,
        Field::Psi => m == MultiIndex::new(1, 2, 0),
    }
}

/// Right-hand sides `v_t = G_v`, `ρ_t = G_ρ` as series.
fn transport_rhs(psi: &Taylor3, w: &Taylor3, forcing: Taylor3) -> Taylor3 {
    let psi_x = psi.d(Var::X);
    let psi_z = psi.d(Var::Z);
    forcing + psi_x * w.d(Var::Z) - psi_z * w.d(Var::X)
}

fn psi_txx(params: &PhysicalParams, jet: &Jet) -> f64 {
    let p = |s: &str| jet.get(Field::Psi, mi(s));
    -p("tzz") + params.g * jet.get(Field::Rho, mi("x")) + params.f * jet.get(Field::V, mi("z"))
        + p("x") * (p("xxz") + p("zzz"))
        - p("z") * (p("xxx") + p("xzz"))
}

/// Overwrite every principal entry of `jet` with its value implied by the
/// equations and their consequences, keeping parametric entries.
pub fn complete_principal(params: &PhysicalParams, jet: &Jet) -> Result<Jet> {
    jet.require_order(3)?;
    let mut jet = jet.clone();
    // The dependency graph is triangular, so a bitwise fixed point is reached
    // in at most a handful of sweeps.
    for _ in 0..16 {
        let prev = jet.clone();
        jet.set(Field::Psi, mi("txx"), psi_txx(params, &jet));
        let psi = jet.series(Field::Psi);
        let v = jet.series(Field::V);
        let rho = jet.series(Field::Rho);
        let g_v = transport_rhs(&psi, &v, psi.d(Var::Z) * -params.f);
        let g_rho = transport_rhs(&psi, &rho, psi.d(Var::X) * -params.n2_over_g());
        for m in ALL_INDICES.iter().filter(|m| m.order() <= 2) {
            jet.set(Field::V, m.plus(Var::T), g_v.derivative_value(*m));
            jet.set(Field::Rho, m.plus(Var::T), g_rho.derivative_value(*m));
        }
        if jet == prev {
            return Ok(jet);
        }
    }
    Err(Error::Integration("principal-derivative completion did not reach a fixed point".into()))
}

/// Relative residuals of the equations and of every consequence inside the
/// third-order jet: `r₁` at the point, and `D^J r₂`, `D^J r₃` for `|J| ≤ 2`.
/// Each is normalized by `1 + max |additive term|`.
pub fn consequence_residuals(params: &PhysicalParams, jet: &Jet) -> Result<Vec<f64>> {
    let r = crate::model::residual::jet_residual_terms(params, jet)?;
    let mut out = vec![r.relative()[0]];
    let psi = jet.series(Field::Psi);
    let (px, pz) = (psi.d(Var::X), psi.d(Var::Z));
    let v = jet.series(Field::V);
    let rho = jet.series(Field::Rho);
    let eq2 = [v.d(Var::T), pz * params.f, -(px * v.d(Var::Z)), pz * v.d(Var::X)];
    let eq3 = [rho.d(Var::T), px * params.n2_over_g(), -(px * rho.d(Var::Z)), pz * rho.d(Var::X)];
    for terms in [eq2, eq3] {
        for m in ALL_INDICES.iter().filter(|m| m.order() <= 2) {
            let vals: Vec<f64> = terms.iter().map(|t| t.derivative_value(*m)).collect();
            let sum: f64 = vals.iter().sum();
            let scale = vals.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            out.push(sum.abs() / (1.0 + scale));
        }
    }
    Ok(out)
}

/// Largest entry of [`consequence_residuals`].
pub fn manifold_defect(params: &PhysicalParams, jet: &Jet) -> Result<f64> {
    Ok(consequence_residuals(params, jet)?.into_iter().fold(0.0, f64::max))
}

/// Seeded jet on the solution manifold: base point uniform in `[−1, 1]³`,
/// parametric entries uniform in `[−scale, scale]`, principal entries solved.
pub fn sample_manifold_jet(params: &PhysicalParams, seed: u64, scale: f64) -> Result<Jet> {
    if !(scale.is_finite() && scale >= 0.0) {
        return Err(Error::InvalidParameter(format!("scale must be non-negative, got {scale}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = [rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)];
    let mut jet = Jet::zeros(base);
    for f in Field::ALL {
        for m in ALL_INDICES {
            let u: f64 = rng.gen_range(-1.0..=1.0);
            jet.set(f, m, scale * u);
        }
    }
    complete_principal(params, &jet)
}
