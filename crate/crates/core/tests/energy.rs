mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use stratsym::dynamics::{integrate_phi, period, IntegratorSettings, Offset, ReducedConstants};
use stratsym::energy::{
    closed_form_audit, closedform_cross_coefficient, conservation_check, density_at, energy_density_closedform,
    energy_density_direct, invariant_disk_total, total_energy_disk, DiskQuadrature,
};
use stratsym::model::{FieldValues, PhysicalParams};
use stratsym::solution::{InvariantSolution, InvariantSolutionSpec, SolutionForm};

fn solution(p: PhysicalParams, k: f64, phi0: f64, dphi0: f64, t_end: f64) -> InvariantSolution {
    let c = ReducedConstants::new(&p, Offset::K(k), phi0, dphi0).unwrap();
    let tr = integrate_phi(&c, t_end, &IntegratorSettings::default()).unwrap();
    InvariantSolution::new(InvariantSolutionSpec::new(p, Arc::new(tr)).unwrap(), SolutionForm::K)
}

fn rule() -> DiskQuadrature {
    DiskQuadrature { radial: 32, angular: 128, tolerance: 1e-8 }
}

#[test]
fn disk_total_matches_adaptive_quadrature() {
    let p = params(1.0);
    let sol = solution(p, 1.0, 0.0, 1.0, 2.0);
    let d = total_energy_disk(&p, &sol, 1.5, 1.3, &rule()).unwrap();
    assert!((d.value - DISK_TOTAL_R1_5).abs() <= 1e-9 * DISK_TOTAL_R1_5, "{}", d.value);
    let b2 = sol.spec.trajectory.constants.b2;
    assert!((invariant_disk_total(&p, 1.0, b2, 1.5) - DISK_TOTAL_R1_5).abs() <= 1e-12 * DISK_TOTAL_R1_5);
}

#[test]
fn too_coarse_a_rule_is_reported() {
    let p = params(1.0);
    let sol = solution(p, 1.0, 0.0, 1.0, 2.0);
    let coarse = DiskQuadrature { radial: 1, angular: 2, tolerance: 1e-12 };
    assert!(total_energy_disk(&p, &sol, 1.5, 1.3, &coarse).is_err());
}

fn arb_rotating() -> impl Strategy<Value = PhysicalParams> {
    (0.3..3.0f64, 0.5..4.0f64, 1.0..20.0f64).prop_map(|(f, n, g)| PhysicalParams::new(f, n, g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn density_is_non_negative(p in arb_rotating(), u in prop::array::uniform5(-10.0..10.0f64)) {
        let e = energy_density_direct(&p, &FieldValues { v: u[0], rho: u[1], psi: u[2] }, [u[3], u[4]]);
        prop_assert!(e >= 0.0);
    }

    #[test]
    fn discrepancy_is_the_constant_quadratic_form(
        p in arb_rotating(), k in 0.0..3.0f64, phi0 in -1.0..1.0f64, dphi0 in -1.0..1.0f64,
        t in 0.0..5.0f64, x in -2.0..2.0f64, z in -2.0..2.0f64
    ) {
        let sol = solution(p, k, phi0, dphi0, 5.0);
        let (phi, dphi) = sol.spec.trajectory.at(t).unwrap();
        let b2 = sol.spec.trajectory.constants.b2;
        let direct = density_at(&p, &sol, t, x, z);
        let d = direct - energy_density_closedform(&p, k, phi, dphi, x, z);
        let want = 4.0 * b2 * (x * x / (p.n * p.n) + z * z / (p.f * p.f));
        prop_assert!((d - want).abs() <= 1e-9 * (1.0 + direct.abs()), "{d} vs {want}");
    }

    #[test]
    fn cross_coefficient_is_exact(p in arb_rotating(), k in 0.0..3.0f64, t in 0.0..5.0f64) {
        let sol = solution(p, k, 0.5, -0.2, 5.0);
        let (phi, dphi) = sol.spec.trajectory.at(t).unwrap();
        let measured = 0.5 * (density_at(&p, &sol, t, 1.0, 1.0) - density_at(&p, &sol, t, 1.0, -1.0));
        let closed = closedform_cross_coefficient(&p, k, phi, dphi);
        prop_assert!((measured - closed).abs() <= 1e-12 * (1.0 + closed.abs()) * 10.0);
    }

    #[test]
    fn disk_energy_is_conserved_over_a_period(p in arb_rotating(), k in 0.0..3.0f64, dphi0 in 0.2..1.2f64) {
        let c = ReducedConstants::new(&p, Offset::K(k), 0.0, dphi0).unwrap();
        let t_end = period(k, c.b()).unwrap().value;
        let sol = solution(p, k, 0.0, dphi0, t_end);
        let times: Vec<f64> = (0..16).map(|i| t_end * i as f64 / 15.0).collect();
        let report = conservation_check(&p, &sol, 1.0, &times, &rule(), 1e-6).unwrap();
        prop_assert!(report.pass, "{}", report.max_relative_variation);
        let exact = invariant_disk_total(&p, k, c.b2, 1.0);
        prop_assert!((report.totals[0] - exact).abs() <= 1e-9 * exact);
    }

    #[test]
    fn audit_recovers_the_fitted_structure(p in arb_rotating(), k in 0.0..3.0f64) {
        let sol = solution(p, k, 0.3, 0.7, 4.0);
        let times: Vec<f64> = (0..8).map(|i| 0.5 * i as f64).collect();
        let pts: Vec<[f64; 2]> = (0..12).map(|i| { let a = 0.9 * i as f64; [a.cos() * 0.8, (1.7 * a).sin()] }).collect();
        let audit = closed_form_audit(&sol, &times, &pts, 1.0).unwrap();
        for i in 0..3 {
            prop_assert!((audit.fitted[i] - audit.candidate[i]).abs() <= 1e-8 * (1.0 + audit.candidate[i].abs()));
        }
        prop_assert!(audit.max_time_variation <= 1e-9);
    }
}
