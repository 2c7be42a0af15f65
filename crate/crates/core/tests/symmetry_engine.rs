mod common;

use common::*;
use proptest::prelude::*;
use stratsym::model::{Field, FieldValues, PhysicalParams};
use stratsym::symmetry::prolong::{prolong_with, Peel};
use stratsym::symmetry::{
    catalog, catalog_f0, determining_residual, lie_bracket, manifold_defect, sample_manifold_jet, FiniteTransform,
    Generator, HFunction, Operator, TimeFunction,
};
use stratsym::taylor::ALL_INDICES;

fn max_residual(g: &Generator, p: &PhysicalParams, seeds: std::ops::Range<u64>) -> f64 {
    seeds
        .map(|s| determining_residual(g, p, &sample_manifold_jet(p, s, 1.0).unwrap()).unwrap().max_relative())
        .fold(0.0, f64::max)
}

#[test]
fn h_one_reproduces_the_shift_generator() {
    let p = PhysicalParams::new(0.0, 1.7, 9.8).unwrap();
    let flow = Generator::new("X1", Operator::FlowH(HFunction::One), p);
    let shift = Generator::new("X1", Operator::ShiftV, p);
    for seed in 0..20 {
        let jet = sample_manifold_jet(&p, seed, 1.0).unwrap();
        let a = determining_residual(&flow, &p, &jet).unwrap();
        let b = determining_residual(&shift, &p, &jet).unwrap();
        assert_eq!(a.absolute, b.absolute);
    }
}

#[test]
fn sampled_jets_lie_on_the_manifold() {
    for seed in 0..10 {
        let p = random_params(seed, seed % 2 == 0);
        let jet = sample_manifold_jet(&p, seed, 1.5).unwrap();
        assert!(manifold_defect(&p, &jet).unwrap() <= 1e-12);
    }
}

/// Central difference in the group parameter of a finite map.
fn flow_derivative(tr: &FiniteTransform, p: &PhysicalParams, point: [f64; 6]) -> [f64; 6] {
    let h = 1e-5;
    let eval = |e: f64| {
        let u = FieldValues { v: point[3], rho: point[4], psi: point[5] };
        let (b, u) = tr.map_point(p, e, [point[0], point[1], point[2]], u).unwrap();
        [b[0], b[1], b[2], u.v, u.rho, u.psi]
    };
    let (a, b) = (eval(h), eval(-h));
    std::array::from_fn(|i| (a[i] - b[i]) / (2.0 * h))
}

#[test]
fn finite_flows_are_generated_by_the_catalog_fields() {
    let b = TimeFunction::Polynomial { coeffs: vec![0.1, 0.5, -0.3] };
    let c = TimeFunction::sine(0.7, 1.1, 0.3);
    let a = TimeFunction::exponential(0.4, 0.7);
    let pairs = |p: PhysicalParams| -> Vec<(FiniteTransform, Generator)> {
        let mut v = vec![
            (FiniteTransform::Dilation7, Generator::new("X7", Operator::Dilation, p)),
            (FiniteTransform::Dilation8, Generator::new("X8", Operator::TimeDilation, p)),
            (FiniteTransform::ShiftRho, Generator::new("X2", Operator::ShiftRho, p)),
            (FiniteTransform::ShiftPsi(a.clone()), Generator::new("X3", Operator::ShiftPsi(a.clone()), p)),
            (FiniteTransform::TimeShift, Generator::new("X4", Operator::TimeShift, p)),
            (FiniteTransform::GenTransX(b.clone()), Generator::new("X5", Operator::GenTransX(b.clone()), p)),
            (FiniteTransform::GenTransZ(c.clone()), Generator::new("X6", Operator::GenTransZ(c.clone()), p)),
        ];
        if p.f != 0.0 {
            v.push((FiniteTransform::Rotation, Generator::new("X9", Operator::Rotation, p)));
            v.push((FiniteTransform::ShiftV, Generator::new("X1", Operator::ShiftV, p)));
        } else {
            for h in HFunction::ALL {
                v.push((FiniteTransform::FlowH(h), Generator::new("X1", Operator::FlowH(h), p)));
            }
        }
        v
    };
    for p in [PhysicalParams::new(1.3, 2.2, 9.8).unwrap(), PhysicalParams::new(0.0, 2.2, 9.8).unwrap()] {
        for (tr, g) in pairs(p) {
            for point in [[0.3, -0.4, 0.9, 0.2, -0.1, 0.5], [1.1, 0.7, -0.2, -0.6, 0.05, -1.0]] {
                let d = flow_derivative(&tr, &p, point);
                let e = g.eval(&point);
                for i in 0..6 {
                    assert!((d[i] - e[i]).abs() <= 1e-7 * (1.0 + e[i].abs()), "{} comp {i}: {} vs {}", tr.label(), d[i], e[i]);
                }
            }
        }
    }
}

fn arb_point() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-1.5..1.5f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rotating_catalog_is_a_symmetry(seed in any::<u64>(), choice in 0usize..3) {
        let p = random_params(seed, true);
        let [a, b, c] = function_choices().swap_remove(choice);
        for g in catalog(&p, &a, &b, &c).unwrap() {
            let r = max_residual(&g, &p, seed..seed.wrapping_add(3));
            prop_assert!(r <= 1e-9, "{}: {r}", g.id);
        }
    }

    #[test]
    fn non_rotating_catalog_is_a_symmetry(seed in any::<u64>(), hi in 0usize..5) {
        let p = random_params(seed, false);
        let [a, b, c] = function_choices().swap_remove((seed % 3) as usize);
        for g in catalog_f0(&p, &a, &b, &c, HFunction::ALL[hi]).unwrap() {
            let r = max_residual(&g, &p, seed..seed.wrapping_add(3));
            prop_assert!(r <= 1e-9, "{}: {r}", g.id);
        }
    }

    #[test]
    fn prolongation_is_independent_of_the_recursion_path(seed in any::<u64>()) {
        let p = random_params(seed, true);
        let jet = sample_manifold_jet(&p, seed, 1.0).unwrap();
        let [a, b, c] = function_choices().swap_remove((seed % 3) as usize);
        for g in catalog(&p, &a, &b, &c).unwrap() {
            let first = prolong_with(&g, &jet, Peel::First).unwrap();
            let last = prolong_with(&g, &jet, Peel::Last).unwrap();
            for f in Field::ALL {
                for m in ALL_INDICES {
                    let (x, y) = (first.get(f, m), last.get(f, m));
                    prop_assert!((x - y).abs() <= 1e-10 * (1.0 + x.abs()), "{} {f:?} {m}", g.id);
                }
            }
        }
    }

    #[test]
    fn brackets_are_antisymmetric(point in arb_point(), i in 0usize..9, j in 0usize..9) {
        let p = PhysicalParams::new(1.1, 2.3, 9.8).unwrap();
        let [a, b, c] = function_choices().swap_remove(1);
        let gens = catalog(&p, &a, &b, &c).unwrap();
        let ab = lie_bracket(&gens[i], &gens[j], &point);
        let ba = lie_bracket(&gens[j], &gens[i], &point);
        for k in 0..6 {
            prop_assert!((ab[k] + ba[k]).abs() <= 1e-12 * (1.0 + ab[k].abs()));
        }
    }

    #[test]
    fn closed_form_flows_compose(point in arb_point(), e1 in -1.0..1.0f64, e2 in -1.0..1.0f64) {
        let p = PhysicalParams::new(0.9, 1.8, 9.8).unwrap();
        let b = TimeFunction::Polynomial { coeffs: vec![0.2, -0.4, 0.1] };
        for tr in [
            FiniteTransform::Rotation,
            FiniteTransform::Dilation7,
            FiniteTransform::Dilation8,
            FiniteTransform::GenTransX(b.clone()),
            FiniteTransform::GenTransZ(b.clone()),
            FiniteTransform::ShiftPsi(b.clone()),
        ] {
            let u = FieldValues { v: point[3], rho: point[4], psi: point[5] };
            let base = [point[0], point[1], point[2]];
            let (b1, u1) = tr.map_point(&p, e1, base, u).unwrap();
            let (b2, u2) = tr.map_point(&p, e2, b1, u1).unwrap();
            let (b3, u3) = tr.map_point(&p, e1 + e2, base, u).unwrap();
            for k in 0..3 {
                prop_assert!((b2[k] - b3[k]).abs() <= 1e-12 * (1.0 + b3[k].abs()));
            }
            prop_assert!(u2.max_abs_diff(&u3) <= 1e-11 * (1.0 + u3.psi.abs().max(u3.v.abs()).max(u3.rho.abs())), "{}", tr.label());
        }
    }
}
