//! Lie point vector fields and the two generator catalogs.
//!
//! Coefficients are functions of the six coordinates in the order
//! `(t, x, z, v, ρ, ψ)` and are returned in the same order:
//! `(ξᵗ, ξˣ, ξᶻ, ηᵛ, ηᵖ, ηᵠ)`.

use serde::Serialize;

use super::functions::{HFunction, TimeFunction};
use crate::error::Result;
use crate::model::{Branch, Field, PhysicalParams};
use crate::scalar::{Dual, Scalar};

/// Index of each coordinate in a six-vector.
pub mod coord {
    pub const T: usize = 0;
    pub const X: usize = 1;
    pub const Z: usize = 2;
    pub const V: usize = 3;
    pub const RHO: usize = 4;
    pub const PSI: usize = 5;
}

/// Position of the `η` coefficient belonging to a dependent variable.
pub fn eta_slot(f: Field) -> usize {
    match f {
        Field::Psi => coord::PSI,
        Field::V => coord::V,
        Field::Rho => coord::RHO,
    }
}

/// The operator families of both catalogs.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "op", content = "function", rename_all = "snake_case")]
pub enum Operator {
    /// `∂_v`
    ShiftV,
    /// `∂_ρ`
    ShiftRho,
    /// `a(t) ∂_ψ`
    ShiftPsi(TimeFunction),
    /// `∂_t`
    TimeShift,
    /// `b(t)[∂_x − f∂_v] + b′(t) z ∂_ψ`
    GenTransX(TimeFunction),
    /// `c(t)[∂_z + (N²/g)∂_ρ] − c′(t) x ∂_ψ`
    GenTransZ(TimeFunction),
    /// `x∂_x + z∂_z + v∂_v + ρ∂_ρ + 2ψ∂_ψ`
    Dilation,
    /// `t∂_t + 2x∂_x + 2z∂_z + 3ψ∂_ψ − 2fx∂_v + 2(N²/g)z∂_ρ`
    TimeDilation,
    /// `z∂_x − x∂_z − (1/f)[gρ + αz]∂_v + (1/g)[fv + αx]∂_ρ`
    Rotation,
    /// `f` times the rotation; regular at `f = 0`.
    ScaledRotation,
    /// `h(v, gρ − N²z) ∂_v`
    FlowH(HFunction),
}

impl Operator {
    /// Catalogs in which the operator appears.
    pub fn admits(&self, branch: Branch) -> bool {
        match self {
            Operator::ShiftV | Operator::Rotation => branch == Branch::Rotating,
            Operator::FlowH(_) => branch == Branch::NonRotating,
            _ => true,
        }
    }
}

/// A Lie point vector field bound to physical parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generator {
    pub id: String,
    pub op: Operator,
    #[serde(skip)]
    pub params: PhysicalParams,
    /// Inject the single sign/constant mutation used by the mutation suite.
    pub mutated: bool,
}

impl Generator {
    pub fn new(id: impl Into<String>, op: Operator, params: PhysicalParams) -> Self {
        Generator { id: id.into(), op, params, mutated: false }
    }

    pub fn mutate(mut self) -> Self {
        self.mutated = true;
        self
    }

    /// Coefficients `(ξᵗ, ξˣ, ξᶻ, ηᵛ, ηᵖ, ηᵠ)` at a point `(t, x, z, v, ρ, ψ)`.
    pub fn coefficients<S: Scalar>(&self, p: &[S; 6]) -> [S; 6] {
        use coord::*;
        let PhysicalParams { f, g, .. } = self.params;
        let n2g = self.params.n2_over_g();
        let alpha = self.params.alpha();
        let zero = S::zero();
        let one = S::constant(1.0);
        let (t, x, z, v, rho, psi) = (p[T], p[X], p[Z], p[V], p[RHO], p[PSI]);
        let m = self.mutated;
        match &self.op {
            Operator::ShiftV => [zero, zero, zero, if m { x } else { one }, zero, zero],
            Operator::ShiftRho => [zero, zero, zero, zero, if m { x } else { one }, zero],
            Operator::ShiftPsi(a) => {
                let at = a.eval(t);
                [zero, zero, zero, zero, zero, if m { at * x } else { at }]
            }
            Operator::TimeShift => [if m { t } else { one }, zero, zero, zero, zero, zero],
            Operator::GenTransX(b) => {
                let bt = b.eval(t);
                let bz = b.derivative().eval(t) * z;
                [zero, bt, zero, -(bt * f), zero, if m { -bz } else { bz }]
            }
            Operator::GenTransZ(c) => {
                let ct = c.eval(t);
                let cx = c.derivative().eval(t) * x;
                [zero, zero, ct, zero, ct * n2g, if m { cx } else { -cx }]
            }
            Operator::Dilation => [zero, x, z, v, rho, psi * if m { 3.0 } else { 2.0 }],
            Operator::TimeDilation => {
                let (eta_v, eta_rho) = match (self.params.branch(), m) {
                    (Branch::Rotating, true) => (x * (2.0 * f), z * (2.0 * n2g)),
                    (Branch::NonRotating, true) => (x * (-2.0 * f), z * (-2.0 * n2g)),
                    _ => (x * (-2.0 * f), z * (2.0 * n2g)),
                };
                [t, x * 2.0, z * 2.0, eta_v, eta_rho, psi * 3.0]
            }
            Operator::Rotation => {
                let a = if m { -alpha } else { alpha };
                [zero, z, -x, -(rho * g + z * a) * (1.0 / f), (v * f + x * a) * (1.0 / g), zero]
            }
            Operator::ScaledRotation => {
                let a = if m { -alpha } else { alpha };
                [zero, z * f, -(x * f), -(rho * g + z * a), (v * f + x * a) * (f / g), zero]
            }
            Operator::FlowH(h) => {
                let n2 = self.params.n * self.params.n;
                if m && h.depends_on_s() {
                    [zero, zero, zero, h.eval(v, rho * g + z * n2), zero, zero]
                } else if m {
                    [zero, zero, zero, h.eval(v, rho * g - z * n2) * x, zero, zero]
                } else {
                    [zero, zero, zero, h.eval(v, rho * g - z * n2), zero, zero]
                }
            }
        }
    }

    /// Coefficient values and their exact first partials `∂cᵢ/∂pⱼ`.
    pub fn coefficients_with_partials(&self, p: &[f64; 6]) -> ([f64; 6], [[f64; 6]; 6]) {
        let args: [Dual<6>; 6] = std::array::from_fn(|i| Dual::variable(p[i], i));
        let c = self.coefficients(&args);
        (c.map(|d| d.re), c.map(|d| d.eps))
    }

    pub fn eval(&self, p: &[f64; 6]) -> [f64; 6] {
        self.coefficients(p)
    }
}

/// `X₁ … X₉` for `f ≠ 0`.
pub fn catalog(
    params: &PhysicalParams,
    a: &TimeFunction,
    b: &TimeFunction,
    c: &TimeFunction,
) -> Result<Vec<Generator>> {
    params.validate()?;
    params.require(Branch::Rotating)?;
    for tf in [a, b, c] {
        tf.validate()?;
    }
    let p = *params;
    Ok(vec![
        Generator::new("X1", Operator::ShiftV, p),
        Generator::new("X2", Operator::ShiftRho, p),
        Generator::new("X3", Operator::ShiftPsi(a.clone()), p),
        Generator::new("X4", Operator::TimeShift, p),
        Generator::new("X5", Operator::GenTransX(b.clone()), p),
        Generator::new("X6", Operator::GenTransZ(c.clone()), p),
        Generator::new("X7", Operator::Dilation, p),
        Generator::new("X8", Operator::TimeDilation, p),
        Generator::new("X9", Operator::Rotation, p),
    ])
}

/// `X₁ … X₈` for `f = 0`, with `X₁ = h(v, gρ − N²z)∂_v`.
pub fn catalog_f0(
    params: &PhysicalParams,
    a: &TimeFunction,
    b: &TimeFunction,
    c: &TimeFunction,
    h: HFunction,
) -> Result<Vec<Generator>> {
    params.validate()?;
    params.require(Branch::NonRotating)?;
    for tf in [a, b, c] {
        tf.validate()?;
    }
    let p = *params;
    Ok(vec![
        Generator::new("X1", Operator::FlowH(h), p),
        Generator::new("X2", Operator::ShiftRho, p),
        Generator::new("X3", Operator::ShiftPsi(a.clone()), p),
        Generator::new("X4", Operator::TimeShift, p),
        Generator::new("X5", Operator::GenTransX(b.clone()), p),
        Generator::new("X6", Operator::GenTransZ(c.clone()), p),
        Generator::new("X7", Operator::Dilation, p),
        Generator::new("X8", Operator::TimeDilation, p),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot() -> PhysicalParams {
        PhysicalParams::new(1.5, 2.0, 9.8).unwrap()
    }

    fn cat() -> Vec<Generator> {
        let tf = TimeFunction::identity();
        catalog(&rot(), &tf, &tf, &tf).unwrap()
    }

    #[test]
    fn time_translation_coefficients() {
        let x4 = &cat()[3];
        assert_eq!(x4.eval(&[0.3, 1.0, -2.0, 0.5, 0.1, 7.0]), [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn rotation_at_unit_x() {
        let p = rot();
        let x9 = &cat()[8];
        let c = x9.eval(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(c[coord::X], 0.0);
        assert_eq!(c[coord::Z], -1.0);
        assert_eq!(c[coord::V], 0.0);
        assert!((c[coord::RHO] - (p.f * p.f - p.n * p.n) / p.g).abs() < 1e-15);
    }

    #[test]
    fn gen_trans_x_with_linear_b() {
        let p = rot();
        let x5 = &cat()[4];
        let (t, z) = (0.8, -1.7);
        let c = x5.eval(&[t, 0.2, z, 0.0, 0.0, 0.0]);
        assert_eq!(c[coord::X], t);
        assert_eq!(c[coord::V], -p.f * t);
        assert_eq!(c[coord::PSI], z);
    }

    #[test]
    fn catalogs_check_branch() {
        let tf = TimeFunction::identity();
        assert!(catalog(&PhysicalParams::new(0.0, 1.0, 1.0).unwrap(), &tf, &tf, &tf).is_err());
        assert!(catalog_f0(&rot(), &tf, &tf, &tf, HFunction::One).is_err());
        assert_eq!(cat().len(), 9);
        let f0 = catalog_f0(&PhysicalParams::new(0.0, 1.0, 1.0).unwrap(), &tf, &tf, &tf, HFunction::One).unwrap();
        assert_eq!(f0.len(), 8);
    }

    #[test]
    fn h_one_reduces_to_shift_v() {
        let p0 = PhysicalParams::new(0.0, 2.0, 9.8).unwrap();
        let x1 = Generator::new("X1", Operator::FlowH(HFunction::One), p0);
        let shift = Generator::new("X1", Operator::ShiftV, p0);
        let pt = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
        assert_eq!(x1.eval(&pt), shift.eval(&pt));
    }

    #[test]
    fn h_equal_s_gives_buoyancy_combination() {
        let p0 = PhysicalParams::new(0.0, 2.0, 9.8).unwrap();
        let x1 = Generator::new("X1", Operator::FlowH(HFunction::S), p0);
        let pt = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
        assert_eq!(x1.eval(&pt)[coord::V], p0.g * 0.5 - p0.n * p0.n * 0.3);
    }

    #[test]
    fn scaled_rotation_at_f_zero_is_neg_s_flow() {
        let p0 = PhysicalParams::new(0.0, 2.0, 9.8).unwrap();
        let primed = Generator::new("X9'", Operator::ScaledRotation, p0);
        let neg_s = Generator::new("X1", Operator::FlowH(HFunction::NegS), p0);
        for pt in [[0.1, 0.2, 0.3, 0.4, 0.5, 0.6], [1.0, -2.0, 0.7, 3.0, -0.2, 0.0]] {
            let a = primed.eval(&pt);
            let b = neg_s.eval(&pt);
            for k in 0..6 {
                assert!((a[k] - b[k]).abs() < 1e-14, "component {k}: {} vs {}", a[k], b[k]);
            }
        }
    }

    #[test]
    fn scaled_rotation_is_f_times_rotation() {
        let p = rot();
        let r = Generator::new("X9", Operator::Rotation, p).eval(&[0.0, 0.3, -0.4, 1.1, 0.2, 0.0]);
        let s = Generator::new("X9'", Operator::ScaledRotation, p).eval(&[0.0, 0.3, -0.4, 1.1, 0.2, 0.0]);
        for k in 0..6 {
            assert!((s[k] - p.f * r[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn partials_match_closed_form_for_rotation() {
        let p = rot();
        let x9 = Generator::new("X9", Operator::Rotation, p);
        let (_, d) = x9.coefficients_with_partials(&[0.0, 0.3, -0.4, 1.1, 0.2, 0.0]);
        assert_eq!(d[coord::X][coord::Z], 1.0);
        assert_eq!(d[coord::Z][coord::X], -1.0);
        assert!((d[coord::V][coord::RHO] + p.g / p.f).abs() < 1e-15);
        assert!((d[coord::V][coord::Z] + p.alpha() / p.f).abs() < 1e-15);
        assert!((d[coord::RHO][coord::V] - p.f / p.g).abs() < 1e-15);
        assert!((d[coord::RHO][coord::X] - p.alpha() / p.g).abs() < 1e-15);
    }
}
