use super::jet::Jet;

/// Values of `(ψ, v, ρ)` at one space-time point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FieldValues {
    pub psi: f64,
    pub v: f64,
    pub rho: f64,
}

impl FieldValues {
    pub fn max_abs_diff(&self, other: &FieldValues) -> f64 {
        (self.psi - other.psi)
            .abs()
            .max((self.v - other.v).abs())
            .max((self.rho - other.rho).abs())
    }
}

/// An evaluatable solution candidate `(ψ, v, ρ)(t, x, z)`.
pub trait FieldSolution: Send + Sync {
    fn values(&self, t: f64, x: f64, z: f64) -> FieldValues;

    /// Exact third-order jet, when the solution has closed-form derivatives.
    fn jet(&self, _t: f64, _x: f64, _z: f64) -> Option<Jet> {
        None
    }

    /// `(ψ_x, ψ_z)`; falls back to fourth-order central differences.
    fn psi_gradient(&self, t: f64, x: f64, z: f64) -> [f64; 2] {
        use crate::taylor::MultiIndex;
        if let Some(jet) = self.jet(t, x, z) {
            return [
                jet.get(super::Field::Psi, MultiIndex::new(0, 1, 0)),
                jet.get(super::Field::Psi, MultiIndex::new(0, 0, 1)),
            ];
        }
        let h = 1e-3 * (1.0 + x.abs().max(z.abs()));
        let d = |p: &dyn Fn(f64) -> f64| (8.0 * (p(h) - p(-h)) - (p(2.0 * h) - p(-2.0 * h))) / (12.0 * h);
        [
            d(&|s| self.values(t, x + s, z).psi),
            d(&|s| self.values(t, x, z + s).psi),
        ]
    }
}

impl<T: FieldSolution + ?Sized> FieldSolution for std::sync::Arc<T> {
    fn values(&self, t: f64, x: f64, z: f64) -> FieldValues {
        (**self).values(t, x, z)
    }
    fn jet(&self, t: f64, x: f64, z: f64) -> Option<Jet> {
        (**self).jet(t, x, z)
    }
    fn psi_gradient(&self, t: f64, x: f64, z: f64) -> [f64; 2] {
        (**self).psi_gradient(t, x, z)
    }
}

/// Closure-backed solution, handy for tests and examples.
pub struct FnSolution<F>(pub F);

impl<F> FieldSolution for FnSolution<F>
where
    F: Fn(f64, f64, f64) -> FieldValues + Send + Sync,
{
    fn values(&self, t: f64, x: f64, z: f64) -> FieldValues {
        (self.0)(t, x, z)
    }
}
