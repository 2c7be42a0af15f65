use crate::error::{Error, Result};
use crate::taylor::{MultiIndex, Taylor3, Var, ALL_INDICES, MAX_ORDER, N_COEFFS};

/// Dependent variable of the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Psi = 0,
    V = 1,
    Rho = 2,
}

impl Field {
    pub const ALL: [Field; 3] = [Field::Psi, Field::V, Field::Rho];

    pub fn name(self) -> &'static str {
        match self {
            Field::Psi => "psi",
            Field::V => "v",
            Field::Rho => "rho",
        }
    }
}

/// Point of third-order jet space: base `(t, x, z)` and every partial
/// derivative of `ψ, v, ρ` with total order ≤ 3.
///
/// Mixed partials share one slot per sorted multi-index, so symmetry of
/// mixed derivatives holds by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub base: [f64; 3],
    order: usize,
    values: [[f64; N_COEFFS]; 3],
}

impl Jet {
    /// All-zero jet populated through order 3.
    pub fn zeros(base: [f64; 3]) -> Self {
        Jet { base, order: MAX_ORDER, values: [[0.0; N_COEFFS]; 3] }
    }

    /// Jet whose entries above `order` are unknown.
    pub fn with_order(base: [f64; 3], order: usize) -> Self {
        Jet { base, order: order.min(MAX_ORDER), values: [[0.0; N_COEFFS]; 3] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn require_order(&self, need: usize) -> Result<()> {
        if self.order < need {
            Err(Error::IncompleteJet { have: self.order, need })
        } else {
            Ok(())
        }
    }

    pub fn get(&self, field: Field, m: MultiIndex) -> f64 {
        self.values[field as usize][m.index()]
    }

    pub fn set(&mut self, field: Field, m: MultiIndex, value: f64) {
        self.values[field as usize][m.index()] = value;
    }

    pub fn values(&self, field: Field) -> &[f64; N_COEFFS] {
        &self.values[field as usize]
    }

    pub fn values_mut(&mut self, field: Field) -> &mut [f64; N_COEFFS] {
        &mut self.values[field as usize]
    }

    /// Taylor series of `field` about the base point.
    pub fn series(&self, field: Field) -> Taylor3 {
        Taylor3::from_derivatives(&self.values[field as usize], self.order as i8)
    }

    /// Build a jet from series of `(ψ, v, ρ)`; the jet order is the lowest
    /// series order.
    pub fn from_series(base: [f64; 3], series: [Taylor3; 3]) -> Self {
        let order = series.iter().map(|s| s.order).min().unwrap_or(0).max(0) as usize;
        let mut jet = Jet::with_order(base, order);
        for f in Field::ALL {
            for m in ALL_INDICES.iter().filter(|m| m.order() <= order) {
                jet.set(f, *m, series[f as usize].derivative_value(*m));
            }
        }
        jet
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Base point with the coordinate along `v`.
    pub fn coord(&self, v: Var) -> f64 {
        self.base[v as usize]
    }
}

/// Shorthand for building multi-indices from a derivative string such as `"txx"`.
pub fn mi(s: &str) -> MultiIndex {
    let mut m = MultiIndex::EMPTY;
    for c in s.chars() {
        m = match c {
            't' => m.plus(Var::T),
            'x' => m.plus(Var::X),
            'z' => m.plus(Var::Z),
            _ => panic!("unknown derivative direction {c:?}"),
        };
    }
    m
}
