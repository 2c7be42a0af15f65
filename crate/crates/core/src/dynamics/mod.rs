//! The reduced amplitude equation `φ″ + 2φ³ + Kφ = 0`: first integral,
//! amplitude bound, period, elliptic closed form and a drift-controlled
//! integrator.

mod constants;
mod elliptic;
mod integrate;
mod period;
pub mod quadrature;

pub use constants::{amplitude_bound, first_integral, Offset, ReducedConstants};
pub use elliptic::{ellipk, jacobi, EllipticOracle, JacobiValues};
pub use integrate::{integrate_phi, DriftReport, IntegratorSettings, ReducedTrajectory, TrajectoryMetadata, TRAJECTORY_HEADER};
pub use period::{period, PeriodEstimate};

/// Right-hand side `φ″ = −2φ³ − Kφ`.
pub fn acceleration(k: f64, phi: f64) -> f64 {
    -phi * (2.0 * phi * phi + k)
}
