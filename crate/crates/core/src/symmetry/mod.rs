//! Generator catalogs, prolongation, determining residuals, brackets and
//! finite group actions.

pub mod bracket;
pub mod determining;
pub mod functions;
pub mod generator;
pub mod manifold;
pub mod prolong;
pub mod transform;

pub use bracket::{bracket_table, lie_bracket, BracketEntry};
pub use determining::{determining_residual, DeterminingResidual};
pub use functions::{HFunction, TimeFunction};
pub use generator::{catalog, catalog_f0, Generator, Operator};
pub use manifold::{complete_principal, consequence_residuals, manifold_defect, sample_manifold_jet};
pub use prolong::{prolong, ProlongedCoefficients};
pub use transform::{finite_transform, FiniteTransform, Transformed};
