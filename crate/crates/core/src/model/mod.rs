//! Physical parameters, jets, pointwise residuals and gridded fields.

pub mod field;
pub mod grid;
pub mod io;
pub mod jet;
pub mod params;
pub mod residual;

pub use field::{FieldSolution, FieldValues, FnSolution};
pub use io::{read_grid, slice_file_name, write_grid};
pub use grid::{interior_nodes, observed_order, refinement_norms, residual_norms, residual_norms_at, GridField, GridSpec, ResidualNorms, Slice};
pub use jet::{mi, Field, Jet};
pub use params::{Branch, PhysicalParams};
pub use residual::{pde_residual_pointwise, pde_residual_relative, residual_terms, ResidualTerms};
