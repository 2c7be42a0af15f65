//! Rotation- and dilation-invariant solutions built from the reduced
//! trajectory, the invariants that characterize them, and an exact plane
//! internal wave used where the invariant family does not apply.

mod checks;
mod invariant;
mod notation;
mod plane_wave;

pub use checks::{
    analytic_residual_max, dilation_invariance_check, fd_convergence, reduction_residuals, rotation_invariance_check,
    sample_points, ConvergenceReport, SampleBox,
};
pub use invariant::{CandidateSolution, InvariantSolution, InvariantSolutionSpec, SolutionForm};
pub use notation::{invariants_j, NotationMap};
pub use plane_wave::PlaneWave;
