//! Build the rotation/dilation-invariant solution and check it three ways.

use std::sync::Arc;

use stratsym::dynamics::{integrate_phi, IntegratorSettings, Offset, ReducedConstants};
use stratsym::model::{FieldSolution, GridSpec, PhysicalParams};
use stratsym::solution::{
    analytic_residual_max, fd_convergence, invariants_j, rotation_invariance_check, sample_points, InvariantSolution,
    InvariantSolutionSpec, SampleBox, SolutionForm,
};

fn main() -> stratsym::Result<()> {
    let p = PhysicalParams::new(1.0, 2.0, 9.8)?;
    let c = ReducedConstants::new(&p, Offset::K(1.0), 0.0, 1.0)?;
    let tr = integrate_phi(&c, 20.0, &IntegratorSettings::default())?;
    let sol = InvariantSolution::new(InvariantSolutionSpec::new(p, Arc::new(tr))?, SolutionForm::K);

    let region = SampleBox { t: [0.0, 20.0], x: [-1.0, 1.0], z: [-1.0, 1.0] };
    let pts = sample_points(7, 1000, &region);
    println!("analytic residual   {:.2e}", analytic_residual_max(&p, &sol, &pts)?);

    let grid = GridSpec { x0: -1.0, z0: -1.0, hx: 0.1, hz: 0.1, nx: 21, nz: 21, t0: 0.5, dt: 0.02, nt: 11 };
    let conv = fd_convergence(&p, &sol, grid)?;
    println!("fd order            {:.3}", conv.order);

    let shared: Arc<dyn FieldSolution> = Arc::new(sol.clone());
    println!("rotation deviation  {:.2e}", rotation_invariance_check(&p, shared, 0.8, &pts[..100])?);

    let u = sol.values(3.0, 0.6, -0.2);
    let j = invariants_j(&p, 0.6, -0.2, u.v, u.rho, u.psi)?;
    let (phi, dphi) = sol.spec.trajectory.at(3.0)?;
    println!("invariants at t = 3 {j:.6?}");
    println!("(2φ′, 2φ² + A, φ)   {:.6?}", [2.0 * dphi, 2.0 * phi * phi + c.a, phi]);
    Ok(())
}
