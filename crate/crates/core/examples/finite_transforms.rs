//! Push a plane wave through each finite symmetry map and compare the
//! finite-difference convergence order before and after.

use std::sync::Arc;

use stratsym::model::{FieldSolution, GridSpec, PhysicalParams};
use stratsym::solution::{fd_convergence, PlaneWave};
use stratsym::symmetry::{finite_transform, FiniteTransform, HFunction, TimeFunction};

fn main() -> stratsym::Result<()> {
    let grid = GridSpec { x0: -1.0, z0: -1.0, hx: 0.1, hz: 0.1, nx: 21, nz: 21, t0: 0.5, dt: 0.02, nt: 11 };
    for f in [1.3, 0.0] {
        let p = PhysicalParams::new(f, 2.0, 9.8)?;
        let wave: Arc<dyn FieldSolution> = Arc::new(PlaneWave::new(p, 0.3, 1.2, 0.8)?);
        println!("f = {f}: baseline order {:.3}", fd_convergence(&p, wave.as_ref(), grid)?.order);
        let mut maps = vec![
            FiniteTransform::Dilation7,
            FiniteTransform::Dilation8,
            FiniteTransform::TimeShift,
            FiniteTransform::GenTransX(TimeFunction::sine(0.5, 1.0, 0.0)),
        ];
        if f != 0.0 {
            maps.push(FiniteTransform::Rotation);
        } else {
            maps.push(FiniteTransform::FlowH(HFunction::VTimesS));
        }
        for t in maps {
            let label = t.label();
            let moved = finite_transform(t, 0.3, wave.clone(), &p)?;
            let r = fd_convergence(&p, &moved, grid)?;
            println!("  {label:<12} order {:.3}  fine residual {:.2e}", r.order, r.fine.max_overall());
        }
    }
    Ok(())
}
