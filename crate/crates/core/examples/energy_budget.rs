//! Disk energy of the invariant solution over one period and the measured
//! gap between the direct density and the closed form.

use std::sync::Arc;

use stratsym::dynamics::{integrate_phi, period, IntegratorSettings, Offset, ReducedConstants};
use stratsym::energy::{closed_form_audit, conservation_check, invariant_disk_total, DiskQuadrature};
use stratsym::model::PhysicalParams;
use stratsym::solution::{InvariantSolution, InvariantSolutionSpec, SolutionForm};

fn main() -> stratsym::Result<()> {
    let p = PhysicalParams::new(1.0, 2.0, 9.8)?;
    let c = ReducedConstants::new(&p, Offset::K(1.0), 0.0, 1.0)?;
    let t_end = period(c.k, c.b())?.value;
    let tr = integrate_phi(&c, t_end, &IntegratorSettings::default())?;
    let sol = InvariantSolution::new(InvariantSolutionSpec::new(p, Arc::new(tr))?, SolutionForm::K);

    let times: Vec<f64> = (0..9).map(|i| t_end * i as f64 / 8.0).collect();
    let rule = DiskQuadrature { radial: 32, angular: 128, tolerance: 1e-8 };
    let report = conservation_check(&p, &sol, 1.0, &times, &rule, 1e-6)?;
    for (t, e) in report.times.iter().zip(&report.totals) {
        println!("t = {t:7.4}  total = {e:.12}");
    }
    println!("exact total         {:.12}", invariant_disk_total(&p, c.k, c.b2, 1.0));
    println!("relative variation  {:.2e}", report.max_relative_variation);

    let pts: Vec<[f64; 2]> = (0..32).map(|i| [(0.4 * i as f64).cos() * 0.9, (0.7 * i as f64).sin() * 0.9]).collect();
    let audit = closed_form_audit(&sol, &times, &pts, 1.0)?;
    println!("fitted gap          {:.6?} (x², xz, z²)", audit.fitted);
    println!("4B²/N², 0, 4B²/f²   {:.6?}", audit.candidate);
    println!("gap time variation  {:.2e}", audit.max_time_variation);
    Ok(())
}
