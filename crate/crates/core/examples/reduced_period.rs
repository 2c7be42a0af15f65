//! Integrate the reduced oscillator and compare three period estimates.

use stratsym::dynamics::{integrate_phi, period, EllipticOracle, IntegratorSettings, Offset, ReducedConstants};
use stratsym::model::PhysicalParams;

fn main() -> stratsym::Result<()> {
    let p = PhysicalParams::new(1.0, 2.0, 9.8)?;
    println!("{:>5} {:>5} {:>10} {:>14} {:>14} {:>14} {:>10}", "K", "B", "C*", "quadrature", "elliptic", "crossings", "drift");
    for (k, b) in [(0.0, 1.0), (1.0, 1.0), (3.0, 2.0), (0.5, 0.1)] {
        let c = ReducedConstants::new(&p, Offset::K(k), 0.0, b)?;
        let c_star = c.require_bound()?;
        let quad = period(k, b)?;
        let elliptic = EllipticOracle::new(k, c_star)?.period()?;
        let tr = integrate_phi(&c, 20.25 * quad.value, &IntegratorSettings::default())?;
        let crossing = tr.crossing_period().unwrap_or(f64::NAN);
        println!(
            "{k:>5.2} {b:>5.2} {c_star:>10.6} {:>14.10} {elliptic:>14.10} {crossing:>14.10} {:>10.1e}",
            quad.value, tr.drift.relative
        );
    }
    Ok(())
}
