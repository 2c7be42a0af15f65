//! Commutators of the rotating catalog, fitted onto the catalog itself.

use stratsym::model::PhysicalParams;
use stratsym::symmetry::{bracket_table, catalog, TimeFunction};

fn main() -> stratsym::Result<()> {
    let p = PhysicalParams::new(1.1, 2.5, 9.8)?;
    let one = TimeFunction::constant(1.0);
    let gens = catalog(&p, &one, &TimeFunction::identity(), &TimeFunction::identity())?;
    let points: Vec<[f64; 6]> =
        (0..16).map(|i| std::array::from_fn(|k| ((i * 6 + k) as f64 * 0.731).sin())).collect();
    for e in bracket_table(&gens, &points, 1e-12) {
        if e.is_zero {
            continue;
        }
        if e.fit_residual > 1e-8 {
            // These produce derivatives or products of b and c.
            println!("[{}, {}] is outside the constant span (max {:.3})", e.left, e.right, e.max_abs);
            continue;
        }
        let terms: Vec<String> = e
            .fit_coefficients
            .iter()
            .zip(&gens)
            .filter(|(c, _)| c.abs() > 1e-9)
            .map(|(c, g)| format!("{c:+.3}·{}", g.id))
            .collect();
        println!("[{}, {}] = {}   (fit residual {:.1e})", e.left, e.right, terms.join(" "), e.fit_residual);
    }
    Ok(())
}
