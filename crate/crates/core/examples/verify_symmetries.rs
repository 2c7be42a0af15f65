//! Determining-equation residuals of both generator catalogs on seeded jets.

use stratsym::model::PhysicalParams;
use stratsym::symmetry::{catalog, catalog_f0, determining_residual, sample_manifold_jet, HFunction, TimeFunction};

fn main() -> stratsym::Result<()> {
    let a = TimeFunction::sine(1.0, 1.3, 0.2);
    let b = TimeFunction::polynomial(&[0.1, 0.5, -0.3])?;
    let c = TimeFunction::exponential(0.4, 0.7);

    for (label, p) in [("rotating", PhysicalParams::new(1.0, 2.0, 9.8)?), ("f = 0", PhysicalParams::new(0.0, 2.0, 9.8)?)] {
        let gens = if p.f != 0.0 { catalog(&p, &a, &b, &c)? } else { catalog_f0(&p, &a, &b, &c, HFunction::SinS)? };
        println!("{label}: {} generators", gens.len());
        for g in &gens {
            let mut worst = 0.0f64;
            let mut mutated = 0.0f64;
            for seed in 0..20 {
                let jet = sample_manifold_jet(&p, seed, 1.0)?;
                worst = worst.max(determining_residual(g, &p, &jet)?.max_relative());
                mutated = mutated.max(determining_residual(&g.clone().mutate(), &p, &jet)?.max_relative());
            }
            println!("  {:<4} residual {worst:.2e}   mutated {mutated:.2e}", g.id);
        }
    }
    Ok(())
}
