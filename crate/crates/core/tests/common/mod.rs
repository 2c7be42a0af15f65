//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratsym::model::PhysicalParams;
use stratsym::symmetry::TimeFunction;

/// Order-8 Taylor-series integrator for `φ″ = −2φ³ − Kφ`.
///
/// Coefficients come from `(k+2)(k+1) p_{k+2} = −2 (p³)_k − K p_k` with the
/// cube expanded by Cauchy products, so this shares no code with the RK4
/// path under test.
pub fn taylor8_step(k: f64, phi: f64, dphi: f64, h: f64) -> (f64, f64) {
    const ORDER: usize = 8;
    let mut p = [0.0f64; ORDER + 1];
    p[0] = phi;
    p[1] = dphi;
    let mut sq = [0.0f64; ORDER + 1];
    let mut cube = [0.0f64; ORDER + 1];
    for n in 0..=ORDER - 2 {
        sq[n] = (0..=n).map(|i| p[i] * p[n - i]).sum();
        cube[n] = (0..=n).map(|i| sq[i] * p[n - i]).sum();
        p[n + 2] = (-2.0 * cube[n] - k * p[n]) / ((n + 2) as f64 * (n + 1) as f64);
    }
    let mut x = 0.0;
    let mut v = 0.0;
    for n in (0..=ORDER).rev() {
        x = x * h + p[n];
    }
    for n in (1..=ORDER).rev() {
        v = v * h + n as f64 * p[n];
    }
    (x, v)
}

/// Oracle trajectory sampled every `every` steps of size `h`.
pub fn taylor8_samples(k: f64, phi0: f64, dphi0: f64, h: f64, steps: usize, every: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(phi0, dphi0)];
    let (mut p, mut q) = (phi0, dphi0);
    for i in 1..=steps {
        (p, q) = taylor8_step(k, p, q, h);
        if i % every == 0 {
            out.push((p, q));
        }
    }
    out
}

// Frozen high-precision references (mpmath, 30 digits).
/// Period at `K = 3, B = 2`.
pub const PERIOD_K3_B2: f64 = 2.96882494684477290581;
/// Period at `K = 1, B = 1`.
pub const PERIOD_K1_B1: f64 = 4.54833039808216252138;
/// Period at `K = 0, B = 2`.
pub const PERIOD_K0_B2: f64 = 3.70814935460274383687;
/// `T(K = 0, B) · √B`.
pub const QUARTIC_PERIOD_SCALE: f64 = 5.24411510858423962093;
/// Period at `K = 4, B = 10⁻⁴`.
pub const PERIOD_K4_SMALL: f64 = 3.14159265211717168411;
/// `φ, φ′` at `t = 1.3` and `t = 10` for `K = 1`, `(φ₀, φ₀′) = (0, 1)`.
pub const PHI_K1_T1_3: (f64, f64) = (0.763062081671586183960623563777, -0.280544463555194484036233412758);
pub const PHI_K1_T10: (f64, f64) = (0.739130981539475259136631446635461, 0.393986981199496242702472990347851);
/// Disk total (R = 1.5) of the direct density for `f = 1, N = 2, g = 9.8,
/// K = 1, (φ₀, φ₀′) = (0, 1)` at `t = 1.3`, by adaptive quadrature.
pub const DISK_TOTAL_R1_5: f64 = 28.8265669659469699888623019817;

pub fn params(f: f64) -> PhysicalParams {
    PhysicalParams::new(f, 2.0, 9.8).unwrap()
}

/// Seeded physical parameters with `f` in `[0.2, 3]` (or zero), `N` in
/// `[0.5, 4]`, `g` in `[1, 20]`.
pub fn random_params(seed: u64, rotating: bool) -> PhysicalParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = if rotating { rng.gen_range(0.2..3.0) } else { 0.0 };
    PhysicalParams::new(f, rng.gen_range(0.5..4.0), rng.gen_range(1.0..20.0)).unwrap()
}

/// Three choices of the arbitrary time functions `(a, b, c)`, spanning all
/// three families and including non-constant `b, c`.
pub fn function_choices() -> Vec<[TimeFunction; 3]> {
    vec![
        [
            TimeFunction::Polynomial { coeffs: vec![0.3, -1.0, 0.5] },
            TimeFunction::Polynomial { coeffs: vec![0.1, 0.5, -0.3, 0.2] },
            TimeFunction::Polynomial { coeffs: vec![-0.2, 1.0] },
        ],
        [
            TimeFunction::sine(1.0, 1.3, 0.2),
            TimeFunction::sine(0.7, 2.1, -0.4),
            TimeFunction::sine(1.2, 0.5, 1.0),
        ],
        [
            TimeFunction::exponential(0.4, 0.7),
            TimeFunction::exponential(1.1, -0.6),
            TimeFunction::exponential(0.8, 0.3),
        ],
    ]
}
