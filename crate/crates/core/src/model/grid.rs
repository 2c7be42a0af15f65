use serde::{Deserialize, Serialize};

use super::field::FieldSolution;
use super::jet::{Field, Jet};
use super::params::PhysicalParams;
use super::residual::jet_residual_terms;
use crate::error::{Error, Result};
use crate::taylor::{ALL_INDICES, MAX_ORDER};

/// Uniform space-time grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x0: f64,
    pub z0: f64,
    pub hx: f64,
    pub hz: f64,
    pub nx: usize,
    pub nz: usize,
    pub t0: f64,
    pub dt: f64,
    pub nt: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, h) in [("hx", self.hx), ("hz", self.hz), ("dt", self.dt)] {
            if !(h.is_finite() && h > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {h}")));
            }
        }
        if self.nx == 0 || self.nz == 0 || self.nt == 0 {
            return Err(Error::GridTooSmall("empty grid".into()));
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.hx
    }

    pub fn z(&self, i: usize) -> f64 {
        self.z0 + i as f64 * self.hz
    }

    pub fn t(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    /// Same domain with every spacing halved.
    pub fn refined(&self) -> GridSpec {
        GridSpec {
            hx: self.hx / 2.0,
            hz: self.hz / 2.0,
            dt: self.dt / 2.0,
            nx: 2 * self.nx - 1,
            nz: 2 * self.nz - 1,
            nt: 2 * self.nt - 1,
            ..*self
        }
    }

    pub fn points_per_slice(&self) -> usize {
        self.nx * self.nz
    }
}

/// One time slice, arrays indexed `[ix * nz + iz]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Slice {
    pub psi: Vec<f64>,
    pub v: Vec<f64>,
    pub rho: Vec<f64>,
}

impl Slice {
    pub fn zeros(n: usize) -> Self {
        Slice { psi: vec![0.0; n], v: vec![0.0; n], rho: vec![0.0; n] }
    }

    pub fn field(&self, f: Field) -> &[f64] {
        match f {
            Field::Psi => &self.psi,
            Field::V => &self.v,
            Field::Rho => &self.rho,
        }
    }

    pub fn field_mut(&mut self, f: Field) -> &mut Vec<f64> {
        match f {
            Field::Psi => &mut self.psi,
            Field::V => &mut self.v,
            Field::Rho => &mut self.rho,
        }
    }
}

/// Samples of `(ψ, v, ρ)` on a uniform space-time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub spec: GridSpec,
    pub slices: Vec<Slice>,
}

/// Central stencil `(offset, weight)` for the `k`-th derivative, unit spacing.
fn stencil(k: u8) -> &'static [(isize, f64)] {
    match k {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        _ => unreachable!("stencils only through third order"),
    }
}

/// Points needed on each side of a stencil centre.
pub const STENCIL_MARGIN: usize = 2;

impl GridField {
    pub fn new(spec: GridSpec, slices: Vec<Slice>) -> Result<Self> {
        spec.validate()?;
        if slices.len() != spec.nt {
            return Err(Error::Format(format!("expected {} slices, got {}", spec.nt, slices.len())));
        }
        let n = spec.points_per_slice();
        for s in &slices {
            if s.psi.len() != n || s.v.len() != n || s.rho.len() != n {
                return Err(Error::Format(format!("slice arrays must have {n} entries")));
            }
        }
        Ok(GridField { spec, slices })
    }

    pub fn zeros(spec: GridSpec) -> Result<Self> {
        spec.validate()?;
        Ok(GridField { spec, slices: vec![Slice::zeros(spec.points_per_slice()); spec.nt] })
    }

    /// Evaluate `sol` at every grid node.
    pub fn sample(spec: GridSpec, sol: &dyn FieldSolution) -> Result<Self> {
        spec.validate()?;
        let slices = (0..spec.nt)
            .map(|it| {
                let t = spec.t(it);
                let mut s = Slice::zeros(spec.points_per_slice());
                for ix in 0..spec.nx {
                    for iz in 0..spec.nz {
                        let val = sol.values(t, spec.x(ix), spec.z(iz));
                        let k = ix * spec.nz + iz;
                        s.psi[k] = val.psi;
                        s.v[k] = val.v;
                        s.rho[k] = val.rho;
                    }
                }
                s
            })
            .collect();
        Ok(GridField { spec, slices })
    }

    pub fn at(&self, f: Field, it: usize, ix: usize, iz: usize) -> f64 {
        self.slices[it].field(f)[ix * self.spec.nz + iz]
    }

    fn interior(&self, it: usize, ix: usize, iz: usize) -> bool {
        let m = STENCIL_MARGIN;
        let s = &self.spec;
        it >= m && ix >= m && iz >= m && it + m < s.nt && ix + m < s.nx && iz + m < s.nz
    }

    /// Second-order central finite-difference jet at a grid node.
    pub fn fd_jet(&self, it: usize, ix: usize, iz: usize) -> Result<Jet> {
        if !self.interior(it, ix, iz) {
            return Err(Error::OutOfStencil { it, ix, iz });
        }
        let s = &self.spec;
        let mut jet = Jet::zeros([s.t(it), s.x(ix), s.z(iz)]);
        for m in ALL_INDICES {
            let [kt, kx, kz] = m.0;
            let scale = s.dt.powi(kt as i32) * s.hx.powi(kx as i32) * s.hz.powi(kz as i32);
            for f in Field::ALL {
                let mut acc = 0.0;
                for &(ot, wt) in stencil(kt) {
                    for &(ox, wx) in stencil(kx) {
                        for &(oz, wz) in stencil(kz) {
                            let u = self.at(
                                f,
                                (it as isize + ot) as usize,
                                (ix as isize + ox) as usize,
                                (iz as isize + oz) as usize,
                            );
                            acc += wt * wx * wz * u;
                        }
                    }
                }
                jet.set(f, m, acc / scale);
            }
        }
        debug_assert_eq!(jet.order(), MAX_ORDER);
        Ok(jet)
    }

    /// Add `amplitude · U(−1, 1)` noise to every sample.
    pub fn perturbed(&self, amplitude: f64, seed: u64) -> GridField {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut out = self.clone();
        for s in out.slices.iter_mut() {
            for f in Field::ALL {
                for u in s.field_mut(f).iter_mut() {
                    *u += amplitude * rng.gen_range(-1.0..=1.0);
                }
            }
        }
        out
    }
}

/// Interior residual statistics of a gridded field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualNorms {
    pub max_abs: [f64; 3],
    pub rms: [f64; 3],
    pub max_relative: [f64; 3],
    pub points: usize,
}

impl ResidualNorms {
    /// Largest absolute residual over the three equations.
    pub fn max_overall(&self) -> f64 {
        self.max_abs.iter().fold(0.0f64, |a, &b| a.max(b))
    }
}

/// Interior nodes `(it, ix, iz)` where every central stencil fits.
pub fn interior_nodes(spec: &GridSpec) -> Result<Vec<[usize; 3]>> {
    let m = STENCIL_MARGIN;
    if spec.nt < 2 * m + 1 || spec.nx < 2 * m + 1 || spec.nz < 2 * m + 1 {
        return Err(Error::GridTooSmall(format!(
            "need at least {} nodes per direction, got nt={}, nx={}, nz={}",
            2 * m + 1,
            spec.nt,
            spec.nx,
            spec.nz
        )));
    }
    let mut out = Vec::new();
    for it in m..spec.nt - m {
        for ix in m..spec.nx - m {
            for iz in m..spec.nz - m {
                out.push([it, ix, iz]);
            }
        }
    }
    Ok(out)
}

/// Pointwise residual norms of the finite-difference jets at `nodes`.
pub fn residual_norms_at(params: &PhysicalParams, field: &GridField, nodes: &[[usize; 3]]) -> Result<ResidualNorms> {
    let mut out = ResidualNorms { max_abs: [0.0; 3], rms: [0.0; 3], max_relative: [0.0; 3], points: 0 };
    let mut sq = [0.0; 3];
    for &[it, ix, iz] in nodes {
        let terms = jet_residual_terms(params, &field.fd_jet(it, ix, iz)?)?;
        let r = terms.sums();
        let rel = terms.relative();
        for eq in 0..3 {
            out.max_abs[eq] = out.max_abs[eq].max(r[eq].abs());
            out.max_relative[eq] = out.max_relative[eq].max(rel[eq]);
            sq[eq] += r[eq] * r[eq];
        }
        out.points += 1;
    }
    if out.points > 0 {
        for eq in 0..3 {
            out.rms[eq] = (sq[eq] / out.points as f64).sqrt();
        }
    }
    Ok(out)
}

/// Apply [`GridField::fd_jet`] and the pointwise residual over the interior.
pub fn residual_norms(params: &PhysicalParams, field: &GridField) -> Result<ResidualNorms> {
    residual_norms_at(params, field, &interior_nodes(&field.spec)?)
}

/// Residual norms of `coarse` over its interior and of `fine` (sampled on
/// `coarse.spec.refined()`) at the same physical points.
pub fn refinement_norms(params: &PhysicalParams, coarse: &GridField, fine: &GridField) -> Result<(ResidualNorms, ResidualNorms)> {
    if fine.spec != coarse.spec.refined() {
        return Err(Error::InvalidParameter("fine grid is not the refinement of the coarse grid".into()));
    }
    let nodes = interior_nodes(&coarse.spec)?;
    let doubled: Vec<[usize; 3]> = nodes.iter().map(|n| n.map(|i| 2 * i)).collect();
    Ok((residual_norms_at(params, coarse, &nodes)?, residual_norms_at(params, fine, &doubled)?))
}

/// `log₂(coarse / fine)` of the overall max residual.
pub fn observed_order(coarse: &ResidualNorms, fine: &ResidualNorms) -> f64 {
    (coarse.max_overall() / fine.max_overall()).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::field::{FieldValues, FnSolution};
    use crate::model::jet::mi;

    fn spec() -> GridSpec {
        GridSpec { x0: -0.5, z0: 0.2, hx: 0.1, hz: 0.15, nx: 7, nz: 6, t0: 1.0, dt: 0.05, nt: 5 }
    }

    #[test]
    fn quadratics_are_differentiated_exactly() {
        let sol = FnSolution(|t: f64, x: f64, z: f64| FieldValues {
            psi: 1.0 + 2.0 * t - x + 0.5 * z + 3.0 * t * x - 2.0 * x * z + t * t + 0.7 * z * z,
            v: x * x - t * z,
            rho: 4.0 * t * x + z,
        });
        let g = GridField::sample(spec(), &sol).unwrap();
        let jet = g.fd_jet(2, 3, 2).unwrap();
        let (t, x, z) = (jet.base[0], jet.base[1], jet.base[2]);
        let expect = [
            ("", Field::Psi, 1.0 + 2.0 * t - x + 0.5 * z + 3.0 * t * x - 2.0 * x * z + t * t + 0.7 * z * z),
            ("t", Field::Psi, 2.0 + 3.0 * x + 2.0 * t),
            ("x", Field::Psi, -1.0 + 3.0 * t - 2.0 * z),
            ("z", Field::Psi, 0.5 - 2.0 * x + 1.4 * z),
            ("tx", Field::Psi, 3.0),
            ("xz", Field::Psi, -2.0),
            ("tt", Field::Psi, 2.0),
            ("zz", Field::Psi, 1.4),
            ("txx", Field::Psi, 0.0),
            ("ttt", Field::Psi, 0.0),
            ("xx", Field::V, 2.0),
            ("tz", Field::V, -1.0),
            ("tx", Field::Rho, 4.0),
            ("z", Field::Rho, 1.0),
        ];
        for (s, f, want) in expect {
            assert!((jet.get(f, mi(s)) - want).abs() < 1e-9, "{} {s}: {} vs {want}", f.name(), jet.get(f, mi(s)));
        }
    }

    #[test]
    fn constant_field_has_zero_derivatives() {
        let sol = FnSolution(|_, _, _| FieldValues { psi: 2.0, v: -1.0, rho: 0.5 });
        let g = GridField::sample(spec(), &sol).unwrap();
        let jet = g.fd_jet(2, 2, 2).unwrap();
        for m in ALL_INDICES.iter().skip(1) {
            for f in Field::ALL {
                assert_eq!(jet.get(f, *m), 0.0);
            }
        }
    }

    #[test]
    fn boundary_index_is_out_of_stencil() {
        let g = GridField::zeros(spec()).unwrap();
        assert!(matches!(g.fd_jet(1, 3, 3), Err(Error::OutOfStencil { .. })));
        assert!(matches!(g.fd_jet(2, 5, 3), Err(Error::OutOfStencil { .. })));
    }

    #[test]
    fn zero_field_has_zero_norms() {
        let p = PhysicalParams::new(1.0, 2.0, 9.8).unwrap();
        let n = residual_norms(&p, &GridField::zeros(spec()).unwrap()).unwrap();
        assert_eq!(n.max_abs, [0.0; 3]);
        assert_eq!(n.rms, [0.0; 3]);
        assert!(n.points > 0);
    }

    #[test]
    fn tiny_grid_is_rejected() {
        let p = PhysicalParams::new(1.0, 2.0, 9.8).unwrap();
        let s = GridSpec { nt: 4, ..spec() };
        assert!(matches!(residual_norms(&p, &GridField::zeros(s).unwrap()), Err(Error::GridTooSmall(_))));
    }

    #[test]
    fn refined_spec_keeps_domain() {
        let s = spec();
        let r = s.refined();
        assert_eq!(r.x(r.nx - 1), s.x(s.nx - 1));
        assert!((r.t(r.nt - 1) - s.t(s.nt - 1)).abs() < 1e-15);
    }
}
