//! JSON run configuration. Every field has an explicit default, printed by
//! `--print-config`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::{Offset, ReducedConstants};
use crate::error::{Error, Result};
use crate::model::{Branch, GridSpec, PhysicalParams};
use crate::symmetry::{HFunction, TimeFunction};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReducedConfig {
    /// Exactly one of `a` and `k` must be set.
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub phi0: f64,
    pub dphi0: f64,
    /// Admit `K < 0` with no boundedness claim.
    pub exploratory: bool,
}

impl Default for ReducedConfig {
    fn default() -> Self {
        ReducedConfig { a: None, k: Some(1.0), phi0: 0.0, dphi0: 1.0, exploratory: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeConfig {
    pub t_end: f64,
    /// Rows in the trajectory CSV.
    pub samples: usize,
}

impl Default for TimeConfig {
    fn default() -> Self {
        TimeConfig { t_end: 20.0, samples: 401 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub determining: f64,
    pub drift: f64,
    pub energy_variation: f64,
    pub analytic_residual: f64,
    pub invariance: f64,
    /// Accepted `|observed order − 2|`.
    pub order_window: f64,
    pub cross_term: f64,
    pub discrepancy_time_variation: f64,
    /// Relative slack in `|φ| ≤ C*`.
    pub bound: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            determining: 1e-9,
            drift: 1e-10,
            energy_variation: 1e-6,
            analytic_residual: 1e-10,
            invariance: 1e-12,
            order_window: 0.2,
            cross_term: 1e-12,
            discrepancy_time_variation: 1e-9,
            bound: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SymmetryConfig {
    pub jet_count: usize,
    /// Parametric jet entries are drawn from `[−jet_scale, jet_scale]`.
    pub jet_scale: f64,
    pub a: TimeFunction,
    pub b: TimeFunction,
    pub c: TimeFunction,
    /// `h(v, s)` of the non-rotating catalog.
    pub h: HFunction,
    /// Inject the per-generator mutation; the suite is then expected to fail.
    pub mutate: bool,
    pub bracket_points: usize,
    pub bracket_zero_tol: f64,
}

impl Default for SymmetryConfig {
    fn default() -> Self {
        SymmetryConfig {
            jet_count: 100,
            jet_scale: 1.0,
            a: TimeFunction::sine(1.0, 1.3, 0.2),
            b: TimeFunction::Polynomial { coeffs: vec![0.1, 0.5, -0.3] },
            c: TimeFunction::exponential(0.4, 0.7),
            h: HFunction::SinS,
            mutate: false,
            bracket_points: 16,
            bracket_zero_tol: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolutionConfig {
    pub residual_points: usize,
    pub invariance_points: usize,
    pub rotation_angle: f64,
    pub dilation_parameter: f64,
    /// Added to `V(t)`; nonzero values make verification fail.
    pub v_shift: f64,
}

impl Default for SolutionConfig {
    fn default() -> Self {
        SolutionConfig {
            residual_points: 1000,
            invariance_points: 500,
            rotation_angle: std::f64::consts::FRAC_PI_3,
            dilation_parameter: 0.5,
            v_shift: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnergyConfig {
    /// Disk totals are taken at this many times spread over one period.
    pub time_samples: usize,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub quadrature_tolerance: f64,
    pub profile_points: usize,
    pub audit_points: usize,
}

impl Default for EnergyConfig {
    fn default() -> Self {
        EnergyConfig {
            time_samples: 64,
            radial_nodes: 32,
            angular_nodes: 128,
            quadrature_tolerance: 1e-8,
            profile_points: 33,
            audit_points: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub params: PhysicalParams,
    /// Must agree with `params.f`: `rotating` iff `f > 0`.
    pub branch: Branch,
    pub reduced: ReducedConfig,
    pub grid: GridSpec,
    pub disk_radius: f64,
    pub time: TimeConfig,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub symmetry: SymmetryConfig,
    pub solution: SolutionConfig,
    pub energy: EnergyConfig,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: PhysicalParams { f: 1.0, n: 2.0, g: 9.8 },
            branch: Branch::Rotating,
            reduced: ReducedConfig::default(),
            grid: GridSpec { x0: -1.0, z0: -1.0, hx: 0.1, hz: 0.1, nx: 21, nz: 21, t0: 0.5, dt: 0.02, nt: 11 },
            disk_radius: 1.0,
            time: TimeConfig::default(),
            seed: 20240607,
            tolerances: Tolerances::default(),
            symmetry: SymmetryConfig::default(),
            solution: SolutionConfig::default(),
            energy: EnergyConfig::default(),
            out: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.branch != self.params.branch() {
            return Err(Error::Config(format!("branch {:?} does not match f = {}", self.branch, self.params.f)));
        }
        if self.reduced.a.is_some() == self.reduced.k.is_some() {
            return Err(Error::Config("exactly one of reduced.A and reduced.K must be given".into()));
        }
        self.grid.validate().map_err(|e| Error::Config(e.to_string()))?;
        let t = &self.tolerances;
        for (name, v) in [
            ("determining", t.determining),
            ("drift", t.drift),
            ("energy_variation", t.energy_variation),
            ("analytic_residual", t.analytic_residual),
            ("invariance", t.invariance),
            ("order_window", t.order_window),
            ("cross_term", t.cross_term),
            ("discrepancy_time_variation", t.discrepancy_time_variation),
            ("bound", t.bound),
            ("disk_radius", self.disk_radius),
            ("time.t_end", self.time.t_end),
            ("symmetry.jet_scale", self.symmetry.jet_scale),
            ("symmetry.bracket_zero_tol", self.symmetry.bracket_zero_tol),
            ("energy.quadrature_tolerance", self.energy.quadrature_tolerance),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        for (name, n, min) in [
            ("time.samples", self.time.samples, 2),
            ("symmetry.jet_count", self.symmetry.jet_count, 1),
            ("symmetry.bracket_points", self.symmetry.bracket_points, 1),
            ("solution.residual_points", self.solution.residual_points, 1),
            ("solution.invariance_points", self.solution.invariance_points, 1),
            ("energy.time_samples", self.energy.time_samples, 2),
            ("energy.radial_nodes", self.energy.radial_nodes, 1),
            ("energy.angular_nodes", self.energy.angular_nodes, 1),
            ("energy.profile_points", self.energy.profile_points, 2),
            ("energy.audit_points", self.energy.audit_points, 3),
        ] {
            if n < min {
                return Err(Error::Config(format!("{name} must be at least {min}, got {n}")));
            }
        }
        for tf in [&self.symmetry.a, &self.symmetry.b, &self.symmetry.c] {
            tf.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn offset(&self) -> Offset {
        match (self.reduced.a, self.reduced.k) {
            (Some(a), _) => Offset::A(a),
            (None, Some(k)) => Offset::K(k),
            (None, None) => Offset::K(f64::NAN),
        }
    }

    pub fn constants(&self) -> Result<ReducedConstants> {
        let r = &self.reduced;
        let c = if r.exploratory {
            ReducedConstants::exploratory(&self.params, self.offset(), r.phi0, r.dphi0)
        } else {
            ReducedConstants::new(&self.params, self.offset(), r.phi0, r.dphi0)
        };
        c.map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}
