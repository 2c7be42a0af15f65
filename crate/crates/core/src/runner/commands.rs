use std::path::Path;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::RunConfig;
use crate::dynamics::{integrate_phi, period, IntegratorSettings, ReducedTrajectory, TrajectoryMetadata, TRAJECTORY_HEADER};
use crate::energy::{
    closed_form_audit, conservation_check, density_profiles, invariant_disk_total, ClosedFormAudit, DiskQuadrature,
    EnergyReport, ENERGY_HEADER, PROFILE_HEADER,
};
use crate::error::{Error, Result};
use crate::model::{write_grid, Branch, FieldSolution, GridField, GridSpec, PhysicalParams};
use crate::output::{atomic_write, csv_bytes, json_bytes};
use crate::solution::{
    analytic_residual_max, dilation_invariance_check, fd_convergence, reduction_residuals, rotation_invariance_check,
    sample_points, InvariantSolution, InvariantSolutionSpec, SampleBox, SolutionForm,
};
use crate::symmetry::{bracket_table, catalog, catalog_f0, determining_residual, sample_manifold_jet, BracketEntry, Generator, HFunction};

/// The five subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifySymmetries,
    Solve,
    VerifySolution,
    Energy,
    BracketTable,
}

impl Command {
    pub const ALL: [Command; 5] =
        [Command::VerifySymmetries, Command::Solve, Command::VerifySolution, Command::Energy, Command::BracketTable];

    pub fn name(self) -> &'static str {
        match self {
            Command::VerifySymmetries => "verify-symmetries",
            Command::Solve => "solve",
            Command::VerifySolution => "verify-solution",
            Command::Energy => "energy",
            Command::BracketTable => "bracket-table",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutcome {
    pub status: Status,
    pub summary: String,
    /// Written files, relative to the output directory.
    pub files: Vec<String>,
}

/// Process exit status: 0 pass, 1 configuration error, 2 verification
/// failure, 3 numerical failure.
pub fn exit_code(result: &Result<CommandOutcome>) -> i32 {
    match result {
        Ok(o) if o.status == Status::Pass => 0,
        Ok(_) => 2,
        Err(e) => match e {
            Error::Config(_)
            | Error::InvalidParameter(_)
            | Error::CatalogMismatch(_)
            | Error::OutOfRegime(_)
            | Error::GridTooSmall(_)
            | Error::SingularPoint(_)
            | Error::Io(_)
            | Error::Format(_) => 1,
            _ => 3,
        },
    }
}

/// One named pass/fail check in a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Criterion {
    fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Criterion { name: name.into(), value, threshold, pass: value <= threshold }
    }
}

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn run(command: Command, config: &RunConfig) -> Result<CommandOutcome> {
    config.validate()?;
    match command {
        Command::VerifySymmetries => verify_symmetries(config),
        Command::Solve => solve(config),
        Command::VerifySolution => verify_solution(config),
        Command::Energy => energy(config),
        Command::BracketTable => brackets(config),
    }
}

fn write(out: &Path, name: &str, bytes: &[u8], files: &mut Vec<String>) -> Result<()> {
    atomic_write(&out.join(name), bytes)?;
    files.push(name.to_string());
    Ok(())
}

fn basis(config: &RunConfig) -> Result<Vec<Generator>> {
    let s = &config.symmetry;
    match config.params.branch() {
        Branch::Rotating => catalog(&config.params, &s.a, &s.b, &s.c),
        Branch::NonRotating => catalog_f0(&config.params, &s.a, &s.b, &s.c, s.h),
    }
}

fn require_rotating(config: &RunConfig, what: &str) -> Result<()> {
    if config.params.f == 0.0 {
        return Err(Error::Config(format!("{what} needs f ≠ 0 (the invariant solution is undefined at f = 0)")));
    }
    Ok(())
}

fn trajectory(config: &RunConfig, t_end: f64) -> Result<ReducedTrajectory> {
    let settings = IntegratorSettings { drift_tol: config.tolerances.drift, ..IntegratorSettings::default() };
    integrate_phi(&config.constants()?, t_end, &settings)
}

fn invariant_solution(config: &RunConfig, t_end: f64) -> Result<InvariantSolution> {
    let tr = trajectory(config, t_end)?;
    let spec = InvariantSolutionSpec::new(config.params, Arc::new(tr))?;
    Ok(InvariantSolution::new(spec, SolutionForm::A).with_v_shift(config.solution.v_shift))
}

fn grid_in_span(grid: &GridSpec, t_end: f64) -> Result<()> {
    let last = grid.t(grid.nt - 1);
    if grid.t0 < 0.0 || last > t_end {
        return Err(Error::Config(format!("grid times [{}, {last}] leave the trajectory span [0, {t_end}]", grid.t0)));
    }
    Ok(())
}

#[derive(Serialize)]
struct GeneratorReport {
    id: String,
    operator: crate::symmetry::Operator,
    mutated: bool,
    jets: usize,
    max_relative: f64,
    max_absolute: f64,
    pass: bool,
}

#[derive(Serialize)]
struct SymmetryReport {
    branch: Branch,
    params: PhysicalParams,
    h: Option<HFunction>,
    seed: u64,
    jet_count: usize,
    jet_scale: f64,
    tolerance: f64,
    mutated: bool,
    max_relative: f64,
    pass: bool,
    generators: Vec<GeneratorReport>,
}

fn verify_symmetries(config: &RunConfig) -> Result<CommandOutcome> {
    let s = &config.symmetry;
    let mut gens = basis(config)?;
    if s.mutate {
        gens = gens.into_iter().map(Generator::mutate).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let jets = (0..s.jet_count)
        .map(|_| sample_manifold_jet(&config.params, rng.next_u64(), s.jet_scale))
        .collect::<Result<Vec<_>>>()?;
    let tol = config.tolerances.determining;
    let mut reports = Vec::new();
    for g in &gens {
        let (mut rel, mut abs) = (0.0f64, 0.0f64);
        for jet in &jets {
            let r = determining_residual(g, &config.params, jet)?;
            rel = rel.max(r.max_relative());
            abs = r.absolute.iter().fold(abs, |a, v| a.max(v.abs()));
        }
        reports.push(GeneratorReport {
            id: g.id.clone(),
            operator: g.op.clone(),
            mutated: g.mutated,
            jets: jets.len(),
            max_relative: rel,
            max_absolute: abs,
            pass: rel <= tol,
        });
    }
    let max_relative = reports.iter().fold(0.0f64, |a, r| a.max(r.max_relative));
    let pass = reports.iter().all(|r| r.pass);
    let report = SymmetryReport {
        branch: config.params.branch(),
        params: config.params,
        h: (config.params.branch() == Branch::NonRotating).then_some(s.h),
        seed: config.seed,
        jet_count: s.jet_count,
        jet_scale: s.jet_scale,
        tolerance: tol,
        mutated: s.mutate,
        max_relative,
        pass,
        generators: reports,
    };
    let mut files = Vec::new();
    write(&config.out, "verify_symmetries.json", &json_bytes(&report)?, &mut files)?;
    Ok(CommandOutcome {
        status: status(pass),
        summary: format!(
            "{} generators x {} jets, max relative determining residual {:.3e} (tolerance {:.1e})",
            gens.len(),
            jets.len(),
            max_relative,
            tol
        ),
        files,
    })
}

#[derive(Serialize)]
struct BoundCheck {
    c_star: f64,
    max_abs_phi: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct SolveMetadata {
    params: PhysicalParams,
    trajectory: TrajectoryMetadata,
    bound: Option<BoundCheck>,
    grid: Option<GridSpec>,
    note: Option<String>,
}

fn solve(config: &RunConfig) -> Result<CommandOutcome> {
    let t_end = config.time.t_end;
    let tr = trajectory(config, t_end)?;
    let mut files = Vec::new();
    write(&config.out, "trajectory.csv", &csv_bytes(&TRAJECTORY_HEADER, tr.rows(config.time.samples)?)?, &mut files)?;
    let bound = tr.constants.c_star.map(|c| {
        let tolerance = config.tolerances.bound;
        let max_abs_phi = tr.max_abs_phi();
        BoundCheck { c_star: c, max_abs_phi, tolerance, pass: max_abs_phi <= c * (1.0 + tolerance) }
    });
    let (grid, note) = if config.params.f != 0.0 {
        grid_in_span(&config.grid, t_end)?;
        let spec = InvariantSolutionSpec::new(config.params, Arc::new(tr.clone()))?;
        let sol = InvariantSolution::new(spec, SolutionForm::A).with_v_shift(config.solution.v_shift);
        let field = GridField::sample(config.grid, &sol)?;
        write_grid(&config.out.join("fields"), &field)?;
        for it in 0..config.grid.nt {
            files.push(format!("fields/{}", crate::model::slice_file_name(it)));
        }
        files.push("fields/grid.json".into());
        (Some(config.grid), None)
    } else {
        (None, Some("f = 0: trajectory only, the invariant solution needs f ≠ 0".to_string()))
    };
    let pass = bound.as_ref().is_none_or(|b| b.pass);
    let meta = SolveMetadata { params: config.params, trajectory: tr.metadata(), bound, grid, note };
    write(&config.out, "solve_metadata.json", &json_bytes(&meta)?, &mut files)?;
    Ok(CommandOutcome {
        status: status(pass),
        summary: format!(
            "integrated to t = {t_end} with step {:.3e}, drift {:.3e}, max |phi| = {:.12}",
            tr.drift.step,
            tr.drift.relative,
            tr.max_abs_phi()
        ),
        files,
    })
}

#[derive(Serialize)]
struct SolutionReport {
    params: PhysicalParams,
    seed: u64,
    drift: f64,
    v_shift: f64,
    fd_order: f64,
    fd_coarse_max: f64,
    fd_fine_max: f64,
    criteria: Vec<Criterion>,
    pass: bool,
}

fn verify_solution(config: &RunConfig) -> Result<CommandOutcome> {
    require_rotating(config, "verify-solution")?;
    let t_end = config.time.t_end;
    grid_in_span(&config.grid, t_end)?;
    let sol = invariant_solution(config, t_end)?;
    let p = config.params;
    let tol = &config.tolerances;
    let g = &config.grid;
    let region = SampleBox { t: [0.0, t_end], x: [g.x0, g.x(g.nx - 1)], z: [g.z0, g.z(g.nz - 1)] };
    let mut criteria = Vec::new();

    let pts = sample_points(config.seed, config.solution.residual_points, &region);
    criteria.push(Criterion::at_most("analytic_residual", analytic_residual_max(&p, &sol, &pts)?, tol.analytic_residual));

    let conv = fd_convergence(&p, &sol, config.grid)?;
    criteria.push(Criterion::at_most("fd_order_deviation", (conv.order - 2.0).abs(), tol.order_window));

    let shared: Arc<dyn FieldSolution> = Arc::new(sol.clone());
    let pts = sample_points(config.seed.wrapping_add(1), config.solution.invariance_points, &region);
    let rot = rotation_invariance_check(&p, shared.clone(), config.solution.rotation_angle, &pts)?;
    criteria.push(Criterion::at_most("rotation_invariance", rot, tol.invariance));
    let dil = dilation_invariance_check(&p, shared, config.solution.dilation_parameter, &pts)?;
    criteria.push(Criterion::at_most("dilation_invariance", dil, tol.invariance));

    let k_form = InvariantSolution::new(sol.spec.clone(), SolutionForm::K).with_v_shift(config.solution.v_shift);
    let forms = pts
        .iter()
        .map(|&[t, x, z]| {
            let (a, b) = (sol.values(t, x, z), k_form.values(t, x, z));
            a.max_abs_diff(&b) / (1.0 + a.psi.abs().max(a.v.abs()).max(a.rho.abs()))
        })
        .fold(0.0, f64::max);
    criteria.push(Criterion::at_most("form_agreement", forms, 1e-13));

    let dt = 1e-3;
    let mut red = 0.0f64;
    for i in 1..10 {
        let t = t_end * i as f64 / 10.0;
        for e in reduction_residuals(&sol.spec, t, dt)? {
            red = red.max(e.abs());
        }
    }
    criteria.push(Criterion::at_most("reduction_residual", red, 1e-4));

    let pass = criteria.iter().all(|c| c.pass);
    let report = SolutionReport {
        params: p,
        seed: config.seed,
        drift: sol.spec.trajectory.drift.relative,
        v_shift: config.solution.v_shift,
        fd_order: conv.order,
        fd_coarse_max: conv.coarse.max_overall(),
        fd_fine_max: conv.fine.max_overall(),
        criteria,
        pass,
    };
    let mut files = Vec::new();
    write(&config.out, "verify_solution.json", &json_bytes(&report)?, &mut files)?;
    let failed: Vec<&str> = report.criteria.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    Ok(CommandOutcome {
        status: status(pass),
        summary: if pass {
            format!("all {} solution checks passed (fd order {:.3})", report.criteria.len(), conv.order)
        } else {
            format!("failed: {}", failed.join(", "))
        },
        files,
    })
}

#[derive(Serialize)]
struct EnergyOutput {
    params: PhysicalParams,
    period: Option<f64>,
    report: EnergyReport,
    closed_form_total: f64,
    closed_form_total_error: f64,
    criteria: Vec<Criterion>,
    pass: bool,
}

fn energy(config: &RunConfig) -> Result<CommandOutcome> {
    require_rotating(config, "energy")?;
    let constants = config.constants()?;
    let span = if constants.b2 > 0.0 && constants.k >= 0.0 {
        Some(period(constants.k, constants.b())?.value)
    } else {
        None
    };
    let t_end = span.unwrap_or(config.time.t_end);
    let sol = invariant_solution(config, t_end)?;
    let e = &config.energy;
    let n = e.time_samples;
    let times: Vec<f64> = (0..n).map(|i| if i + 1 == n { t_end } else { t_end * i as f64 / (n - 1) as f64 }).collect();
    let rule = DiskQuadrature { radial: e.radial_nodes, angular: e.angular_nodes, tolerance: e.quadrature_tolerance };
    let radius = config.disk_radius;
    let mut report = conservation_check(&config.params, &sol, radius, &times, &rule, config.tolerances.energy_variation)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let points: Vec<[f64; 2]> = (0..e.audit_points)
        .map(|_| [rng.gen_range(-radius..radius), rng.gen_range(-radius..radius)])
        .collect();
    let audit: ClosedFormAudit = closed_form_audit(&sol, &times, &points, radius)?;
    let closed = invariant_disk_total(&config.params, sol.spec.trajectory.constants.k, sol.spec.trajectory.constants.b2, radius);
    let closed_err = report.totals.iter().map(|v| (v - closed).abs() / closed.abs().max(1e-300)).fold(0.0, f64::max);
    let tol = &config.tolerances;
    let criteria = vec![
        Criterion::at_most("total_variation", report.max_relative_variation, tol.energy_variation),
        Criterion::at_most("cross_term", audit.cross_term_error, tol.cross_term),
        Criterion::at_most("discrepancy_time_variation", audit.max_time_variation, tol.discrepancy_time_variation),
    ];
    let pass = criteria.iter().all(|c| c.pass);
    report.audit = Some(audit);

    let mut files = Vec::new();
    write(&config.out, "energy.csv", &csv_bytes(&ENERGY_HEADER, report.csv_rows())?, &mut files)?;
    let mut profiles = Vec::new();
    for frac in [0.0, 0.25, 0.5] {
        profiles.extend(density_profiles(&config.params, &sol, radius, frac * t_end, e.profile_points));
    }
    write(&config.out, "energy_profiles.csv", &csv_bytes(&PROFILE_HEADER, profiles)?, &mut files)?;
    let variation = report.max_relative_variation;
    let out = EnergyOutput {
        params: config.params,
        period: span,
        report,
        closed_form_total: closed,
        closed_form_total_error: closed_err,
        criteria,
        pass,
    };
    write(&config.out, "energy_report.json", &json_bytes(&out)?, &mut files)?;
    Ok(CommandOutcome {
        status: status(pass),
        summary: format!("{n} disk totals over [0, {t_end:.6}], relative variation {variation:.3e}"),
        files,
    })
}

#[derive(Serialize)]
struct BracketReport {
    branch: Branch,
    seed: u64,
    points: usize,
    zero_tol: f64,
    basis: Vec<String>,
    entries: Vec<BracketEntry>,
}

fn brackets(config: &RunConfig) -> Result<CommandOutcome> {
    let gens = basis(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let points: Vec<[f64; 6]> = (0..config.symmetry.bracket_points)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
        .collect();
    let entries = bracket_table(&gens, &points, config.symmetry.bracket_zero_tol);
    let zeros = entries.iter().filter(|e| e.is_zero).count();
    let report = BracketReport {
        branch: config.params.branch(),
        seed: config.seed,
        points: points.len(),
        zero_tol: config.symmetry.bracket_zero_tol,
        basis: gens.iter().map(|g| g.id.clone()).collect(),
        entries,
    };
    let mut files = Vec::new();
    write(&config.out, "bracket_table.json", &json_bytes(&report)?, &mut files)?;
    Ok(CommandOutcome {
        status: Status::Pass,
        summary: format!("{} brackets, {zeros} vanish", report.entries.len()),
        files,
    })
}
