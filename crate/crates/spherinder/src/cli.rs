//! Command-line front end: `op-assemble`, `spy` and `solve`.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use spherinder_core::basis::eval_field;
use spherinder_core::operators::{
    boundary_rows, calculus_operator, conversion, one_minus_r2, radial_component_part, radial_multiply_component,
    scalar_laplacian, vector_laplacian_component, Calculus,
};
use spherinder_core::problems::{
    build_bessel, build_convection, build_damped_inertial, build_inertial, GeneralizedEVP, Method, PhysicalParams,
    ProblemKind,
};
use spherinder_core::{AssembledOperator, SpaceTag, Spin, Truncation};

use crate::critical::{critical_rayleigh, CriticalOptions, CriticalResult};
use crate::error::{Error, Result};
use crate::io::json::{BlockJson, CheckJson, CriticalJson, SolverJson};
use crate::io::manifest::SolverKind;
use crate::io::{
    equatorial_grid, meridional_grid, write_grid, write_matrix_market, GridDump, GridHeader, OperatorSideFile,
    ResultsFile, RunManifest, TagJson, SCHEMA_VERSION,
};
use crate::report::{residual_report, Check, ResidualReport};
use crate::solve::{solve_gevp, EigenSolution, SolveMode, DENSE_LIMIT};

/// Thread count for the dense kernels.
pub const THREADS_VAR: &str = "SPHERINDER_THREADS";

#[derive(Debug, Parser)]
#[command(name = "spherinder", version, about = "Sparse spectral operators and eigenproblems in the ball")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble one operator and write it as Matrix Market plus a JSON side-file
    OpAssemble {
        #[arg(long)]
        op: String,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        /// spin of the input (`+`, `-`, `0`)
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        sigma: String,
        #[arg(long = "Lmax")]
        l_max: usize,
        #[arg(long = "Nmax")]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Nonzero coordinates of L and M as CSV
    Spy {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        m: u32,
        #[arg(long = "Lmax")]
        l_max: usize,
        #[arg(long = "Nmax")]
        n_max: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-3)]
        ekman: f64,
        #[arg(long, default_value_t = 1.0)]
        prandtl: f64,
        #[arg(long, default_value_t = 0.0)]
        rayleigh: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an eigenproblem described by a JSON manifest
    Solve { manifest: PathBuf },
}

/// Parse, run and map errors to exit codes. Messages go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> Result<()> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => {
            let n: usize = v.trim().parse().map_err(|_| Error::Usage(format!("{THREADS_VAR}={v:?} is not a count")))?;
            let par = if n <= 1 { faer::Par::Seq } else { faer::Par::rayon(n) };
            faer::set_global_parallelism(par);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::OpAssemble { op, m, alpha, sigma, l_max, n_max, out } => {
            let sigma = parse_spin(&sigma)?;
            let trunc = Truncation::new(l_max, n_max)?;
            let a = assemble_named(&op, m, sigma, alpha, trunc)?;
            write_operator(&a, &out)
        }
        Command::Spy { problem, m, l_max, n_max, alpha, ekman, prandtl, rayleigh, out } => {
            let kind = parse_problem(&problem)?;
            let trunc = Truncation::new(l_max, n_max)?;
            let params = PhysicalParams::new(ekman, prandtl, rayleigh)?;
            let evp = build_problem(kind, m, trunc, alpha, Some(params))?;
            let mut w = BufWriter::new(File::create(&out)?);
            write_spy(&mut w, &evp)?;
            w.flush()?;
            Ok(())
        }
        Command::Solve { manifest } => {
            let man = RunManifest::load(&manifest)?;
            cmd_solve(&man)
        }
    }
}

pub fn parse_spin(s: &str) -> Result<Spin> {
    match s.trim() {
        "+" | "+1" | "1" | "plus" => Ok(Spin::Plus),
        "-" | "-1" | "minus" => Ok(Spin::Minus),
        "0" | "zero" => Ok(Spin::Zero),
        other => Err(Error::Usage(format!("unknown spin {other:?}; expected +, - or 0"))),
    }
}

pub fn parse_problem(s: &str) -> Result<ProblemKind> {
    ProblemKind::from_name(s).ok_or_else(|| {
        Error::Usage(format!(
            "unknown problem {s:?}; expected bessel-tau, bessel-galerkin, inertial, damped-inertial or convection"
        ))
    })
}

/// Names accepted by `op-assemble`, with the input spin they require
/// (`None` accepts any).
pub const OPERATORS: &[(&str, Option<Spin>)] = &[
    ("grad+", Some(Spin::Zero)),
    ("grad-", Some(Spin::Zero)),
    ("grad0", Some(Spin::Zero)),
    ("div+", Some(Spin::Plus)),
    ("div-", Some(Spin::Minus)),
    ("div0", Some(Spin::Zero)),
    ("curl++", Some(Spin::Plus)),
    ("curl--", Some(Spin::Minus)),
    ("curl0+", Some(Spin::Plus)),
    ("curl0-", Some(Spin::Minus)),
    ("curl+0", Some(Spin::Zero)),
    ("curl-0", Some(Spin::Zero)),
    ("radial", None),
    ("radial-component", None),
    ("one-minus-r2", None),
    ("conversion", None),
    ("laplacian", Some(Spin::Zero)),
    ("vector-laplacian", None),
    ("boundary", None),
];

fn calculus_by_name(op: &str) -> Option<Calculus> {
    Some(match op {
        "grad+" => Calculus::GradPlus,
        "grad-" => Calculus::GradMinus,
        "grad0" => Calculus::GradZero,
        "div+" => Calculus::DivPlus,
        "div-" => Calculus::DivMinus,
        "div0" => Calculus::DivZero,
        "curl++" => Calculus::CurlPlusPlus0,
        "curl--" => Calculus::CurlMinusMinus0,
        "curl0+" => Calculus::CurlZeroFromPlus,
        "curl0-" => Calculus::CurlZeroFromMinus,
        "curl+0" => Calculus::CurlPlusFromZero,
        "curl-0" => Calculus::CurlMinusFromZero,
        _ => return None,
    })
}

/// `radial` multiplies a scalar into spin component `sigma`; every other
/// operator takes `sigma` as its input spin.
pub fn assemble_named(op: &str, m: u32, sigma: Spin, alpha: f64, trunc: Truncation) -> Result<AssembledOperator> {
    let required = OPERATORS
        .iter()
        .find(|(n, _)| *n == op)
        .ok_or_else(|| {
            let names: Vec<&str> = OPERATORS.iter().map(|o| o.0).collect();
            Error::Usage(format!("unknown operator {op:?}; expected one of {}", names.join(", ")))
        })?
        .1;
    if let Some(req) = required {
        if req != sigma {
            let expected = SpaceTag::new(m, req, alpha, trunc)?;
            let found = SpaceTag::new(m, sigma, alpha, trunc)?;
            return Err(spherinder_core::Error::TagMismatch { expected: expected.label(), found: found.label() }.into());
        }
    }
    let a = match op {
        _ if calculus_by_name(op).is_some() => {
            calculus_operator(calculus_by_name(op).expect("checked"), m, alpha, trunc, trunc)?
        }
        "radial" => radial_multiply_component(m, sigma, alpha, trunc, trunc)?,
        "radial-component" => radial_component_part(m, sigma, alpha, trunc, trunc)?,
        "one-minus-r2" => one_minus_r2(m, sigma, alpha, trunc)?,
        "conversion" => conversion(m, sigma, alpha, trunc)?,
        "laplacian" => scalar_laplacian(m, alpha, trunc)?,
        "vector-laplacian" => vector_laplacian_component(m, sigma, alpha, trunc)?,
        "boundary" => boundary_rows(m, sigma, alpha, trunc)?,
        _ => unreachable!("operator table and dispatch disagree"),
    };
    Ok(a)
}

fn side_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn write_operator(a: &AssembledOperator, out: &Path) -> Result<()> {
    let comment = format!("{}\ndomain {}\ncodomain {}", a.name, a.domain.label(), a.codomain.label());
    let mut w = BufWriter::new(File::create(out)?);
    write_matrix_market(&mut w, &a.matrix, &comment)?;
    w.flush()?;
    let side = OperatorSideFile {
        schema_version: SCHEMA_VERSION,
        name: a.name.clone(),
        domain: TagJson::from(&a.domain),
        codomain: TagJson::from(&a.codomain),
        shape: [a.matrix.nrows(), a.matrix.ncols()],
        nnz: a.matrix.nnz(),
        delta_l: a.delta_l(),
    };
    fs::write(side_path(out), serde_json::to_string_pretty(&side)? + "\n")?;
    Ok(())
}

pub fn build_problem(
    kind: ProblemKind,
    m: u32,
    trunc: Truncation,
    alpha: f64,
    params: Option<PhysicalParams>,
) -> Result<GeneralizedEVP> {
    let need = |p: Option<PhysicalParams>| p.ok_or_else(|| Error::Usage(format!("{} needs physical parameters", kind.name())));
    Ok(match kind {
        ProblemKind::BesselTau => build_bessel(m, trunc, alpha, Method::Tau)?,
        ProblemKind::BesselGalerkin => build_bessel(m, trunc, alpha, Method::Galerkin)?,
        ProblemKind::Inertial => build_inertial(m, trunc)?,
        ProblemKind::DampedInertial => build_damped_inertial(m, trunc, need(params)?.ekman)?,
        ProblemKind::Convection => build_convection(m, trunc, need(params)?)?,
    })
}

/// `matrix,row,col` with zero-based indices, L before M.
pub fn write_spy<W: Write>(out: &mut W, evp: &GeneralizedEVP) -> Result<()> {
    writeln!(out, "# problem: {} m={} Lmax={} Nmax={} size={}", evp.kind.name(), evp.m, evp.trunc.l_count, evp.trunc.n_max, evp.size())?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["matrix", "row", "col"]).map_err(std::io::Error::from)?;
    for (name, mat) in [("L", &evp.l), ("M", &evp.mass)] {
        for &(r, c, _) in mat.entries() {
            w.write_record([name, &r.to_string(), &c.to_string()]).map_err(std::io::Error::from)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn requested_checks(man: &RunManifest) -> Vec<(Check, Option<f64>)> {
    let c = &man.checks;
    [(Check::Divergence, c.divergence), (Check::Boundary, c.boundary), (Check::SpinRoundtrip, c.spin_roundtrip)]
        .into_iter()
        .filter(|(_, t)| t.is_some())
        .collect()
}

fn solve_mode(man: &RunManifest, size: usize, target: Option<Complex64>) -> Result<SolveMode> {
    let count = man.solver.count.unwrap_or(10);
    let shift = || {
        target.ok_or_else(|| Error::Manifest("shift-invert needs solver.target or a critical search".into()))
    };
    Ok(match man.solver.mode {
        SolverKind::Dense => SolveMode::DenseFull,
        SolverKind::ShiftInvert => SolveMode::ShiftInvert { target: shift()?, count },
        SolverKind::Auto if size <= DENSE_LIMIT => SolveMode::DenseFull,
        SolverKind::Auto => SolveMode::ShiftInvert { target: shift()?, count },
    })
}

pub fn cmd_solve(man: &RunManifest) -> Result<()> {
    man.validate()?;
    let kind = parse_problem(&man.problem)?;
    let trunc = Truncation::new(man.truncation.l_max, man.truncation.n_max)?;
    let alpha = man.alpha.unwrap_or(0.0);
    let mut params = match man.physics {
        Some(p) => Some(PhysicalParams::new(p.ekman, p.prandtl, p.rayleigh)?),
        None => None,
    };
    let mut target = man.solver.target.map(|t| Complex64::new(t[0], t[1]));

    let mut critical: Option<CriticalResult> = None;
    if let (Some(c), Some(p)) = (&man.critical, params) {
        let mut opts = CriticalOptions::reduced(man.m, trunc, p.ekman, p.prandtl, c.reduced_bracket, None);
        opts.target = c.reduced_target.map(|t| Complex64::new(t[0], t[1]) * p.ekman.powf(-2.0 / 3.0)).or(target);
        opts.tol = man.solver.tol;
        opts.rel_tol = c.rel_tol;
        if let Some(n) = man.solver.count {
            opts.count = n;
        }
        if man.solver.mode == SolverKind::Dense {
            opts.target = None;
        }
        let r = critical_rayleigh(&opts)?;
        params = Some(p.with_rayleigh(r.rayleigh)?);
        target = Some(Complex64::new(0.0, r.omega));
        critical = Some(r);
    }

    let evp = build_problem(kind, man.m, trunc, alpha, params)?;
    let mode = solve_mode(man, evp.size(), target)?;
    let checks = requested_checks(man);
    let want_vectors = !checks.is_empty() || man.output.grids > 0 || man.output.vectors;
    let sol = solve_gevp(&evp.l, &evp.mass, mode, man.solver.tol, want_vectors)?;
    let report = if checks.is_empty() { None } else { Some(residual_report(&evp, &sol, &checks)?) };

    fs::create_dir_all(&man.output.dir)?;
    let results = results_file(man, &evp, alpha, &sol, report.as_ref(), critical.as_ref());
    fs::write(man.output.dir.join("results.json"), serde_json::to_string_pretty(&results)? + "\n")?;
    if man.output.vectors {
        if let Some(v) = &sol.eigenvectors {
            let pairs: Vec<Vec<[f64; 2]>> = v.iter().map(|x| x.iter().map(|z| [z.re, z.im]).collect()).collect();
            fs::write(man.output.dir.join("vectors.json"), serde_json::to_string(&pairs)? + "\n")?;
        }
    }
    write_grids(man, &evp, &sol)?;

    if !sol.converged {
        return Err(Error::Solver(format!(
            "residual {:e} above tolerance {:e}; partial results written to {}",
            sol.max_residual(),
            sol.tol,
            man.output.dir.display()
        )));
    }
    if let Some(r) = &report {
        if !r.passed() {
            let failed: Vec<String> = r
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{} = {:e} (threshold {:e})", c.check.name(), c.max_residual, c.threshold.unwrap_or(0.0)))
                .collect();
            return Err(Error::Solver(format!("residual checks failed: {}", failed.join(", "))));
        }
    }
    if let Some(t) = man.checks.residual {
        if !(sol.max_residual() < t) {
            return Err(Error::Solver(format!("eigen residual {:e} above threshold {t:e}", sol.max_residual())));
        }
    }
    Ok(())
}

fn results_file(
    man: &RunManifest,
    evp: &GeneralizedEVP,
    alpha: f64,
    sol: &EigenSolution,
    report: Option<&ResidualReport>,
    critical: Option<&CriticalResult>,
) -> ResultsFile {
    let (mode, target, count, sort) = match sol.mode {
        SolveMode::DenseFull => ("dense", None, None, "abs"),
        SolveMode::ShiftInvert { target, count } => ("shift-invert", Some([target.re, target.im]), Some(count), "distance"),
    };
    let mut checks: Vec<CheckJson> = report
        .map(|r| {
            r.checks
                .iter()
                .map(|c| CheckJson {
                    name: c.check.name().into(),
                    max_residual: c.max_residual,
                    threshold: c.threshold,
                    passed: c.passed,
                })
                .collect()
        })
        .unwrap_or_default();
    checks.push(CheckJson {
        name: "eigen_residual".into(),
        max_residual: sol.max_residual(),
        threshold: man.checks.residual.or(Some(sol.tol)),
        passed: sol.max_residual() < man.checks.residual.unwrap_or(sol.tol),
    });
    ResultsFile {
        schema_version: SCHEMA_VERSION,
        problem: evp.kind.name().into(),
        m: evp.m,
        l_max: evp.trunc.l_count,
        n_max: evp.trunc.n_max,
        alpha: man.problem.starts_with("bessel").then_some(alpha),
        ekman: evp.params.map(|p| p.ekman),
        prandtl: evp.params.map(|p| p.prandtl),
        rayleigh: evp.params.map(|p| p.rayleigh),
        size: evp.size(),
        variables: evp
            .variables
            .iter()
            .map(|b| BlockJson { name: b.name.clone(), offset: b.offset, size: b.size, tag: b.tag().as_ref().map(TagJson::from) })
            .collect(),
        solver: SolverJson {
            mode: mode.into(),
            target,
            count,
            tol: sol.tol,
            converged: sol.converged,
            dropped: sol.dropped,
            sort: sort.into(),
        },
        eigenvalues: sol.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
        residuals: sol.residuals.clone(),
        checks,
        critical: critical.map(|c| CriticalJson {
            rayleigh: c.rayleigh,
            omega: c.omega,
            reduced_rayleigh: c.reduced_rayleigh,
            reduced_omega: c.reduced_omega,
            iterations: c.iterations,
            warnings: c.warnings.clone(),
        }),
    }
}

/// Meridional and equatorial slices of the least damped modes.
fn write_grids(man: &RunManifest, evp: &GeneralizedEVP, sol: &EigenSolution) -> Result<()> {
    let Some(vectors) = &sol.eigenvectors else { return Ok(()) };
    let mut order: Vec<usize> = (0..sol.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| sol.eigenvalues[b].re.total_cmp(&sol.eigenvalues[a].re).then(a.cmp(&b)));
    let n = man.output.grid_size;
    let slices = [("meridional", meridional_grid(n, n, 0.0)?), ("equatorial", equatorial_grid(n, 2 * n)?)];
    for (rank, &i) in order.iter().take(man.output.grids).enumerate() {
        let fields = evp.recover(&vectors[i])?;
        let mut named = vec![(if fields.velocity.is_some() { "p" } else { "f" }, &fields.scalar)];
        if let Some(u) = &fields.velocity {
            named.extend([("u+", &u.plus), ("u-", &u.minus), ("u0", &u.zero)]);
        }
        if let Some(t) = &fields.temperature {
            named.push(("theta", t));
        }
        for (slice, pts) in &slices {
            let header = GridHeader {
                slice: format!("{slice} mode={rank} lambda={:.17e}{:+.17e}i", sol.eigenvalues[i].re, sol.eigenvalues[i].im),
                problem: evp.kind.name().into(),
                m: evp.m,
                l_max: evp.trunc.l_count,
                n_max: evp.trunc.n_max,
                tags: named.iter().map(|(k, f)| (k.to_string(), f.tag.label())).collect(),
            };
            let mut dump = GridDump::new(header, pts.clone());
            for (k, f) in &named {
                dump.push(k, eval_field(f, pts))?;
            }
            let path = man.output.dir.join(format!("{slice}_{rank}.csv"));
            let mut w = BufWriter::new(File::create(path)?);
            write_grid(&mut w, &dump)?;
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_operator_assembles() {
        let t = Truncation::new(4, 4).unwrap();
        for (name, spin) in OPERATORS {
            let s = spin.unwrap_or(Spin::Plus);
            let a = assemble_named(name, 2, s, 1.0, t).unwrap();
            assert_eq!(a.domain.sigma, if *name == "radial" { Spin::Zero } else { s }, "{name}");
        }
    }

    #[test]
    fn wrong_spin_is_a_tag_error() {
        let t = Truncation::new(4, 4).unwrap();
        let e = assemble_named("grad0", 2, Spin::Plus, 0.0, t).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let msg = e.to_string();
        assert!(msg.contains("sigma=+") && msg.contains("sigma=0"), "{msg}");
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        let t = Truncation::new(4, 4).unwrap();
        assert_eq!(assemble_named("hessian", 2, Spin::Zero, 0.0, t).unwrap_err().exit_code(), 2);
        assert_eq!(parse_problem("mhd").unwrap_err().exit_code(), 2);
        assert!(parse_spin("2").is_err());
    }
}
