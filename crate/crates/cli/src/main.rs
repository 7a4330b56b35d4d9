//! `dubins-intercept`: solve, inspect and verify minimum-time interception
//! scenarios for a Dubins car.
//!
//! Exit codes: 0 success, 1 input error, 2 infeasible within the horizon,
//! 3 oracle disagreement.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod format;
mod scenario;
mod svg;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dubins_intercept_core::{
    certification_error, residual, sample_trajectory, solve, verify_solution, ControlSchedule, FamilyId,
    OracleSettings, SolverResult, SolverSettings, TargetTrajectory,
};
use format::{exact, sig9, sig9_opt};
use scenario::{InputError, Loaded, DEFAULT_HORIZON};
use serde_json::json;

#[derive(Parser)]
#[command(name = "dubins-intercept", version, about = "Minimum-time lateral interception of a moving target by a Dubins car")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SolverOpts {
    /// Latest interception time searched [default: scenario value or 8π]
    #[arg(long)]
    horizon: Option<f64>,
    /// Grid step of the root scan
    #[arg(long)]
    scan_step: Option<f64>,
    /// Interception tolerance for certifying roots
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a scenario and report the optimal interception
    Solve {
        scenario: PathBuf,
        #[command(flatten)]
        opts: SolverOpts,
        /// Also write the result as JSON
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate the ten residual functions as CSV `t,family,F`
    Residuals {
        scenario: PathBuf,
        #[command(flatten)]
        opts: SolverOpts,
        /// Grid step in t
        #[arg(long, default_value_t = 0.01)]
        grid: f64,
        /// First grid time
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        /// Last grid time [default: horizon]
        #[arg(long)]
        to: Option<f64>,
    },
    /// Sample the optimal trajectory and the target as CSV
    Trace {
        scenario: PathBuf,
        #[command(flatten)]
        opts: SolverOpts,
        /// Number of rows, endpoints included
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Solve, then check the result against the brute-force oracle
    Verify {
        scenario: PathBuf,
        #[command(flatten)]
        opts: SolverOpts,
        /// Oracle grid step for both time and switch times
        #[arg(long, default_value_t = 0.02)]
        oracle_step: f64,
        /// Debugging aid: shift the second switch time before verifying
        #[arg(long, hide = true)]
        corrupt_tau2: Option<f64>,
    },
    /// Render the interception as an SVG figure
    Svg {
        scenario: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        opts: SolverOpts,
        /// Heading markers per path
        #[arg(long, default_value_t = 8)]
        markers: usize,
        /// Polyline vertices per path
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
}

enum Failure {
    Input(String),
    Infeasible,
    Disagreement,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("write failed: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Solve { scenario, opts, output } => cmd_solve(&mut out, &scenario, opts, output.as_deref()),
        Command::Residuals { scenario, opts, grid, from, to } => cmd_residuals(&mut out, &scenario, opts, grid, from, to),
        Command::Trace { scenario, opts, samples } => cmd_trace(&mut out, &scenario, opts, samples),
        Command::Verify { scenario, opts, oracle_step, corrupt_tau2 } => {
            cmd_verify(&mut out, &scenario, opts, oracle_step, corrupt_tau2)
        }
        Command::Svg { scenario, output, opts, markers, samples } => {
            cmd_svg(&mut out, &scenario, &output, opts, markers, samples)
        }
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Ok(()), Err(e)) => {
            eprintln!("error: write failed: {e}");
            ExitCode::from(1)
        }
        (Err(Failure::Input(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        (Err(Failure::Infeasible), _) => ExitCode::from(2),
        (Err(Failure::Disagreement), _) => ExitCode::from(3),
    }
}

struct Problem {
    loaded: Loaded,
    horizon: f64,
    settings: SolverSettings,
}

fn positive_flag(name: &str, v: Option<f64>) -> Result<Option<f64>, Failure> {
    match v {
        Some(x) if !(x.is_finite() && x > 0.0) => Err(Failure::Input(format!("--{name} must be a positive number, got {x}"))),
        _ => Ok(v),
    }
}

fn prepare(path: &Path, opts: SolverOpts) -> Result<Problem, Failure> {
    let loaded = scenario::load(path)?;
    let mut overrides = loaded.scenario.settings;
    if let Some(v) = positive_flag("scan-step", opts.scan_step)? {
        overrides.scan_step = Some(v);
    }
    if let Some(v) = positive_flag("tol", opts.tol)? {
        overrides.tol = Some(v);
    }
    let horizon = positive_flag("horizon", opts.horizon)?.or(loaded.scenario.horizon).unwrap_or(DEFAULT_HORIZON);
    let settings = overrides.apply(SolverSettings::default());
    Ok(Problem { loaded, horizon, settings })
}

impl Problem {
    fn target(&self) -> &TargetTrajectory {
        &self.loaded.target
    }

    fn solve(&self) -> Result<SolverResult, Failure> {
        solve(self.target(), self.horizon, &self.settings).map_err(|e| Failure::Input(e.to_string()))
    }

    /// Solves and returns `(T*, schedule)`, reporting infeasibility on stderr.
    fn solve_feasible(&self) -> Result<(SolverResult, f64, ControlSchedule), Failure> {
        let r = self.solve()?;
        match (r.t_star, r.schedule) {
            (Some(t), Some(s)) => Ok((r, t, s)),
            _ => {
                eprintln!("infeasible: no interception within horizon {}", sig9(self.horizon));
                Err(Failure::Infeasible)
            }
        }
    }
}

fn signs(family: FamilyId, sched: &ControlSchedule) -> String {
    match (family, sched) {
        (FamilyId::Ccc { s, mu }, _) => format!("s={s}, mu={mu}"),
        (_, ControlSchedule::Csc { s, sigma, .. }) => format!("s={s}, sigma={sigma}"),
        (_, ControlSchedule::Ccc { s, .. }) => format!("s={s}"),
    }
}

fn cmd_solve(out: &mut impl Write, path: &Path, opts: SolverOpts, output: Option<&Path>) -> Outcome {
    let p = prepare(path, opts)?;
    let r = p.solve()?;
    if !p.loaded.scenario.description.is_empty() {
        writeln!(out, "# {}", p.loaded.scenario.description)?;
    }
    let mut json_result = json!({
        "t_star": null,
        "horizon": p.horizon,
    });
    match (r.t_star, r.winner, r.schedule) {
        (Some(t), Some(w), Some(s)) => {
            writeln!(out, "T* = {t:.6}, family {w}, tau1={}, tau2={}", exact(s.tau1()), exact(s.tau2()))?;
            writeln!(out, "signs: {}", signs(w, &s))?;
            let e = s.config_at(t);
            let phi = e.phi.normalized();
            writeln!(out, "interception: x={}, y={}, phi={}", exact(e.x), exact(e.y), exact(phi))?;
            writeln!(out, "certification error: {:e}", certification_error(&s, t, p.target()))?;
            json_result = json!({
                "t_star": t,
                "horizon": p.horizon,
                "family": w.to_string(),
                "kind": if matches!(s, ControlSchedule::Csc { .. }) { "CSC" } else { "CCC" },
                "s": s.s().value(),
                "sigma": s.sigma().map(|v| v.value()),
                "tau1": s.tau1(),
                "tau2": s.tau2(),
                "interception": { "x": e.x, "y": e.y, "phi": phi },
            });
        }
        _ => writeln!(out, "infeasible within horizon {}", sig9(p.horizon))?,
    }
    writeln!(out, "candidates:")?;
    let mut candidates = Vec::new();
    for c in &r.all_candidates {
        let label = format!("{:<11}", c.family.to_string());
        match (c.root, c.schedule) {
            (Some(t), Some(s)) => {
                writeln!(
                    out,
                    "  {label} T={}  tau1={}  tau2={}  error={}",
                    sig9(t),
                    sig9(s.tau1()),
                    sig9(s.tau2()),
                    sig9_opt(c.certification_error)
                )?;
                candidates.push(json!({ "family": c.family.to_string(), "t": t, "tau1": s.tau1(), "tau2": s.tau2() }));
            }
            _ if !c.scanned => writeln!(out, "  {label} not scanned")?,
            _ => writeln!(out, "  {label} no root")?,
        }
    }
    if let Some(dest) = output {
        json_result["candidates"] = serde_json::Value::Array(candidates);
        let text = serde_json::to_string_pretty(&json_result).expect("JSON values serialize");
        fs::write(dest, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", dest.display())))?;
    }
    if r.t_star.is_none() {
        return Err(Failure::Infeasible);
    }
    Ok(())
}

fn cmd_residuals(
    out: &mut impl Write,
    path: &Path,
    opts: SolverOpts,
    grid: f64,
    from: f64,
    to: Option<f64>,
) -> Outcome {
    let p = prepare(path, opts)?;
    if !(grid.is_finite() && grid > 0.0) {
        return Err(Failure::Input(format!("--grid must be a positive number, got {grid}")));
    }
    let to = to.unwrap_or(p.horizon);
    if !(from.is_finite() && to.is_finite() && from >= 0.0 && to >= from) {
        return Err(Failure::Input(format!("invalid t range [{from}, {to}]")));
    }
    let n = ((to - from) / grid + 1e-9).floor() as usize;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "family", "F"]).map_err(csv_err)?;
    for k in 0..=n {
        let t = from + k as f64 * grid;
        let ts = sig9(t);
        for f in FamilyId::ALL {
            let v = residual(f, t, p.target()).unwrap_or(f64::NAN);
            w.write_record([ts.as_str(), &f.to_string(), &sig9(v)]).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Input(format!("write failed: {e}"))
}

fn cmd_trace(out: &mut impl Write, path: &Path, opts: SolverOpts, samples: usize) -> Outcome {
    if samples < 2 {
        return Err(Failure::Input(format!("--samples must be at least 2, got {samples}")));
    }
    let p = prepare(path, opts)?;
    let (_, t_star, sched) = p.solve_feasible()?;
    let rows = sample_trajectory(&sched, t_star, samples).map_err(|e| Failure::Input(e.to_string()))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "x", "y", "phi", "u", "xe", "ye", "phie"]).map_err(csv_err)?;
    for row in rows {
        let e = p.target().at(row.t);
        let c = row.config;
        let fields = [row.t, c.x, c.y, c.phi.normalized(), row.u, e.x, e.y, e.phi.normalized()].map(sig9);
        w.write_record(&fields).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(
    out: &mut impl Write,
    path: &Path,
    opts: SolverOpts,
    oracle_step: f64,
    corrupt_tau2: Option<f64>,
) -> Outcome {
    if !(oracle_step.is_finite() && oracle_step > 0.0) {
        return Err(Failure::Input(format!("--oracle-step must be a positive number, got {oracle_step}")));
    }
    let p = prepare(path, opts)?;
    let (mut r, _, sched) = p.solve_feasible()?;
    if let Some(delta) = corrupt_tau2 {
        let bad = match sched {
            ControlSchedule::Csc { s, sigma, tau1, tau2 } => ControlSchedule::csc(s, sigma, tau1, tau2 + delta),
            ControlSchedule::Ccc { s, tau1, tau2 } => ControlSchedule::ccc(s, tau1, tau2 + delta),
        }
        .map_err(|e| Failure::Input(format!("--corrupt-tau2: {e}")))?;
        r.schedule = Some(bad);
    }
    let settings = OracleSettings::with_horizon(p.horizon).with_step(oracle_step);
    let report = verify_solution(p.target(), &r, &settings);
    writeln!(out, "{report}")?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Disagreement)
    }
}

fn cmd_svg(out: &mut impl Write, path: &Path, dest: &Path, opts: SolverOpts, markers: usize, samples: usize) -> Outcome {
    let p = prepare(path, opts)?;
    let (r, t_star, sched) = p.solve_feasible()?;
    let title = match (&p.loaded.scenario.description, r.winner) {
        (d, Some(w)) if !d.is_empty() => format!("{d}: T* = {t_star:.6} ({w})"),
        (_, w) => format!("T* = {t_star:.6} ({})", w.map(|w| w.to_string()).unwrap_or_default()),
    };
    let doc = svg::render(&svg::Figure {
        title: &title,
        schedule: &sched,
        t_star,
        target: p.target(),
        markers,
        samples,
    });
    fs::write(dest, doc).map_err(|e| Failure::Input(format!("{}: {e}", dest.display())))?;
    writeln!(out, "wrote {}", dest.display())?;
    Ok(())
}
