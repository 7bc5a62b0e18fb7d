//! `cfm`: bound-state spectra from a problem configuration file.
//!
//! Exit status: 0 on success, 2 when the spectrum is partial, 1 on error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use cfm_core::config::{Problem, ProblemConfig};
use cfm_core::{reference, report, solve_spectrum, SpectrumResult};

#[derive(Parser)]
#[command(name = "cfm", version, about = "Vibrational levels by the canonical function method")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for all bound levels and print `index, energy, residual`.
    Solve(RunArgs),
    /// Print the eigenvalue function on the scan grid.
    Scan(RunArgs),
    /// Print the potential curve.
    Potential(PotentialArgs),
    /// Solve and compare with an embedded reference table.
    Compare(CompareArgs),
}

#[derive(Args)]
struct Common {
    /// Problem configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output file; defaults to `output.path`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Prefix the output with a comment block describing the run.
    #[arg(long)]
    provenance: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// Lower scan energy, `value [unit]`; the unit defaults to the output unit.
    #[arg(long, allow_hyphen_values = true)]
    emin: Option<String>,
    /// Upper scan energy, `value [unit]`.
    #[arg(long, allow_hyphen_values = true)]
    emax: Option<String>,
    /// Number of scan points.
    #[arg(long)]
    points: Option<usize>,
    /// Integrator: `rk4` or `vsca`.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args)]
struct PotentialArgs {
    #[command(flatten)]
    common: Common,
    /// Smallest radius in the configuration's length unit.
    #[arg(long)]
    rlo: Option<f64>,
    /// Largest radius in the configuration's length unit.
    #[arg(long)]
    rhi: Option<f64>,
    #[arg(long, default_value_t = 500)]
    points: usize,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Embedded table name.
    #[arg(long)]
    reference: String,
}

struct Loaded {
    text: String,
    problem: Problem,
}

fn load(common: &Common, overrides: &[(&str, Option<String>)]) -> Result<Loaded> {
    let text = fs::read_to_string(&common.config)
        .with_context(|| format!("reading {}", common.config.display()))?;
    let mut cfg = ProblemConfig::parse(&text).with_context(|| format!("in {}", common.config.display()))?;
    if overrides.iter().any(|(_, v)| v.is_some()) {
        let unit = cfg.build()?.output_unit;
        for (key, value) in overrides {
            if let Some(v) = value {
                let energy = *key == "scan.emin" || *key == "scan.emax";
                let v = if energy && v.split_whitespace().count() == 1 && unit != cfm_core::Unit::Dimensionless {
                    format!("{v} {unit}")
                } else {
                    v.clone()
                };
                cfg.set(key, &v).with_context(|| format!("override {key}"))?;
            }
        }
    }
    let problem = cfg.build().with_context(|| format!("in {}", common.config.display()))?;
    Ok(Loaded { text: cfg.to_text(), problem })
}

fn run_overrides(a: &RunArgs) -> Vec<(&'static str, Option<String>)> {
    vec![
        ("scan.emin", a.emin.clone()),
        ("scan.emax", a.emax.clone()),
        ("scan.points", a.points.map(|p| p.to_string())),
        ("solver.method", a.method.clone()),
    ]
}

fn emit(common: &Common, loaded: &Loaded, body: &str) -> Result<()> {
    let mut out = String::new();
    if common.provenance {
        out.push_str(&report::provenance(&loaded.problem, &loaded.text));
    }
    out.push_str(body);
    let path = common.out.clone().or_else(|| loaded.problem.output_path.as_ref().map(PathBuf::from));
    match path {
        Some(p) => fs::write(&p, out).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().lock().write_all(out.as_bytes())?,
    }
    Ok(())
}

fn solve(p: &Problem) -> Result<SpectrumResult> {
    Ok(solve_spectrum(&p.solver, &p.plan, &p.options)?)
}

/// Reports problems on stderr and turns them into the exit status.
fn status(result: &SpectrumResult) -> u8 {
    for issue in &result.issues {
        eprintln!("warning: {issue}");
    }
    if !result.interleaved() {
        eprintln!("warning: zeros and poles do not interleave");
    }
    if result.is_partial() {
        eprintln!("partial spectrum: {} levels", result.levels.len());
        2
    } else {
        0
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve(a) => {
            let l = load(&a.common, &run_overrides(&a))?;
            let r = solve(&l.problem)?;
            emit(&a.common, &l, &report::levels_tsv(&r, &l.problem, l.problem.output_unit)?)?;
            Ok(status(&r))
        }
        Command::Scan(a) => {
            let l = load(&a.common, &run_overrides(&a))?;
            let r = solve(&l.problem)?;
            emit(&a.common, &l, &report::scan_tsv(&r, &l.problem, l.problem.output_unit)?)?;
            Ok(status(&r))
        }
        Command::Potential(a) => {
            let l = load(&a.common, &[])?;
            let p = &l.problem;
            let sc = &p.scaling;
            let (re, _) = p.solver.well();
            let inner = p.solver.potential.inner_limit;
            let lo = match a.rlo {
                Some(r) => r / sc.length_scale,
                None => inner.max(0.5 * re),
            };
            let hi = match a.rhi {
                Some(r) => r / sc.length_scale,
                None if re > inner => 5.0 * re,
                None => lo + 5.0,
            };
            if !(hi > lo) {
                bail!("need rlo < rhi");
            }
            if a.points < 2 {
                bail!("need at least 2 points");
            }
            emit(&a.common, &l, &report::potential_tsv(p, lo, hi, a.points, p.output_unit)?)?;
            Ok(0)
        }
        Command::Compare(a) => {
            let table = reference::table(&a.reference)?;
            let l = load(&a.run.common, &run_overrides(&a.run))?;
            let r = solve(&l.problem)?;
            let cmp = cfm_core::compare(&r, &l.problem.scaling, &table)?;
            emit(&a.run.common, &l, &report::comparison_tsv(&cmp))?;
            Ok(status(&r))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
