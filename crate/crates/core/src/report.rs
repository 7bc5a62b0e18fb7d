//! Tab-separated emitters. Output depends only on the inputs, so identical
//! runs give identical bytes.

use std::fmt::Write as _;

use crate::config::Problem;
use crate::cfm::EigenvalueFunctionSample;
use crate::spectrum::{Comparison, SpectrumResult};
use crate::units::{Unit, UnitError};

/// Significant digits of every printed energy.
pub const ENERGY_DIGITS: usize = 9;

/// Scientific notation with `digits` significant digits and a signed,
/// at least two-digit exponent: `-9.47778160e-05`.
pub fn sci(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

pub fn energy(x: f64) -> String {
    sci(x, ENERGY_DIGITS)
}

/// Optional leading comment block describing the run.
pub fn provenance(problem: &Problem, config_text: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# cfm {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "# lambda {}", problem.solver.lambda);
    let _ = writeln!(s, "# anchor {}", problem.solver.anchor);
    let _ = writeln!(s, "# rk4_step {}", problem.solver.rk4_step());
    for line in config_text.lines() {
        let _ = writeln!(s, "# config: {line}");
    }
    s
}

/// `# index\tenergy\tresidual`, energies in `unit`.
pub fn levels_tsv(result: &SpectrumResult, problem: &Problem, unit: Unit) -> Result<String, UnitError> {
    let mut s = String::from("# index\tenergy\tresidual\n");
    for l in &result.levels {
        let e = problem.scaling.energy_to(l.energy, unit)?;
        let _ = writeln!(s, "{}\t{}\t{}", l.index, energy(e), sci(l.residual, 3));
    }
    Ok(s)
}

/// Which sides failed to saturate: `ok`, `plus`, `minus` or `both`.
fn flags(plus: bool, minus: bool) -> &'static str {
    match (plus, minus) {
        (true, true) => "ok",
        (false, true) => "plus",
        (true, false) => "minus",
        (false, false) => "both",
    }
}

/// Scan samples as `|E|`, `F`, flags, followed by a comment block with the
/// refined eigenvalues. Re-scan samples are merged in energy order and carry
/// a trailing `rescan` column.
pub fn scan_tsv(result: &SpectrumResult, problem: &Problem, unit: Unit) -> Result<String, UnitError> {
    let mut all: Vec<(&EigenvalueFunctionSample, bool)> = result
        .samples
        .iter()
        .map(|p| (p, false))
        .chain(result.rescan_samples.iter().map(|p| (p, true)))
        .collect();
    all.sort_by(|a, b| a.0.energy.total_cmp(&b.0.energy));
    let mut s = String::from("# abs_energy\tF\tunsaturated\n");
    for (p, extra) in all {
        let e = problem.scaling.energy_to(p.energy, unit)?;
        let _ = write!(s, "{}\t{}\t{}", energy(e.abs()), energy(p.f), flags(p.plus_saturated, p.minus_saturated));
        s.push_str(if extra { "\trescan\n" } else { "\n" });
    }
    let _ = writeln!(s, "# eigenvalues: index\tabs_energy");
    for l in &result.levels {
        let e = problem.scaling.energy_to(l.energy, unit)?;
        let _ = writeln!(s, "# {}\t{}", l.index, energy(e.abs()));
    }
    Ok(s)
}

/// `(r, V)` on a uniform grid plus the exact minimum, which is marked `min`.
pub fn potential_tsv(
    problem: &Problem,
    r_lo: f64,
    r_hi: f64,
    points: usize,
    unit: Unit,
) -> Result<String, crate::config::ConfigError> {
    let sc = &problem.scaling;
    let model = &problem.solver.potential;
    let (re, ve) = problem.solver.well();
    let mut rows: Vec<(f64, f64, bool)> = Vec::with_capacity(points + 1);
    let n = points.max(2);
    for i in 0..n {
        let x = r_lo + (r_hi - r_lo) * (i as f64 / (n - 1) as f64);
        let x = if i == n - 1 { r_hi } else { x };
        rows.push((x, model.value(x)?, false));
    }
    if re >= r_lo && re <= r_hi {
        rows.retain(|r| r.0 != re);
        rows.push((re, ve, true));
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    let mut s = String::from("# r\tV\tnote\n");
    for (x, v, min) in rows {
        let r = sc.length_to(x, sc.length_unit)?;
        let v = sc.energy_to(v, unit)?;
        let _ = writeln!(s, "{}\t{}\t{}", energy(r), energy(v), if min { "min" } else { "" });
    }
    Ok(s)
}

/// `# index\tcomputed\treference\tratio`; extrapolated reference rows end
/// with `*`, missing entries are `-`.
pub fn comparison_tsv(cmp: &Comparison) -> String {
    let mut s = format!("# reference {}\n# index\tcomputed\treference\tratio\n", cmp.table);
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), energy);
    for r in &cmp.rows {
        let ratio = r.ratio.map_or_else(|| "-".to_string(), |q| format!("{q:.6}"));
        let _ = write!(s, "{}\t{}\t{}\t{}", r.index, opt(r.computed), opt(r.reference), ratio);
        s.push_str(if r.extrapolated { "\t*\n" } else { "\n" });
    }
    let matched = cmp.rows.len() - cmp.unmatched();
    let _ = writeln!(
        s,
        "# max deviation {} over {} matched rows, {} unmatched",
        sci(cmp.max_deviation(), 3),
        matched,
        cmp.unmatched()
    );
    s
}
