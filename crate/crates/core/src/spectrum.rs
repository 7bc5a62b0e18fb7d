//! From the eigenvalue function to a level list.
//!
//! `F` is increasing between its poles, so along an energy grid every sign
//! change is either a zero (− to +) or a pole (+ to −). Brackets are
//! classified by probing, zeros refined by a bisection/secant hybrid.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::cfm::{CfmError, CfmSolver, EigenvalueFunctionSample};
use crate::integrators::Method;
use crate::reference::{ReferenceError, ReferenceTable};
use crate::units::{ScalingContext, UnitError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("invalid scan plan: {0}")]
    InvalidPlan(String),
    #[error("bracket [{e_a}, {e_b}] could not be classified as zero or pole")]
    Undecided { e_a: f64, e_b: f64 },
    #[error("refinement of [{e_a}, {e_b}] hit the {iterations}-iteration cap")]
    RefineCap { e_a: f64, e_b: f64, iterations: usize },
    #[error(transparent)]
    Cfm(#[from] CfmError),
    #[error(transparent)]
    Reference(#[from] ReferenceError),
    #[error(transparent)]
    Unit(#[from] UnitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    /// Log-spaced in |E|; needs energies of one sign.
    LogAbs,
    Linear,
}

impl fmt::Display for Spacing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spacing::LogAbs => "log_abs",
            Spacing::Linear => "linear",
        })
    }
}

impl FromStr for Spacing {
    type Err = SpectrumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log_abs" => Ok(Spacing::LogAbs),
            "linear" => Ok(Spacing::Linear),
            other => Err(SpectrumError::InvalidPlan(format!("unknown spacing `{other}`"))),
        }
    }
}

/// Energy grid for the scan, in internal units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPlan {
    pub e_lo: f64,
    pub e_hi: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl ScanPlan {
    pub const DEFAULT_POINTS: usize = 2000;
    pub const MIN_POINTS: usize = 16;

    /// `[−(1 − 10⁻³)·depth, −10⁻¹²·depth]`, log-spaced.
    pub fn for_depth(depth: f64) -> Self {
        Self {
            e_lo: -(1.0 - 1e-3) * depth,
            e_hi: -depth * 1e-12,
            n_points: Self::DEFAULT_POINTS,
            spacing: Spacing::LogAbs,
        }
    }

    pub fn validate(&self) -> Result<(), SpectrumError> {
        let bad = |m: String| Err(SpectrumError::InvalidPlan(m));
        if !(self.e_lo.is_finite() && self.e_hi.is_finite() && self.e_lo < self.e_hi) {
            return bad(format!("need E_lo < E_hi, got [{}, {}]", self.e_lo, self.e_hi));
        }
        if self.n_points < Self::MIN_POINTS {
            return bad(format!("need at least {} points, got {}", Self::MIN_POINTS, self.n_points));
        }
        if self.spacing == Spacing::LogAbs && !(self.e_hi < 0.0) {
            return bad("log_abs spacing needs E_hi < 0".to_string());
        }
        Ok(())
    }

    /// Increasing energies; both endpoints are hit exactly.
    pub fn energies(&self) -> Vec<f64> {
        let n = self.n_points;
        let last = (n - 1) as f64;
        let mut out: Vec<f64> = match self.spacing {
            Spacing::Linear => (0..n)
                .map(|i| self.e_lo + (self.e_hi - self.e_lo) * (i as f64 / last))
                .collect(),
            Spacing::LogAbs => {
                let (a, b) = (self.e_lo.abs().ln(), self.e_hi.abs().ln());
                (0..n).map(|i| -(a + (b - a) * (i as f64 / last)).exp()).collect()
            }
        };
        out[0] = self.e_lo;
        out[n - 1] = self.e_hi;
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    Zero,
    Pole,
    Undecided,
}

/// An interval over which `F` changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub e_a: f64,
    pub e_b: f64,
    pub f_a: f64,
    pub f_b: f64,
    pub kind: BracketKind,
}

/// Scan-relative thresholds separating zeros from poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub zero: f64,
    pub pole: f64,
}

impl Thresholds {
    /// `factor·median|F|` over the saturated samples.
    pub fn from_samples(samples: &[EigenvalueFunctionSample], opts: &SpectrumOptions) -> Self {
        let mut mags: Vec<f64> = samples
            .iter()
            .filter(|s| s.saturated() && s.f.is_finite())
            .map(|s| s.f.abs())
            .collect();
        let median = if mags.is_empty() {
            1.0
        } else {
            mags.sort_by(f64::total_cmp);
            mags[mags.len() / 2]
        };
        Self { zero: opts.zero_factor * median, pole: opts.pole_factor * median }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Relative bracket width at which refinement stops.
    pub root_tol: f64,
    pub zero_factor: f64,
    pub pole_factor: f64,
    pub classify_probes: usize,
    pub refine_cap: usize,
    /// Largest tolerated ratio between adjacent level gaps.
    pub gap_ratio: f64,
    /// Largest tolerated ratio of a gap to the smooth gap model.
    pub gap_excess: f64,
    /// Density multiplier for local re-scans.
    pub rescan_density: usize,
    pub max_rescans: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            root_tol: 1e-15,
            zero_factor: 1e-6,
            pole_factor: 1e6,
            classify_probes: 60,
            refine_cap: 200,
            gap_ratio: 10.0,
            gap_excess: 1.5,
            rescan_density: 8,
            max_rescans: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub index: usize,
    pub energy: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Problems met while assembling a spectrum; any of them makes it partial.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumIssue {
    /// Scan samples whose ratios did not saturate.
    Unsaturated { count: usize, e_min: f64, e_max: f64 },
    Bracket(SpectrumError),
}

impl fmt::Display for SpectrumIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumIssue::Unsaturated { count, e_min, e_max } => {
                write!(f, "{count} scan samples unsaturated in [{e_min:e}, {e_max:e}]")
            }
            SpectrumIssue::Bracket(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub label: String,
    pub method: Method,
    pub vsca_order: usize,
    pub vsca_tol: f64,
    pub rk4_step: f64,
    pub sat_tol: f64,
    pub root_tol: f64,
    /// Internal units, increasing, indexed from 1.
    pub levels: Vec<Level>,
    /// Approximate pole positions found along the way.
    pub poles: Vec<f64>,
    pub samples: Vec<EigenvalueFunctionSample>,
    /// Samples from the missed-pair re-scans, in the order taken.
    pub rescan_samples: Vec<EigenvalueFunctionSample>,
    pub thresholds: Thresholds,
    pub issues: Vec<SpectrumIssue>,
    pub rescans: usize,
}

impl SpectrumResult {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn is_partial(&self) -> bool {
        !self.issues.is_empty()
    }

    /// Zeros and poles alternate strictly once merged.
    pub fn interleaved(&self) -> bool {
        interleaved(&self.energies(), &self.poles)
    }
}

/// True when merging `zeros` and `poles` never puts two of a kind adjacent.
pub fn interleaved(zeros: &[f64], poles: &[f64]) -> bool {
    let mut all: Vec<(f64, bool)> = zeros.iter().map(|&e| (e, true)).chain(poles.iter().map(|&e| (e, false))).collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    all.windows(2).all(|w| w[0].1 != w[1].1)
}

/// Samples `F` on the plan's grid, concurrently. Failures stay in-band as
/// unsaturated samples.
pub fn scan(solver: &CfmSolver, plan: &ScanPlan) -> Vec<EigenvalueFunctionSample> {
    scan_energies(solver, &plan.energies())
}

fn scan_energies(solver: &CfmSolver, energies: &[f64]) -> Vec<EigenvalueFunctionSample> {
    energies
        .par_iter()
        .map(|&e| {
            solver.sample(e).unwrap_or(EigenvalueFunctionSample {
                energy: e,
                f: f64::NAN,
                l_plus: f64::NAN,
                l_minus: f64::NAN,
                plus_saturated: false,
                minus_saturated: false,
            })
        })
        .collect()
}

/// Adjacent saturated samples with opposite signs of `F`.
pub fn sign_changes(samples: &[EigenvalueFunctionSample]) -> Vec<Bracket> {
    samples
        .windows(2)
        .filter(|w| w[0].saturated() && w[1].saturated() && w[0].f.is_finite() && w[1].f.is_finite())
        .filter(|w| (w[0].f < 0.0) != (w[1].f < 0.0))
        .map(|w| Bracket { e_a: w[0].energy, e_b: w[1].energy, f_a: w[0].f, f_b: w[1].f, kind: BracketKind::Undecided })
        .collect()
}

fn eval(solver: &CfmSolver, e: f64) -> Result<f64, SpectrumError> {
    Ok(solver.eigenvalue_function(e)?.f)
}

/// Bisects a sign change until `|F|` drops below the zero threshold or climbs
/// steadily past the pole threshold. Returns the narrowed bracket.
pub fn classify_bracket(
    solver: &CfmSolver,
    b: Bracket,
    th: &Thresholds,
    probes: usize,
) -> Result<Bracket, SpectrumError> {
    let mut b = b;
    b.kind = BracketKind::Undecided;
    let mut prev_min = b.f_a.abs().min(b.f_b.abs());
    let mut rising = 0;
    for _ in 0..probes {
        let m = b.e_a + 0.5 * (b.e_b - b.e_a);
        if m <= b.e_a || m >= b.e_b {
            break;
        }
        let fm = eval(solver, m)?;
        if (fm < 0.0) == (b.f_a < 0.0) {
            b.e_a = m;
            b.f_a = fm;
        } else {
            b.e_b = m;
            b.f_b = fm;
        }
        if fm.abs() <= th.zero {
            b.kind = BracketKind::Zero;
            return Ok(b);
        }
        let cur = b.f_a.abs().min(b.f_b.abs());
        rising = if cur > prev_min { rising + 1 } else { 0 };
        prev_min = cur;
        if cur >= th.pole && rising >= 3 {
            b.kind = BracketKind::Pole;
            return Ok(b);
        }
    }
    Ok(b)
}

/// Classification with one round of local grid refinement for brackets the
/// probes could not settle.
fn classify_with_refinement(
    solver: &CfmSolver,
    b: Bracket,
    th: &Thresholds,
    probes: usize,
) -> Result<Vec<Bracket>, SpectrumError> {
    let c = classify_bracket(solver, b, th, probes)?;
    if c.kind != BracketKind::Undecided {
        return Ok(vec![c]);
    }
    let n = 17;
    let energies: Vec<f64> = (0..n).map(|i| b.e_a + (b.e_b - b.e_a) * i as f64 / (n - 1) as f64).collect();
    let samples = scan_energies(solver, &energies);
    let mut out = Vec::new();
    for sub in sign_changes(&samples) {
        let c = classify_bracket(solver, sub, th, probes)?;
        if c.kind == BracketKind::Undecided {
            return Err(SpectrumError::Undecided { e_a: b.e_a, e_b: b.e_b });
        }
        out.push(c);
    }
    Ok(out)
}

/// Hybrid of Illinois false position and bisection on a zero bracket; stops
/// once `|E_b − E_a| < tol_rel·|E_mid|`. Returns the level (index 0) with
/// `|F|` at the midpoint.
pub fn refine(solver: &CfmSolver, b: Bracket, tol_rel: f64, cap: usize) -> Result<Level, SpectrumError> {
    let (mut a, mut fa, mut c) = (b.e_a, b.f_a, b.e_b);
    let (mut wa, mut wc) = (fa, b.f_b);
    let mut kept: i8 = 0;
    let mut widths = [f64::INFINITY; 2];
    let mut it = 0;
    loop {
        let w = c - a;
        let mid = a + 0.5 * w;
        if w <= tol_rel * mid.abs() || mid <= a || mid >= c {
            let residual = eval(solver, mid)?.abs();
            return Ok(Level { index: 0, energy: mid, residual, iterations: it });
        }
        if it >= cap {
            return Err(SpectrumError::RefineCap { e_a: a, e_b: c, iterations: it });
        }
        it += 1;
        // bisect whenever two steps failed to halve the bracket
        let slow = w > 0.5 * widths[0];
        widths = [widths[1], w];
        let x = if slow || wc == wa {
            mid
        } else {
            let s = c - wc * (c - a) / (wc - wa);
            if s > a && s < c {
                s
            } else {
                mid
            }
        };
        let fx = eval(solver, x)?;
        if fx == 0.0 {
            return Ok(Level { index: 0, energy: x, residual: 0.0, iterations: it });
        }
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
            wa = fx;
            if kept == 1 {
                wc *= 0.5;
            }
            kept = 1;
        } else {
            c = x;
            wc = fx;
            if kept == -1 {
                wa *= 0.5;
            }
            kept = -1;
        }
    }
}

struct Found {
    zeros: Vec<Level>,
    poles: Vec<f64>,
    issues: Vec<SpectrumIssue>,
}

fn process_samples(
    solver: &CfmSolver,
    samples: &[EigenvalueFunctionSample],
    th: &Thresholds,
    opts: &SpectrumOptions,
) -> Found {
    let classified: Vec<Result<Vec<Bracket>, SpectrumError>> = sign_changes(samples)
        .into_par_iter()
        .map(|b| classify_with_refinement(solver, b, th, opts.classify_probes))
        .collect();
    let mut issues = Vec::new();
    let mut zeros = Vec::new();
    let mut poles = Vec::new();
    for r in classified {
        match r {
            Ok(bs) => {
                for b in bs {
                    match b.kind {
                        BracketKind::Zero => zeros.push(b),
                        BracketKind::Pole => poles.push(0.5 * (b.e_a + b.e_b)),
                        BracketKind::Undecided => {
                            issues.push(SpectrumIssue::Bracket(SpectrumError::Undecided { e_a: b.e_a, e_b: b.e_b }))
                        }
                    }
                }
            }
            Err(e) => issues.push(SpectrumIssue::Bracket(e)),
        }
    }
    let refined: Vec<Result<Level, SpectrumError>> = zeros
        .into_par_iter()
        .map(|b| refine(solver, b, opts.root_tol, opts.refine_cap))
        .collect();
    let mut levels = Vec::new();
    for r in refined {
        match r {
            Ok(l) => levels.push(l),
            Err(e) => issues.push(SpectrumIssue::Bracket(e)),
        }
    }
    Found { zeros: levels, poles, issues }
}

fn unsaturated_issue(samples: &[EigenvalueFunctionSample]) -> Option<SpectrumIssue> {
    let bad: Vec<f64> = samples.iter().filter(|s| !s.saturated()).map(|s| s.energy).collect();
    if bad.is_empty() {
        return None;
    }
    let e_min = bad.iter().copied().fold(f64::INFINITY, f64::min);
    let e_max = bad.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Some(SpectrumIssue::Unsaturated { count: bad.len(), e_min, e_max })
}

fn merge_levels(levels: &mut Vec<Level>, new: Vec<Level>, tol: f64) {
    for l in new {
        let dup = levels
            .iter()
            .any(|k| (k.energy - l.energy).abs() <= 4.0 * tol * l.energy.abs().max(f64::MIN_POSITIVE));
        if !dup {
            levels.push(l);
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
}

/// Gap indices `i` where the gap `(E_i, E_{i+1})` is over `ratio` times a
/// neighbouring gap, or over `excess` times the geometric mean of its
/// neighbours (geometric extrapolation at the ends, never below the adjacent
/// gap). A single missed level
/// roughly doubles a gap.
fn suspicious_gaps(levels: &[Level], ratio: f64, excess: f64) -> Vec<usize> {
    let gaps: Vec<f64> = levels.windows(2).map(|w| w[1].energy - w[0].energy).collect();
    let n = gaps.len();
    let mut out = Vec::new();
    for i in 0..n {
        let g = gaps[i];
        let left = i.checked_sub(1).map(|j| gaps[j]);
        let right = gaps.get(i + 1).copied();
        let outsized = left.is_some_and(|l| g > ratio * l) || right.is_some_and(|r| g > ratio * r);
        let expected = match (left, right) {
            (Some(l), Some(r)) => Some((l * r).sqrt()),
            (None, Some(r)) if n > 2 => Some(r.max(r * r / gaps[2])),
            (Some(l), None) if n > 2 => Some(l.max(l * l / gaps[n - 3])),
            _ => None,
        };
        if outsized || expected.is_some_and(|e| g > excess * e) {
            out.push(i);
        }
    }
    out
}

const MAX_RESCAN_POINTS: usize = 4096;
/// Times one interval may be re-scanned, each at a higher density.
const MAX_VISITS: usize = 2;

/// Intervals bounded by zeros (or the plan ends) that deserve a denser scan:
/// outsized level gaps, and runs of two poles or two zeros in a row.
fn suspect_intervals(levels: &[Level], poles: &[f64], plan: &ScanPlan, opts: &SpectrumOptions) -> Vec<(f64, f64)> {
    let zeros: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    let mut out: Vec<(f64, f64)> = suspicious_gaps(levels, opts.gap_ratio, opts.gap_excess)
        .into_iter()
        .map(|i| (zeros[i], zeros[i + 1]))
        .collect();
    let mut all: Vec<(f64, bool)> = zeros.iter().map(|&e| (e, true)).chain(poles.iter().map(|&e| (e, false))).collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in all.windows(2) {
        if w[0].1 != w[1].1 {
            continue;
        }
        let iv = if w[0].1 {
            (w[0].0, w[1].0)
        } else {
            let lo = zeros.iter().copied().filter(|&z| z < w[0].0).fold(plan.e_lo, f64::max);
            let hi = zeros.iter().copied().filter(|&z| z > w[1].0).fold(plan.e_hi, f64::min);
            (lo, hi)
        };
        if !out.contains(&iv) {
            out.push(iv);
        }
    }
    out
}

/// Scan, classify, refine and assemble.
pub fn solve_spectrum(
    solver: &CfmSolver,
    plan: &ScanPlan,
    opts: &SpectrumOptions,
) -> Result<SpectrumResult, SpectrumError> {
    plan.validate()?;
    let samples = scan(solver, plan);
    let th = Thresholds::from_samples(&samples, opts);
    let found = process_samples(solver, &samples, &th, opts);
    let mut levels = Vec::new();
    merge_levels(&mut levels, found.zeros, opts.root_tol);
    let mut poles = found.poles;
    let mut issues: Vec<SpectrumIssue> = unsaturated_issue(&samples).into_iter().collect();
    issues.extend(found.issues);

    // missed-pair guard: re-scan between zeros wherever the gap model or the
    // zero/pole alternation says something was skipped
    let grid = plan.energies();
    let mut rescans = 0;
    let mut visits: Vec<(f64, f64)> = Vec::new();
    let mut rescan_samples = Vec::new();
    while rescans < opts.max_rescans {
        poles.sort_by(f64::total_cmp);
        let todo: Vec<(f64, f64)> = suspect_intervals(&levels, &poles, plan, opts)
            .into_iter()
            .filter(|iv| visits.iter().filter(|v| *v == iv).count() < MAX_VISITS)
            .collect();
        if todo.is_empty() {
            break;
        }
        rescans += 1;
        for (lo, hi) in todo {
            visits.push((lo, hi));
            let round = visits.iter().filter(|v| **v == (lo, hi)).count() as u32;
            let density = opts.rescan_density.pow(round);
            let inside = grid.iter().filter(|&&e| e > lo && e < hi).count();
            let n = (density * (inside + 1)).clamp(ScanPlan::MIN_POINTS, MAX_RESCAN_POINTS);
            let pad = (hi - lo) * 1e-9;
            let local = ScanPlan { e_lo: lo + pad, e_hi: hi - pad, n_points: n, spacing: plan.spacing };
            if local.validate().is_err() {
                continue;
            }
            let s = scan(solver, &local);
            let f = process_samples(solver, &s, &th, opts);
            merge_levels(&mut levels, f.zeros, opts.root_tol);
            // the denser scan is authoritative for poles inside the interval
            poles.retain(|&p| p <= lo || p >= hi);
            poles.extend(f.poles);
            issues.extend(unsaturated_issue(&s));
            issues.extend(f.issues);
            rescan_samples.extend(s);
        }
    }
    poles.sort_by(f64::total_cmp);
    poles.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(f64::MIN_POSITIVE));
    for (k, l) in levels.iter_mut().enumerate() {
        l.index = k + 1;
    }
    Ok(SpectrumResult {
        label: solver.potential.label.clone(),
        method: solver.integrator.method,
        vsca_order: solver.integrator.vsca_order,
        vsca_tol: solver.integrator.vsca_tol,
        rk4_step: solver.rk4_step(),
        sat_tol: solver.saturation.sat_tol,
        root_tol: opts.root_tol,
        levels,
        poles,
        samples,
        rescan_samples,
        thresholds: th,
        issues,
        rescans,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub index: u32,
    /// Signed energy in the table's unit.
    pub computed: Option<f64>,
    /// Signed (bound, negative) reference energy.
    pub reference: Option<f64>,
    /// `|reference| / |computed|`.
    pub ratio: Option<f64>,
    pub extrapolated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub table: String,
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    /// Largest `|ratio − 1|` over matched rows.
    pub fn max_deviation(&self) -> f64 {
        self.rows.iter().filter_map(|r| r.ratio).map(|q| (q - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn unmatched(&self) -> usize {
        self.rows.iter().filter(|r| r.ratio.is_none()).count()
    }
}

/// Aligns computed physical energies (in the table's unit) with a table by
/// index.
pub fn compare_energies(computed: &[f64], table: &ReferenceTable) -> Comparison {
    let n = computed.len().max(table.rows.iter().map(|r| r.index as usize).max().unwrap_or(0));
    let rows = (1..=n as u32)
        .map(|index| {
            let c = computed.get(index as usize - 1).copied();
            let r = table.row(index);
            let ratio = match (c, r) {
                (Some(c), Some(r)) if c != 0.0 => Some(r.magnitude / c.abs()),
                _ => None,
            };
            ComparisonRow {
                index,
                computed: c,
                reference: r.map(|r| -r.magnitude),
                ratio,
                extrapolated: r.is_some_and(|r| r.extrapolated),
            }
        })
        .collect();
    Comparison { table: table.name.clone(), rows }
}

/// [`compare_energies`] after converting the result to the table's unit.
pub fn compare(
    result: &SpectrumResult,
    scaling: &ScalingContext,
    table: &ReferenceTable,
) -> Result<Comparison, SpectrumError> {
    let computed = result
        .levels
        .iter()
        .map(|l| scaling.energy_to(l.energy, table.unit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(compare_energies(&computed, table))
}
