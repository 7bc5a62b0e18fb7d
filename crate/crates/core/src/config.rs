//! Problem configuration: a line-oriented `section.key = value [unit]` format.
//!
//! ```text
//! # Na2 0g- with the default VSCA engine
//! potential.kind = mp0g
//! potential.c3 = 6.390 hartree_a0_3
//! potential.delta = 1.56512e-4 rydberg
//! mass.value = 11.49488464 amu
//! ```
//!
//! Physical quantities must carry a unit. Blank lines and `#` comments are
//! ignored; unknown keys and repeated keys are errors.
//!
//! | key | default |
//! |-----|---------|
//! | `potential.kind` | required: `mp0g`, `mp1u`, `alj`, `oscillator` |
//! | `potential.label` | per kind |
//! | `potential.c3`, `potential.delta` | required for `mp0g`/`mp1u` |
//! | `potential.epsilon`, `potential.r_min` | required for `alj` |
//! | `potential.alpha`, `potential.beta` | 6, 12 |
//! | `potential.r_lo` | 1 bohr (`mp*`), 0.3 r_min (`alj`), the boundary (`oscillator`) |
//! | `potential.center`, `potential.boundary` | 0, 0 |
//! | `mass.value` | ²³Na₂ reduced mass for `mp*`; required for physical `alj` |
//! | `mass.b` | required for reduced `alj`; 1 for `oscillator` |
//! | `scaling.energy` | 1 wavenumber (`mp*`), ε (`alj`) |
//! | `scaling.length` | 100 bohr (`mp*`), r_min (`alj`) |
//! | `solver.method` | vsca |
//! | `solver.order`, `solver.tol` | 12, 1e-8 |
//! | `solver.rk4_step` | (r_e − r_lo)/2000, internal units |
//! | `solver.min_step`, `solver.max_step`, `solver.max_steps` | 1e-14, 1e6, 100000 |
//! | `solver.sat_tol`, `solver.checkpoint` | 1e-10, 4 |
//! | `solver.anchor` | the well minimum |
//! | `solver.root_tol` | 1e-15 |
//! | `scan.emin`, `scan.emax` | −(1 − 10⁻³)·depth, −10⁻¹²·depth; required for `oscillator` |
//! | `scan.points` | 2000 |
//! | `scan.spacing` | log_abs, linear for `oscillator` |
//! | `output.unit` | the scaling energy unit |
//! | `output.path` | stdout |

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::cfm::{CfmError, CfmSolver, SaturationControl};
use crate::integrators::{IntegratorConfig, Method};
use crate::potentials::{PotentialError, PotentialModel};
use crate::spectrum::{ScanPlan, Spacing, SpectrumOptions};
use crate::units::{self, constants, Dimension, Quantity, ScalingContext, Unit, UnitError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` given twice")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {message}")]
    Value { line: usize, key: String, message: String },
    #[error("missing required key `{0}`")]
    Missing(String),
    #[error("`{key}`: expected a {expected} quantity, got unit `{unit}`")]
    UnitMismatch { key: String, expected: String, unit: Unit },
    #[error("`{0}` does not apply to this potential kind")]
    Inapplicable(String),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Cfm(#[from] CfmError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    Mp0g,
    Mp1u,
    Alj,
    Oscillator,
}

impl PotentialKind {
    fn name(self) -> &'static str {
        match self {
            PotentialKind::Mp0g => "mp0g",
            PotentialKind::Mp1u => "mp1u",
            PotentialKind::Alj => "alj",
            PotentialKind::Oscillator => "oscillator",
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PotentialKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mp0g" => Ok(PotentialKind::Mp0g),
            "mp1u" => Ok(PotentialKind::Mp1u),
            "alj" => Ok(PotentialKind::Alj),
            "oscillator" | "oscillator_test" => Ok(PotentialKind::Oscillator),
            other => Err(format!("unknown potential kind `{other}` (mp0g, mp1u, alj, oscillator)")),
        }
    }
}

/// Parsed configuration. `None` means "use the documented default".
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemConfig {
    pub kind: Option<PotentialKind>,
    pub label: Option<String>,
    pub c3: Option<Quantity>,
    pub delta: Option<Quantity>,
    pub epsilon: Option<Quantity>,
    pub r_min: Option<Quantity>,
    pub alpha: Option<i32>,
    pub beta: Option<i32>,
    pub r_lo: Option<Quantity>,
    pub center: Option<f64>,
    pub boundary: Option<f64>,
    pub mass: Option<Quantity>,
    pub b: Option<f64>,
    pub energy_scale: Option<Quantity>,
    pub length_scale: Option<Quantity>,
    pub method: Option<Method>,
    pub order: Option<usize>,
    pub tol: Option<f64>,
    pub rk4_step: Option<f64>,
    pub min_step: Option<f64>,
    pub max_step: Option<f64>,
    pub max_steps: Option<usize>,
    pub sat_tol: Option<f64>,
    pub checkpoint: Option<usize>,
    pub anchor: Option<Quantity>,
    pub root_tol: Option<f64>,
    pub emin: Option<Quantity>,
    pub emax: Option<Quantity>,
    pub points: Option<usize>,
    pub spacing: Option<Spacing>,
    pub output_unit: Option<Unit>,
    pub output_path: Option<String>,
}

/// Every accepted key, in serialization order.
pub const KEYS: &[&str] = &[
    "potential.kind",
    "potential.label",
    "potential.c3",
    "potential.delta",
    "potential.epsilon",
    "potential.r_min",
    "potential.alpha",
    "potential.beta",
    "potential.r_lo",
    "potential.center",
    "potential.boundary",
    "mass.value",
    "mass.b",
    "scaling.energy",
    "scaling.length",
    "solver.method",
    "solver.order",
    "solver.tol",
    "solver.rk4_step",
    "solver.min_step",
    "solver.max_step",
    "solver.max_steps",
    "solver.sat_tol",
    "solver.checkpoint",
    "solver.anchor",
    "solver.root_tol",
    "scan.emin",
    "scan.emax",
    "scan.points",
    "scan.spacing",
    "output.unit",
    "output.path",
];

fn number<T: FromStr>(s: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    s.parse::<T>().map_err(|e| format!("`{s}`: {e}"))
}

/// `value unit`, or a bare value for dimensionless quantities.
fn quantity(s: &str) -> Result<Quantity, String> {
    let mut it = s.split_whitespace();
    let value: f64 = number(it.next().ok_or("empty value")?)?;
    if !value.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    let unit = match it.next() {
        Some(u) => u.parse::<Unit>().map_err(|e| e.to_string())?,
        None => Unit::Dimensionless,
    };
    if let Some(extra) = it.next() {
        return Err(format!("unexpected trailing `{extra}`"));
    }
    Ok(Quantity::new(value, unit))
}

fn scalar(s: &str) -> Result<f64, String> {
    let q = quantity(s)?;
    if q.unit != Unit::Dimensionless {
        return Err(format!("expected a plain number, got unit `{}`", q.unit));
    }
    Ok(q.value)
}

fn fill<T>(slot: &mut Option<T>, v: T) -> bool {
    let fresh = slot.is_none();
    *slot = Some(v);
    fresh
}

fn fmt_quantity(q: &Quantity) -> String {
    if q.unit == Unit::Dimensionless {
        format!("{}", q.value)
    } else {
        format!("{} {}", q.value, q.unit)
    }
}

impl ProblemConfig {
    pub fn empty() -> Self {
        Self {
            kind: None,
            label: None,
            c3: None,
            delta: None,
            epsilon: None,
            r_min: None,
            alpha: None,
            beta: None,
            r_lo: None,
            center: None,
            boundary: None,
            mass: None,
            b: None,
            energy_scale: None,
            length_scale: None,
            method: None,
            order: None,
            tol: None,
            rk4_step: None,
            min_step: None,
            max_step: None,
            max_steps: None,
            sat_tol: None,
            checkpoint: None,
            anchor: None,
            root_tol: None,
            emin: None,
            emax: None,
            points: None,
            spacing: None,
            output_unit: None,
            output_path: None,
        }
    }

    /// Parses the whole text. Keys may appear at most once.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::empty();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line,
                message: format!("expected `section.key = value`, got `{content}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !cfg.set_at(key, value, line)? {
                return Err(ConfigError::Duplicate { line, key: key.to_string() });
            }
        }
        Ok(cfg)
    }

    /// Sets one key, overriding any earlier value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        self.set_at(key, value, 0).map(|_| ())
    }

    /// Returns `false` if the key was already set.
    fn set_at(&mut self, key: &str, value: &str, line: usize) -> Result<bool, ConfigError> {
        let bad = |message: String| ConfigError::Value { line, key: key.to_string(), message };
        let q = || quantity(value).map_err(bad);
        let x = || scalar(value).map_err(bad);
        let n = || number::<usize>(value).map_err(bad);
        let i = || number::<i32>(value).map_err(bad);
        if value.is_empty() {
            return Err(bad("empty value".into()));
        }
        Ok(match key {
            "potential.kind" => fill(&mut self.kind, value.parse().map_err(bad)?),
            "potential.label" => fill(&mut self.label, value.to_string()),
            "potential.c3" => fill(&mut self.c3, q()?),
            "potential.delta" => fill(&mut self.delta, q()?),
            "potential.epsilon" => fill(&mut self.epsilon, q()?),
            "potential.r_min" => fill(&mut self.r_min, q()?),
            "potential.alpha" => fill(&mut self.alpha, i()?),
            "potential.beta" => fill(&mut self.beta, i()?),
            "potential.r_lo" => fill(&mut self.r_lo, q()?),
            "potential.center" => fill(&mut self.center, x()?),
            "potential.boundary" => fill(&mut self.boundary, x()?),
            "mass.value" => fill(&mut self.mass, q()?),
            "mass.b" => fill(&mut self.b, x()?),
            "scaling.energy" => fill(&mut self.energy_scale, q()?),
            "scaling.length" => fill(&mut self.length_scale, q()?),
            "solver.method" => fill(&mut self.method, value.parse().map_err(|e: crate::integrators::StepError| bad(e.to_string()))?),
            "solver.order" => fill(&mut self.order, n()?),
            "solver.tol" => fill(&mut self.tol, x()?),
            "solver.rk4_step" => fill(&mut self.rk4_step, x()?),
            "solver.min_step" => fill(&mut self.min_step, x()?),
            "solver.max_step" => fill(&mut self.max_step, x()?),
            "solver.max_steps" => fill(&mut self.max_steps, n()?),
            "solver.sat_tol" => fill(&mut self.sat_tol, x()?),
            "solver.checkpoint" => fill(&mut self.checkpoint, n()?),
            "solver.anchor" => fill(&mut self.anchor, q()?),
            "solver.root_tol" => fill(&mut self.root_tol, x()?),
            "scan.emin" => fill(&mut self.emin, q()?),
            "scan.emax" => fill(&mut self.emax, q()?),
            "scan.points" => fill(&mut self.points, n()?),
            "scan.spacing" => fill(&mut self.spacing, value.parse().map_err(|e: crate::spectrum::SpectrumError| bad(e.to_string()))?),
            "output.unit" => fill(&mut self.output_unit, value.parse().map_err(|e: UnitError| bad(e.to_string()))?),
            "output.path" => fill(&mut self.output_path, value.to_string()),
            _ => return Err(ConfigError::UnknownKey { line, key: key.to_string() }),
        })
    }

    /// Canonical text form; `parse(to_text(c)) == c`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |key: &str, v: Option<String>| {
            if let Some(v) = v {
                let _ = writeln!(out, "{key} = {v}");
            }
        };
        let s = |v: &Option<f64>| v.map(|x| x.to_string());
        let q = |v: &Option<Quantity>| v.as_ref().map(fmt_quantity);
        put("potential.kind", self.kind.map(|k| k.to_string()));
        put("potential.label", self.label.clone());
        put("potential.c3", q(&self.c3));
        put("potential.delta", q(&self.delta));
        put("potential.epsilon", q(&self.epsilon));
        put("potential.r_min", q(&self.r_min));
        put("potential.alpha", self.alpha.map(|v| v.to_string()));
        put("potential.beta", self.beta.map(|v| v.to_string()));
        put("potential.r_lo", q(&self.r_lo));
        put("potential.center", s(&self.center));
        put("potential.boundary", s(&self.boundary));
        put("mass.value", q(&self.mass));
        put("mass.b", s(&self.b));
        put("scaling.energy", q(&self.energy_scale));
        put("scaling.length", q(&self.length_scale));
        put("solver.method", self.method.map(|m| m.to_string()));
        put("solver.order", self.order.map(|v| v.to_string()));
        put("solver.tol", s(&self.tol));
        put("solver.rk4_step", s(&self.rk4_step));
        put("solver.min_step", s(&self.min_step));
        put("solver.max_step", s(&self.max_step));
        put("solver.max_steps", self.max_steps.map(|v| v.to_string()));
        put("solver.sat_tol", s(&self.sat_tol));
        put("solver.checkpoint", self.checkpoint.map(|v| v.to_string()));
        put("solver.anchor", q(&self.anchor));
        put("solver.root_tol", s(&self.root_tol));
        put("scan.emin", q(&self.emin));
        put("scan.emax", q(&self.emax));
        put("scan.points", self.points.map(|v| v.to_string()));
        put("scan.spacing", self.spacing.map(|v| v.to_string()));
        put("output.unit", self.output_unit.map(|u| u.to_string()));
        put("output.path", self.output_path.clone());
        out
    }

    /// Resolves defaults and builds the solver.
    pub fn build(&self) -> Result<Problem, ConfigError> {
        let kind = self.kind.ok_or_else(|| ConfigError::Missing("potential.kind".into()))?;
        let (model, scaling) = match kind {
            PotentialKind::Mp0g | PotentialKind::Mp1u => self.build_mp(kind)?,
            PotentialKind::Alj => self.build_alj()?,
            PotentialKind::Oscillator => self.build_oscillator()?,
        };
        let model = match &self.label {
            Some(l) => model.with_label(l.clone()),
            None => model,
        };

        let defaults = IntegratorConfig::default();
        let integrator = IntegratorConfig {
            method: self.method.unwrap_or(defaults.method),
            rk4_step: self.rk4_step,
            vsca_order: self.order.unwrap_or(defaults.vsca_order),
            vsca_tol: self.tol.unwrap_or(defaults.vsca_tol),
            min_step: self.min_step.unwrap_or(defaults.min_step),
            max_step: self.max_step.unwrap_or(defaults.max_step),
            max_steps: self.max_steps.unwrap_or(defaults.max_steps),
        };
        let mut saturation = SaturationControl::default();
        if let Some(t) = self.sat_tol {
            saturation.sat_tol = t;
        }
        if let Some(c) = self.checkpoint {
            saturation.checkpoint_every = c;
        }
        let length_dim = if kind == PotentialKind::Oscillator { None } else { Some(Dimension::Length) };
        let anchor = match self.anchor {
            Some(a) => {
                expect("solver.anchor", a, length_dim)?;
                Some(scaling.length_from(a)?)
            }
            None => None,
        };
        let solver = CfmSolver::new(model, scaling.kinetic_coefficient, integrator, saturation, anchor)?;

        let energy_dim = if kind == PotentialKind::Oscillator { None } else { Some(Dimension::Energy) };
        let depth = -solver.well().1;
        let mut plan = if kind == PotentialKind::Oscillator {
            let lo = self.emin.ok_or_else(|| ConfigError::Missing("scan.emin".into()))?;
            let hi = self.emax.ok_or_else(|| ConfigError::Missing("scan.emax".into()))?;
            expect("scan.emin", lo, None)?;
            expect("scan.emax", hi, None)?;
            ScanPlan { e_lo: lo.value, e_hi: hi.value, n_points: ScanPlan::DEFAULT_POINTS, spacing: Spacing::Linear }
        } else {
            ScanPlan::for_depth(depth)
        };
        if kind != PotentialKind::Oscillator {
            if let Some(e) = self.emin {
                expect("scan.emin", e, energy_dim)?;
                plan.e_lo = scaling.energy_from(e)?;
            }
            if let Some(e) = self.emax {
                expect("scan.emax", e, energy_dim)?;
                plan.e_hi = scaling.energy_from(e)?;
            }
        }
        if let Some(p) = self.points {
            plan.n_points = p;
        }
        if let Some(s) = self.spacing {
            plan.spacing = s;
        }

        let mut options = SpectrumOptions::default();
        if let Some(t) = self.root_tol {
            options.root_tol = t;
        }
        let output_unit = self.output_unit.unwrap_or(scaling.energy_unit);
        // fail early on an unusable output unit
        scaling.energy_to(0.0, output_unit)?;
        Ok(Problem { kind, solver, scaling, plan, options, output_unit, output_path: self.output_path.clone() })
    }

    fn reject(&self, keys: &[(&str, bool)]) -> Result<(), ConfigError> {
        match keys.iter().find(|(_, set)| *set) {
            Some((k, _)) => Err(ConfigError::Inapplicable(k.to_string())),
            None => Ok(()),
        }
    }

    fn build_mp(&self, kind: PotentialKind) -> Result<(PotentialModel, ScalingContext), ConfigError> {
        self.reject(&[
            ("potential.epsilon", self.epsilon.is_some()),
            ("potential.r_min", self.r_min.is_some()),
            ("potential.alpha", self.alpha.is_some()),
            ("potential.beta", self.beta.is_some()),
            ("potential.center", self.center.is_some()),
            ("potential.boundary", self.boundary.is_some()),
            ("mass.b", self.b.is_some()),
        ])?;
        let c3 = self.c3.ok_or_else(|| ConfigError::Missing("potential.c3".into()))?;
        let delta = self.delta.ok_or_else(|| ConfigError::Missing("potential.delta".into()))?;
        expect("potential.c3", c3, Some(Dimension::DispersionC3))?;
        expect("potential.delta", delta, Some(Dimension::Energy))?;
        let r_lo = self.r_lo.unwrap_or(Quantity::new(1.0, Unit::Bohr));
        expect("potential.r_lo", r_lo, Some(Dimension::Length))?;
        let (c3, delta, r_lo) = (c3.to(Unit::HartreeBohr3)?, delta.to(Unit::Hartree)?, r_lo.to(Unit::Bohr)?);
        let model = if kind == PotentialKind::Mp0g {
            PotentialModel::mp0g(c3, delta, r_lo)?
        } else {
            PotentialModel::mp1u(c3, delta, r_lo)?
        };
        let mass = self
            .mass
            .unwrap_or(Quantity::new(constants::NA2_REDUCED_MASS_AMU, Unit::AtomicMassUnit));
        let scaling = self.physical_scaling(
            mass,
            Quantity::new(1.0, Unit::Wavenumber),
            Quantity::new(100.0, Unit::Bohr),
        )?;
        Ok((self.rescale(&model, &scaling)?, scaling))
    }

    fn build_alj(&self) -> Result<(PotentialModel, ScalingContext), ConfigError> {
        self.reject(&[
            ("potential.c3", self.c3.is_some()),
            ("potential.delta", self.delta.is_some()),
            ("potential.center", self.center.is_some()),
            ("potential.boundary", self.boundary.is_some()),
        ])?;
        let eps = self.epsilon.ok_or_else(|| ConfigError::Missing("potential.epsilon".into()))?;
        let r_min = self.r_min.ok_or_else(|| ConfigError::Missing("potential.r_min".into()))?;
        let (alpha, beta) = (self.alpha.unwrap_or(6), self.beta.unwrap_or(12));
        let reduced = eps.unit == Unit::EpsilonWell;
        if reduced {
            expect("potential.r_min", r_min, Some(Dimension::Length))?;
            if r_min.unit != Unit::RMinScaled {
                return Err(unit_mismatch("potential.r_min", "r_min", r_min.unit));
            }
            if self.mass.is_some() {
                return Err(ConfigError::Inapplicable("mass.value".into()));
            }
            let b = self.b.ok_or_else(|| ConfigError::Missing("mass.b".into()))?;
            let model = PotentialModel::alj(eps.value, r_min.value, alpha, beta)?;
            let model = match self.r_lo {
                Some(r) => {
                    if r.unit != Unit::RMinScaled {
                        return Err(unit_mismatch("potential.r_lo", "r_min", r.unit));
                    }
                    model.with_inner_limit(r.value)
                }
                None => model,
            };
            let e0 = self.energy_scale.unwrap_or(Quantity::new(eps.value, Unit::EpsilonWell));
            let l0 = self.length_scale.unwrap_or(Quantity::new(r_min.value, Unit::RMinScaled));
            if e0.unit != Unit::EpsilonWell {
                return Err(unit_mismatch("scaling.energy", "epsilon", e0.unit));
            }
            if l0.unit != Unit::RMinScaled {
                return Err(unit_mismatch("scaling.length", "r_min", l0.unit));
            }
            let scaling = units::reduced_scaling(b, e0.value, l0.value)?;
            Ok((model.rescaled(e0.value, l0.value), scaling))
        } else {
            if self.b.is_some() {
                return Err(ConfigError::Inapplicable("mass.b".into()));
            }
            expect("potential.epsilon", eps, Some(Dimension::Energy))?;
            expect("potential.r_min", r_min, Some(Dimension::Length))?;
            let mass = self.mass.ok_or_else(|| ConfigError::Missing("mass.value".into()))?;
            let model = PotentialModel::alj(eps.to(Unit::Hartree)?, r_min.to(Unit::Bohr)?, alpha, beta)?;
            let model = match self.r_lo {
                Some(r) => {
                    expect("potential.r_lo", r, Some(Dimension::Length))?;
                    model.with_inner_limit(r.to(Unit::Bohr)?)
                }
                None => model,
            };
            let scaling = self.physical_scaling(mass, eps, r_min)?;
            Ok((self.rescale(&model, &scaling)?, scaling))
        }
    }

    fn build_oscillator(&self) -> Result<(PotentialModel, ScalingContext), ConfigError> {
        self.reject(&[
            ("potential.c3", self.c3.is_some()),
            ("potential.delta", self.delta.is_some()),
            ("potential.epsilon", self.epsilon.is_some()),
            ("potential.r_min", self.r_min.is_some()),
            ("potential.alpha", self.alpha.is_some()),
            ("potential.beta", self.beta.is_some()),
            ("mass.value", self.mass.is_some()),
            ("scaling.energy", self.energy_scale.is_some()),
            ("scaling.length", self.length_scale.is_some()),
        ])?;
        let boundary = self.boundary.unwrap_or(0.0);
        let mut model = PotentialModel::oscillator(self.center.unwrap_or(0.0), boundary);
        if let Some(r) = self.r_lo {
            expect("potential.r_lo", r, None)?;
            model = model.with_inner_limit(r.value);
        }
        let lambda = self.b.unwrap_or(1.0);
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(UnitError::NonPositive { name: "mass.b", value: lambda }.into());
        }
        let scaling = ScalingContext {
            energy_scale: 1.0,
            energy_unit: Unit::Dimensionless,
            length_scale: 1.0,
            length_unit: Unit::Dimensionless,
            kinetic_coefficient: lambda,
        };
        Ok((model, scaling))
    }

    fn physical_scaling(&self, mass: Quantity, e0: Quantity, l0: Quantity) -> Result<ScalingContext, ConfigError> {
        expect("mass.value", mass, Some(Dimension::Mass))?;
        let e0 = self.energy_scale.unwrap_or(e0);
        let l0 = self.length_scale.unwrap_or(l0);
        expect("scaling.energy", e0, Some(Dimension::Energy))?;
        expect("scaling.length", l0, Some(Dimension::Length))?;
        Ok(units::build_scaling_from(mass, e0, l0)?)
    }

    /// Model in atomic units → internal units.
    fn rescale(&self, model: &PotentialModel, scaling: &ScalingContext) -> Result<PotentialModel, ConfigError> {
        let e0 = units::convert(scaling.energy_scale, scaling.energy_unit, Unit::Hartree)?;
        let l0 = units::convert(scaling.length_scale, scaling.length_unit, Unit::Bohr)?;
        Ok(model.rescaled(e0, l0))
    }
}

fn unit_mismatch(key: &str, expected: &str, unit: Unit) -> ConfigError {
    ConfigError::UnitMismatch { key: key.to_string(), expected: expected.to_string(), unit }
}

/// `None` expects a dimensionless number.
fn expect(key: &str, q: Quantity, dim: Option<Dimension>) -> Result<(), ConfigError> {
    if q.unit.dimension() == dim {
        return Ok(());
    }
    let expected = match dim {
        Some(Dimension::Energy) => "energy",
        Some(Dimension::Length) => "length",
        Some(Dimension::Mass) => "mass",
        Some(Dimension::DispersionC3) => "hartree_a0_3",
        None => "dimensionless",
    };
    Err(unit_mismatch(key, expected, q.unit))
}

impl FromStr for ProblemConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// A configuration resolved into something that can be solved.
#[derive(Debug, Clone)]
pub struct Problem {
    pub kind: PotentialKind,
    pub solver: CfmSolver,
    pub scaling: ScalingContext,
    pub plan: ScanPlan,
    pub options: SpectrumOptions,
    pub output_unit: Unit,
    pub output_path: Option<String>,
}
