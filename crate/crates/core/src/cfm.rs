//! Saturated logarithmic derivatives and the eigenvalue function.
//!
//! From an anchor `r₀` the canonical pair (α, β) is carried outward and
//! inward. Once past a classical turning point `−α/β` settles to `l±`, the
//! logarithmic derivative at `r₀` of the solution decaying in that direction.
//! Their difference `F(E) = l₊ − l₋` vanishes at eigenvalues.

use std::collections::VecDeque;

use thiserror::Error;

use crate::integrators::{
    CanonicalState, Direction, Equation, IntegratorConfig, Method, Propagator, StepError, Stop,
};
use crate::potentials::{PotentialError, PotentialModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CfmError {
    #[error("energy {energy} is not below the dissociation threshold")]
    AboveThreshold { energy: f64 },
    #[error("{direction:?} ratio did not saturate by r = {reached} (E = {energy})")]
    NonSaturation {
        direction: Direction,
        energy: f64,
        reached: f64,
        trace: RatioTrace,
    },
    #[error("E = {energy} is not an eigenvalue: |F| = {mismatch:e} exceeds {threshold:e}")]
    NotEigenvalue { energy: f64, mismatch: f64, threshold: f64 },
    #[error("invalid solver setup: {0}")]
    InvalidSetup(String),
    #[error(transparent)]
    Step(#[from] StepError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// Relative change per checkpoint, as a fraction of `sat_tol`, below which a
/// ratio counts as saturated without a remainder estimate.
const QUIET: f64 = 1e-3;

/// When to declare `−α/β` converged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationControl {
    /// Relative tolerance on the remaining change of the ratio.
    pub sat_tol: f64,
    /// Steps between saturation checks.
    pub checkpoint_every: usize,
    /// Components above this are rescaled; ratios beyond it count as poles.
    pub pole_guard: f64,
    /// Outward cap is `max(cap_factor·r_t, r_t + cap_decay_lengths/κ)`.
    pub cap_factor: f64,
    pub cap_decay_lengths: f64,
    /// Absolute ceiling on the outward cap.
    pub cap_ceiling: f64,
    /// Ratio history retained for diagnostics.
    pub history: usize,
}

impl Default for SaturationControl {
    fn default() -> Self {
        Self {
            sat_tol: 1e-10,
            checkpoint_every: 4,
            pole_guard: 1e150,
            cap_factor: 4.0,
            cap_decay_lengths: 40.0,
            cap_ceiling: 1e7,
            history: 64,
        }
    }
}

impl SaturationControl {
    pub fn validate(&self) -> Result<(), CfmError> {
        let ok = self.sat_tol > 0.0
            && self.sat_tol < 1.0
            && self.checkpoint_every > 0
            && self.pole_guard > 1.0
            && self.cap_factor >= 1.0
            && self.cap_decay_lengths > 0.0
            && self.cap_ceiling > 0.0;
        if ok {
            Ok(())
        } else {
            Err(CfmError::InvalidSetup("saturation control out of range".into()))
        }
    }
}

/// Recent `(r, −α/β)` samples from one propagation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RatioTrace {
    pub samples: VecDeque<(f64, f64)>,
    pub saturated: bool,
    pub steps: usize,
}

impl RatioTrace {
    pub fn last_ratio(&self) -> Option<f64> {
        self.samples.back().map(|s| s.1)
    }
}

/// One evaluation of the eigenvalue function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueFunctionSample {
    pub energy: f64,
    pub f: f64,
    pub l_plus: f64,
    pub l_minus: f64,
    pub plus_saturated: bool,
    pub minus_saturated: bool,
}

impl EigenvalueFunctionSample {
    pub fn saturated(&self) -> bool {
        self.plus_saturated && self.minus_saturated
    }
}

/// Eigenfunction sampled on a caller grid, normalised by the trapezoid rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    pub r: Vec<f64>,
    pub psi: Vec<f64>,
    pub mismatch: f64,
}

impl Eigenfunction {
    /// Sign changes of ψ, ignoring samples below `1e-8·max|ψ|`.
    pub fn nodes(&self) -> usize {
        let floor = 1e-8 * self.psi.iter().fold(0.0f64, |m, p| m.max(p.abs()));
        let mut last = 0.0f64;
        let mut n = 0;
        for &p in &self.psi {
            if p.abs() > floor {
                if last != 0.0 && p.signum() != last.signum() {
                    n += 1;
                }
                last = p;
            }
        }
        n
    }
}

/// Everything fixed across energies: the potential in internal units, the
/// kinetic coefficient λ and the numerical controls.
#[derive(Debug, Clone, PartialEq)]
pub struct CfmSolver {
    pub potential: PotentialModel,
    pub lambda: f64,
    pub integrator: IntegratorConfig,
    pub saturation: SaturationControl,
    pub anchor: f64,
    rk4_step: f64,
    well: (f64, f64),
}

/// Anchor used for a potential when none is given: the well minimum, or a
/// point `1/√2` inside the domain when the minimum sits on a regular boundary.
pub fn default_anchor(potential: &PotentialModel) -> Result<f64, PotentialError> {
    let (re, _) = potential.well_minimum()?;
    if potential.regular_boundary() && re <= potential.inner_limit {
        Ok(potential.inner_limit + std::f64::consts::FRAC_1_SQRT_2)
    } else {
        Ok(re)
    }
}

impl CfmSolver {
    pub fn new(
        potential: PotentialModel,
        lambda: f64,
        integrator: IntegratorConfig,
        saturation: SaturationControl,
        anchor: Option<f64>,
    ) -> Result<Self, CfmError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(CfmError::InvalidSetup(format!("kinetic coefficient {lambda} must be positive")));
        }
        integrator.validate()?;
        saturation.validate()?;
        let well = potential.well_minimum()?;
        let anchor = match anchor {
            Some(a) => a,
            None => default_anchor(&potential)?,
        };
        if !(anchor > potential.inner_limit) {
            return Err(CfmError::InvalidSetup(format!(
                "anchor {anchor} must lie above the inner limit {}",
                potential.inner_limit
            )));
        }
        let rk4_step = integrator
            .rk4_step
            .unwrap_or_else(|| (well.0.max(anchor) - potential.inner_limit) / 2000.0);
        Ok(Self { potential, lambda, integrator, saturation, anchor, rk4_step, well })
    }

    /// `(r_e, V(r_e))` in internal units.
    pub fn well(&self) -> (f64, f64) {
        self.well
    }

    /// The fixed step RK4 uses.
    pub fn rk4_step(&self) -> f64 {
        self.rk4_step
    }

    fn propagator(&self, energy: f64) -> Propagator<'_> {
        let eq = Equation { potential: &self.potential, lambda: self.lambda, energy };
        Propagator::new(eq, &self.integrator, self.rk4_step)
    }

    fn check_energy(&self, energy: f64) -> Result<(), CfmError> {
        if !energy.is_finite() || (self.potential.dissociates() && energy >= 0.0) {
            return Err(CfmError::AboveThreshold { energy });
        }
        Ok(())
    }

    /// Outward cap: generous multiple of the turning point, bounded above.
    pub fn outer_cap(&self, energy: f64) -> Result<f64, CfmError> {
        let rt = self
            .potential
            .outer_turning_point(energy)?
            .ok_or(CfmError::AboveThreshold { energy })?
            .max(self.anchor);
        let kappa = (self.lambda * energy.abs().max(f64::MIN_POSITIVE)).sqrt();
        let s = &self.saturation;
        Ok((s.cap_factor * rt).max(rt + s.cap_decay_lengths / kappa).min(s.cap_ceiling.max(rt)))
    }

    /// Logarithmic derivative at the anchor of the outward-decaying solution.
    pub fn l_plus(&self, energy: f64) -> Result<(f64, RatioTrace), CfmError> {
        self.check_energy(energy)?;
        let rt = self
            .potential
            .outer_turning_point(energy)?
            .ok_or(CfmError::AboveThreshold { energy })?;
        let cap = self.outer_cap(energy)?;
        self.saturate(energy, Direction::Outward, rt, cap)
    }

    /// Logarithmic derivative at the anchor of the inward-decaying solution,
    /// or of the solution vanishing on a regular boundary.
    pub fn l_minus(&self, energy: f64) -> Result<(f64, RatioTrace), CfmError> {
        self.check_energy(energy)?;
        let rt = self.potential.inner_turning_point(energy)?;
        self.saturate(energy, Direction::Inward, rt, self.potential.inner_limit)
    }

    fn saturate(
        &self,
        energy: f64,
        direction: Direction,
        turning: f64,
        limit: f64,
    ) -> Result<(f64, RatioTrace), CfmError> {
        let ctl = self.saturation;
        let sign = direction.sign();
        let mut trace = RatioTrace::default();
        let mut diffs: Option<f64> = None;
        let mut found: Option<f64> = None;
        let mut predicate = |s: &mut CanonicalState| {
            guard(s, ctl.pole_guard);
            if (s.r - turning) * sign <= 0.0 {
                return false;
            }
            let ratio = s.ratio();
            let prev = trace.last_ratio();
            if trace.samples.len() == ctl.history {
                trace.samples.pop_front();
            }
            trace.samples.push_back((s.r, ratio));
            let Some(prev) = prev else { return false };
            if ratio.abs() > ctl.pole_guard && prev.abs() > ctl.pole_guard {
                found = Some(ratio);
                return true;
            }
            let d = (ratio - prev).abs();
            let converged = if d <= ctl.sat_tol * QUIET * ratio.abs() {
                true
            } else if d <= ctl.sat_tol * ratio.abs() {
                // geometric remainder estimate from the last two differences
                match diffs {
                    Some(d_prev) if d < d_prev => {
                        let q = d / d_prev;
                        d * q / (1.0 - q) <= ctl.sat_tol * ratio.abs()
                    }
                    _ => false,
                }
            } else {
                false
            };
            diffs = Some(d);
            if converged {
                found = Some(ratio);
            }
            converged
        };
        let start = CanonicalState::init_at(self.anchor);
        let mut out = self
            .propagator(energy)
            .propagate(start, direction, limit, ctl.checkpoint_every, &mut predicate)?;
        if out.stop != Stop::Predicate && out.steps % ctl.checkpoint_every != 0 {
            // the end state gets a checkpoint of its own
            let mut end = out.state;
            if predicate(&mut end) {
                out.stop = Stop::Predicate;
            }
        }
        trace.steps = out.steps;
        match (out.stop, found) {
            (Stop::Predicate, Some(l)) => {
                trace.saturated = true;
                Ok((l, trace))
            }
            (Stop::Limit, _) if direction == Direction::Inward && self.potential.regular_boundary() => {
                trace.saturated = true;
                let l = out.state.ratio();
                trace.samples.push_back((out.state.r, l));
                Ok((l, trace))
            }
            _ => Err(CfmError::NonSaturation { direction, energy, reached: out.state.r, trace }),
        }
    }

    /// `F(E) = l₊(E) − l₋(E)`.
    pub fn eigenvalue_function(&self, energy: f64) -> Result<EigenvalueFunctionSample, CfmError> {
        let (lp, _) = self.l_plus(energy)?;
        let (lm, _) = self.l_minus(energy)?;
        Ok(EigenvalueFunctionSample {
            energy,
            f: lp - lm,
            l_plus: lp,
            l_minus: lm,
            plus_saturated: true,
            minus_saturated: true,
        })
    }

    /// Like [`Self::eigenvalue_function`] but records failures in-band: an
    /// unsaturated side contributes its last ratio and clears its flag.
    pub fn sample(&self, energy: f64) -> Result<EigenvalueFunctionSample, CfmError> {
        let side = |r: Result<(f64, RatioTrace), CfmError>| -> Result<(f64, bool), CfmError> {
            match r {
                Ok((l, _)) => Ok((l, true)),
                Err(CfmError::NonSaturation { trace, .. }) => {
                    Ok((trace.last_ratio().unwrap_or(f64::NAN), false))
                }
                Err(CfmError::Step(StepError::StepUnderflow { .. })) => Ok((f64::NAN, false)),
                Err(e) => Err(e),
            }
        };
        let (lp, ps) = side(self.l_plus(energy))?;
        let (lm, ms) = side(self.l_minus(energy))?;
        Ok(EigenvalueFunctionSample {
            energy,
            f: lp - lm,
            l_plus: lp,
            l_minus: lm,
            plus_saturated: ps,
            minus_saturated: ms,
        })
    }

    /// Eigenfunction at a (refined) eigenvalue, sampled on `grid` and
    /// normalised on it.
    ///
    /// Between the turning points ψ is built from the canonical functions.
    /// Beyond them it is integrated towards the well from past the saturation
    /// radius, starting from ψ = 0, and matched at the turning point.
    /// Refuses energies where `|F| > threshold`.
    pub fn eigenfunction(&self, energy: f64, grid: &[f64], threshold: f64) -> Result<Eigenfunction, CfmError> {
        let (l_plus, up) = self.l_plus(energy)?;
        let (l_minus, down) = self.l_minus(energy)?;
        let mismatch = (l_plus - l_minus).abs();
        if !(mismatch <= threshold) {
            return Err(CfmError::NotEigenvalue { energy, mismatch, threshold });
        }
        let pot = &self.potential;
        let lo = pot.inner_turning_point(energy)?.max(pot.inner_limit).min(self.anchor);
        let hi = pot.outer_turning_point(energy)?.unwrap_or(f64::INFINITY).max(self.anchor);
        let mut order: Vec<usize> = (0..grid.len()).collect();
        order.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]));
        let mut psi = vec![0.0; grid.len()];
        let prop = self.propagator(energy);
        let scaled = |(v, ls): (f64, f64)| v * ls.exp();

        // outer side
        let main: Vec<usize> = order.iter().copied().filter(|&i| grid[i] >= self.anchor && grid[i] <= hi).collect();
        let tail: Vec<usize> = order.iter().copied().filter(|&i| grid[i] > hi).collect();
        let mut targets: Vec<f64> = main.iter().map(|&i| grid[i]).collect();
        if !tail.is_empty() {
            targets.push(hi);
        }
        let vals = self.sample_path(&prop, self.anchor, Direction::Outward, &targets, |s| s.alpha + l_plus * s.beta)?;
        for (&i, &v) in main.iter().zip(&vals) {
            psi[i] = scaled(v);
        }
        if let Some(&edge) = vals.get(main.len()) {
            let r_sat = up.samples.back().map_or(hi, |s| s.0);
            let far = grid[*tail.last().unwrap()];
            let start = r_sat.max(far) + (r_sat - hi).max(0.0);
            let mut targets: Vec<f64> = tail.iter().rev().map(|&i| grid[i]).collect();
            targets.push(hi);
            let t = self.sample_path(&prop, start, Direction::Inward, &targets, |s| s.beta)?;
            let base = t[tail.len()];
            for (&i, &v) in tail.iter().rev().zip(&t) {
                psi[i] = scaled(edge) * v.0 / base.0 * (v.1 - base.1).exp();
            }
        }

        // inner side
        let main: Vec<usize> = order.iter().rev().copied().filter(|&i| grid[i] < self.anchor && grid[i] >= lo).collect();
        let start = if pot.regular_boundary() {
            pot.inner_limit
        } else {
            let r_sat = down.samples.back().map_or(lo, |s| s.0);
            let near = grid[order[0]];
            (r_sat.min(near) - (lo - r_sat).max(0.0)).max(pot.inner_limit)
        };
        let tail: Vec<usize> = order.iter().copied().filter(|&i| grid[i] < lo && grid[i] >= start).collect();
        let mut targets: Vec<f64> = main.iter().map(|&i| grid[i]).collect();
        if !tail.is_empty() {
            targets.push(lo);
        }
        let vals = self.sample_path(&prop, self.anchor, Direction::Inward, &targets, |s| s.alpha + l_minus * s.beta)?;
        for (&i, &v) in main.iter().zip(&vals) {
            psi[i] = scaled(v);
        }
        if let Some(&edge) = vals.get(main.len()) {
            let mut targets: Vec<f64> = tail.iter().map(|&i| grid[i]).collect();
            targets.push(lo);
            let t = self.sample_path(&prop, start, Direction::Outward, &targets, |s| s.beta)?;
            let base = t[tail.len()];
            for (&i, &v) in tail.iter().zip(&t) {
                psi[i] = scaled(edge) * v.0 / base.0 * (v.1 - base.1).exp();
            }
        }

        let mut norm = 0.0;
        for w in order.windows(2) {
            let (a, b) = (w[0], w[1]);
            norm += 0.5 * (grid[b] - grid[a]) * (psi[a] * psi[a] + psi[b] * psi[b]);
        }
        if norm > 0.0 {
            let k = norm.sqrt().recip();
            psi.iter_mut().for_each(|p| *p *= k);
        }
        Ok(Eigenfunction { r: grid.to_vec(), psi, mismatch })
    }

    /// `value` at each target in turn, starting from the canonical state at
    /// `from`, as `(value, log_scale)`.
    fn sample_path(
        &self,
        prop: &Propagator<'_>,
        from: f64,
        direction: Direction,
        targets: &[f64],
        value: impl Fn(&CanonicalState) -> f64,
    ) -> Result<Vec<(f64, f64)>, CfmError> {
        let limit = self.saturation.pole_guard;
        let mut state = CanonicalState::init_at(from);
        let mut out = Vec::with_capacity(targets.len());
        for &t in targets {
            let p = prop.propagate(state, direction, t, 1, |s| {
                guard(s, limit);
                false
            })?;
            if p.stop == Stop::Budget {
                return Err(StepError::InvalidConfig("step budget exhausted sampling the eigenfunction".into()).into());
            }
            state = p.state;
            out.push((value(&state), state.log_scale));
        }
        Ok(out)
    }

    /// Same solver with a different integration method.
    pub fn with_method(&self, method: Method) -> Self {
        let mut s = self.clone();
        s.integrator.method = method;
        s
    }
}

/// Rescales by a power of two once any component exceeds `limit`, so ratios
/// are unchanged bit for bit.
fn guard(s: &mut CanonicalState, limit: f64) {
    let m = s.alpha.abs().max(s.alpha_p.abs()).max(s.beta.abs()).max(s.beta_p.abs());
    if m > limit {
        let e = m.log2().floor();
        s.renormalize(2f64.powi(e as i32));
    }
}
