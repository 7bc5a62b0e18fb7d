//! Propagation of the canonical pair through `ψ″ = λ (V(r) − E) ψ`.
//!
//! Two engines: classical fixed-step RK4 and a variable-step Taylor-series
//! stepper whose step is chosen so the last retained terms of the local
//! solution series stay below a relative tolerance.

use thiserror::Error;

use crate::potentials::{PotentialError, PotentialModel};
use crate::series::{horner, horner_derivative, tail_magnitude};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StepError {
    #[error("state became non-finite at r = {r}")]
    NonFinite { r: f64 },
    #[error("required step {h:e} at r = {r} is below the minimum step {min_step:e}")]
    StepUnderflow { r: f64, h: f64, min_step: f64 },
    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// The quadruple (α, α′, β, β′) at radius `r`.
///
/// `log_scale` accumulates ratio-preserving renormalisations: the true
/// functions are the stored ones times `exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalState {
    pub r: f64,
    pub alpha: f64,
    pub alpha_p: f64,
    pub beta: f64,
    pub beta_p: f64,
    pub log_scale: f64,
}

impl CanonicalState {
    /// Canonical initial conditions α = 1, α′ = 0, β = 0, β′ = 1.
    pub fn init_at(r0: f64) -> Self {
        Self { r: r0, alpha: 1.0, alpha_p: 0.0, beta: 0.0, beta_p: 1.0, log_scale: 0.0 }
    }

    /// Wronskian of the stored pair, without the renormalisation factor.
    pub fn wronskian(&self) -> f64 {
        self.alpha * self.beta_p - self.alpha_p * self.beta
    }

    /// Wronskian of the true (unrenormalised) pair.
    pub fn true_wronskian(&self) -> f64 {
        let w = self.wronskian();
        w.signum() * (w.abs().ln() + 2.0 * self.log_scale).exp()
    }

    /// `−α/β`, the quantity whose limits define l±.
    pub fn ratio(&self) -> f64 {
        -self.alpha / self.beta
    }

    /// Divides all four components by `factor`.
    pub fn renormalize(&mut self, factor: f64) {
        let inv = 1.0 / factor;
        self.alpha *= inv;
        self.alpha_p *= inv;
        self.beta *= inv;
        self.beta_p *= inv;
        self.log_scale += factor.ln();
    }

    fn is_finite(&self) -> bool {
        self.alpha.is_finite()
            && self.alpha_p.is_finite()
            && self.beta.is_finite()
            && self.beta_p.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Vsca,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Rk4 => "rk4",
            Method::Vsca => "vsca",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = StepError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rk4" => Ok(Method::Rk4),
            "vsca" => Ok(Method::Vsca),
            other => Err(StepError::InvalidConfig(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub method: Method,
    /// Fixed RK4 step; `None` picks `(r_e − r_lo) / 2000` for the potential.
    pub rk4_step: Option<f64>,
    pub vsca_order: usize,
    pub vsca_tol: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Step budget for a single propagation.
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            method: Method::Vsca,
            rk4_step: None,
            vsca_order: crate::series::DEFAULT_ORDER,
            vsca_tol: 1e-8,
            min_step: 1e-14,
            max_step: 1e6,
            max_steps: 100_000,
        }
    }
}

impl IntegratorConfig {
    pub fn rk4(step: Option<f64>) -> Self {
        Self { method: Method::Rk4, rk4_step: step, ..Self::default() }
    }

    pub fn vsca(order: usize, tol: f64) -> Self {
        Self { method: Method::Vsca, vsca_order: order, vsca_tol: tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), StepError> {
        let bad = |m: &str| Err(StepError::InvalidConfig(m.to_string()));
        if let Some(h) = self.rk4_step {
            if !(h > 0.0) {
                return bad("rk4 step must be positive");
            }
        }
        if !(4..=30).contains(&self.vsca_order) {
            return bad("series order must lie in 4..=30");
        }
        if !(self.vsca_tol > 0.0 && self.vsca_tol < 1.0) {
            return bad("series tolerance must lie in (0, 1)");
        }
        if !(self.min_step > 0.0 && self.min_step <= self.max_step) {
            return bad("need 0 < min_step <= max_step");
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive");
        }
        Ok(())
    }
}

/// The radial equation at one energy.
#[derive(Debug, Clone, Copy)]
pub struct Equation<'a> {
    pub potential: &'a PotentialModel,
    pub lambda: f64,
    pub energy: f64,
}

impl Equation<'_> {
    fn curvature(&self, r: f64) -> Result<f64, StepError> {
        Ok(self.lambda * (self.potential.value(r)? - self.energy))
    }
}

/// One classical RK4 step of signed length `h` for both basis functions,
/// sharing the three potential evaluations.
pub fn rk4_step(s: &CanonicalState, eq: &Equation<'_>, h: f64) -> Result<CanonicalState, StepError> {
    let f0 = eq.curvature(s.r)?;
    let fm = eq.curvature(s.r + 0.5 * h)?;
    let f1 = eq.curvature(s.r + h)?;
    let advance = |y: f64, yp: f64| -> (f64, f64) {
        let k1y = yp;
        let k1p = f0 * y;
        let k2y = yp + 0.5 * h * k1p;
        let k2p = fm * (y + 0.5 * h * k1y);
        let k3y = yp + 0.5 * h * k2p;
        let k3p = fm * (y + 0.5 * h * k2y);
        let k4y = yp + h * k3p;
        let k4p = f1 * (y + h * k3y);
        (
            y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
            yp + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
        )
    };
    let (alpha, alpha_p) = advance(s.alpha, s.alpha_p);
    let (beta, beta_p) = advance(s.beta, s.beta_p);
    let next = CanonicalState { r: s.r + h, alpha, alpha_p, beta, beta_p, log_scale: s.log_scale };
    if next.is_finite() {
        Ok(next)
    } else {
        Err(StepError::NonFinite { r: s.r })
    }
}

/// Taylor coefficients of the solution seeded with `(y, y′)`, given the
/// coefficients `f` of `λ (V − E)`: `c_{n+2} = Σ f_j c_{n−j} / ((n+1)(n+2))`.
pub fn solution_coefficients(f: &[f64], y: f64, yp: f64, out: &mut Vec<f64>) {
    let order = f.len() - 1;
    out.clear();
    out.resize(order + 1, 0.0);
    out[0] = y;
    if order >= 1 {
        out[1] = yp;
    }
    for n in 0..order.saturating_sub(1) {
        let acc: f64 = (0..=n).map(|j| f[j] * out[n - j]).sum();
        out[n + 2] = acc / ((n + 1) * (n + 2)) as f64;
    }
}

/// Largest |h| with every retained tail term below `tol` relative to
/// `max(|c₀|, |c₁| h)`.
fn admissible_step(c: &[f64], tol: f64) -> f64 {
    let k = c.len() - 1;
    let (c0, c1) = (c[0].abs(), c[1].abs());
    let mut h = f64::INFINITY;
    for m in [k - 1, k] {
        let cm = c[m].abs();
        if cm == 0.0 {
            continue;
        }
        let from_value = if c0 > 0.0 { covariant_root(tol * c0 / cm, m as i32) } else { 0.0 };
        let from_slope = if c1 > 0.0 { covariant_root(tol * c1 / cm, m as i32 - 1) } else { 0.0 };
        h = h.min(from_value.max(from_slope));
    }
    h
}

/// `x^{1/n}` for positive finite `x`, computed so that scaling `x` by `2^{n j}`
/// scales the result by exactly `2^j`.
fn covariant_root(x: f64, n: i32) -> f64 {
    if !(x > 0.0 && x.is_finite()) || n < 1 {
        return if x > 0.0 { f64::INFINITY } else { 0.0 };
    }
    let (m, e) = split_exponent(x);
    let (q, r) = (e.div_euclid(n), e.rem_euclid(n));
    // m·2^r lies in [1, 2^n); both factors of the result are exact powers
    scale_by_pow2((m * scale_by_pow2(1.0, r)).powf(1.0 / n as f64), q)
}

/// `x = m·2^e` with `m ∈ [1, 2)`.
fn split_exponent(x: f64) -> (f64, i32) {
    let (x, shift) = if x < f64::MIN_POSITIVE { (x * 2f64.powi(64), -64) } else { (x, 0) };
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i32 - 1023;
    let m = f64::from_bits((bits & ((1u64 << 52) - 1)) | (1023u64 << 52));
    (m, e + shift)
}

/// `x·2^k` without overflow in the intermediate power.
fn scale_by_pow2(mut x: f64, mut k: i32) -> f64 {
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
    }
    x * 2f64.powi(k)
}

fn tail_ok(c: &[f64], h: f64, tol: f64) -> bool {
    let scale = c[0].abs().max(c[1].abs() * h.abs());
    tail_magnitude(c, h) <= tol * scale
}

/// Truncates the mantissa to its leading bits so step sequences are exactly
/// covariant under power-of-two rescaling of the length unit.
fn quantize_step(h: f64) -> f64 {
    const KEEP: u32 = 4;
    let mask = !((1u64 << (52 - KEEP)) - 1);
    f64::from_bits(h.to_bits() & mask)
}

/// One Taylor step in direction `sign` (±1), never passing `limit`.
/// Returns the new state and the signed step used.
pub fn vsca_step(
    s: &CanonicalState,
    eq: &Equation<'_>,
    cfg: &IntegratorConfig,
    sign: f64,
    limit: Option<f64>,
) -> Result<(CanonicalState, f64), StepError> {
    let mut scratch = Scratch::default();
    vsca_step_with(s, eq, cfg, sign, limit, &mut scratch)
}

#[derive(Default)]
struct Scratch {
    ca: Vec<f64>,
    cb: Vec<f64>,
    da: Vec<f64>,
    db: Vec<f64>,
}

fn derivative_coefficients(c: &[f64], out: &mut Vec<f64>) {
    out.clear();
    out.extend(c.iter().enumerate().skip(1).map(|(n, v)| n as f64 * v));
}

fn vsca_step_with(
    s: &CanonicalState,
    eq: &Equation<'_>,
    cfg: &IntegratorConfig,
    sign: f64,
    limit: Option<f64>,
    scratch: &mut Scratch,
) -> Result<(CanonicalState, f64), StepError> {
    let order = cfg.vsca_order;
    let mut f = eq.potential.series(s.r, order)?;
    {
        let c = f.coeffs_mut();
        c[0] -= eq.energy;
        for v in c.iter_mut() {
            *v *= eq.lambda;
        }
    }
    solution_coefficients(f.coeffs(), s.alpha, s.alpha_p, &mut scratch.ca);
    solution_coefficients(f.coeffs(), s.beta, s.beta_p, &mut scratch.cb);
    derivative_coefficients(&scratch.ca, &mut scratch.da);
    derivative_coefficients(&scratch.cb, &mut scratch.db);
    let series = [&scratch.ca, &scratch.cb, &scratch.da, &scratch.db];
    let (ca, cb) = (&scratch.ca, &scratch.cb);

    let tol = cfg.vsca_tol;
    let mut h = series.iter().map(|c| admissible_step(c, tol)).fold(cfg.max_step, f64::min);
    let mut rejections = 0;
    while !series.iter().all(|c| tail_ok(c, h, tol)) {
        rejections += 1;
        if rejections > 4 {
            return Err(StepError::StepUnderflow { r: s.r, h, min_step: cfg.min_step });
        }
        h *= 0.5;
    }
    h = quantize_step(h);
    let mut r_next = s.r + sign * h;
    if let Some(lim) = limit {
        let remaining = (lim - s.r) * sign;
        if remaining <= h {
            h = remaining;
            r_next = lim;
        }
    }
    if h < cfg.min_step && limit.map_or(true, |lim| r_next != lim) {
        return Err(StepError::StepUnderflow { r: s.r, h, min_step: cfg.min_step });
    }
    let hs = sign * h;
    let next = CanonicalState {
        r: r_next,
        alpha: horner(ca, hs),
        alpha_p: horner_derivative(ca, hs),
        beta: horner(cb, hs),
        beta_p: horner_derivative(cb, hs),
        log_scale: s.log_scale,
    };
    if next.is_finite() {
        Ok((next, hs))
    } else {
        Err(StepError::NonFinite { r: s.r })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Outward,
    Inward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Outward => 1.0,
            Direction::Inward => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stop {
    /// The checkpoint predicate fired.
    Predicate,
    /// The limit radius was reached.
    Limit,
    /// The step budget ran out first.
    Budget,
}

#[derive(Debug, Clone, Copy)]
pub struct Propagation {
    pub state: CanonicalState,
    pub stop: Stop,
    pub steps: usize,
}

/// Fixed-step engine plus configuration for one propagation.
#[derive(Debug, Clone, Copy)]
pub struct Propagator<'a> {
    pub equation: Equation<'a>,
    pub config: &'a IntegratorConfig,
    /// Resolved fixed step for RK4.
    pub rk4_step: f64,
}

impl<'a> Propagator<'a> {
    pub fn new(equation: Equation<'a>, config: &'a IntegratorConfig, rk4_step: f64) -> Self {
        Self { equation, config, rk4_step }
    }

    /// Steps from `state` towards `limit` until the predicate fires, the
    /// limit is reached or the step budget is spent. The predicate sees the
    /// state before the first step and then every `every` steps, and may
    /// renormalise it.
    pub fn propagate<P>(
        &self,
        mut state: CanonicalState,
        direction: Direction,
        limit: f64,
        every: usize,
        mut predicate: P,
    ) -> Result<Propagation, StepError>
    where
        P: FnMut(&mut CanonicalState) -> bool,
    {
        let sign = direction.sign();
        let every = every.max(1);
        let mut scratch = Scratch::default();
        let mut steps = 0;
        loop {
            if steps % every == 0 && predicate(&mut state) {
                return Ok(Propagation { state, stop: Stop::Predicate, steps });
            }
            if (limit - state.r) * sign <= 0.0 {
                return Ok(Propagation { state, stop: Stop::Limit, steps });
            }
            if steps >= self.config.max_steps {
                return Ok(Propagation { state, stop: Stop::Budget, steps });
            }
            state = match self.config.method {
                Method::Rk4 => {
                    let remaining = (limit - state.r) * sign;
                    if remaining <= self.rk4_step {
                        let mut next = rk4_step(&state, &self.equation, sign * remaining)?;
                        next.r = limit;
                        next
                    } else {
                        rk4_step(&state, &self.equation, sign * self.rk4_step)?
                    }
                }
                Method::Vsca => {
                    vsca_step_with(&state, &self.equation, self.config, sign, Some(limit), &mut scratch)?.0
                }
            };
            steps += 1;
        }
    }
}
