//! Interaction potentials with `V(∞) = 0`, evaluated pointwise or as local
//! Taylor series.
//!
//! Parameters are unit-agnostic: physical values (Hartree, a₀) give physical
//! energies, and [`PotentialModel::rescaled`] maps them onto internal units
//! without changing any functional form.

use std::f64::consts::PI;

use thiserror::Error;

use crate::series::{SeriesError, TaylorSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("arccos argument {0} outside [-1, 1]")]
    ArccosDomain(f64),
    #[error("no sign change of V' on [{lo}, {hi}]")]
    NoMinimum { lo: f64, hi: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// 0g⁻ curve: `C = 3 C₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mp0gParams {
    pub c3: f64,
    pub delta: f64,
}

/// 1u curve: `C = 9 C₃ / (√7 − 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mp1uParams {
    pub c3: f64,
    pub delta: f64,
}

/// Asymmetric Lennard-Jones `C₁ r^−β − C₂ r^−α`, parameterised by the well
/// depth and the position of the minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AljParams {
    pub epsilon: f64,
    pub r_min: f64,
    pub alpha: i32,
    pub beta: i32,
}

impl AljParams {
    pub fn c1(&self) -> f64 {
        self.epsilon * self.alpha as f64 * self.r_min.powi(self.beta) / (self.beta - self.alpha) as f64
    }

    pub fn c2(&self) -> f64 {
        self.epsilon * self.beta as f64 * self.r_min.powi(self.alpha) / (self.beta - self.alpha) as f64
    }
}

/// `V = (r − center)²` on `r ≥ boundary`, with a regular (ψ = 0) boundary.
///
/// Test potential with an analytic spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    pub center: f64,
    pub boundary: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    Mp0g(Mp0gParams),
    Mp1u(Mp1uParams),
    Alj(AljParams),
    Oscillator(OscillatorParams),
}

/// A potential together with its inner integration limit and a label.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialModel {
    pub potential: Potential,
    /// Smallest radius worth integrating to.
    pub inner_limit: f64,
    pub label: String,
}

/// `x = c / r³` from a prefactor `c`.
fn inverse_cube(c: f64, r: f64) -> f64 {
    c / (r * r * r)
}

fn mp0g_prefactor(p: &Mp0gParams) -> f64 {
    // X = C / (9 r³ Δ) with C = 3 C₃
    3.0 * p.c3 / (9.0 * p.delta)
}

fn mp1u_prefactor(p: &Mp1uParams) -> f64 {
    let c = 9.0 * p.c3 / (7f64.sqrt() - 2.0);
    c / (9.0 * p.delta)
}

/// `V/Δ = ½[(1 − 3X) + √(1 − 6X + 81X²)] − 1`, rearranged so the large-r
/// cancellation happens analytically.
fn mp0g_reduced(x: f64) -> f64 {
    let u = x * (81.0 * x - 6.0);
    0.5 * (-3.0 * x + u / (1.0 + (1.0 + u).sqrt()))
}

/// `1 − z` with `z = (1 + 270X³) / (1 + 63X²)^{3/2}`, free of cancellation as
/// X → 0.
fn mp1u_arccos_complement(x: f64) -> f64 {
    let g = 63.0 * x * x;
    let pow_m1 = (1.5 * g.ln_1p()).exp_m1(); // (1 + g)^{3/2} − 1
    (pow_m1 - 270.0 * x * x * x) / (1.0 + pow_m1)
}

fn mp1u_reduced(x: f64) -> Result<f64, PotentialError> {
    let q = (1.0 + 63.0 * x * x) / 9.0;
    let mut w = mp1u_arccos_complement(x);
    if w < 0.0 {
        if w > -1e-14 {
            w = 0.0;
        } else {
            return Err(PotentialError::ArccosDomain(1.0 - w));
        }
    }
    if w > 2.0 {
        if w < 2.0 + 1e-14 {
            w = 2.0;
        } else {
            return Err(PotentialError::ArccosDomain(1.0 - w));
        }
    }
    let theta = 2.0 * (0.5 * w).sqrt().asin();
    let a = -2.0 - 6.0 * x;
    Ok(-2.0 * q.sqrt() * ((theta - 2.0 * PI) / 3.0).cos() - a / 3.0 - 1.0)
}

fn check_radius(r: f64) -> Result<(), PotentialError> {
    if r > 0.0 {
        Ok(())
    } else {
        Err(PotentialError::NonPositiveRadius(r))
    }
}

/// Movre–Pichler 0g⁻ curve in units of Δ, shifted to vanish at infinity.
pub fn mp0g_value(r: f64, p: &Mp0gParams) -> Result<f64, PotentialError> {
    check_radius(r)?;
    Ok(p.delta * mp0g_reduced(inverse_cube(mp0g_prefactor(p), r)))
}

pub fn mp1u_value(r: f64, p: &Mp1uParams) -> Result<f64, PotentialError> {
    check_radius(r)?;
    Ok(p.delta * mp1u_reduced(inverse_cube(mp1u_prefactor(p), r))?)
}

pub fn alj_value(r: f64, p: &AljParams) -> Result<f64, PotentialError> {
    check_radius(r)?;
    let inv = 1.0 / r;
    Ok(p.c1() * inv.powi(p.beta) - p.c2() * inv.powi(p.alpha))
}

/// Taylor series of `c / r³` about `r0`.
fn inverse_cube_series(c: f64, r0: f64, order: usize) -> Result<TaylorSeries, SeriesError> {
    Ok(TaylorSeries::identity(r0, order).powi(-3)?.scale(c))
}

fn mp0g_series(p: &Mp0gParams, r0: f64, order: usize) -> Result<TaylorSeries, PotentialError> {
    let x = inverse_cube_series(mp0g_prefactor(p), r0, order)?;
    let x2 = x.try_mul(&x)?;
    let radicand = x2.scale(81.0).try_sub(&x.scale(6.0))?.add_scalar(1.0);
    let root = radicand.sqrt()?;
    let mut v = x.scale(-3.0).try_add(&root)?.add_scalar(1.0).scale(0.5).add_scalar(-1.0).scale(p.delta);
    v.coeffs_mut()[0] = mp0g_value(r0, p)?;
    Ok(v)
}

fn mp1u_series(p: &Mp1uParams, r0: f64, order: usize) -> Result<TaylorSeries, PotentialError> {
    let x = inverse_cube_series(mp1u_prefactor(p), r0, order)?;
    let x2 = x.try_mul(&x)?;
    let x3 = x2.try_mul(&x)?;
    let g = x2.scale(63.0).add_scalar(1.0);
    let root_g = g.sqrt()?;
    let z = x3.scale(270.0).add_scalar(1.0).try_div(&g.try_mul(&root_g)?)?;
    let w0 = mp1u_arccos_complement(x.value());
    let theta = z.acos_with_complement(w0)?;
    let root_q = g.scale(1.0 / 9.0).sqrt()?;
    let angle = theta.add_scalar(-2.0 * PI).scale(1.0 / 3.0);
    let a = x.scale(-6.0).add_scalar(-2.0);
    let mut v = root_q
        .try_mul(&angle.cos())?
        .scale(-2.0)
        .try_sub(&a.scale(1.0 / 3.0))?
        .add_scalar(-1.0)
        .scale(p.delta);
    v.coeffs_mut()[0] = mp1u_value(r0, p)?;
    Ok(v)
}

fn alj_series(p: &AljParams, r0: f64, order: usize) -> Result<TaylorSeries, PotentialError> {
    let inv = TaylorSeries::identity(r0, order).recip()?;
    let rep = inv.powi(p.beta)?.scale(p.c1());
    let att = inv.powi(p.alpha)?.scale(p.c2());
    Ok(rep.try_sub(&att)?)
}

fn oscillator_series(p: &OscillatorParams, r0: f64, order: usize) -> TaylorSeries {
    let mut s = TaylorSeries::constant(r0, (r0 - p.center).powi(2), order);
    if order >= 1 {
        s.coeffs_mut()[1] = 2.0 * (r0 - p.center);
    }
    if order >= 2 {
        s.coeffs_mut()[2] = 1.0;
    }
    s
}

impl PotentialModel {
    pub fn mp0g(c3: f64, delta: f64, inner_limit: f64) -> Result<Self, PotentialError> {
        if !(c3 > 0.0 && delta > 0.0) {
            return Err(PotentialError::InvalidParameter("C3 and Delta must be positive".into()));
        }
        Ok(Self {
            potential: Potential::Mp0g(Mp0gParams { c3, delta }),
            inner_limit,
            label: "Na2 0g-".into(),
        })
    }

    pub fn mp1u(c3: f64, delta: f64, inner_limit: f64) -> Result<Self, PotentialError> {
        if !(c3 > 0.0 && delta > 0.0) {
            return Err(PotentialError::InvalidParameter("C3 and Delta must be positive".into()));
        }
        Ok(Self {
            potential: Potential::Mp1u(Mp1uParams { c3, delta }),
            inner_limit,
            label: "Na2 1u".into(),
        })
    }

    /// Inner limit defaults to `0.3 r_min`.
    pub fn alj(epsilon: f64, r_min: f64, alpha: i32, beta: i32) -> Result<Self, PotentialError> {
        if !(epsilon > 0.0 && r_min > 0.0) {
            return Err(PotentialError::InvalidParameter("epsilon and r_min must be positive".into()));
        }
        if !(beta > alpha && alpha > 0) {
            return Err(PotentialError::InvalidParameter(format!(
                "exponents must satisfy beta > alpha > 0, got alpha={alpha} beta={beta}"
            )));
        }
        Ok(Self {
            potential: Potential::Alj(AljParams { epsilon, r_min, alpha, beta }),
            inner_limit: 0.3 * r_min,
            label: format!("ALJ({alpha},{beta})"),
        })
    }

    pub fn oscillator(center: f64, boundary: f64) -> Self {
        Self {
            potential: Potential::Oscillator(OscillatorParams { center, boundary }),
            inner_limit: boundary,
            label: "oscillator".into(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_inner_limit(mut self, r_lo: f64) -> Self {
        self.inner_limit = r_lo;
        self
    }

    /// Same potential with energies divided by `e0` and lengths by `l0`.
    pub fn rescaled(&self, e0: f64, l0: f64) -> Self {
        let potential = match self.potential {
            Potential::Mp0g(p) => Potential::Mp0g(Mp0gParams {
                c3: p.c3 / (e0 * l0 * l0 * l0),
                delta: p.delta / e0,
            }),
            Potential::Mp1u(p) => Potential::Mp1u(Mp1uParams {
                c3: p.c3 / (e0 * l0 * l0 * l0),
                delta: p.delta / e0,
            }),
            Potential::Alj(p) => Potential::Alj(AljParams {
                epsilon: p.epsilon / e0,
                r_min: p.r_min / l0,
                ..p
            }),
            // the oscillator is only ever used in internal units
            Potential::Oscillator(p) => Potential::Oscillator(p),
        };
        Self {
            potential,
            inner_limit: self.inner_limit / l0,
            label: self.label.clone(),
        }
    }

    pub fn value(&self, r: f64) -> Result<f64, PotentialError> {
        match &self.potential {
            Potential::Mp0g(p) => mp0g_value(r, p),
            Potential::Mp1u(p) => mp1u_value(r, p),
            Potential::Alj(p) => alj_value(r, p),
            Potential::Oscillator(p) => Ok((r - p.center).powi(2)),
        }
    }

    /// Taylor coefficients of V about `r0` to `order`.
    pub fn series(&self, r0: f64, order: usize) -> Result<TaylorSeries, PotentialError> {
        if !matches!(self.potential, Potential::Oscillator(_)) {
            check_radius(r0)?;
        }
        match &self.potential {
            Potential::Mp0g(p) => mp0g_series(p, r0, order),
            Potential::Mp1u(p) => mp1u_series(p, r0, order),
            Potential::Alj(p) => alj_series(p, r0, order),
            Potential::Oscillator(p) => Ok(oscillator_series(p, r0, order)),
        }
    }

    /// `V′(r)` from the first series coefficient.
    pub fn derivative(&self, r: f64) -> Result<f64, PotentialError> {
        match &self.potential {
            Potential::Alj(p) => {
                let inv = 1.0 / r;
                Ok(-(p.beta as f64) * p.c1() * inv.powi(p.beta + 1)
                    + p.alpha as f64 * p.c2() * inv.powi(p.alpha + 1))
            }
            Potential::Oscillator(p) => Ok(2.0 * (r - p.center)),
            _ => Ok(self.series(r, 2)?.coeffs()[1]),
        }
    }

    /// Whether `V → 0` at large r (as opposed to a confining test potential).
    pub fn dissociates(&self) -> bool {
        !matches!(self.potential, Potential::Oscillator(_))
    }

    /// Whether the inner limit is a regular boundary where ψ = 0 is imposed,
    /// rather than a point deep under a diverging wall.
    pub fn regular_boundary(&self) -> bool {
        matches!(self.potential, Potential::Oscillator(_))
    }

    /// Position and depth of the single minimum.
    pub fn well_minimum(&self) -> Result<(f64, f64), PotentialError> {
        match &self.potential {
            Potential::Alj(p) => return Ok((p.r_min, -p.epsilon)),
            Potential::Oscillator(p) => {
                let r = p.center.max(p.boundary);
                return Ok((r, self.value(r)?));
            }
            _ => {}
        }
        // bracket a sign change of V′ outward from the inner limit
        let lo0 = self.inner_limit.max(f64::MIN_POSITIVE);
        let mut lo = lo0;
        let mut hi = lo0 * 2.0;
        let mut tries = 0;
        while self.derivative(hi)? < 0.0 {
            lo = hi;
            hi *= 2.0;
            tries += 1;
            if tries > 200 {
                return Err(PotentialError::NoMinimum { lo: lo0, hi });
            }
        }
        if self.derivative(lo)? > 0.0 {
            return Err(PotentialError::NoMinimum { lo, hi });
        }
        // golden-section on V
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (lo, hi);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let mut fc = self.value(c)?;
        let mut fd = self.value(d)?;
        for _ in 0..80 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = self.value(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = self.value(d)?;
            }
            if (b - a) < 1e-6 * b {
                break;
            }
        }
        // Newton on V′ using the local series
        let mut r = 0.5 * (a + b);
        for _ in 0..50 {
            let s = self.series(r, 3)?;
            let (d1, d2) = (s.coeffs()[1], 2.0 * s.coeffs()[2]);
            let step = d1 / d2;
            let next = r - step;
            if !(next > a && next < b) {
                break;
            }
            r = next;
            if step.abs() <= 4.0 * f64::EPSILON * r {
                break;
            }
        }
        Ok((r, self.value(r)?))
    }

    /// Outer classical turning point for `energy`, or `None` when the energy
    /// lies above the outer asymptote. Below the minimum returns `r_e`.
    pub fn outer_turning_point(&self, energy: f64) -> Result<Option<f64>, PotentialError> {
        let (re, vmin) = self.well_minimum()?;
        if energy <= vmin {
            return Ok(Some(re));
        }
        if self.dissociates() && energy >= 0.0 {
            return Ok(None);
        }
        // bracket by doubling so the result scales exactly with the length unit
        let mut lo = re;
        let mut hi = if re > 0.0 { re * 2.0 } else { 1.0 };
        while self.value(hi)? < energy {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return Ok(None);
            }
        }
        Ok(Some(bisect(|r| Ok(self.value(r)? - energy), lo, hi)?))
    }

    /// Inner classical turning point, clamped to the inner limit.
    pub fn inner_turning_point(&self, energy: f64) -> Result<f64, PotentialError> {
        let (re, vmin) = self.well_minimum()?;
        if energy <= vmin {
            return Ok(re);
        }
        let lo = self.inner_limit;
        if lo <= 0.0 && self.value(lo.max(0.0)).map(|v| v <= energy).unwrap_or(false) {
            return Ok(lo);
        }
        if lo > 0.0 && self.value(lo)? <= energy {
            return Ok(lo);
        }
        bisect(|r| Ok(self.value(r)? - energy), lo, re)
    }
}

/// Bisection for a root of an increasing-or-decreasing `f` on `[lo, hi]`.
fn bisect(
    f: impl Fn(f64) -> Result<f64, PotentialError>,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64, PotentialError> {
    let flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{convert, Unit};
    use approx::assert_relative_eq;

    const C3_0G: f64 = 6.390;
    const C3_1U: f64 = 1.383;

    fn delta() -> f64 {
        convert(1.56512e-4, Unit::Rydberg, Unit::Hartree).unwrap()
    }

    fn mp0g() -> PotentialModel {
        PotentialModel::mp0g(C3_0G, delta(), 1.0).unwrap()
    }

    fn mp1u() -> PotentialModel {
        PotentialModel::mp1u(C3_1U, delta(), 1.0).unwrap()
    }

    fn lj() -> PotentialModel {
        PotentialModel::alj(1.0, 1.0, 6, 12).unwrap()
    }

    /// Central finite-difference Taylor coefficients on a stencil of
    /// `2m + 1` points, solved as a Vandermonde system.
    fn fd_coeffs(f: impl Fn(f64) -> f64, x0: f64, h: f64, m: i32, n_out: usize) -> Vec<f64> {
        let pts: Vec<f64> = (-m..=m).map(|k| k as f64 * h).collect();
        let n = pts.len();
        // solve Σ c_j t_k^j = f(x0 + t_k) for c_0..c_{n-1}
        let mut a: Vec<Vec<f64>> = pts
            .iter()
            .map(|&t| {
                let mut row: Vec<f64> = (0..n).map(|j| (t / h).powi(j as i32)).collect();
                row.push(f(x0 + t));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
            a.swap(col, piv);
            for row in 0..n {
                if row != col {
                    let fct = a[row][col] / a[col][col];
                    for k in col..=n {
                        a[row][k] -= fct * a[col][k];
                    }
                }
            }
        }
        (0..n_out).map(|j| a[j][n] / a[j][j] / h.powi(j as i32)).collect()
    }

    #[test]
    fn mp0g_long_range_limit() {
        let r: f64 = 1e5;
        let v = mp0g_value(r, &Mp0gParams { c3: C3_0G, delta: delta() }).unwrap();
        assert_relative_eq!(v * r.powi(3), -C3_0G, max_relative = 1e-3);
    }

    #[test]
    fn mp0g_minimum_and_depth() {
        let (re, vmin) = mp0g().well_minimum().unwrap();
        let re_closed = (4.5 * C3_0G / delta()).cbrt();
        assert!((re - 71.6).abs() < 0.1, "{re}");
        assert_relative_eq!(re, re_closed, max_relative = 1e-9);
        assert_relative_eq!(vmin, -delta() / 9.0, max_relative = 1e-10);
        let depth_cm = convert(-vmin, Unit::Hartree, Unit::Wavenumber).unwrap();
        assert!((depth_cm - 1.9084).abs() < 1e-4, "{depth_cm}");
    }

    #[test]
    fn mp0g_inner_wall() {
        let r: f64 = 0.1;
        let v = mp0g().value(r).unwrap();
        assert_relative_eq!(v * r.powi(3), C3_0G, max_relative = 1e-2);
    }

    #[test]
    fn mp1u_long_range_limit() {
        let r: f64 = 1e5;
        let v = mp1u().value(r).unwrap();
        assert_relative_eq!(v * r.powi(3), -C3_1U, max_relative = 1e-3);
        let v = mp1u().value(1e8).unwrap();
        assert!((v / delta()).abs() < 1e-6);
    }

    #[test]
    fn mp1u_is_shallower() {
        let (re1, v1) = mp1u().well_minimum().unwrap();
        let (_, v0) = mp0g().well_minimum().unwrap();
        assert!(v1 > v0);
        // frozen regression, cross-checked by golden-section on values only
        let depth_cm = convert(-v1, Unit::Hartree, Unit::Wavenumber).unwrap();
        assert!((depth_cm - 0.15822).abs() < 1e-4, "{depth_cm}");
        assert!((re1 - 99.22).abs() < 0.05, "{re1}");
    }

    #[test]
    fn invalid_radius() {
        assert!(matches!(mp0g().value(0.0), Err(PotentialError::NonPositiveRadius(_))));
        assert!(mp1u().value(-1.0).is_err());
        assert!(lj().value(0.0).is_err());
    }

    #[test]
    fn alj_coefficients() {
        let p = AljParams { epsilon: 1.0, r_min: 1.0, alpha: 6, beta: 12 };
        assert_eq!(p.c1(), 1.0);
        assert_eq!(p.c2(), 2.0);
        assert_eq!(alj_value(1.0, &p).unwrap(), -1.0);
        assert_eq!(lj().derivative(1.0).unwrap(), 0.0);
        let zero = (p.c1() / p.c2()).powf(1.0 / 6.0);
        assert_relative_eq!(zero, 2f64.powf(-1.0 / 6.0), max_relative = 1e-15);
        assert!(alj_value(zero, &p).unwrap().abs() < 1e-14);
    }

    #[test]
    fn alj_recovers_r_min_and_epsilon() {
        for (eps, rmin) in [(1.0, 1.0), (0.37, 2.5), (12.0, 0.8)] {
            let p = AljParams { epsilon: eps, r_min: rmin, alpha: 6, beta: 12 };
            assert_relative_eq!((2.0 * p.c1() / p.c2()).powf(1.0 / 6.0), rmin, max_relative = 1e-14);
            assert_relative_eq!(p.c2() * p.c2() / (4.0 * p.c1()), eps, max_relative = 1e-14);
        }
    }

    #[test]
    fn alj_bad_exponents() {
        assert!(PotentialModel::alj(1.0, 1.0, 12, 6).is_err());
        assert!(PotentialModel::alj(1.0, 1.0, 0, 6).is_err());
    }

    #[test]
    fn alj_series_matches_monomial_derivatives() {
        let p = lj();
        for r0 in [0.7, 1.0, 1.9, 4.0] {
            let s = p.series(r0, 12).unwrap();
            for (n, c) in s.coeffs().iter().enumerate() {
                // (r0+h)^-m = Σ binom(-m, n) r0^{-m-n} h^n
                let binom = |m: f64| (0..n).fold(1.0, |b, j| b * (-m - j as f64) / (j + 1) as f64);
                let expect = binom(12.0) * r0.powi(-12 - n as i32) - 2.0 * binom(6.0) * r0.powi(-6 - n as i32);
                let scale = expect.abs().max(1e-300);
                assert!((c - expect).abs() <= 1e-10 * scale, "r0={r0} n={n}: {c} vs {expect}");
            }
        }
    }

    #[test]
    fn mp0g_series_flat_at_minimum() {
        let m = mp0g();
        let re = (4.5 * C3_0G / delta()).cbrt();
        let s = m.series(re, 12).unwrap();
        assert!(s.coeffs()[1].abs() < 1e-10 * delta() / re, "{}", s.coeffs()[1]);
        assert_relative_eq!(s.coeffs()[0], -delta() / 9.0, max_relative = 1e-12);
    }

    #[test]
    fn series_leading_coefficient_is_value() {
        for m in [mp0g(), mp1u()] {
            for r0 in [2.0, 30.0, 71.6, 250.0, 3.0e3, 4.0e4] {
                let s = m.series(r0, 12).unwrap();
                assert_relative_eq!(s.coeffs()[0], m.value(r0).unwrap(), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn mp1u_series_matches_finite_differences() {
        let m = mp1u();
        let r0 = 100.0;
        let s = m.series(r0, 12).unwrap();
        let fd = fd_coeffs(|r| m.value(r).unwrap(), r0, 2.0, 6, 7);
        for n in 0..=6 {
            assert_relative_eq!(s.coeffs()[n], fd[n], max_relative = 1e-6);
        }
    }

    #[test]
    fn series_tracks_values_inside_step_region() {
        for m in [mp0g(), mp1u(), lj()] {
            let (re, _) = m.well_minimum().unwrap();
            for r0 in [0.5 * re, re, 3.0 * re] {
                let s = m.series(r0, 12).unwrap();
                let h = 0.1 * r0;
                let err = (s.evaluate(h) - m.value(r0 + h).unwrap()).abs();
                let bound = 10.0 * s.tail_magnitude(h) + 1e-13 * m.value(r0 + h).unwrap().abs();
                assert!(err <= bound, "{} r0={r0}: {err} > {bound}", m.label);
            }
        }
    }

    #[test]
    fn turning_points_bracket_the_well() {
        let m = lj();
        let rin = m.inner_turning_point(-0.5).unwrap();
        let rout = m.outer_turning_point(-0.5).unwrap().unwrap();
        assert!(rin < 1.0 && rout > 1.0);
        assert!((m.value(rin).unwrap() + 0.5).abs() < 1e-12);
        assert!((m.value(rout).unwrap() + 0.5).abs() < 1e-12);
        assert_eq!(m.outer_turning_point(0.0).unwrap(), None);
    }

    #[test]
    fn rescaling_preserves_shape() {
        let m = mp0g();
        let l0 = 100.0;
        let e0 = convert(1.0, Unit::Wavenumber, Unit::Hartree).unwrap();
        let s = m.rescaled(e0, l0);
        for r in [20.0, 71.6, 500.0] {
            assert_relative_eq!(s.value(r / l0).unwrap() * e0, m.value(r).unwrap(), max_relative = 1e-12);
        }
        assert_relative_eq!(s.inner_limit, 0.01);
    }
}
