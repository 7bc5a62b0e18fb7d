//! Truncated Taylor series about a fixed expansion point.
//!
//! Elementary functions are composed with the usual derivative recurrences:
//! the leading coefficient comes from the scalar function and every higher one
//! from the identity satisfied by its derivative, solved order by order.

use thiserror::Error;

/// Default expansion order of the Taylor stepper.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series centers differ ({0} vs {1})")]
    CenterMismatch(f64, f64),
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("division by a series with zero leading coefficient (pole at the expansion point)")]
    Pole,
    #[error("{function} undefined for leading coefficient {value}")]
    Domain { function: &'static str, value: f64 },
}

/// `coeffs[n] = f⁽ⁿ⁾(center) / n!`, always `order + 1` long.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    center: f64,
    coeffs: Vec<f64>,
}

impl TaylorSeries {
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(center: f64, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { center, coeffs }
    }

    pub fn constant(center: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { center, coeffs }
    }

    /// The expansion variable itself, `x = center + h`.
    pub fn identity(center: f64, order: usize) -> Self {
        let mut s = Self::constant(center, center, order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    fn like(&self, coeffs: Vec<f64>) -> Self {
        Self { center: self.center, coeffs }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.center != other.center {
            return Err(SeriesError::CenterMismatch(self.center, other.center));
        }
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.like(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.like(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect()))
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let a = &self.coeffs;
        let b = &other.coeffs;
        let out = (0..a.len())
            .map(|n| (0..=n).map(|k| a[k] * b[n - k]).sum())
            .collect();
        Ok(self.like(out))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let b = &other.coeffs;
        if b[0] == 0.0 {
            return Err(SeriesError::Pole);
        }
        let mut q = vec![0.0; b.len()];
        for n in 0..b.len() {
            let acc: f64 = (1..=n).map(|k| b[k] * q[n - k]).sum();
            q[n] = (self.coeffs[n] - acc) / b[0];
        }
        Ok(self.like(q))
    }

    pub fn recip(&self) -> Result<Self, SeriesError> {
        Self::constant(self.center, 1.0, self.order()).try_div(self)
    }

    pub fn scale(&self, k: f64) -> Self {
        self.like(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add_scalar(&self, c: f64) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let a = &self.coeffs;
        if !(a[0] > 0.0) {
            return Err(SeriesError::Domain { function: "sqrt", value: a[0] });
        }
        let mut b = vec![0.0; a.len()];
        b[0] = a[0].sqrt();
        for n in 1..a.len() {
            let acc: f64 = (1..n).map(|k| b[k] * b[n - k]).sum();
            b[n] = (a[n] - acc) / (2.0 * b[0]);
        }
        Ok(self.like(b))
    }

    /// `(sin a, cos a)` from the coupled recurrences `s′ = c a′`, `c′ = −s a′`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.coeffs;
        let len = a.len();
        let mut s = vec![0.0; len];
        let mut c = vec![0.0; len];
        (s[0], c[0]) = a[0].sin_cos();
        for n in 1..len {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for k in 1..=n {
                let ka = k as f64 * a[k];
                ds += ka * c[n - k];
                dc -= ka * s[n - k];
            }
            s[n] = ds / n as f64;
            c[n] = dc / n as f64;
        }
        (self.like(s), self.like(c))
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn acos(&self) -> Result<Self, SeriesError> {
        self.acos_with_complement(1.0 - self.coeffs[0])
    }

    /// `arccos` where the caller supplies `1 − a₀` directly.
    ///
    /// Near `a₀ = 1` the difference cannot be formed from `a₀` without
    /// cancellation, while the caller often knows it in closed form.
    pub fn acos_with_complement(&self, one_minus_a0: f64) -> Result<Self, SeriesError> {
        let w0 = one_minus_a0;
        if !(w0 > 0.0 && w0 < 2.0) {
            return Err(SeriesError::Domain { function: "arccos", value: 1.0 - w0 });
        }
        let order = self.order();
        // 1 − a² with its leading term taken from the complement
        let mut one_minus_sq = self.try_mul(self)?.neg();
        one_minus_sq.coeffs[0] = w0 * (2.0 - w0);
        let root = one_minus_sq.sqrt()?;
        let mut theta = vec![0.0; order + 1];
        theta[0] = 2.0 * (0.5 * w0).sqrt().asin();
        if order > 0 {
            // θ′ · √(1 − a²) = −a′, solved at orders 0..order−1
            let da = self.derivative();
            let r = &root.coeffs;
            let mut q = vec![0.0; order];
            for n in 0..order {
                let acc: f64 = (1..=n).map(|k| r[k] * q[n - k]).sum();
                q[n] = (-da.coeffs[n] - acc) / r[0];
            }
            for n in 1..=order {
                theta[n] = q[n - 1] / n as f64;
            }
        }
        Ok(self.like(theta))
    }

    /// Real power by the recurrence `a · b′ = p · a′ · b`.
    pub fn powf(&self, p: f64) -> Result<Self, SeriesError> {
        let a = &self.coeffs;
        if !(a[0] > 0.0) {
            return Err(SeriesError::Domain { function: "powf", value: a[0] });
        }
        let mut b = vec![0.0; a.len()];
        b[0] = a[0].powf(p);
        for n in 1..a.len() {
            let acc: f64 = (1..=n)
                .map(|k| (p * k as f64 - (n - k) as f64) * a[k] * b[n - k])
                .sum();
            b[n] = acc / (n as f64 * a[0]);
        }
        Ok(self.like(b))
    }

    pub fn powi(&self, n: i32) -> Result<Self, SeriesError> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut result = Self::constant(self.center, 1.0, self.order());
        let mut base = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Term-wise derivative, one order shorter.
    pub fn derivative(&self) -> Self {
        let d: Vec<f64> = if self.coeffs.len() == 1 {
            vec![0.0]
        } else {
            (1..self.coeffs.len()).map(|n| n as f64 * self.coeffs[n]).collect()
        };
        self.like(d)
    }

    /// `Σ coeffs[n] hⁿ` by Horner's scheme.
    pub fn evaluate(&self, h: f64) -> f64 {
        horner(&self.coeffs, h)
    }

    pub fn evaluate_derivative(&self, h: f64) -> f64 {
        let mut acc = 0.0;
        for n in (1..self.coeffs.len()).rev() {
            acc = acc * h + n as f64 * self.coeffs[n];
        }
        acc
    }

    /// Size of the last two retained terms at step `h`, the local truncation
    /// error estimate used to accept a step.
    pub fn tail_magnitude(&self, h: f64) -> f64 {
        tail_magnitude(&self.coeffs, h)
    }
}

pub(crate) fn horner(coeffs: &[f64], h: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * h + c)
}

pub(crate) fn horner_derivative(coeffs: &[f64], h: f64) -> f64 {
    let mut acc = 0.0;
    for n in (1..coeffs.len()).rev() {
        acc = acc * h + n as f64 * coeffs[n];
    }
    acc
}

pub(crate) fn tail_magnitude(coeffs: &[f64], h: f64) -> f64 {
    let k = coeffs.len() - 1;
    debug_assert!(k >= 2);
    let hk1 = h.abs().powi(k as i32 - 1);
    (coeffs[k - 1].abs() * hk1).max(coeffs[k].abs() * hk1 * h.abs())
}
