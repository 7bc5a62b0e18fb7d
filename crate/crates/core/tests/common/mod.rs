//! Shared fixtures: example problems and an independent Numerov solver.
#![allow(dead_code)]

use std::path::PathBuf;

use cfm_core::config::{Problem, ProblemConfig};

pub fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

pub fn config(name: &str) -> ProblemConfig {
    let text = std::fs::read_to_string(config_path(name)).unwrap();
    ProblemConfig::parse(&text).unwrap()
}

pub fn problem(name: &str) -> Problem {
    config(name).build().unwrap()
}

/// Same problem with one key replaced.
pub fn problem_with(name: &str, overrides: &[(&str, &str)]) -> Problem {
    let mut c = config(name);
    for (k, v) in overrides {
        c.set(k, v).unwrap();
    }
    c.build().unwrap()
}

/// Shooting on a uniform grid with the Numerov recursion, ψ = 0 at both
/// ends. The number of sign changes of the outward solution counts the
/// eigenvalues below `e`; each level is the point where that count steps.
pub struct Numerov {
    pub r: Vec<f64>,
    v: Vec<f64>,
    h: f64,
    lambda: f64,
}

impl Numerov {
    /// `n` intervals on `[r_lo, r_hi]` for `ψ″ = λ (v − e) ψ`.
    pub fn new(v: impl Fn(f64) -> f64, lambda: f64, r_lo: f64, r_hi: f64, n: usize) -> Self {
        let h = (r_hi - r_lo) / n as f64;
        let r: Vec<f64> = (0..=n).map(|i| r_lo + h * i as f64).collect();
        let v = r.iter().map(|&x| v(x)).collect();
        Self { r, v, h, lambda }
    }

    /// Sign changes of the outward solution, and its sign at `r_hi`.
    pub fn nodes(&self, e: f64) -> (usize, f64) {
        let w = self.h * self.h / 12.0;
        let t = |i: usize| 1.0 - w * self.lambda * (self.v[i] - e);
        let (mut y0, mut y1) = (0.0f64, 1e-20f64);
        let (mut t0, mut t1) = (t(0), t(1));
        let mut count = 0;
        for i in 1..self.r.len() - 1 {
            let t2 = t(i + 1);
            let y2 = ((12.0 - 10.0 * t1) * y1 - t0 * y0) / t2;
            if y2 == 0.0 || (y2 < 0.0) != (y1 < 0.0) {
                count += 1;
            }
            (y0, y1, t0, t1) = (y1, y2, t1, t2);
            if y1.abs() > 1e200 {
                y0 *= 1e-200;
                y1 *= 1e-200;
            }
        }
        (count, y1)
    }

    /// Outward solution on the grid at energy `e`, without renormalisation.
    pub fn wavefunction(&self, e: f64) -> Vec<f64> {
        let w = self.h * self.h / 12.0;
        let t = |i: usize| 1.0 - w * self.lambda * (self.v[i] - e);
        let mut y = vec![0.0, 1e-20];
        for i in 1..self.r.len() - 1 {
            let next = ((12.0 - 10.0 * t(i)) * y[i] - t(i - 1) * y[i - 1]) / t(i + 1);
            y.push(next);
        }
        y
    }

    /// Level `k` (1-based) by bisection on the node count inside `[lo, hi]`.
    pub fn level(&self, k: usize, lo: f64, hi: f64) -> f64 {
        let (mut a, mut b) = (lo, hi);
        assert!(self.nodes(a).0 < k && self.nodes(b).0 >= k, "level {k} not inside [{lo}, {hi}]");
        while b - a > 1e-15 * a.abs().max(b.abs()) {
            let m = 0.5 * (a + b);
            if m == a || m == b {
                break;
            }
            if self.nodes(m).0 >= k {
                b = m;
            } else {
                a = m;
            }
        }
        0.5 * (a + b)
    }

    /// The first `n` levels, searched inside `[lo, hi]`.
    pub fn levels(&self, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (1..=n).map(|k| self.level(k, lo, hi)).collect()
    }
}

/// Lennard-Jones `r^−12 − 2 r^−6` levels from Numerov on `n` intervals.
pub fn lj_numerov(levels: usize, n: usize) -> Vec<f64> {
    let v = |r: f64| {
        let s = r.powi(-6);
        s * s - 2.0 * s
    };
    Numerov::new(v, 1e4, 0.5, 6.0, n).levels(levels, -1.0, -1e-4)
}
