//! Run-time properties of the solver on the example problems.

mod common;

use cfm_core::integrators::{Direction, Equation, Propagator};
use cfm_core::{
    solve_spectrum, CanonicalState, CfmSolver, IntegratorConfig, PotentialModel, SaturationControl, ScanPlan,
    SpectrumOptions,
};
use common::{problem, Numerov};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn lj_solver(epsilon: f64) -> CfmSolver {
    let pot = PotentialModel::alj(epsilon, 1.0, 6, 12).unwrap();
    CfmSolver::new(pot, 1e4, IntegratorConfig::default(), SaturationControl::default(), None).unwrap()
}

/// Last radius reached while saturating, from the ratio trace.
fn saturation_radius(s: &CfmSolver, e: f64, dir: Direction) -> f64 {
    let (_, trace) = match dir {
        Direction::Outward => s.l_plus(e).unwrap(),
        Direction::Inward => s.l_minus(e).unwrap(),
    };
    assert!(trace.saturated);
    trace.samples.back().unwrap().0
}

/// Accepted `|Δr|` of a sweep from the anchor to `limit`.
fn steps(s: &CfmSolver, e: f64, dir: Direction, limit: f64) -> Vec<(f64, f64)> {
    let eq = Equation { potential: &s.potential, lambda: s.lambda, energy: e };
    let prop = Propagator::new(eq, &s.integrator, s.rk4_step());
    let mut last = s.anchor;
    let mut out = Vec::new();
    prop.propagate(CanonicalState::init_at(s.anchor), dir, limit, 1, |st| {
        if st.r != last {
            out.push((st.r, (st.r - last).abs()));
            last = st.r;
        }
        if st.alpha.abs() > 1e100 {
            st.renormalize(1e100);
        }
        false
    })
    .unwrap();
    out
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

#[test]
fn steps_shrink_at_the_inner_wall() {
    // energies whose outward sweeps reach the asymptotic region r > 2 r_min
    let s = lj_solver(1.0);
    for e in [-0.01, -1e-4, -2.697e-6] {
        let inner = s.potential.inner_turning_point(e).unwrap();
        let lo = saturation_radius(&s, e, Direction::Inward);
        let hi = saturation_radius(&s, e, Direction::Outward);
        let wall: Vec<f64> = steps(&s, e, Direction::Inward, lo)
            .into_iter()
            .filter(|&(r, _)| r < inner)
            .map(|x| x.1)
            .collect();
        let tail: Vec<f64> = steps(&s, e, Direction::Outward, hi)
            .into_iter()
            .filter(|&(r, _)| r > 2.0)
            .map(|x| x.1)
            .collect();
        let (w, t) = (median(wall), median(tail));
        assert!(t >= 10.0 * w, "E {e}: wall {w:e}, tail {t:e}");
    }
}

#[test]
fn max_step_does_not_control_accuracy() {
    let s = lj_solver(1.0);
    for e in [-0.9, -0.5, -0.1, -0.01] {
        let (lp, _) = s.l_plus(e).unwrap();
        let (lm, _) = s.l_minus(e).unwrap();
        // a cap that binds in the tail, then half of it
        for cap in [0.1, 0.05] {
            let mut t = s.clone();
            t.integrator.max_step = cap;
            assert!(rel(t.l_plus(e).unwrap().0, lp) < 1e-8, "E {e} cap {cap}");
            assert!(rel(t.l_minus(e).unwrap().0, lm) < 1e-8, "E {e} cap {cap}");
        }
    }
}

#[test]
fn saturation_ignores_cap_and_inner_limit() {
    for (name, fractions) in [("lj.cfg", [0.9, 0.5, 0.01]), ("na2_0g.cfg", [0.9, 0.5, 0.01])] {
        let p = problem(name);
        let s = &p.solver;
        let depth = -s.well().1;
        let mut wide = s.clone();
        wide.saturation.cap_factor *= 2.0;
        wide.saturation.cap_decay_lengths *= 2.0;
        wide.saturation.cap_ceiling *= 2.0;
        wide.potential = wide.potential.clone().with_inner_limit(0.5 * s.potential.inner_limit);
        for f in fractions {
            let e = -f * depth;
            assert!(rel(wide.l_plus(e).unwrap().0, s.l_plus(e).unwrap().0) < 1e-6, "{name} l+ at {f}");
            assert!(rel(wide.l_minus(e).unwrap().0, s.l_minus(e).unwrap().0) < 1e-6, "{name} l- at {f}");
        }
    }
}

#[test]
fn mp0g_saturates_inside_five_bohr() {
    let p = problem("na2_0g.cfg");
    let s = &p.solver;
    let depth = -s.well().1;
    let five_bohr = 5.0 / p.scaling.length_scale;
    for f in [0.999, 0.9, 0.5, 0.1, 0.01, 1e-4, 1e-8] {
        let r = saturation_radius(s, -f * depth, Direction::Inward);
        assert!(r > five_bohr, "E = -{f} depth saturated at {r}");
    }
}

#[test]
fn lj_ground_level_saturates_inside_three_r_min() {
    let s = lj_solver(1.0);
    assert!(saturation_radius(&s, -0.9410443, Direction::Outward) < 3.0);
}

#[test]
fn eigenvalue_function_is_smooth_between_poles() {
    let p = problem("lj.cfg");
    let r = solve_spectrum(&p.solver, &p.plan, &p.options).unwrap();
    let f = |e: f64| p.solver.eigenvalue_function(e).unwrap().f;
    for k in [0, 4, 9, 14] {
        let zero = r.levels[k].energy;
        let pole = r.poles.iter().copied().find(|&q| q > zero).unwrap();
        for t in [0.25, 0.5] {
            let e = zero + t * (pole - zero);
            let d = 1e-4 * (pole - zero);
            let wide = (f(e + d) - f(e - d)) / (2.0 * d);
            let narrow = (f(e + 0.5 * d) - f(e - 0.5 * d)) / d;
            assert!(rel(narrow, wide) < 1e-2, "level {} at {t}: {narrow} vs {wide}", k + 1);
        }
    }
}

#[test]
fn lj_brackets_split_into_zeros_and_poles() {
    let p = problem("lj.cfg");
    let r = solve_spectrum(&p.solver, &p.plan, &p.options).unwrap();
    assert_eq!(r.levels.len(), 24);
    let (lo, hi) = (r.levels[0].energy, r.levels[23].energy);
    assert_eq!(r.poles.iter().filter(|&&q| q > lo && q < hi).count(), 23);
    assert!(r.interleaved());
}

/// `ψ = α + l·β` from the anchor with derivative `l`, sampled at `grid`.
fn psi_from(s: &CfmSolver, e: f64, l: f64, grid: &[f64]) -> Vec<f64> {
    let eq = Equation { potential: &s.potential, lambda: s.lambda, energy: e };
    let prop = Propagator::new(eq, &s.integrator, s.rk4_step());
    grid.iter()
        .map(|&r| {
            let dir = if r >= s.anchor { Direction::Outward } else { Direction::Inward };
            let st = prop.propagate(CanonicalState::init_at(s.anchor), dir, r, usize::MAX, |_| false).unwrap().state;
            st.alpha + l * st.beta
        })
        .collect()
}

#[test]
fn both_logarithmic_derivatives_give_the_same_eigenfunction() {
    let p = problem("lj.cfg");
    let r = solve_spectrum(&p.solver, &p.plan, &p.options).unwrap();
    let s = &p.solver;
    for k in [0, 5, 12, 20] {
        let e = r.levels[k].energy;
        let x = s.eigenvalue_function(e).unwrap();
        assert!(x.f.abs() <= r.thresholds.zero);
        let a = s.potential.inner_turning_point(e).unwrap();
        let b = s.potential.outer_turning_point(e).unwrap().unwrap();
        let grid: Vec<f64> = (0..=200).map(|i| a + (b - a) * i as f64 / 200.0).collect();
        let plus = psi_from(s, e, x.l_plus, &grid);
        let minus = psi_from(s, e, x.l_minus, &grid);
        let scale = plus.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let worst = plus.iter().zip(&minus).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
        assert!(worst <= 1e-6 * scale, "level {}: {worst:e} of {scale:e}", k + 1);
    }
}

#[test]
fn lj_eigenfunctions_have_k_minus_one_nodes_and_decaying_tails() {
    let p = problem("lj.cfg");
    let r = solve_spectrum(&p.solver, &p.plan, &p.options).unwrap();
    let grid: Vec<f64> = (0..=3000).map(|i| 0.8 + 2.2 * i as f64 / 3000.0).collect();
    let h = grid[1] - grid[0];
    for l in &r.levels[..8] {
        let psi = p.solver.eigenfunction(l.energy, &grid, r.thresholds.zero).unwrap();
        assert_eq!(psi.nodes(), l.index - 1, "level {}", l.index);
        let norm: f64 = psi.psi.windows(2).map(|w| 0.5 * h * (w[0] * w[0] + w[1] * w[1])).sum();
        assert!((norm - 1.0).abs() < 1e-6);
        let rt = p.solver.potential.outer_turning_point(l.energy).unwrap().unwrap();
        let tail: Vec<f64> = grid.iter().zip(&psi.psi).filter(|(x, _)| **x > rt).map(|(_, v)| v.abs()).collect();
        assert!(tail.windows(2).all(|w| w[1] <= w[0]), "level {} tail grows", l.index);
    }
}

#[test]
fn lj_ground_state_matches_numerov() {
    let s = lj_solver(1.0);
    let v = |r: f64| {
        let q = r.powi(-6);
        q * q - 2.0 * q
    };
    let n = 20_000;
    let num = Numerov::new(v, 1e4, 0.75, 2.5, n);
    let e = num.level(1, -1.0, -0.5);
    let mut ref_psi = num.wavefunction(e);
    // past r_min the outward solution decays until the growing branch takes over
    let cut = (0..ref_psi.len())
        .filter(|&i| num.r[i] > 1.0)
        .min_by(|&i, &j| ref_psi[i].abs().total_cmp(&ref_psi[j].abs()))
        .unwrap();
    ref_psi[cut..].iter_mut().for_each(|p| *p = 0.0);

    let psi = s.eigenfunction(e, &num.r, f64::INFINITY).unwrap();
    assert_eq!(psi.nodes(), 0);
    let top = (0..psi.psi.len()).max_by(|&i, &j| psi.psi[i].abs().total_cmp(&psi.psi[j].abs())).unwrap();
    assert!((num.r[top] - 1.0).abs() < 0.05, "maximum at {}", num.r[top]);
    let floor = 1e-8 * psi.psi[top].abs();
    let rising = psi.psi[..=top].windows(2).all(|w| w[1].abs() >= w[0].abs() || w[1].abs() < floor);
    let falling = psi.psi[top..].windows(2).all(|w| w[1].abs() <= w[0].abs() || w[0].abs() < floor);
    assert!(rising && falling, "more than one maximum");

    let h = num.r[1] - num.r[0];
    let norm = ref_psi.iter().map(|p| p * p).sum::<f64>() * h;
    let overlap = psi.psi.iter().zip(&ref_psi).map(|(a, b)| a * b).sum::<f64>() * h / norm.sqrt();
    assert!(overlap.abs() > 0.9999, "overlap {overlap}");
}

#[test]
fn deeper_well_lowers_every_level() {
    let plan = ScanPlan::for_depth(1.1);
    let opts = SpectrumOptions::default();
    let base = solve_spectrum(&lj_solver(1.0), &ScanPlan::for_depth(1.0), &opts).unwrap();
    let deep = solve_spectrum(&lj_solver(1.1), &plan, &opts).unwrap();
    assert!(deep.levels.len() >= base.levels.len());
    for (a, b) in base.levels.iter().zip(&deep.levels) {
        assert!(b.energy < a.energy, "level {}: {} vs {}", a.index, b.energy, a.energy);
    }
}
