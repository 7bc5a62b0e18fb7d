//! Prints the Lennard-Jones B = 1e4 spectrum.
use cfm_core::*;

fn main() {
    let method: Method = std::env::args().nth(1).unwrap_or("vsca".into()).parse().unwrap();
    let pot = PotentialModel::alj(1.0, 1.0, 6, 12).unwrap();
    let mut cfg = IntegratorConfig::default();
    cfg.method = method;
    let solver = CfmSolver::new(pot, 1e4, cfg, SaturationControl::default(), None).unwrap();
    let t = std::time::Instant::now();
    let r = solve_spectrum(&solver, &ScanPlan::for_depth(1.0), &SpectrumOptions::default()).unwrap();
    for l in &r.levels {
        println!("{}\t{:.10e}\t{:.1e}\t{}", l.index, l.energy, l.residual, l.iterations);
    }
    println!("poles {} interleaved {} issues {:?} rescans {} time {:?}", r.poles.len(), r.interleaved(), r.issues, r.rescans, t.elapsed());
}
