//! Problem fixtures shared by the benchmarks.

use cfm_core::{Problem, ProblemConfig};

pub const LJ: &str = "\
potential.kind = alj
potential.epsilon = 1 epsilon
potential.r_min = 1 r_min
potential.alpha = 6
potential.beta = 12
mass.b = 1e4
";

pub const NA2_0G: &str = "\
potential.kind = mp0g
potential.c3 = 6.390 hartree_a0_3
potential.delta = 1.56512e-4 rydberg
output.unit = wavenumber
";

pub fn problem(text: &str) -> Problem {
    ProblemConfig::parse(text).and_then(|c| c.build()).expect("fixture config")
}
