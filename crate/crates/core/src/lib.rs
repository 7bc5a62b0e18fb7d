//! Bound-state spectra of one-dimensional radial problems by the canonical
//! function method.
//!
//! The pipeline: a [`PotentialModel`] in internal units and a kinetic
//! coefficient λ define a [`CfmSolver`]; [`solve_spectrum`] scans the
//! eigenvalue function over a [`ScanPlan`] and refines its zeros.

pub mod cfm;
pub mod config;
pub mod integrators;
pub mod potentials;
pub mod reference;
pub mod report;
pub mod series;
pub mod spectrum;
pub mod units;

pub use config::{ConfigError, Problem, ProblemConfig};
pub use cfm::{CfmError, CfmSolver, EigenvalueFunctionSample, Eigenfunction, RatioTrace, SaturationControl};
pub use integrators::{CanonicalState, Direction, IntegratorConfig, Method, StepError};
pub use potentials::{Potential, PotentialError, PotentialModel};
pub use reference::{ReferenceError, ReferenceTable, SignConvention};
pub use series::TaylorSeries;
pub use spectrum::{
    compare, solve_spectrum, Comparison, Level, ScanPlan, Spacing, SpectrumError, SpectrumOptions, SpectrumResult,
};
pub use units::{Quantity, ScalingContext, Unit, UnitError};
