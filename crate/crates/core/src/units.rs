//! Physical constants, unit conversion and the isospectral scaling that maps a
//! physical problem onto `ψ″(x) = λ (v(x) − e) ψ(x)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Frozen constant table. Atomic units throughout (ℏ = mₑ = a₀ = 1).
pub mod constants {
    /// cm⁻¹ per Hartree (CODATA 2018).
    pub const HARTREE_IN_WAVENUMBER: f64 = 219_474.631_370_2;
    /// Hartree per Rydberg.
    pub const RYDBERG_IN_HARTREE: f64 = 0.5;
    /// Electron masses per unified atomic mass unit (CODATA 2018).
    pub const AMU_IN_ELECTRON_MASS: f64 = 1_822.888_486;
    /// Atomic mass of ²³Na in u (AME).
    pub const NA23_MASS_AMU: f64 = 22.989_769_28;
    /// Reduced mass of ²³Na₂ in u.
    pub const NA2_REDUCED_MASS_AMU: f64 = NA23_MASS_AMU / 2.0;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitError {
    #[error("cannot convert {from} to {to}: incommensurable units")]
    Incommensurable { from: Unit, to: Unit },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("unknown unit `{0}`")]
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Energy,
    Length,
    Mass,
    /// Energy × length³, the unit of a C₃ coefficient.
    DispersionC3,
}

/// Every unit the solver understands.
///
/// `EpsilonWell` and `RMinScaled` are the reduced units of the Lennard-Jones
/// problem; they only convert to themselves since ε and r_min carry no
/// absolute scale there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Hartree,
    Rydberg,
    Wavenumber,
    EpsilonWell,
    Bohr,
    RMinScaled,
    ElectronMass,
    AtomicMassUnit,
    Dimensionless,
    HartreeBohr3,
}

impl Unit {
    pub fn dimension(self) -> Option<Dimension> {
        match self {
            Unit::Hartree | Unit::Rydberg | Unit::Wavenumber | Unit::EpsilonWell => {
                Some(Dimension::Energy)
            }
            Unit::Bohr | Unit::RMinScaled => Some(Dimension::Length),
            Unit::ElectronMass | Unit::AtomicMassUnit => Some(Dimension::Mass),
            Unit::HartreeBohr3 => Some(Dimension::DispersionC3),
            Unit::Dimensionless => None,
        }
    }

    /// Size of one of `self` in the atomic base unit, or `None` for the
    /// reduced units that have no absolute scale.
    fn atomic_factor(self) -> Option<f64> {
        use constants::*;
        match self {
            Unit::Hartree | Unit::Bohr | Unit::ElectronMass | Unit::HartreeBohr3 => Some(1.0),
            Unit::Rydberg => Some(RYDBERG_IN_HARTREE),
            Unit::Wavenumber => Some(1.0 / HARTREE_IN_WAVENUMBER),
            Unit::AtomicMassUnit => Some(AMU_IN_ELECTRON_MASS),
            Unit::EpsilonWell | Unit::RMinScaled | Unit::Dimensionless => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Hartree => "hartree",
            Unit::Rydberg => "rydberg",
            Unit::Wavenumber => "wavenumber",
            Unit::EpsilonWell => "epsilon",
            Unit::Bohr => "bohr",
            Unit::RMinScaled => "r_min",
            Unit::ElectronMass => "electron_mass",
            Unit::AtomicMassUnit => "amu",
            Unit::Dimensionless => "1",
            Unit::HartreeBohr3 => "hartree_a0_3",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = UnitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "hartree" | "Eh" => Unit::Hartree,
            "rydberg" | "Ry" => Unit::Rydberg,
            "wavenumber" | "cm-1" => Unit::Wavenumber,
            "epsilon" => Unit::EpsilonWell,
            "bohr" | "a0" => Unit::Bohr,
            "r_min" => Unit::RMinScaled,
            "electron_mass" | "me" => Unit::ElectronMass,
            "amu" | "u" => Unit::AtomicMassUnit,
            "1" => Unit::Dimensionless,
            "hartree_a0_3" => Unit::HartreeBohr3,
            other => return Err(UnitError::Unknown(other.to_string())),
        })
    }
}

/// Converts `value` expressed in `from` into `to`.
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64, UnitError> {
    if from == to {
        return Ok(value);
    }
    if from.dimension().is_none() || from.dimension() != to.dimension() {
        return Err(UnitError::Incommensurable { from, to });
    }
    match (from.atomic_factor(), to.atomic_factor()) {
        (Some(a), Some(b)) if a == 1.0 => Ok(value / b),
        (Some(a), Some(b)) if b == 1.0 => Ok(value * a),
        (Some(a), Some(b)) => Ok(value * (a / b)),
        _ => Err(UnitError::Incommensurable { from, to }),
    }
}

/// A quantity with its unit attached, as written in configuration files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }

    pub fn to(self, unit: Unit) -> Result<f64, UnitError> {
        convert(self.value, self.unit, unit)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit == Unit::Dimensionless {
            write!(f, "{:e}", self.value)
        } else {
            write!(f, "{:e} {}", self.value, self.unit)
        }
    }
}

/// Maps a physical problem onto internal numbers: `x = r / L₀`, `e = E / E₀`
/// and `ψ″ = λ (v − e) ψ`.
///
/// `energy_unit` and `length_unit` record what E₀ and L₀ are measured in, so
/// internal eigenvalues can be turned back into physical energies exactly by
/// `E = e · E₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingContext {
    pub energy_scale: f64,
    pub energy_unit: Unit,
    pub length_scale: f64,
    pub length_unit: Unit,
    pub kinetic_coefficient: f64,
}

impl ScalingContext {
    /// Internal energy → physical energy in `unit`.
    pub fn energy_to(&self, e: f64, unit: Unit) -> Result<f64, UnitError> {
        convert(e * self.energy_scale, self.energy_unit, unit)
    }

    /// Physical energy → internal energy.
    pub fn energy_from(&self, q: Quantity) -> Result<f64, UnitError> {
        Ok(q.to(self.energy_unit)? / self.energy_scale)
    }

    pub fn length_to(&self, x: f64, unit: Unit) -> Result<f64, UnitError> {
        convert(x * self.length_scale, self.length_unit, unit)
    }

    pub fn length_from(&self, q: Quantity) -> Result<f64, UnitError> {
        Ok(q.to(self.length_unit)? / self.length_scale)
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64, UnitError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(UnitError::NonPositive { name, value })
    }
}

/// Scaling for a physical problem in atomic units: `mass` in mₑ, `e0` in
/// Hartree, `l0` in a₀. Gives `λ = 2 m E₀ L₀²`.
pub fn build_scaling(mass: f64, e0: f64, l0: f64) -> Result<ScalingContext, UnitError> {
    let mass = positive("mass", mass)?;
    let e0 = positive("E0", e0)?;
    let l0 = positive("L0", l0)?;
    Ok(ScalingContext {
        energy_scale: e0,
        energy_unit: Unit::Hartree,
        length_scale: l0,
        length_unit: Unit::Bohr,
        kinetic_coefficient: 2.0 * mass * e0 * l0 * l0,
    })
}

/// Same as [`build_scaling`] with every quantity carrying its own unit.
pub fn build_scaling_from(
    mass: Quantity,
    e0: Quantity,
    l0: Quantity,
) -> Result<ScalingContext, UnitError> {
    let mass = mass.to(Unit::ElectronMass)?;
    let mut ctx = build_scaling(mass, e0.to(Unit::Hartree)?, l0.to(Unit::Bohr)?)?;
    // keep the caller's units so round trips stay exact
    ctx.energy_scale = positive("E0", e0.value)?;
    ctx.energy_unit = e0.unit;
    ctx.length_scale = positive("L0", l0.value)?;
    ctx.length_unit = l0.unit;
    Ok(ctx)
}

/// Reduced scaled mass of the Lennard-Jones problem, `B = 2 μ ε r_min²`.
pub fn lj_reduced_b(mu: f64, epsilon: f64, r_min: f64) -> Result<f64, UnitError> {
    let mu = positive("mu", mu)?;
    let epsilon = positive("epsilon", epsilon)?;
    let r_min = positive("r_min", r_min)?;
    Ok(2.0 * mu * epsilon * r_min * r_min)
}

/// Scaling for the reduced Lennard-Jones problem. `e0` is measured in ε and
/// `l0` in r_min, so `λ = B · e0 · l0²`.
pub fn reduced_scaling(b: f64, e0: f64, l0: f64) -> Result<ScalingContext, UnitError> {
    let b = positive("B", b)?;
    let e0 = positive("E0", e0)?;
    let l0 = positive("L0", l0)?;
    Ok(ScalingContext {
        energy_scale: e0,
        energy_unit: Unit::EpsilonWell,
        length_scale: l0,
        length_unit: Unit::RMinScaled,
        kinetic_coefficient: b * e0 * l0 * l0,
    })
}
