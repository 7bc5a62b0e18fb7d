//! Published level tables used for comparison.
//!
//! Magnitudes are kept as the printed decimal strings; each table carries the
//! sign its source printed energies with.

use std::fmt::Write as _;

use thiserror::Error;

use crate::units::Unit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReferenceError {
    #[error("unknown reference table `{0}` (known: {1})")]
    Unknown(String, String),
}

/// Sign the source printed its energies with. Bound energies are negative
/// either way; some tables list binding energies as positive numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    Negative,
    Positive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceRow {
    pub index: u32,
    /// Printed digits of |E|.
    pub text: String,
    pub magnitude: f64,
    /// Row obtained by extrapolation rather than computed.
    pub extrapolated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub name: String,
    pub description: String,
    pub unit: Unit,
    pub sign: SignConvention,
    pub rows: Vec<ReferenceRow>,
}

impl ReferenceTable {
    /// A table built from computed energies; magnitudes are kept exactly.
    pub fn from_energies(name: &str, unit: Unit, energies: &[f64]) -> Self {
        let rows = energies
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let text = format!("{:.8e}", e.abs());
                ReferenceRow { index: k as u32 + 1, magnitude: e.abs(), text, extrapolated: false }
            })
            .collect();
        ReferenceTable {
            name: name.to_string(),
            description: String::from("computed levels"),
            unit,
            sign: SignConvention::Negative,
            rows,
        }
    }

    pub fn row(&self, index: u32) -> Option<&ReferenceRow> {
        self.rows.iter().find(|r| r.index == index)
    }

    /// Signed energy as printed.
    pub fn printed_energy(&self, row: &ReferenceRow) -> f64 {
        match self.sign {
            SignConvention::Negative => -row.magnitude,
            SignConvention::Positive => row.magnitude,
        }
    }
}

struct RawTable {
    name: &'static str,
    description: &'static str,
    unit: Unit,
    sign: SignConvention,
    rows: &'static [(u32, &'static str, bool)],
}

impl RawTable {
    fn build(&self) -> ReferenceTable {
        let rows = self
            .rows
            .iter()
            .map(|&(index, text, extrapolated)| ReferenceRow {
                index,
                text: text.to_string(),
                magnitude: text.parse().expect("embedded table value"),
                extrapolated,
            })
            .collect();
        ReferenceTable {
            name: self.name.to_string(),
            description: self.description.to_string(),
            unit: self.unit,
            sign: self.sign,
            rows,
        }
    }
}

/// Names of all embedded tables, in fixture order.
pub fn table_names() -> Vec<&'static str> {
    TABLES.iter().map(|t| t.name).collect()
}

pub fn table(name: &str) -> Result<ReferenceTable, ReferenceError> {
    TABLES
        .iter()
        .find(|t| t.name == name)
        .map(RawTable::build)
        .ok_or_else(|| ReferenceError::Unknown(name.to_string(), table_names().join(", ")))
}

pub fn all_tables() -> Vec<ReferenceTable> {
    TABLES.iter().map(RawTable::build).collect()
}

/// The embedded tables rendered in the fixture format.
pub fn render_fixture() -> String {
    let mut s = String::from("# table\tindex\tmagnitude\textrapolated\n");
    for t in TABLES {
        for &(index, text, extrapolated) in t.rows {
            let _ = writeln!(s, "{}\t{}\t{}\t{}", t.name, index, text, u8::from(extrapolated));
        }
    }
    s
}

const STW0G_ROWS: &[(u32, &str, bool)] = &[
    (1, "1.7887", false),
    (2, "1.5617", false),
    (3, "1.3566", false),
    (4, "1.1723", false),
    (5, "1.0075", false),
    (6, "0.86087", false),
    (7, "0.73125", false),
    (8, "0.61729", false),
    (9, "0.51770", false),
    (10, "0.43120", false),
    (11, "0.35657", false),
    (12, "0.29261", false),
    (13, "0.23820", false),
    (14, "0.19224", false),
    (15, "0.15374", false),
    (16, "0.12176", false),
    (17, "9.5438e-02", false),
    (18, "7.3940e-02", false),
    (19, "5.6599e-02", false),
    (20, "4.2754e-02", false),
    (21, "3.1831e-02", false),
    (22, "2.3323e-02", false),
    (23, "1.6791e-02", false),
    (24, "1.1854e-02", false),
    (25, "8.1873e-03", false),
    (26, "5.5165e-03", false),
    (27, "3.6136e-03", false),
    (28, "2.2916e-03", false),
    (29, "1.3995e-03", false),
    (30, "8.1747e-04", false),
    (31, "4.5276e-04", false),
    (32, "2.3503e-04", false),
    (33, "1.1252e-04", false),
    (34, "4.8564e-05", false),
    (35, "1.8262e-05", false),
    (36, "5.6648e-06", false),
    (37, "1.3175e-06", false),
    (38, "1.9247e-07", true),
    (39, "1.1215e-08", true),
    (40, "4.1916e-11", true),
];

const RK4_0G_ROWS: &[(u32, &str, bool)] = &[
    (1, "1.7864563", false),
    (2, "1.5595812", false),
    (3, "1.3546211", false),
    (4, "1.1704091", false),
    (5, "1.0057168", false),
    (6, "0.8592746", false),
    (7, "0.7297888", false),
    (8, "0.6159592", false),
    (9, "0.5164938", false),
    (10, "0.4301231", false),
    (11, "0.3556114", false),
    (12, "0.2917683", false),
    (13, "0.2374567", false),
    (14, "0.1916004", false),
    (15, "0.1531898", false),
    (16, "0.1212858", false),
    (17, "9.5022481e-02", false),
    (18, "7.3608067e-02", false),
    (19, "5.6325397e-02", false),
    (20, "4.2530440e-02", false),
    (21, "3.1650256e-02", false),
    (22, "2.3180032e-02", false),
    (23, "1.6679434e-02", false),
    (24, "1.1768423e-02", false),
    (25, "8.1226859e-03", false),
    (26, "5.4687973e-03", false),
    (27, "3.5792655e-03", false),
    (28, "2.2675456e-03", false),
    (29, "1.3831324e-03", false),
    (30, "8.0680818e-04", false),
    (31, "4.4611287e-04", false),
    (32, "2.3077899e-04", false),
    (33, "9.4777816e-05", false),
];

const VSCA0G_ROWS: &[(u32, &str, bool)] = &[
    (1, "1.7864488", false),
    (2, "1.5595638", false),
    (3, "1.3546072", false),
    (4, "1.1703990", false),
    (5, "1.0057071", false),
    (6, "0.8592631", false),
    (7, "0.7297908", false),
    (8, "0.6159534", false),
    (9, "0.5164882", false),
    (10, "0.4301217", false),
    (11, "0.3556148", false),
    (12, "0.2917693", false),
    (13, "0.2374560", false),
    (14, "0.1916002", false),
    (15, "0.1531893", false),
    (16, "0.1212854", false),
    (17, "9.5022588e-02", false),
    (18, "7.3608452e-02", false),
    (19, "5.6325744e-02", false),
    (20, "4.2530867e-02", false),
    (21, "3.1650591e-02", false),
    (22, "2.3180420e-02", false),
    (23, "1.6679756e-02", false),
    (24, "1.1768655e-02", false),
    (25, "8.1228816e-03", false),
    (26, "5.4689541e-03", false),
    (27, "3.5793742e-03", false),
    (28, "2.2676168e-03", false),
    (29, "1.3831806e-03", false),
    (30, "8.0683859e-04", false),
    (31, "4.4613249e-04", false),
    (32, "2.3110168e-04", false),
    (33, "1.1035443e-04", false),
    (34, "4.7468345e-05", false),
    (35, "1.7767388e-05", false),
    (36, "5.4747950e-06", false),
    (37, "1.2597092e-06", false),
    (38, "1.2716754e-07", false),
];

const STW1U_ROWS: &[(u32, &str, bool)] = &[
    (1, "0.13212", false),
    (2, "9.0192e-02", false),
    (3, "5.9574e-02", false),
    (4, "3.7896e-02", false),
    (5, "2.3080e-02", false),
    (6, "1.3359e-02", false),
    (7, "7.2787e-03", false),
    (8, "3.6849e-03", false),
    (9, "1.7024e-03", false),
    (10, "6.9904e-04", false),
    (11, "2.4492e-04", false),
    (12, "6.8430e-05", false),
    (13, "1.3446e-05", false),
    (14, "1.4122e-06", false),
    (15, "3.8739e-08", true),
    (16, "1.2735e-12", true),
];

const RK4_1U_ROWS: &[(u32, &str, bool)] = &[
    (1, "0.1319536", false),
    (2, "9.0057392e-02", false),
    (3, "5.9472159e-02", false),
    (4, "3.7821597e-02", false),
    (5, "2.3027828e-02", false),
    (6, "1.3324091e-02", false),
    (7, "7.2562182e-03", false),
    (8, "3.6714971e-03", false),
    (9, "1.6950002e-03", false),
    (10, "6.9533077e-04", false),
    (11, "2.4102039e-04", false),
];

const VSCA1U_ROWS: &[(u32, &str, bool)] = &[
    (1, "0.13244150", false),
    (2, "9.07598688e-02", false),
    (3, "6.01645742e-02", false),
    (4, "3.83982868e-02", false),
    (5, "2.34584275e-02", false),
    (6, "1.36187753e-02", false),
    (7, "7.44243743e-03", false),
    (8, "3.77999552e-03", false),
    (9, "1.75281307e-03", false),
    (10, "7.23013793e-04", false),
    (11, "2.54856605e-04", false),
    (12, "7.18249908e-05", false),
    (13, "1.43120199e-05", false),
    (14, "1.53931042e-06", false),
    (15, "4.66022073e-09", false),
];

const TROST_LJ_ROWS: &[(u32, &str, bool)] = &[
    (1, "0.9410460", false),
    (2, "0.8300020", false),
    (3, "0.7276457", false),
    (4, "0.6336930", false),
    (5, "0.5478520", false),
    (6, "0.4698229", false),
    (7, "0.3992968", false),
    (8, "0.3359561", false),
    (9, "0.2794734", false),
    (10, "0.2295117", false),
    (11, "0.1857237", false),
    (12, "0.1477514", false),
    (13, "0.1152259", false),
    (14, "8.7766914e-02", false),
    (15, "6.4982730e-02", false),
    (16, "4.6469911e-02", false),
    (17, "3.1813309e-02", false),
    (18, "2.0586161e-02", false),
    (19, "1.2350373e-02", false),
    (20, "6.6570240e-03", false),
    (21, "3.0471360e-03", false),
    (22, "1.0527480e-03", false),
    (23, "1.9834000e-04", false),
    (24, "2.6970000e-06", false),
];

const RK4_LJ_ROWS: &[(u32, &str, bool)] = &[
    (1, "0.9410450", false),
    (2, "0.8299980", false),
    (3, "0.7276400", false),
    (4, "0.6336860", false),
    (5, "0.5478430", false),
    (6, "0.4698130", false),
    (7, "0.3992870", false),
    (8, "0.3359470", false),
    (9, "0.2794670", false),
    (10, "0.2295070", false),
    (11, "0.1857220", false),
    (12, "0.1477510", false),
    (13, "0.1152270", false),
    (14, "8.776970e-02", false),
    (15, "6.498640e-02", false),
    (16, "4.647400e-02", false),
    (17, "3.181750e-02", false),
    (18, "2.059000e-02", false),
    (19, "1.235370e-02", false),
    (20, "6.659580e-03", false),
    (21, "3.048890e-03", false),
    (22, "1.053690e-03", false),
    (23, "1.645210e-04", false),
];

const VSCA_LJ_ROWS: &[(u32, &str, bool)] = &[
    (1, "0.9410443", false),
    (2, "0.8299963", false),
    (3, "0.7276415", false),
    (4, "0.6336915", false),
    (5, "0.5478480", false),
    (6, "0.4698206", false),
    (7, "0.3992947", false),
    (8, "0.3359533", false),
    (9, "0.2794718", false),
    (10, "0.2295109", false),
    (11, "0.1857222", false),
    (12, "0.1477498", false),
    (13, "0.1152247", false),
    (14, "8.7766358e-02", false),
    (15, "6.4982534e-02", false),
    (16, "4.6469838e-02", false),
    (17, "3.1813146e-02", false),
    (18, "2.0585953e-02", false),
    (19, "1.2350173e-02", false),
    (20, "6.6568735e-03", false),
    (21, "3.0470500e-03", false),
    (22, "1.0526883e-03", false),
    (23, "1.9832170e-04", false),
    (24, "2.6957891e-06", false),
];

const TABLES: &[RawTable] = &[
    RawTable { name: "stw0g", description: "Na2 0g- levels of the earlier semiclassical calculation", unit: Unit::Wavenumber, sign: SignConvention::Negative, rows: STW0G_ROWS },
    RawTable { name: "rk4_0g", description: "Na2 0g- levels, fixed-step RK4", unit: Unit::Wavenumber, sign: SignConvention::Negative, rows: RK4_0G_ROWS },
    RawTable { name: "vsca0g", description: "Na2 0g- levels, variable-step series", unit: Unit::Wavenumber, sign: SignConvention::Negative, rows: VSCA0G_ROWS },
    RawTable { name: "stw1u", description: "Na2 1u levels of the earlier semiclassical calculation", unit: Unit::Wavenumber, sign: SignConvention::Positive, rows: STW1U_ROWS },
    RawTable { name: "rk4_1u", description: "Na2 1u levels, fixed-step RK4", unit: Unit::Wavenumber, sign: SignConvention::Positive, rows: RK4_1U_ROWS },
    RawTable { name: "vsca1u", description: "Na2 1u levels, variable-step series", unit: Unit::Wavenumber, sign: SignConvention::Positive, rows: VSCA1U_ROWS },
    RawTable { name: "trost_lj", description: "Lennard-Jones B = 1e4 levels of the reference calculation", unit: Unit::EpsilonWell, sign: SignConvention::Negative, rows: TROST_LJ_ROWS },
    RawTable { name: "rk4_lj", description: "Lennard-Jones B = 1e4 levels, fixed-step RK4", unit: Unit::EpsilonWell, sign: SignConvention::Negative, rows: RK4_LJ_ROWS },
    RawTable { name: "vsca_lj", description: "Lennard-Jones B = 1e4 levels, variable-step series", unit: Unit::EpsilonWell, sign: SignConvention::Negative, rows: VSCA_LJ_ROWS },
];

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::{Digest, Sha256};

    const FIXTURE: &str = include_str!("../data/reference_tables.tsv");
    const FIXTURE_SHA256: &str = "ecf5018a7125cc1e6e5d98c73cf17578c0ad325db28a3c2454171d8a901d7bc8";

    #[test]
    fn embedded_tables_match_fixture() {
        assert_eq!(render_fixture(), FIXTURE);
    }

    #[test]
    fn fixture_checksum() {
        let digest = Sha256::digest(FIXTURE.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(hex, FIXTURE_SHA256);
    }

    #[test]
    fn indices_contiguous_from_one() {
        for t in all_tables() {
            for (k, r) in t.rows.iter().enumerate() {
                assert_eq!(r.index as usize, k + 1, "{}", t.name);
                assert!(r.magnitude > 0.0);
            }
        }
    }

    #[test]
    fn row_counts_and_flags() {
        let counts: Vec<(String, usize)> = all_tables().iter().map(|t| (t.name.clone(), t.rows.len())).collect();
        let counts: Vec<(&str, usize)> = counts.iter().map(|(n, c)| (n.as_str(), *c)).collect();
        assert_eq!(
            counts,
            vec![
                ("stw0g", 40),
                ("rk4_0g", 33),
                ("vsca0g", 38),
                ("stw1u", 16),
                ("rk4_1u", 11),
                ("vsca1u", 15),
                ("trost_lj", 24),
                ("rk4_lj", 23),
                ("vsca_lj", 24),
            ]
        );
        let stw = table("stw0g").unwrap();
        let ext: Vec<u32> = stw.rows.iter().filter(|r| r.extrapolated).map(|r| r.index).collect();
        assert_eq!(ext, vec![38, 39, 40]);
        let stw = table("stw1u").unwrap();
        let ext: Vec<u32> = stw.rows.iter().filter(|r| r.extrapolated).map(|r| r.index).collect();
        assert_eq!(ext, vec![15, 16]);
    }

    #[test]
    fn printed_values() {
        let t = table("vsca_lj").unwrap();
        assert_eq!(t.printed_energy(&t.rows[0]), -0.9410443);
        assert_eq!(t.row(24).unwrap().magnitude, 2.6957891e-6);
        let t = table("vsca1u").unwrap();
        assert_eq!(t.printed_energy(&t.rows[0]), 0.13244150);
        assert_eq!(t.unit, Unit::Wavenumber);
        assert_eq!(table("trost_lj").unwrap().unit, Unit::EpsilonWell);
        assert_eq!(table("vsca0g").unwrap().row(1).unwrap().text, "1.7864488");
    }

    #[test]
    fn unknown_table() {
        assert!(matches!(table("nope"), Err(ReferenceError::Unknown(..))));
    }
}
