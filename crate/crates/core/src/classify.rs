//! Assignment of a three-qubit density matrix to the type I / II / III
//! taxonomy, with the III subtype given by how many two-mode negativities
//! are nonzero.

use serde::Serialize;

use crate::entanglement::{tripartite_negativity, EntanglementReport};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Mode};

/// Major class: separable, bipartite-only, or fully tripartite entangled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Major {
    #[serde(rename = "I")]
    Separable,
    #[serde(rename = "II")]
    BipartiteOnly,
    #[serde(rename = "III")]
    Tripartite,
}

impl Major {
    pub fn label(self) -> &'static str {
        match self {
            Major::Separable => "I",
            Major::BipartiteOnly => "II",
            Major::Tripartite => "III",
        }
    }
}

/// Subtype of class III: the number of entangled qubit pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subtype {
    #[serde(rename = "III-0")]
    Zero,
    #[serde(rename = "III-1")]
    One,
    #[serde(rename = "III-2")]
    Two,
    #[serde(rename = "III-3")]
    Three,
}

impl Subtype {
    pub fn label(self) -> &'static str {
        match self {
            Subtype::Zero => "III-0",
            Subtype::One => "III-1",
            Subtype::Two => "III-2",
            Subtype::Three => "III-3",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Subtype::Zero => 0,
            Subtype::One => 1,
            Subtype::Two => 2,
            Subtype::Three => 3,
        }
    }
}

/// Classification result. `zero_pattern` lists (n_ij > eps, n_ik > eps,
/// n_jk > eps); for III-1 the pivot is the mode outside the entangled pair,
/// for III-2 the mode shared by both entangled pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateClass {
    pub major: Major,
    pub subtype: Option<Subtype>,
    pub zero_pattern: [bool; 3],
    pub pivot: Option<Mode>,
    #[serde(skip)]
    pub report: EntanglementReport,
}

impl StateClass {
    pub const CSV_HEADER: [&'static str; 6] = [
        "major",
        "subtype",
        "pattern_ij",
        "pattern_ik",
        "pattern_jk",
        "pivot",
    ];

    pub fn csv_fields(&self) -> [String; 6] {
        [
            self.major.label().to_string(),
            self.subtype
                .map(|s| s.label().to_string())
                .unwrap_or_default(),
            (self.zero_pattern[0] as u8).to_string(),
            (self.zero_pattern[1] as u8).to_string(),
            (self.zero_pattern[2] as u8).to_string(),
            self.pivot
                .map(|p| p.label().to_string())
                .unwrap_or_default(),
        ]
    }
}

/// Classify from an already computed report.
pub fn classify_report(report: &EntanglementReport, epsilon: f64) -> Result<StateClass> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let pattern = report.zero_pattern(epsilon);
    let entangled_pairs = pattern.iter().filter(|&&b| b).count();

    if report.n_ijk <= epsilon {
        let major = if entangled_pairs == 0 {
            Major::Separable
        } else {
            Major::BipartiteOnly
        };
        return Ok(StateClass {
            major,
            subtype: None,
            zero_pattern: pattern,
            pivot: None,
            report: *report,
        });
    }

    let subtype = match entangled_pairs {
        0 => Subtype::Zero,
        1 => Subtype::One,
        2 => Subtype::Two,
        _ => Subtype::Three,
    };
    // pattern slots are pairs (i,j), (i,k), (j,k); the mode absent from a
    // pair slot is k, j, i respectively.
    let absent = [Mode::K, Mode::J, Mode::I];
    let pivot = match subtype {
        Subtype::One => pattern.iter().position(|&b| b).map(|slot| absent[slot]),
        Subtype::Two => pattern.iter().position(|&b| !b).map(|slot| absent[slot]),
        _ => None,
    };
    Ok(StateClass {
        major: Major::Tripartite,
        subtype: Some(subtype),
        zero_pattern: pattern,
        pivot,
        report: *report,
    })
}

/// Classify a density matrix directly.
pub fn classify_state(rho3: &ComplexMatrix, epsilon: f64) -> Result<StateClass> {
    let report = tripartite_negativity(rho3)?;
    classify_report(&report, epsilon)
}
