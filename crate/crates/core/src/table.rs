//! Qualitative presence/absence matrix of entanglement and squeezing across
//! the five families: eight property rows by five family columns, each cell
//! answered by witness search (ensemble plus extremal refinement), never by
//! table lookup.

use crate::error::Result;
use crate::families::{Family, SamplerConfig, PARAMETRIC_FAMILIES};
use crate::linalg::Mode;
use crate::scan::{run_scan, summarize};
use crate::search::{find_extremum, Objective};

/// Witness margin: a property counts as present only if a state clears the
/// boundary by more than this.
const MARGIN: f64 = 1e-6;

/// Row order of the qualitative matrix.
pub const ROWS: [(&str, Objective); 8] = [
    ("N_ij != 0", Objective::NIj),
    ("N_jk != 0", Objective::NJk),
    ("N_ik != 0", Objective::NIk),
    ("N_ijk != 0", Objective::NIjk),
    ("lambda_ij < 2", Objective::LambdaIj),
    ("lambda_jk < 2", Objective::LambdaJk),
    ("lambda_ik < 2", Objective::LambdaIk),
    ("lambda_ijk < 3", Objective::LambdaIjk),
];

/// Column order of the qualitative matrix.
pub const COLUMNS: [Family; 5] = PARAMETRIC_FAMILIES;

/// The published reference matrix (rows as in [`ROWS`], columns as in
/// [`COLUMNS`]).
pub const REFERENCE: [[bool; 5]; 8] = [
    [false, false, false, true, true],
    [false, true, true, false, true],
    [false, false, false, true, true],
    [true, true, true, true, true],
    [false, true, false, true, true],
    [false, true, true, true, false],
    [false, true, false, true, true],
    [false, true, true, true, true],
];

#[derive(Debug, Clone)]
pub struct TableOne {
    pub cells: [[bool; 5]; 8],
    /// The witness value backing each cell decision (extremal value found).
    pub extrema: [[f64; 5]; 8],
}

impl TableOne {
    pub fn matches_reference(&self) -> bool {
        self.cells == REFERENCE
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:16}", ""));
        for family in COLUMNS {
            out.push_str(&format!("{:>8}", family.name()));
        }
        out.push('\n');
        for (row, (label, _)) in ROWS.iter().enumerate() {
            out.push_str(&format!("{label:16}"));
            for col in 0..COLUMNS.len() {
                out.push_str(&format!(
                    "{:>8}",
                    if self.cells[row][col] { "yes" } else { "no" }
                ));
            }
            out.push('\n');
        }
        out
    }
}

/// Build the matrix: a cell is "yes" iff a witness state exists in the
/// family with the property (negativity above threshold, or variance below
/// its standard quantum limit).
pub fn table_one(cfg: SamplerConfig) -> Result<TableOne> {
    let mut cells = [[false; 5]; 8];
    let mut extrema = [[0.0f64; 5]; 8];
    for (col, family) in COLUMNS.iter().enumerate() {
        // Ensemble extrema (samples plus boundary sweeps)...
        let records = run_scan(*family, cfg, crate::entanglement::ZERO_NEGATIVITY_EPS)?;
        let summary = summarize(*family, &records);
        // ...sharpened by a deterministic extremum search per row.
        let resolution = if family.support_size() >= 4 { 60 } else { 200 };
        for (row, (_, objective)) in ROWS.iter().enumerate() {
            let maximize = !objective.is_lambda();
            let refined = find_extremum(*family, Mode::I, *objective, maximize, &[], resolution)?;
            let (lo, hi) = summary
                .column(objective.name())
                .expect("summary has all columns");
            let (value, present) = if maximize {
                let value = refined.value.max(hi);
                (value, value > MARGIN)
            } else {
                let value = refined.value.min(lo);
                let sql = if *objective == Objective::LambdaIjk {
                    3.0
                } else {
                    2.0
                };
                (value, value < sql - MARGIN)
            };
            cells[row][col] = present;
            extrema[row][col] = value;
        }
    }
    Ok(TableOne { cells, extrema })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_matches_the_reference() {
        // Modest ensemble: the boundary sweeps and extremum searches carry
        // the decisions, sampling only corroborates.
        let cfg = SamplerConfig::new(17, 2000);
        let table = table_one(cfg).unwrap();
        assert!(
            table.matches_reference(),
            "mismatch:\n{}\nextrema: {:?}",
            table.render(),
            table.extrema
        );
    }

    #[test]
    fn spot_checks() {
        let cfg = SamplerConfig::new(23, 1000);
        let table = table_one(cfg).unwrap();
        let col = |f: Family| COLUMNS.iter().position(|&x| x == f).unwrap();
        // III-0 never squeezes in three modes.
        assert!(!table.cells[7][col(Family::Iii0)]);
        // III-1B shows no squeezing in the (i,j) pair.
        assert!(!table.cells[4][col(Family::Iii1B)]);
        // III-2 squeezes the (j,k) pair.
        assert!(table.cells[5][col(Family::Iii2)]);
        // III-3 never squeezes the (j,k) pair.
        assert!(!table.cells[5][col(Family::Iii3)]);
    }
}
