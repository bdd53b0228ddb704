//! Ensemble scans: evaluate every sampled family member, persist one CSV row
//! per state with full provenance, and report per-column extrema.
//!
//! Besides the Monte-Carlo draws, a scan appends deterministic boundary rows
//! sweeping every edge of the family's probability simplex (all but two
//! support probabilities pinned to zero). Random sampling under-covers the
//! simplex boundary, and the extremal physics lives there: the degenerate
//! corner states carry the exact standard-quantum-limit values and the edges
//! carry the published extremal curves.

use std::path::Path;

use rayon::prelude::*;

use crate::classify::{classify_report, StateClass};
use crate::entanglement::{tripartite_negativity, EntanglementReport};
use crate::error::{Error, Result};
use crate::families::{
    build_state, pure_density, sample_family_with_pivot, AmplitudeMode, Family, FamilySpec,
    SamplerConfig,
};
use crate::linalg::Mode;
use crate::squeezing::{lambda_closed_form, squeeze_report, SqueezeReport};

/// Number of grid points per simplex-edge boundary sweep.
pub const BOUNDARY_GRID_POINTS: usize = 1000;
/// Closed-form vs numeric agreement demanded of every scanned record.
pub const CLOSED_NUMERIC_TOL: f64 = 1e-9;

/// Where a scan row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordSource {
    Sample,
    Boundary,
}

impl RecordSource {
    pub fn label(self) -> &'static str {
        match self {
            RecordSource::Sample => "sample",
            RecordSource::Boundary => "boundary",
        }
    }
}

/// One fully evaluated state.
#[derive(Debug, Clone)]
pub struct ScanRecord {
    pub index: usize,
    pub source: RecordSource,
    pub spec: FamilySpec,
    pub entanglement: EntanglementReport,
    pub squeeze_numeric: SqueezeReport,
    pub squeeze_closed: Option<SqueezeReport>,
    pub class: StateClass,
}

/// Evaluate a single spec into a record (without index/source bookkeeping).
pub fn evaluate_spec(spec: &FamilySpec, epsilon: f64) -> Result<ScanRecord> {
    let state = build_state(spec)?;
    let rho = pure_density(&state);
    let entanglement = tripartite_negativity(&rho)?;
    let squeeze_numeric = squeeze_report(&rho)?;
    let squeeze_closed = if spec.family != Family::General && spec.is_real_nonnegative() {
        let closed = lambda_closed_form(spec)?;
        let deviation = closed.max_deviation(&squeeze_numeric);
        if deviation > CLOSED_NUMERIC_TOL {
            return Err(Error::ClosedFormMismatch {
                deviation,
                spec: spec.to_json().to_string(),
            });
        }
        Some(closed)
    } else {
        None
    };
    let class = classify_report(&entanglement, epsilon)?;
    Ok(ScanRecord {
        index: 0,
        source: RecordSource::Sample,
        spec: spec.clone(),
        entanglement,
        squeeze_numeric,
        squeeze_closed,
        class,
    })
}

/// Column-wise minima and maxima over the scanned ensemble.
#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub family: Family,
    pub rows: usize,
    pub sampled: usize,
    pub boundary: usize,
    /// (column name, min, max) for every negativity and lambda column.
    pub columns: Vec<(String, f64, f64)>,
}

impl ScanSummary {
    pub fn column(&self, name: &str) -> Option<(f64, f64)> {
        self.columns
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|&(_, lo, hi)| (lo, hi))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "family {}  rows {} (sampled {}, boundary {})\n",
            self.family, self.rows, self.sampled, self.boundary
        ));
        for (name, lo, hi) in &self.columns {
            out.push_str(&format!("  {name:12} min {lo:.12}  max {hi:.12}\n"));
        }
        out
    }
}

/// The edge sweeps of a family simplex: every unordered pair of support
/// kets, all other probabilities zero, inclusive endpoints.
pub fn boundary_specs(family: Family, pivot: Mode) -> Vec<FamilySpec> {
    let dim = family.support_size();
    let mut specs = Vec::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            for g in 0..=BOUNDARY_GRID_POINTS {
                let t = g as f64 / BOUNDARY_GRID_POINTS as f64;
                let mut probs = vec![0.0f64; dim];
                probs[a] = 1.0 - t;
                probs[b] = t;
                specs.push(
                    FamilySpec::from_probabilities(family, pivot, &probs)
                        .expect("edge point is a valid spec"),
                );
            }
        }
    }
    specs
}

/// Run a scan: `cfg.count` Monte-Carlo rows plus the boundary sweeps.
pub fn run_scan(family: Family, cfg: SamplerConfig, epsilon: f64) -> Result<Vec<ScanRecord>> {
    run_scan_with_pivot(family, Mode::I, cfg, epsilon)
}

pub fn run_scan_with_pivot(
    family: Family,
    pivot: Mode,
    cfg: SamplerConfig,
    epsilon: f64,
) -> Result<Vec<ScanRecord>> {
    let mut specs: Vec<(RecordSource, FamilySpec)> = sample_family_with_pivot(family, pivot, cfg)
        .map(|s| (RecordSource::Sample, s))
        .collect();
    if family != Family::General && cfg.amplitude_mode == AmplitudeMode::RealNonnegative {
        specs.extend(
            boundary_specs(family, pivot)
                .into_iter()
                .map(|s| (RecordSource::Boundary, s)),
        );
    }
    let mut records = specs
        .par_iter()
        .map(|(source, spec)| {
            evaluate_spec(spec, epsilon).map(|mut record| {
                record.source = *source;
                record
            })
        })
        .collect::<Result<Vec<ScanRecord>>>()?;
    for (index, record) in records.iter_mut().enumerate() {
        record.index = index;
    }
    Ok(records)
}

/// Reduce records to per-column extrema.
pub fn summarize(family: Family, records: &[ScanRecord]) -> ScanSummary {
    let mut columns: Vec<(String, f64, f64)> = EntanglementReport::CSV_HEADER
        .iter()
        .chain(SqueezeReport::CSV_HEADER.iter())
        .map(|&name| (name.to_string(), f64::INFINITY, f64::NEG_INFINITY))
        .collect();
    for record in records {
        let values: Vec<f64> = record
            .entanglement
            .csv_fields()
            .into_iter()
            .chain(record.squeeze_numeric.csv_fields())
            .collect();
        for (slot, v) in values.into_iter().enumerate() {
            if v < columns[slot].1 {
                columns[slot].1 = v;
            }
            if v > columns[slot].2 {
                columns[slot].2 = v;
            }
        }
    }
    ScanSummary {
        family,
        rows: records.len(),
        sampled: records
            .iter()
            .filter(|r| r.source == RecordSource::Sample)
            .count(),
        boundary: records
            .iter()
            .filter(|r| r.source == RecordSource::Boundary)
            .count(),
        columns,
    }
}

/// Fixed CSV header for scan files.
pub fn csv_header() -> Vec<&'static str> {
    let mut header = vec!["index", "source"];
    header.extend(EntanglementReport::CSV_HEADER);
    header.extend(SqueezeReport::CSV_HEADER);
    header.extend([
        "closed_lambda_ij",
        "closed_lambda_ik",
        "closed_lambda_jk",
        "closed_lambda_ijk",
    ]);
    header.extend(StateClass::CSV_HEADER);
    header.push("spec");
    header
}

/// 17-significant-digit decimal rendering, locale-free.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render records as CSV bytes (fixed header, deterministic formatting).
pub fn records_to_csv(records: &[ScanRecord]) -> Result<Vec<u8>> {
    let mut csv = csv::WriterBuilder::new().from_writer(Vec::new());
    let io_err = |source: csv::Error| Error::InvalidArgument(format!("csv write: {source}"));
    csv.write_record(csv_header()).map_err(io_err)?;
    for record in records {
        let mut row: Vec<String> =
            vec![record.index.to_string(), record.source.label().to_string()];
        row.extend(record.entanglement.csv_fields().map(format_float));
        row.extend(record.squeeze_numeric.csv_fields().map(format_float));
        match &record.squeeze_closed {
            Some(closed) => row.extend(closed.csv_fields().map(format_float)),
            None => row.extend(["", "", "", ""].map(String::from)),
        }
        row.extend(record.class.csv_fields());
        row.push(record.spec.to_json().to_string());
        csv.write_record(&row).map_err(io_err)?;
    }
    csv.into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv flush: {e}")))
}

/// Run a scan and persist it; returns the summary.
pub fn scan_to_file(
    family: Family,
    pivot: Mode,
    cfg: SamplerConfig,
    epsilon: f64,
    out: &Path,
) -> Result<ScanSummary> {
    let records = run_scan_with_pivot(family, pivot, cfg, epsilon)?;
    let bytes = records_to_csv(&records)?;
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|source| Error::Io {
                path: parent.display().to_string(),
                source,
            })?;
        }
    }
    std::fs::write(out, bytes).map_err(|source| Error::Io {
        path: out.display().to_string(),
        source,
    })?;
    Ok(summarize(family, &records))
}
