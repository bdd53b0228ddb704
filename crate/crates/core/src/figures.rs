//! Figure datasets: scatter ensembles and pinned-probability boundary curves
//! for each published panel, written as CSV plus a JSON manifest.
//!
//! Panels are identified F2, F3a..F3e, F4a..F4e, F5, F6a/F6b, F7a..F7g,
//! F8a/F8b, F9a..F9f. Each maps to one or two (x, y) series over a family
//! ensemble; the manifest records the axis quantities so the files are
//! self-describing. Boundary curves pin support probabilities to zero until
//! one free parameter remains and sweep it on an inclusive grid.

use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec, SamplerConfig};
use crate::linalg::Mode;
use crate::scan::{evaluate_spec, format_float, ScanRecord};
use crate::search::Objective;

/// Points per boundary curve.
pub const CURVE_POINTS: usize = 1000;

/// One plotted series: which family ensemble and which two quantities.
#[derive(Debug, Clone)]
pub struct SeriesDef {
    pub label: String,
    pub family: Family,
    pub x: Objective,
    pub y: Objective,
}

/// A figure panel: its series and the families whose boundary curves it uses.
#[derive(Debug, Clone)]
pub struct FigureDef {
    pub id: String,
    pub series: Vec<SeriesDef>,
}

fn series(label: &str, family: Family, x: Objective, y: Objective) -> SeriesDef {
    SeriesDef {
        label: label.to_string(),
        family,
        x,
        y,
    }
}

/// Resolve a figure id (case-insensitive) to its definition.
pub fn figure_def(id: &str) -> Result<FigureDef> {
    use Family::*;
    use Objective::*;
    let key = id.trim().to_ascii_uppercase();
    // Canonical rendering: leading F and digit uppercase, panel letter low.
    let canonical: String = key
        .chars()
        .enumerate()
        .map(|(pos, c)| if pos == 0 { c } else { c.to_ascii_lowercase() })
        .collect();
    let def = |series: Vec<SeriesDef>| FigureDef {
        id: canonical.clone(),
        series,
    };
    let single =
        |family: Family, x: Objective, y: Objective| def(vec![series("main", family, x, y)]);
    Ok(match key.as_str() {
        "F2" => single(Iii0, NIjk, LambdaIjk),
        "F3A" => single(Iii1A, NJk, LambdaJk),
        "F3B" => single(Iii1A, NJk, LambdaIj),
        "F3C" => single(Iii1A, NIjk, LambdaIjk),
        "F3D" => single(Iii1A, LambdaJk, LambdaIjk),
        "F3E" => single(Iii1A, LambdaIj, LambdaIjk),
        "F4A" => single(Iii1B, NJk, LambdaJk),
        "F4B" => single(Iii1B, NJk, LambdaIj),
        "F4C" => single(Iii1B, NIjk, LambdaIjk),
        "F4D" => single(Iii1B, LambdaJk, LambdaIjk),
        "F4E" => single(Iii1B, LambdaIj, LambdaIjk),
        "F5" => def(vec![
            series("III-1A", Iii1A, NJk, NIjk),
            series("III-1B", Iii1B, NJk, NIjk),
        ]),
        "F6A" => single(Iii2, NIj, NIjk),
        "F6B" => single(Iii2, NIk, NIjk),
        "F7A" => def(vec![
            series("ij", Iii2, NIj, LambdaIj),
            series("ik", Iii2, NIk, LambdaIk),
        ]),
        "F7B" => single(Iii2, LambdaIj, LambdaJk),
        "F7C" => single(Iii2, LambdaIk, LambdaJk),
        "F7D" => single(Iii2, NIjk, LambdaIjk),
        "F7E" => single(Iii2, LambdaIj, LambdaIjk),
        "F7F" => single(Iii2, LambdaIk, LambdaIjk),
        "F7G" => single(Iii2, LambdaJk, LambdaIjk),
        "F8A" => single(Iii3, NIj, NIjk),
        "F8B" => def(vec![
            series("jk", Iii3, NJk, NIjk),
            series("ik", Iii3, NIk, NIjk),
        ]),
        "F9A" => def(vec![
            series("ij", Iii3, NIj, LambdaIj),
            series("ik", Iii3, NIk, LambdaIk),
        ]),
        "F9B" => single(Iii3, NJk, LambdaJk),
        "F9C" => single(Iii3, LambdaIj, LambdaJk),
        "F9D" => single(Iii3, NIjk, LambdaIjk),
        "F9E" => single(Iii3, LambdaIj, LambdaIjk),
        "F9F" => single(Iii3, LambdaIk, LambdaIjk),
        _ => return Err(Error::UnknownFigure(id.to_string())),
    })
}

/// All known figure ids.
pub fn figure_ids() -> Vec<&'static str> {
    vec![
        "F2", "F3a", "F3b", "F3c", "F3d", "F3e", "F4a", "F4b", "F4c", "F4d", "F4e", "F5", "F6a",
        "F6b", "F7a", "F7b", "F7c", "F7d", "F7e", "F7f", "F7g", "F8a", "F8b", "F9a", "F9b", "F9c",
        "F9d", "F9e", "F9f",
    ]
}

fn value_of(record: &ScanRecord, q: Objective) -> f64 {
    if q.is_lambda() {
        q.of_squeeze(&record.squeeze_numeric)
    } else {
        q.of_entanglement(&record.entanglement)
    }
}

/// A boundary curve: which probabilities were pinned to zero and the swept
/// (parameter, x, y) points.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    pub family: Family,
    /// Basis indices of the support kets pinned to zero probability.
    pub pinned: Vec<usize>,
    /// (free-ket a, free-ket b): parameter t puts probability t on b.
    pub edge: (usize, usize),
    pub samples: Vec<(f64, f64, f64)>,
}

/// Every boundary curve of a family: pin all but two support kets to zero
/// and sweep the remaining edge.
pub fn boundary_curves(
    family: Family,
    pivot: Mode,
    x: Objective,
    y: Objective,
    epsilon: f64,
) -> Result<Vec<BoundaryCurve>> {
    let support = family.support(pivot);
    let dim = support.len();
    let mut curves = Vec::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            let pinned: Vec<usize> = support
                .iter()
                .enumerate()
                .filter(|(slot, _)| *slot != a && *slot != b)
                .map(|(_, &ket)| ket)
                .collect();
            let samples = (0..=CURVE_POINTS)
                .into_par_iter()
                .map(|g| {
                    let t = g as f64 / CURVE_POINTS as f64;
                    let mut probs = vec![0.0f64; dim];
                    probs[a] = 1.0 - t;
                    probs[b] = t;
                    let spec = FamilySpec::from_probabilities(family, pivot, &probs)?;
                    let record = evaluate_spec(&spec, epsilon)?;
                    Ok((t, value_of(&record, x), value_of(&record, y)))
                })
                .collect::<Result<Vec<_>>>()?;
            curves.push(BoundaryCurve {
                family,
                pinned,
                edge: (support[a], support[b]),
                samples,
            });
        }
    }
    Ok(curves)
}

/// Files produced for one figure.
#[derive(Debug, Clone)]
pub struct FigureFiles {
    pub scatter: std::path::PathBuf,
    pub boundaries: Vec<std::path::PathBuf>,
    pub manifest: std::path::PathBuf,
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Generate the scatter CSV, boundary-curve CSVs, and manifest for a figure.
pub fn figure_dataset(
    id: &str,
    cfg: SamplerConfig,
    epsilon: f64,
    out_dir: &Path,
) -> Result<FigureFiles> {
    let def = figure_def(id)?;
    std::fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.display().to_string(),
        source,
    })?;

    // Scatter: all series over their family ensembles (samples only).
    let mut scatter = String::from("series,x,y\n");
    for s in &def.series {
        let specs: Vec<FamilySpec> =
            crate::families::sample_family_with_pivot(s.family, Mode::I, cfg).collect();
        let rows = specs
            .par_iter()
            .map(|spec| {
                let record = evaluate_spec(spec, epsilon)?;
                Ok((value_of(&record, s.x), value_of(&record, s.y)))
            })
            .collect::<Result<Vec<_>>>()?;
        for (x, y) in rows {
            scatter.push_str(&format!(
                "{},{},{}\n",
                s.label,
                format_float(x),
                format_float(y)
            ));
        }
    }
    let scatter_path = out_dir.join("scatter.csv");
    write_file(&scatter_path, scatter.as_bytes())?;

    // Boundary curves, one file per (series family, pinned set).
    let mut boundary_paths = Vec::new();
    let mut manifest_curves = Vec::new();
    let mut seen_families = Vec::new();
    for s in &def.series {
        if seen_families.contains(&s.family) {
            continue;
        }
        seen_families.push(s.family);
        for curve in boundary_curves(s.family, Mode::I, s.x, s.y, epsilon)? {
            let pin_tag = if curve.pinned.is_empty() {
                "full".to_string()
            } else {
                curve
                    .pinned
                    .iter()
                    .map(|k| format!("P{k:03b}"))
                    .collect::<Vec<_>>()
                    .join("_")
            };
            let name = format!("boundary_{}_{}.csv", s.family.name(), pin_tag);
            let mut text = String::from("parameter,x,y\n");
            for (t, x, y) in &curve.samples {
                text.push_str(&format!(
                    "{},{},{}\n",
                    format_float(*t),
                    format_float(*x),
                    format_float(*y)
                ));
            }
            let path = out_dir.join(&name);
            write_file(&path, text.as_bytes())?;
            manifest_curves.push(serde_json::json!({
                "file": name,
                "family": s.family.name(),
                "pinned_zero": curve.pinned.iter().map(|k| format!("{k:03b}")).collect::<Vec<_>>(),
                "edge": [format!("{:03b}", curve.edge.0), format!("{:03b}", curve.edge.1)],
            }));
            boundary_paths.push(path);
        }
    }

    let manifest = serde_json::json!({
        "figure": def.id,
        "family": def
            .series
            .iter()
            .map(|s| s.family.name())
            .collect::<Vec<_>>()
            .join("+"),
        "seed": cfg.seed,
        "count": cfg.count,
        "measure": cfg.measure.name(),
        "amplitude_mode": cfg.amplitude_mode.name(),
        "epsilon": epsilon,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "series": def
            .series
            .iter()
            .map(|s| {
                serde_json::json!({
                    "label": s.label,
                    "family": s.family.name(),
                    "x": s.x.name(),
                    "y": s.y.name(),
                })
            })
            .collect::<Vec<_>>(),
        "boundaries": manifest_curves,
    });
    let manifest_path = out_dir.join("manifest.json");
    write_file(
        &manifest_path,
        serde_json::to_string_pretty(&manifest)
            .expect("manifest is serializable")
            .as_bytes(),
    )?;

    Ok(FigureFiles {
        scatter: scatter_path,
        boundaries: boundary_paths,
        manifest: manifest_path,
    })
}
