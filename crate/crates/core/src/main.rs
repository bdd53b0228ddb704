use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trimode::error::Error;
use trimode::families::{AmplitudeMode, Family, Measure, SamplerConfig};
use trimode::figures::figure_dataset;
use trimode::linalg::Mode;
use trimode::scan::scan_to_file;
use trimode::search::{find_extremum, squeeze_threshold_with_pivot, Objective, Pin};
use trimode::table::table_one;
use trimode::verify::{render_report, run_all, DEFAULT_SEED};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "trimode",
    version,
    about = "Entanglement and squeezing scans for three-qubit states as truncated three-mode bosonic systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// RNG seed; identical invocations produce byte-identical outputs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Ensemble size; defaults to the per-family convention
    /// (1e4 for III-0 and GENERAL, 1e5 otherwise).
    #[arg(long, global = true)]
    count: Option<usize>,

    /// Sampling measure (sphere | simplex).
    #[arg(long, global = true, default_value = "sphere")]
    measure: String,

    /// Amplitude regime (real-nonneg | real-signed | complex).
    #[arg(long = "amplitude-mode", global = true, default_value = "real-nonneg")]
    amplitude_mode: String,

    /// Zero-classification threshold for negativities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    epsilon: f64,
}

impl CommonOpts {
    fn sampler(&self, family: Family) -> Result<SamplerConfig, Error> {
        let measure = match self.measure.to_ascii_lowercase().as_str() {
            "sphere" | "sphere-uniform" => Measure::SphereUniform,
            "simplex" | "simplex-uniform" => Measure::SimplexUniform,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown measure '{other}' (sphere | simplex)"
                )))
            }
        };
        let amplitude_mode = match self.amplitude_mode.to_ascii_lowercase().as_str() {
            "real-nonneg" | "real-nonnegative" => AmplitudeMode::RealNonnegative,
            "real-signed" => AmplitudeMode::RealSigned,
            "complex" => AmplitudeMode::Complex,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown amplitude mode '{other}' (real-nonneg | real-signed | complex)"
                )))
            }
        };
        Ok(SamplerConfig {
            seed: self.seed,
            count: self.count.unwrap_or_else(|| family.default_count()),
            amplitude_mode,
            measure,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo scan of a family; writes one CSV row per state.
    Scan {
        #[command(flatten)]
        common: CommonOpts,
        /// Family: iii-0 | iii-1a | iii-1b | iii-2 | iii-3 | general.
        #[arg(long)]
        family: String,
        /// Pivot mode orientation (i | j | k).
        #[arg(long, default_value = "i")]
        pivot: String,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the scatter and boundary-curve datasets of one figure panel.
    Figure {
        #[command(flatten)]
        common: CommonOpts,
        /// Figure id, e.g. f2, f3a, f7g.
        #[arg(long)]
        id: String,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Grid-plus-refinement extremum of a lambda or negativity field.
    Extremum {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "i")]
        pivot: String,
        /// Objective field, e.g. lambda_jk, N_ijk.
        #[arg(long)]
        objective: String,
        /// Maximize instead of minimize.
        #[arg(long)]
        maximize: bool,
        /// Pin a support probability: KET=VALUE, e.g. 000=0 (repeatable).
        #[arg(long = "pin")]
        pins: Vec<String>,
        /// Grid divisions per free direction before refinement.
        #[arg(long, default_value_t = 400)]
        resolution: usize,
        /// Optional JSON output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest three-mode negativity among three-mode-squeezed states.
    Threshold {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "i")]
        pivot: String,
        /// Optional JSON output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the qualitative entanglement/squeezing matrix.
    Table1 {
        #[command(flatten)]
        common: CommonOpts,
        /// Optional text output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite; nonzero exit on any failed criterion.
    /// Criteria pin their own ensemble sizes and tolerances; only --seed
    /// applies.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Report output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Force one synthetic failing criterion (test fixture).
        #[arg(long, hide = true)]
        inject_failure: bool,
    },
}

fn parse_family(name: &str) -> Result<Family, Error> {
    Family::from_name(name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown family '{name}'")))
}

fn parse_pivot(name: &str) -> Result<Mode, Error> {
    name.chars()
        .next()
        .and_then(Mode::from_label)
        .filter(|_| name.len() == 1)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown pivot '{name}' (i | j | k)")))
}

fn parse_pin(text: &str) -> Result<Pin, Error> {
    let bad = || Error::InvalidArgument(format!("pin '{text}' must look like 000=0.25"));
    let (ket_text, value_text) = text.split_once('=').ok_or_else(bad)?;
    let ket_text = ket_text.trim();
    let ket = usize::from_str_radix(ket_text, 2).map_err(|_| bad())?;
    if ket > 7 || ket_text.len() != 3 {
        return Err(bad());
    }
    let probability: f64 = value_text.trim().parse().map_err(|_| bad())?;
    Ok(Pin { ket, probability })
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), Error> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|source| Error::Io {
                path: parent.display().to_string(),
                source,
            })?;
        }
    }
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Scan {
            common,
            family,
            pivot,
            out,
        } => {
            let family = parse_family(&family)?;
            let pivot = parse_pivot(&pivot)?;
            let cfg = common.sampler(family)?;
            let summary = scan_to_file(family, pivot, cfg, common.epsilon, &out)?;
            print!("{}", summary.render());
            println!("wrote {}", out.display());
            Ok(0)
        }
        Command::Figure { common, id, out } => {
            // The family comes from the figure definition; --count overrides
            // its default ensemble size.
            let def = trimode::figures::figure_def(&id)?;
            let family = def.series[0].family;
            let cfg = common.sampler(family)?;
            let files = figure_dataset(&id, cfg, common.epsilon, &out)?;
            println!("wrote {}", files.scatter.display());
            for b in &files.boundaries {
                println!("wrote {}", b.display());
            }
            println!("wrote {}", files.manifest.display());
            Ok(0)
        }
        Command::Extremum {
            common,
            family,
            pivot,
            objective,
            maximize,
            pins,
            resolution,
            out,
        } => {
            let family = parse_family(&family)?;
            let pivot = parse_pivot(&pivot)?;
            let objective = Objective::from_name(&objective).ok_or_else(|| {
                Error::InvalidArgument(format!("unknown objective '{objective}'"))
            })?;
            let pins = pins
                .iter()
                .map(|p| parse_pin(p))
                .collect::<Result<Vec<_>, _>>()?;
            let result = find_extremum(family, pivot, objective, maximize, &pins, resolution)?;
            let json = serde_json::json!({
                "family": result.family.name(),
                "pivot": result.pivot.label().to_string(),
                "objective": result.objective.name(),
                "maximize": result.maximize,
                "constraints": result
                    .constraints
                    .iter()
                    .map(|(ket, v)| serde_json::json!({"ket": format!("{ket:03b}"), "probability": v}))
                    .collect::<Vec<_>>(),
                "value": result.value,
                "arg": result.arg.to_json(),
                "probabilities": result.arg.probabilities(),
            });
            let text = serde_json::to_string_pretty(&json).expect("serializable");
            println!("{text}");
            if let Some(path) = out {
                write_out(&path, &text)?;
            }
            let _ = common;
            Ok(0)
        }
        Command::Threshold {
            common,
            family,
            pivot,
            out,
        } => {
            let family = parse_family(&family)?;
            let pivot = parse_pivot(&pivot)?;
            let cfg = common.sampler(family)?;
            let result = squeeze_threshold_with_pivot(family, pivot, cfg)?;
            let json = serde_json::json!({
                "family": result.family.name(),
                "max_n_ijk": result.max_n_ijk,
                "any_squeezed": result.any_squeezed,
                "witness": result.witness.as_ref().map(|w| w.to_json()),
            });
            let text = serde_json::to_string_pretty(&json).expect("serializable");
            println!("{text}");
            if let Some(path) = out {
                write_out(&path, &text)?;
            }
            Ok(0)
        }
        Command::Table1 { common, out } => {
            let cfg = SamplerConfig::new(common.seed, common.count.unwrap_or(10_000));
            let table = table_one(cfg)?;
            let mut text = table.render();
            text.push_str(&format!(
                "matches published matrix: {}\n",
                if table.matches_reference() {
                    "yes"
                } else {
                    "no"
                }
            ));
            print!("{text}");
            if let Some(path) = out {
                write_out(&path, &text)?;
            }
            Ok(0)
        }
        Command::Verify {
            common,
            out,
            inject_failure,
        } => {
            let mut results = run_all(common.seed)?;
            if inject_failure {
                results.push(trimode::verify::CriterionResult {
                    id: "C99".into(),
                    description: "injected failure (test fixture)".into(),
                    measured: "corrupted".into(),
                    expected: "never passes".into(),
                    pass: false,
                });
            }
            let report = render_report(&results);
            match out {
                Some(path) => {
                    write_out(&path, &report)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{report}"),
            }
            if results.iter().all(|r| r.pass) {
                Ok(0)
            } else {
                Ok(EXIT_VERIFY)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Io { .. } => EXIT_IO,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}
