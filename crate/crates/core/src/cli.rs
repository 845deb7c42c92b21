//! The `trifold` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::foldgen::{build_counterexample, CounterexampleLayout, FoldLengths};
use crate::geometry::DEFAULT_EPS;
use crate::homology::{
    betti_in_window, persistent_homology, significance, vr_filtration, DistanceMatrix,
    Significance, DEFAULT_BUDGET,
};
use crate::linkage::{Configuration, Linkage, TorusPoint};
use crate::render::{render_configuration, render_layout};
use crate::witness::{
    closure_evidence, degree_matrix, embeddedness_profile, ClosureVerdict, PARKED_PARAM,
};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LAYOUT: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

/// Perturbation scale and trial count for the closure certificate.
pub const CLOSURE_DELTA: f64 = 1e-3;
pub const CLOSURE_TRIALS: usize = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "trifold",
    version,
    about = "Triple-fold linkage counterexamples and their certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realizability and triple-fold admissibility of a linkage file.
    Check { linkage: PathBuf },
    /// Construct the m-gadget counterexample layout.
    Build {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [2.0, 1.0, 2.0])]
        fold_lengths: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree, embeddedness and closure certificates of a layout.
    Certify {
        layout: PathBuf,
        #[arg(long, default_value_t = 720)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [16, 16])]
        grid: Vec<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Persistent homology of the sampled loop or torus image.
    Betti {
        layout: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Loop)]
        mode: Mode,
        /// Loop samples (loop mode).
        #[arg(long, default_value_t = 120)]
        points: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [16, 16])]
        grid: Vec<usize>,
        /// Highest homology dimension reported.
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG frame of a layout (at loop parameters) or of a configuration.
    Render {
        input: PathBuf,
        /// Loop parameters, one per gadget or a single value for all.
        #[arg(long, value_delimiter = ',', default_values_t = [0.0])]
        t: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Loop,
    Torus,
}

/// What a command prints on standard output.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: String,
    pub outputs: Value,
    pub timings_ms: BTreeMap<String, f64>,
    pub version: String,
    pub rng_seed: Option<u64>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LayoutFailure(_) => EXIT_LAYOUT,
            Error::TooLarge { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let echo = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(cli.command, echo) {
        Ok((report, code)) => {
            if let Some(report) = report {
                emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ));
            }
            code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Writes to standard output, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

/// Wall-clock time per named phase, in milliseconds.
#[derive(Debug)]
pub struct Timings {
    laps: BTreeMap<String, f64>,
    since: Instant,
}

impl Default for Timings {
    fn default() -> Self {
        Timings {
            laps: BTreeMap::new(),
            since: Instant::now(),
        }
    }
}

impl Timings {
    pub fn lap(&mut self, name: &str) {
        self.laps
            .insert(name.to_string(), self.since.elapsed().as_secs_f64() * 1e3);
        self.since = Instant::now();
    }

    pub fn into_map(self) -> BTreeMap<String, f64> {
        self.laps
    }
}

fn read_input(path: &Path) -> Result<(Vec<u8>, String), CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    Ok((bytes, digest))
}

fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], path: &Path) -> Result<T, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write_output(path: &Option<PathBuf>, contents: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, contents)
            .map_err(|e| CliError::input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

/// One value per gadget: a uniform list is repeated as needed, otherwise
/// the lengths must agree.
fn per_gadget<T: Copy + PartialEq>(values: &[T], m: usize, what: &str) -> Result<Vec<T>, CliError> {
    match values {
        vs if vs.len() == m => Ok(vs.to_vec()),
        [v, rest @ ..] if rest.iter().all(|r| r == v) => Ok(vec![*v; m]),
        vs => Err(CliError::input(format!(
            "{what} has {} entries for {m} gadgets",
            vs.len()
        ))),
    }
}

/// The report is `None` when the command already wrote its result to standard output.
fn execute(command: Command, echo: Vec<String>) -> Result<(Option<RunReport>, i32), CliError> {
    let mut timer = Timings::default();
    let version = env!("CARGO_PKG_VERSION").to_string();
    let (input_digest, outputs, seed, code) = match command {
        Command::Check { linkage } => {
            let (bytes, digest) = read_input(&linkage)?;
            let l: Linkage = parse_json(&bytes, &linkage)?;
            let admissible: Vec<bool> = (0..l.n()).map(|s| l.triple_fold_admissible(s)).collect();
            let starts: Vec<usize> = (0..l.n())
                .filter(|&s| admissible[s])
                .map(|s| s + 1)
                .collect();
            timer.lap("check");
            let out = json!({
                "n": l.n(),
                "realizable": l.is_realizable(),
                "triple_fold_admissible": admissible,
                "admissible_starts": starts,
            });
            (digest, out, None, 0)
        }
        Command::Build {
            m,
            fold_lengths,
            out,
        } => {
            let fold = FoldLengths::new(fold_lengths[0], fold_lengths[1], fold_lengths[2])?;
            let layout = build_counterexample(m as usize, fold)?;
            timer.lap("build");
            let text = serde_json::to_string_pretty(&layout).expect("layout serializes");
            write_output(&out, &text)?;
            let digest = hex::encode(Sha256::digest(format!("build m={m} fold={fold_lengths:?}")));
            let mut outputs = json!({ "n": layout.linkage().n(), "margins": layout.margins() });
            if out.is_none() {
                outputs["layout"] = serde_json::to_value(&layout).expect("layout serializes");
            }
            (digest, outputs, None, 0)
        }
        Command::Certify {
            layout,
            samples,
            grid,
            seed,
            out,
        } => {
            let (bytes, digest) = read_input(&layout)?;
            let layout: CounterexampleLayout = parse_json(&bytes, &layout)?;
            let grid = per_gadget(&grid, layout.m(), "grid")?;
            let (cert, ok) = certify(&layout, samples, &grid, seed, &mut timer)?;
            let text = serde_json::to_string_pretty(&cert).expect("certificate serializes");
            write_output(&out, &text)?;
            (
                digest,
                cert,
                Some(seed),
                if ok { 0 } else { EXIT_CERTIFICATE },
            )
        }
        Command::Betti {
            layout,
            mode,
            points,
            grid,
            max_dim,
            budget,
            seed,
            out,
        } => {
            let (bytes, digest) = read_input(&layout)?;
            let layout: CounterexampleLayout = parse_json(&bytes, &layout)?;
            let configs: Vec<Configuration> = match mode {
                Mode::Loop => {
                    let others = TorusPoint::from_params(&vec![PARKED_PARAM; layout.m()]);
                    layout
                        .sample_loop(0, points, &others)?
                        .into_iter()
                        .map(|(_, c)| c)
                        .collect()
                }
                Mode::Torus => {
                    let grid = per_gadget(&grid, layout.m(), "grid")?;
                    layout
                        .sample_torus(&grid)?
                        .into_iter()
                        .map(|(_, c)| c)
                        .collect()
                }
            };
            timer.lap("sample");
            let (diagram_json, outputs) = betti(&configs, max_dim, budget, &mut timer)?;
            write_output(&out, &diagram_json)?;
            let mut outputs = outputs;
            outputs["mode"] = json!(mode);
            if out.is_none() {
                outputs["diagram"] = serde_json::from_str(&diagram_json).expect("valid json");
            }
            (digest, outputs, Some(seed), 0)
        }
        Command::Render { input, t, out } => {
            let (bytes, digest) = read_input(&input)?;
            let value: Value = parse_json(&bytes, &input)?;
            let svg = if value.get("gadgets").is_some() {
                let layout: CounterexampleLayout = parse_json(&bytes, &input)?;
                let params = per_gadget(&t, layout.m(), "t")?;
                render_layout(&layout, &params)?
            } else {
                let config: Configuration = parse_json(&bytes, &input)?;
                render_configuration(&config, &[])
            };
            timer.lap("render");
            if out.is_none() {
                emit(&svg);
                return Ok((None, 0));
            }
            write_output(&out, &svg)?;
            (digest, json!({ "svg_bytes": svg.len() }), None, 0)
        }
    };
    let report = RunReport {
        command: echo,
        input_digest,
        outputs,
        timings_ms: timer.into_map(),
        version,
        rng_seed: seed,
    };
    Ok((Some(report), code))
}

/// Runs every certificate; returns the certificate document and whether the
/// counterexample contract holds.
pub fn certify(
    layout: &CounterexampleLayout,
    samples: usize,
    grid: &[usize],
    seed: u64,
    timer: &mut Timings,
) -> Result<(Value, bool), CliError> {
    let m = layout.m();
    let mut failures: Vec<String> = Vec::new();

    let parked = TorusPoint::from_params(&vec![PARKED_PARAM; m]);
    let mut loops = Vec::with_capacity(m);
    for g in 0..m {
        let s = layout.sample_loop(g, samples, &parked)?;
        let residual = s
            .iter()
            .map(|(_, c)| c.max_relative_residual())
            .fold(0.0, f64::max);
        let p = embeddedness_profile(&s, DEFAULT_EPS);
        if (p.embedded, p.self_touching, p.crossing) != (samples - 1, 1, 0) {
            failures.push(format!(
                "loop {}: {} embedded, {} self-touching, {} crossing",
                g + 1,
                p.embedded,
                p.self_touching,
                p.crossing
            ));
        }
        loops.push(json!({
            "embedded": p.embedded,
            "self_touching": p.self_touching,
            "crossing": p.crossing,
            "max_residual": residual,
        }));
    }
    timer.lap("loop_profiles");

    let torus = layout.sample_torus(grid)?;
    let p = embeddedness_profile(&torus, DEFAULT_EPS);
    let interior: usize = grid.iter().map(|g| g - 1).product();
    if (p.embedded, p.self_touching, p.crossing) != (interior, torus.len() - interior, 0) {
        failures.push(format!(
            "grid: {} embedded, {} self-touching, {} crossing",
            p.embedded, p.self_touching, p.crossing
        ));
    }
    let grid_profile = json!({
        "embedded": p.embedded,
        "self_touching": p.self_touching,
        "crossing": p.crossing,
    });
    timer.lap("grid_profile");

    let degree = match degree_matrix(layout, samples) {
        Ok(d) => {
            if !d.is_signed_identity() {
                failures.push(format!(
                    "degree matrix {:?} is not a signed identity",
                    d.entries
                ));
            }
            serde_json::to_value(&d).expect("matrix serializes")
        }
        Err(e @ Error::InvalidArgument(_)) => return Err(e.into()),
        Err(e) => {
            failures.push(format!("degree matrix: {e}"));
            Value::Null
        }
    };
    timer.lap("degree_matrix");

    let aligned = layout.aligned_configuration()?;
    let closure = closure_evidence(&aligned, CLOSURE_TRIALS, CLOSURE_DELTA, seed);
    if closure.verdict != ClosureVerdict::FoundWitness {
        failures.push("no embedded configuration found near the aligned fold".into());
    }
    timer.lap("closure");

    let ok = failures.is_empty();
    let cert = json!({
        "degree_matrix": degree,
        "profile": { "loops": loops, "grid": grid_profile },
        "closure": closure,
        "contract_met": ok,
        "failures": failures,
    });
    Ok((cert, ok))
}

/// Persistence of a configuration cloud up to homology dimension
/// `max_dim`; returns the diagram JSON and the summary.
pub fn betti(
    configs: &[Configuration],
    max_dim: usize,
    budget: usize,
    timer: &mut Timings,
) -> Result<(String, Value), CliError> {
    if max_dim == 0 || max_dim > 2 {
        return Err(CliError::input(format!(
            "--max-dim must be 1 or 2, got {max_dim}"
        )));
    }
    let dist = DistanceMatrix::from_configurations(configs)?;
    let end = dist.enclosing_radius();
    let filtration = vr_filtration(&dist, end, max_dim + 1, budget)?;
    timer.lap("filtration");
    let diagram = persistent_homology(&filtration).truncated(max_dim);
    timer.lap("reduction");
    let sig: Vec<Significance> = (1..=max_dim)
        .map(|k| significance(&diagram, k, end))
        .collect();
    let scale = scale_for(&sig);
    let betti = scale.map(|r| betti_in_window(&diagram, r));
    let summary = json!({
        "points": configs.len(),
        "max_dim": max_dim,
        "max_diameter": end,
        "simplices": filtration.count_by_dim(),
        "scale": scale,
        "betti": betti,
        "significance": sig,
        "significant": sig.iter().all(Significance::is_significant),
    });
    Ok((diagram.to_json(), summary))
}

/// Midpoint of the common window of every dimension's claimed classes,
/// falling back to the lowest dimension's own window.
fn scale_for(sig: &[Significance]) -> Option<f64> {
    let windows: Vec<[f64; 2]> = sig.iter().filter_map(|s| s.window).collect();
    let lo = windows
        .iter()
        .map(|w| w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = windows.iter().map(|w| w[1]).fold(f64::INFINITY, f64::min);
    if !windows.is_empty() && lo < hi {
        Some(0.5 * (lo + hi))
    } else {
        sig.first().and_then(Significance::mid_scale)
    }
}
