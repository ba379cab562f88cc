//! Batch front-end: read a config, run one pipeline, write the report,
//! rasters and a manifest into the output directory.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid config, 3 pipeline error.

mod config;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use config::{parse_config, Command, ConfigErrors, ExperimentConfig};

use crate::classify::{classify_minimal_set, ClassifyParams, LadderSource};
use crate::dynamics::{
    denjoy_product_set, orbit_closure_raster, rotation_set_estimate, MapFamily, RotationParams, RotationSetEstimate,
    TorusMapSpec,
};
use crate::error::{Error, Result};
use crate::fill::fill_torus;
use crate::grid::pgm::{decode_set, encode_labels, encode_set};
use crate::grid::{complement, connected_components, Adjacency, GridResolution, TorusGridSet};
use crate::properties::{run_all, SuiteOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;

/// Orbit rasterization used by `simulate` for families without a
/// construction raster.
pub const ORBIT_BATCH: usize = 4096;
pub const ORBIT_WINDOW: usize = 4;
pub const ORBIT_MAX_ITER: usize = 1 << 20;

#[derive(Parser, Debug)]
#[command(
    name = "torus-minimal",
    about = "Classify minimal sets of torus homeomorphisms on a grid"
)]
pub struct Args {
    /// Experiment config, one key=value per line.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Seed for the randomized property suites.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the hardware count.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Recompute even when the manifest matches.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactEntry {
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub config_sha256: String,
    pub command: String,
    pub seed: u64,
    /// "cache hit" or "cache miss".
    pub cache: String,
    pub canonical_config: String,
    pub artifacts: Vec<ArtifactEntry>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Cache key: the canonical config plus the seed.
pub fn config_key(cfg: &ExperimentConfig, seed: u64) -> String {
    sha256_hex(format!("{}seed={seed}\n", cfg.canonical()).as_bytes())
}

/// The files a run produces, report first.
pub struct RunOutput {
    pub artifacts: Vec<(String, Vec<u8>)>,
    /// Set when the run finished but found violations.
    pub failure: Option<String>,
}

#[derive(Serialize)]
struct RotationSetReport<'a> {
    family: &'static str,
    n_samples: usize,
    n_iter: usize,
    estimate: &'a RotationSetEstimate,
}

#[derive(Serialize)]
struct PropertyReport<'a> {
    seed: u64,
    suites: &'a [SuiteOutcome],
}

fn map_of(cfg: &ExperimentConfig) -> Result<TorusMapSpec> {
    cfg.map()
        .ok_or_else(|| Error::InvalidInput("config does not describe a map".into()))
}

fn classify_params(cfg: &ExperimentConfig) -> ClassifyParams {
    ClassifyParams {
        horizon: cfg.horizon,
        rotation: RotationParams {
            tol: cfg.tol,
            max_denominator: cfg.max_denominator,
            ..RotationParams::default()
        },
        ladder: cfg.ladder.clone(),
        nonwandering: cfg.nonwandering,
        ..ClassifyParams::default()
    }
}

/// The set `simulate` starts from: the construction raster for Denjoy
/// products, otherwise the orbit closure of the seed point.
pub fn simulated_set(cfg: &ExperimentConfig, map: &TorusMapSpec, n: GridResolution) -> Result<TorusGridSet> {
    if cfg.family == Some(MapFamily::DenjoyProduct) {
        Ok(denjoy_product_set(cfg.alpha, cfg.beta, cfg.gap_budget, cfg.truncation, n)?.set)
    } else {
        Ok(orbit_closure_raster(map, cfg.seed_point, n, ORBIT_BATCH, ORBIT_WINDOW, ORBIT_MAX_ITER).set)
    }
}

fn analysis_artifacts(
    cfg: &ExperimentConfig,
    map: &TorusMapSpec,
    m: &TorusGridSet,
    ladder: Option<LadderSource<'_>>,
) -> Result<RunOutput> {
    let report = classify_minimal_set(map, m, &classify_params(cfg), ladder)?;
    let fill = fill_torus(m, false)?;
    let comp = complement(m);
    let mut artifacts = vec![
        (
            "report.json".to_string(),
            format!("{}\n", report.to_json()).into_bytes(),
        ),
        ("minimal_set.pgm".to_string(), encode_set(m)),
        ("fill.pgm".to_string(), encode_set(&fill.filled)),
    ];
    if let Some(c) = &report.circloid {
        artifacts.push(("circloid.pgm".to_string(), encode_set(c)));
    }
    artifacts.push((
        "complement_components.pgm".to_string(),
        encode_labels(&connected_components(&comp), m.n()),
    ));
    Ok(RunOutput {
        artifacts,
        failure: None,
    })
}

/// Runs the pipeline a config names, without touching the disk except to
/// read `input`.
pub fn execute(cfg: &ExperimentConfig, seed: u64) -> Result<RunOutput> {
    match cfg.command {
        Command::Simulate => {
            let map = map_of(cfg)?;
            let n = cfg.n.ok_or_else(|| Error::InvalidInput("simulate needs n".into()))?;
            let m = simulated_set(cfg, &map, n)?;
            let source = |r: GridResolution| simulated_set(cfg, &map, r);
            let ladder: Option<LadderSource<'_>> = cfg.ladder.as_ref().map(|_| &source as LadderSource<'_>);
            analysis_artifacts(cfg, &map, &m, ladder)
        }
        Command::AnalyzeSet => {
            let map = map_of(cfg)?;
            let path = cfg
                .input
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("analyze-set needs input".into()))?;
            let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let m = decode_set(&bytes, Adjacency::EIGHT)?;
            if let Some(n) = cfg.n {
                if n.n() != m.n() {
                    return Err(Error::InvalidInput(format!(
                        "input raster has n={}, config says n={}",
                        m.n(),
                        n.n()
                    )));
                }
            }
            analysis_artifacts(cfg, &map, &m, None)
        }
        Command::RotationSet => {
            let map = map_of(cfg)?;
            let estimate = rotation_set_estimate(&map, cfg.n_samples, cfg.n_iter)?;
            let report = RotationSetReport {
                family: map.family().name(),
                n_samples: cfg.n_samples,
                n_iter: cfg.n_iter,
                estimate: &estimate,
            };
            let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
            Ok(RunOutput {
                artifacts: vec![("report.json".into(), format!("{json}\n").into_bytes())],
                failure: None,
            })
        }
        Command::PropertySuite => {
            let suites = run_all(seed);
            let failure = suites
                .iter()
                .find(|o| !o.passed())
                .map(|o| format!("suite {} has {} violations", o.name, o.violations));
            let json = serde_json::to_string_pretty(&PropertyReport { seed, suites: &suites })
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(RunOutput {
                artifacts: vec![("report.json".into(), format!("{json}\n").into_bytes())],
                failure,
            })
        }
    }
}

/// The manifest in `out` when it records `key` and every artifact it lists
/// is present with the recorded hash.
fn cached(out: &Path, key: &str) -> Option<Manifest> {
    let m: Manifest = serde_json::from_slice(&fs::read(out.join("manifest.json")).ok()?).ok()?;
    let fresh = m.config_sha256 == key
        && m.artifacts.iter().all(|a| {
            fs::read(out.join(&a.file))
                .map(|b| sha256_hex(&b) == a.sha256)
                .unwrap_or(false)
        });
    fresh.then_some(m)
}

fn write_manifest(out: &Path, m: &Manifest) -> std::io::Result<()> {
    let json = serde_json::to_string_pretty(m).expect("manifest serializes");
    fs::write(out.join("manifest.json"), format!("{json}\n"))
}

/// Full run: parse, consult the cache, compute, write. Returns the exit code
/// and prints diagnostics to stderr.
pub fn run(args: &Args) -> i32 {
    let text = match fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("config: cannot read {}: {e}", args.config.display());
            return EXIT_CONFIG;
        }
    };
    let cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(errs) => {
            for line in &errs.0 {
                eprintln!("{line}");
            }
            return EXIT_CONFIG;
        }
    };
    let key = config_key(&cfg, args.seed);
    if !args.no_cache {
        if let Some(mut m) = cached(&args.out, &key) {
            m.cache = "cache hit".into();
            if let Err(e) = write_manifest(&args.out, &m) {
                eprintln!("{}: {e}", args.out.display());
                return EXIT_IO;
            }
            println!("cache hit: {}", args.out.display());
            return EXIT_OK;
        }
    }

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("threads: {e}");
            return EXIT_IO;
        }
    };
    let output = match pool.install(|| execute(&cfg, args.seed)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_PIPELINE;
        }
    };

    let written: std::io::Result<Vec<ArtifactEntry>> = (|| {
        fs::create_dir_all(&args.out)?;
        // A stale manifest must not vouch for a half-written directory.
        let _ = fs::remove_file(args.out.join("manifest.json"));
        output
            .artifacts
            .iter()
            .map(|(file, bytes)| {
                fs::write(args.out.join(file), bytes)?;
                Ok(ArtifactEntry {
                    file: file.clone(),
                    sha256: sha256_hex(bytes),
                })
            })
            .collect()
    })();
    let artifacts = match written {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{}: {e}", args.out.display());
            return EXIT_IO;
        }
    };
    if let Some(f) = output.failure {
        eprintln!("{f}");
        return EXIT_PIPELINE;
    }
    let manifest = Manifest {
        config_sha256: key,
        command: cfg.command.name().into(),
        seed: args.seed,
        cache: "cache miss".into(),
        canonical_config: cfg.canonical().into(),
        artifacts,
    };
    if let Err(e) = write_manifest(&args.out, &manifest) {
        eprintln!("{}: {e}", args.out.display());
        return EXIT_IO;
    }
    println!("wrote {}", args.out.display());
    EXIT_OK
}

/// Entry point for the binary: parses `argv` and runs.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Args::try_parse_from(argv) {
        Ok(a) => run(&a),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_OK
            }
        }
    }
}
