mod config;
mod output;

use carleson::{
    carleson_intensity, growth_experiment, growth_reports, phi_spectrum, ratio_lower_bound,
    verify_analysis_lemmas, verify_construction_lemmas, CheckReport, WaveletProfile,
};
use clap::{Parser, Subcommand, ValueEnum};
use config::{apply_file, validate, OutputFormat, RunConfig};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "carleson",
    about = "Dyadic wavelet measure on the disk: spectra, Carleson intensity, embedding form, growth experiments, verification suites",
    version
)]
struct Cli {
    /// JSON config file; command-line flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path (defaults to <command>.json / experiment.csv)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print nothing but the output path
    #[arg(long, global = true)]
    quiet: bool,
    /// Worker threads (1 pins the bit-exact serial schedule; 0 = all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized parts of the verification nets
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Wavelet ramp: polynomial-c3 | smooth-cinf
    #[arg(long, global = true)]
    ramp: Option<RampArg>,
    /// Deepest dyadic rank scanned / verified
    #[arg(long, global = true)]
    max_rank: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RampArg {
    #[value(name = "polynomial-c3")]
    PolynomialC3,
    #[value(name = "smooth-cinf")]
    SmoothCinf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Construction,
    Analysis,
    Growth,
}

#[derive(Subcommand)]
enum Command {
    /// Export the sparse Taylor spectrum of the analytic density
    Spectrum {
        #[arg(long)]
        dim: u32,
    },
    /// Scan dyadic arcs for the largest Gram eigenvalue
    Intensity {
        #[arg(long)]
        dim: u32,
    },
    /// Embedding form by both routes plus the intensity-normalized ratio
    Embedding {
        #[arg(long)]
        dim: u32,
    },
    /// Growth table over a list of dimensions (CSV)
    Experiment {
        #[arg(long, value_delimiter = ',')]
        dims: Vec<u32>,
    },
    /// Run a verification suite and report pass/fail per check
    Verify {
        #[arg(long)]
        suite: SuiteArg,
        #[arg(long)]
        dim: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<u32>>,
        /// Relative-distance truncation for the off-diagonal sums
        #[arg(long)]
        max_rd: Option<u64>,
    },
}

enum RunError {
    /// invalid input or configuration -> exit 2
    Invalid(String),
    /// a verification verdict failed -> exit 1
    VerdictFailed(usize),
}

impl From<carleson::Error> for RunError {
    fn from(e: carleson::Error) -> Self {
        RunError::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::VerdictFailed(count)) => {
            eprintln!("{count} verification check(s) failed");
            ExitCode::from(1)
        }
        Err(RunError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), RunError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Invalid(format!("config {}: {e}", path.display())))?;
        let file = serde_json::from_str(&text)
            .map_err(|e| RunError::Invalid(format!("config {}: {e}", path.display())))?;
        apply_file(&mut cfg, file).map_err(RunError::Invalid)?;
    }
    if let Some(out) = cli.out.clone() {
        cfg.out = Some(out);
    }
    cfg.quiet = cli.quiet;
    if let Some(threads) = cli.threads {
        cfg.threads = threads;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(ramp) = cli.ramp {
        cfg.ramp = match ramp {
            RampArg::PolynomialC3 => carleson::Ramp::PolynomialC3,
            RampArg::SmoothCinf => carleson::Ramp::SmoothCinf,
        };
    }
    if let Some(r) = cli.max_rank {
        cfg.max_rank = Some(r);
    }
    match &cli.command {
        Command::Spectrum { dim } | Command::Intensity { dim } | Command::Embedding { dim } => {
            cfg.dims = vec![*dim];
        }
        Command::Experiment { dims } => {
            if !dims.is_empty() {
                cfg.dims = dims.clone();
            }
        }
        Command::Verify { dim, dims, .. } => {
            if let Some(d) = dims {
                cfg.dims = d.clone();
            } else if let Some(d) = dim {
                cfg.dims = vec![*d];
            }
        }
    }
    validate(&cfg).map_err(RunError::Invalid)?;
    if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build_global()
            .map_err(|e| RunError::Invalid(format!("thread pool: {e}")))?;
    }
    let profile = WaveletProfile::new(cfg.ramp);
    match cli.command {
        Command::Spectrum { dim } => {
            require_format(&cfg, OutputFormat::Json)?;
            let spectrum = phi_spectrum(&profile, dim)?;
            let parameters = json!({"dim": dim, "ramp": cfg.ramp.name()});
            let doc = output::spectrum_document(parameters, &spectrum);
            let path = write_output(&cfg, "spectrum.json", output::render_json(&doc))?;
            finish(&cfg, &path, format!("spectrum: {} entries, dim {dim}", spectrum.len()));
            Ok(())
        }
        Command::Intensity { dim } => {
            require_format(&cfg, OutputFormat::Json)?;
            let max_rank = cfg.max_rank.unwrap_or_else(|| default_max_rank(dim));
            let spectrum = phi_spectrum(&profile, dim)?;
            let result = carleson_intensity(&spectrum, max_rank)?;
            let parameters = json!({"dim": dim, "ramp": cfg.ramp.name(), "max_rank": max_rank});
            let doc = output::intensity_document(parameters, dim, &result);
            let path = write_output(&cfg, "intensity.json", output::render_json(&doc))?;
            finish(
                &cfg,
                &path,
                format!(
                    "intensity: {:.6} at rank {} index {}",
                    result.value, result.witness.rank, result.witness.index
                ),
            );
            Ok(())
        }
        Command::Embedding { dim } => {
            require_format(&cfg, OutputFormat::Json)?;
            let max_rank = cfg.max_rank.unwrap_or_else(|| default_max_rank(dim));
            let result = ratio_lower_bound(&profile, dim, max_rank)?;
            let parameters = json!({"dim": dim, "ramp": cfg.ramp.name(), "max_rank": max_rank});
            let doc = output::embedding_document(parameters, &result);
            let path = write_output(&cfg, "embedding.json", output::render_json(&doc))?;
            finish(
                &cfg,
                &path,
                format!(
                    "embedding: spectral {:.6}, paper {:.6}, gap {:.3e}, ratio {:.6}",
                    result.value_spectral,
                    result.value_paper,
                    result.relative_gap,
                    result.ratio_lower_bound
                ),
            );
            Ok(())
        }
        Command::Experiment { .. } => {
            require_format(&cfg, OutputFormat::Csv)?;
            if cfg.dims.is_empty() {
                return Err(RunError::Invalid("experiment needs --dims".into()));
            }
            let cap = cfg.max_rank.unwrap_or(20);
            let table = growth_experiment(&profile, &cfg.dims, cap)?;
            let path = write_output(&cfg, "experiment.csv", output::experiment_csv(&table))?;
            if !cfg.quiet {
                if let Some(slope) = table.slope_value_per_n_vs_ln {
                    println!("LSQ slope of value/N vs ln N: {slope:.4}");
                }
                if let (Some(v), Some(i), Some(r)) =
                    (table.value_band, table.intensity_band, table.ratio_band)
                {
                    println!(
                        "bands: value/(N ln N) {v:.4}, intensity {i:.4}, ratio/sqrt(ln N) {r:.4}"
                    );
                }
            }
            finish(&cfg, &path, String::new());
            if let Some(reason) = table.aborted {
                return Err(RunError::Invalid(format!("experiment aborted: {reason}")));
            }
            Ok(())
        }
        Command::Verify { suite, max_rd, .. } => {
            require_format(&cfg, OutputFormat::Json)?;
            let (checks, parameters) = match suite {
                SuiteArg::Construction => {
                    let dim = cfg.dims.first().copied().unwrap_or(8);
                    let max_rank = cfg.max_rank.unwrap_or(6);
                    let checks = verify_construction_lemmas(
                        &profile,
                        dim,
                        max_rank,
                        cfg.seed,
                        &cfg.thresholds,
                    )?;
                    (
                        checks,
                        json!({"suite": "construction", "dim": dim, "max_rank": max_rank,
                               "seed": cfg.seed, "ramp": cfg.ramp.name()}),
                    )
                }
                SuiteArg::Analysis => {
                    let max_rank = cfg.max_rank.unwrap_or(6);
                    let rd = max_rd.unwrap_or(8);
                    let checks = verify_analysis_lemmas(&profile, max_rank, rd, &cfg.thresholds)?;
                    (
                        checks,
                        json!({"suite": "analysis", "max_rank": max_rank, "max_rd": rd,
                               "ramp": cfg.ramp.name()}),
                    )
                }
                SuiteArg::Growth => {
                    let dims = if cfg.dims.is_empty() {
                        vec![8, 16, 32, 64, 128, 256]
                    } else {
                        cfg.dims.clone()
                    };
                    let cap = cfg.max_rank.unwrap_or(20);
                    let table = growth_experiment(&profile, &dims, cap)?;
                    let checks = growth_reports(&table, &cfg.thresholds);
                    (
                        checks,
                        json!({"suite": "growth", "dims": dims, "max_rank_cap": cap,
                               "ramp": cfg.ramp.name()}),
                    )
                }
            };
            let doc = output::verify_document(parameters, &checks);
            let path = write_output(&cfg, "verify.json", output::render_json(&doc))?;
            let failed: Vec<&CheckReport> = checks.iter().filter(|c| !c.passed()).collect();
            if !cfg.quiet {
                for c in &checks {
                    println!(
                        "{:<28} witnessed {:>12.6e}  threshold {:>10.3e}  {}",
                        c.name,
                        c.witnessed_constant,
                        c.threshold,
                        if c.passed() { "pass" } else { "FAIL" }
                    );
                }
            }
            finish(&cfg, &path, String::new());
            if failed.is_empty() {
                Ok(())
            } else {
                Err(RunError::VerdictFailed(failed.len()))
            }
        }
    }
}

fn default_max_rank(dim: u32) -> u32 {
    // the spectrum tops out near 2^N; deeper squares are covered by the
    // reported remainder bound, and the run-config cap is 20
    (dim + 2).min(20)
}

fn require_format(cfg: &RunConfig, wanted: OutputFormat) -> Result<(), RunError> {
    match cfg.format {
        None => Ok(()),
        Some(f) if f == wanted => Ok(()),
        Some(_) => Err(RunError::Invalid(
            "this command has a fixed output format (experiment: csv, others: json)".into(),
        )),
    }
}

fn write_output(cfg: &RunConfig, default_name: &str, content: String) -> Result<PathBuf, RunError> {
    let path = cfg.out.clone().unwrap_or_else(|| PathBuf::from(default_name));
    std::fs::write(&path, content)
        .map_err(|e| RunError::Invalid(format!("writing {}: {e}", path.display())))?;
    Ok(path)
}

fn finish(cfg: &RunConfig, path: &Path, summary: String) {
    if cfg.quiet {
        println!("{}", path.display());
    } else {
        if !summary.is_empty() {
            println!("{summary}");
        }
        println!("wrote {}", path.display());
    }
}
