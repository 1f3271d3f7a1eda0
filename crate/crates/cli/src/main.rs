//! `misub`: conventional vs MI-ranked subspace selection from the command line.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric
//! failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use misub_core::experiment::{fit_basis, run_experiment, synth_demo};
use misub_core::mi::rank_bases;
use misub_core::{
    basis_difference, Dataset, Error, ErrorClass, ExperimentConfig, ReportFormat, Result,
    TransformKind,
};

#[derive(Parser)]
#[command(
    name = "misub",
    version,
    about = "Conventional vs mutual-information subspace base selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a transform on a dataset and write its bases as CSV.
    Bases(FitArgs),
    /// Rank the bases of a transform by MI with the labels and write the ranking as CSV.
    Rank {
        #[command(flatten)]
        fit: FitArgs,
        /// Histogram bins; defaults to ⌈√N⌉ clamped to [4, 64].
        #[arg(long)]
        bins: Option<usize>,
    },
    /// Run the conventional vs MI comparison described by a config file.
    Eval {
        /// Flat `key = value` config file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
        /// Report destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "md", value_parser = parse_format)]
        format: ReportFormat,
        /// Also write every per-repeat accuracy as long-form CSV.
        #[arg(long)]
        details: Option<PathBuf>,
    },
    /// Basis difference (%) between two index lists, or the per-fraction
    /// difference table of an experiment.
    Diff {
        #[arg(long, value_delimiter = ',', requires = "b", conflicts_with = "config")]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',', requires = "a")]
        b: Vec<usize>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Two elongated Gaussian classes, PCA to one dimension, NB on top.
    Synth {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 10)]
        bins: usize,
        /// Markdown summary destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-sample 1-d projections for both selectors.
        #[arg(long)]
        projections: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FitArgs {
    /// CSV with a header row.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = "label")]
    label_column: String,
    #[arg(long, value_parser = parse_transform)]
    transform: TransformKind,
    /// Seed of the random projection.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Absolute LDA ridge; scaled to the data when omitted.
    #[arg(long)]
    ridge: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Settings that override the config file, one per config key.
#[derive(Args, Default)]
struct Overrides {
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long)]
    label_column: Option<String>,
    #[arg(long)]
    transforms: Option<String>,
    #[arg(long)]
    selectors: Option<String>,
    #[arg(long)]
    fractions: Option<String>,
    #[arg(long)]
    classifiers: Option<String>,
    /// `auto` or a bin count.
    #[arg(long)]
    bins: Option<String>,
    #[arg(long)]
    repeats: Option<String>,
    #[arg(long)]
    train_fraction: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    stratified: Option<String>,
    #[arg(long)]
    standardize: Option<String>,
    /// `auto` or an absolute ridge.
    #[arg(long)]
    ridge: Option<String>,
    #[arg(long)]
    neighbors: Option<String>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<()> {
        let pairs = [
            ("dataset", &self.dataset),
            ("label_column", &self.label_column),
            ("transforms", &self.transforms),
            ("selectors", &self.selectors),
            ("fractions", &self.fractions),
            ("classifiers", &self.classifiers),
            ("bins", &self.bins),
            ("repeats", &self.repeats),
            ("train_fraction", &self.train_fraction),
            ("seed", &self.seed),
            ("stratified", &self.stratified),
            ("standardize", &self.standardize),
            ("ridge", &self.ridge),
            ("neighbors", &self.neighbors),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok(())
    }
}

fn parse_transform(s: &str) -> std::result::Result<TransformKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<ExperimentConfig> {
    let mut cfg = match path {
        Some(p) => ExperimentConfig::from_file(p)?,
        None => ExperimentConfig::default(),
    };
    overrides.apply(&mut cfg)?;
    cfg.validate()?;
    Ok(cfg)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn fit(args: &FitArgs) -> Result<(Dataset, misub_core::BasisSet)> {
    let ds = Dataset::load_csv(&args.data, &args.label_column)?;
    let basis = fit_basis(
        args.transform,
        ds.features(),
        ds.labels(),
        ds.num_classes(),
        args.ridge,
        args.seed,
    )?;
    Ok((ds, basis))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bases(args) => {
            let (_, basis) = fit(&args)?;
            let mut buf = Vec::new();
            basis.write_csv(&mut buf)?;
            emit(args.out.as_deref(), &String::from_utf8_lossy(&buf))
        }
        Command::Rank { fit: args, bins } => {
            let (ds, basis) = fit(&args)?;
            let bins = bins.unwrap_or_else(|| misub_core::mi::default_bins(ds.len()));
            let ranking = rank_bases(&basis, ds.features(), ds.labels(), ds.num_classes(), bins)?;
            let mut buf = Vec::new();
            ranking.write_csv(&mut buf)?;
            emit(args.out.as_deref(), &String::from_utf8_lossy(&buf))
        }
        Command::Eval {
            config,
            overrides,
            out,
            format,
            details,
        } => {
            let cfg = load_config(config.as_deref(), &overrides)?;
            let ds = cfg.load_dataset()?;
            let report = run_experiment(&cfg, &ds)?;
            if let Some(path) = details {
                fs::write(path, report.render_details_csv())?;
            }
            emit(out.as_deref(), &report.render(format))
        }
        Command::Diff {
            a,
            b,
            config,
            overrides,
        } => {
            if !a.is_empty() {
                if a.len() != b.len() {
                    return Err(Error::Config(format!(
                        "--a has {} indices, --b has {}",
                        a.len(),
                        b.len()
                    )));
                }
                let pct = basis_difference(&a, &b)?;
                return emit(None, &format!("{pct:.2}\n"));
            }
            if config.is_none() && overrides.dataset.is_none() {
                return Err(Error::Config(
                    "diff needs --a/--b or an experiment config".into(),
                ));
            }
            let cfg = load_config(config.as_deref(), &overrides)?;
            let ds = cfg.load_dataset()?;
            let report = run_experiment(&cfg, &ds)?;
            emit(None, &report.render_difference_csv())
        }
        Command::Synth {
            seed,
            repeats,
            bins,
            out,
            projections,
        } => {
            if repeats == 0 || bins < 2 {
                return Err(Error::Config(
                    "synth needs repeats >= 1 and bins >= 2".into(),
                ));
            }
            let demo = synth_demo(seed, repeats, bins)?;
            if let Some(path) = projections {
                fs::write(path, demo.projections_csv())?;
            }
            emit(out.as_deref(), &demo.summary_markdown())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Config => 2,
                ErrorClass::Data => 3,
                ErrorClass::Numeric => 4,
            })
        }
    }
}
