//! Conventional-vs-MI comparison runs.
//!
//! For each repeated split, each transform is fitted on the training part
//! only, its bases are ranked by MI on the same training samples, and the
//! first `k = ⌈fraction·d⌉` bases are taken either in conventional order or
//! in MI order. Train and test samples are projected and each classifier is
//! scored on the test part. Accuracies are aggregated per
//! `(transform, selector, fraction, classifier)` cell.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::classify::{accuracy, ClassifierKind, DEFAULT_NEIGHBORS};
use crate::dataset::{make_splits, synth_gaussian, Dataset, SplitPlan, Standardizer};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mi::{self, default_bins, entropy, fano_lower_bound, rank_bases, FanoBound, MiRanking};
use crate::transforms::{dct_basis, lda_basis, pca_basis, rp_basis, BasisSet, TransformKind};

/// Mixed into the experiment seed to draw the random projection matrix, so
/// it does not share a stream with the split generator.
const RP_SEED_SALT: u64 = 0x5250_5f42_4153_4953;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Selector {
    Conventional,
    Mi,
}

impl Selector {
    pub fn label(self) -> &'static str {
        match self {
            Selector::Conventional => "conventional",
            Selector::Mi => "mi",
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "conventional" | "conv" => Ok(Selector::Conventional),
            "mi" => Ok(Selector::Mi),
            other => Err(Error::Config(format!("unknown selector `{other}`"))),
        }
    }
}

/// Histogram bin count for MI estimation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bins {
    /// `⌈√N_train⌉` clamped to `[4, 64]`.
    Auto,
    Fixed(usize),
}

impl Bins {
    pub fn resolve(self, n_train: usize) -> usize {
        match self {
            Bins::Auto => default_bins(n_train),
            Bins::Fixed(b) => b,
        }
    }
}

impl fmt::Display for Bins {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bins::Auto => f.write_str("auto"),
            Bins::Fixed(b) => write!(f, "{b}"),
        }
    }
}

/// Two-class Gaussian generator settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub n_per_class: usize,
    pub mean_a: Vec<f64>,
    pub mean_b: Vec<f64>,
    pub cov: Matrix,
    pub seed: u64,
}

impl Default for SynthSpec {
    /// 50 samples per class at `(0, ∓1)`, covariance `diag(25, 0.25)`: the
    /// high-variance axis carries no class information.
    fn default() -> Self {
        SynthSpec {
            n_per_class: 50,
            mean_a: vec![0.0, -1.0],
            mean_b: vec![0.0, 1.0],
            cov: Matrix::from_diag(&[25.0, 0.25]).expect("finite"),
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn generate(&self) -> Result<Dataset> {
        synth_gaussian(
            self.n_per_class,
            &self.mean_a,
            &self.mean_b,
            &self.cov,
            self.seed,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Csv { path: PathBuf, label_column: String },
    Synth(SynthSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub source: DataSource,
    pub transforms: Vec<TransformKind>,
    pub selectors: Vec<Selector>,
    pub fractions: Vec<f64>,
    pub classifiers: Vec<ClassifierKind>,
    pub bins: Bins,
    pub repeats: usize,
    pub train_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
    pub standardize: bool,
    /// Absolute LDA ridge; `None` scales with `trace(S_w)/d`.
    pub ridge: Option<f64>,
    pub neighbors: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            source: DataSource::Synth(SynthSpec::default()),
            transforms: TransformKind::ALL.to_vec(),
            selectors: vec![Selector::Conventional, Selector::Mi],
            fractions: vec![0.1, 0.3, 0.5, 0.7],
            classifiers: vec![ClassifierKind::Nb, ClassifierKind::Knn],
            bins: Bins::Auto,
            repeats: 5,
            train_fraction: 0.5,
            seed: 0,
            stratified: true,
            standardize: false,
            ridge: None,
            neighbors: DEFAULT_NEIGHBORS,
        }
    }
}

fn parse_list<T: FromStr<Err = Error>>(value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(T::from_str)
        .collect()
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}`")))
}

fn parse_floats(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(key, s))
        .collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(Error::Config(format!(
            "`{key}`: expected a boolean, got `{other}`"
        ))),
    }
}

impl ExperimentConfig {
    /// Parses flat `key = value` text; `#` starts a comment. Relative
    /// dataset paths are kept as written.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(cfg)
    }

    /// Reads a config file; a relative `dataset` path is resolved against
    /// the file's directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = ExperimentConfig::parse(&text)?;
        if let DataSource::Csv { path: data, .. } = &mut cfg.source {
            if data.is_relative() {
                if let Some(dir) = path.parent() {
                    *data = dir.join(&*data);
                }
            }
        }
        Ok(cfg)
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "dataset" => {
                let label_column = match &self.source {
                    DataSource::Csv { label_column, .. } => label_column.clone(),
                    DataSource::Synth(_) => "label".into(),
                };
                self.source = DataSource::Csv {
                    path: PathBuf::from(value),
                    label_column,
                };
            }
            "label_column" => match &mut self.source {
                DataSource::Csv { label_column, .. } => *label_column = value.to_owned(),
                DataSource::Synth(_) => {
                    return Err(Error::Config("`label_column` set before `dataset`".into()))
                }
            },
            "synth" => {
                if parse_bool(key, value)? {
                    self.source = DataSource::Synth(SynthSpec {
                        seed: self.seed,
                        ..SynthSpec::default()
                    });
                }
            }
            "synth_n_per_class" => self.synth_mut()?.n_per_class = parse_num(key, value)?,
            "synth_mean_a" => self.synth_mut()?.mean_a = parse_floats(key, value)?,
            "synth_mean_b" => self.synth_mut()?.mean_b = parse_floats(key, value)?,
            "synth_seed" => self.synth_mut()?.seed = parse_num(key, value)?,
            "synth_cov" => {
                let values = parse_floats(key, value)?;
                let d = (values.len() as f64).sqrt().round() as usize;
                if d * d != values.len() {
                    return Err(Error::Config(format!(
                        "`synth_cov` needs d² entries, got {}",
                        values.len()
                    )));
                }
                self.synth_mut()?.cov = Matrix::new(d, d, values)
                    .map_err(|e| Error::Config(format!("`synth_cov`: {e}")))?;
            }
            "transforms" => self.transforms = parse_list(value)?,
            "selectors" => self.selectors = parse_list(value)?,
            "classifiers" => self.classifiers = parse_list(value)?,
            "fractions" => self.fractions = parse_floats(key, value)?,
            "bins" => {
                self.bins = if value.eq_ignore_ascii_case("auto") {
                    Bins::Auto
                } else {
                    Bins::Fixed(parse_num(key, value)?)
                }
            }
            "repeats" => self.repeats = parse_num(key, value)?,
            "train_fraction" => self.train_fraction = parse_num(key, value)?,
            "seed" => {
                self.seed = parse_num(key, value)?;
            }
            "stratified" => self.stratified = parse_bool(key, value)?,
            "standardize" => self.standardize = parse_bool(key, value)?,
            "ridge" => {
                self.ridge = if value.eq_ignore_ascii_case("auto") {
                    None
                } else {
                    Some(parse_num(key, value)?)
                }
            }
            "neighbors" => self.neighbors = parse_num(key, value)?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    fn synth_mut(&mut self) -> Result<&mut SynthSpec> {
        match &mut self.source {
            DataSource::Synth(spec) => Ok(spec),
            DataSource::Csv { .. } => Err(Error::Config(
                "synthetic settings given for a CSV dataset".into(),
            )),
        }
    }

    /// Checks settings that do not depend on the data.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.transforms.is_empty() || self.selectors.is_empty() || self.classifiers.is_empty() {
            return fail("transforms, selectors and classifiers must be non-empty".into());
        }
        if self.fractions.is_empty() {
            return fail("at least one fraction is required".into());
        }
        if let Some(f) = self.fractions.iter().find(|&&f| !(f > 0.0 && f <= 1.0)) {
            return fail(format!("fraction {f} outside (0, 1]"));
        }
        if self.repeats == 0 {
            return fail("repeats must be >= 1".into());
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return fail(format!(
                "train_fraction {} outside (0, 1)",
                self.train_fraction
            ));
        }
        if let Bins::Fixed(b) = self.bins {
            if b < 2 {
                return fail(format!("bins must be >= 2, got {b}"));
            }
        }
        if self.ridge.is_some_and(|r| !(r >= 0.0)) {
            return fail("ridge must be >= 0".into());
        }
        if self.neighbors == 0 {
            return fail("neighbors must be >= 1".into());
        }
        Ok(())
    }

    pub fn split_plan(&self) -> SplitPlan {
        SplitPlan {
            repeats: self.repeats,
            train_fraction: self.train_fraction,
            seed: self.seed,
            stratified: self.stratified,
        }
    }

    pub fn load_dataset(&self) -> Result<Dataset> {
        match &self.source {
            DataSource::Csv { path, label_column } => Dataset::load_csv(path, label_column),
            DataSource::Synth(spec) => spec.generate(),
        }
    }

    fn source_description(&self) -> String {
        match &self.source {
            DataSource::Csv { path, .. } => path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
            DataSource::Synth(s) => format!("synthetic gaussian (seed {})", s.seed),
        }
    }
}

/// Number of bases kept for a fraction of the original dimension.
pub fn bases_for_fraction(fraction: f64, d: usize) -> usize {
    // guard against 0.1·60 = 6.000000000000001
    ((fraction * d as f64 - 1e-9).ceil() as usize).clamp(1, d)
}

/// Percentage of the MI top-k absent from the conventional top-k.
pub fn basis_difference(conventional: &[usize], mi: &[usize]) -> Result<f64> {
    if conventional.len() != mi.len() {
        return Err(Error::Shape(format!(
            "index lists of length {} and {}",
            conventional.len(),
            mi.len()
        )));
    }
    if mi.is_empty() {
        return Err(Error::InvalidArgument(
            "index lists must be non-empty".into(),
        ));
    }
    let conv: HashSet<usize> = conventional.iter().copied().collect();
    let shared = mi
        .iter()
        .copied()
        .collect::<HashSet<_>>()
        .intersection(&conv)
        .count();
    let k = mi.len();
    Ok(100.0 * (k - shared) as f64 / k as f64)
}

/// Fits one transform on training data (`d × N_train`).
pub fn fit_basis(
    kind: TransformKind,
    x_train: &Matrix,
    y_train: &[usize],
    classes: usize,
    ridge: Option<f64>,
    seed: u64,
) -> Result<BasisSet> {
    match kind {
        TransformKind::Dct => dct_basis(x_train.rows()),
        TransformKind::Pca => pca_basis(x_train),
        TransformKind::Lda => lda_basis(x_train, y_train, classes, ridge),
        TransformKind::Rp => rp_basis(x_train.rows(), rp_seed(seed)),
    }
}

/// Seed of the random projection drawn for an experiment seed.
pub fn rp_seed(seed: u64) -> u64 {
    seed ^ RP_SEED_SALT
}

/// Base indices kept by a selector.
pub fn selected_indices(selector: Selector, ranking: &MiRanking, k: usize) -> Vec<usize> {
    match selector {
        Selector::Conventional => (0..k).collect(),
        Selector::Mi => ranking.top_k(k).to_vec(),
    }
}

/// Fraction stored with a total order, for use in map keys.
#[derive(Debug, Clone, Copy)]
pub struct Fraction(pub f64);

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0).is_eq()
    }
}

impl Eq for Fraction {}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for Fraction {
    /// `0.1` → `10%`, `0.125` → `12.5%`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pct = format!("{:.4}", self.0 * 100.0);
        let pct = pct.trim_end_matches('0').trim_end_matches('.');
        write!(f, "{pct}%")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CellKey {
    pub transform: TransformKind,
    pub selector: Selector,
    pub fraction: Fraction,
    pub classifier: ClassifierKind,
}

/// Accuracies in percent over the repeats.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    pub per_repeat: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation (`n − 1`); 0 for a single repeat.
    pub stddev: f64,
}

impl CellStats {
    pub fn from_repeats(per_repeat: Vec<f64>) -> Self {
        let (mean, stddev) = mean_and_stddev(&per_repeat);
        CellStats {
            per_repeat,
            mean,
            stddev,
        }
    }
}

pub fn mean_and_stddev(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub dataset: String,
    pub dim: usize,
    pub samples: usize,
    pub classes: usize,
    pub seed: u64,
    pub bins: Bins,
    pub repeats: usize,
    pub train_fraction: f64,
    pub stratified: bool,
    pub standardize: bool,
    pub transforms: Vec<TransformKind>,
    pub selectors: Vec<Selector>,
    pub fractions: Vec<f64>,
    pub classifiers: Vec<ClassifierKind>,
    pub cells: BTreeMap<CellKey, CellStats>,
    /// Per `(transform, fraction)`: basis difference (%) for each repeat.
    pub basis_difference: BTreeMap<(TransformKind, Fraction), CellStats>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(Error::Config(format!("unknown report format `{other}`"))),
        }
    }
}

/// Runs the full comparison on `ds`.
pub fn run_experiment(cfg: &ExperimentConfig, ds: &Dataset) -> Result<ExperimentReport> {
    cfg.validate()?;
    let d = ds.dim();
    let classes = ds.num_classes();
    let splits = make_splits(ds, &cfg.split_plan())?;

    let mut accs: BTreeMap<CellKey, Vec<f64>> = BTreeMap::new();
    let mut diffs: BTreeMap<(TransformKind, Fraction), Vec<f64>> = BTreeMap::new();

    for (repeat, split) in splits.iter().enumerate() {
        let mut x_train = ds.columns(&split.train);
        let mut x_test = ds.columns(&split.test);
        if cfg.standardize {
            let z = Standardizer::fit(&x_train);
            x_train = z.apply(&x_train);
            x_test = z.apply(&x_test);
        }
        let y_train = ds.labels_at(&split.train);
        let y_test = ds.labels_at(&split.test);
        let bins = cfg.bins.resolve(split.train.len());

        for &transform in &cfg.transforms {
            let ctx = |what: &str| format!("repeat {repeat}, {transform}: {what}");
            let basis = fit_basis(transform, &x_train, &y_train, classes, cfg.ridge, cfg.seed)
                .map_err(|e| e.context(ctx("fitting transform")))?;
            let ranking = rank_bases(&basis, &x_train, &y_train, classes, bins)
                .map_err(|e| e.context(ctx("ranking bases")))?;

            for &fraction in &cfg.fractions {
                let k = bases_for_fraction(fraction, d);
                let frac = Fraction(fraction);
                let conv = selected_indices(Selector::Conventional, &ranking, k);
                let by_mi = selected_indices(Selector::Mi, &ranking, k);
                diffs
                    .entry((transform, frac))
                    .or_default()
                    .push(basis_difference(&conv, &by_mi)?);

                for &selector in &cfg.selectors {
                    let g = basis
                        .bases
                        .select_rows(&selected_indices(selector, &ranking, k));
                    let f_train = mi::project(&g, &x_train)?;
                    let f_test = mi::project(&g, &x_test)?;
                    for &classifier in &cfg.classifiers {
                        let predicted = classifier
                            .fit_predict(&f_train, &y_train, &f_test, classes, cfg.neighbors)
                            .map_err(|e| {
                                e.context(ctx(&format!("{selector} {frac} {classifier}")))
                            })?;
                        let key = CellKey {
                            transform,
                            selector,
                            fraction: frac,
                            classifier,
                        };
                        accs.entry(key)
                            .or_default()
                            .push(100.0 * accuracy(&predicted, &y_test)?);
                    }
                }
            }
        }
    }

    Ok(ExperimentReport {
        dataset: cfg.source_description(),
        dim: d,
        samples: ds.len(),
        classes,
        seed: cfg.seed,
        bins: cfg.bins,
        repeats: cfg.repeats,
        train_fraction: cfg.train_fraction,
        stratified: cfg.stratified,
        standardize: cfg.standardize,
        transforms: cfg.transforms.clone(),
        selectors: cfg.selectors.clone(),
        fractions: cfg.fractions.clone(),
        classifiers: cfg.classifiers.clone(),
        cells: accs
            .into_iter()
            .map(|(k, v)| (k, CellStats::from_repeats(v)))
            .collect(),
        basis_difference: diffs
            .into_iter()
            .map(|(k, v)| (k, CellStats::from_repeats(v)))
            .collect(),
    })
}

fn row_label(transform: TransformKind, selector: Selector) -> String {
    match selector {
        Selector::Conventional => transform.to_string(),
        Selector::Mi => format!("{transform}+MI"),
    }
}

impl ExperimentReport {
    pub fn cell(
        &self,
        transform: TransformKind,
        selector: Selector,
        fraction: f64,
        classifier: ClassifierKind,
    ) -> Option<&CellStats> {
        self.cells.get(&CellKey {
            transform,
            selector,
            fraction: Fraction(fraction),
            classifier,
        })
    }

    pub fn difference(&self, transform: TransformKind, fraction: f64) -> Option<&CellStats> {
        self.basis_difference.get(&(transform, Fraction(fraction)))
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Csv => self.render_csv(),
            ReportFormat::Markdown => self.render_markdown(),
        }
    }

    /// Mean accuracies: `transform,selector,classifier` followed by one
    /// column per fraction, two decimals.
    pub fn render_csv(&self) -> String {
        let mut out = String::from("transform,selector,classifier");
        for &f in &self.fractions {
            write!(out, ",{}", Fraction(f)).unwrap();
        }
        out.push('\n');
        for &t in &self.transforms {
            for &s in &self.selectors {
                for &c in &self.classifiers {
                    write!(out, "{t},{s},{c}").unwrap();
                    for &f in &self.fractions {
                        match self.cell(t, s, f, c) {
                            Some(stats) => write!(out, ",{:.2}", stats.mean).unwrap(),
                            None => out.push(','),
                        }
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    /// Every per-repeat accuracy in long form.
    pub fn render_details_csv(&self) -> String {
        let mut out = String::from("transform,selector,classifier,fraction,repeat,accuracy\n");
        for (key, stats) in &self.cells {
            for (r, acc) in stats.per_repeat.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{r},{acc:.4}",
                    key.transform, key.selector, key.classifier, key.fraction.0
                )
                .unwrap();
            }
        }
        out
    }

    /// Basis-difference table: one row per transform, one column per fraction.
    pub fn render_difference_csv(&self) -> String {
        let mut out = String::from("transform");
        for &f in &self.fractions {
            write!(out, ",{}", Fraction(f)).unwrap();
        }
        out.push('\n');
        for &t in &self.transforms {
            out.push_str(t.label());
            for &f in &self.fractions {
                match self.difference(t, f) {
                    Some(stats) => write!(out, ",{:.2}", stats.mean).unwrap(),
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Accuracy table laid out as transform rows (`X`, `X+MI`) against
    /// classifier × fraction columns, followed by the basis-difference table.
    pub fn render_markdown(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# Mean accuracy (%)\n").unwrap();
        writeln!(
            out,
            "dataset: {} (d={}, N={}, C={}); repeats: {}; train fraction: {}; stratified: {}; \
             standardize: {}; bins: {}; seed: {}\n",
            self.dataset,
            self.dim,
            self.samples,
            self.classes,
            self.repeats,
            self.train_fraction,
            self.stratified,
            self.standardize,
            self.bins,
            self.seed
        )
        .unwrap();

        out.push_str("| Transform |");
        for &c in &self.classifiers {
            for &f in &self.fractions {
                write!(out, " {c} {} |", Fraction(f)).unwrap();
            }
        }
        out.push('\n');
        out.push_str("|---|");
        for _ in 0..self.classifiers.len() * self.fractions.len() {
            out.push_str("---|");
        }
        out.push('\n');
        for &t in &self.transforms {
            for &s in &self.selectors {
                write!(out, "| {} |", row_label(t, s)).unwrap();
                for &c in &self.classifiers {
                    for &f in &self.fractions {
                        match self.cell(t, s, f, c) {
                            Some(st) => {
                                write!(out, " {:.2} ± {:.2} |", st.mean, st.stddev).unwrap()
                            }
                            None => out.push_str(" |"),
                        }
                    }
                }
                out.push('\n');
            }
        }

        writeln!(out, "\n# Basis difference, MI vs conventional (%)\n").unwrap();
        out.push_str("| Transform |");
        for &f in &self.fractions {
            write!(out, " {} |", Fraction(f)).unwrap();
        }
        out.push('\n');
        out.push_str("|---|");
        for _ in &self.fractions {
            out.push_str("---|");
        }
        out.push('\n');
        for &t in &self.transforms {
            write!(out, "| {t} |").unwrap();
            for &f in &self.fractions {
                match self.difference(t, f) {
                    Some(st) => write!(out, " {:.2} |", st.mean).unwrap(),
                    None => out.push_str(" |"),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
        fs::write(path, self.render(format))?;
        Ok(())
    }
}

/// One sample projected onto the base chosen by a selector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionRow {
    pub sample_id: usize,
    pub selector: Selector,
    pub projection: f64,
    pub label: usize,
}

/// A candidate PCA base of the demo with its training MI.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateBase {
    pub conventional_rank: usize,
    pub base: Vec<f64>,
    pub eigenvalue: f64,
    pub mi_bits: f64,
}

/// Per-selector summary of the first split of the demo.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectorSummary {
    pub selector: Selector,
    pub base_index: usize,
    pub mi_bits: f64,
    pub fano: FanoBound,
    pub mean_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthDemo {
    pub report: ExperimentReport,
    pub label_entropy: f64,
    pub candidates: Vec<CandidateBase>,
    pub selectors: Vec<SelectorSummary>,
    pub projections: Vec<ProjectionRow>,
}

/// Two elongated Gaussian classes, PCA reduced to one dimension with
/// conventional and MI selection, naive Bayes on top.
///
/// Accuracies come from the repeated splits of `report`; candidate MI
/// scores, Fano bounds and the projection dump come from the first split.
pub fn synth_demo(seed: u64, repeats: usize, bins: usize) -> Result<SynthDemo> {
    let cfg = ExperimentConfig {
        source: DataSource::Synth(SynthSpec {
            seed,
            ..SynthSpec::default()
        }),
        transforms: vec![TransformKind::Pca],
        selectors: vec![Selector::Conventional, Selector::Mi],
        fractions: vec![0.5],
        classifiers: vec![ClassifierKind::Nb],
        bins: Bins::Fixed(bins),
        repeats,
        train_fraction: 0.5,
        seed,
        ..ExperimentConfig::default()
    };
    let ds = cfg.load_dataset()?;
    let report = run_experiment(&cfg, &ds)?;

    let split = &make_splits(&ds, &cfg.split_plan())?[0];
    let x_train = ds.columns(&split.train);
    let y_train = ds.labels_at(&split.train);
    let basis = pca_basis(&x_train)?;
    let ranking = rank_bases(&basis, &x_train, &y_train, 2, bins)?;
    let label_entropy = entropy(&y_train, 2)?;

    let candidates = (0..basis.len())
        .map(|i| CandidateBase {
            conventional_rank: i,
            base: basis.base(i).to_vec(),
            eigenvalue: basis.scores[i],
            mi_bits: ranking.mi_bits[i],
        })
        .collect();

    let projections_all = basis.bases.matmul(ds.features())?;
    let mut selectors = Vec::new();
    let mut projections = Vec::new();
    for selector in [Selector::Conventional, Selector::Mi] {
        let base_index = selected_indices(selector, &ranking, 1)[0];
        let mi_bits = ranking.mi_bits[base_index];
        let mean_accuracy = report
            .cell(TransformKind::Pca, selector, 0.5, ClassifierKind::Nb)
            .map(|c| c.mean)
            .unwrap_or(f64::NAN);
        selectors.push(SelectorSummary {
            selector,
            base_index,
            mi_bits,
            fano: fano_lower_bound(label_entropy, mi_bits, 2)?,
            mean_accuracy,
        });
        for (sample_id, &label) in ds.labels().iter().enumerate() {
            projections.push(ProjectionRow {
                sample_id,
                selector,
                projection: projections_all[(base_index, sample_id)],
                label,
            });
        }
    }

    Ok(SynthDemo {
        report,
        label_entropy,
        candidates,
        selectors,
        projections,
    })
}

impl SynthDemo {
    /// `sample_id,selector,projection,label`.
    pub fn projections_csv(&self) -> String {
        let mut out = String::from("sample_id,selector,projection,label\n");
        for p in &self.projections {
            writeln!(
                out,
                "{},{},{:.16e},{}",
                p.sample_id, p.selector, p.projection, p.label
            )
            .unwrap();
        }
        out
    }

    pub fn summary_markdown(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# Synthetic two-class demo\n").unwrap();
        writeln!(
            out,
            "H(Y) on the first training split: {:.6} bits\n",
            self.label_entropy
        )
        .unwrap();
        out.push_str("| PCA base | direction | eigenvalue | MI (bits) |\n|---|---|---|---|\n");
        for c in &self.candidates {
            let dir: Vec<String> = c.base.iter().map(|v| format!("{v:.4}")).collect();
            writeln!(
                out,
                "| {} | ({}) | {:.4} | {:.6} |",
                c.conventional_rank,
                dir.join(", "),
                c.eigenvalue,
                c.mi_bits
            )
            .unwrap();
        }
        out.push_str(
            "\n| selector | base | MI (bits) | Fano lower bound | mean NB accuracy (%) |\n\
             |---|---|---|---|---|\n",
        );
        for s in &self.selectors {
            writeln!(
                out,
                "| {} | {} | {:.6} | {:.6}{} | {:.2} |",
                s.selector,
                s.base_index,
                s.mi_bits,
                s.fano.value,
                if s.fano.vacuous { " (vacuous)" } else { "" },
                s.mean_accuracy
            )
            .unwrap();
        }
        out.push('\n');
        out.push_str(&self.report.render_markdown());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_difference_examples() {
        assert_eq!(basis_difference(&[0, 1, 2], &[2, 1, 0]).unwrap(), 0.0);
        assert_eq!(basis_difference(&[0, 1], &[2, 3]).unwrap(), 100.0);
        let conv: Vec<usize> = (0..10).collect();
        let mi = [0, 1, 2, 3, 4, 5, 6, 20, 21, 22];
        assert!((basis_difference(&conv, &mi).unwrap() - 30.0).abs() < 1e-12);
        assert!(basis_difference(&[0], &[0, 1]).is_err());
        assert!(basis_difference(&[], &[]).is_err());
    }

    #[test]
    fn fraction_to_bases() {
        assert_eq!(bases_for_fraction(0.1, 60), 6);
        assert_eq!(bases_for_fraction(0.3, 60), 18);
        assert_eq!(bases_for_fraction(0.7, 60), 42);
        assert_eq!(bases_for_fraction(0.5, 2), 1);
        assert_eq!(bases_for_fraction(0.01, 2), 1);
        assert_eq!(bases_for_fraction(1.0, 7), 7);
        assert_eq!(bases_for_fraction(0.15, 10), 2);
    }

    #[test]
    fn fraction_labels() {
        assert_eq!(Fraction(0.1).to_string(), "10%");
        assert_eq!(Fraction(0.125).to_string(), "12.5%");
        assert_eq!(Fraction(1.0).to_string(), "100%");
    }

    #[test]
    fn config_parsing() {
        let cfg = ExperimentConfig::parse(
            "# sonar run\n\
             dataset = data/sonar.csv\n\
             label_column = class  # trailing comment\n\
             transforms = pca, lda\n\
             fractions = 0.1,0.5\n\
             classifiers = nb\n\
             bins = 11\n\
             repeats = 3\n\
             seed = 9\n\
             standardize = yes\n\
             ridge = 0.001\n",
        )
        .unwrap();
        assert_eq!(
            cfg.source,
            DataSource::Csv {
                path: "data/sonar.csv".into(),
                label_column: "class".into()
            }
        );
        assert_eq!(cfg.transforms, vec![TransformKind::Pca, TransformKind::Lda]);
        assert_eq!(cfg.fractions, vec![0.1, 0.5]);
        assert_eq!(cfg.classifiers, vec![ClassifierKind::Nb]);
        assert_eq!(cfg.bins, Bins::Fixed(11));
        assert_eq!((cfg.repeats, cfg.seed), (3, 9));
        assert!(cfg.standardize);
        assert_eq!(cfg.ridge, Some(0.001));
        cfg.validate().unwrap();
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            ExperimentConfig::parse("colour = red"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            ExperimentConfig::parse("repeats five"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            ExperimentConfig::parse("repeats = x"),
            Err(Error::Config(_))
        ));
        assert!(ExperimentConfig::parse("transforms = wavelet").is_err());
        let cfg = ExperimentConfig::parse("fractions = 0.0, 0.5").unwrap();
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig::parse("bins = 1").unwrap();
        assert!(cfg.validate().is_err());
        assert!(ExperimentConfig::parse("dataset = x.csv\nsynth_seed = 3").is_err());
    }

    #[test]
    fn synth_config_keys() {
        let cfg = ExperimentConfig::parse(
            "seed = 4\nsynth = true\nsynth_n_per_class = 10\nsynth_cov = 1,0,0,2\n",
        )
        .unwrap();
        match &cfg.source {
            DataSource::Synth(s) => {
                assert_eq!(s.n_per_class, 10);
                assert_eq!(s.seed, 4);
                assert_eq!(s.cov.as_slice(), &[1.0, 0.0, 0.0, 2.0]);
            }
            other => panic!("{other:?}"),
        }
        assert!(ExperimentConfig::parse("synth_cov = 1,2,3").is_err());
    }

    #[test]
    fn stddev_is_sample_stddev() {
        let s = CellStats::from_repeats(vec![50.0, 60.0, 70.0]);
        assert_eq!(s.mean, 60.0);
        assert_eq!(s.stddev, 10.0);
        assert_eq!(CellStats::from_repeats(vec![42.0]).stddev, 0.0);
    }
}
