//! Labelled datasets, CSV ingest, synthetic Gaussian data, and repeated
//! random sub-sampling splits.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{sym_eig, Matrix};

/// Features stored as a `d × N` matrix (one column per sample) with dense
/// integer labels in `0..C`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Matrix,
    labels: Vec<usize>,
    class_names: Vec<String>,
    feature_names: Vec<String>,
}

impl Dataset {
    /// Validates that labels match the sample count and that every class
    /// in `0..class_names.len()` occurs at least once.
    pub fn new(features: Matrix, labels: Vec<usize>, class_names: Vec<String>) -> Result<Self> {
        let feature_names = (0..features.rows()).map(|i| format!("f{i}")).collect();
        Dataset::with_feature_names(features, labels, class_names, feature_names)
    }

    pub fn with_feature_names(
        features: Matrix,
        labels: Vec<usize>,
        class_names: Vec<String>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        if labels.len() != features.cols() {
            return Err(Error::Shape(format!(
                "{} labels for {} samples",
                labels.len(),
                features.cols()
            )));
        }
        if feature_names.len() != features.rows() {
            return Err(Error::Shape(format!(
                "{} feature names for {} features",
                feature_names.len(),
                features.rows()
            )));
        }
        let c = class_names.len();
        let mut seen = vec![false; c];
        for &y in &labels {
            if y >= c {
                return Err(Error::InvalidArgument(format!(
                    "label {y} out of range for {c} classes"
                )));
            }
            seen[y] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "class {missing} (`{}`) has no samples",
                class_names[missing]
            )));
        }
        Ok(Dataset {
            features,
            labels,
            class_names,
            feature_names,
        })
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// Feature dimension `d`.
    pub fn dim(&self) -> usize {
        self.features.rows()
    }

    /// Sample count `N`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_classes()];
        for &y in &self.labels {
            counts[y] += 1;
        }
        counts
    }

    /// Feature columns for the given sample indices (`d × indices.len()`).
    pub fn columns(&self, indices: &[usize]) -> Matrix {
        self.features.select_columns(indices)
    }

    pub fn labels_at(&self, indices: &[usize]) -> Vec<usize> {
        indices.iter().map(|&i| self.labels[i]).collect()
    }

    /// Reads a CSV with a header row. `label_column` holds arbitrary strings,
    /// every other column must be numeric. Labels are encoded by order of
    /// first appearance.
    pub fn load_csv(path: impl AsRef<Path>, label_column: &str) -> Result<Self> {
        let path = path.as_ref();
        let data_err = |message: String| Error::Data {
            path: path.to_path_buf(),
            message,
        };
        let file = File::open(path).map_err(|e| data_err(format!("cannot open: {e}")))?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(file);

        let headers: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        let label_idx = headers
            .iter()
            .position(|h| h == label_column)
            .ok_or_else(|| data_err(format!("no column named `{label_column}`")))?;
        let feature_names: Vec<String> = headers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != label_idx)
            .map(|(_, h)| h.clone())
            .collect();
        let d = feature_names.len();
        if d == 0 {
            return Err(data_err("no feature columns".into()));
        }

        let mut rows: Vec<Vec<f64>> = Vec::new();
        let mut labels = Vec::new();
        let mut class_names: Vec<String> = Vec::new();
        let mut class_index: HashMap<String, usize> = HashMap::new();

        for (r, record) in reader.records().enumerate() {
            let record = record?;
            // 1-based line number of the record, counting the header as line 1.
            let line = r + 2;
            let cell_err = |column: &str, message: String| Error::Cell {
                path: path.to_path_buf(),
                row: line,
                column: column.to_owned(),
                message,
            };
            let mut row = Vec::with_capacity(d);
            for (i, cell) in record.iter().enumerate() {
                if i == label_idx {
                    if cell.is_empty() {
                        return Err(cell_err(&headers[i], "empty label".into()));
                    }
                    let next = class_index.len();
                    let y = *class_index.entry(cell.to_owned()).or_insert_with(|| {
                        class_names.push(cell.to_owned());
                        next
                    });
                    labels.push(y);
                    continue;
                }
                if cell.is_empty() {
                    return Err(cell_err(&headers[i], "blank cell".into()));
                }
                let v: f64 = cell
                    .parse()
                    .map_err(|_| cell_err(&headers[i], format!("not a number: `{cell}`")))?;
                if !v.is_finite() {
                    return Err(cell_err(&headers[i], format!("non-finite value `{cell}`")));
                }
                row.push(v);
            }
            rows.push(row);
        }
        if class_names.len() < 2 {
            return Err(data_err(format!(
                "need at least 2 classes, found {}",
                class_names.len()
            )));
        }
        let features = Matrix::from_columns(&rows)?;
        Dataset::with_feature_names(features, labels, class_names, feature_names)
    }

    /// Writes the dataset as CSV: feature columns in order, then a `label`
    /// column holding class names. Numbers use 17 significant digits.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        self.write_csv_to(&mut out)?;
        out.flush()?;
        Ok(())
    }

    pub fn write_csv_to<W: Write>(&self, out: &mut W) -> Result<()> {
        let mut header = self.feature_names.join(",");
        header.push_str(",label");
        writeln!(out, "{header}")?;
        for (j, &y) in self.labels.iter().enumerate() {
            let mut line = String::new();
            for i in 0..self.dim() {
                line.push_str(&format!("{:.16e},", self.features[(i, j)]));
            }
            line.push_str(&self.class_names[y]);
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// Two-class Gaussian data: `n_per_class` samples around each mean with a
/// shared covariance. Class `a` (label 0) comes first, then class `b`.
pub fn synth_gaussian(
    n_per_class: usize,
    mean_a: &[f64],
    mean_b: &[f64],
    cov: &Matrix,
    seed: u64,
) -> Result<Dataset> {
    let d = mean_a.len();
    if mean_b.len() != d || cov.shape() != (d, d) {
        return Err(Error::Shape(format!(
            "means of length {} and {} with a {}x{} covariance",
            d,
            mean_b.len(),
            cov.rows(),
            cov.cols()
        )));
    }
    if n_per_class == 0 {
        return Err(Error::InvalidArgument("n_per_class must be >= 1".into()));
    }
    let eig = sym_eig(cov)?;
    let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -1e-9 * (1.0 + cov.frobenius_norm()) {
        return Err(Error::NotPositiveSemiDefinite {
            min_eigenvalue: min,
        });
    }
    // cov = F·Fᵀ with F = E·√Λ
    let mut factor = eig.eigenvectors.clone();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let s = lambda.max(0.0).sqrt();
        for i in 0..d {
            factor[(i, k)] *= s;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns = Vec::with_capacity(2 * n_per_class);
    let mut labels = Vec::with_capacity(2 * n_per_class);
    for (label, mean) in [mean_a, mean_b].into_iter().enumerate() {
        for _ in 0..n_per_class {
            let z: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
            let sample: Vec<f64> = (0..d)
                .map(|i| mean[i] + (0..d).map(|k| factor[(i, k)] * z[k]).sum::<f64>())
                .collect();
            columns.push(sample);
            labels.push(label);
        }
    }
    Dataset::new(
        Matrix::from_columns(&columns)?,
        labels,
        vec!["a".into(), "b".into()],
    )
}

/// Parameters of repeated random sub-sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPlan {
    pub repeats: usize,
    pub train_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl Default for SplitPlan {
    fn default() -> Self {
        SplitPlan {
            repeats: 5,
            train_fraction: 0.5,
            seed: 0,
            stratified: true,
        }
    }
}

/// One train/test partition. Both index lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Generates `plan.repeats` independent splits. Repeat `r` draws from its
/// own stream of a generator keyed by `plan.seed`, so any repeat can be
/// regenerated on its own.
pub fn make_splits(ds: &Dataset, plan: &SplitPlan) -> Result<Vec<Split>> {
    if plan.repeats == 0 {
        return Err(Error::InvalidArgument("repeats must be >= 1".into()));
    }
    if !(plan.train_fraction > 0.0 && plan.train_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "train fraction must lie in (0, 1), got {}",
            plan.train_fraction
        )));
    }
    let n = ds.len();
    let quotas = if plan.stratified {
        let counts = ds.class_counts();
        if let Some((c, &cnt)) = counts.iter().enumerate().find(|(_, &cnt)| cnt < 2) {
            return Err(Error::Stratification(format!(
                "class `{}` has {cnt} sample(s); stratified splits need at least 2",
                ds.class_names()[c]
            )));
        }
        if plan.train_fraction * (n as f64) < counts.len() as f64 {
            return Err(Error::Stratification(format!(
                "train fraction {} of {n} samples cannot cover {} classes",
                plan.train_fraction,
                counts.len()
            )));
        }
        Some(stratified_quotas(&counts, plan.train_fraction))
    } else {
        if n < 2 {
            return Err(Error::InsufficientData(format!(
                "{n} sample(s) cannot be split"
            )));
        }
        None
    };

    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); ds.num_classes()];
    for (i, &y) in ds.labels().iter().enumerate() {
        by_class[y].push(i);
    }

    let splits = (0..plan.repeats)
        .map(|repeat| {
            let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
            rng.set_stream(repeat as u64);
            let mut train = Vec::new();
            match &quotas {
                Some(quotas) => {
                    for (members, &quota) in by_class.iter().zip(quotas) {
                        let mut members = members.clone();
                        members.shuffle(&mut rng);
                        train.extend_from_slice(&members[..quota]);
                    }
                }
                None => {
                    let quota = ((plan.train_fraction * n as f64).round() as usize).clamp(1, n - 1);
                    let mut all: Vec<usize> = (0..n).collect();
                    all.shuffle(&mut rng);
                    train.extend_from_slice(&all[..quota]);
                }
            }
            train.sort_unstable();
            let mut in_train = vec![false; n];
            train.iter().for_each(|&i| in_train[i] = true);
            let test = (0..n).filter(|&i| !in_train[i]).collect();
            Split { train, test }
        })
        .collect();
    Ok(splits)
}

/// Per-class training counts: `round(f·N)` in total, apportioned by largest
/// remainder (ties to the lower class index), each kept in `[1, n_c − 1]`.
fn stratified_quotas(counts: &[usize], fraction: f64) -> Vec<usize> {
    let n: usize = counts.iter().sum();
    let total = (fraction * n as f64).round() as usize;
    let exact: Vec<f64> = counts.iter().map(|&c| fraction * c as f64).collect();
    let mut quotas: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let assigned: usize = quotas.iter().sum();
    let mut by_remainder: Vec<usize> = (0..counts.len()).collect();
    by_remainder.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &c in by_remainder.iter().take(total.saturating_sub(assigned)) {
        quotas[c] += 1;
    }
    for (q, &c) in quotas.iter_mut().zip(counts) {
        *q = (*q).clamp(1, c - 1);
    }
    quotas
}

/// Per-feature z-scoring fitted on one matrix (`d × N`) and applied to others.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    means: Vec<f64>,
    scales: Vec<f64>,
}

impl Standardizer {
    /// Features with zero spread are only centered.
    pub fn fit(x: &Matrix) -> Self {
        let means = x.row_means();
        let n = x.cols().max(1) as f64;
        let scales = x
            .row_iter()
            .zip(&means)
            .map(|(r, m)| {
                let sd = (r.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n).sqrt();
                if sd > 0.0 {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Standardizer { means, scales }
    }

    pub fn apply(&self, x: &Matrix) -> Matrix {
        let mut out = x.clone();
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                out[(i, j)] = (x[(i, j)] - self.means[i]) / self.scales[i];
            }
        }
        out
    }
}
