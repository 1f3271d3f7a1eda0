//! Classifiers used to score projected subspaces: Gaussian naive Bayes and
//! k-nearest-neighbors. Both take samples as columns of a `k × N` matrix.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const DEFAULT_NEIGHBORS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassifierKind {
    Nb,
    Knn,
}

impl ClassifierKind {
    pub fn label(self) -> &'static str {
        match self {
            ClassifierKind::Nb => "nb",
            ClassifierKind::Knn => "knn",
        }
    }

    /// Fits on the training projections and predicts the test projections.
    pub fn fit_predict(
        self,
        train: &Matrix,
        train_labels: &[usize],
        test: &Matrix,
        classes: usize,
        neighbors: usize,
    ) -> Result<Vec<usize>> {
        match self {
            ClassifierKind::Nb => GaussianNb::fit(train, train_labels, classes)?.predict(test),
            ClassifierKind::Knn => Knn::fit(train, train_labels, classes, neighbors)?.predict(test),
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nb" | "naive-bayes" | "bayes" => Ok(ClassifierKind::Nb),
            "knn" => Ok(ClassifierKind::Knn),
            other => Err(Error::Config(format!("unknown classifier `{other}`"))),
        }
    }
}

/// Per-class diagonal Gaussians with maximum-likelihood parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianNb {
    pub class_priors: Vec<f64>,
    /// `means[c][j]`: mean of feature `j` within class `c`.
    pub means: Vec<Vec<f64>>,
    /// `variances[c][j]`, never below the variance floor.
    pub variances: Vec<Vec<f64>>,
}

impl GaussianNb {
    pub fn fit(train: &Matrix, labels: &[usize], classes: usize) -> Result<Self> {
        let (k, n) = train.shape();
        if labels.len() != n {
            return Err(Error::Shape(format!(
                "{} labels for {n} samples",
                labels.len()
            )));
        }
        let mut counts = vec![0usize; classes];
        let mut means = vec![vec![0.0; k]; classes];
        for (j, &y) in labels.iter().enumerate() {
            if y >= classes {
                return Err(Error::InvalidArgument(format!("label {y} out of range")));
            }
            counts[y] += 1;
            for f in 0..k {
                means[y][f] += train[(f, j)];
            }
        }
        if let Some(c) = counts.iter().position(|&cnt| cnt < 2) {
            return Err(Error::InsufficientData(format!(
                "naive Bayes needs at least 2 training samples per class; class {c} has {}",
                counts[c]
            )));
        }
        for (m, &cnt) in means.iter_mut().zip(&counts) {
            m.iter_mut().for_each(|v| *v /= cnt as f64);
        }
        let mut variances = vec![vec![0.0; k]; classes];
        for (j, &y) in labels.iter().enumerate() {
            for f in 0..k {
                variances[y][f] += (train[(f, j)] - means[y][f]).powi(2);
            }
        }

        // 1e-9 of the largest overall feature variance, plus an absolute floor.
        let overall = train.row_means();
        let max_var = train
            .row_iter()
            .zip(&overall)
            .map(|(r, m)| r.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n as f64)
            .fold(0.0, f64::max);
        let floor = 1e-9 * max_var + 1e-12;
        for (v, &cnt) in variances.iter_mut().zip(&counts) {
            v.iter_mut().for_each(|x| *x = (*x / cnt as f64).max(floor));
        }

        Ok(GaussianNb {
            class_priors: counts.iter().map(|&c| c as f64 / n as f64).collect(),
            means,
            variances,
        })
    }

    /// Joint log-likelihood `log P(c) + Σ_j log N(x_j; μ_cj, σ²_cj)` per class.
    pub fn log_likelihoods(&self, sample: &[f64]) -> Vec<f64> {
        let ln_2pi = (2.0 * std::f64::consts::PI).ln();
        (0..self.class_priors.len())
            .map(|c| {
                let mut ll = self.class_priors[c].ln();
                for (j, &x) in sample.iter().enumerate() {
                    let var = self.variances[c][j];
                    ll -= 0.5 * (ln_2pi + var.ln() + (x - self.means[c][j]).powi(2) / var);
                }
                ll
            })
            .collect()
    }

    /// Most likely class per column; ties go to the lower class index.
    pub fn predict(&self, test: &Matrix) -> Result<Vec<usize>> {
        let k = self.means.first().map_or(0, Vec::len);
        if test.rows() != k {
            return Err(Error::Shape(format!(
                "model fitted on {k} features, test data has {}",
                test.rows()
            )));
        }
        Ok((0..test.cols())
            .map(|j| argmax(&self.log_likelihoods(&test.column(j))))
            .collect())
    }
}

/// Index of the largest value, first one on ties.
fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Majority vote among the `neighbors` nearest training samples (Euclidean).
#[derive(Debug, Clone, PartialEq)]
pub struct Knn {
    train: Matrix,
    labels: Vec<usize>,
    classes: usize,
    neighbors: usize,
}

impl Knn {
    pub fn fit(train: &Matrix, labels: &[usize], classes: usize, neighbors: usize) -> Result<Self> {
        if labels.len() != train.cols() {
            return Err(Error::Shape(format!(
                "{} labels for {} samples",
                labels.len(),
                train.cols()
            )));
        }
        if neighbors == 0 || neighbors > train.cols() {
            return Err(Error::InvalidArgument(format!(
                "neighbor count {neighbors} outside 1..={}",
                train.cols()
            )));
        }
        if let Some(&y) = labels.iter().find(|&&y| y >= classes) {
            return Err(Error::InvalidArgument(format!("label {y} out of range")));
        }
        // store samples as rows for contiguous distance computations
        Ok(Knn {
            train: train.transpose(),
            labels: labels.to_vec(),
            classes,
            neighbors,
        })
    }

    /// Distance ties go to the lower training index, vote ties to the lower
    /// class index.
    pub fn predict(&self, test: &Matrix) -> Result<Vec<usize>> {
        if test.rows() != self.train.cols() {
            return Err(Error::Shape(format!(
                "model fitted on {} features, test data has {}",
                self.train.cols(),
                test.rows()
            )));
        }
        let test = test.transpose();
        let mut by_distance: Vec<(f64, usize)> = Vec::with_capacity(self.labels.len());
        Ok(test
            .row_iter()
            .map(|sample| {
                by_distance.clear();
                by_distance.extend(self.train.row_iter().enumerate().map(|(i, t)| {
                    let d2: f64 = t.iter().zip(sample).map(|(a, b)| (a - b).powi(2)).sum();
                    (d2, i)
                }));
                by_distance.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let mut votes = vec![0usize; self.classes];
                for &(_, i) in &by_distance[..self.neighbors] {
                    votes[self.labels[i]] += 1;
                }
                let mut best = 0;
                for (c, &v) in votes.iter().enumerate() {
                    if v > votes[best] {
                        best = c;
                    }
                }
                best
            })
            .collect())
    }
}

/// Fraction of positions where `predicted` equals `truth`.
pub fn accuracy(predicted: &[usize], truth: &[usize]) -> Result<f64> {
    if predicted.len() != truth.len() {
        return Err(Error::Shape(format!(
            "{} predictions for {} labels",
            predicted.len(),
            truth.len()
        )));
    }
    if truth.is_empty() {
        return Err(Error::InsufficientData(
            "accuracy of an empty prediction".into(),
        ));
    }
    let correct = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(correct as f64 / truth.len() as f64)
}
