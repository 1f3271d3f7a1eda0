//! Candidate basis sets in their conventional order.
//!
//! | kind | rows                                   | conventional order      | scores         |
//! |------|----------------------------------------|-------------------------|----------------|
//! | DCT  | orthonormal DCT-II                     | ascending frequency     | frequency `u`  |
//! | PCA  | eigenvectors of the centered covariance| descending eigenvalue   | eigenvalue     |
//! | LDA  | generalized eigenvectors of `(S_b,S_w)`| descending eigenvalue   | eigenvalue     |
//! | RP   | i.i.d. entries in {+1, 0, −1}          | generation order        | 0              |
//!
//! Every kind returns a full `d × d` set; LDA keeps its near-zero tail so
//! that fractions above `(C−1)/d` remain selectable.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{covariance, generalized_sym_eig, sym_eig, Matrix};

/// Default LDA ridge, relative to `trace(S_w)/d`.
pub const DEFAULT_RIDGE_FACTOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransformKind {
    Dct,
    Lda,
    Pca,
    Rp,
}

impl TransformKind {
    pub const ALL: [TransformKind; 4] = [
        TransformKind::Dct,
        TransformKind::Lda,
        TransformKind::Pca,
        TransformKind::Rp,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TransformKind::Dct => "DCT",
            TransformKind::Lda => "LDA",
            TransformKind::Pca => "PCA",
            TransformKind::Rp => "RP",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dct" => Ok(TransformKind::Dct),
            "lda" => Ok(TransformKind::Lda),
            "pca" => Ok(TransformKind::Pca),
            "rp" | "rnd" | "random" => Ok(TransformKind::Rp),
            other => Err(Error::Config(format!("unknown transform `{other}`"))),
        }
    }
}

/// Base vectors as rows of an `m × d` matrix, in conventional order.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    pub kind: TransformKind,
    pub bases: Matrix,
    pub scores: Vec<f64>,
    pub fitted_on: String,
}

impl BasisSet {
    pub fn len(&self) -> usize {
        self.bases.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.rows() == 0
    }

    /// Input dimension `d`.
    pub fn dim(&self) -> usize {
        self.bases.cols()
    }

    pub fn base(&self, i: usize) -> &[f64] {
        self.bases.row(i)
    }

    /// One base vector per line; kind, provenance and scores go in `#`
    /// comment lines ahead of the data.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "# kind={}", self.kind)?;
        writeln!(out, "# fitted_on={}", self.fitted_on)?;
        let scores: Vec<String> = self.scores.iter().map(|s| format!("{s:.16e}")).collect();
        writeln!(out, "# scores={}", scores.join(","))?;
        for row in self.bases.row_iter() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Orthonormal DCT-II matrix: row `u`, column `n` holds
/// `α(u)·cos(π(2n+1)u / 2d)` with `α(0)=√(1/d)`, `α(u>0)=√(2/d)`.
pub fn dct_basis(d: usize) -> Result<BasisSet> {
    if d == 0 {
        return Err(Error::InvalidArgument("DCT dimension must be >= 1".into()));
    }
    let df = d as f64;
    let mut bases = Matrix::zeros(d, d);
    for u in 0..d {
        let alpha = if u == 0 {
            (1.0 / df).sqrt()
        } else {
            (2.0 / df).sqrt()
        };
        for n in 0..d {
            let angle = std::f64::consts::PI * ((2 * n + 1) * u) as f64 / (2.0 * df);
            bases[(u, n)] = alpha * angle.cos();
        }
    }
    Ok(BasisSet {
        kind: TransformKind::Dct,
        bases,
        scores: (0..d).map(|u| u as f64).collect(),
        fitted_on: "data-independent".into(),
    })
}

/// Principal axes of `x` (`d × N`), largest variance first.
pub fn pca_basis(x: &Matrix) -> Result<BasisSet> {
    let cov = covariance(x, true)?;
    let eig = sym_eig(&cov)?;
    Ok(BasisSet {
        kind: TransformKind::Pca,
        bases: eig.eigenvectors.transpose(),
        scores: eig.eigenvalues,
        fitted_on: format!("{} samples", x.cols()),
    })
}

/// Within- and between-class scatter, both normalized by `N`:
/// `S_w = Σ_c Σ_{i∈c} (x_i−μ_c)(x_i−μ_c)ᵀ / N`,
/// `S_b = Σ_c (N_c/N)(μ_c−μ)(μ_c−μ)ᵀ`.
pub fn scatter_matrices(
    x: &Matrix,
    labels: &[usize],
    num_classes: usize,
) -> Result<(Matrix, Matrix)> {
    let (d, n) = x.shape();
    if labels.len() != n {
        return Err(Error::Shape(format!(
            "{} labels for {n} samples",
            labels.len()
        )));
    }
    let mut counts = vec![0usize; num_classes];
    let mut class_means = vec![vec![0.0; d]; num_classes];
    for (j, &y) in labels.iter().enumerate() {
        if y >= num_classes {
            return Err(Error::InvalidArgument(format!("label {y} out of range")));
        }
        counts[y] += 1;
        for i in 0..d {
            class_means[y][i] += x[(i, j)];
        }
    }
    for (mean, &cnt) in class_means.iter_mut().zip(&counts) {
        if cnt > 0 {
            mean.iter_mut().for_each(|m| *m /= cnt as f64);
        }
    }
    let overall = x.row_means();
    let nf = n as f64;

    let mut sw = Matrix::zeros(d, d);
    for (j, &y) in labels.iter().enumerate() {
        let diff: Vec<f64> = (0..d).map(|i| x[(i, j)] - class_means[y][i]).collect();
        for a in 0..d {
            for b in a..d {
                sw[(a, b)] += diff[a] * diff[b];
            }
        }
    }
    let mut sb = Matrix::zeros(d, d);
    for (mean, &cnt) in class_means.iter().zip(&counts) {
        let w = cnt as f64 / nf;
        let diff: Vec<f64> = mean.iter().zip(&overall).map(|(m, o)| m - o).collect();
        for a in 0..d {
            for b in a..d {
                sb[(a, b)] += w * diff[a] * diff[b];
            }
        }
    }
    for a in 0..d {
        for b in a..d {
            sw[(a, b)] /= nf;
            sw[(b, a)] = sw[(a, b)];
            sb[(b, a)] = sb[(a, b)];
        }
    }
    Ok((sw, sb))
}

/// Fisher discriminant directions of `x` (`d × N`), all `d` of them,
/// largest generalized eigenvalue first. `ridge` is added to the diagonal
/// of `S_w`; `None` uses `1e-6·trace(S_w)/d`.
pub fn lda_basis(
    x: &Matrix,
    labels: &[usize],
    num_classes: usize,
    ridge: Option<f64>,
) -> Result<BasisSet> {
    if num_classes < 2 {
        return Err(Error::InvalidArgument(
            "LDA needs at least 2 classes".into(),
        ));
    }
    let mut counts = vec![0usize; num_classes];
    for &y in labels {
        if y < num_classes {
            counts[y] += 1;
        }
    }
    if let Some(c) = counts.iter().position(|&n| n < 2) {
        return Err(Error::InsufficientData(format!(
            "LDA needs at least 2 samples per class; class {c} has {}",
            counts[c]
        )));
    }
    let (sw, sb) = scatter_matrices(x, labels, num_classes)?;
    let ridge = ridge.unwrap_or(DEFAULT_RIDGE_FACTOR * sw.trace() / sw.rows().max(1) as f64);
    let eig = generalized_sym_eig(&sb, &sw, ridge)?;
    Ok(BasisSet {
        kind: TransformKind::Lda,
        bases: eig.eigenvectors.transpose(),
        scores: eig.eigenvalues,
        fitted_on: format!(
            "{} samples, {num_classes} classes, ridge {ridge:e}",
            x.cols()
        ),
    })
}

/// `d × d` ternary random matrix, entries +1, 0, −1 with probability 1/3
/// each. Rows are left unnormalized.
pub fn rp_basis(d: usize, seed: u64) -> Result<BasisSet> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "random projection dimension must be >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..d * d)
        .map(|_| match rng.random_range(0..3u8) {
            0 => 1.0,
            1 => 0.0,
            _ => -1.0,
        })
        .collect();
    Ok(BasisSet {
        kind: TransformKind::Rp,
        bases: Matrix::new(d, d, data)?,
        scores: vec![0.0; d],
        fitted_on: "data-independent".into(),
    })
}
