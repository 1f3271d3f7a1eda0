//! Histogram mutual information between projections and class labels, and
//! the ranking / selection of base vectors by it.
//!
//! The selection procedure:
//!
//! 1. project the training samples onto every candidate base, `Z = G·X`;
//! 2. for each base, discretize its projections into `B` equal-width bins
//!    and compute `I(Z_i; Y)` from the bin × class histogram;
//! 3. sort the bases by that score, highest first, and keep the first `k`.
//!
//! Scores are per-base (marginal) and do not change as bases are taken, so a
//! single sort is the same as repeatedly taking the arg-max and removing it.
//! All information quantities are in bits.

use std::io::Write;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::transforms::BasisSet;

const EDGE_SNAP: f64 = 1e-9;

/// `⌈√N⌉` clamped to `[4, 64]`.
pub fn default_bins(n_samples: usize) -> usize {
    ((n_samples as f64).sqrt().ceil() as usize).clamp(4, 64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinStrategy {
    EqualWidth,
}

/// Equal-width binning over the fitted `[lo, hi]` range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discretizer {
    pub bins: usize,
    pub lo: f64,
    pub hi: f64,
    pub strategy: BinStrategy,
}

impl Discretizer {
    pub fn fit(values: &[f64], bins: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData(
                "cannot fit a discretizer on no values".into(),
            ));
        }
        if bins < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 bins, got {bins}"
            )));
        }
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        Ok(Discretizer {
            bins,
            lo,
            hi,
            strategy: BinStrategy::EqualWidth,
        })
    }

    /// `clamp(⌊(v−lo)/(hi−lo)·B⌋, 0, B−1)`; everything maps to bin 0 when
    /// the fitted range is empty.
    ///
    /// Positions within `EDGE_SNAP` below an edge count as on the edge, so
    /// a value sitting exactly on an edge lands in the same bin after any
    /// positive affine map of the data despite rounding.
    pub fn bin(&self, v: f64) -> usize {
        let width = self.hi - self.lo;
        if !(width > 0.0) {
            return 0;
        }
        let pos = ((v - self.lo) / width * self.bins as f64 + EDGE_SNAP).floor();
        if pos <= 0.0 {
            0
        } else {
            (pos as usize).min(self.bins - 1)
        }
    }

    pub fn assign(&self, values: &[f64]) -> Vec<usize> {
        values.iter().map(|&v| self.bin(v)).collect()
    }
}

/// Joint counts over (bin × class) with both marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointHistogram {
    bins: usize,
    classes: usize,
    counts: Vec<u64>,
    row_marginals: Vec<u64>,
    col_marginals: Vec<u64>,
    total: u64,
}

impl JointHistogram {
    pub fn from_assignments(
        bin_ids: &[usize],
        labels: &[usize],
        bins: usize,
        classes: usize,
    ) -> Result<Self> {
        if bin_ids.len() != labels.len() {
            return Err(Error::Shape(format!(
                "{} bin ids for {} labels",
                bin_ids.len(),
                labels.len()
            )));
        }
        let mut counts = vec![0u64; bins * classes];
        for (&b, &y) in bin_ids.iter().zip(labels) {
            if b >= bins || y >= classes {
                return Err(Error::InvalidArgument(format!(
                    "cell ({b}, {y}) outside a {bins}x{classes} histogram"
                )));
            }
            counts[b * classes + y] += 1;
        }
        JointHistogram::from_counts(bins, classes, counts)
    }

    /// Builds a histogram from a row-major `bins × classes` count grid.
    pub fn from_counts(bins: usize, classes: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != bins * classes {
            return Err(Error::Shape(format!(
                "{} counts for a {bins}x{classes} histogram",
                counts.len()
            )));
        }
        let mut row_marginals = vec![0u64; bins];
        let mut col_marginals = vec![0u64; classes];
        for x in 0..bins {
            for y in 0..classes {
                let c = counts[x * classes + y];
                row_marginals[x] += c;
                col_marginals[y] += c;
            }
        }
        let total = row_marginals.iter().sum();
        Ok(JointHistogram {
            bins,
            classes,
            counts,
            row_marginals,
            col_marginals,
            total,
        })
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn count(&self, bin: usize, class: usize) -> u64 {
        self.counts[bin * self.classes + class]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn row_marginals(&self) -> &[u64] {
        &self.row_marginals
    }

    pub fn col_marginals(&self) -> &[u64] {
        &self.col_marginals
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Mutual information of a joint histogram, in bits, clamped at zero.
pub fn mutual_information(h: &JointHistogram) -> f64 {
    mutual_information_unclamped(h).max(0.0)
}

/// `Σ p(x,y)·log₂(p(x,y) / p(x)p(y))` with empty cells contributing 0.
pub fn mutual_information_unclamped(h: &JointHistogram) -> f64 {
    if h.total == 0 {
        return 0.0;
    }
    let n = h.total as f64;
    let mut mi = 0.0;
    for x in 0..h.bins {
        let nx = h.row_marginals[x];
        if nx == 0 {
            continue;
        }
        for y in 0..h.classes {
            let nxy = h.count(x, y);
            if nxy == 0 {
                continue;
            }
            let ny = h.col_marginals[y] as f64;
            let nxy = nxy as f64;
            mi += nxy / n * (nxy * n / (nx as f64 * ny)).log2();
        }
    }
    mi
}

/// Shannon entropy in bits of a count vector.
pub fn entropy_of_counts(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    -counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * p.log2()
        })
        .sum::<f64>()
}

/// Entropy in bits of a label sequence over `classes` classes.
pub fn entropy(labels: &[usize], classes: usize) -> Result<f64> {
    if labels.is_empty() {
        return Err(Error::InsufficientData(
            "entropy of an empty label list".into(),
        ));
    }
    let mut counts = vec![0u64; classes];
    for &y in labels {
        *counts
            .get_mut(y)
            .ok_or_else(|| Error::InvalidArgument(format!("label {y} out of range")))? += 1;
    }
    Ok(entropy_of_counts(&counts))
}

/// Fano's lower bound on the misclassification probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoBound {
    /// `(H(Y) − I(X;Y) − 1) / log₂ C`, unclamped.
    pub value: f64,
    /// The bound is negative and says nothing.
    pub vacuous: bool,
}

pub fn fano_lower_bound(h_y: f64, i_xy: f64, classes: usize) -> Result<FanoBound> {
    if classes < 2 {
        return Err(Error::InvalidArgument(format!(
            "Fano bound needs at least 2 classes, got {classes}"
        )));
    }
    let value = (h_y - i_xy - 1.0) / (classes as f64).log2();
    Ok(FanoBound {
        value,
        vacuous: value < 0.0,
    })
}

/// Second-order estimate of the error in the histogram MI caused by count
/// fluctuations `δn` (row-major `bins × classes`, like the histogram):
///
/// `ΔI ≈ (1/2N)·(Σ δn_xy²/n_xy − Σ δn_x²/n_x − Σ δn_y²/n_y)`
///
/// Marginal fluctuations are the row/column sums of `delta`. Empty cells are
/// skipped and must carry zero fluctuation. The value is in the natural
/// units of the expansion.
pub fn mi_fluctuation(h: &JointHistogram, delta: &[f64]) -> Result<f64> {
    if delta.len() != h.counts.len() {
        return Err(Error::Shape(format!(
            "{} fluctuations for a {}x{} histogram",
            delta.len(),
            h.bins,
            h.classes
        )));
    }
    if h.total == 0 {
        return Ok(0.0);
    }
    let mut dx = vec![0.0; h.bins];
    let mut dy = vec![0.0; h.classes];
    let mut joint = 0.0;
    for x in 0..h.bins {
        for y in 0..h.classes {
            let d = delta[x * h.classes + y];
            let n = h.count(x, y);
            if n == 0 {
                if d != 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "non-zero fluctuation {d} in empty cell ({x}, {y})"
                    )));
                }
                continue;
            }
            joint += d * d / n as f64;
            dx[x] += d;
            dy[y] += d;
        }
    }
    let marginal = |d: &[f64], n: &[u64]| -> f64 {
        d.iter()
            .zip(n)
            .filter(|(_, &n)| n > 0)
            .map(|(d, &n)| d * d / n as f64)
            .sum()
    };
    let rows = marginal(&dx, &h.row_marginals);
    let cols = marginal(&dy, &h.col_marginals);
    Ok((joint - rows - cols) / (2.0 * h.total as f64))
}

/// Poisson fluctuation `δn = √n` for every cell.
pub fn poisson_fluctuations(h: &JointHistogram) -> Vec<f64> {
    h.counts.iter().map(|&c| (c as f64).sqrt()).collect()
}

/// Per-base MI scores and the MI-descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct MiRanking {
    pub mi_bits: Vec<f64>,
    pub fluctuation: Vec<f64>,
    /// Base indices sorted by MI, highest first; ties keep conventional order.
    pub order: Vec<usize>,
    pub discretizers: Vec<Discretizer>,
}

impl MiRanking {
    pub fn len(&self) -> usize {
        self.mi_bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mi_bits.is_empty()
    }

    /// The `k` highest-MI base indices, best first.
    pub fn top_k(&self, k: usize) -> &[usize] {
        &self.order[..k.min(self.order.len())]
    }

    /// Position of each base in the MI order.
    pub fn selected_rank(&self) -> Vec<usize> {
        let mut rank = vec![0; self.order.len()];
        for (pos, &i) in self.order.iter().enumerate() {
            rank[i] = pos;
        }
        rank
    }

    /// CSV with columns `base_index, conventional_rank, mi_bits,
    /// fluctuation, selected_rank`, one row per base in conventional order.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(
            out,
            "base_index,conventional_rank,mi_bits,fluctuation,selected_rank"
        )?;
        for (i, rank) in self.selected_rank().into_iter().enumerate() {
            writeln!(
                out,
                "{i},{i},{:.16e},{:.16e},{rank}",
                self.mi_bits[i], self.fluctuation[i]
            )?;
        }
        Ok(())
    }
}

/// Scores every base of `basis` against the labels of `x` (`d × N`) and
/// sorts them by MI.
pub fn rank_bases(
    basis: &BasisSet,
    x: &Matrix,
    labels: &[usize],
    classes: usize,
    bins: usize,
) -> Result<MiRanking> {
    if basis.dim() != x.rows() {
        return Err(Error::Shape(format!(
            "bases of dimension {} against {}-dimensional data",
            basis.dim(),
            x.rows()
        )));
    }
    if labels.len() != x.cols() {
        return Err(Error::Shape(format!(
            "{} labels for {} samples",
            labels.len(),
            x.cols()
        )));
    }
    let z = basis.bases.matmul(x)?;
    let m = basis.len();
    let mut mi_bits = Vec::with_capacity(m);
    let mut fluctuation = Vec::with_capacity(m);
    let mut discretizers = Vec::with_capacity(m);
    for row in z.row_iter() {
        let disc = Discretizer::fit(row, bins)?;
        let hist = JointHistogram::from_assignments(&disc.assign(row), labels, bins, classes)?;
        mi_bits.push(mutual_information(&hist));
        fluctuation.push(mi_fluctuation(&hist, &poisson_fluctuations(&hist))?);
        discretizers.push(disc);
    }
    Ok(MiRanking {
        order: mi_order(&mi_bits),
        mi_bits,
        fluctuation,
        discretizers,
    })
}

/// Indices sorted by score descending; equal scores keep ascending index.
pub fn mi_order(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    order
}

/// The `k` highest-MI bases stacked as rows of a `k × d` projection matrix.
pub fn select_subspace(ranking: &MiRanking, basis: &BasisSet, k: usize) -> Result<Matrix> {
    if ranking.len() != basis.len() {
        return Err(Error::Shape(format!(
            "ranking of {} bases for a set of {}",
            ranking.len(),
            basis.len()
        )));
    }
    if k == 0 || k > basis.len() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} outside 1..={}",
            basis.len()
        )));
    }
    Ok(basis.bases.select_rows(ranking.top_k(k)))
}

/// `f = G·X`: continuous projections of the samples in `x` (`d × N`).
pub fn project(g: &Matrix, x: &Matrix) -> Result<Matrix> {
    g.matmul(x)
}
