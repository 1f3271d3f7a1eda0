//! Mutual-information-based selection of subspace bases.
//!
//! A subspace transform (DCT, PCA, LDA or a ternary random projection)
//! yields a full set of candidate base vectors in its own conventional
//! order. Instead of keeping the first `k`, every base is scored by the
//! histogram mutual information between the training projections onto it
//! and the class labels, and the `k` most informative bases are kept.
//!
//! The crate also carries the evaluation pieces needed to compare both
//! selectors: dataset loading and repeated stratified splits, Gaussian
//! naive Bayes and k-NN classifiers, and an experiment runner that renders
//! accuracy tables.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod dataset;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod mi;
pub mod transforms;

pub use classify::{accuracy, ClassifierKind, GaussianNb, Knn};
pub use dataset::{Dataset, Split, SplitPlan};
pub use error::{Error, ErrorClass, Result};
pub use experiment::{
    basis_difference, CellKey, ExperimentConfig, ExperimentReport, ReportFormat, Selector,
};
pub use linalg::{EigenDecomposition, Matrix};
pub use mi::{Discretizer, FanoBound, JointHistogram, MiRanking};
pub use transforms::{BasisSet, TransformKind};
