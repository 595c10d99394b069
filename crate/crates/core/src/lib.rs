//! Time series data augmentation with weighted DTW barycentric averaging.
//!
//! The crate provides:
//!
//! * [`warping`]: DTW distance and optimal alignment paths.
//! * [`barycenter`]: DBA and weighted DBA averaging.
//! * [`augment`]: the "Average Selected" weighting scheme and class-balanced
//!   synthetic generation.
//! * [`eval`]: 1-NN DTW classification and posterior-averaging ensembles.
//! * [`dataset`]: labeled datasets in the UCR label-first text format.

pub mod augment;
pub mod barycenter;
pub mod dataset;
mod error;
pub mod eval;
mod series;
pub mod warping;

pub use augment::{
    assign_weights_average_selected, augment_dataset, generate_synthetic, AugmentationPolicy,
    Augmented, Generation, SizingRule, SkipDiagnostic, Synthetic,
};
pub use barycenter::{
    dba, weighted_dba, weighted_dba_traced, DbaOutcome, DbaParams, WeightAssignment,
};
pub use dataset::{parse_dataset, read_dataset, write_dataset, Instance, LabeledDataset};
pub use error::{Error, Result};
pub use eval::{
    average_posteriors, classify_1nn, evaluate, one_hot_posteriors, Evaluation, ProbabilityMatrix,
};
pub use series::{Label, TimeSeries};
pub use warping::{dtw_distance, dtw_path, WarpingPath, Window};
