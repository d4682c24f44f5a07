//! Evaluation of multilabel predictions, fold partitioning and a baseline
//! predictor.

pub mod baseline;
pub mod metrics;
pub mod partition;
pub mod predictions;
pub mod stats;

pub use baseline::baseline_predict;
pub use metrics::{
    confusion, evaluate, f_measure, hamming_loss, macro_fm, one_error, precision, ranking_loss,
    recall, ConfusionCounts, EmptyPolicy, LabelMatrix, MacroMode, MetricReport, PredictionSet,
    TieMode,
};
pub use partition::{k_fold_indices, k_fold_partition, Fold};
pub use predictions::{read_predictions_csv, write_predictions_csv};
pub use stats::pearson;
