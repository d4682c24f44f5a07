//! Analysis of concurrence among imbalanced labels in multilabel datasets.
//!
//! The crate is organised around an immutable [`MultiLabelDataset`]:
//!
//! * [`formats`] reads and writes ARFF data with MULAN (XML) or MEKA (`-C n`)
//!   label designations, in dense or sparse encoding.
//! * [`imbalance`] computes the per-label imbalance ratio (IRLbl) and the
//!   MeanIR / MaxIR / Card / Dens aggregates.
//! * [`concurrence`] computes SCUMBLE per instance, per dataset and per label,
//!   with coefficients of variation, and ranks difficult labels.
//! * [`resampling`] implements the REMEDIAL decoupling resampler plus the
//!   label-powerset random over/undersamplers LP-ROS and LP-RUS.
//! * [`evaluation`] holds example-based, label-based and ranking-based
//!   multilabel metrics, seeded k-fold partitioning, a Pearson helper and a
//!   nearest-neighbour baseline predictor.
//! * [`report`] formats concurrence reports (text and JSON) and chord
//!   diagrams (SVG).
//!
//! ```
//! use concur::{ConcurrenceProfile, ImbalanceProfile, MultiLabelDataset};
//!
//! // Two labels; the minority label B only ever appears next to A.
//! let ds = MultiLabelDataset::from_labelsets(
//!     "toy",
//!     &["A", "B"],
//!     vec![vec![0], vec![0], vec![0, 1], vec![0]],
//! )
//! .unwrap();
//! let imbalance = ImbalanceProfile::compute(&ds).unwrap();
//! assert_eq!(imbalance.mean_ir, 2.5);
//! let concurrence = ConcurrenceProfile::compute(&ds, &imbalance).unwrap();
//! assert!((concurrence.scumble - 0.05).abs() < 1e-12);
//! ```

pub mod concurrence;
pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod formats;
pub mod imbalance;
pub mod report;
pub mod resampling;

pub use dataset::{
    Attribute, AttributeKind, CoOccurrenceMatrix, Instance, LabelSet, MultiLabelDataset, Value,
    Violation, ViolationRule,
};
pub use error::{Error, Result};

pub use concurrence::{difficult_labels, ConcurrenceProfile, DifficultLabel};
pub use imbalance::ImbalanceProfile;
pub use resampling::{lp_ros, lp_rus, remedial, ResampleOutcome};
