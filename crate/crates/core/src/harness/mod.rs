//! Exhaustive enumeration, the per-graph classification pipeline and
//! theorem-verification reports.

mod record;
mod scan;
pub mod verify;

pub use record::ClassificationRecord;
pub use scan::{classify, enumerate, is_multiplier_minimal, scan, ClassifyOptions, ScanOptions};
