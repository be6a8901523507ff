//! Command-line front end for `ordclosure`: input parsing, the analysis
//! pipeline and report formats.

pub mod analyze;
pub mod poly;
pub mod render;
pub mod report;
pub mod table;

pub use analyze::{analyze, build_order, run, AnalyzeError, AnalyzeOptions, InputSpec};
pub use report::AnalysisReport;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const UNRESOLVED: i32 = 3;
}
