//! File formats, the experiment runner and the `parapac` command line.

pub mod experiment;
pub mod format;
pub mod run;

pub use experiment::{run_experiment, ExperimentSpec, ResultRow};
pub use format::{parse_instance, FormatError, ParsedFile};
