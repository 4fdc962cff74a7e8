//! Parameterized consistency checking and PAC learning for boolean-formula
//! and graph-deletion concept classes.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; file formats, timing and the command-line surface
//! live in the `parapac-cli` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod assignment;
pub mod consistency;
pub mod formula;
pub mod graph;
pub mod hypothesis;
pub mod metalearn;
pub mod oracle;
pub mod params;
pub mod reductions;

pub use assignment::{Assignment, LabeledSample, SampleSet};
pub use consistency::{ConsistencyInstance, ConsistencyOutcome, InstanceSamples};
pub use error::{Error, Result};
pub use formula::{Clause, CnfFormula, DnfFormula, Literal, Term};
pub use graph::{ForbiddenFamily, Graph, GraphSampleSet, VertexSet};
pub use hypothesis::{ConceptKind, GraphProperty, Hypothesis};
pub use params::{Backdoor, ParamInfo};
