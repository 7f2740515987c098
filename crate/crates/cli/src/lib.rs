//! Library side of the `qroute` command: the single-circuit pipeline, the
//! directory benchmark runner and report formatting.

pub mod bench;
pub mod pipeline;
pub mod report;
