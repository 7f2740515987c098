//! Layer-weighted qubit mapping and SWAP routing for OpenQASM 2.0 circuits.
//!
//! The pipeline parses a circuit, places logical qubits on a coupling graph,
//! inserts SWAPs until every two-qubit gate acts on coupled qubits, and
//! repeats the routing forward and backward to refine the starting layout.

pub mod arch;
pub mod circuit;
pub mod initial_map;
pub mod iterate;
pub mod mapping;
pub mod physical;
pub mod qasm;
pub mod router;
pub mod verify;
pub mod vf2;

pub use arch::{ArchError, ArchitectureGraph};
pub use circuit::{Gate, InteractionGraph, LayerPartition, LogicalCircuit, TwoQubitKind};
pub use initial_map::{initial_mapping, MapError};
pub use iterate::{run, Direction, IterationOutcome, IterationRecord};
pub use mapping::Mapping;
pub use physical::{physical_program, EmitOptions};
pub use qasm::{emit_qasm, parse_qasm, Program, QasmError};
pub use router::{route, RouterConfig, RoutingResult, SearchMode};
pub use verify::{verify, VerifyError};
