//! Parse, map, route, verify and re-emit a single circuit.

use std::path::Path;
use std::time::Instant;

use qroute::iterate::{run, DEFAULT_ITERATIONS};
use qroute::{
    emit_qasm, parse_qasm, physical_program, verify, ArchError, ArchitectureGraph, EmitOptions, LogicalCircuit,
    MapError, QasmError, RouterConfig, VerifyError,
};

use crate::report::CircuitReport;

#[derive(Debug, Clone)]
pub struct Options {
    pub router: RouterConfig,
    pub iterations: usize,
    pub emit: EmitOptions,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            router: RouterConfig::default(),
            iterations: DEFAULT_ITERATIONS,
            emit: EmitOptions::default(),
            timing: false,
        }
    }
}

#[derive(Debug)]
pub enum PipelineError {
    Parse(QasmError),
    Arch(String),
    Invariant(VerifyError),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Parse(_) => 1,
            PipelineError::Arch(_) => 2,
            PipelineError::Invariant(_) => 3,
        }
    }
}

impl std::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PipelineError::Parse(e) => write!(f, "parse error: {e}"),
            PipelineError::Arch(e) => write!(f, "architecture error: {e}"),
            PipelineError::Invariant(e) => write!(f, "internal invariant violated: {e}"),
        }
    }
}

impl std::error::Error for PipelineError {}

impl From<ArchError> for PipelineError {
    fn from(e: ArchError) -> Self {
        PipelineError::Arch(e.to_string())
    }
}

/// A preset name, or a path to an edge-list JSON file.
pub fn load_arch(selector: &str) -> Result<ArchitectureGraph, PipelineError> {
    let path = Path::new(selector);
    if selector.ends_with(".json") || path.is_file() {
        Ok(ArchitectureGraph::from_json_file(path)?)
    } else {
        Ok(ArchitectureGraph::preset(selector)?)
    }
}

#[derive(Debug, Clone)]
pub struct Mapped {
    pub report: CircuitReport,
    pub qasm: String,
}

pub fn map_source(
    name: &str,
    text: &str,
    ag: &ArchitectureGraph,
    opts: &Options,
) -> Result<Mapped, PipelineError> {
    let started = Instant::now();
    let program = parse_qasm(text).map_err(PipelineError::Parse)?;
    opts.router.validate().map_err(PipelineError::Arch)?;
    let circuit = LogicalCircuit::from_program(&program);
    let outcome = run(&circuit, ag, &opts.router, opts.iterations.max(1)).map_err(|e| match e {
        MapError::TooManyQubits { .. } => PipelineError::Arch(e.to_string()),
    })?;
    verify(&circuit, &outcome.routed, ag).map_err(PipelineError::Invariant)?;
    let physical = physical_program(&program, &circuit, &outcome.routed, ag.node_count(), opts.emit);
    let best = outcome.best();
    let elapsed = started.elapsed().as_secs_f64() * 1000.0;
    let report = CircuitReport {
        circuit_name: name.to_string(),
        qubit_num: program.qubit_count,
        gate_num: program.gate_count(),
        cnot_num: program.two_qubit_count(),
        swap_count: outcome.routed.swap_count,
        additional_cnots: outcome.routed.additional_cnots(),
        depth_in: program.depth(),
        depth_out: physical.depth(),
        wall_time_ms: opts.timing.then_some(elapsed),
        direction_of_best: best.direction,
        iterations_run: outcome.iterations_run(),
        delta_vs_baseline: None,
    };
    Ok(Mapped {
        report,
        qasm: emit_qasm(&physical),
    })
}
