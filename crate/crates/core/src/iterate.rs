//! Forward/backward refinement of the starting layout.
//!
//! Each iteration routes the circuit forward, then routes the reversed
//! circuit starting from where the forward pass ended. The backward pass's
//! final layout seeds the next forward pass. Every traversal is a candidate
//! answer; the one with the fewest SWAPs wins.

use serde::{Deserialize, Serialize};

use crate::arch::ArchitectureGraph;
use crate::circuit::LogicalCircuit;
use crate::initial_map::{initial_mapping, MapError};
use crate::mapping::Mapping;
use crate::router::{route, RouterConfig, RoutingResult};

pub const DEFAULT_ITERATIONS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRecord {
    /// 1-based.
    pub iteration: usize,
    pub direction: Direction,
    pub swap_count: usize,
    pub initial_map_used: Mapping,
    /// Routing of the traversed circuit: the reversed one for backward passes.
    pub result: RoutingResult,
}

impl IterationRecord {
    /// The result expressed over the original gate order.
    pub fn oriented(&self, gate_count: usize) -> RoutingResult {
        match self.direction {
            Direction::Forward => self.result.clone(),
            Direction::Backward => self.result.reversed(gate_count),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationOutcome {
    pub best: usize,
    pub history: Vec<IterationRecord>,
    /// Best result over the original gate order.
    pub routed: RoutingResult,
}

impl IterationOutcome {
    pub fn best(&self) -> &IterationRecord {
        &self.history[self.best]
    }

    pub fn iterations_run(&self) -> usize {
        self.history.last().map_or(0, |r| r.iteration)
    }
}

/// Route `circuit` starting from the layer-weighted initial mapping.
pub fn run(
    circuit: &LogicalCircuit,
    ag: &ArchitectureGraph,
    cfg: &RouterConfig,
    iterations: usize,
) -> Result<IterationOutcome, MapError> {
    let start = initial_mapping(circuit, ag)?;
    Ok(run_from(circuit, ag, cfg, iterations, start))
}

/// Route `circuit` starting from an explicit complete mapping.
pub fn run_from(
    circuit: &LogicalCircuit,
    ag: &ArchitectureGraph,
    cfg: &RouterConfig,
    iterations: usize,
    start: Mapping,
) -> IterationOutcome {
    assert!(iterations >= 1, "at least one iteration is required");
    let reversed = circuit.reverse();
    let mut history: Vec<IterationRecord> = Vec::with_capacity(2 * iterations);
    let mut best = 0;
    let mut current = start;

    'outer: for iteration in 1..=iterations {
        for (direction, traversed) in [(Direction::Forward, circuit), (Direction::Backward, &reversed)] {
            let result = route(traversed, &current, ag, cfg);
            current = result.final_map.clone();
            history.push(IterationRecord {
                iteration,
                direction,
                swap_count: result.swap_count,
                initial_map_used: result.initial_map.clone(),
                result,
            });
            let last = history.len() - 1;
            if history[last].swap_count < history[best].swap_count {
                best = last;
            }
            if history[best].swap_count == 0 {
                break 'outer;
            }
        }
    }

    let routed = history[best].oriented(circuit.len());
    IterationOutcome {
        best,
        history,
        routed,
    }
}
