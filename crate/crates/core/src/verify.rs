//! Independent replay check for routed circuits.
//!
//! Only the physical operation list is trusted: gate ids carried by the ops
//! are ignored. Starting from the reported initial mapping, each executed
//! gate must sit on a coupler, act on the logical pair whose gate is next in
//! line on both qubits, and every logical gate must be consumed exactly once.

use std::collections::VecDeque;

use thiserror::Error;

use crate::arch::ArchitectureGraph;
use crate::circuit::{LogicalCircuit, TwoQubitKind};
use crate::mapping::Mapping;
use crate::router::{RoutedOp, RoutingResult};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("initial mapping is incomplete or sized for a different circuit/device")]
    BadInitialMap,
    #[error("op {op}: nodes {a} and {b} are not coupled")]
    NotAdjacent { op: usize, a: usize, b: usize },
    #[error("op {op}: physical node {node} holds no logical qubit")]
    EmptyNode { op: usize, node: usize },
    #[error("op {op}: no pending gate acts on logical ({control}, {target}) in order")]
    OutOfOrder { op: usize, control: usize, target: usize },
    #[error("op {op}: gate kind differs from the logical gate")]
    WrongKind { op: usize },
    #[error("{0} logical gates were never executed")]
    Unexecuted(usize),
    #[error("reported swap count {reported} differs from {actual} swaps in the op list")]
    SwapCount { reported: usize, actual: usize },
    #[error("reported final mapping differs from the replayed one")]
    FinalMap,
}

/// Replay `result` against `circuit` on `ag`.
pub fn verify(circuit: &LogicalCircuit, result: &RoutingResult, ag: &ArchitectureGraph) -> Result<(), VerifyError> {
    let start = &result.initial_map;
    if !start.is_complete() || start.logical_count() != circuit.qubit_count() || start.physical_count() != ag.node_count() {
        return Err(VerifyError::BadInitialMap);
    }
    let mut queues: Vec<VecDeque<usize>> = vec![VecDeque::new(); circuit.qubit_count()];
    for g in circuit.gates() {
        queues[g.control].push_back(g.id);
        queues[g.target].push_back(g.id);
    }
    let mut map: Mapping = start.clone();
    let mut swaps = 0;
    let mut executed = 0;
    for (op, item) in result.ops.iter().enumerate() {
        let (a, b) = match *item {
            RoutedOp::Swap { a, b } => (a, b),
            RoutedOp::Gate { control, target, .. } => (control, target),
        };
        if a >= ag.node_count() || b >= ag.node_count() || !ag.is_adjacent(a, b) {
            return Err(VerifyError::NotAdjacent { op, a, b });
        }
        match *item {
            RoutedOp::Swap { a, b } => {
                map.swap_physical(a, b);
                swaps += 1;
            }
            RoutedOp::Gate { kind, .. } => {
                let control = map.logical(a).ok_or(VerifyError::EmptyNode { op, node: a })?;
                let target = map.logical(b).ok_or(VerifyError::EmptyNode { op, node: b })?;
                let head = queues[control].front().copied();
                let gate = match head {
                    Some(g) if queues[target].front() == Some(&g) => circuit.gates()[g],
                    _ => return Err(VerifyError::OutOfOrder { op, control, target }),
                };
                let same_pair = match gate.kind {
                    TwoQubitKind::Cx => gate.control == control && gate.target == target,
                    TwoQubitKind::Swap => gate.pair() == crate::circuit::ordered(control, target),
                };
                if !same_pair {
                    return Err(VerifyError::OutOfOrder { op, control, target });
                }
                if TwoQubitKind::from(kind) != gate.kind {
                    return Err(VerifyError::WrongKind { op });
                }
                queues[control].pop_front();
                queues[target].pop_front();
                executed += 1;
            }
        }
    }
    if executed != circuit.len() {
        return Err(VerifyError::Unexecuted(circuit.len() - executed));
    }
    if swaps != result.swap_count {
        return Err(VerifyError::SwapCount {
            reported: result.swap_count,
            actual: swaps,
        });
    }
    if map != result.final_map {
        return Err(VerifyError::FinalMap);
    }
    Ok(())
}
