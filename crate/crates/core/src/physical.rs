//! Rebuild a QASM program over device nodes from a routed circuit.

use crate::circuit::{LogicalCircuit, TwoQubitKind};
use crate::qasm::{Program, RawGate};
use crate::router::{RoutedOp, RoutingResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EmitOptions {
    /// Write inserted SWAPs as three CNOTs. Swap gates present in the input
    /// are kept as written.
    pub decompose_swaps: bool,
}

/// Physical program for `result`, which must be expressed over the gate
/// order of `circuit`. Single-qubit gates and markers are emitted just
/// before the two-qubit gate they are attached to, with qubits rewritten
/// through the mapping in force at that point; trailing ones use the final
/// mapping. `source` supplies the register names.
pub fn physical_program(
    source: &Program,
    circuit: &LogicalCircuit,
    result: &RoutingResult,
    device_size: usize,
    options: EmitOptions,
) -> Program {
    let mut out = Program {
        qreg_name: source.qreg_name.clone(),
        qubit_count: device_size,
        cregs: source.cregs.clone(),
        gates: Vec::with_capacity(source.gates.len() + 3 * result.swap_count),
    };
    let mut map = result.initial_map.clone();
    let relabel = |raw: &RawGate, map: &crate::mapping::Mapping| {
        let mut g = raw.clone();
        for q in &mut g.qubits {
            *q = map.phys(*q);
        }
        g
    };
    for op in &result.ops {
        match *op {
            RoutedOp::Gate {
                gate,
                control,
                target,
                kind,
            } => {
                for raw in circuit.attachments(gate) {
                    out.gates.push(relabel(raw, &map));
                }
                out.gates.push(match TwoQubitKind::from(kind) {
                    TwoQubitKind::Cx => RawGate::cx(control, target),
                    TwoQubitKind::Swap => RawGate::swap(control, target),
                });
            }
            RoutedOp::Swap { a, b } => {
                if options.decompose_swaps {
                    out.gates.extend([RawGate::cx(a, b), RawGate::cx(b, a), RawGate::cx(a, b)]);
                } else {
                    out.gates.push(RawGate::swap(a, b));
                }
                map.swap_physical(a, b);
            }
        }
    }
    for raw in circuit.attachments(circuit.len()) {
        out.gates.push(relabel(raw, &map));
    }
    out
}
