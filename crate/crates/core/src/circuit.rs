//! Logical circuit model: the two-qubit gate list that routing works on,
//! ASAP layering, layer weights and the weighted interaction graph.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::qasm::{GateClass, Program, RawGate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("unknown gate id {0}")]
    UnknownGate(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoQubitKind {
    Cx,
    Swap,
}

impl TwoQubitKind {
    pub fn opcode(self) -> &'static str {
        match self {
            TwoQubitKind::Cx => "cx",
            TwoQubitKind::Swap => "swap",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    pub id: usize,
    pub control: usize,
    pub target: usize,
    pub kind: TwoQubitKind,
}

impl Gate {
    pub fn qubits(&self) -> [usize; 2] {
        [self.control, self.target]
    }

    /// The qubit pair as an unordered key.
    pub fn pair(&self) -> (usize, usize) {
        ordered(self.control, self.target)
    }
}

pub(crate) fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The routed part of a circuit plus everything else needed to rebuild it.
///
/// Single-qubit gates and markers are attached to the next two-qubit gate
/// touching one of their qubits (`attachments[i]` precedes gate `i`); those
/// with no later two-qubit gate live in the trailing slot
/// `attachments[gates.len()]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalCircuit {
    qubit_count: usize,
    gates: Vec<Gate>,
    attachments: Vec<Vec<RawGate>>,
}

impl LogicalCircuit {
    pub fn from_program(program: &Program) -> Self {
        let mut gates = Vec::new();
        let mut positions = Vec::new();
        for (pos, raw) in program.gates.iter().enumerate() {
            if raw.class() == GateClass::TwoQubit {
                let kind = if raw.name == "swap" {
                    TwoQubitKind::Swap
                } else {
                    TwoQubitKind::Cx
                };
                gates.push(Gate {
                    id: gates.len(),
                    control: raw.qubits[0],
                    target: raw.qubits[1],
                    kind,
                });
                positions.push(pos);
            }
        }

        // Scan backwards remembering, per qubit, the next two-qubit gate.
        let trailing = gates.len();
        let mut next_on = vec![trailing; program.qubit_count];
        let mut anchor = vec![trailing; program.gates.len()];
        let mut cursor = gates.len();
        for (pos, raw) in program.gates.iter().enumerate().rev() {
            if cursor > 0 && positions[cursor - 1] == pos {
                cursor -= 1;
                for &q in &raw.qubits {
                    next_on[q] = cursor;
                }
            } else {
                anchor[pos] = raw
                    .qubits
                    .iter()
                    .map(|&q| next_on[q])
                    .min()
                    .unwrap_or(trailing);
            }
        }
        let mut attachments = vec![Vec::new(); gates.len() + 1];
        for (pos, raw) in program.gates.iter().enumerate() {
            if raw.class() != GateClass::TwoQubit {
                attachments[anchor[pos]].push(raw.clone());
            }
        }
        LogicalCircuit {
            qubit_count: program.qubit_count,
            gates,
            attachments,
        }
    }

    /// A CNOT-only circuit.
    pub fn from_pairs(qubit_count: usize, pairs: &[(usize, usize)]) -> Self {
        let gates: Vec<Gate> = pairs
            .iter()
            .enumerate()
            .map(|(id, &(control, target))| {
                assert!(control != target, "gate {id} acts twice on qubit {control}");
                assert!(control < qubit_count && target < qubit_count);
                Gate {
                    id,
                    control,
                    target,
                    kind: TwoQubitKind::Cx,
                }
            })
            .collect();
        let attachments = vec![Vec::new(); gates.len() + 1];
        LogicalCircuit {
            qubit_count,
            gates,
            attachments,
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Non-routed operations emitted just before gate `index`, or after the
    /// last gate when `index == len()`.
    pub fn attachments(&self, index: usize) -> &[RawGate] {
        &self.attachments[index]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.gates.iter().map(|g| (g.control, g.target)).collect()
    }

    /// The same two-qubit gates in reverse order, with fresh ids.
    ///
    /// Attachments are dropped: the reversed circuit only ever drives
    /// routing, never emission.
    pub fn reverse(&self) -> LogicalCircuit {
        let gates: Vec<Gate> = self
            .gates
            .iter()
            .rev()
            .enumerate()
            .map(|(id, g)| Gate { id, ..*g })
            .collect();
        LogicalCircuit {
            qubit_count: self.qubit_count,
            attachments: vec![Vec::new(); gates.len() + 1],
            gates,
        }
    }

    pub fn partition(&self) -> LayerPartition {
        LayerPartition::of(self.qubit_count, self.gates.iter().map(Gate::qubits))
    }

    /// Logical qubits used by the first `k` ASAP layers.
    pub fn front_layers(&self, k: usize) -> BTreeSet<usize> {
        let partition = self.partition();
        self.gates
            .iter()
            .zip(&partition.layer_of)
            .filter(|(_, &layer)| layer <= k)
            .flat_map(|(g, _)| g.qubits())
            .collect()
    }

    pub fn interaction_graph(&self, partition: &LayerPartition) -> InteractionGraph {
        let mut graph = InteractionGraph::new(self.qubit_count);
        for (gate, &layer) in self.gates.iter().zip(&partition.layer_of) {
            graph.add(gate.control, gate.target, partition.weight_of_layer(layer));
        }
        graph
    }
}

/// ASAP layering of a gate sequence. Layers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPartition {
    pub depth: usize,
    pub layer_of: Vec<usize>,
}

impl LayerPartition {
    /// Each gate lands one layer after the latest earlier gate sharing a qubit.
    pub fn of<I>(qubit_count: usize, gates: I) -> Self
    where
        I: IntoIterator<Item = [usize; 2]>,
    {
        let mut last = vec![0usize; qubit_count];
        let mut layer_of = Vec::new();
        let mut depth = 0;
        for [a, b] in gates {
            let layer = last[a].max(last[b]) + 1;
            last[a] = layer;
            last[b] = layer;
            depth = depth.max(layer);
            layer_of.push(layer);
        }
        LayerPartition { depth, layer_of }
    }

    /// Layer weight: `depth - layer + 1`, so the front layer weighs `depth`
    /// and the last layer weighs 1.
    pub fn gate_weight(&self, gate: usize) -> Result<u64, CircuitError> {
        self.layer_of
            .get(gate)
            .map(|&layer| self.weight_of_layer(layer))
            .ok_or(CircuitError::UnknownGate(gate))
    }

    pub(crate) fn weight_of_layer(&self, layer: usize) -> u64 {
        (self.depth - layer + 1) as u64
    }
}

/// Undirected, weighted qubit interaction graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InteractionGraph {
    qubit_count: usize,
    weights: BTreeMap<(usize, usize), u64>,
}

impl InteractionGraph {
    pub fn new(qubit_count: usize) -> Self {
        InteractionGraph {
            qubit_count,
            weights: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, a: usize, b: usize, weight: u64) {
        *self.weights.entry(ordered(a, b)).or_insert(0) += weight;
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn weight(&self, a: usize, b: usize) -> u64 {
        self.weights.get(&ordered(a, b)).copied().unwrap_or(0)
    }

    /// Edges keyed by `(min, max)` in ascending key order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.weights.iter().map(|(&k, &w)| (k, w))
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    /// Interaction partners of `q` with the shared edge weight.
    pub fn neighbors(&self, q: usize) -> Vec<(usize, u64)> {
        self.weights
            .iter()
            .filter_map(|(&(a, b), &w)| {
                if a == q {
                    Some((b, w))
                } else if b == q {
                    Some((a, w))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Qubits with at least one incident edge.
    pub fn active_qubits(&self) -> BTreeSet<usize> {
        self.weights.keys().flat_map(|&(a, b)| [a, b]).collect()
    }
}
