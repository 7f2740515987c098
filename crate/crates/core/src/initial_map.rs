//! Initial placement: layer-weighted greedy subgraph embedding followed by
//! completion of the qubits the embedding could not place.

use thiserror::Error;

use crate::arch::ArchitectureGraph;
use crate::circuit::{InteractionGraph, LogicalCircuit};
use crate::mapping::Mapping;
use crate::vf2::{find_embedding, EmbedOutcome};

/// Search states allowed per embeddability check. A check that runs out is
/// treated as "does not embed".
pub const DEFAULT_EMBED_BUDGET: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("circuit uses {logical} qubits but the device only has {physical}")]
    TooManyQubits { logical: usize, physical: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedEdge {
    pub a: usize,
    pub b: usize,
    pub weight: u64,
}

/// Interaction edges accepted by [`greedy_embed`], in acceptance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbeddableSubgraph {
    pub edges: Vec<WeightedEdge>,
}

impl EmbeddableSubgraph {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }

    fn weighted(&self) -> Vec<(usize, usize, u64)> {
        self.edges.iter().map(|e| (e.a, e.b, e.weight)).collect()
    }
}

/// Heaviest edges first; equal weights in ascending `(min, max)` order.
pub fn sort_edges(ig: &InteractionGraph) -> Vec<WeightedEdge> {
    let mut edges: Vec<WeightedEdge> = ig
        .edges()
        .map(|((a, b), weight)| WeightedEdge { a, b, weight })
        .collect();
    edges.sort_by(|x, y| y.weight.cmp(&x.weight).then((x.a, x.b).cmp(&(y.a, y.b))));
    edges
}

/// Keep each edge (in the given order) whose addition leaves the accepted
/// set embeddable in `ag`, then return one concrete embedding of the
/// accepted set as a partial mapping.
pub fn greedy_embed(
    sorted_edges: &[WeightedEdge],
    ag: &ArchitectureGraph,
    logical_count: usize,
) -> (EmbeddableSubgraph, Mapping) {
    greedy_embed_with_budget(sorted_edges, ag, logical_count, DEFAULT_EMBED_BUDGET)
}

pub fn greedy_embed_with_budget(
    sorted_edges: &[WeightedEdge],
    ag: &ArchitectureGraph,
    logical_count: usize,
    budget: u64,
) -> (EmbeddableSubgraph, Mapping) {
    let mut kept = EmbeddableSubgraph::default();
    // Witness embedding of `kept`; lets most checks succeed without a search.
    let mut witness = Mapping::empty(logical_count, ag.node_count());

    for &edge in sorted_edges {
        if extend_witness(&mut witness, edge, ag) {
            kept.edges.push(edge);
            continue;
        }
        let mut trial = kept.weighted();
        trial.push((edge.a, edge.b, edge.weight));
        if let EmbedOutcome::Found(pairs) = find_embedding(ag, &trial, budget) {
            kept.edges.push(edge);
            witness = Mapping::from_pairs(logical_count, ag.node_count(), &pairs);
        }
    }

    let partial = match find_embedding(ag, &kept.weighted(), budget) {
        EmbedOutcome::Found(pairs) => Mapping::from_pairs(logical_count, ag.node_count(), &pairs),
        _ => witness,
    };
    (kept, partial)
}

/// Try to accommodate `edge` by growing the current witness in place.
fn extend_witness(witness: &mut Mapping, edge: WeightedEdge, ag: &ArchitectureGraph) -> bool {
    let free_neighbor = |m: &Mapping, u: usize| ag.neighbors(u).iter().copied().find(|&w| !m.is_occupied(w));
    match (witness.physical(edge.a), witness.physical(edge.b)) {
        (Some(u), Some(v)) => ag.is_adjacent(u, v),
        (Some(u), None) | (None, Some(u)) => {
            let new = if witness.is_mapped(edge.a) { edge.b } else { edge.a };
            match free_neighbor(witness, u) {
                Some(w) => {
                    witness.assign(new, w);
                    true
                }
                None => false,
            }
        }
        (None, None) => {
            for u in 0..ag.node_count() {
                if witness.is_occupied(u) {
                    continue;
                }
                if let Some(w) = free_neighbor(witness, u) {
                    witness.assign(edge.a, u);
                    witness.assign(edge.b, w);
                    return true;
                }
            }
            false
        }
    }
}

/// Completion score of placing unmapped `q` on free node `v`: the sum over
/// placed interaction partners `r` of `(diameter - dist(v, r)) * w(q, r)`.
pub fn f_val(
    q: usize,
    v: usize,
    partial: &Mapping,
    ig: &InteractionGraph,
    ag: &ArchitectureGraph,
) -> u64 {
    let dia = ag.diameter() as u64;
    ig.neighbors(q)
        .into_iter()
        .filter_map(|(r, w)| partial.physical(r).map(|u| (dia - ag.dist(u, v) as u64) * w))
        .sum()
}

/// Complete a partial mapping.
///
/// Unplaced interacting qubits are committed one at a time: every (qubit,
/// candidate node) pair is scored with [`f_val`] and the best pair wins,
/// ties going to the lowest qubit and then the lowest node. Candidates are
/// the free nodes adjacent to occupied ones, or the nearest free nodes if
/// that frontier is empty. Qubits without any two-qubit gate go last, onto
/// the lowest free nodes. An empty partial mapping becomes the identity.
pub fn finalize(
    partial: &Mapping,
    ig: &InteractionGraph,
    ag: &ArchitectureGraph,
) -> Result<Mapping, MapError> {
    let logical = partial.logical_count();
    let n = ag.node_count();
    if logical > n {
        return Err(MapError::TooManyQubits {
            logical,
            physical: n,
        });
    }
    if partial.mapped_count() == 0 {
        return Ok(Mapping::identity(logical, n));
    }
    let mut result = partial.clone();
    let active = ig.active_qubits();

    loop {
        let pending: Vec<usize> = active.iter().copied().filter(|&q| !result.is_mapped(q)).collect();
        if pending.is_empty() {
            break;
        }
        let candidates = candidate_nodes(&result, ag);
        let mut best: Option<(u64, usize, usize)> = None;
        for &q in &pending {
            for &v in &candidates {
                let score = f_val(q, v, &result, ig, ag);
                // Iteration is ascending in (q, v), so strict > keeps the lowest on ties.
                if best.is_none_or(|(s, _, _)| score > s) {
                    best = Some((score, q, v));
                }
            }
        }
        let (_, q, v) = best.expect("a free node exists while qubits remain unplaced");
        result.assign(q, v);
    }

    for q in 0..logical {
        if !result.is_mapped(q) {
            let v = (0..n).find(|&v| !result.is_occupied(v)).unwrap();
            result.assign(q, v);
        }
    }
    Ok(result)
}

fn candidate_nodes(m: &Mapping, ag: &ArchitectureGraph) -> Vec<usize> {
    let n = ag.node_count();
    let frontier: Vec<usize> = (0..n)
        .filter(|&v| !m.is_occupied(v) && ag.neighbors(v).iter().any(|&u| m.is_occupied(u)))
        .collect();
    if !frontier.is_empty() {
        return frontier;
    }
    let gap = |v: usize| (0..n).filter(|&u| m.is_occupied(u)).map(|u| ag.dist(u, v)).min();
    let free: Vec<(usize, u32)> = (0..n)
        .filter(|&v| !m.is_occupied(v))
        .filter_map(|v| gap(v).map(|d| (v, d)))
        .collect();
    let nearest = free.iter().map(|&(_, d)| d).min();
    free.into_iter()
        .filter(|&(_, d)| Some(d) == nearest)
        .map(|(v, _)| v)
        .collect()
}

/// Full placement pipeline for a circuit.
pub fn initial_mapping(
    circuit: &LogicalCircuit,
    ag: &ArchitectureGraph,
) -> Result<Mapping, MapError> {
    if circuit.qubit_count() > ag.node_count() {
        return Err(MapError::TooManyQubits {
            logical: circuit.qubit_count(),
            physical: ag.node_count(),
        });
    }
    let ig = circuit.interaction_graph(&circuit.partition());
    let (_, partial) = greedy_embed(&sort_edges(&ig), ag, circuit.qubit_count());
    finalize(&partial, &ig, ag)
}
