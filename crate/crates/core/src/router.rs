//! SWAP insertion.
//!
//! Whenever no remaining gate can run, the router enumerates short SWAP
//! sequences over the couplers touching the look-ahead layers, scores each
//! by executable gates per inserted SWAP, and breaks ties on that score with
//! a windowed weight-times-closeness sum over upcoming gates. If no
//! sequence unlocks anything, a single SWAP shortens the closest blocked
//! front gate instead.

use std::cmp::Ordering;
use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arch::ArchitectureGraph;
use crate::circuit::{ordered, Gate, LayerPartition, LogicalCircuit, TwoQubitKind};
use crate::mapping::Mapping;

/// A SWAP on a physical coupler, stored as `(min, max)`.
pub type Swap = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Every sequence of length `1..=search_depth`.
    Fixed,
    /// All sequences of length 1 and 2, plus one-SWAP extensions of the
    /// best-ranked length-2 sequences.
    Imp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouterConfig {
    pub search_depth: usize,
    pub candidate_layers: usize,
    pub wnd_base: usize,
    pub wnd_threshold: usize,
    pub wnd_factor: f64,
    pub mode: SearchMode,
    pub top_k: usize,
}

impl Default for RouterConfig {
    fn default() -> Self {
        RouterConfig {
            search_depth: 3,
            candidate_layers: 3,
            wnd_base: 30,
            wnd_threshold: 4000,
            wnd_factor: 1.5,
            mode: SearchMode::Fixed,
            top_k: 50,
        }
    }
}

impl RouterConfig {
    pub fn with_depth(depth: usize) -> Self {
        RouterConfig {
            search_depth: depth,
            ..Self::default()
        }
    }

    pub fn imp() -> Self {
        RouterConfig {
            search_depth: 2,
            mode: SearchMode::Imp,
            ..Self::default()
        }
    }

    /// Look-ahead window for `remaining` unexecuted gates.
    pub fn window(&self, remaining: usize) -> usize {
        if remaining > self.wnd_threshold {
            (self.wnd_factor * (remaining as f64).sqrt()).floor() as usize
        } else {
            self.wnd_base
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let fields = [
            ("search_depth", self.search_depth),
            ("candidate_layers", self.candidate_layers),
            ("wnd_base", self.wnd_base),
            ("wnd_threshold", self.wnd_threshold),
            ("top_k", self.top_k),
        ];
        for (name, value) in fields {
            if value == 0 {
                return Err(format!("{name} must be positive"));
            }
        }
        if self.wnd_factor.is_nan() || self.wnd_factor <= 0.0 {
            return Err("wnd_factor must be positive".to_string());
        }
        Ok(())
    }
}

/// Executable gates per SWAP, compared exactly.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    pub executable: usize,
    pub swaps: usize,
}

impl Ratio {
    pub fn new(executable: usize, swaps: usize) -> Self {
        assert!(swaps > 0);
        Ratio { executable, swaps }
    }

    pub fn as_f64(self) -> f64 {
        self.executable as f64 / self.swaps as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.executable * other.swaps).cmp(&(other.executable * self.swaps))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapSequence {
    pub swaps: Vec<Swap>,
    /// Gates runnable after applying every SWAP of the sequence.
    pub executable: usize,
    pub resulting_map: Mapping,
}

impl SwapSequence {
    pub fn gval(&self) -> Ratio {
        Ratio::new(self.executable, self.swaps.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum RoutedOp {
    /// Logical gate `gate` executed on physical `(control, target)`.
    Gate {
        gate: usize,
        control: usize,
        target: usize,
        kind: GateKindRepr,
    },
    /// Inserted SWAP on a physical coupler.
    Swap { a: usize, b: usize },
}

/// Serializable mirror of [`TwoQubitKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKindRepr {
    Cx,
    Swap,
}

impl From<TwoQubitKind> for GateKindRepr {
    fn from(kind: TwoQubitKind) -> Self {
        match kind {
            TwoQubitKind::Cx => GateKindRepr::Cx,
            TwoQubitKind::Swap => GateKindRepr::Swap,
        }
    }
}

impl From<GateKindRepr> for TwoQubitKind {
    fn from(kind: GateKindRepr) -> Self {
        match kind {
            GateKindRepr::Cx => TwoQubitKind::Cx,
            GateKindRepr::Swap => TwoQubitKind::Swap,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingStats {
    /// Deadlocks resolved (sequence selections plus fallbacks).
    pub steps: usize,
    pub fallbacks: usize,
    pub candidates_evaluated: u64,
    pub max_candidates_per_step: usize,
    pub fallback_trace: Vec<FallbackEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallbackEvent {
    pub step: usize,
    /// Gates retired before this step.
    pub retired: usize,
    pub gate: usize,
    /// Distance of the targeted pair before the SWAP.
    pub distance: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingResult {
    pub ops: Vec<RoutedOp>,
    pub swap_count: usize,
    pub initial_map: Mapping,
    pub final_map: Mapping,
    pub stats: RoutingStats,
}

impl RoutingResult {
    pub fn additional_cnots(&self) -> usize {
        3 * self.swap_count
    }

    pub fn fallback_count(&self) -> usize {
        self.stats.fallbacks
    }

    /// Read a result for the reversed circuit as one for the original:
    /// operations run backwards, gate ids are mirrored, and the initial and
    /// final mappings trade places.
    pub fn reversed(&self, gate_count: usize) -> RoutingResult {
        let ops = self
            .ops
            .iter()
            .rev()
            .map(|op| match *op {
                RoutedOp::Gate {
                    gate,
                    control,
                    target,
                    kind,
                } => RoutedOp::Gate {
                    gate: gate_count - 1 - gate,
                    control,
                    target,
                    kind,
                },
                swap => swap,
            })
            .collect();
        RoutingResult {
            ops,
            swap_count: self.swap_count,
            initial_map: self.final_map.clone(),
            final_map: self.initial_map.clone(),
            stats: self.stats.clone(),
        }
    }
}

/// Dependency-aware cursor over the unexecuted part of a circuit.
pub(crate) struct Frontier<'c> {
    gates: &'c [Gate],
    per_qubit: Vec<Vec<usize>>,
    head: Vec<usize>,
    retired: Vec<bool>,
    remaining: Vec<usize>,
}

impl<'c> Frontier<'c> {
    pub(crate) fn new(circuit: &'c LogicalCircuit) -> Self {
        let mut per_qubit = vec![Vec::new(); circuit.qubit_count()];
        for g in circuit.gates() {
            per_qubit[g.control].push(g.id);
            per_qubit[g.target].push(g.id);
        }
        Frontier {
            gates: circuit.gates(),
            head: vec![0; per_qubit.len()],
            per_qubit,
            retired: vec![false; circuit.len()],
            remaining: (0..circuit.len()).collect(),
        }
    }

    fn remaining_len(&self) -> usize {
        self.remaining.len()
    }

    #[inline]
    fn next_on(&self, heads: &[usize], q: usize) -> Option<usize> {
        self.per_qubit[q].get(heads[q]).copied()
    }

    #[inline]
    fn is_front(&self, heads: &[usize], g: usize) -> bool {
        let gate = &self.gates[g];
        self.next_on(heads, gate.control) == Some(g) && self.next_on(heads, gate.target) == Some(g)
    }

    /// Gates with no unexecuted predecessor, ascending.
    fn front(&self) -> Vec<usize> {
        let mut front: Vec<usize> = (0..self.per_qubit.len())
            .filter_map(|q| self.next_on(&self.head, q))
            .filter(|&g| self.is_front(&self.head, g))
            .collect();
        front.sort_unstable();
        front.dedup();
        front
    }

    /// Everything that could run under `map` without further SWAPs.
    /// Returns the count; retired ids are appended to `out` when given.
    fn closure(
        &self,
        front: &[usize],
        map: &Mapping,
        ag: &ArchitectureGraph,
        heads: &mut Vec<usize>,
        stack: &mut Vec<usize>,
        mut out: Option<&mut Vec<usize>>,
    ) -> usize {
        heads.clear();
        heads.extend_from_slice(&self.head);
        stack.clear();
        stack.extend_from_slice(front);
        let mut count = 0;
        while let Some(g) = stack.pop() {
            let gate = self.gates[g];
            if !ag.is_adjacent(map.phys(gate.control), map.phys(gate.target)) {
                continue;
            }
            count += 1;
            if let Some(out) = out.as_deref_mut() {
                out.push(g);
            }
            heads[gate.control] += 1;
            heads[gate.target] += 1;
            let a = self.next_on(heads, gate.control);
            let b = self.next_on(heads, gate.target);
            if let Some(a) = a {
                if self.is_front(heads, a) {
                    stack.push(a);
                }
            }
            if let Some(b) = b {
                if Some(b) != a && self.is_front(heads, b) {
                    stack.push(b);
                }
            }
        }
        count
    }

    fn retire(&mut self, ids: &[usize]) {
        for &g in ids {
            let gate = self.gates[g];
            debug_assert_eq!(self.next_on(&self.head, gate.control), Some(g));
            self.head[gate.control] += 1;
            self.head[gate.target] += 1;
            self.retired[g] = true;
        }
        let retired = &self.retired;
        self.remaining.retain(|&g| !retired[g]);
    }

    fn partition(&self) -> LayerPartition {
        LayerPartition::of(
            self.per_qubit.len(),
            self.remaining.iter().map(|&g| self.gates[g].qubits()),
        )
    }
}

/// Per-deadlock data shared by every candidate evaluation.
struct Step {
    front: Vec<usize>,
    edges: Vec<Swap>,
    /// `(qubit, qubit, weight)` of the first `wnd` remaining gates.
    window: Vec<(usize, usize, u64)>,
}

impl Step {
    fn new(frontier: &Frontier, map: &Mapping, ag: &ArchitectureGraph, cfg: &RouterConfig) -> Self {
        let partition = frontier.partition();
        let mut touched = vec![false; ag.node_count()];
        for (&g, &layer) in frontier.remaining.iter().zip(&partition.layer_of) {
            if layer <= cfg.candidate_layers {
                let gate = frontier.gates[g];
                touched[map.phys(gate.control)] = true;
                touched[map.phys(gate.target)] = true;
            }
        }
        let edges = ag
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| touched[u] || touched[v])
            .collect();
        let wnd = cfg.window(frontier.remaining_len());
        let window = frontier
            .remaining
            .iter()
            .zip(&partition.layer_of)
            .take(wnd)
            .map(|(&g, &layer)| {
                let gate = frontier.gates[g];
                (gate.control, gate.target, partition.weight_of_layer(layer))
            })
            .collect();
        Step {
            front: frontier.front(),
            edges,
            window,
        }
    }

    fn dw(&self, map: &Mapping, ag: &ArchitectureGraph) -> u64 {
        let dia = ag.diameter() as u64;
        self.window
            .iter()
            .map(|&(a, b, w)| w * (dia - ag.dist(map.phys(a), map.phys(b)) as u64))
            .sum()
    }
}

/// Running maximum of gval together with every sequence attaining it.
struct Best {
    top: Ratio,
    ties: Vec<(Vec<Swap>, Mapping)>,
}

impl Best {
    fn new() -> Self {
        Best {
            top: Ratio::new(0, 1),
            ties: Vec::new(),
        }
    }

    fn offer(&mut self, executable: usize, seq: &[Swap], map: &Mapping) {
        if executable == 0 {
            return;
        }
        let score = Ratio::new(executable, seq.len());
        match score.cmp(&self.top) {
            Ordering::Greater => {
                self.top = score;
                self.ties.clear();
                self.ties.push((seq.to_vec(), map.clone()));
            }
            Ordering::Equal => self.ties.push((seq.to_vec(), map.clone())),
            Ordering::Less => {}
        }
    }

    fn merge(mut self, other: Best) -> Best {
        match other.top.cmp(&self.top) {
            Ordering::Greater => other,
            Ordering::Equal => {
                self.ties.extend(other.ties);
                self
            }
            Ordering::Less => self,
        }
    }
}

struct Scratch {
    heads: Vec<usize>,
    stack: Vec<usize>,
    seq: Vec<Swap>,
}

impl Scratch {
    fn new() -> Self {
        Scratch {
            heads: Vec::new(),
            stack: Vec::new(),
            seq: Vec::new(),
        }
    }
}

struct Searcher<'a, 'c> {
    frontier: &'a Frontier<'c>,
    step: &'a Step,
    ag: &'a ArchitectureGraph,
}

impl Searcher<'_, '_> {
    fn count(&self, map: &Mapping, scratch: &mut Scratch) -> usize {
        self.frontier.closure(
            &self.step.front,
            map,
            self.ag,
            &mut scratch.heads,
            &mut scratch.stack,
            None,
        )
    }

    /// Depth-first over sequences extending `scratch.seq`, up to `depth`
    /// swaps in total. Returns the number of sequences scored.
    fn dfs(
        &self,
        depth: usize,
        map: &mut Mapping,
        scratch: &mut Scratch,
        best: &mut Best,
        mut record: Option<&mut Vec<(Vec<Swap>, usize)>>,
    ) -> u64 {
        let mut evaluated = 0;
        for &edge in &self.step.edges {
            if scratch.seq.last() == Some(&edge) {
                continue;
            }
            map.swap_physical(edge.0, edge.1);
            scratch.seq.push(edge);
            let executable = self.count(map, scratch);
            evaluated += 1;
            best.offer(executable, &scratch.seq, map);
            if let Some(rec) = record.as_deref_mut() {
                rec.push((scratch.seq.clone(), executable));
            }
            if scratch.seq.len() < depth {
                evaluated += self.dfs(depth, map, scratch, best, record.as_deref_mut());
            }
            scratch.seq.pop();
            map.swap_physical(edge.0, edge.1);
        }
        evaluated
    }

    /// Score every sequence of length `1..=depth` whose first swap is `first`.
    fn subtree(&self, first: Swap, depth: usize, map: &Mapping, record: bool) -> (Best, u64, Vec<(Vec<Swap>, usize)>) {
        let mut map = map.clone();
        let mut scratch = Scratch::new();
        let mut best = Best::new();
        let mut rec = Vec::new();
        map.swap_physical(first.0, first.1);
        scratch.seq.push(first);
        let executable = self.count(&map, &mut scratch);
        best.offer(executable, &scratch.seq, &map);
        if record {
            rec.push((scratch.seq.clone(), executable));
        }
        let mut evaluated = 1;
        if depth > 1 {
            evaluated += self.dfs(
                depth,
                &mut map,
                &mut scratch,
                &mut best,
                record.then_some(&mut rec),
            );
        }
        (best, evaluated, rec)
    }

    fn exhaustive(&self, depth: usize, map: &Mapping, record: bool) -> (Best, u64, Vec<(Vec<Swap>, usize)>) {
        self.step
            .edges
            .par_iter()
            .map(|&first| self.subtree(first, depth, map, record))
            .reduce(
                || (Best::new(), 0, Vec::new()),
                |(b1, n1, mut r1), (b2, n2, r2)| {
                    r1.extend(r2);
                    (b1.merge(b2), n1 + n2, r1)
                },
            )
    }

    fn select(&self, map: &Mapping, cfg: &RouterConfig) -> (Option<SwapSequence>, u64) {
        let (best, evaluated) = match cfg.mode {
            SearchMode::Fixed => {
                let (best, evaluated, _) = self.exhaustive(cfg.search_depth, map, false);
                (best, evaluated)
            }
            SearchMode::Imp => self.partially_extended(map, cfg.top_k),
        };
        (self.resolve_ties(best), evaluated)
    }

    fn partially_extended(&self, map: &Mapping, top_k: usize) -> (Best, u64) {
        let (best, mut evaluated, mut scored) = self.exhaustive(2, map, true);
        scored.sort_by(|x, y| {
            Ratio::new(y.1, y.0.len())
                .cmp(&Ratio::new(x.1, x.0.len()))
                .then(x.0.len().cmp(&y.0.len()))
                .then(x.0.cmp(&y.0))
        });
        let seeds: Vec<Vec<Swap>> = scored
            .into_iter()
            .take(top_k)
            .map(|(seq, _)| seq)
            .filter(|seq| seq.len() == 2)
            .collect();
        let extended = seeds
            .par_iter()
            .map(|seed| {
                let mut local = map.clone();
                for &(u, v) in seed {
                    local.swap_physical(u, v);
                }
                let mut scratch = Scratch::new();
                scratch.seq = seed.clone();
                let mut best = Best::new();
                let mut evaluated = 0;
                for &edge in &self.step.edges {
                    if seed.last() == Some(&edge) {
                        continue;
                    }
                    local.swap_physical(edge.0, edge.1);
                    scratch.seq.push(edge);
                    let executable = self.count(&local, &mut scratch);
                    evaluated += 1;
                    best.offer(executable, &scratch.seq, &local);
                    scratch.seq.pop();
                    local.swap_physical(edge.0, edge.1);
                }
                (best, evaluated)
            })
            .reduce(|| (Best::new(), 0), |(b1, n1), (b2, n2)| (b1.merge(b2), n1 + n2));
        evaluated += extended.1;
        (best.merge(extended.0), evaluated)
    }

    /// Among sequences sharing the top gval, keep one per resulting mapping
    /// (the shortest, lexicographically first) and return the one with the
    /// largest dw; remaining ties go to the shortest, then lexicographically
    /// first sequence.
    fn resolve_ties(&self, best: Best) -> Option<SwapSequence> {
        let top = best.top;
        let mut ties = best.ties;
        if ties.is_empty() {
            return None;
        }
        ties.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then(x.0.cmp(&y.0)));
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut chosen: Option<(u64, Vec<Swap>, Mapping)> = None;
        for (seq, map) in ties {
            if !seen.insert(map.inverse_slice().to_vec()) {
                continue;
            }
            let score = self.step.dw(&map, self.ag);
            if chosen.as_ref().is_none_or(|(s, _, _)| score > *s) {
                chosen = Some((score, seq, map));
            }
        }
        chosen.map(|(_, swaps, resulting_map)| SwapSequence {
            executable: top.executable * swaps.len() / top.swaps,
            swaps,
            resulting_map,
        })
    }
}

fn fallback(frontier: &Frontier, map: &Mapping, ag: &ArchitectureGraph) -> (Swap, usize, u32) {
    let (gate, dist) = frontier
        .front()
        .into_iter()
        .map(|g| {
            let gate = frontier.gates[g];
            (g, ag.dist(map.phys(gate.control), map.phys(gate.target)))
        })
        .min_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)))
        .expect("a blocked circuit has a front gate");
    let g = frontier.gates[gate];
    let (pu, pv) = (map.phys(g.control), map.phys(g.target));
    let mut options = Vec::new();
    for (from, to) in [(pu, pv), (pv, pu)] {
        for &w in ag.neighbors(from) {
            if ag.dist(w, to) < dist {
                options.push(ordered(from, w));
            }
        }
    }
    let swap = options
        .into_iter()
        .min()
        .expect("a connected device always has a distance-reducing coupler");
    (swap, gate, dist)
}

/// Gates of `remaining` that can run under `map` right now, in the order a
/// front-to-back scan would retire them.
pub fn executable_gates(remaining: &LogicalCircuit, map: &Mapping, ag: &ArchitectureGraph) -> Vec<usize> {
    let frontier = Frontier::new(remaining);
    let mut out = Vec::new();
    frontier.closure(
        &frontier.front(),
        map,
        ag,
        &mut Vec::new(),
        &mut Vec::new(),
        Some(&mut out),
    );
    out.sort_unstable();
    out
}

/// Couplers touching a qubit used in the first `layers` layers.
pub fn candidate_swaps(
    remaining: &LogicalCircuit,
    map: &Mapping,
    ag: &ArchitectureGraph,
    layers: usize,
) -> Vec<Swap> {
    let frontier = Frontier::new(remaining);
    let cfg = RouterConfig {
        candidate_layers: layers,
        ..RouterConfig::default()
    };
    Step::new(&frontier, map, ag, &cfg).edges
}

/// Executable gate count after applying `swaps`, per SWAP.
pub fn gval(map: &Mapping, swaps: &[Swap], remaining: &LogicalCircuit, ag: &ArchitectureGraph) -> Ratio {
    let mut after = map.clone();
    for &(u, v) in swaps {
        after.swap_physical(u, v);
    }
    Ratio::new(executable_gates(remaining, &after, ag).len(), swaps.len())
}

/// Windowed closeness score of a candidate mapping over the first `wnd`
/// gates of `remaining`.
pub fn dw(candidate_map: &Mapping, remaining: &LogicalCircuit, ag: &ArchitectureGraph, wnd: usize) -> u64 {
    let frontier = Frontier::new(remaining);
    let cfg = RouterConfig {
        wnd_base: wnd,
        wnd_threshold: usize::MAX,
        ..RouterConfig::default()
    };
    Step::new(&frontier, candidate_map, ag, &cfg).dw(candidate_map, ag)
}

/// Best SWAP sequence for a blocked circuit, or `None` when no candidate
/// unlocks any gate.
pub fn select_sequence(
    map: &Mapping,
    remaining: &LogicalCircuit,
    ag: &ArchitectureGraph,
    cfg: &RouterConfig,
) -> Option<SwapSequence> {
    select_sequence_counted(map, remaining, ag, cfg).0
}

/// [`select_sequence`] plus the number of candidate sequences scored.
pub fn select_sequence_counted(
    map: &Mapping,
    remaining: &LogicalCircuit,
    ag: &ArchitectureGraph,
    cfg: &RouterConfig,
) -> (Option<SwapSequence>, u64) {
    let frontier = Frontier::new(remaining);
    let step = Step::new(&frontier, map, ag, cfg);
    Searcher {
        frontier: &frontier,
        step: &step,
        ag,
    }
    .select(map, cfg)
}

/// One SWAP that brings the closest blocked front gate one hop closer.
pub fn fallback_swap(map: &Mapping, remaining: &LogicalCircuit, ag: &ArchitectureGraph) -> Swap {
    fallback(&Frontier::new(remaining), map, ag).0
}

/// Route `circuit` starting from the complete mapping `initial`.
pub fn route(
    circuit: &LogicalCircuit,
    initial: &Mapping,
    ag: &ArchitectureGraph,
    cfg: &RouterConfig,
) -> RoutingResult {
    assert!(initial.is_complete(), "routing needs a complete initial mapping");
    assert_eq!(initial.logical_count(), circuit.qubit_count());
    let mut frontier = Frontier::new(circuit);
    let mut map = initial.clone();
    let mut ops = Vec::with_capacity(circuit.len());
    let mut stats = RoutingStats::default();
    let mut swap_count = 0;
    let (mut heads, mut stack, mut ready) = (Vec::new(), Vec::new(), Vec::new());

    loop {
        ready.clear();
        let front = frontier.front();
        frontier.closure(&front, &map, ag, &mut heads, &mut stack, Some(&mut ready));
        ready.sort_unstable();
        for &g in &ready {
            let gate = circuit.gates()[g];
            ops.push(RoutedOp::Gate {
                gate: g,
                control: map.phys(gate.control),
                target: map.phys(gate.target),
                kind: gate.kind.into(),
            });
        }
        frontier.retire(&ready);
        if frontier.remaining_len() == 0 {
            break;
        }

        stats.steps += 1;
        let step = Step::new(&frontier, &map, ag, cfg);
        let searcher = Searcher {
            frontier: &frontier,
            step: &step,
            ag,
        };
        let (choice, evaluated) = searcher.select(&map, cfg);
        stats.candidates_evaluated += evaluated;
        stats.max_candidates_per_step = stats.max_candidates_per_step.max(evaluated as usize);
        let swaps = match choice {
            Some(seq) => seq.swaps,
            None => {
                let (swap, gate, dist) = fallback(&frontier, &map, ag);
                stats.fallbacks += 1;
                stats.fallback_trace.push(FallbackEvent {
                    step: stats.steps,
                    retired: circuit.len() - frontier.remaining_len(),
                    gate,
                    distance: dist,
                });
                vec![swap]
            }
        };
        for (a, b) in swaps {
            map.swap_physical(a, b);
            ops.push(RoutedOp::Swap { a, b });
            swap_count += 1;
        }
    }

    RoutingResult {
        ops,
        swap_count,
        initial_map: initial.clone(),
        final_map: map,
        stats,
    }
}
