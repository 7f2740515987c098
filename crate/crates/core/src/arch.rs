//! Device coupling graphs with precomputed hop distances.

use std::collections::VecDeque;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::ordered;

#[derive(Debug, Error)]
pub enum ArchError {
    #[error("architecture has no nodes")]
    Empty,
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) references a node outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("coupling graph is disconnected (node {0} unreachable from node 0)")]
    Disconnected(usize),
    #[error("unknown architecture preset `{0}`")]
    UnknownPreset(String),
    #[error("cannot read architecture file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed architecture file: {0}")]
    Json(#[from] serde_json::Error),
}

/// JSON shape of an architecture file: `{"n": 5, "edges": [[0, 1], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeListFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchitectureGraph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    dist: Vec<u32>,
    diameter: u32,
}

impl ArchitectureGraph {
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, ArchError> {
        if n == 0 {
            return Err(ArchError::Empty);
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(ArchError::IndexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(ArchError::SelfLoop(u));
            }
            normalized.push(ordered(u, v));
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        let mut dist = vec![u32::MAX; n * n];
        for source in 0..n {
            bfs(&neighbors, source, &mut dist[source * n..(source + 1) * n]);
        }
        if let Some(v) = (0..n).find(|&v| dist[v] == u32::MAX) {
            return Err(ArchError::Disconnected(v));
        }
        let diameter = dist.iter().copied().max().unwrap_or(0);
        Ok(ArchitectureGraph {
            node_count: n,
            edges: normalized,
            neighbors,
            dist,
            diameter,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, ArchError> {
        let file: EdgeListFile = serde_json::from_str(text)?;
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_edge_list(file.n, &edges)
    }

    pub fn from_json_file(path: &Path) -> Result<Self, ArchError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_edge_list_file(&self) -> EdgeListFile {
        EdgeListFile {
            n: self.node_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    /// Named architectures: `ibm_q20`, `sycamore`, `linear_N`, `grid_RxC`.
    pub fn preset(name: &str) -> Result<Self, ArchError> {
        let unknown = || ArchError::UnknownPreset(name.to_string());
        match name {
            "ibm_q20" => Self::from_edge_list(20, &IBM_Q20_EDGES),
            "sycamore" => {
                let (n, edges) = sycamore_edges();
                Self::from_edge_list(n, &edges)
            }
            _ => {
                if let Some(n) = name.strip_prefix("linear_") {
                    let n: usize = n.parse().map_err(|_| unknown())?;
                    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                    Self::from_edge_list(n, &edges)
                } else if let Some(dims) = name.strip_prefix("grid_") {
                    let (r, c) = dims.split_once('x').ok_or_else(unknown)?;
                    let rows: usize = r.parse().map_err(|_| unknown())?;
                    let cols: usize = c.parse().map_err(|_| unknown())?;
                    Self::from_edge_list(rows * cols, &grid_edges(rows, cols))
                } else {
                    Err(unknown())
                }
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Deduplicated `(min, max)` edges in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.node_count + v]
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.dist(u, v) == 1
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn eccentricity(&self, v: usize) -> u32 {
        let n = self.node_count;
        self.dist[v * n..(v + 1) * n].iter().copied().max().unwrap_or(0)
    }
}

fn bfs(neighbors: &[Vec<usize>], source: usize, row: &mut [u32]) {
    row[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &w in &neighbors[u] {
            if row[w] == u32::MAX {
                row[w] = row[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

fn grid_edges(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    edges
}

/// IBM Q20 "Tokyo" coupling map, treated as undirected: a 4x5 grid
/// (nodes numbered row-major) plus both diagonals in six of its cells.
/// This is the 43-edge map used by the standard routing benchmarks and
/// shipped as `FakeTokyo` in Qiskit.
pub const IBM_Q20_EDGES: [(usize, usize); 43] = [
    (0, 1), (0, 5), (1, 2), (1, 6), (1, 7), (2, 3), (2, 6), (2, 7), (3, 4), (3, 8),
    (3, 9), (4, 8), (4, 9), (5, 6), (5, 10), (5, 11), (6, 7), (6, 10), (6, 11), (7, 8),
    (7, 12), (7, 13), (8, 9), (8, 12), (8, 13), (9, 14), (10, 11), (10, 15), (11, 12),
    (11, 16), (11, 17), (12, 13), (12, 16), (12, 17), (13, 14), (13, 18), (13, 19),
    (14, 18), (14, 19), (15, 16), (16, 17), (17, 18), (18, 19),
];

/// Google Sycamore, all 54 sites of the ideal lattice. Rows of the layout
/// are read from the device diagram (`#` marks a qubit); qubits couple to
/// their orthogonal neighbours, giving 88 couplers. Nodes are numbered
/// row-major over the diagram.
const SYCAMORE_LAYOUT: [&str; 10] = [
    ".....##...",
    "....####..",
    "...######.",
    "..########",
    ".#########",
    "#########.",
    ".#######..",
    "..#####...",
    "...###....",
    "....#.....",
];

fn sycamore_edges() -> (usize, Vec<(usize, usize)>) {
    let mut index = std::collections::HashMap::new();
    for (r, row) in SYCAMORE_LAYOUT.iter().enumerate() {
        for (c, ch) in row.chars().enumerate() {
            if ch == '#' {
                let next = index.len();
                index.insert((r, c), next);
            }
        }
    }
    let mut edges = Vec::new();
    for (&(r, c), &v) in &index {
        if let Some(&w) = index.get(&(r, c + 1)) {
            edges.push((v, w));
        }
        if let Some(&w) = index.get(&(r + 1, c)) {
            edges.push((v, w));
        }
    }
    (index.len(), edges)
}
