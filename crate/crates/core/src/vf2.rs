//! Backtracking subgraph monomorphism search in the style of VF2.
//!
//! Finds an injective placement of a small weighted pattern graph onto the
//! coupling graph such that every pattern edge lands on a coupling edge.
//! Exploration order is fully deterministic:
//!
//! * pattern nodes are visited breadth-first, starting each component at
//!   its heaviest node (sum of incident weights, lowest index on ties) and
//!   expanding neighbours by descending edge weight, then index;
//! * the first root is tried on coupling nodes by ascending eccentricity,
//!   then index, so dense patterns start from the middle of the device;
//! * later component roots prefer nodes close to what is already placed;
//! * every other pattern node is tried on the free neighbours of its BFS
//!   parent's image in ascending index order.

use crate::arch::ArchitectureGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedOutcome {
    /// `(logical, physical)` pairs, ascending by logical qubit.
    Found(Vec<(usize, usize)>),
    NotFound,
    /// The state budget ran out before the search finished.
    BudgetExceeded,
}

impl EmbedOutcome {
    pub fn found(self) -> Option<Vec<(usize, usize)>> {
        match self {
            EmbedOutcome::Found(pairs) => Some(pairs),
            _ => None,
        }
    }
}

const UNSET: usize = usize::MAX;

struct Pattern {
    logical: Vec<usize>,
    adj: Vec<Vec<(usize, u64)>>,
}

impl Pattern {
    fn new(edges: &[(usize, usize, u64)]) -> Self {
        let mut logical: Vec<usize> = edges.iter().flat_map(|&(a, b, _)| [a, b]).collect();
        logical.sort_unstable();
        logical.dedup();
        let local = |q: usize| logical.binary_search(&q).unwrap();
        let mut adj = vec![Vec::new(); logical.len()];
        for &(a, b, w) in edges {
            let (la, lb) = (local(a), local(b));
            adj[la].push((lb, w));
            adj[lb].push((la, w));
        }
        Pattern { logical, adj }
    }

    fn len(&self) -> usize {
        self.logical.len()
    }

    /// BFS visiting order plus the BFS parent of each visited node.
    fn order(&self) -> (Vec<usize>, Vec<Option<usize>>) {
        let k = self.len();
        let strength: Vec<u64> = self
            .adj
            .iter()
            .map(|list| list.iter().map(|&(_, w)| w).sum())
            .collect();
        let mut seen = vec![false; k];
        let mut order = Vec::with_capacity(k);
        let mut parent = Vec::with_capacity(k);
        while order.len() < k {
            let root = (0..k)
                .filter(|&p| !seen[p])
                .max_by(|&a, &b| strength[a].cmp(&strength[b]).then(b.cmp(&a)))
                .unwrap();
            seen[root] = true;
            order.push(root);
            parent.push(None);
            let mut head = order.len() - 1;
            while head < order.len() {
                let node = order[head];
                head += 1;
                let mut next: Vec<(usize, u64)> = self.adj[node]
                    .iter()
                    .copied()
                    .filter(|&(p, _)| !seen[p])
                    .collect();
                next.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
                next.dedup_by_key(|x| x.0);
                for (p, _) in next {
                    if !seen[p] {
                        seen[p] = true;
                        order.push(p);
                        parent.push(Some(node));
                    }
                }
            }
        }
        (order, parent)
    }
}

struct Search<'a> {
    ag: &'a ArchitectureGraph,
    pattern: &'a Pattern,
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    image: Vec<usize>,
    occupied: Vec<bool>,
    states: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        self.states += 1;
        if self.states > self.budget {
            self.exhausted = true;
            return false;
        }
        let p = self.order[depth];
        for v in self.candidates(depth) {
            if !self.feasible(p, v) {
                continue;
            }
            self.image[p] = v;
            self.occupied[v] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.image[p] = UNSET;
            self.occupied[v] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn candidates(&self, depth: usize) -> Vec<usize> {
        let ag = self.ag;
        match self.parent[depth] {
            Some(par) => ag
                .neighbors(self.image[par])
                .iter()
                .copied()
                .filter(|&v| !self.occupied[v])
                .collect(),
            None => {
                let placed: Vec<usize> = (0..ag.node_count()).filter(|&v| self.occupied[v]).collect();
                let mut free: Vec<(u32, u32, usize)> = (0..ag.node_count())
                    .filter(|&v| !self.occupied[v])
                    .map(|v| {
                        let near = placed.iter().map(|&u| ag.dist(u, v)).min().unwrap_or(0);
                        (near, ag.eccentricity(v), v)
                    })
                    .collect();
                free.sort_unstable();
                free.into_iter().map(|(_, _, v)| v).collect()
            }
        }
    }

    fn feasible(&self, p: usize, v: usize) -> bool {
        let ag = self.ag;
        let adj = &self.pattern.adj[p];
        if ag.degree(v) < adj.len() {
            return false;
        }
        let mut unmapped = 0;
        for &(r, _) in adj {
            let img = self.image[r];
            if img == UNSET {
                unmapped += 1;
            } else if !ag.is_adjacent(img, v) {
                return false;
            }
        }
        let free_around = |u: usize, also: usize| {
            ag.neighbors(u)
                .iter()
                .filter(|&&w| !self.occupied[w] && w != also)
                .count()
        };
        if unmapped > free_around(v, UNSET) {
            return false;
        }
        // Mapped neighbours must still have room for their remaining partners.
        for &(r, _) in adj {
            let img = self.image[r];
            if img == UNSET {
                continue;
            }
            let pending = self.pattern.adj[r]
                .iter()
                .filter(|&&(s, _)| s != p && self.image[s] == UNSET)
                .count();
            if pending > free_around(img, v) {
                return false;
            }
        }
        true
    }
}

/// Search for a placement of the weighted edge list `edges` (logical
/// endpoints) onto `ag`, exploring at most `budget` search states.
pub fn find_embedding(
    ag: &ArchitectureGraph,
    edges: &[(usize, usize, u64)],
    budget: u64,
) -> EmbedOutcome {
    if edges.is_empty() {
        return EmbedOutcome::Found(Vec::new());
    }
    let pattern = Pattern::new(edges);
    if pattern.len() > ag.node_count() || !degrees_fit(&pattern, ag) {
        return EmbedOutcome::NotFound;
    }
    let (order, parent) = pattern.order();
    let mut search = Search {
        ag,
        pattern: &pattern,
        order,
        parent,
        image: vec![UNSET; pattern.len()],
        occupied: vec![false; ag.node_count()],
        states: 0,
        budget,
        exhausted: false,
    };
    if search.extend(0) {
        let mut pairs: Vec<(usize, usize)> = pattern
            .logical
            .iter()
            .zip(&search.image)
            .map(|(&q, &v)| (q, v))
            .collect();
        pairs.sort_unstable();
        EmbedOutcome::Found(pairs)
    } else if search.exhausted {
        EmbedOutcome::BudgetExceeded
    } else {
        EmbedOutcome::NotFound
    }
}

/// The k-th largest pattern degree must not exceed the k-th largest device degree.
fn degrees_fit(pattern: &Pattern, ag: &ArchitectureGraph) -> bool {
    let mut pd: Vec<usize> = pattern.adj.iter().map(Vec::len).collect();
    let mut ad: Vec<usize> = (0..ag.node_count()).map(|v| ag.degree(v)).collect();
    pd.sort_unstable_by(|a, b| b.cmp(a));
    ad.sort_unstable_by(|a, b| b.cmp(a));
    pd.iter().zip(&ad).all(|(p, a)| p <= a)
}
