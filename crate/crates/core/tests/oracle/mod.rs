//! Brute-force reference implementations for small routing instances.
//! Written against plain edge lists so they share no code with the router.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

pub type SwapList = Vec<(usize, usize)>;

pub struct Device {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

impl Device {
    pub fn new(nodes: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; nodes]; nodes];
        let mut list = Vec::new();
        for &(a, b) in edges {
            if a != b && !adj[a][b] {
                adj[a][b] = true;
                adj[b][a] = true;
                list.push((a.min(b), a.max(b)));
            }
        }
        list.sort_unstable();
        Device { nodes, edges: list, adj }
    }

    pub fn coupled(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn connected(&self) -> bool {
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (w, mark) in seen.iter_mut().enumerate() {
                if self.adj[v][w] && !*mark {
                    *mark = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// Exchange the occupants of physical nodes `u` and `v` in a
/// logical-to-physical table.
pub fn apply_swap(map: &mut [usize], u: usize, v: usize) {
    for p in map.iter_mut() {
        if *p == u {
            *p = v;
        } else if *p == v {
            *p = u;
        }
    }
}

/// Repeatedly scan the unexecuted gates in order, executing each one whose
/// qubits are coupled and untouched by an earlier unexecuted gate, until a
/// pass executes nothing. Returns indices into `gates` in execution order.
pub fn executable(gates: &[(usize, usize)], done: &[bool], map: &[usize], dev: &Device) -> Vec<usize> {
    let mut done = done.to_vec();
    let mut out = Vec::new();
    loop {
        let mut touched = HashSet::new();
        let mut progress = false;
        for (i, &(a, b)) in gates.iter().enumerate() {
            if done[i] {
                continue;
            }
            if !touched.contains(&a) && !touched.contains(&b) && dev.coupled(map[a], map[b]) {
                done[i] = true;
                out.push(i);
                progress = true;
            } else {
                touched.insert(a);
                touched.insert(b);
            }
        }
        if !progress {
            return out;
        }
    }
}

/// Best executable-per-swap ratio over every sequence of length `1..=depth`
/// drawn from all device edges, plus every sequence attaining it.
pub fn best_gval(
    gates: &[(usize, usize)],
    map: &[usize],
    dev: &Device,
    depth: usize,
) -> ((usize, usize), Vec<SwapList>) {
    let none = vec![false; gates.len()];
    let mut best = (0usize, 1usize);
    let mut argmax: Vec<SwapList> = Vec::new();
    let mut seqs: Vec<SwapList> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for seq in &seqs {
            for &e in &dev.edges {
                let mut s = seq.clone();
                s.push(e);
                let mut m = map.to_vec();
                for &(u, v) in &s {
                    apply_swap(&mut m, u, v);
                }
                let count = executable(gates, &none, &m, dev).len();
                let lhs = count * best.1;
                let rhs = best.0 * s.len();
                if count > 0 && lhs > rhs {
                    best = (count, s.len());
                    argmax.clear();
                    argmax.push(s.clone());
                } else if count > 0 && lhs == rhs {
                    argmax.push(s.clone());
                }
                next.push(s);
            }
        }
        seqs = next;
    }
    (best, argmax)
}

/// Fewest SWAPs needed to execute every gate from `map`, by breadth-first
/// search over (mapping, executed set) states. Gates are always executed as
/// soon as possible, which never costs extra SWAPs.
pub fn optimal_swaps(gates: &[(usize, usize)], map: &[usize], dev: &Device) -> usize {
    let n = gates.len();
    let settle = |m: &[usize], done: &mut Vec<bool>| {
        for i in executable(gates, done, m, dev) {
            done[i] = true;
        }
    };
    let mut done = vec![false; n];
    settle(map, &mut done);
    let start = (map.to_vec(), done);
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some(((m, done), cost)) = queue.pop_front() {
        if done.iter().all(|&d| d) {
            return cost;
        }
        for &(u, v) in &dev.edges {
            let mut m2 = m.clone();
            apply_swap(&mut m2, u, v);
            let mut d2 = done.clone();
            settle(&m2, &mut d2);
            let state = (m2, d2);
            if seen.insert(state.clone()) {
                queue.push_back((state, cost + 1));
            }
        }
    }
    unreachable!("a connected device can always route")
}
