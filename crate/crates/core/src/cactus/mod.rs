//! Spanning even cacti: the certificate type, its validator, and the
//! splicing construction that turns one into a Hamilton cycle of the prism.

mod splice;
mod tree;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use splice::{prism_ham_from_cactus, verify_prism_cycle, PrismHamCycle, SpliceError};
pub use tree::{cactus_tree, CactusNode, CactusTree, TreeLink};

/// A spanning connected subgraph written as vertex-disjoint even cycles plus
/// vertex-disjoint paths, with no cycles beyond the listed ones and maximum
/// degree 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvenCactus {
    pub cycles: Vec<Vec<Vertex>>,
    pub paths: Vec<Vec<Vertex>>,
}

/// First violated clause found by [`validate_even_cactus`].
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CactusViolation {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("cycle {0} is not a simple cycle")]
    MalformedCycle(usize),
    #[error("path {0} is empty, repeats a vertex, or is a stray singleton")]
    MalformedPath(usize),
    #[error("edge {0}-{1} is not an edge of the graph")]
    EdgeNotInGraph(Vertex, Vertex),
    #[error("cycle {index} has odd length {len}")]
    OddCycle { index: usize, len: usize },
    #[error("cycles share vertex {0}")]
    CyclesOverlap(Vertex),
    #[error("paths share vertex {0}")]
    PathsOverlap(Vertex),
    #[error("edge {0}-{1} is used twice")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {0} is not covered")]
    NotSpanning(Vertex),
    #[error("union is disconnected")]
    Disconnected,
    #[error("vertex {vertex} has degree {degree} > 3")]
    DegreeExceeded { vertex: Vertex, degree: usize },
    #[error("union has cycle rank {rank} but lists {listed} cycles")]
    ExtraCycle { rank: usize, listed: usize },
}

fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

impl EvenCactus {
    pub fn from_path(path: Vec<Vertex>) -> Self {
        EvenCactus {
            cycles: Vec::new(),
            paths: vec![path],
        }
    }

    /// Every edge of the union, cycles first, in listing order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for c in &self.cycles {
            for i in 0..c.len() {
                out.push(norm(c[i], c[(i + 1) % c.len()]));
            }
        }
        for p in &self.paths {
            for w in p.windows(2) {
                out.push(norm(w[0], w[1]));
            }
        }
        out
    }

    /// Splits `forest` (edges outside the listed cycles) into paths. Fails if
    /// some vertex has forest degree above 2 or the forest has a cycle.
    pub fn from_cycles_and_forest(
        n: usize,
        cycles: Vec<Vec<Vertex>>,
        forest: &[(Vertex, Vertex)],
    ) -> Option<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in forest {
            adj[u].push(v);
            adj[v].push(u);
        }
        if adj.iter().any(|a| a.len() > 2) {
            return None;
        }
        let mut on_cycle = vec![false; n];
        for c in &cycles {
            for &v in c {
                on_cycle[v] = true;
            }
        }
        let mut used = vec![false; n];
        let mut paths = Vec::new();
        // Endpoints on cycles first so each path starts at its attachment.
        let mut starts: Vec<Vertex> = (0..n).filter(|&v| adj[v].len() == 1).collect();
        starts.sort_by_key(|&v| (!on_cycle[v], v));
        for s in starts {
            if used[s] {
                continue;
            }
            let mut path = vec![s];
            used[s] = true;
            let (mut prev, mut cur) = (s, adj[s][0]);
            loop {
                path.push(cur);
                used[cur] = true;
                match adj[cur].iter().find(|&&w| w != prev) {
                    Some(&w) if adj[cur].len() == 2 => {
                        prev = cur;
                        cur = w;
                    }
                    _ => break,
                }
            }
            paths.push(path);
        }
        if (0..n).any(|v| !adj[v].is_empty() && !used[v]) {
            return None;
        }
        if cycles.is_empty() && paths.is_empty() && n == 1 {
            paths.push(vec![0]);
        }
        Some(EvenCactus { cycles, paths })
    }

    /// Reads the cactus structure off an arbitrary edge set: 2-edge-connected
    /// pieces must be simple cycles, and the bridges must form paths.
    pub fn from_subgraph(n: usize, edges: &[(Vertex, Vertex)]) -> Option<Self> {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        let bridge = bridges(n, &adj, edges.len());
        // Non-bridge components.
        let mut comp = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX || adj[s].iter().all(|&(_, e)| bridge[e]) {
                continue;
            }
            let id = cycles.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut stack = vec![s];
            let mut edge_count = 0;
            while let Some(u) = stack.pop() {
                for &(w, e) in &adj[u] {
                    if bridge[e] {
                        continue;
                    }
                    edge_count += 1;
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            edge_count /= 2;
            let inner_deg = |v: Vertex| adj[v].iter().filter(|&&(_, e)| !bridge[e]).count();
            if edge_count != members.len() || members.iter().any(|&v| inner_deg(v) != 2) {
                return None;
            }
            // Walk the cycle from its smallest vertex towards the smaller neighbour.
            let start = *members.iter().min().unwrap();
            let nbrs: Vec<Vertex> = adj[start]
                .iter()
                .filter(|&&(_, e)| !bridge[e])
                .map(|&(w, _)| w)
                .collect();
            let mut cyc = vec![start];
            let (mut prev, mut cur) = (start, nbrs[0].min(nbrs[1]));
            while cur != start {
                cyc.push(cur);
                let next = adj[cur]
                    .iter()
                    .find(|&&(w, e)| !bridge[e] && w != prev)
                    .map(|&(w, _)| w)
                    .unwrap();
                prev = cur;
                cur = next;
            }
            cycles.push(cyc);
        }
        let forest: Vec<_> = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| bridge[i])
            .map(|(_, &e)| e)
            .collect();
        Self::from_cycles_and_forest(n, cycles, &forest)
    }
}

fn bridges(n: usize, adj: &[Vec<(Vertex, usize)>], m: usize) -> Vec<bool> {
    let mut is_bridge = vec![false; m];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (vertex, parent edge, next adjacency index).
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (u, pe, ref mut idx)) = stack.last_mut() {
            if *idx < adj[u].len() {
                let (w, e) = adj[u][*idx];
                *idx += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        is_bridge[pe] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// Checks every defining property of a spanning even cactus of `g` and
/// reports the first one that fails.
pub fn validate_even_cactus(g: &Graph, h: &EvenCactus) -> Result<(), CactusViolation> {
    let n = g.n();
    if n == 0 {
        return Err(CactusViolation::EmptyGraph);
    }
    for piece in h.cycles.iter().chain(&h.paths) {
        if let Some(&v) = piece.iter().find(|&&v| v >= n) {
            return Err(CactusViolation::OutOfRange(v));
        }
    }
    for (i, c) in h.cycles.iter().enumerate() {
        let distinct: BTreeSet<_> = c.iter().collect();
        if c.len() < 3 || distinct.len() != c.len() {
            return Err(CactusViolation::MalformedCycle(i));
        }
    }
    let lone_vertex = n == 1 && h.cycles.is_empty() && h.paths.len() == 1;
    for (i, p) in h.paths.iter().enumerate() {
        let distinct: BTreeSet<_> = p.iter().collect();
        if p.is_empty() || distinct.len() != p.len() || (p.len() == 1 && !lone_vertex) {
            return Err(CactusViolation::MalformedPath(i));
        }
    }
    let edges = h.edges();
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(CactusViolation::EdgeNotInGraph(u, v));
    }
    for (index, c) in h.cycles.iter().enumerate() {
        if c.len() % 2 == 1 {
            return Err(CactusViolation::OddCycle { index, len: c.len() });
        }
    }
    let mut owner = vec![false; n];
    for c in &h.cycles {
        for &v in c {
            if owner[v] {
                return Err(CactusViolation::CyclesOverlap(v));
            }
            owner[v] = true;
        }
    }
    let mut covered = owner;
    let mut on_path = vec![false; n];
    for p in &h.paths {
        for &v in p {
            if on_path[v] {
                return Err(CactusViolation::PathsOverlap(v));
            }
            on_path[v] = true;
            covered[v] = true;
        }
    }
    let mut seen = BTreeSet::new();
    for &e in &edges {
        if !seen.insert(e) {
            return Err(CactusViolation::DuplicateEdge(e.0, e.1));
        }
    }
    if let Some(v) = (0..n).find(|&v| !covered[v]) {
        return Err(CactusViolation::NotSpanning(v));
    }
    let union = Graph::from_edge_list(n, edges.iter().copied()).expect("edges checked against g");
    if !union.is_connected() {
        return Err(CactusViolation::Disconnected);
    }
    if let Some(v) = (0..n).find(|&v| union.degree(v) > 3) {
        return Err(CactusViolation::DegreeExceeded {
            vertex: v,
            degree: union.degree(v),
        });
    }
    let rank = edges.len() + 1 - n;
    if rank != h.cycles.len() {
        return Err(CactusViolation::ExtraCycle {
            rank,
            listed: h.cycles.len(),
        });
    }
    Ok(())
}
