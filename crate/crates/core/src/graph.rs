//! Simple undirected graphs on dense vertex ids, plus the standard families
//! and cartesian products used throughout the crate.

use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use thiserror::Error;

/// Largest supported vertex count. Adjacency rows are stored as `u128` masks.
pub const MAX_VERTICES: usize = 128;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("product fiber size {t} is below the minimum {min}")]
    FiberTooSmall { t: usize, min: usize },
    #[error("complete bipartite parts must be nonempty (got {0}, {1})")]
    EmptyPart(usize, usize),
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("unknown or out-of-range named graph `{0}`")]
    UnknownName(String),
    #[error("edge list: {0}")]
    EdgeListFormat(String),
}

/// A simple undirected graph on vertices `0..n`.
///
/// Immutable after construction. Neighbor lists are sorted ascending, which
/// fixes the exploration order of every search in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u128>,
    neighbors: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::from_edge_list(n, std::iter::empty())
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut rows = vec![0u128; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Ok(Self::from_rows(rows))
    }

    fn from_rows(rows: Vec<u128>) -> Self {
        let neighbors: Vec<Vec<Vertex>> = rows.iter().map(|&r| bits(r).collect()).collect();
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            n: rows.len(),
            rows,
            neighbors,
            edge_count,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && (self.rows[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[v]
    }

    /// Neighbor set of `v` as a bit mask.
    #[inline]
    pub fn row(&self, v: Vertex) -> u128 {
        self.rows[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Mask with one bit per vertex.
    pub fn all_mask(&self) -> u128 {
        full_mask(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * self.n.saturating_sub(1) / 2
    }

    /// True iff the vertices in `mask` induce a connected subgraph. The empty
    /// set counts as connected.
    pub fn is_connected_within(&self, mask: u128) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask.trailing_zeros() as usize;
        self.reach_within(start, mask) == mask
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.all_mask())
    }

    /// Vertices reachable from `start` using only vertices of `mask`.
    pub fn reach_within(&self, start: Vertex, mask: u128) -> u128 {
        let mut seen = 1u128 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.rows[v];
            }
            next &= mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Number of connected components of the subgraph induced by `mask`.
    pub fn components_within(&self, mut mask: u128) -> usize {
        let mut count = 0;
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            mask &= !self.reach_within(v, mask);
            count += 1;
        }
        count
    }

    /// `self` plus `extra` new vertices forming a clique, each adjacent to
    /// every original vertex.
    pub fn with_universal_clique(&self, extra: usize) -> Result<Graph, GraphError> {
        let total = self.n + extra;
        if total > MAX_VERTICES {
            return Err(GraphError::TooLarge(total));
        }
        let mut rows: Vec<u128> = self.rows.clone();
        rows.resize(total, 0);
        for x in self.n..total {
            rows[x] = full_mask(total) & !(1 << x);
            for v in 0..self.n {
                rows[v] |= 1 << x;
            }
        }
        Ok(Self::from_rows(rows))
    }

    /// Parses the edge-list text format: a header line `n m` followed by `m`
    /// lines `u v`. Blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let bad = |msg: String| GraphError::EdgeListFormat(msg);
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| bad("missing header".into()))?;
        let mut parts = header.split_whitespace().map(str::parse::<usize>);
        let (n, m) = match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(n)), Some(Ok(m)), None) => (n, m),
            _ => return Err(bad(format!("bad header `{header}`"))),
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => return Err(bad(format!("bad edge line `{line}`"))),
            }
        }
        if edges.len() != m {
            return Err(bad(format!("expected {m} edges, found {}", edges.len())));
        }
        if let Some(extra) = lines.next() {
            return Err(bad(format!("trailing content `{extra}`")));
        }
        Graph::from_edge_list(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
#[inline]
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// A vertex of a cartesian product `G □ H` where `H` has `t` vertices.
/// Numbered `base + level * n` in the product graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductVertex {
    pub base: Vertex,
    pub level: usize,
}

impl ProductVertex {
    pub fn new(base: Vertex, level: usize) -> Self {
        ProductVertex { base, level }
    }

    pub fn index(self, n: usize) -> usize {
        self.base + self.level * n
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        ProductVertex {
            base: index % n,
            level: index / n,
        }
    }
}

fn product(g: &Graph, t: usize, fiber_edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    let n = g.n();
    let total = n * t;
    let mut edges = Vec::new();
    for level in 0..t {
        for (u, v) in g.edges() {
            edges.push((u + level * n, v + level * n));
        }
    }
    for u in 0..n {
        for &(i, j) in fiber_edges {
            edges.push((u + i * n, u + j * n));
        }
    }
    Graph::from_edge_list(total, edges)
}

/// The prism `G □ K₂`; vertex `(u, i)` is numbered `u + i·n`.
pub fn prism(g: &Graph) -> Result<Graph, GraphError> {
    product(g, 2, &[(0, 1)])
}

/// `G □ C_t` for `t ≥ 3`.
pub fn cartesian_cycle(g: &Graph, t: usize) -> Result<Graph, GraphError> {
    if t < 3 {
        return Err(GraphError::FiberTooSmall { t, min: 3 });
    }
    let fiber: Vec<_> = (0..t).map(|i| (i, (i + 1) % t)).collect();
    product(g, t, &fiber)
}

/// `G □ K_t` for `t ≥ 2`.
pub fn cartesian_complete(g: &Graph, t: usize) -> Result<Graph, GraphError> {
    if t < 2 {
        return Err(GraphError::FiberTooSmall { t, min: 2 });
    }
    let fiber: Vec<_> = (0..t)
        .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
        .collect();
    product(g, t, &fiber)
}

/// `K_{k,a}` with parts `0..k` and `k..k+a`.
pub fn complete_bipartite(k: usize, a: usize) -> Result<Graph, GraphError> {
    if k == 0 || a == 0 {
        return Err(GraphError::EmptyPart(k, a));
    }
    Graph::from_edge_list(k + a, (0..k).flat_map(|u| (k..k + a).map(move |v| (u, v))))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edge_list(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edge_list(n, (1..n).map(|v| (v - 1, v)))
}

/// `C_n` for `n ≥ 3`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::UnknownName(format!("cycle({n})")));
    }
    Graph::from_edge_list(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edge_list(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>())
        .expect("petersen graph is well formed")
}

/// Standard named graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    Petersen,
    Cycle(usize),
    Path(usize),
    Complete(usize),
}

impl std::str::FromStr for NamedGraph {
    type Err = GraphError;

    /// Accepts `petersen`, `cycle(n)`, `path(n)`, `complete(n)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GraphError::UnknownName(s.to_string());
        let s = s.trim();
        if s == "petersen" {
            return Ok(NamedGraph::Petersen);
        }
        let (name, rest) = s.split_once('(').ok_or_else(unknown)?;
        let arg: usize = rest
            .strip_suffix(')')
            .and_then(|a| a.trim().parse().ok())
            .ok_or_else(unknown)?;
        match name {
            "cycle" => Ok(NamedGraph::Cycle(arg)),
            "path" => Ok(NamedGraph::Path(arg)),
            "complete" => Ok(NamedGraph::Complete(arg)),
            _ => Err(unknown()),
        }
    }
}

pub fn named_graph(name: NamedGraph) -> Result<Graph, GraphError> {
    match name {
        NamedGraph::Petersen => Ok(petersen()),
        NamedGraph::Cycle(n) => cycle(n),
        NamedGraph::Path(n) => path(n),
        NamedGraph::Complete(n) => complete(n),
    }
}

/// Erdős–Rényi `G(n, p)`.
///
/// The generator is xoshiro256++ seeded through SplitMix64 (`seed_from_u64`),
/// which is fully specified and platform independent. Pairs `(u, v)` with
/// `u < v` are visited in lexicographic order; each draws one `u64` and takes
/// its top 53 bits as a uniform `[0, 1)` value `x`, and the edge is present
/// iff `x < p`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    random_gnp_with(n, p, &mut rng)
}

pub(crate) fn random_gnp_with(
    n: usize,
    p: f64,
    rng: &mut Xoshiro256PlusPlus,
) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Probability(p));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if unit_f64(rng.next_u64()) < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges)
}

#[inline]
pub(crate) fn unit_f64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
