//! Hamilton cycles in `G □ C_t`: bounded-degree spanning trees, spanning
//! walks, and the fiber-rerouting construction over trees.

mod checks;
mod fiber;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::invariants::InvariantError;
use crate::oracles::OracleError;
use crate::pipeline::PipelineError;

pub use checks::{cyclic_product_certificate, toughness_hamilton_check, CyclicProduct, ToughnessReport};
pub use fiber::{tree_cycle_ham, verify_product_cycle, ProductCycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree has no vertices")]
    Empty,
    #[error("expected {expected} edges for a spanning tree, got {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("edges do not connect vertex {0}")]
    Disconnected(Vertex),
    #[error("tree must have exactly one root, found {0}")]
    Roots(usize),
    #[error("parent pointers from {0} do not reach the root")]
    Cyclic(Vertex),
    #[error("vertex {vertex} has degree {degree} above the bound {bound}")]
    DegreeExceeded { vertex: Vertex, degree: usize, bound: usize },
    #[error("tree edge {0}-{1} is not an edge of the graph")]
    EdgeNotInGraph(Vertex, Vertex),
    #[error("tree has {tree} vertices but the graph has {graph}")]
    SizeMismatch { tree: usize, graph: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("walk is empty")]
    Empty,
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("step {0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("vertex {0} is never visited")]
    Unvisited(Vertex),
    #[error("vertex {vertex} is visited {count} times, above the bound {bound}")]
    TooManyVisits { vertex: Vertex, count: usize, bound: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProductError {
    #[error("cycle length t = {0} is below 3")]
    CycleTooShort(usize),
    #[error("maximum degree {delta} exceeds t = {t}, so no Hamilton cycle exists")]
    DegreeTooLarge { delta: usize, t: usize },
    #[error("a walk conversion needs at least 2 vertices")]
    TooSmall,
    #[error("fiber of vertex {0} uses too few fiber edges")]
    FiberInvariant(Vertex),
    #[error("rerouting broke the cycle")]
    Broken,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// A spanning tree stored as parent pointers, with a degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedTree {
    pub parent: Vec<Option<Vertex>>,
    pub bound: usize,
}

impl BoundedTree {
    /// Orients a spanning tree given by its edges away from vertex 0.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)], bound: usize) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                expected: n - 1,
                got: edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(TreeError::OutOfRange(u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(TreeError::Disconnected(v));
        }
        let tree = BoundedTree { parent, bound };
        tree.validate(None)?;
        Ok(tree)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> Option<Vertex> {
        self.parent.iter().position(Option::is_none)
    }

    /// Tree edges as `(parent, child)` in child order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for (u, v) in self.edges() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Sorted child lists.
    pub fn children(&self) -> Vec<Vec<Vertex>> {
        let mut children = vec![Vec::new(); self.n()];
        for (p, v) in self.edges() {
            children[p].push(v);
        }
        children
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edge_list(self.n(), self.edges()).expect("tree edges are in range")
    }

    /// Checks the tree shape and the degree bound, and, when given, that the
    /// tree spans `g` using only its edges.
    pub fn validate(&self, g: Option<&Graph>) -> Result<(), TreeError> {
        let n = self.n();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if let Some(&v) = self.parent.iter().flatten().find(|&&p| p >= n) {
            return Err(TreeError::OutOfRange(v));
        }
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        if roots != 1 {
            return Err(TreeError::Roots(roots));
        }
        for start in 0..n {
            let (mut v, mut steps) = (start, 0);
            while let Some(p) = self.parent[v] {
                v = p;
                steps += 1;
                if steps > n {
                    return Err(TreeError::Cyclic(start));
                }
            }
        }
        for (v, d) in self.degrees().into_iter().enumerate() {
            if d > self.bound {
                return Err(TreeError::DegreeExceeded {
                    vertex: v,
                    degree: d,
                    bound: self.bound,
                });
            }
        }
        if let Some(g) = g {
            if g.n() != n {
                return Err(TreeError::SizeMismatch { tree: n, graph: g.n() });
            }
            if let Some((u, v)) = self.edges().into_iter().find(|&(u, v)| !g.has_edge(u, v)) {
                return Err(TreeError::EdgeNotInGraph(u, v));
            }
        }
        Ok(())
    }
}

/// A closed spanning walk, listed cyclically, visiting each vertex at most
/// `bound` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningWalk {
    pub sequence: Vec<Vertex>,
    pub bound: usize,
}

impl SpanningWalk {
    pub fn visit_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for &v in &self.sequence {
            if v < n {
                counts[v] += 1;
            }
        }
        counts
    }

    pub fn validate(&self, g: &Graph) -> Result<(), WalkError> {
        let n = g.n();
        let seq = &self.sequence;
        if seq.is_empty() {
            return Err(WalkError::Empty);
        }
        if let Some(&v) = seq.iter().find(|&&v| v >= n) {
            return Err(WalkError::OutOfRange(v));
        }
        if seq.len() > 1 {
            for i in 0..seq.len() {
                let (u, v) = (seq[i], seq[(i + 1) % seq.len()]);
                if !g.has_edge(u, v) {
                    return Err(WalkError::NotAnEdge(u, v));
                }
            }
        }
        for (v, count) in self.visit_counts(n).into_iter().enumerate() {
            if count == 0 {
                return Err(WalkError::Unvisited(v));
            }
            if count > self.bound {
                return Err(WalkError::TooManyVisits {
                    vertex: v,
                    count,
                    bound: self.bound,
                });
            }
        }
        Ok(())
    }
}

/// Euler tour of the doubled tree from its root, without the closing return,
/// so each vertex occurs exactly as often as its tree degree.
pub fn ttree_to_twalk(tree: &BoundedTree) -> Result<SpanningWalk, ProductError> {
    tree.validate(None)?;
    if tree.n() < 2 {
        return Err(ProductError::TooSmall);
    }
    let children = tree.children();
    let root = tree.root().expect("validated tree has a root");
    let mut sequence = Vec::with_capacity(2 * (tree.n() - 1));
    // Explicit stack of (vertex, next child index).
    let mut stack = vec![(root, 0usize)];
    sequence.push(root);
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if let Some(&c) = children[v].get(*next) {
            *next += 1;
            stack.push((c, 0));
            sequence.push(c);
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                sequence.push(p);
            }
        }
    }
    sequence.pop();
    Ok(SpanningWalk {
        sequence,
        bound: tree.bound,
    })
}

/// First-visit tree of a walk: each vertex hangs off the walk vertex just
/// before its first occurrence.
pub fn twalk_to_tree(g: &Graph, walk: &SpanningWalk) -> Result<BoundedTree, ProductError> {
    walk.validate(g)?;
    let n = g.n();
    let seq = &walk.sequence;
    let mut seen = vec![false; n];
    seen[seq[0]] = true;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for w in seq.windows(2) {
        if !seen[w[1]] {
            seen[w[1]] = true;
            edges.push((w[0], w[1]));
        }
    }
    let tree = BoundedTree::from_edges(n, &edges, walk.bound + 1)?;
    tree.validate(Some(g))?;
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, path};

    #[test]
    fn path_walk() {
        let p3 = path(3).unwrap();
        let t = BoundedTree::from_edges(3, &[(0, 1), (1, 2)], 2).unwrap();
        let w = ttree_to_twalk(&t).unwrap();
        assert_eq!(w.sequence, vec![0, 1, 2, 1]);
        assert!(w.validate(&p3).is_ok());
        let back = twalk_to_tree(&p3, &w).unwrap();
        assert_eq!(back.edges(), t.edges());
    }

    #[test]
    fn star_center_visits() {
        let star = complete_bipartite(1, 3).unwrap();
        let t = BoundedTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)], 3).unwrap();
        let w = ttree_to_twalk(&t).unwrap();
        assert_eq!(w.visit_counts(4), vec![3, 1, 1, 1]);
        assert!(w.validate(&star).is_ok());
    }

    #[test]
    fn cycle_as_one_walk() {
        let c5 = cycle(5).unwrap();
        let w = SpanningWalk {
            sequence: vec![0, 1, 2, 3, 4],
            bound: 1,
        };
        let t = twalk_to_tree(&c5, &w).unwrap();
        assert_eq!(t.max_degree(), 2);
        assert_eq!(t.edges().len(), 4);
    }

    #[test]
    fn rejects() {
        assert!(BoundedTree::from_edges(3, &[(0, 1)], 2).is_err());
        assert!(matches!(
            BoundedTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)], 2),
            Err(TreeError::DegreeExceeded { .. })
        ));
        let cyclic = BoundedTree {
            parent: vec![None, Some(2), Some(1)],
            bound: 3,
        };
        assert!(cyclic.validate(None).is_err());
        let p3 = path(3).unwrap();
        let w = SpanningWalk {
            sequence: vec![0, 2],
            bound: 2,
        };
        assert_eq!(w.validate(&p3), Err(WalkError::NotAnEdge(0, 2)));
    }
}
