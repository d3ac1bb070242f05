//! Exact search procedures and independent certificate checkers.
//!
//! The searchers stand in for existence theorems whose proofs are not
//! constructive. Every search is complete: `Outcome::Absent` is a proof of
//! non-existence, while `Outcome::Exhausted` only means the budget ran out.

mod cactus_search;
mod even_cycle;
mod hamilton;
mod tree;

use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, Outcome};
use crate::graph::{Graph, GraphError, Vertex};
use crate::invariants::InvariantError;

pub use cactus_search::{exhaustive_even_cactus, EXHAUSTIVE_CACTUS_MAX_N};
pub use even_cycle::{even_cycle_through, EVEN_CYCLE_MAX_N};
pub use hamilton::{hamilton_cycle, hamilton_path};
pub use tree::bounded_degree_spanning_tree;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("graph on {n} vertices is below the minimum of {min} for this search")]
    TooSmall { n: usize, min: usize },
    #[error("graph on {n} vertices exceeds the search limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// A cycle as a cyclic sequence of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness {
    pub vertices: Vec<Vertex>,
}

impl CycleWitness {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        CycleWitness { vertices }
    }
}

impl Deref for CycleWitness {
    type Target = [Vertex];

    fn deref(&self) -> &[Vertex] {
        &self.vertices
    }
}

/// Vertex-disjoint paths covering every vertex. The first vertex of each path
/// is its designated start.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCover {
    pub paths: Vec<Vec<Vertex>>,
}

impl PathCover {
    pub fn starts(&self) -> Vec<Vertex> {
        self.paths.iter().map(|p| p[0]).collect()
    }
}

/// At most `r` disjoint paths covering `g`, found by adding `r` pairwise
/// adjacent universal vertices, searching a Hamilton cycle of the augmented
/// graph and deleting the added vertices again.
pub fn path_cover(g: &Graph, r: usize, budget: &Budget) -> Result<Outcome<PathCover>, OracleError> {
    let n = g.n();
    if n == 0 || r == 0 {
        return Err(OracleError::Argument(format!(
            "path_cover needs n >= 1 and r >= 1 (got n = {n}, r = {r})"
        )));
    }
    if n == 1 {
        return Ok(Outcome::Found(PathCover { paths: vec![vec![0]] }));
    }
    let augmented = g.with_universal_clique(r)?;
    Ok(hamilton_cycle(&augmented, budget)?.map(|c| hamilton::cover_from_cycle(&c, n)))
}

/// True iff `c` is a cycle of `g` (spanning all vertices when `spanning`).
pub fn verify_cycle(g: &Graph, c: &[Vertex], spanning: bool) -> bool {
    let n = g.n();
    if c.len() < 3 || (spanning && c.len() != n) {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in c {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
}

/// True iff `p` is a nonempty simple path of `g` (spanning when requested).
pub fn verify_path(g: &Graph, p: &[Vertex], spanning: bool) -> bool {
    let n = g.n();
    if p.is_empty() || (spanning && p.len() != n) {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// True iff `cover` has at most `max_paths` disjoint paths covering `g`.
pub fn verify_path_cover(g: &Graph, cover: &PathCover, max_paths: usize) -> bool {
    if cover.paths.is_empty() || cover.paths.len() > max_paths {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for p in &cover.paths {
        if !verify_path(g, p, false) {
            return false;
        }
        for &v in p {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    seen.into_iter().all(|s| s)
}
