//! Exhaustive Hamilton cycle and path search.

use crate::budget::{Budget, OutOfBudget, Outcome};
use crate::graph::{bits, Graph, Vertex};

use super::{CycleWitness, OracleError, PathCover};

/// Backtracking over simple paths from a fixed start vertex.
///
/// Pruning rules, all of which only discard states with no completion:
/// every unvisited vertex keeps at least two available neighbours (unvisited
/// or one of the two path ends); the unvisited set induces a connected
/// subgraph; an unvisited neighbour of the current end whose only other
/// option is fixed must be taken next.
struct CycleSearch<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    start: Vertex,
    path: Vec<Vertex>,
}

impl CycleSearch<'_> {
    fn extend(&mut self, visited: u128, end: Vertex) -> Result<bool, OutOfBudget> {
        self.budget.tick()?;
        let g = self.g;
        let unvisited = g.all_mask() & !visited;
        if unvisited == 0 {
            return Ok(g.has_edge(end, self.start));
        }
        let ends = (1u128 << end) | (1u128 << self.start);
        let mut forced = None;
        for u in bits(unvisited) {
            let avail = g.row(u) & (unvisited | ends);
            let count = avail.count_ones();
            if count < 2 {
                return Ok(false);
            }
            if count == 2 && end != self.start && avail >> end & 1 == 1 {
                if forced.is_some() {
                    return Ok(false);
                }
                forced = Some(u);
            }
        }
        if g.row(end) & unvisited == 0 || g.row(self.start) & unvisited == 0 {
            return Ok(false);
        }
        if !g.is_connected_within(unvisited) {
            return Ok(false);
        }
        let candidates = match forced {
            Some(u) => 1u128 << u,
            None => g.row(end) & unvisited,
        };
        for next in bits(candidates) {
            self.path.push(next);
            if self.extend(visited | 1 << next, next)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// A Hamilton cycle of `g`, or a definitive `Absent` after exhaustive search.
pub fn hamilton_cycle(g: &Graph, budget: &Budget) -> Result<Outcome<CycleWitness>, OracleError> {
    let n = g.n();
    if n < 3 {
        return Err(OracleError::TooSmall { n, min: 3 });
    }
    if (0..n).any(|v| g.degree(v) < 2) || !g.is_connected() {
        return Ok(Outcome::Absent);
    }
    // Lowest-degree vertex (lowest id on ties) as the anchor.
    let start = (0..n).min_by_key(|&v| (g.degree(v), v)).unwrap();
    let mut search = CycleSearch {
        g,
        budget,
        start,
        path: vec![start],
    };
    match search.extend(1 << start, start) {
        Ok(true) => Ok(Outcome::Found(CycleWitness::new(search.path))),
        Ok(false) => Ok(Outcome::Absent),
        Err(OutOfBudget) => Ok(Outcome::Exhausted),
    }
}

/// A Hamilton path of `g`, via a Hamilton cycle of `g` plus one universal
/// vertex.
pub fn hamilton_path(g: &Graph, budget: &Budget) -> Result<Outcome<Vec<Vertex>>, OracleError> {
    if g.n() == 0 {
        return Err(OracleError::TooSmall { n: 0, min: 1 });
    }
    Ok(super::path_cover(g, 1, budget)?.map(|mut cover| cover.paths.remove(0)))
}

/// Splits a Hamilton cycle of `g` plus `extra` appended universal vertices
/// into the paths obtained by deleting those vertices.
pub(super) fn split_at_added(cycle: &[Vertex], n: usize) -> Vec<Vec<Vertex>> {
    let len = cycle.len();
    let first_added = cycle.iter().position(|&v| v >= n);
    let Some(offset) = first_added else {
        // No added vertex: cannot happen for extra >= 1.
        return vec![cycle.to_vec()];
    };
    let mut paths = Vec::new();
    let mut current = Vec::new();
    for k in 1..=len {
        let v = cycle[(offset + k) % len];
        if v >= n {
            if !current.is_empty() {
                paths.push(std::mem::take(&mut current));
            }
        } else {
            current.push(v);
        }
    }
    paths
}

pub(super) fn cover_from_cycle(cycle: &[Vertex], n: usize) -> PathCover {
    PathCover {
        paths: split_at_added(cycle, n),
    }
}
