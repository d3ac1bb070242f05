use crate::budget::{Budget, OutOfBudget, Outcome};
use crate::graph::{Graph, Vertex};
use crate::products::BoundedTree;

use super::OracleError;

#[derive(Clone)]
struct Forest {
    parent: Vec<usize>,
    degree: Vec<usize>,
}

impl Forest {
    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra.max(rb)] = ra.min(rb);
    }
}

struct TreeSearch<'a> {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    bound: usize,
    budget: &'a Budget,
    chosen: Vec<(Vertex, Vertex)>,
}

impl TreeSearch<'_> {
    /// Can the chosen edges plus the undecided edges from `k` on, restricted to
    /// unsaturated endpoints, still connect everything?
    fn still_connectable(&self, forest: &Forest, k: usize) -> bool {
        let mut f = forest.clone();
        for &(u, v) in &self.edges[k..] {
            if f.degree[u] < self.bound && f.degree[v] < self.bound {
                f.union(u, v);
            }
        }
        (0..self.n).all(|v| f.find(v) == f.find(0))
    }

    fn run(&mut self, forest: Forest, k: usize) -> Result<bool, OutOfBudget> {
        self.budget.tick()?;
        if self.chosen.len() == self.n - 1 {
            return Ok(true);
        }
        if k == self.edges.len() || !self.still_connectable(&forest, k) {
            return Ok(false);
        }
        let (u, v) = self.edges[k];
        if forest.find(u) != forest.find(v)
            && forest.degree[u] < self.bound
            && forest.degree[v] < self.bound
        {
            let mut with = forest.clone();
            with.union(u, v);
            with.degree[u] += 1;
            with.degree[v] += 1;
            self.chosen.push((u, v));
            if self.run(with, k + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        self.run(forest, k + 1)
    }
}

/// A spanning tree of maximum degree at most `bound`, by exhaustive edge
/// branching (include before exclude, edges in lexicographic order).
pub fn bounded_degree_spanning_tree(
    g: &Graph,
    bound: usize,
    budget: &Budget,
) -> Result<Outcome<BoundedTree>, OracleError> {
    let n = g.n();
    if n == 0 || bound == 0 {
        return Err(OracleError::Argument(format!(
            "bounded_degree_spanning_tree needs n >= 1 and t >= 1 (got n = {n}, t = {bound})"
        )));
    }
    if n == 1 {
        return Ok(Outcome::Found(BoundedTree::from_edges(1, &[], bound).expect("single vertex")));
    }
    if !g.is_connected() {
        return Ok(Outcome::Absent);
    }
    let mut search = TreeSearch {
        n,
        edges: g.edges().collect(),
        bound,
        budget,
        chosen: Vec::new(),
    };
    let forest = Forest {
        parent: (0..n).collect(),
        degree: vec![0; n],
    };
    match search.run(forest, 0) {
        Ok(true) => Ok(Outcome::Found(
            BoundedTree::from_edges(n, &search.chosen, bound).expect("search yields a spanning tree"),
        )),
        Ok(false) => Ok(Outcome::Absent),
        Err(OutOfBudget) => Ok(Outcome::Exhausted),
    }
}
