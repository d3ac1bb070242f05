use crate::budget::{Budget, OutOfBudget, Outcome};
use crate::cactus::{validate_even_cactus, EvenCactus};
use crate::graph::{Graph, Vertex};

use super::{path_cover, OracleError};

pub const EXHAUSTIVE_CACTUS_MAX_N: usize = 12;

/// Union-find with parity, so that an edge closing an odd cycle is detected.
#[derive(Clone)]
struct State {
    parent: Vec<usize>,
    parity: Vec<bool>,
    degree: Vec<usize>,
}

impl State {
    fn find(&self, mut v: usize) -> (usize, bool) {
        let mut p = false;
        while self.parent[v] != v {
            p ^= self.parity[v];
            v = self.parent[v];
        }
        (v, p)
    }

    /// False if the edge would close an odd cycle.
    fn join(&mut self, u: usize, v: usize) -> bool {
        let ((ru, pu), (rv, pv)) = (self.find(u), self.find(v));
        if ru == rv {
            return pu != pv;
        }
        let (hi, lo) = (ru.max(rv), ru.min(rv));
        self.parent[hi] = lo;
        self.parity[hi] = !(pu ^ pv);
        true
    }
}

struct Search<'a> {
    g: &'a Graph,
    edges: Vec<(Vertex, Vertex)>,
    max_edges: usize,
    budget: &'a Budget,
    chosen: Vec<(Vertex, Vertex)>,
    found: Option<EvenCactus>,
}

impl Search<'_> {
    fn connectable(&self, state: &State, k: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).map(|v| state.find(v).0).collect();
        fn root(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(u, v) in &self.edges[k..] {
            if state.degree[u] < 3 && state.degree[v] < 3 {
                let (a, b) = (root(&mut parent, u), root(&mut parent, v));
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..n).all(|v| root(&mut parent, v) == root(&mut parent, 0))
    }

    fn try_finish(&mut self, state: &State) -> bool {
        let n = self.g.n();
        if self.chosen.len() + 1 < n || (0..n).any(|v| state.find(v).0 != state.find(0).0) {
            return false;
        }
        match EvenCactus::from_subgraph(n, &self.chosen) {
            Some(h) if validate_even_cactus(self.g, &h).is_ok() => {
                self.found = Some(h);
                true
            }
            _ => false,
        }
    }

    fn run(&mut self, state: State, k: usize) -> Result<bool, OutOfBudget> {
        self.budget.tick()?;
        if self.try_finish(&state) {
            return Ok(true);
        }
        if k == self.edges.len() || self.chosen.len() == self.max_edges || !self.connectable(&state, k) {
            return Ok(false);
        }
        let (u, v) = self.edges[k];
        if state.degree[u] < 3 && state.degree[v] < 3 {
            let mut with = state.clone();
            if with.join(u, v) {
                with.degree[u] += 1;
                with.degree[v] += 1;
                self.chosen.push((u, v));
                if self.run(with, k + 1)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
        }
        self.run(state, k + 1)
    }
}

/// A spanning even cactus of `g`, by exhaustive search. A Hamilton path is
/// tried first; otherwise edge subsets are enumerated, pruned by degree,
/// bipartiteness, edge count and connectivity.
pub fn exhaustive_even_cactus(g: &Graph, budget: &Budget) -> Result<Outcome<EvenCactus>, OracleError> {
    let n = g.n();
    if n < 2 {
        return Err(OracleError::TooSmall { n, min: 2 });
    }
    if n > EXHAUSTIVE_CACTUS_MAX_N {
        return Err(OracleError::TooLarge {
            n,
            max: EXHAUSTIVE_CACTUS_MAX_N,
        });
    }
    if !g.is_connected() {
        return Ok(Outcome::Absent);
    }
    match path_cover(g, 1, budget)? {
        Outcome::Found(cover) => return Ok(Outcome::Found(EvenCactus::from_path(cover.paths[0].clone()))),
        Outcome::Exhausted => return Ok(Outcome::Exhausted),
        Outcome::Absent => {}
    }
    let mut search = Search {
        g,
        edges: g.edges().collect(),
        max_edges: n - 1 + n / 4,
        budget,
        chosen: Vec::new(),
        found: None,
    };
    let state = State {
        parent: (0..n).collect(),
        parity: vec![false; n],
        degree: vec![0; n],
    };
    match search.run(state, 0) {
        Ok(true) => Ok(Outcome::Found(search.found.expect("success records the cactus"))),
        Ok(false) => Ok(Outcome::Absent),
        Err(OutOfBudget) => Ok(Outcome::Exhausted),
    }
}
