use serde::{Deserialize, Serialize};

use super::{BoundedTree, ProductError};
use crate::graph::{Graph, Vertex};

/// A Hamilton cycle of `G □ C_t` as a cyclic list of `(vertex, level)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductCycle {
    pub t: usize,
    pub sequence: Vec<(Vertex, usize)>,
}

struct Fibers {
    n: usize,
    t: usize,
    adj: Vec<Vec<usize>>,
}

impl Fibers {
    fn idx(&self, v: Vertex, level: usize) -> usize {
        v + (level % self.t) * self.n
    }

    fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&x| x != b);
        self.adj[b].retain(|&x| x != a);
    }

    fn fiber_edges_used(&self, v: Vertex) -> usize {
        (0..self.t)
            .filter(|&i| self.has(self.idx(v, i), self.idx(v, i + 1)))
            .count()
    }
}

/// Hamilton cycle of `tree □ C_t` by leaf induction: start from the root's
/// fiber and attach leaves in reverse removal order, each time rerouting the
/// lowest used fiber edge of the neighbor around the new leaf's fiber.
pub fn tree_cycle_ham(tree: &BoundedTree, t: usize) -> Result<ProductCycle, ProductError> {
    if t < 3 {
        return Err(ProductError::CycleTooShort(t));
    }
    tree.validate(None).or_else(|e| match e {
        super::TreeError::DegreeExceeded { .. } => Ok(()),
        e => Err(e),
    })?;
    let delta = tree.max_degree();
    if delta > t {
        return Err(ProductError::DegreeTooLarge { delta, t });
    }
    let n = tree.n();
    let tree_graph = tree.to_graph();

    // Removal order: repeatedly strip the highest-numbered leaf.
    let mut degree = tree.degrees();
    let mut alive = vec![true; n];
    let mut removal = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let leaf = (0..n).rev().find(|&v| alive[v] && degree[v] == 1).expect("a tree has leaves");
        let anchor = tree_graph
            .neighbors(leaf)
            .iter()
            .copied()
            .find(|&u| alive[u])
            .expect("leaf has a live neighbor");
        alive[leaf] = false;
        degree[leaf] = 0;
        degree[anchor] -= 1;
        removal.push((leaf, anchor));
    }
    let root = (0..n).find(|&v| alive[v]).expect("one vertex remains");

    let mut f = Fibers {
        n,
        t,
        adj: vec![Vec::new(); n * t],
    };
    for i in 0..t {
        let (a, b) = (f.idx(root, i), f.idx(root, i + 1));
        f.link(a, b);
    }
    for &(u, v) in removal.iter().rev() {
        let i = (0..t)
            .find(|&i| f.has(f.idx(v, i), f.idx(v, i + 1)))
            .ok_or(ProductError::FiberInvariant(v))?;
        let (vi, vj) = (f.idx(v, i), f.idx(v, i + 1));
        f.unlink(vi, vj);
        // (v,i) (u,i) (u,i-1) ... (u,i+1) (v,i+1)
        f.link(vi, f.idx(u, i));
        for k in 0..t - 1 {
            let (a, b) = (f.idx(u, i + t - k), f.idx(u, i + t - k - 1));
            f.link(a, b);
        }
        f.link(f.idx(u, i + 1), vj);
    }

    let tree_degree = tree.degrees();
    for w in 0..n {
        if f.fiber_edges_used(w) + tree_degree[w] < t {
            return Err(ProductError::FiberInvariant(w));
        }
    }

    let total = n * t;
    if f.adj.iter().any(|a| a.len() != 2) {
        return Err(ProductError::Broken);
    }
    let start = f.idx(root, 0);
    let mut walk = vec![start];
    let (mut prev, mut cur) = (start, f.adj[start][0]);
    while cur != start && walk.len() <= total {
        walk.push(cur);
        let next = if f.adj[cur][0] == prev { f.adj[cur][1] } else { f.adj[cur][0] };
        prev = cur;
        cur = next;
    }
    if walk.len() != total {
        return Err(ProductError::Broken);
    }
    Ok(ProductCycle {
        t,
        sequence: walk.into_iter().map(|x| (x % n, x / n)).collect(),
    })
}

/// True iff `c` is a Hamilton cycle of `g □ C_t`.
pub fn verify_product_cycle(g: &Graph, c: &ProductCycle) -> bool {
    let (n, t) = (g.n(), c.t);
    let seq = &c.sequence;
    if t < 3 || n == 0 || seq.len() != n * t {
        return false;
    }
    let mut seen = vec![false; n * t];
    for &(v, l) in seq {
        if v >= n || l >= t || seen[v + l * n] {
            return false;
        }
        seen[v + l * n] = true;
    }
    (0..seq.len()).all(|i| {
        let ((u, a), (v, b)) = (seq[i], seq[(i + 1) % seq.len()]);
        (u == v && ((a + 1) % t == b || (b + 1) % t == a)) || (a == b && g.has_edge(u, v))
    })
}
