use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{cactus_tree, validate_even_cactus, CactusNode, CactusViolation, EvenCactus};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpliceError {
    #[error("not a spanning even cactus: {0}")]
    Cactus(#[from] CactusViolation),
    #[error("the prism of a single vertex has no cycle")]
    SingleVertex,
    #[error("splicing broke the cycle while attaching block {0}")]
    Broken(usize),
}

/// A Hamilton cycle of `G □ K2` as a cyclic list of `(vertex, level)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrismHamCycle {
    pub sequence: Vec<(Vertex, u8)>,
}

impl PrismHamCycle {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

/// Undirected 2-regular multigraph on prism indices, edited in place.
struct Splice {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Splice {
    fn idx(&self, v: Vertex, level: u8) -> usize {
        v + level as usize * self.n
    }

    fn add(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn remove(&mut self, a: usize, b: usize) -> bool {
        let (Some(i), Some(j)) = (
            self.adj[a].iter().position(|&x| x == b),
            self.adj[b].iter().position(|&x| x == a),
        ) else {
            return false;
        };
        self.adj[a].swap_remove(i);
        self.adj[b].swap_remove(j);
        true
    }

    fn add_cycle(&mut self, seq: &[usize], skip: Option<(usize, usize)>) {
        for i in 0..seq.len() {
            let (a, b) = (seq[i], seq[(i + 1) % seq.len()]);
            if skip != Some((a, b)) && skip != Some((b, a)) {
                self.add(a, b);
            }
        }
    }

    /// Walks the structure from `start`; returns the cycle if every touched
    /// index has degree 2 and the walk closes after visiting all of them.
    fn single_cycle(&self, start: usize) -> Option<Vec<usize>> {
        let touched = self.adj.iter().filter(|a| !a.is_empty()).count();
        if self.adj.iter().any(|a| !a.is_empty() && a.len() != 2) {
            return None;
        }
        let mut walk = vec![start];
        let (mut prev, mut cur) = (start, self.adj[start][0]);
        while cur != start {
            walk.push(cur);
            let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
            prev = cur;
            cur = next;
            if walk.len() > touched {
                return None;
            }
        }
        (walk.len() == touched).then_some(walk)
    }
}

/// Staircase through `c × {0, 1}` that uses every vertical edge.
fn cycle_block(s: &Splice, c: &[Vertex]) -> Vec<usize> {
    let mut seq = Vec::with_capacity(2 * c.len());
    for (i, &v) in c.iter().enumerate() {
        let (first, second) = if i % 2 == 0 { (0, 1) } else { (1, 0) };
        seq.push(s.idx(v, first));
        seq.push(s.idx(v, second));
    }
    seq
}

/// Out along level 0, back along level 1.
fn path_block(s: &Splice, p: &[Vertex]) -> Vec<usize> {
    p.iter()
        .map(|&v| s.idx(v, 0))
        .chain(p.iter().rev().map(|&v| s.idx(v, 1)))
        .collect()
}

/// Builds a Hamilton cycle of the prism from a spanning even cactus by
/// joining per-block cycles across shared vertical edges.
pub fn prism_ham_from_cactus(g: &Graph, h: &EvenCactus) -> Result<PrismHamCycle, SpliceError> {
    validate_even_cactus(g, h)?;
    let n = g.n();
    if n == 1 {
        return Err(SpliceError::SingleVertex);
    }
    let tree = cactus_tree(h)?;
    let mut s = Splice {
        n,
        adj: vec![Vec::new(); 2 * n],
    };
    let block = |s: &Splice, node: CactusNode| match node {
        CactusNode::Cycle(i) => cycle_block(s, &h.cycles[i]),
        CactusNode::Path(i) => path_block(s, &h.paths[i]),
    };
    let root = block(&s, tree.root);
    s.add_cycle(&root, None);
    for (k, link) in tree.links.iter().enumerate() {
        let vertical = (s.idx(link.at, 0), s.idx(link.at, 1));
        if !s.remove(vertical.0, vertical.1) {
            return Err(SpliceError::Broken(k + 1));
        }
        let child = block(&s, link.child);
        s.add_cycle(&child, Some(vertical));
        if s.single_cycle(vertical.0).is_none() {
            return Err(SpliceError::Broken(k + 1));
        }
    }
    let walk = s.single_cycle(0).ok_or(SpliceError::Broken(tree.links.len()))?;
    if walk.len() != 2 * n {
        return Err(SpliceError::Broken(tree.links.len()));
    }
    Ok(PrismHamCycle {
        sequence: walk.into_iter().map(|x| (x % n, (x / n) as u8)).collect(),
    })
}

/// True iff `c` is a Hamilton cycle of `g □ K2`.
pub fn verify_prism_cycle(g: &Graph, c: &PrismHamCycle) -> bool {
    let n = g.n();
    let seq = &c.sequence;
    if n < 2 || seq.len() != 2 * n {
        return false;
    }
    let mut seen = vec![false; 2 * n];
    for &(v, l) in seq {
        if v >= n || l > 1 || seen[v + l as usize * n] {
            return false;
        }
        seen[v + l as usize * n] = true;
    }
    (0..seq.len()).all(|i| {
        let ((u, a), (v, b)) = (seq[i], seq[(i + 1) % seq.len()]);
        (u == v && a != b) || (a == b && g.has_edge(u, v))
    })
}
