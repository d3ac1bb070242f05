use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{CactusViolation, EvenCactus};
use crate::graph::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CactusNode {
    Cycle(usize),
    Path(usize),
}

/// A tree edge: `child` hangs off `parent` at the shared vertex `at`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLink {
    pub parent: CactusNode,
    pub child: CactusNode,
    pub at: Vertex,
}

/// The cycles and paths of a cactus arranged as a tree, joined at the cycle
/// vertices where paths end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CactusTree {
    pub root: CactusNode,
    /// Links in breadth-first order from the root.
    pub links: Vec<TreeLink>,
}

impl CactusTree {
    pub fn node_count(&self) -> usize {
        self.links.len() + 1
    }
}

/// Builds the component tree. The root is the component holding the smallest
/// vertex, preferring the cycle when that vertex is also a path endpoint.
pub fn cactus_tree(h: &EvenCactus) -> Result<CactusTree, CactusViolation> {
    let n = h
        .cycles
        .iter()
        .chain(&h.paths)
        .flatten()
        .max()
        .map_or(0, |&v| v + 1);
    if n == 0 {
        return Err(CactusViolation::EmptyGraph);
    }
    let mut cycle_of = vec![None; n];
    for (i, c) in h.cycles.iter().enumerate() {
        for &v in c {
            if cycle_of[v].is_some() {
                return Err(CactusViolation::CyclesOverlap(v));
            }
            cycle_of[v] = Some(i);
        }
    }
    let mut path_of = vec![None; n];
    for (i, p) in h.paths.iter().enumerate() {
        if p.is_empty() {
            return Err(CactusViolation::MalformedPath(i));
        }
        for (k, &v) in p.iter().enumerate() {
            if path_of[v].is_some() {
                return Err(CactusViolation::PathsOverlap(v));
            }
            path_of[v] = Some(i);
            let interior = k != 0 && k + 1 != p.len();
            if interior && cycle_of[v].is_some() {
                return Err(CactusViolation::DegreeExceeded { vertex: v, degree: 4 });
            }
        }
    }

    // Adjacency between nodes through shared vertices.
    let node_count = h.cycles.len() + h.paths.len();
    let index = |node: CactusNode| match node {
        CactusNode::Cycle(i) => i,
        CactusNode::Path(i) => h.cycles.len() + i,
    };
    let mut adjacency: Vec<Vec<(CactusNode, Vertex)>> = vec![Vec::new(); node_count];
    let mut shared = 0;
    for (i, p) in h.paths.iter().enumerate() {
        let ends: &[Vertex] = if p.len() == 1 { &p[..1] } else { &[p[0], p[p.len() - 1]] };
        for &v in ends {
            if let Some(c) = cycle_of[v] {
                adjacency[index(CactusNode::Cycle(c))].push((CactusNode::Path(i), v));
                adjacency[index(CactusNode::Path(i))].push((CactusNode::Cycle(c), v));
                shared += 1;
            }
        }
    }
    if shared + 1 != node_count {
        return Err(if shared + 1 > node_count {
            CactusViolation::ExtraCycle {
                rank: shared + 1 + h.cycles.len() - node_count,
                listed: h.cycles.len(),
            }
        } else {
            CactusViolation::Disconnected
        });
    }

    let root_vertex = (0..n)
        .find(|&v| cycle_of[v].is_some() || path_of[v].is_some())
        .unwrap();
    let root = match (cycle_of[root_vertex], path_of[root_vertex]) {
        (Some(c), _) => CactusNode::Cycle(c),
        (None, Some(p)) => CactusNode::Path(p),
        _ => unreachable!(),
    };
    let mut seen = vec![false; node_count];
    seen[index(root)] = true;
    let mut links = Vec::with_capacity(node_count - 1);
    let mut queue = VecDeque::from([root]);
    while let Some(node) = queue.pop_front() {
        let mut next = adjacency[index(node)].clone();
        next.sort_by_key(|&(_, v)| v);
        for (child, at) in next {
            if !seen[index(child)] {
                seen[index(child)] = true;
                links.push(TreeLink { parent: node, child, at });
                queue.push_back(child);
            }
        }
    }
    if links.len() + 1 != node_count {
        return Err(CactusViolation::Disconnected);
    }
    Ok(CactusTree { root, links })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cycle() {
        let h = EvenCactus {
            cycles: vec![vec![0, 1, 2, 3]],
            paths: vec![],
        };
        let t = cactus_tree(&h).unwrap();
        assert_eq!(t.root, CactusNode::Cycle(0));
        assert!(t.links.is_empty());
    }

    #[test]
    fn pendant_path() {
        let h = EvenCactus {
            cycles: vec![vec![1, 2, 3, 4]],
            paths: vec![vec![2, 0]],
        };
        let t = cactus_tree(&h).unwrap();
        // Vertex 0 lies on the path, so the path is the root.
        assert_eq!(t.root, CactusNode::Path(0));
        assert_eq!(
            t.links,
            vec![TreeLink {
                parent: CactusNode::Path(0),
                child: CactusNode::Cycle(0),
                at: 2
            }]
        );
    }

    #[test]
    fn two_cycles_and_a_bridge() {
        let h = EvenCactus {
            cycles: vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            paths: vec![vec![2, 4]],
        };
        let t = cactus_tree(&h).unwrap();
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.links[0], TreeLink { parent: CactusNode::Cycle(0), child: CactusNode::Path(0), at: 2 });
        assert_eq!(t.links[1], TreeLink { parent: CactusNode::Path(0), child: CactusNode::Cycle(1), at: 4 });
    }

    #[test]
    fn rejects_cyclic_arrangement() {
        // Path with both ends on the same cycle closes an extra cycle.
        let h = EvenCactus {
            cycles: vec![vec![0, 1, 2, 3]],
            paths: vec![vec![0, 4, 2]],
        };
        assert!(cactus_tree(&h).is_err());
    }
}
