use std::collections::BTreeMap;

use crate::cactus::{validate_even_cactus, EvenCactus};
use crate::graph::{Graph, Vertex};
use crate::oracles::verify_cycle;

/// Closes a cycle from vertex chains: consecutive chains are joined by an
/// edge, or merged when one ends where the next begins. `None` unless the
/// result is a simple cycle of `g`.
pub(crate) fn ring(g: &Graph, parts: &[Vec<Vertex>]) -> Option<Vec<Vertex>> {
    let mut c: Vec<Vertex> = Vec::new();
    for part in parts {
        for &v in part {
            if c.last() != Some(&v) {
                c.push(v);
            }
        }
    }
    if c.len() > 1 && c.first() == c.last() {
        c.pop();
    }
    verify_cycle(g, &c, false).then_some(c)
}

/// Vertices of `p` from index `i` to index `j` inclusive, in that direction.
pub(crate) fn seg(p: &[Vertex], i: usize, j: usize) -> Vec<Vertex> {
    if i <= j {
        p[i..=j].to_vec()
    } else {
        p[j..=i].iter().rev().copied().collect()
    }
}

pub(crate) fn cycle_edges(c: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    (0..c.len())
        .map(|i| {
            let (u, v) = (c[i], c[(i + 1) % c.len()]);
            (u.min(v), u.max(v))
        })
        .collect()
}

/// Symmetric difference of two cycles, if it is a single cycle.
pub(crate) fn merge_cycles(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Option<Vec<Vertex>> {
    let mut count: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for e in cycle_edges(a).into_iter().chain(cycle_edges(b)) {
        *count.entry(e).or_default() += 1;
    }
    let edges: Vec<_> = count.into_iter().filter(|&(_, k)| k == 1).map(|(e, _)| e).collect();
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in &edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    if adj.values().any(|a| a.len() != 2) {
        return None;
    }
    let (&start, first) = adj.iter().next()?;
    let mut c = vec![start];
    let (mut prev, mut cur) = (start, first[0]);
    while cur != start {
        c.push(cur);
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    (c.len() == adj.len()).then_some(()).and_then(|_| ring(g, &[c]))
}

struct Components {
    parent: Vec<usize>,
}

impl Components {
    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Builds a spanning even cactus from chosen even cycles, mandatory bridge
/// edges, the edges of the remaining path segments, and optional connector
/// edges, never letting a cycle vertex exceed degree 3 or a path vertex
/// exceed degree 2 and never closing a new cycle.
pub(crate) fn assemble(
    g: &Graph,
    paths: &[&[Vertex]],
    cycles: Vec<Vec<Vertex>>,
    bridges: &[(Vertex, Vertex)],
    connectors: &[(Vertex, Vertex)],
) -> Option<EvenCactus> {
    let n = g.n();
    let mut room = vec![2usize; n];
    let mut comp = Components {
        parent: (0..n).collect(),
    };
    for c in &cycles {
        if c.len() < 4 || c.len() % 2 == 1 || !verify_cycle(g, c, false) {
            return None;
        }
        for &v in c {
            if room[v] != 2 {
                return None;
            }
            room[v] = 1;
            comp.union(c[0], v);
        }
    }
    let mut forest = Vec::new();
    let mut add = |u: Vertex, v: Vertex, forest: &mut Vec<(Vertex, Vertex)>| {
        if !g.has_edge(u, v) || room[u] == 0 || room[v] == 0 || comp.find(u) == comp.find(v) {
            return false;
        }
        room[u] -= 1;
        room[v] -= 1;
        comp.union(u, v);
        forest.push((u, v));
        true
    };
    for &(u, v) in bridges {
        if !add(u, v, &mut forest) {
            return None;
        }
    }
    let mut on_cycle = vec![false; n];
    for &v in cycles.iter().flatten() {
        on_cycle[v] = true;
    }
    let path_edges: Vec<(Vertex, Vertex)> = paths
        .iter()
        .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
        .collect();
    let (free, touching): (Vec<_>, Vec<_>) = path_edges
        .into_iter()
        .partition(|&(u, v)| !on_cycle[u] && !on_cycle[v]);
    for (u, v) in free.into_iter().chain(touching) {
        add(u, v, &mut forest);
    }
    for &(u, v) in connectors {
        add(u, v, &mut forest);
    }
    let h = EvenCactus::from_cycles_and_forest(n, cycles, &forest)?;
    validate_even_cactus(g, &h).is_ok().then_some(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle};

    #[test]
    fn ring_and_seg() {
        let c6 = cycle(6).unwrap();
        let p: Vec<_> = (0..6).collect();
        assert_eq!(seg(&p, 4, 1), vec![4, 3, 2, 1]);
        assert_eq!(ring(&c6, &[seg(&p, 0, 3), seg(&p, 4, 5)]), Some(p.clone()));
        assert_eq!(ring(&c6, &[seg(&p, 0, 3)]), None);
    }

    #[test]
    fn merge() {
        // Two 4-cycles sharing the edge 0-1 in K2,4 style ladder.
        let g = Graph::from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 1)]).unwrap();
        let m = merge_cycles(&g, &[0, 1, 2, 3], &[0, 4, 5, 1]).unwrap();
        assert_eq!(m.len(), 6);
    }

    #[test]
    fn assemble_k24() {
        let g = complete_bipartite(2, 4).unwrap();
        let h = assemble(&g, &[&[2, 0, 3], &[4, 1, 5]], vec![vec![0, 2, 1, 3]], &[], &[(0, 5)]).unwrap();
        assert!(validate_even_cactus(&g, &h).is_ok());
        assert!(assemble(&g, &[], vec![vec![0, 2, 1]], &[], &[]).is_none());
    }
}
