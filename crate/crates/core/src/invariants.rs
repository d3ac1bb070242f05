//! Exact graph parameters: independence number, vertex connectivity,
//! toughness and bipartiteness, each with a witness.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bits, Graph, Vertex};

/// Largest graph accepted by the subset-enumerating toughness routine.
pub const TOUGHNESS_MAX_N: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("parameter undefined on the empty graph")]
    EmptyGraph,
    #[error("{0} vertices exceeds the toughness enumeration limit of {TOUGHNESS_MAX_N}")]
    TooLarge(usize),
}

/// Toughness value: an exact rational, or the marker used for complete graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Toughness {
    Finite(Ratio<u64>),
    Infinite,
}

impl Toughness {
    pub fn finite(self) -> Option<Ratio<u64>> {
        match self {
            Toughness::Finite(r) => Some(r),
            Toughness::Infinite => None,
        }
    }
}

impl fmt::Display for Toughness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Toughness::Finite(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Toughness::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Toughness::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Toughness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Toughness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_toughness(&s).ok_or_else(|| serde::de::Error::custom(format!("bad toughness `{s}`")))
    }
}

fn parse_toughness(s: &str) -> Option<Toughness> {
    if s == "inf" {
        return Some(Toughness::Infinite);
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.parse().ok()?, b.parse().ok()?),
        None => (s.parse().ok()?, 1),
    };
    (den != 0).then(|| Toughness::Finite(Ratio::new(num, den)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToughnessWitness {
    pub value: Toughness,
    /// A cut achieving the value; `None` for complete graphs.
    pub cut: Option<Vec<Vertex>>,
    pub components: usize,
}

/// Summary of the hypothesis parameters of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphParams {
    pub n: usize,
    pub alpha: usize,
    pub kappa: usize,
    /// Absent when the graph is too large for exact enumeration.
    pub toughness: Option<Toughness>,
}

impl GraphParams {
    pub fn compute(g: &Graph) -> Result<Self, InvariantError> {
        let (alpha, _) = independence_number(g)?;
        let (kappa, _) = connectivity(g)?;
        let toughness = match toughness(g) {
            Ok(w) => Some(w.value),
            Err(InvariantError::TooLarge(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(GraphParams {
            n: g.n(),
            alpha,
            kappa,
            toughness,
        })
    }
}

// ---------------------------------------------------------------------------
// Independence number
// ---------------------------------------------------------------------------

/// Maximum independent set by branch and bound on the complement, bounding
/// with a greedy colouring of the candidate set.
pub fn independence_number(g: &Graph) -> Result<(usize, Vec<Vertex>), InvariantError> {
    if g.n() == 0 {
        return Err(InvariantError::EmptyGraph);
    }
    let all = g.all_mask();
    // Complement rows: non-neighbours.
    let co: Vec<u128> = (0..g.n()).map(|v| all & !g.row(v) & !(1 << v)).collect();
    let mut best = 0u128;
    let mut best_size = 0u32;
    clique_expand(&co, 0, all, &mut best, &mut best_size);
    Ok((best_size as usize, bits(best).collect()))
}

fn clique_expand(co: &[u128], current: u128, mut cand: u128, best: &mut u128, best_size: &mut u32) {
    if cand == 0 {
        if current.count_ones() > *best_size {
            *best_size = current.count_ones();
            *best = current;
        }
        return;
    }
    let (order, colors) = greedy_color(co, cand);
    for idx in (0..order.len()).rev() {
        if current.count_ones() + colors[idx] <= *best_size {
            return;
        }
        let v = order[idx];
        clique_expand(co, current | 1 << v, cand & co[v], best, best_size);
        cand &= !(1 << v);
    }
}

/// Sequential colouring of `cand` in the "compatible" graph `co`; returns the
/// vertices ordered by colour class with the running colour count.
fn greedy_color(co: &[u128], cand: u128) -> (Vec<usize>, Vec<u32>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !co[v];
            uncolored &= !(1 << v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

// ---------------------------------------------------------------------------
// Vertex connectivity
// ---------------------------------------------------------------------------

/// Unit-capacity flow network on the split graph: vertex `v` becomes
/// `2v` (in) and `2v + 1` (out).
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph, s: Vertex, t: Vertex) -> Self {
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); 2 * g.n()],
        };
        let big = g.n() as u32;
        for v in 0..g.n() {
            let c = if v == s || v == t { big } else { 1 };
            net.add(2 * v, 2 * v + 1, c);
        }
        for (u, v) in g.edges() {
            net.add(2 * u + 1, 2 * v, big);
            net.add(2 * v + 1, 2 * u, big);
        }
        net
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// BFS for one augmenting path; returns the reached set when none exists.
    fn augment(&mut self, source: usize, sink: usize) -> Result<(), Vec<bool>> {
        let mut prev = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.adj[x] {
                let y = self.head[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    prev[y] = e;
                    if y == sink {
                        let mut z = sink;
                        while z != source {
                            let e = prev[z];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            z = self.head[e ^ 1];
                        }
                        return Ok(());
                    }
                    queue.push_back(y);
                }
            }
        }
        Err(seen)
    }
}

/// Local vertex connectivity between non-adjacent `s` and `t`, capped at
/// `limit`. Returns the count and, when below the cap, a minimum separator.
fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> (usize, Option<Vec<Vertex>>) {
    let mut net = SplitNetwork::new(g, s, t);
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    loop {
        if flow >= limit {
            return (flow, None);
        }
        match net.augment(source, sink) {
            Ok(()) => flow += 1,
            Err(reached) => {
                let cut = (0..g.n())
                    .filter(|&v| reached[2 * v] && !reached[2 * v + 1])
                    .collect();
                return (flow, Some(cut));
            }
        }
    }
}

/// Vertex connectivity κ(G) with a minimum separating set when `g` is not
/// complete. Complete graphs give `n − 1` and no cut; the one-vertex graph
/// gives 0.
///
/// Uses Even's scheme: only sources among the first κ+1 vertices need to be
/// tried, each against every later non-neighbour.
pub fn connectivity(g: &Graph) -> Result<(usize, Option<Vec<Vertex>>), InvariantError> {
    let n = g.n();
    if n == 0 {
        return Err(InvariantError::EmptyGraph);
    }
    if g.is_complete() {
        return Ok((n - 1, None));
    }
    if !g.is_connected() {
        return Ok((0, Some(Vec::new())));
    }
    let mut best = n - 1;
    let mut best_cut = None;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            let (k, cut) = local_connectivity(g, i, j, best);
            if k < best {
                best = k;
                best_cut = cut;
            }
        }
        i += 1;
    }
    Ok((best, best_cut))
}

// ---------------------------------------------------------------------------
// Toughness
// ---------------------------------------------------------------------------

/// Toughness by enumerating every vertex subset whose removal leaves at
/// least two components. Exact rational arithmetic throughout.
pub fn toughness(g: &Graph) -> Result<ToughnessWitness, InvariantError> {
    let n = g.n();
    if n == 0 {
        return Err(InvariantError::EmptyGraph);
    }
    if n > TOUGHNESS_MAX_N {
        return Err(InvariantError::TooLarge(n));
    }
    if g.is_complete() {
        return Ok(ToughnessWitness {
            value: Toughness::Infinite,
            cut: None,
            components: 1,
        });
    }
    let all = g.all_mask();
    let mut best: Option<(Ratio<u64>, u128, usize)> = None;
    for s in 0..(1u128 << n) {
        let rest = all & !s;
        let c = g.components_within(rest);
        if c < 2 {
            continue;
        }
        let r = Ratio::new(s.count_ones() as u64, c as u64);
        if best.is_none_or(|(b, _, _)| r < b) {
            best = Some((r, s, c));
        }
    }
    let (value, cut, components) = best.expect("non-complete graphs have a disconnecting set");
    Ok(ToughnessWitness {
        value: Toughness::Finite(value),
        cut: Some(bits(cut).collect()),
        components,
    })
}

// ---------------------------------------------------------------------------
// Bipartiteness
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// Side (`false`/`true`) of each vertex.
    Coloring(Vec<bool>),
    /// An odd cycle, as a cyclic vertex sequence.
    OddCycle(Vec<Vertex>),
}

pub fn is_bipartite(g: &Graph) -> Bipartition {
    let n = g.n();
    let mut side = vec![None::<bool>; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!side[u].unwrap());
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(sv) if Some(sv) == side[u] => {
                        return Bipartition::OddCycle(odd_cycle(u, v, &parent, &depth));
                    }
                    _ => {}
                }
            }
        }
    }
    Bipartition::Coloring(side.into_iter().map(Option::unwrap).collect())
}

fn odd_cycle(mut a: Vertex, mut b: Vertex, parent: &[usize], depth: &[usize]) -> Vec<Vertex> {
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, petersen, random_gnp};
    use proptest::prelude::*;

    /// Exhaustive oracles, independent of the routines above.
    fn naive_alpha(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|&s| {
                (0..g.n()).all(|u| (0..g.n()).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || !g.has_edge(u, v)))
            })
            .map(u32::count_ones)
            .max()
            .unwrap() as usize
    }

    fn naive_kappa(g: &Graph) -> usize {
        let n = g.n();
        let mut best = n - 1;
        for s in 0u32..1 << n {
            let rest: Vec<_> = (0..n).filter(|&v| s >> v & 1 == 0).collect();
            if rest.len() < 2 {
                continue;
            }
            // DFS inside `rest`.
            let mut seen = vec![rest[0]];
            let mut stack = vec![rest[0]];
            while let Some(u) = stack.pop() {
                for &v in &rest {
                    if g.has_edge(u, v) && !seen.contains(&v) {
                        seen.push(v);
                        stack.push(v);
                    }
                }
            }
            if seen.len() < rest.len() {
                best = best.min(s.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn named_values() {
        let k24 = complete_bipartite(2, 4).unwrap();
        assert_eq!(independence_number(&k24).unwrap().0, 4);
        assert_eq!(connectivity(&k24).unwrap().0, 2);
        assert_eq!(independence_number(&complete(5).unwrap()).unwrap().0, 1);
        assert_eq!(connectivity(&cycle(6).unwrap()).unwrap().0, 2);
        let p = petersen();
        assert_eq!(independence_number(&p).unwrap().0, naive_alpha(&p));
        assert_eq!(independence_number(&p).unwrap().0, 4);
        assert_eq!(connectivity(&p).unwrap().0, naive_kappa(&p));
        assert_eq!(connectivity(&p).unwrap().0, 3);
    }

    #[test]
    fn degenerate_values() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(independence_number(&k1).unwrap().0, 1);
        assert_eq!(connectivity(&k1).unwrap(), (0, None));
        assert_eq!(toughness(&k1).unwrap().value, Toughness::Infinite);
        let e0 = Graph::empty(0).unwrap();
        assert_eq!(independence_number(&e0), Err(InvariantError::EmptyGraph));
        assert_eq!(connectivity(&e0), Err(InvariantError::EmptyGraph));
        let e2 = Graph::empty(2).unwrap();
        assert_eq!(connectivity(&e2).unwrap(), (0, Some(vec![])));
        assert_eq!(
            toughness(&e2).unwrap().value,
            Toughness::Finite(Ratio::new(0, 1))
        );
    }

    #[test]
    fn toughness_values() {
        let c4 = toughness(&cycle(4).unwrap()).unwrap();
        assert_eq!(c4.value, Toughness::Finite(Ratio::from_integer(1)));
        let k24 = toughness(&complete_bipartite(2, 4).unwrap()).unwrap();
        assert_eq!(k24.value, Toughness::Finite(Ratio::new(1, 2)));
        assert_eq!(k24.cut, Some(vec![0, 1]));
        assert_eq!(k24.components, 4);
        assert_eq!(toughness(&complete(3).unwrap()).unwrap().value, Toughness::Infinite);
        assert!(matches!(
            toughness(&Graph::empty(17).unwrap()),
            Err(InvariantError::TooLarge(17))
        ));
    }

    #[test]
    fn toughness_text_form() {
        for s in ["inf", "1", "1/2", "3/7"] {
            assert_eq!(parse_toughness(s).unwrap().to_string(), s);
        }
        assert!(parse_toughness("1/0").is_none());
    }

    #[test]
    fn bipartiteness() {
        assert!(matches!(is_bipartite(&cycle(6).unwrap()), Bipartition::Coloring(_)));
        assert!(matches!(
            is_bipartite(&complete_bipartite(2, 4).unwrap()),
            Bipartition::Coloring(_)
        ));
        match is_bipartite(&cycle(5).unwrap()) {
            Bipartition::OddCycle(c) => assert_eq!(c.len(), 5),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn witnesses_are_valid(n in 1usize..10, p in 0.0f64..1.0, seed: u64) {
            let g = random_gnp(n, p, seed).unwrap();
            let (alpha, set) = independence_number(&g).unwrap();
            prop_assert_eq!(set.len(), alpha);
            for (i, &u) in set.iter().enumerate() {
                for &v in &set[i + 1..] {
                    prop_assert!(!g.has_edge(u, v));
                }
            }
            prop_assert_eq!(alpha, naive_alpha(&g));
            let (kappa, cut) = connectivity(&g).unwrap();
            prop_assert_eq!(kappa, naive_kappa(&g));
            match cut {
                None => prop_assert!(g.is_complete()),
                Some(cut) => {
                    prop_assert_eq!(cut.len(), kappa);
                    let mask = cut.iter().fold(g.all_mask(), |m, &v| m & !(1u128 << v));
                    prop_assert!(g.components_within(mask) >= 2);
                }
            }
            let t = toughness(&g).unwrap();
            if let (Toughness::Finite(r), Some(cut)) = (t.value, &t.cut) {
                let mask = cut.iter().fold(g.all_mask(), |m, &v| m & !(1u128 << v));
                let c = g.components_within(mask);
                prop_assert_eq!(c, t.components);
                prop_assert_eq!(Ratio::new(cut.len() as u64, c as u64), r);
            }
            match is_bipartite(&g) {
                Bipartition::Coloring(side) => {
                    for (u, v) in g.edges() {
                        prop_assert_ne!(side[u], side[v]);
                    }
                }
                Bipartition::OddCycle(c) => {
                    prop_assert_eq!(c.len() % 2, 1);
                    for i in 0..c.len() {
                        prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                    }
                }
            }
        }
    }
}
