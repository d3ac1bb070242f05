use serde::Serialize;

use super::assemble::{assemble, merge_cycles, ring, seg};
use crate::cactus::EvenCactus;
use crate::graph::{Graph, Vertex};

/// What a successful branch produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Built {
    Path(Vec<Vertex>),
    Cactus(EvenCactus),
}

/// The two covering paths and cross edges a branch was working with, kept
/// for gap reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoPathConfig {
    pub p1: Vec<Vertex>,
    pub p2: Vec<Vertex>,
    pub a1: Vertex,
    pub a2: Vertex,
    pub b1: Vertex,
    pub b2: Vertex,
}

/// Oriented paths plus indices of the cross edges `a1b1`, `a2b2` with
/// `ia1 < ia2` and `ib1 < ib2`.
struct Config<'a> {
    p1: &'a [Vertex],
    p2: &'a [Vertex],
    ia1: usize,
    ia2: usize,
    ib1: usize,
    ib2: usize,
}

impl Config<'_> {
    fn a1(&self) -> Vertex {
        self.p1[self.ia1]
    }
    fn a2(&self) -> Vertex {
        self.p1[self.ia2]
    }
    fn b1(&self) -> Vertex {
        self.p2[self.ib1]
    }
    fn b2(&self) -> Vertex {
        self.p2[self.ib2]
    }

    fn describe(&self) -> TwoPathConfig {
        TwoPathConfig {
            p1: self.p1.to_vec(),
            p2: self.p2.to_vec(),
            a1: self.a1(),
            a2: self.a2(),
            b1: self.b1(),
            b2: self.b2(),
        }
    }

    /// `P1[a1,a2] a2b2 P2[b2,b1] b1a1`.
    fn parity_cycle(&self, g: &Graph) -> Option<Vec<Vertex>> {
        ring(g, &[seg(self.p1, self.ia1, self.ia2), seg(self.p2, self.ib2, self.ib1)])
    }
}

pub(crate) struct Ladder<'a> {
    g: &'a Graph,
    paths: [Vec<Vertex>; 2],
}

type Attempt = (&'static str, Built);

pub(crate) const KAPPA2_TAGS: &[&str] = &[
    "kappa2.singleton-path",
    "kappa2.singleton-endpoint",
    "kappa2.parity-cycle",
    "kappa2.chord-merge",
    "kappa2.endpoint-path",
    "kappa2.endpoint-cycle-end",
    "kappa2.endpoint-cycles",
    "kappa2.cross-edge",
    "kappa2.cross-edge-end",
    "kappa2.end-attach",
    "kappa2.p1-chord",
    "kappa2.b2-edge",
    "kappa2.b2-edge-alt",
    "kappa2.b1-edge-alt",
    "kappa2.b1-edge-u2",
    "kappa2.b1-edge-u1-chord",
    "kappa2.b1-edge-long-cycle",
    "kappa2.b1-edge-end",
];

fn rev(p: &[Vertex]) -> Vec<Vertex> {
    p.iter().rev().copied().collect()
}

impl<'a> Ladder<'a> {
    pub(crate) fn new(g: &'a Graph, p1: Vec<Vertex>, p2: Vec<Vertex>) -> Self {
        Ladder { g, paths: [p1, p2] }
    }

    fn build(&self, cycles: Vec<Vec<Vertex>>, bridges: &[(Vertex, Vertex)], connectors: &[(Vertex, Vertex)]) -> Option<Built> {
        let paths: Vec<&[Vertex]> = self.paths.iter().map(Vec::as_slice).collect();
        assemble(self.g, &paths, cycles, bridges, connectors).map(Built::Cactus)
    }

    /// All eight orientations: which path plays `P1`, and the direction of each.
    fn orientations(&self) -> Vec<(Vec<Vertex>, Vec<Vertex>)> {
        let mut out = Vec::with_capacity(8);
        for swap in [false, true] {
            let (x, y) = if swap { (&self.paths[1], &self.paths[0]) } else { (&self.paths[0], &self.paths[1]) };
            for r1 in [false, true] {
                for r2 in [false, true] {
                    let p1 = if r1 { rev(x) } else { x.clone() };
                    let p2 = if r2 { rev(y) } else { y.clone() };
                    out.push((p1, p2));
                }
            }
        }
        out
    }

    /// Disjoint cross-edge pairs in the order of both oriented paths, ties
    /// broken by lowest vertex ids, then the shorter span on `P1`.
    fn pairs(&self, p1: &[Vertex], p2: &[Vertex]) -> Vec<(usize, usize, usize, usize)> {
        let mut cross = Vec::new();
        for (i, &a) in p1.iter().enumerate() {
            for (j, &b) in p2.iter().enumerate() {
                if self.g.has_edge(a, b) {
                    cross.push((i, j));
                }
            }
        }
        let mut out = Vec::new();
        for &(ia1, ib1) in &cross {
            for &(ia2, ib2) in &cross {
                if ia1 < ia2 && ib1 < ib2 {
                    out.push((ia1, ia2, ib1, ib2));
                }
            }
        }
        out.sort_by_key(|&(ia1, ia2, ib1, ib2)| {
            let mut ids = [p1[ia1], p1[ia2], p2[ib1], p2[ib2]];
            ids.sort_unstable();
            (ids, ia2 - ia1)
        });
        out
    }

    /// Runs the ladder stage by stage; each stage is tried over every
    /// orientation and cross-edge pair before the next one starts.
    pub(crate) fn run(&self) -> Result<Attempt, Vec<TwoPathConfig>> {
        if let Some(hit) = self.singleton() {
            return Ok(hit);
        }
        let orients = self.orientations();
        let configs: Vec<(usize, (usize, usize, usize, usize))> = orients
            .iter()
            .enumerate()
            .flat_map(|(k, (p1, p2))| self.pairs(p1, p2).into_iter().map(move |q| (k, q)))
            .collect();
        let with = |k: usize, (ia1, ia2, ib1, ib2): (usize, usize, usize, usize)| Config {
            p1: &orients[k].0,
            p2: &orients[k].1,
            ia1,
            ia2,
            ib1,
            ib2,
        };
        type Stage<'s> = fn(&Ladder<'s>, &Config) -> Option<Attempt>;
        let stages: [Stage<'a>; 5] = [
            Ladder::parity,
            Ladder::chord_merge,
            Ladder::endpoint,
            Ladder::cross_edge,
            Ladder::final_cases,
        ];
        for stage in stages {
            for &(k, q) in &configs {
                if let Some(hit) = stage(self, &with(k, q)) {
                    return Ok(hit);
                }
            }
        }
        Err(configs.iter().take(8).map(|&(k, q)| with(k, q).describe()).collect())
    }

    /// One path is a single vertex `u`.
    fn singleton(&self) -> Option<Attempt> {
        let g = self.g;
        for (p1, p2) in self.orientations() {
            if p1.len() != 1 || p2.len() < 2 {
                continue;
            }
            let u = p1[0];
            let (v1, v2) = (p2[0], p2[p2.len() - 1]);
            let hits: Vec<usize> = (0..p2.len()).filter(|&j| g.has_edge(u, p2[j])).collect();
            if g.has_edge(u, v1) {
                let mut path = vec![u];
                path.extend(&p2);
                return Some(("kappa2.singleton-endpoint", Built::Path(path)));
            }
            if g.has_edge(u, v2) {
                let mut path = p2.clone();
                path.push(u);
                return Some(("kappa2.singleton-endpoint", Built::Path(path)));
            }
            if hits.len() < 2 {
                continue;
            }
            let (ib1, ib2) = (hits[0], hits[1]);
            let (b1, b2) = (p2[ib1], p2[ib2]);
            for ix in 0..ib1 {
                for iy in ib1 + 1..p2.len() {
                    if iy == ix + 1 || !g.has_edge(p2[ix], p2[iy]) {
                        continue;
                    }
                    let candidates = [
                        ring(g, &[seg(&p2, iy, ib2), vec![u], seg(&p2, ib1, ix)]),
                        ring(g, &[seg(&p2, ib1, ib2), vec![u]]),
                        ring(g, &[seg(&p2, ix, iy)]),
                    ];
                    for c in candidates.into_iter().flatten() {
                        if c.len() % 2 == 0 {
                            if let Some(b) = self.build(vec![c], &[], &[(u, b1), (u, b2)]) {
                                return Some(("kappa2.singleton-path", b));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn parity(&self, c: &Config) -> Option<Attempt> {
        let d = c.parity_cycle(self.g)?;
        if d.len() % 2 == 1 {
            return None;
        }
        self.build(vec![d], &[], &[]).map(|b| ("kappa2.parity-cycle", b))
    }

    /// A chord whose span shares an edge with `[b1,b2]` (or `[a1,a2]`) and
    /// closes an odd cycle: its symmetric difference with the odd parity
    /// cycle is even.
    fn chord_merge(&self, c: &Config) -> Option<Attempt> {
        let g = self.g;
        let d = c.parity_cycle(g)?;
        if d.len() % 2 == 0 {
            return None;
        }
        for (p, lo, hi) in [(c.p2, c.ib1, c.ib2), (c.p1, c.ia1, c.ia2)] {
            for i in 0..p.len() {
                for j in i + 2..p.len() {
                    if !g.has_edge(p[i], p[j]) || i.max(lo) >= j.min(hi) || (j - i + 1) % 2 == 0 {
                        continue;
                    }
                    let Some(q) = ring(g, &[seg(p, i, j)]) else { continue };
                    if let Some(m) = merge_cycles(g, &d, &q) {
                        if m.len() % 2 == 0 {
                            if let Some(b) = self.build(vec![m], &[], &[(c.a1(), c.b1()), (c.a2(), c.b2())]) {
                                return Some(("kappa2.chord-merge", b));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// An edge among the four path ends.
    fn endpoint(&self, c: &Config) -> Option<Attempt> {
        let g = self.g;
        let (p1, p2) = (c.p1, c.p2);
        let (u2, v1) = (p1[p1.len() - 1], p2[0]);
        if g.has_edge(u2, v1) {
            let path: Vec<_> = p1.iter().chain(p2).copied().collect();
            return Some(("kappa2.endpoint-path", Built::Path(path)));
        }
        if p1.len() < 3 || !g.has_edge(p1[0], u2) {
            return None;
        }
        let c1 = ring(g, &[p1.to_vec()])?;
        if c1.len() % 2 == 1 {
            return None;
        }
        // Fresh extremal choice: the vertex of P2 nearest v1 with a neighbor on P1.
        let ib = (0..p2.len()).find(|&j| p1.iter().any(|&a| g.has_edge(a, p2[j])))?;
        let b = p2[ib];
        let a = *p1.iter().filter(|&&a| g.has_edge(a, b)).min()?;
        if ib == 0 {
            return self
                .build(vec![c1], &[(a, b)], &[])
                .map(|h| ("kappa2.endpoint-cycle-end", h));
        }
        for ix in 0..ib {
            for iy in ib + 1..p2.len() {
                if !g.has_edge(p2[ix], p2[iy]) {
                    continue;
                }
                let Some(c2) = ring(g, &[seg(p2, ix, iy)]) else { continue };
                if c2.len() % 2 == 0 {
                    if let Some(h) = self.build(vec![c1.clone(), c2], &[(a, b)], &[]) {
                        return Some(("kappa2.endpoint-cycles", h));
                    }
                }
            }
        }
        None
    }

    /// Another cross edge `xy`: one of the cycles through `a1b1` or `a2b2`
    /// closed by `xy` is even.
    fn cross_edge(&self, c: &Config) -> Option<Attempt> {
        let g = self.g;
        let d = c.parity_cycle(g)?;
        if d.len() % 2 == 0 {
            return None;
        }
        let (p1, p2) = (c.p1, c.p2);
        for ix in 0..p1.len() {
            for iy in 0..p2.len() {
                let (x, y) = (p1[ix], p2[iy]);
                if !g.has_edge(x, y) || (ix, iy) == (c.ia1, c.ib1) || (ix, iy) == (c.ia2, c.ib2) {
                    continue;
                }
                let at_ends = [c.ia1, c.ia2].contains(&ix) || [c.ib1, c.ib2].contains(&iy);
                let tag = if at_ends { "kappa2.cross-edge-end" } else { "kappa2.cross-edge" };
                let z1 = ring(g, &[seg(p1, ix, c.ia1), seg(p2, c.ib1, iy)]);
                let z2 = ring(g, &[seg(p1, ix, c.ia2), seg(p2, c.ib2, iy)]);
                for z in [z1, z2].into_iter().flatten() {
                    if z.len() % 2 == 0 {
                        let conn = [(c.a1(), c.b1()), (c.a2(), c.b2())];
                        if let Some(h) = self.build(vec![z], &[], &conn) {
                            return Some((tag, h));
                        }
                    }
                }
            }
        }
        None
    }

    /// The ends are independent and `P2[b1,b2]` has odd order, so a middle
    /// vertex `x` sees `v1`.
    fn final_cases(&self, c: &Config) -> Option<Attempt> {
        let g = self.g;
        let (p1, p2) = (c.p1, c.p2);
        if (c.ib2 - c.ib1 + 1).is_multiple_of(2) {
            return None;
        }
        let (u1, u2, v1) = (p1[0], p1[p1.len() - 1], p2[0]);
        let (a1, a2, b1, b2) = (c.a1(), c.a2(), c.b1(), c.b2());
        let conn = [(a1, b1), (a2, b2)];
        for ix in c.ib1 + 1..c.ib2 {
            if !g.has_edge(p2[ix], v1) {
                continue;
            }
            let Some(cx) = ring(g, &[seg(p2, 0, ix)]) else { continue };
            if cx.len() % 2 == 1 {
                continue;
            }
            if c.ia1 == 0 {
                if let Some(h) = self.build(vec![cx.clone()], &[(b1, u1)], &[]) {
                    return Some(("kappa2.end-attach", h));
                }
                continue;
            }
            for iy in 0..c.ia1 {
                let y = p1[iy];
                let yb1 = [(a1, b1), (y, b1), (a2, b2)];
                // z further along P1.
                for iz in c.ia1 + 1..p1.len() {
                    if !g.has_edge(y, p1[iz]) {
                        continue;
                    }
                    if let Some(q) = ring(g, &[seg(p1, iy, iz)]).filter(|q| q.len() % 2 == 0) {
                        if let Some(h) = self.build(vec![cx.clone(), q], &[(a1, b1)], &[]) {
                            return Some(("kappa2.p1-chord", h));
                        }
                    }
                }
                if g.has_edge(y, b2) {
                    if let Some(w) = ring(g, &[vec![y, b2], seg(p1, c.ia2, iy)]).filter(|w| w.len() % 2 == 0) {
                        if let Some(h) = self.build(vec![w, cx.clone()], &[(a1, b1)], &[]) {
                            return Some(("kappa2.b2-edge", h));
                        }
                    }
                    if let Some(w) = ring(g, &[seg(p2, c.ib1, c.ib2), seg(p1, iy, c.ia1)]).filter(|w| w.len() % 2 == 0) {
                        if let Some(h) = self.build(vec![w], &[], &conn) {
                            return Some(("kappa2.b2-edge-alt", h));
                        }
                    }
                }
                if !g.has_edge(y, b1) {
                    continue;
                }
                let w = ring(g, &[vec![y, b1], seg(p1, c.ia1, iy)]);
                if w.as_ref().is_none_or(|w| w.len() % 2 == 1) {
                    if let Some(alt) = ring(g, &[seg(p2, c.ib1, c.ib2), seg(p1, c.ia2, iy)]).filter(|w| w.len() % 2 == 0) {
                        if let Some(h) = self.build(vec![alt], &[], &conn) {
                            return Some(("kappa2.b1-edge-alt", h));
                        }
                    }
                    continue;
                }
                if c.ia1 < iy + 2 {
                    continue;
                }
                let ic = c.ia1 - 1;
                let cv = p1[ic];
                if g.has_edge(u2, cv) {
                    if let Some(q) = ring(g, &[seg(p1, ic, p1.len() - 1)]).filter(|q| q.len() % 2 == 0) {
                        if let Some(h) = self.build(vec![q, cx.clone()], &[], &yb1) {
                            return Some(("kappa2.b1-edge-u2", h));
                        }
                    }
                }
                if g.has_edge(u1, cv) {
                    if ic > 1 {
                        match ring(g, &[seg(p1, 0, ic)]) {
                            Some(q) if q.len() % 2 == 0 => {
                                if let Some(h) = self.build(vec![q, cx.clone()], &[], &yb1) {
                                    return Some(("kappa2.b1-edge-u1-chord", h));
                                }
                            }
                            _ => {
                                let big = ring(
                                    g,
                                    &[seg(p1, ic, c.ia2), seg(p2, c.ib2, c.ib1), seg(p1, iy, 0)],
                                );
                                if let Some(big) = big.filter(|b| b.len() % 2 == 0) {
                                    if let Some(h) = self.build(vec![big], &[], &conn) {
                                        return Some(("kappa2.b1-edge-long-cycle", h));
                                    }
                                }
                            }
                        }
                    } else if let Some(h) = self.build(vec![cx.clone()], &[(b1, u1)], &[]) {
                        return Some(("kappa2.b1-edge-end", h));
                    }
                }
            }
        }
        None
    }
}
