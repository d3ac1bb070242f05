#![allow(dead_code)]

use num_rational::Ratio;
use prismatic_core::graph6::parse_stream;
use prismatic_core::invariants::Toughness;
use prismatic_core::Graph;

pub fn fixture_text(n: usize) -> String {
    let path = format!("{}/tests/fixtures/graphs{n}.g6", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Every graph on `n` vertices up to isomorphism.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    parse_stream(&fixture_text(n)).map(|(_, g)| g.unwrap()).collect()
}

pub fn graphs_up_to(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi).flat_map(all_graphs).collect()
}

fn connected_within(g: &Graph, keep: &[bool]) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if !keep[s] || seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if keep[v] && !seen[v] && g.has_edge(u, v) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

pub fn naive_alpha(g: &Graph) -> usize {
    let n = g.n();
    subsets(n)
        .filter(|s| (0..n).all(|u| (u + 1..n).all(|v| !(s[u] && s[v] && g.has_edge(u, v)))))
        .map(|s| s.iter().filter(|&&b| b).count())
        .max()
        .unwrap_or(0)
}

/// Fewest deletions leaving a disconnected graph; `n - 1` for complete graphs.
pub fn naive_kappa(g: &Graph) -> usize {
    let n = g.n();
    let complete = (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v)));
    if complete {
        return n.saturating_sub(1);
    }
    subsets(n)
        .filter(|s| connected_within(g, &s.iter().map(|&b| !b).collect::<Vec<_>>()) >= 2)
        .map(|s| s.iter().filter(|&&b| b).count())
        .min()
        .unwrap()
}

pub fn naive_toughness(g: &Graph) -> Toughness {
    let n = g.n();
    let mut best: Option<Ratio<u64>> = None;
    for s in subsets(n) {
        let keep: Vec<bool> = s.iter().map(|&b| !b).collect();
        let c = connected_within(g, &keep);
        if c >= 2 {
            let r = Ratio::new(s.iter().filter(|&&b| b).count() as u64, c as u64);
            best = Some(best.map_or(r, |b: Ratio<u64>| b.min(r)));
        }
    }
    best.map_or(Toughness::Infinite, Toughness::Finite)
}

/// Independent prism-cycle check: flatten to indices of the prism graph and
/// walk every consecutive pair.
pub fn prism_cycle_ok(g: &Graph, seq: &[(usize, u8)]) -> bool {
    let n = g.n();
    let p = prismatic_core::graph::prism(g).unwrap();
    let flat: Vec<usize> = seq.iter().map(|&(v, l)| v + l as usize * n).collect();
    let mut sorted = flat.clone();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == 2 * n
        && flat.len() == 2 * n
        && flat.iter().all(|&x| x < 2 * n)
        && (0..flat.len()).all(|i| p.has_edge(flat[i], flat[(i + 1) % flat.len()]))
}
