//! The nine acceptance criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines always reach the output.

mod common;

use std::process::ExitCode;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use prismatic_core::budget::Budget;
use prismatic_core::cactus::{prism_ham_from_cactus, validate_even_cactus, verify_prism_cycle, EvenCactus};
use prismatic_core::campaign::{counterexample_check, emit_certificate, run_campaign, Input, Mode};
use prismatic_core::graph::{cartesian_cycle, Graph};
use prismatic_core::invariants::{connectivity, independence_number, toughness};
use prismatic_core::oracles::{hamilton_cycle, verify_cycle};
use prismatic_core::pipeline::{certify, verify_certificate, CertificateKind};
use prismatic_core::products::{
    cyclic_product_certificate, toughness_hamilton_check, tree_cycle_ham, ttree_to_twalk, twalk_to_tree,
    verify_product_cycle, BoundedTree, CyclicProduct, ProductError,
};

use common::{all_graphs, fixture_text, graphs_up_to, naive_alpha, naive_kappa, naive_toughness, prism_cycle_ok};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pick(rng: &mut Xoshiro256PlusPlus, k: usize) -> usize {
    (rng.next_u64() % k as u64) as usize
}

/// Prism certificates for every graph with 2 <= n <= 8 and alpha <= 2 kappa.
fn prism_sweep() -> Verdict {
    let (mut covered, mut gaps) = (0, 0);
    for g in graphs_up_to(2, 8) {
        let alpha = naive_alpha(&g);
        let kappa = naive_kappa(&g);
        let run = certify(&g, &Budget::unlimited()).map_err(|e| format!("{e}"))?;
        let c = &run.certificate;
        if alpha > 2 * kappa {
            ensure(c.kind == CertificateKind::RefutedHypothesis, || format!("{g:?}: expected refutation"))?;
            continue;
        }
        covered += 1;
        gaps += run.gap.is_some() as usize;
        let cycle = c.prism_cycle().ok_or_else(|| format!("{g:?}: no prism cycle"))?;
        ensure(verify_certificate(&g, c) && prism_cycle_ok(&g, &cycle.sequence), || {
            format!("{g:?}: certificate fails verification")
        })?;
    }
    ensure(gaps == 0, || format!("{gaps} gap reports"))?;
    Ok(format!("{covered} graphs certified, 0 gaps"))
}

/// A random spanning even cactus on at most 30 vertices inside a random
/// supergraph.
fn random_cactus(rng: &mut Xoshiro256PlusPlus) -> (Graph, EvenCactus) {
    let target = 2 + pick(rng, 29);
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;
    // Cycle vertices still free to host a path end.
    let mut free: Vec<usize> = Vec::new();
    let new_cycle = |next: &mut usize, rng: &mut Xoshiro256PlusPlus, first: Option<usize>| {
        let len = 4 + 2 * pick(rng, 3);
        let mut c: Vec<usize> = first.into_iter().collect();
        while c.len() < len {
            c.push(*next);
            *next += 1;
        }
        c
    };
    if target >= 4 && pick(rng, 2) == 0 {
        let c = new_cycle(&mut next, rng, None);
        free.extend(&c);
        cycles.push(c);
    } else {
        let len = 2 + pick(rng, 3.min(target - 1));
        paths.push((0..len).collect());
        next = len;
    }
    while next < target && !free.is_empty() {
        let at = free.swap_remove(pick(rng, free.len()));
        let extra = 1 + pick(rng, 4.min(30 - next));
        let mut p = vec![at];
        for _ in 0..extra {
            p.push(next);
            next += 1;
        }
        if pick(rng, 2) == 0 && next + 7 <= 30 {
            let end = *p.last().unwrap();
            let c = new_cycle(&mut next, rng, Some(end));
            free.extend(c.iter().skip(1));
            cycles.push(c);
        }
        paths.push(p);
    }
    if cycles.is_empty() && next >= 4 && next + 7 <= 30 {
        // A path-only start may still hang a cycle off one end.
        let end = *paths[0].last().unwrap();
        let c = new_cycle(&mut next, rng, Some(end));
        cycles.push(c);
    }
    let n = next;
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, pick(rng, i + 1));
    }
    let relabel = |v: &Vec<usize>| v.iter().map(|&x| perm[x]).collect::<Vec<_>>();
    let h = EvenCactus {
        cycles: cycles.iter().map(relabel).collect(),
        paths: paths.iter().map(relabel).collect(),
    };
    let mut edges = h.edges();
    for _ in 0..pick(rng, n + 1) {
        let (u, v) = (pick(rng, n), pick(rng, n));
        if u != v {
            edges.push((u, v));
        }
    }
    (Graph::from_edge_list(n, edges).unwrap(), h)
}

fn cactus_splicing() -> Verdict {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(2024);
    let mut max_n = 0;
    for i in 0..1000 {
        let (g, h) = random_cactus(&mut rng);
        max_n = max_n.max(g.n());
        validate_even_cactus(&g, &h).map_err(|e| format!("instance {i}: generator bug: {e}"))?;
        let c = prism_ham_from_cactus(&g, &h).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(verify_prism_cycle(&g, &c) && prism_cycle_ok(&g, &c.sequence), || {
            format!("instance {i}: bad prism cycle")
        })?;
    }
    ensure(max_n <= 30, || format!("generator produced n = {max_n}"))?;
    Ok(format!("1000 cacti spliced and verified (largest n = {max_n})"))
}

fn sharpness() -> Verdict {
    let mut parts = Vec::new();
    for (k, a) in [(2, 5), (3, 7)] {
        let r = counterexample_check(k, a, &Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure(r.prism_hamiltonian == Some(false), || format!("K{k},{a}: prism not refuted"))?;
        ensure(r.cut_components == Some(a), || format!("K{k},{a}: {:?} components", r.cut_components))?;
        ensure(r.verified, || format!("K{k},{a}: report not verified"))?;
        parts.push(format!("K{k},{a} -> {a} components"));
    }
    Ok(parts.join(", "))
}

fn is_tree(g: &Graph) -> bool {
    g.is_connected() && g.edge_count() + 1 == g.n()
}

fn tree_cycles() -> Verdict {
    let trees: Vec<Graph> = graphs_up_to(1, 8).into_iter().filter(is_tree).collect();
    let (mut built, mut refused) = (0, 0);
    for g in &trees {
        let edges: Vec<_> = g.edges().collect();
        for t in [3, 4] {
            let tree = BoundedTree::from_edges(g.n(), &edges, g.n()).unwrap();
            let product = cartesian_cycle(g, t).unwrap();
            if g.max_degree() <= t {
                let c = tree_cycle_ham(&tree, t).map_err(|e| format!("{g:?}, t={t}: {e}"))?;
                let flat: Vec<_> = c.sequence.iter().map(|&(v, l)| v + l * g.n()).collect();
                ensure(verify_product_cycle(g, &c) && verify_cycle(&product, &flat, true), || {
                    format!("{g:?}, t={t}: bad cycle")
                })?;
                built += 1;
            } else {
                ensure(matches!(tree_cycle_ham(&tree, t), Err(ProductError::DegreeTooLarge { .. })), || {
                    format!("{g:?}, t={t}: constructor did not refuse")
                })?;
                let oracle = hamilton_cycle(&product, &Budget::unlimited()).map_err(|e| e.to_string())?;
                ensure(oracle.is_absent(), || format!("{g:?}, t={t}: oracle found a cycle"))?;
                refused += 1;
            }
        }
    }
    Ok(format!("{} trees: {built} built, {refused} refused and confirmed absent", trees.len()))
}

/// Random spanning tree of maximum degree at most `t`, if the greedy
/// randomized Kruskal finds one.
fn random_bounded_tree(g: &Graph, t: usize, rng: &mut Xoshiro256PlusPlus) -> Option<BoundedTree> {
    let n = g.n();
    let mut edges: Vec<_> = g.edges().collect();
    for i in (1..edges.len()).rev() {
        edges.swap(i, pick(rng, i + 1));
    }
    let mut comp: Vec<usize> = (0..n).collect();
    let mut deg = vec![0; n];
    let mut chosen = Vec::new();
    for (u, v) in edges {
        let (cu, cv) = (comp[u], comp[v]);
        if cu == cv || deg[u] == t || deg[v] == t {
            continue;
        }
        for c in comp.iter_mut() {
            if *c == cv {
                *c = cu;
            }
        }
        deg[u] += 1;
        deg[v] += 1;
        chosen.push((u, v));
    }
    BoundedTree::from_edges(n, &chosen, t).ok()
}

fn walk_conversions() -> Verdict {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
    let mut instances = 0;
    let mut attempts = 0;
    while instances < 500 {
        attempts += 1;
        let n = 2 + pick(&mut rng, 11);
        let p = 0.2 + 0.6 * (pick(&mut rng, 100) as f64 / 100.0);
        let g = prismatic_core::graph::random_gnp(n, p, rng.next_u64()).unwrap();
        let t = 2 + pick(&mut rng, 4);
        let Some(tree) = random_bounded_tree(&g, t, &mut rng) else { continue };
        instances += 1;
        let walk = ttree_to_twalk(&tree).map_err(|e| e.to_string())?;
        walk.validate(&g).map_err(|e| format!("instance {instances}: {e}"))?;
        let degrees = tree.degrees();
        let counts = walk.visit_counts(n);
        ensure(counts == degrees && counts.iter().all(|&c| c <= t), || {
            format!("instance {instances}: visit counts {counts:?} vs degrees {degrees:?}")
        })?;
        // Any rotation of the walk is the same closed walk.
        let mut rotated = walk.clone();
        rotated.sequence.rotate_left(pick(&mut rng, walk.sequence.len()));
        for w in [&walk, &rotated] {
            let back = twalk_to_tree(&g, w).map_err(|e| format!("instance {instances}: {e}"))?;
            back.validate(Some(&g)).map_err(|e| e.to_string())?;
            ensure(back.max_degree() <= t + 1, || format!("instance {instances}: degree {}", back.max_degree()))?;
        }
    }
    Ok(format!("500 instances ({attempts} draws), visit counts exact, round trips within t+1"))
}

fn cyclic_products() -> Verdict {
    let mut certified = 0;
    for g in graphs_up_to(1, 7) {
        let alpha = naive_alpha(&g);
        let kappa = naive_kappa(&g);
        for t in [3, 4] {
            let r = cyclic_product_certificate(&g, t, &Budget::unlimited()).map_err(|e| format!("{g:?}: {e}"))?;
            match r {
                CyclicProduct::Certified(c) => {
                    ensure(alpha <= (t - 1) * kappa, || format!("{g:?}: certified outside hypothesis"))?;
                    ensure(verify_product_cycle(&g, &c), || format!("{g:?}, t={t}: bad cycle"))?;
                    certified += 1;
                }
                CyclicProduct::NotApplicable { .. } => {
                    ensure(alpha > (t - 1) * kappa, || format!("{g:?}, t={t}: wrongly not applicable"))?
                }
                CyclicProduct::Exhausted => return Err(format!("{g:?}, t={t}: exhausted")),
            }
        }
    }
    Ok(format!("{certified} product cycles verified"))
}

fn toughness_conditions() -> Verdict {
    let (mut ham, mut pr) = (0, 0);
    for g in graphs_up_to(3, 8) {
        let r = toughness_hamilton_check(&g, &Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure(r.toughness == naive_toughness(&g), || format!("{g:?}: toughness"))?;
        if r.hamilton_condition {
            ensure(r.hamilton_confirmed == Some(true), || format!("{g:?}: Hamilton cycle not confirmed"))?;
            ham += 1;
        }
        if r.prism_condition {
            ensure(r.prism_confirmed == Some(true), || format!("{g:?}: prism not confirmed"))?;
            pr += 1;
        }
        ensure(r.chain_holds != Some(false), || format!("{g:?}: inequality chain fails"))?;
    }
    Ok(format!("{ham} Hamilton and {pr} prism conditions confirmed, 0 violations"))
}

fn invariant_oracles() -> Verdict {
    let graphs = graphs_up_to(1, 7);
    for g in &graphs {
        let (a, _) = independence_number(g).unwrap();
        let (k, _) = connectivity(g).unwrap();
        let t = toughness(g).unwrap().value;
        ensure(a == naive_alpha(g), || format!("{g:?}: alpha {a}"))?;
        ensure(k == naive_kappa(g), || format!("{g:?}: kappa {k}"))?;
        ensure(t == naive_toughness(g), || format!("{g:?}: toughness {t}"))?;
    }
    Ok(format!("{} graphs match naive enumeration", graphs.len()))
}

fn determinism() -> Verdict {
    let text: String = (2..=8).map(fixture_text).collect();
    let first = run_campaign(Input::Graph6(&text), Mode::Audit, 1).map_err(|e| e.to_string())?;
    let second = run_campaign(Input::Graph6(&text), Mode::Audit, 4).map_err(|e| e.to_string())?;
    ensure(first.to_json_lines() == second.to_json_lines(), || "reports differ".into())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = 0;
    for (i, g) in all_graphs(7).iter().enumerate().step_by(37) {
        let mut bytes = Vec::new();
        for round in 0..2 {
            let c = certify(g, &Budget::unlimited()).map_err(|e| e.to_string())?.certificate;
            let path = dir.path().join(format!("{i}-{round}.json"));
            emit_certificate(&path, &c).map_err(|e| e.to_string())?;
            bytes.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(bytes[0] == bytes[1], || format!("certificate {i} differs"))?;
        files += 1;
    }
    Ok(format!(
        "{} report lines identical across thread counts, {files} certificates identical",
        first.entries.len() + 1
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("prism certificates, all graphs 2 <= n <= 8", prism_sweep),
        ("even cactus splicing, 1000 random cacti", cactus_splicing),
        ("sharpness of alpha <= 2 kappa on K_{k,a}", sharpness),
        ("tree x C_t Hamiltonian iff max degree <= t", tree_cycles),
        ("tree/walk conversions", walk_conversions),
        ("G x C_t cycles when alpha <= (t-1) kappa", cyclic_products),
        ("toughness conditions", toughness_conditions),
        ("invariants against naive enumeration", invariant_oracles),
        ("determinism of reports and certificates", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
