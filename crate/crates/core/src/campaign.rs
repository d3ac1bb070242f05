//! Batch verification over graph6 streams or seeded random graphs, with
//! JSON-lines reports.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use rand_core::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::budget::Budget;
use crate::graph::{complete_bipartite, prism, random_gnp_with, Graph, GraphError};
use crate::graph6::{parse_stream, to_graph6};
use crate::invariants::{GraphParams, Toughness};
use crate::oracles::{hamilton_cycle, OracleError};
use crate::pipeline::{branch_tags, certify, verify_certificate, Certificate, CertificateKind, GapReport, PipelineError};
use crate::products::{cyclic_product_certificate, toughness_hamilton_check, verify_product_cycle, CyclicProduct, ProductError};
use crate::Outcome;

/// Largest `k + a` accepted by [`counterexample_check`].
pub const KAB_MAX_VERTICES: usize = 16;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("bad generator spec: {0}")]
    GeneratorSpec(String),
    #[error("cycle length t must be at least 3, got {0}")]
    BadT(usize),
    #[error("K_{{{k},{a}}} exceeds the size limit of {max} vertices")]
    TooLarge { k: usize, a: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("could not build thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Prism certificates for every graph.
    Prism,
    /// Hamilton cycles of `G □ C_t`.
    CyclicProduct(usize),
    /// Toughness conditions and their confirmations.
    Toughness,
    /// Prism certificates plus a list of branches that never fired.
    Audit,
}

/// `gnp n=12 p=0.5 count=1000 seed=7`: graphs drawn in sequence from one
/// seeded generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    pub p: f64,
    pub count: usize,
    pub seed: u64,
}

impl FromStr for GeneratorSpec {
    type Err = CampaignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CampaignError::GeneratorSpec(s.to_string());
        let mut words = s.split_whitespace();
        if words.next() != Some("gnp") {
            return Err(bad());
        }
        let mut fields = BTreeMap::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(bad)?;
            if fields.insert(k, v).is_some() {
                return Err(bad());
            }
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(bad);
        let spec = GeneratorSpec {
            n: get("n")?.parse().map_err(|_| bad())?,
            p: get("p")?.parse().map_err(|_| bad())?,
            count: get("count")?.parse().map_err(|_| bad())?,
            seed: get("seed")?.parse().map_err(|_| bad())?,
        };
        if fields.len() != 4 || !(0.0..=1.0).contains(&spec.p) {
            return Err(bad());
        }
        Ok(spec)
    }
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Vec<Graph>, GraphError> {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(self.seed);
        (0..self.count).map(|_| random_gnp_with(self.n, self.p, &mut rng)).collect()
    }
}

pub enum Input<'a> {
    Graph6(&'a str),
    Generated(Vec<Graph>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub line: usize,
    pub graph6: String,
    pub n: usize,
    pub alpha: usize,
    pub kappa: usize,
    pub toughness: Option<Toughness>,
    pub trace: Vec<String>,
    pub kind: String,
    pub verified: bool,
    /// Search steps spent; a deterministic stand-in for wall time.
    pub runtime: u64,
    #[serde(skip)]
    pub exhausted: bool,
    #[serde(skip)]
    pub gap: Option<GapReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Entry {
    Graph(Record),
    Malformed { line: usize, error: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub verified: usize,
    pub failed: usize,
    pub exhausted: usize,
    pub malformed: usize,
    pub branches: BTreeMap<String, usize>,
    pub gaps: Vec<GapReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub never_fired: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl CampaignReport {
    pub fn records(&self) -> impl Iterator<Item = &Record> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Graph(r) => Some(r),
            Entry::Malformed { .. } => None,
        })
    }

    /// One JSON object per line, then the summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&canonical(e));
            out.push('\n');
        }
        out.push_str(&canonical(&serde_json::json!({ "summary": self.summary })));
        out.push('\n');
        out
    }

    /// 0 success, 1 verification failure or gap, 2 malformed input, 3 budget exhausted.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.failed > 0 || !s.gaps.is_empty() {
            1
        } else if s.malformed > 0 {
            2
        } else if s.exhausted > 0 {
            3
        } else {
            0
        }
    }
}

fn canonical<T: Serialize>(x: &T) -> String {
    let value = serde_json::to_value(x).expect("report values serialize");
    serde_json::to_string(&value).expect("values serialize")
}

fn base_record(line: usize, g: &Graph, params: &GraphParams) -> Record {
    Record {
        line,
        graph6: to_graph6(g).unwrap_or_default(),
        n: g.n(),
        alpha: params.alpha,
        kappa: params.kappa,
        toughness: params.toughness,
        trace: Vec::new(),
        kind: String::new(),
        verified: false,
        runtime: 0,
        exhausted: false,
        gap: None,
    }
}

fn exhausted(mut r: Record) -> Record {
    r.kind = "exhausted".into();
    r.trace = vec!["budget".into()];
    r.exhausted = true;
    r
}

fn failed(mut r: Record, err: impl std::fmt::Display) -> Record {
    r.kind = "error".into();
    r.trace = vec![format!("error: {err}")];
    r
}

fn run_one(line: usize, g: &Graph, mode: Mode) -> Record {
    let Ok(params) = GraphParams::compute(g) else {
        let mut r = base_record(line, g, &GraphParams { n: g.n(), alpha: 0, kappa: 0, toughness: None });
        r.kind = "empty".into();
        r.verified = true;
        r.trace = vec!["empty".into()];
        return r;
    };
    let budget = Budget::from_env();
    let mut r = base_record(line, g, &params);
    let r = match mode {
        Mode::Prism | Mode::Audit => {
            if g.n() < 2 {
                r.kind = "trivial".into();
                r.trace = vec!["single-vertex".into()];
                r.verified = true;
                r
            } else {
                match certify(g, &budget) {
                    Ok(run) => {
                        r.verified = verify_certificate(g, &run.certificate);
                        r.kind = kind_name(run.certificate.kind).into();
                        r.trace = run.certificate.trace;
                        r.gap = run.gap;
                        r
                    }
                    Err(PipelineError::Exhausted) => exhausted(r),
                    Err(e) => failed(r, e),
                }
            }
        }
        Mode::CyclicProduct(t) => match cyclic_product_certificate(g, t, &budget) {
            Ok(CyclicProduct::Certified(c)) => {
                r.verified = verify_product_cycle(g, &c);
                r.kind = "product_cycle".into();
                r.trace = vec!["product.tree-cycle".into()];
                r
            }
            Ok(CyclicProduct::NotApplicable { .. }) => {
                r.verified = true;
                r.kind = "not_applicable".into();
                r.trace = vec!["product.not-applicable".into()];
                r
            }
            Ok(CyclicProduct::Exhausted) => exhausted(r),
            Err(e) => failed(r, e),
        },
        Mode::Toughness => {
            if g.n() < 3 {
                r.kind = "trivial".into();
                r.trace = vec!["toughness.small".into()];
                r.verified = true;
                r
            } else {
                match toughness_hamilton_check(g, &budget) {
                    Ok(rep) => {
                        let tag = match (rep.complete, rep.hamilton_condition, rep.prism_condition) {
                            (true, _, _) => "toughness.complete",
                            (_, true, _) => "toughness.hamilton",
                            (_, false, true) => "toughness.prism",
                            _ => "toughness.none",
                        };
                        let pending = (rep.hamilton_condition && rep.hamilton_confirmed.is_none())
                            || (rep.prism_condition && rep.prism_confirmed.is_none());
                        if pending {
                            exhausted(r)
                        } else {
                            r.verified = rep.consistent();
                            r.kind = "toughness".into();
                            r.trace = vec![tag.into()];
                            r
                        }
                    }
                    Err(ProductError::Pipeline(PipelineError::Exhausted)) => exhausted(r),
                    Err(e) => failed(r, e),
                }
            }
        }
    };
    Record {
        runtime: budget.steps(),
        ..r
    }
}

fn kind_name(kind: CertificateKind) -> &'static str {
    match kind {
        CertificateKind::HamiltonPath => "hamilton_path",
        CertificateKind::EvenCactus => "even_cactus",
        CertificateKind::PrismCycle => "prism_cycle",
        CertificateKind::RefutedHypothesis => "refuted_hypothesis",
    }
}

/// Runs `mode` over every input graph on `jobs` worker threads (0 means the
/// rayon default). Output order follows input order.
pub fn run_campaign(input: Input<'_>, mode: Mode, jobs: usize) -> Result<CampaignReport, CampaignError> {
    if let Mode::CyclicProduct(t) = mode {
        if t < 3 {
            return Err(CampaignError::BadT(t));
        }
    }
    let parsed: Vec<(usize, Result<Graph, String>)> = match input {
        Input::Graph6(text) => parse_stream(text).map(|(l, r)| (l, r.map_err(|e| e.to_string()))).collect(),
        Input::Generated(gs) => gs.into_iter().enumerate().map(|(i, g)| (i + 1, Ok(g))).collect(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CampaignError::Pool(e.to_string()))?;
    let entries: Vec<Entry> = pool.install(|| {
        parsed
            .par_iter()
            .map(|(line, g)| match g {
                Ok(g) => Entry::Graph(run_one(*line, g, mode)),
                Err(e) => Entry::Malformed {
                    line: *line,
                    error: e.clone(),
                },
            })
            .collect()
    });

    let mut summary = Summary {
        records: 0,
        verified: 0,
        failed: 0,
        exhausted: 0,
        malformed: 0,
        branches: BTreeMap::new(),
        gaps: Vec::new(),
        never_fired: None,
    };
    for e in &entries {
        match e {
            Entry::Malformed { .. } => summary.malformed += 1,
            Entry::Graph(r) => {
                summary.records += 1;
                if r.exhausted {
                    summary.exhausted += 1;
                } else if r.verified {
                    summary.verified += 1;
                } else {
                    summary.failed += 1;
                }
                let branch = r.trace.last().cloned().unwrap_or_default();
                *summary.branches.entry(branch).or_default() += 1;
                summary.gaps.extend(r.gap.clone());
            }
        }
    }
    if mode == Mode::Audit {
        let fired: std::collections::BTreeSet<&str> = entries
            .iter()
            .filter_map(|e| match e {
                Entry::Graph(r) => Some(r.trace.iter().map(String::as_str)),
                _ => None,
            })
            .flatten()
            .collect();
        summary.never_fired = Some(
            branch_tags()
                .into_iter()
                .filter(|t| !fired.contains(t))
                .map(String::from)
                .collect(),
        );
    }
    Ok(CampaignReport { entries, summary })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KabReport {
    pub k: usize,
    pub a: usize,
    pub kappa: usize,
    pub alpha: usize,
    /// `a > 2k`: the prism should not be Hamiltonian.
    pub beyond_bound: bool,
    /// Oracle verdict on the prism, checked only beyond the bound.
    pub prism_hamiltonian: Option<bool>,
    /// Components left after deleting both copies of the small side.
    pub cut_components: Option<usize>,
    pub certificate: Option<Certificate>,
    pub verified: bool,
}

/// Checks `K_{k,a}` against the bound `a ≤ 2k`: beyond it, exhaustive search
/// refutes a Hamilton cycle of the prism and the cut argument is replayed;
/// within it, a certificate is produced and verified.
pub fn counterexample_check(k: usize, a: usize, budget: &Budget) -> Result<KabReport, CampaignError> {
    if k + a > KAB_MAX_VERTICES {
        return Err(CampaignError::TooLarge {
            k,
            a,
            max: KAB_MAX_VERTICES,
        });
    }
    let g = complete_bipartite(k, a)?;
    let params = GraphParams::compute(&g).map_err(OracleError::from)?;
    let mut report = KabReport {
        k,
        a,
        kappa: params.kappa,
        alpha: params.alpha,
        beyond_bound: a > 2 * k,
        prism_hamiltonian: None,
        cut_components: None,
        certificate: None,
        verified: false,
    };
    let params_ok = params.kappa == k.min(a) && params.alpha == k.max(a);
    if report.beyond_bound {
        let p = prism(&g)?;
        let n = g.n();
        report.prism_hamiltonian = match hamilton_cycle(&p, budget)? {
            Outcome::Found(_) => Some(true),
            Outcome::Absent => Some(false),
            Outcome::Exhausted => None,
        };
        let small_side: u128 = (0..k).fold(0, |m, u| m | 1 << u | 1 << (u + n));
        let components = p.components_within(p.all_mask() & !small_side);
        report.cut_components = Some(components);
        report.verified = params_ok && report.prism_hamiltonian == Some(false) && components == a;
    } else {
        let run = certify(&g, budget)?;
        report.verified = params_ok && verify_certificate(&g, &run.certificate);
        report.certificate = Some(run.certificate);
    }
    Ok(report)
}

/// Writes the certificate as canonical JSON followed by a newline.
pub fn emit_certificate(path: &Path, c: &Certificate) -> io::Result<()> {
    let mut text = c.to_canonical_json();
    text.push('\n');
    fs::write(path, text)
}
