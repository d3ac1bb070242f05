//! Certificates of prism-Hamiltonicity for graphs with `α ≤ 2κ`.
//!
//! Dispatch: `α > 2κ` is reported as a refuted hypothesis; `α ≤ κ + 1` goes
//! through a Hamilton path; `κ = 2` runs the two-path ladder; `κ ≥ 3` attaches
//! path segments to an even cycle through one end of each covering path.

mod assemble;
mod kappa2;
mod kappa3;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, Outcome};
use crate::cactus::{prism_ham_from_cactus, validate_even_cactus, verify_prism_cycle, EvenCactus, PrismHamCycle, SpliceError};
use crate::graph::{Graph, Vertex};
use crate::graph6::to_graph6;
use crate::invariants::{connectivity, independence_number, InvariantError};
use crate::oracles::{even_cycle_through, exhaustive_even_cactus, hamilton_path, path_cover, verify_path, OracleError};

pub use kappa2::TwoPathConfig;
pub use kappa3::{segment_attachment, SegmentAttachment};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("a certificate needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("search budget exhausted")]
    Exhausted,
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Splice(#[from] SpliceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    HamiltonPath,
    EvenCactus,
    PrismCycle,
    RefutedHypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    HamiltonPath {
        path: Vec<Vertex>,
        prism_cycle: PrismHamCycle,
    },
    EvenCactus {
        cactus: EvenCactus,
        prism_cycle: PrismHamCycle,
    },
    Refuted {
        alpha: usize,
        kappa: usize,
    },
    PrismCycle {
        prism_cycle: PrismHamCycle,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub trace: Vec<String>,
    pub payload: Payload,
}

impl Certificate {
    /// Canonical JSON: object keys sorted, no floats.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("certificates serialize");
        serde_json::to_string(&value).expect("values serialize")
    }

    pub fn prism_cycle(&self) -> Option<&PrismHamCycle> {
        match &self.payload {
            Payload::HamiltonPath { prism_cycle, .. }
            | Payload::EvenCactus { prism_cycle, .. }
            | Payload::PrismCycle { prism_cycle } => Some(prism_cycle),
            Payload::Refuted { .. } => None,
        }
    }
}

/// A configuration no ladder branch could handle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub graph6: String,
    pub paths: Vec<Vec<Vertex>>,
    pub configs: Vec<TwoPathConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineRun {
    pub certificate: Certificate,
    pub gap: Option<GapReport>,
}

/// Every branch tag the pipeline can put into a trace.
pub fn branch_tags() -> Vec<&'static str> {
    let mut tags = vec![
        "refuted",
        "hamilton-path",
        "kappa2.two-paths",
        "kappa2.cover-path",
    ];
    tags.extend_from_slice(kappa2::KAPPA2_TAGS);
    tags.extend_from_slice(&["kappa3.cover", "kappa3.cover-path", "kappa3.attach", "fallback.exhaustive"]);
    tags
}

fn found<T>(o: Outcome<T>, what: &str) -> Result<T, PipelineError> {
    match o {
        Outcome::Found(x) => Ok(x),
        Outcome::Exhausted => Err(PipelineError::Exhausted),
        Outcome::Absent => Err(PipelineError::TheoremViolation(format!("no {what} although the hypothesis holds"))),
    }
}

fn from_path(g: &Graph, path: Vec<Vertex>, trace: Vec<String>) -> Result<Certificate, PipelineError> {
    let prism_cycle = prism_ham_from_cactus(g, &EvenCactus::from_path(path.clone()))?;
    Ok(Certificate {
        kind: CertificateKind::HamiltonPath,
        trace,
        payload: Payload::HamiltonPath { path, prism_cycle },
    })
}

fn from_cactus(g: &Graph, cactus: EvenCactus, trace: Vec<String>) -> Result<Certificate, PipelineError> {
    validate_even_cactus(g, &cactus)
        .map_err(|e| PipelineError::TheoremViolation(format!("assembled cactus is invalid: {e}")))?;
    let prism_cycle = prism_ham_from_cactus(g, &cactus)?;
    Ok(Certificate {
        kind: CertificateKind::EvenCactus,
        trace,
        payload: Payload::EvenCactus { cactus, prism_cycle },
    })
}

/// Certificate with an unlimited budget; gaps fall back silently.
pub fn prism_ham_certificate(g: &Graph) -> Result<Certificate, PipelineError> {
    certify(g, &Budget::unlimited()).map(|run| run.certificate)
}

/// Certificate plus a gap report when the ladder needed the exhaustive fallback.
pub fn certify(g: &Graph, budget: &Budget) -> Result<PipelineRun, PipelineError> {
    let n = g.n();
    if n < 2 {
        return Err(PipelineError::TooSmall(n));
    }
    let (alpha, _) = independence_number(g)?;
    let (kappa, _) = connectivity(g)?;
    let done = |certificate| Ok(PipelineRun { certificate, gap: None });
    if alpha > 2 * kappa {
        return done(Certificate {
            kind: CertificateKind::RefutedHypothesis,
            trace: vec!["refuted".into()],
            payload: Payload::Refuted { alpha, kappa },
        });
    }
    if alpha <= kappa + 1 {
        let path = found(hamilton_path(g, budget)?, "Hamilton path")?;
        return done(from_path(g, path, vec!["hamilton-path".into()])?);
    }
    if kappa == 2 {
        kappa2_certificate(g, budget)
    } else {
        done(kappa3_certificate(g, alpha - kappa, budget)?)
    }
}

fn kappa2_certificate(g: &Graph, budget: &Budget) -> Result<PipelineRun, PipelineError> {
    let cover = found(path_cover(g, 2, budget)?, "cover by two paths")?;
    let mut trace = vec!["kappa2.two-paths".to_string()];
    if cover.paths.len() == 1 {
        trace.push("kappa2.cover-path".into());
        let certificate = from_path(g, cover.paths[0].clone(), trace)?;
        return Ok(PipelineRun { certificate, gap: None });
    }
    let ladder = kappa2::Ladder::new(g, cover.paths[0].clone(), cover.paths[1].clone());
    match ladder.run() {
        Ok((tag, built)) => {
            trace.push(tag.into());
            let certificate = match built {
                kappa2::Built::Path(p) => from_path(g, p, trace)?,
                kappa2::Built::Cactus(h) => from_cactus(g, h, trace)?,
            };
            Ok(PipelineRun { certificate, gap: None })
        }
        Err(configs) => {
            let gap = GapReport {
                graph6: to_graph6(g).unwrap_or_default(),
                paths: cover.paths.clone(),
                configs,
            };
            trace.push("fallback.exhaustive".into());
            let h = found(exhaustive_even_cactus(g, budget)?, "spanning even cactus")?;
            let certificate = from_cactus(g, h, trace)?;
            Ok(PipelineRun {
                certificate,
                gap: Some(gap),
            })
        }
    }
}

fn kappa3_certificate(g: &Graph, t: usize, budget: &Budget) -> Result<Certificate, PipelineError> {
    let cover = found(path_cover(g, t, budget)?, "cover by few paths")?;
    if cover.paths.len() == 1 {
        return from_path(g, cover.paths[0].clone(), vec!["kappa3.cover".into(), "kappa3.cover-path".into()]);
    }
    let starts = cover.starts();
    let cycle = found(even_cycle_through(g, &starts, budget)?, "even cycle through the path starts")?;
    let cactus = kappa3::attach_segments(g, &cycle, &cover.paths);
    from_cactus(g, cactus, vec!["kappa3.cover".into(), "kappa3.attach".into()])
}

/// Re-checks a certificate against `g` with the independent validators.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> bool {
    let constructed = c.kind != CertificateKind::RefutedHypothesis;
    if constructed && c.trace.is_empty() {
        return false;
    }
    match (&c.kind, &c.payload) {
        (CertificateKind::HamiltonPath, Payload::HamiltonPath { path, prism_cycle }) => {
            verify_path(g, path, true) && verify_prism_cycle(g, prism_cycle)
        }
        (CertificateKind::EvenCactus, Payload::EvenCactus { cactus, prism_cycle }) => {
            validate_even_cactus(g, cactus).is_ok() && verify_prism_cycle(g, prism_cycle)
        }
        (CertificateKind::PrismCycle, Payload::PrismCycle { prism_cycle }) => verify_prism_cycle(g, prism_cycle),
        (CertificateKind::RefutedHypothesis, Payload::Refuted { alpha, kappa }) => {
            match (independence_number(g), connectivity(g)) {
                (Ok((a, _)), Ok((k, _))) => a == *alpha && k == *kappa && a > 2 * k,
                _ => false,
            }
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, petersen};

    #[test]
    fn dispatch() {
        let c = prism_ham_certificate(&petersen()).unwrap();
        assert_eq!(c.kind, CertificateKind::HamiltonPath);
        assert!(verify_certificate(&petersen(), &c));

        let k24 = complete_bipartite(2, 4).unwrap();
        let c = prism_ham_certificate(&k24).unwrap();
        assert_eq!(c.kind, CertificateKind::EvenCactus);
        assert!(c.trace[0].starts_with("kappa2"));
        assert!(verify_certificate(&k24, &c));

        let k25 = complete_bipartite(2, 5).unwrap();
        let c = prism_ham_certificate(&k25).unwrap();
        assert_eq!(c.payload, Payload::Refuted { alpha: 5, kappa: 2 });
        assert!(verify_certificate(&k25, &c));
    }

    #[test]
    fn kappa3_examples() {
        for (k, a) in [(3, 6), (4, 8)] {
            let g = complete_bipartite(k, a).unwrap();
            let c = prism_ham_certificate(&g).unwrap();
            assert_eq!(c.kind, CertificateKind::EvenCactus);
            assert!(c.trace.contains(&"kappa3.attach".to_string()));
            assert!(verify_certificate(&g, &c));
        }
    }

    #[test]
    fn tampered() {
        let k24 = complete_bipartite(2, 4).unwrap();
        let mut c = prism_ham_certificate(&k24).unwrap();
        if let Payload::EvenCactus { cactus, .. } = &mut c.payload {
            cactus.cycles[0].pop();
        }
        assert!(!verify_certificate(&k24, &c));
        let mut c = prism_ham_certificate(&k24).unwrap();
        c.kind = CertificateKind::HamiltonPath;
        assert!(!verify_certificate(&k24, &c));
    }

    #[test]
    fn json_round_trip() {
        let k24 = complete_bipartite(2, 4).unwrap();
        let c = prism_ham_certificate(&k24).unwrap();
        let text = c.to_canonical_json();
        assert!(text.starts_with("{\"kind\":\"even_cactus\""));
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert!(prism_ham_certificate(&Graph::empty(1).unwrap()).is_err());
    }
}
