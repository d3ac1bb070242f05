use serde::Serialize;

use super::{tree_cycle_ham, ProductCycle, ProductError};
use crate::budget::{Budget, Outcome};
use crate::graph::Graph;
use crate::invariants::{connectivity, independence_number, toughness, Toughness};
use crate::oracles::{bounded_degree_spanning_tree, hamilton_cycle, OracleError};
use crate::pipeline::{certify, verify_certificate, CertificateKind, PipelineError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicProduct {
    Certified(ProductCycle),
    NotApplicable { alpha: usize, kappa: usize },
    Exhausted,
}

/// A Hamilton cycle of `g □ C_t` whenever `α(g) ≤ (t − 1)·κ(g)`, built from a
/// spanning tree of maximum degree at most `t`.
pub fn cyclic_product_certificate(g: &Graph, t: usize, budget: &Budget) -> Result<CyclicProduct, ProductError> {
    if t < 3 {
        return Err(ProductError::CycleTooShort(t));
    }
    let (alpha, _) = independence_number(g)?;
    let (kappa, _) = connectivity(g)?;
    if alpha > (t - 1) * kappa {
        return Ok(CyclicProduct::NotApplicable { alpha, kappa });
    }
    let tree = match bounded_degree_spanning_tree(g, t, budget)? {
        Outcome::Found(tree) => tree,
        Outcome::Exhausted => return Ok(CyclicProduct::Exhausted),
        Outcome::Absent => {
            return Err(OracleError::TheoremViolation(format!(
                "no spanning tree of maximum degree {t} although alpha = {alpha} <= {} * kappa = {}",
                t - 1,
                (t - 1) * kappa
            ))
            .into())
        }
    };
    Ok(CyclicProduct::Certified(tree_cycle_ham(&tree, t)?))
}

/// Exact evaluation of the two toughness conditions and their confirmations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToughnessReport {
    pub n: usize,
    pub toughness: Toughness,
    pub complete: bool,
    /// `2τ(τ + 1) ≥ n`.
    pub hamilton_condition: bool,
    /// `4τ(τ + 1) ≥ n`.
    pub prism_condition: bool,
    /// Oracle verdict on a Hamilton cycle, when the first condition holds.
    pub hamilton_confirmed: Option<bool>,
    /// Pipeline verdict on the prism, when the second condition holds.
    pub prism_confirmed: Option<bool>,
    /// `κ ≥ 2τ` and `τ ≤ (n − α)/α`, for non-complete graphs.
    pub chain_holds: Option<bool>,
}

impl ToughnessReport {
    /// No condition holds without its confirmation.
    pub fn consistent(&self) -> bool {
        self.hamilton_confirmed != Some(false) && self.prism_confirmed != Some(false) && self.chain_holds != Some(false)
    }
}

fn condition(tough: Toughness, factor: u128, n: usize) -> bool {
    match tough.finite() {
        None => true,
        Some(r) => {
            let (p, q) = (*r.numer() as u128, *r.denom() as u128);
            factor * p * (p + q) >= n as u128 * q * q
        }
    }
}

pub fn toughness_hamilton_check(g: &Graph, budget: &Budget) -> Result<ToughnessReport, ProductError> {
    let n = g.n();
    if n < 3 {
        return Err(OracleError::TooSmall { n, min: 3 }.into());
    }
    let tough = toughness(g)?.value;
    let complete = g.is_complete();
    let hamilton_condition = condition(tough, 2, n);
    let prism_condition = condition(tough, 4, n);
    let hamilton_confirmed = if hamilton_condition {
        match hamilton_cycle(g, budget)? {
            Outcome::Found(_) => Some(true),
            Outcome::Absent => Some(false),
            Outcome::Exhausted => None,
        }
    } else {
        None
    };
    let prism_confirmed = if prism_condition {
        match certify(g, budget) {
            Ok(run) => Some(run.certificate.kind != CertificateKind::RefutedHypothesis && verify_certificate(g, &run.certificate)),
            Err(PipelineError::Exhausted) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let chain_holds = match tough.finite() {
        Some(r) if !complete => {
            let (p, q) = (*r.numer() as u128, *r.denom() as u128);
            let (alpha, _) = independence_number(g)?;
            let (kappa, _) = connectivity(g)?;
            let (alpha, kappa, n) = (alpha as u128, kappa as u128, n as u128);
            Some(kappa * q >= 2 * p && p * alpha <= (n - alpha) * q)
        }
        _ => None,
    };
    Ok(ToughnessReport {
        n,
        toughness: tough,
        complete,
        hamilton_condition,
        prism_condition,
        hamilton_confirmed,
        prism_confirmed,
        chain_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle};
    use crate::products::verify_product_cycle;
    use num_rational::Ratio;

    #[test]
    fn cyclic_examples() {
        let b = Budget::unlimited();
        let k24 = complete_bipartite(2, 4).unwrap();
        let CyclicProduct::Certified(c) = cyclic_product_certificate(&k24, 3, &b).unwrap() else { panic!() };
        assert_eq!(c.sequence.len(), 18);
        assert!(verify_product_cycle(&k24, &c));
        let c5 = cycle(5).unwrap();
        let CyclicProduct::Certified(c) = cyclic_product_certificate(&c5, 3, &b).unwrap() else { panic!() };
        assert_eq!(c.sequence.len(), 15);
        assert!(verify_product_cycle(&c5, &c));
        let k25 = complete_bipartite(2, 5).unwrap();
        assert_eq!(
            cyclic_product_certificate(&k25, 3, &b).unwrap(),
            CyclicProduct::NotApplicable { alpha: 5, kappa: 2 }
        );
    }

    #[test]
    fn toughness_examples() {
        let b = Budget::unlimited();
        let r = toughness_hamilton_check(&cycle(4).unwrap(), &b).unwrap();
        assert_eq!(r.toughness, Toughness::Finite(Ratio::from_integer(1)));
        assert!(r.hamilton_condition);
        assert_eq!(r.hamilton_confirmed, Some(true));
        let r = toughness_hamilton_check(&complete_bipartite(2, 4).unwrap(), &b).unwrap();
        assert_eq!(r.toughness, Toughness::Finite(Ratio::new(1, 2)));
        assert!(!r.hamilton_condition && !r.prism_condition);
        assert_eq!(r.chain_holds, Some(true));
        let r = toughness_hamilton_check(&complete(5).unwrap(), &b).unwrap();
        assert!(r.complete && r.hamilton_condition);
        assert!(r.consistent());
    }
}
