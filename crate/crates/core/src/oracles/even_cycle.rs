use crate::budget::{Budget, OutOfBudget, Outcome};
use crate::graph::{bits, Graph, Vertex};
use crate::invariants::connectivity;

use super::{CycleWitness, OracleError};

pub const EVEN_CYCLE_MAX_N: usize = 16;

struct EvenCycleSearch<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    anchor: Vertex,
    required: u128,
    path: Vec<Vertex>,
}

impl EvenCycleSearch<'_> {
    fn extend(&mut self, visited: u128, end: Vertex) -> Result<bool, OutOfBudget> {
        self.budget.tick()?;
        let g = self.g;
        let len = self.path.len();
        if len >= 4 && len.is_multiple_of(2) && self.required & !visited == 0 && g.has_edge(end, self.anchor) {
            return Ok(true);
        }
        let open = g.all_mask() & !visited;
        // The rest of the cycle runs from `end` through unvisited vertices back
        // to the anchor and must pick up every missing required vertex.
        let reach = g.reach_within(end, open | 1 << end | 1 << self.anchor);
        let needed = (self.required & !visited) | 1 << self.anchor;
        if reach & needed != needed {
            return Ok(false);
        }
        for next in bits(g.row(end) & open) {
            self.path.push(next);
            if self.extend(visited | 1 << next, next)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// An even cycle through every vertex of `s`.
///
/// When `κ(g) ≥ max(3, |s|)` such a cycle always exists, so an exhausted
/// search there is reported as [`OracleError::TheoremViolation`].
pub fn even_cycle_through(
    g: &Graph,
    s: &[Vertex],
    budget: &Budget,
) -> Result<Outcome<CycleWitness>, OracleError> {
    let n = g.n();
    if s.is_empty() {
        return Err(OracleError::Argument("even_cycle_through needs |s| >= 1".into()));
    }
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(OracleError::Argument(format!("vertex {v} out of range")));
    }
    if n > EVEN_CYCLE_MAX_N {
        return Err(OracleError::TooLarge {
            n,
            max: EVEN_CYCLE_MAX_N,
        });
    }
    let required = s.iter().fold(0u128, |m, &v| m | 1 << v);
    let anchor = *s.iter().min().unwrap();
    let mut search = EvenCycleSearch {
        g,
        budget,
        anchor,
        required,
        path: vec![anchor],
    };
    match search.extend(1 << anchor, anchor) {
        Ok(true) => Ok(Outcome::Found(CycleWitness::new(search.path))),
        Err(OutOfBudget) => Ok(Outcome::Exhausted),
        Ok(false) => {
            let distinct = required.count_ones() as usize;
            let (kappa, _) = connectivity(g)?;
            if kappa >= distinct.max(3) {
                Err(OracleError::TheoremViolation(format!(
                    "no even cycle through {s:?} although the graph is {kappa}-connected"
                )))
            } else {
                Ok(Outcome::Absent)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};
    use crate::oracles::verify_cycle;

    #[test]
    fn examples() {
        let b = Budget::unlimited();
        let k4 = complete(4).unwrap();
        let c = even_cycle_through(&k4, &[0, 1, 2], &b).unwrap().found().unwrap();
        assert_eq!(c.len(), 4);
        assert!(verify_cycle(&k4, &c, false));
        let c6 = cycle(6).unwrap();
        let c = even_cycle_through(&c6, &[0, 3], &b).unwrap().found().unwrap();
        assert!(verify_cycle(&c6, &c, true));
        let c5 = cycle(5).unwrap();
        assert!(even_cycle_through(&c5, &[0, 1], &b).unwrap().is_absent());
        assert!(even_cycle_through(&c5, &[], &b).is_err());
        assert!(matches!(
            even_cycle_through(&Graph::empty(17).unwrap(), &[0], &b),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
