use serde::Serialize;

use crate::cactus::EvenCactus;
use crate::graph::{Graph, Vertex};

/// Where the even cycle meets one covering path, read from the path's start.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentAttachment {
    /// Cycle vertices on the path, in path order; the first is the start.
    pub hits: Vec<Vertex>,
    /// For each hit, the last vertex before the next hit, or the far end.
    pub tails: Vec<Vertex>,
}

/// Splits `path` at its cycle vertices into segments `path[w_j, x_j]`.
pub fn segment_attachment(path: &[Vertex], on_cycle: &[bool]) -> SegmentAttachment {
    let idx: Vec<usize> = (0..path.len()).filter(|&i| on_cycle[path[i]]).collect();
    let hits = idx.iter().map(|&i| path[i]).collect();
    let tails = idx
        .iter()
        .enumerate()
        .map(|(k, _)| match idx.get(k + 1) {
            Some(&next) => path[next - 1],
            None => path[path.len() - 1],
        })
        .collect();
    SegmentAttachment { hits, tails }
}

/// The even cycle plus every nontrivial segment of every covering path.
pub(crate) fn attach_segments(g: &Graph, cycle: &[Vertex], paths: &[Vec<Vertex>]) -> EvenCactus {
    let mut on_cycle = vec![false; g.n()];
    for &v in cycle {
        on_cycle[v] = true;
    }
    let mut segments = Vec::new();
    for p in paths {
        let att = segment_attachment(p, &on_cycle);
        let pos = |v: Vertex| p.iter().position(|&w| w == v).expect("vertex on path");
        for (&w, &x) in att.hits.iter().zip(&att.tails) {
            let (i, j) = (pos(w), pos(x));
            if j > i {
                segments.push(p[i..=j].to_vec());
            }
        }
    }
    EvenCactus {
        cycles: vec![cycle.to_vec()],
        paths: segments,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments() {
        let on = |vs: &[Vertex]| {
            let mut m = vec![false; 10];
            for &v in vs {
                m[v] = true;
            }
            m
        };
        let att = segment_attachment(&[0, 1, 2, 3, 4], &on(&[0, 3]));
        assert_eq!(att.hits, vec![0, 3]);
        assert_eq!(att.tails, vec![2, 4]);
        let att = segment_attachment(&[5, 6, 7], &on(&[5, 6]));
        assert_eq!(att.tails, vec![5, 7]);
    }
}
