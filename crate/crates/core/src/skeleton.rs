//! p-skeleton detection: nested vertex sets X within Y where every X-pair has
//! weight 1 and every Y-pair has weight at least 1/2. A graph with no pair of
//! value |X| + |Y| = p is p-skeleton-free, the weighted analogue of
//! K_p-freeness.
//!
//! The optimum Y is always a maximal clique of the support graph, so the
//! search enumerates those and solves a maximum weight-1 clique inside each.

use crate::bitset::BitSet;
use crate::cliques;
use crate::profile::Profile;
use crate::wgraph::WeightedGraph;

/// A skeleton witness: X is a weight-1 clique inside the support clique Y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl Skeleton {
    pub fn value(&self) -> usize {
        self.x.len() + self.y.len()
    }
}

/// Largest |X| + |Y| over skeletons of `g`, with one attaining witness.
/// A graph is p-skeleton-free iff the value is at most p - 1.
pub fn max_skeleton_value(g: &WeightedGraph) -> (usize, Skeleton) {
    search(g, None)
}

/// True iff `g` contains no p-skeleton. Stops as soon as any skeleton of
/// value >= p is found.
pub fn is_skeleton_free(g: &WeightedGraph, p: usize) -> bool {
    if g.n() == 0 {
        return true;
    }
    search(g, Some(p)).0 < p
}

fn search(g: &WeightedGraph, stop_at: Option<usize>) -> (usize, Skeleton) {
    let n = g.n();
    if n == 0 {
        return (
            0,
            Skeleton {
                x: vec![],
                y: vec![],
            },
        );
    }
    let support: Vec<BitSet> = (0..n).map(|v| g.support_row(v).clone()).collect();
    let strong: Vec<BitSet> = (0..n).map(|v| g.strong_row(v).clone()).collect();
    let mut best = 0usize;
    let mut witness = Skeleton {
        x: vec![],
        y: vec![],
    };
    let mut done = false;
    cliques::maximal_cliques(&support, &BitSet::full(n), &mut |y: &BitSet| {
        if done {
            return;
        }
        let ylen = y.len();
        // Even a perfect strong clique inside cannot beat the current best.
        if ylen * 2 <= best {
            return;
        }
        let x = cliques::max_clique(&strong, y);
        let value = ylen + x.len();
        if value > best {
            best = value;
            witness = Skeleton {
                x: x.to_vec(),
                y: y.to_vec(),
            };
            if let Some(p) = stop_at {
                if best >= p {
                    done = true;
                }
            }
        }
    });
    (best, witness)
}

/// Closed-form skeleton criterion for profile graphs with nonempty cells:
/// the largest skeleton has one vertex per cell in Y and one per part in X,
/// so the graph is p-skeleton-free iff s + t <= p - 1.
pub fn profile_skeleton_free(p: &Profile, skeleton_order: usize) -> bool {
    p.s() + p.t() < skeleton_order
}
