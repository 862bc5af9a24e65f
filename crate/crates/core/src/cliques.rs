//! Clique machinery over bitset adjacency: Bron-Kerbosch maximal-clique
//! enumeration, branch-and-bound maximum clique with a greedy coloring bound,
//! and capped clique counting by size.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Visits every maximal clique of the graph restricted to `within`.
/// Bron-Kerbosch with pivoting; vertices are expanded in index order, so the
/// visit order is deterministic.
pub fn maximal_cliques<F: FnMut(&BitSet)>(adj: &[BitSet], within: &BitSet, f: &mut F) {
    let n = adj.len();
    let mut r = BitSet::new(n);
    let mut p = within.clone();
    let mut x = BitSet::new(n);
    bk(adj, &mut r, &mut p, &mut x, f);
}

fn bk<F: FnMut(&BitSet)>(
    adj: &[BitSet],
    r: &mut BitSet,
    p: &mut BitSet,
    x: &mut BitSet,
    f: &mut F,
) {
    if p.is_empty() && x.is_empty() {
        f(r);
        return;
    }
    // Pivot on the vertex of P ∪ X with the most neighbors in P.
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| adj[u].intersection_len(p))
        .unwrap();
    let mut ext = p.clone();
    ext.subtract(&adj[pivot]);
    for v in ext.iter() {
        r.insert(v);
        let mut p2 = p.intersection(&adj[v]);
        let mut x2 = x.intersection(&adj[v]);
        bk(adj, r, &mut p2, &mut x2, f);
        r.remove(v);
        p.remove(v);
        x.insert(v);
    }
}

/// Maximum clique of the graph restricted to `within`, by branch and bound
/// with a greedy coloring upper bound. Returns one maximum clique;
/// deterministic under the fixed vertex order.
pub fn max_clique(adj: &[BitSet], within: &BitSet) -> BitSet {
    let n = adj.len();
    let mut best = BitSet::new(n);
    let mut cur = BitSet::new(n);
    expand(adj, within.clone(), &mut cur, 0, &mut best);
    best
}

/// Size of the maximum clique restricted to `within`.
pub fn max_clique_size(adj: &[BitSet], within: &BitSet) -> usize {
    max_clique(adj, within).len()
}

fn expand(adj: &[BitSet], cand: BitSet, cur: &mut BitSet, cur_len: usize, best: &mut BitSet) {
    if cand.is_empty() {
        if cur_len > best.len() {
            *best = cur.clone();
        }
        return;
    }
    // Greedy coloring of the candidates: vertices sharing a color class are
    // pairwise nonadjacent, so #colors bounds the clique size within `cand`.
    let verts: Vec<usize> = cand.iter().collect();
    let mut color = vec![0usize; verts.len()];
    let mut classes: Vec<BitSet> = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        let mut c = 0;
        loop {
            if c == classes.len() {
                classes.push(BitSet::new(adj.len()));
            }
            if classes[c].intersection_len(&adj[v]) == 0 {
                classes[c].insert(v);
                color[i] = c + 1;
                break;
            }
            c += 1;
        }
    }
    // Expand highest color first.
    let mut order: Vec<usize> = (0..verts.len()).collect();
    order.sort_by_key(|&i| color[i]);
    let mut cand = cand;
    for &i in order.iter().rev() {
        let v = verts[i];
        if cur_len + color[i] <= best.len() {
            return;
        }
        if !cand.contains(v) {
            continue;
        }
        cur.insert(v);
        let next = cand.intersection(&adj[v]);
        expand(adj, next, cur, cur_len + 1, best);
        cur.remove(v);
        cand.remove(v);
    }
}

/// Exact number of cliques of each size `1..=q_max` (index 0 holds K_1 counts),
/// by ordered expansion. Aborts with `CapExceeded` after `cap` search nodes.
pub fn count_cliques_by_size(
    adj: &[BitSet],
    n: usize,
    q_max: usize,
    cap: u64,
) -> Result<Vec<u128>> {
    let mut counts = vec![0u128; q_max];
    let mut budget = cap;
    let mut stack_sets: Vec<BitSet> = Vec::new();
    for v in 0..n {
        counts[0] += 1;
        let mut cand = adj[v].clone();
        restrict_above(&mut cand, v);
        count_rec(
            adj,
            cand,
            2,
            q_max,
            &mut counts,
            &mut budget,
            &mut stack_sets,
        )?;
    }
    Ok(counts)
}

fn restrict_above(set: &mut BitSet, v: usize) {
    for u in 0..=v {
        if set.contains(u) {
            set.remove(u);
        }
    }
}

fn count_rec(
    adj: &[BitSet],
    cand: BitSet,
    depth: usize,
    q_max: usize,
    counts: &mut [u128],
    budget: &mut u64,
    _scratch: &mut Vec<BitSet>,
) -> Result<()> {
    for v in cand.iter() {
        if *budget == 0 {
            return Err(Error::CapExceeded {
                what: "clique census",
                cap: 0,
            });
        }
        *budget -= 1;
        counts[depth - 1] += 1;
        if depth < q_max {
            let mut next = cand.intersection(&adj[v]);
            for u in cand.iter() {
                if u <= v {
                    next.remove(u);
                } else {
                    break;
                }
            }
            count_rec(adj, next, depth + 1, q_max, counts, budget, _scratch)?;
        }
    }
    Ok(())
}
