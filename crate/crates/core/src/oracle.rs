//! Exhaustive small-n ground truth: the maximum N_q over every weighted graph
//! on n vertices that is p-skeleton-free, by enumerating all 3^C(n,2) weight
//! assignments. Used to validate the symmetrization theorem and the skeleton
//! machinery at finite scale.
//!
//! The enumeration is a mixed-radix counter over edge slots, sharded into
//! contiguous ranges for parallel workers; merging takes the exact maximum,
//! sums witness counts, and keeps the smallest witness index, so the result
//! is independent of scheduling.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::profile::{realize_with_cell_sizes, Profile};
use crate::wgraph::{Weight, WeightedGraph};
use num_bigint::BigInt;
use rayon::prelude::*;

/// Default cap on the exhaustive vertex count; n = 6 means 14,348,907 graphs.
pub const MAX_EXHAUSTIVE_N: usize = 6;

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub q: usize,
    pub p: usize,
    pub max_value: Dyadic,
    pub witness_count: u64,
    pub profile_witness: Option<Profile>,
    pub graphs_scanned: u64,
}

/// Weight assignment decoded from a counter value; edge slots are the pairs
/// (i, j), i < j, in lexicographic order, each a trit 0 -> 0, 1 -> 1/2, 2 -> 1.
fn decode(n: usize, mut code: u64) -> SmallGraph {
    let mut g = SmallGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let trit = (code % 3) as u8;
            code /= 3;
            if trit > 0 {
                g.set(i, j, trit);
            }
        }
    }
    g
}

/// Bitmask graph for the hot loop; masks fit in u32 for n <= 6.
#[derive(Clone)]
struct SmallGraph {
    n: usize,
    support: [u32; 8],
    strong: [u32; 8],
    half: [u32; 8],
}

impl SmallGraph {
    fn new(n: usize) -> Self {
        SmallGraph {
            n,
            support: [0; 8],
            strong: [0; 8],
            half: [0; 8],
        }
    }

    fn set(&mut self, i: usize, j: usize, trit: u8) {
        self.support[i] |= 1 << j;
        self.support[j] |= 1 << i;
        if trit == 2 {
            self.strong[i] |= 1 << j;
            self.strong[j] |= 1 << i;
        } else {
            self.half[i] |= 1 << j;
            self.half[j] |= 1 << i;
        }
    }

    fn weight(&self, i: usize, j: usize) -> Weight {
        if self.strong[i] >> j & 1 == 1 {
            Weight::One
        } else if self.half[i] >> j & 1 == 1 {
            Weight::Half
        } else {
            Weight::Zero
        }
    }

    fn to_weighted(&self) -> WeightedGraph {
        WeightedGraph::from_fn(self.n, |i, j| self.weight(i, j))
    }

    /// Largest |X| + |Y| over skeletons, via DFS over support cliques with a
    /// nested strong-clique DFS; stops early once `stop_at` is reached.
    fn skeleton_value_at_least(&self, stop_at: usize) -> bool {
        let full = (1u32 << self.n) - 1;
        let mut best = 0usize;
        self.skel_rec(0, full, 0, &mut best, stop_at);
        best >= stop_at
    }

    fn skel_rec(&self, y_mask: u32, cand: u32, y_len: usize, best: &mut usize, stop_at: usize) {
        if *best >= stop_at {
            return;
        }
        let value = y_len + self.max_strong_within(y_mask);
        if value > *best {
            *best = value;
            if *best >= stop_at {
                return;
            }
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let next = c & self.support[v];
            self.skel_rec(y_mask | (1 << v), next, y_len + 1, best, stop_at);
        }
    }

    fn max_strong_within(&self, mask: u32) -> usize {
        let mut best = 0usize;
        self.strong_rec(mask, 0, &mut best);
        best
    }

    fn strong_rec(&self, cand: u32, len: usize, best: &mut usize) {
        if len > *best {
            *best = len;
        }
        if len + cand.count_ones() as usize <= *best {
            return;
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            self.strong_rec(c & self.strong[v], len + 1, best);
        }
    }

    /// N_q scaled by 2^scale_exp, as an exact integer.
    fn scaled_nq(&self, q: usize, scale_exp: u32) -> u64 {
        if q > self.n {
            return 0;
        }
        let full = (1u32 << self.n) - 1;
        let mut total = 0u64;
        self.count_rec(q, full, 0, 0, scale_exp, &mut total);
        total
    }

    fn count_rec(
        &self,
        q: usize,
        cand: u32,
        members: u32,
        halves: u32,
        scale_exp: u32,
        total: &mut u64,
    ) {
        let depth = members.count_ones() as usize;
        if depth == q {
            *total += 1u64 << (scale_exp - halves);
            return;
        }
        if depth + (cand.count_ones() as usize) < q {
            return;
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let extra = (self.half[v] & members).count_ones();
            let next = c & self.support[v];
            self.count_rec(
                q,
                next,
                members | (1 << v),
                halves + extra,
                scale_exp,
                total,
            );
        }
    }
}

pub fn brute_force_max(n: usize, q: usize, p: usize) -> Result<SearchReport> {
    brute_force_impl(n, q, p, 0).map(|(r, _)| r)
}

/// As `brute_force_max`, also returning the first `witness_limit` maximizing
/// graphs in counter order.
pub fn brute_force_with_witnesses(
    n: usize,
    q: usize,
    p: usize,
    witness_limit: usize,
) -> Result<(SearchReport, Vec<WeightedGraph>)> {
    brute_force_impl(n, q, p, witness_limit)
}

fn brute_force_impl(
    n: usize,
    q: usize,
    p: usize,
    witness_limit: usize,
) -> Result<(SearchReport, Vec<WeightedGraph>)> {
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::invalid(format!(
            "exhaustive search supports 1 <= n <= {MAX_EXHAUSTIVE_N}"
        )));
    }
    if q < 2 || q >= p {
        return Err(Error::invalid("exhaustive search requires 2 <= q < p"));
    }
    let m = n * (n - 1) / 2;
    let scale_exp = m as u32;
    let total: u64 = 3u64.pow(m as u32);
    let shards: u64 = (rayon::current_num_threads() as u64 * 8).clamp(1, total);
    let chunk = total.div_ceil(shards);

    #[derive(Clone)]
    struct Shard {
        best: u64,
        count: u64,
        first_code: u64,
    }

    let merged = (0..shards)
        .into_par_iter()
        .map(|sh| {
            let lo = sh * chunk;
            let hi = ((sh + 1) * chunk).min(total);
            let mut acc = Shard {
                best: 0,
                count: 0,
                first_code: u64::MAX,
            };
            for code in lo..hi {
                let g = decode(n, code);
                if g.skeleton_value_at_least(p) {
                    continue;
                }
                let v = g.scaled_nq(q, scale_exp);
                if v > acc.best {
                    acc.best = v;
                    acc.count = 1;
                    acc.first_code = code;
                } else if v == acc.best {
                    acc.count += 1;
                    acc.first_code = acc.first_code.min(code);
                }
            }
            acc
        })
        .reduce(
            || Shard {
                best: 0,
                count: 0,
                first_code: u64::MAX,
            },
            |a, b| {
                if a.best > b.best {
                    a
                } else if b.best > a.best {
                    b
                } else {
                    Shard {
                        best: a.best,
                        count: a.count + b.count,
                        first_code: a.first_code.min(b.first_code),
                    }
                }
            },
        );

    let max_value = Dyadic::new(BigInt::from(merged.best), scale_exp);
    let (profile_max, profile_witness) = profile_realization_max(n, q, p)?;
    let witness_profile = if profile_max == max_value {
        Some(profile_witness)
    } else {
        None
    };

    let mut witnesses = Vec::new();
    if witness_limit > 0 {
        for code in 0..total {
            let g = decode(n, code);
            if g.skeleton_value_at_least(p) {
                continue;
            }
            if g.scaled_nq(q, scale_exp) == merged.best {
                witnesses.push(g.to_weighted());
                if witnesses.len() >= witness_limit {
                    break;
                }
            }
        }
    }

    Ok((
        SearchReport {
            n,
            q,
            p,
            max_value,
            witness_count: merged.count,
            profile_witness: witness_profile,
            graphs_scanned: total,
        },
        witnesses,
    ))
}

/// Maximum N_q over realizations of profiles with s + t <= p - 1 and every
/// composition of n into s nonempty cells, plus one attaining profile.
pub fn profile_realization_max(n: usize, q: usize, p: usize) -> Result<(Dyadic, Profile)> {
    let mut best = Dyadic::zero();
    let mut best_profile = Profile::new(vec![1])?;
    for budget in 2..=p.saturating_sub(1) {
        for t in 1..budget {
            let s = budget - t;
            if s < t || s > n {
                continue;
            }
            let mut partitions = Vec::new();
            crate::profile::all_partitions_into(s, t, &mut partitions);
            for parts in partitions {
                let profile = Profile::new(parts.clone())?;
                // Compositions of n into s positive cell sizes, grouped by part.
                let mut sizes = vec![1usize; s];
                loop {
                    let total: usize = sizes.iter().sum();
                    if total == n {
                        let grouped = group_sizes(&parts, &sizes);
                        let g = realize_with_cell_sizes(&profile, &grouped);
                        let v = g.count_cliques(q)?;
                        if v > best {
                            best = v.clone();
                            best_profile = profile.clone();
                        }
                    }
                    if !next_composition(&mut sizes, n) {
                        break;
                    }
                }
            }
        }
    }
    Ok((best, best_profile))
}

fn group_sizes(parts: &[usize], sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut grouped = Vec::with_capacity(parts.len());
    let mut at = 0;
    for &cells in parts {
        grouped.push(sizes[at..at + cells].to_vec());
        at += cells;
    }
    grouped
}

/// Advances a positive composition with fixed length and total at most `n`;
/// iterates all vectors of positive entries summing to <= n, odometer style.
fn next_composition(sizes: &mut [usize], n: usize) -> bool {
    let s = sizes.len();
    let mut i = 0;
    loop {
        if i == s {
            return false;
        }
        sizes[i] += 1;
        let total: usize = sizes.iter().sum();
        if total <= n {
            return true;
        }
        sizes[i] = 1;
        i += 1;
    }
}

/// True iff some profile realization attains the exhaustive maximum.
pub fn verify_zykov_small(n: usize, q: usize, p: usize) -> Result<bool> {
    let report = brute_force_max(n, q, p)?;
    Ok(report.profile_witness.is_some())
}
