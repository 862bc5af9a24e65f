//! Property suite: structural identities of weighted clique counting,
//! skeleton monotonicity, density symmetries, and the solver-level
//! invariants that back the pruning and conjecture analysis.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtlab_core::dyadic::Dyadic;
use rtlab_core::profile::{density_at, optimize_sizes, Profile, SizeAssignment};
use rtlab_core::ratio::{rat, rat_int};
use rtlab_core::skeleton::{is_skeleton_free, max_skeleton_value};
use rtlab_core::solver::{balanced_profile, conjecture_profile, rt_density, rt_density_opts};
use rtlab_core::wgraph::{Weight, WeightedGraph};

fn weight_strategy() -> impl Strategy<Value = Weight> {
    prop_oneof![
        3 => Just(Weight::Zero),
        2 => Just(Weight::Half),
        2 => Just(Weight::One),
    ]
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(weight_strategy(), m).prop_map(move |ws| {
            let mut it = ws.into_iter();
            WeightedGraph::from_fn(n, |_, _| it.next().unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn handshake_identity(g in graph_strategy(7), q in 2usize..=4) {
        let total: Dyadic = (0..g.n()).map(|v| g.vertex_q_weight(v, q).unwrap()).sum();
        let rhs = Dyadic::from_int(q as i64) * g.count_cliques(q).unwrap();
        prop_assert_eq!(total, rhs);
    }

    #[test]
    fn raising_an_edge_never_decreases_counts(g in graph_strategy(6), q in 2usize..=4, pick in any::<u64>()) {
        let n = g.n();
        let i = (pick % n as u64) as usize;
        let j = ((pick / 7) % n as u64) as usize;
        prop_assume!(i != j);
        let raised = match g.weight(i, j) {
            Weight::Zero => Weight::Half,
            _ => Weight::One,
        };
        let h = WeightedGraph::from_fn(n, |a, b| {
            if (a, b) == (i.min(j), i.max(j)) { raised } else { g.weight(a, b) }
        });
        prop_assert!(h.count_cliques(q).unwrap() >= g.count_cliques(q).unwrap());
    }

    #[test]
    fn clique_weight_factorizes(g in graph_strategy(7), pick in any::<u64>()) {
        let n = g.n();
        let v = (pick % n as u64) as usize;
        let s: Vec<usize> = (0..n).filter(|&u| u != v && (pick >> (u + 8)) & 1 == 1).collect();
        prop_assume!(!s.is_empty());
        let mut whole = s.clone();
        whole.push(v);
        let lhs = g.clique_weight(&whole).unwrap();
        let rhs = g.pi_product(v, &s).unwrap() * g.clique_weight(&s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn skeleton_value_is_monotone_under_edge_raise(g in graph_strategy(6), pick in any::<u64>()) {
        let n = g.n();
        let i = (pick % n as u64) as usize;
        let j = ((pick / 11) % n as u64) as usize;
        prop_assume!(i != j);
        let raised = match g.weight(i, j) {
            Weight::Zero => Weight::Half,
            _ => Weight::One,
        };
        let h = WeightedGraph::from_fn(n, |a, b| {
            if (a, b) == (i.min(j), i.max(j)) { raised } else { g.weight(a, b) }
        });
        let (v_g, _) = max_skeleton_value(&g);
        let (v_h, _) = max_skeleton_value(&h);
        prop_assert!(v_h >= v_g);
        // Freeness is monotone in the order as well.
        for p in 2..=10 {
            if is_skeleton_free(&g, p) {
                prop_assert!(is_skeleton_free(&g, p + 1));
            }
        }
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>()) {
        // Random profile realization: decomposition must reproduce the graph
        // and its profile.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let t = rng.gen_range(1..=3usize);
        let parts: Vec<usize> = (0..t).map(|_| rng.gen_range(1..=3usize)).collect();
        let profile = Profile::new(parts).unwrap();
        let sizes: Vec<Vec<usize>> = profile
            .parts()
            .iter()
            .map(|&s| (0..s).map(|_| rng.gen_range(1..=3usize)).collect())
            .collect();
        let g = rtlab_core::profile::realize_with_cell_sizes(&profile, &sizes);
        let d = g.cellular_decomposition().unwrap();
        prop_assert_eq!(d.implied_graph(), g.clone());
        prop_assert_eq!(d.profile(), profile);
    }

    #[test]
    fn density_is_symmetric_in_equal_parts(x_raw in proptest::collection::vec(1u32..=8, 3), q in 2usize..=4) {
        // Profile (2,2,1): swapping the two 2-cell parts' shares leaves the
        // density unchanged.
        let profile = Profile::new(vec![2, 2, 1]).unwrap();
        let total: u32 = x_raw.iter().sum();
        let shares: Vec<_> = x_raw.iter().map(|&v| rat(v as i64, total as i64)).collect();
        let a = SizeAssignment::new(shares.clone()).unwrap();
        let swapped = SizeAssignment::new(vec![shares[1].clone(), shares[0].clone(), shares[2].clone()]).unwrap();
        let da = density_at(&profile, &a, q).unwrap().exact.unwrap();
        let db = density_at(&profile, &swapped, q).unwrap().exact.unwrap();
        prop_assert_eq!(da, db);
    }
}

/// Naive oracle for the skeleton value: enumerate every nested pair of
/// vertex sets directly from the definition.
fn naive_skeleton_value(g: &WeightedGraph) -> usize {
    let n = g.n();
    let mut best = 0usize;
    for y_mask in 0u32..(1 << n) {
        let ys: Vec<usize> = (0..n).filter(|&v| y_mask >> v & 1 == 1).collect();
        if !ys
            .iter()
            .enumerate()
            .all(|(i, &a)| ys[i + 1..].iter().all(|&b| g.weight(a, b) != Weight::Zero))
        {
            continue;
        }
        let mut x_best = 0usize;
        let mut sub = y_mask;
        loop {
            let xs: Vec<usize> = (0..n).filter(|&v| sub >> v & 1 == 1).collect();
            let is_strong = xs
                .iter()
                .enumerate()
                .all(|(i, &a)| xs[i + 1..].iter().all(|&b| g.weight(a, b) == Weight::One));
            if is_strong {
                x_best = x_best.max(xs.len());
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & y_mask;
        }
        best = best.max(ys.len() + x_best);
    }
    best
}

/// Naive oracle for N_q: sum the product definition over all q-subsets.
fn naive_count(g: &WeightedGraph, q: usize) -> Dyadic {
    let n = g.n();
    let mut total = Dyadic::zero();
    let mut pick: Vec<usize> = (0..q).collect();
    if q > n {
        return total;
    }
    loop {
        total += &g.clique_weight(&pick).unwrap();
        let mut i = q;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if pick[i] != i + n - q {
                pick[i] += 1;
                for j in i + 1..q {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[test]
fn optimized_searches_match_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0A11);
    for trial in 0..120 {
        let n = 3 + (trial % 4);
        let g = WeightedGraph::random_with(n, &mut rng, 0.35, 0.25);
        let (value, witness) = max_skeleton_value(&g);
        assert_eq!(
            value,
            naive_skeleton_value(&g),
            "skeleton value, trial {trial}"
        );
        assert_eq!(witness.value(), value);
        // The witness itself satisfies the definition.
        for (i, &a) in witness.y.iter().enumerate() {
            for &b in &witness.y[i + 1..] {
                assert_ne!(g.weight(a, b), Weight::Zero);
            }
        }
        for (i, &a) in witness.x.iter().enumerate() {
            assert!(witness.y.contains(&a));
            for &b in &witness.x[i + 1..] {
                assert_eq!(g.weight(a, b), Weight::One);
            }
        }
        for q in 1..=n {
            assert_eq!(
                g.count_cliques(q).unwrap(),
                naive_count(&g, q),
                "N_{q}, trial {trial}"
            );
        }
    }
}

#[test]
fn density_monotone_in_prohibited_order() {
    for q in 2..=5usize {
        let mut last = -1.0f64;
        for p in q + 1..=14 {
            let r = rt_density(q, p).unwrap();
            assert!(
                r.value.value >= last - 1e-12,
                "density dropped at ({q},{p}): {} < {last}",
                r.value.value
            );
            last = r.value.value;
        }
    }
}

/// Where the balanced conjecture is proven (q <= 4 with p >= 2q, and q = 5
/// with p >= 12), the solver's best profile is the balanced one.
#[test]
fn conjecture_positive_region() {
    for q in 2..=4usize {
        for p in (2 * q).max(q + 2)..=14 {
            let r = rt_density(q, p).unwrap();
            let expected = if q >= 3 {
                conjecture_profile(q, p).unwrap()
            } else {
                balanced_profile((p - 1).div_ceil(2), (p - 1) / 2).unwrap()
            };
            assert!(
                r.ties.contains(&expected),
                "({q},{p}): best {} (ties {:?}) != balanced {expected}",
                r.best_profile,
                r.ties.len()
            );
        }
    }
    for p in 12..=14usize {
        let r = rt_density(5, p).unwrap();
        assert!(
            r.ties.contains(&conjecture_profile(5, p).unwrap()),
            "(5,{p})"
        );
    }
}

/// Profiles with s + t < p - 1 never beat the strict candidates.
#[test]
fn loose_profiles_never_win() {
    for (q, p) in [(2usize, 8usize), (3, 9), (4, 10), (5, 11), (5, 12), (2, 14)] {
        let strict = rt_density(q, p).unwrap();
        let loose = rt_density_opts(q, p, true).unwrap();
        assert!(
            (strict.value.value - loose.value.value).abs() <= 1e-12,
            "loose enumeration changed the optimum at ({q},{p})"
        );
    }
}

/// The optimizer reports the univariate maximizer exactly on the cases with a
/// closed-form optimum.
#[test]
fn optimizer_closed_points() {
    let (a, d) = optimize_sizes(&Profile::new(vec![2, 1]).unwrap(), 2).unwrap();
    assert_eq!(a.shares()[0], rat(4, 7));
    assert_eq!(d.exact.unwrap(), rat(2, 7));
    // The even-order family: x* = 4/(3s - 2) reproduces (3s-5)/(6s-4).
    for s in 2..=7usize {
        let mut parts = vec![2usize];
        parts.extend(std::iter::repeat(1).take(s - 2));
        let (a, d) = optimize_sizes(&Profile::new(parts).unwrap(), 2).unwrap();
        assert_eq!(
            d.exact.unwrap(),
            rat(3 * s as i64 - 5, 6 * s as i64 - 4),
            "even-order optimum at s = {s}"
        );
        assert_eq!(
            a.shares()[0],
            rat(4, 3 * s as i64 - 2),
            "maximizer at s = {s}"
        );
    }
}

/// Every skeleton-free graph on four vertices reduces without losing weight
/// and never beats the exhaustive maximum.
#[test]
fn reductions_bounded_by_exhaustive_maximum() {
    for (q, p) in [(2usize, 4usize), (2, 5), (3, 5)] {
        let report = rtlab_core::oracle::brute_force_max(4, q, p).unwrap();
        for code in 0..729u32 {
            let mut trits = code;
            let mut weights = Vec::with_capacity(6);
            for _ in 0..6 {
                weights.push(match trits % 3 {
                    0 => Weight::Zero,
                    1 => Weight::Half,
                    _ => Weight::One,
                });
                trits /= 3;
            }
            let mut it = weights.into_iter();
            let g = WeightedGraph::from_fn(4, |_, _| it.next().unwrap());
            if !is_skeleton_free(&g, p) {
                continue;
            }
            let before = g.count_cliques(q).unwrap();
            let red = rtlab_core::symmetrize::zykov_reduce(&g, q, p).unwrap();
            let after = red.graph.count_cliques(q).unwrap();
            assert!(
                after >= before,
                "reduction lost weight at code {code}, ({q},{p})"
            );
            assert!(
                after <= report.max_value,
                "reduction beat the maximum at code {code}, ({q},{p})"
            );
        }
    }
}

#[test]
fn handshake_on_realizations() {
    let p = Profile::new(vec![2, 2]).unwrap();
    let a = SizeAssignment::uniform(2);
    let g = rtlab_core::profile::realize(&p, &a, 12).unwrap();
    let total: Dyadic = (0..12).map(|v| g.vertex_q_weight(v, 4).unwrap()).sum();
    assert_eq!(total, Dyadic::from_int(4) * g.count_cliques(4).unwrap());
    assert_eq!(g.count_cliques(1).unwrap(), Dyadic::from_int(12));
    assert_eq!(rat_int(0), g.count_cliques(13).unwrap().to_ratio());
}
