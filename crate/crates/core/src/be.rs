//! Finite geometric realizations of Bollobás-Erdős graphs and their
//! multipartite assemblies, with exact clique censuses and structural
//! measurements.
//!
//! Points live on the unit sphere in R^{d+1}. Each part of the assembly is an
//! s_i-class construction: its vertex budget splits into domains, one point
//! per class is placed within mu/4 of each domain center, and adjacency
//! follows the three distance rules: across classes of one part an edge means
//! distance < sqrt(2) - mu (near-hemisphere), inside a class an edge means
//! distance > 2 - mu (near-antipodal), and across parts everything is joined.
//! With mu <= 1/4 the rules alone force K_4-freeness of each class pair and
//! triangle-freeness inside each class, independent of the dimension, so the
//! census checks those exactly. Domain centers are sampled near-uniformly
//! rather than from an equal-measure partition; every exactly-testable
//! property depends only on the distance rules.

use crate::bitset::BitSet;
use crate::cliques;
use crate::error::{Error, Result};
use crate::profile::SizeAssignment;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Guard band around the distance thresholds; points are resampled until no
/// squared distance lands this close to a decision boundary.
const GUARD: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct SphereConfig {
    /// Sphere dimension: points are unit vectors in R^{d+1}.
    pub d: usize,
    /// Total vertex budget.
    pub n: usize,
    pub eps: f64,
    pub seed: u64,
}

impl SphereConfig {
    pub fn mu(&self) -> f64 {
        self.eps / (self.d as f64).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::invalid("sphere dimension must be at least 2"));
        }
        if self.n == 0 || !self.n.is_multiple_of(2) {
            return Err(Error::invalid("vertex budget must be positive and even"));
        }
        if !self.eps.is_finite() || self.eps <= 0.0 {
            return Err(Error::invalid("eps must be positive"));
        }
        if self.mu() > 0.25 {
            return Err(Error::invalid(format!(
                "mu = eps/sqrt(d) = {:.6} exceeds 1/4; the dimension-free clique exclusions need mu <= 1/4",
                self.mu()
            )));
        }
        Ok(())
    }
}

/// A geometric graph: unit points, their cell (class) and part labels, and
/// the adjacency determined by the distance rules.
#[derive(Clone)]
pub struct GeometricGraph {
    pub points: Vec<Vec<f64>>,
    pub cell_of: Vec<usize>,
    pub part_of: Vec<usize>,
    /// Part label of each cell.
    pub cell_part: Vec<usize>,
    pub mu: f64,
    adj: Vec<BitSet>,
}

impl GeometricGraph {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn cells(&self) -> usize {
        self.cell_part.len()
    }

    pub fn parts(&self) -> usize {
        self.cell_part.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn adjacency(&self) -> &[BitSet] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Graph JSON with every edge at weight "1".
    pub fn to_graph_json(&self) -> String {
        let mut edges = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].iter() {
                if v > u {
                    edges.push((u, v, "1".to_string()));
                }
            }
        }
        #[derive(Serialize)]
        struct GraphJson {
            n: usize,
            edges: Vec<(usize, usize, String)>,
        }
        serde_json::to_string_pretty(&GraphJson { n: self.n(), edges }).expect("graph serializes")
    }

    /// Sidecar JSON: the points with their class labels.
    pub fn to_points_json(&self) -> String {
        #[derive(Serialize)]
        struct PointsJson<'a> {
            mu: f64,
            cell_of: &'a [usize],
            part_of: &'a [usize],
            points: &'a [Vec<f64>],
        }
        serde_json::to_string_pretty(&PointsJson {
            mu: self.mu,
            cell_of: &self.cell_of,
            part_of: &self.part_of,
            points: &self.points,
        })
        .expect("points serialize")
    }
}

fn unit_gaussian(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gauss(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// A point within chord distance mu/4 of `center`, on the sphere.
fn perturbed(rng: &mut ChaCha8Rng, center: &[f64], mu: f64) -> Vec<f64> {
    loop {
        let dir = unit_gaussian(rng, center.len());
        let scale = mu / 8.0 * rng.gen::<f64>();
        let raw: Vec<f64> = center
            .iter()
            .zip(&dir)
            .map(|(c, g)| c + scale * g)
            .collect();
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        let p: Vec<f64> = raw.into_iter().map(|x| x / norm).collect();
        if dist2(&p, center).sqrt() <= mu / 4.0 {
            return p;
        }
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Builds the assembly with s cells in t parts on the configured budget:
/// s mod t parts carry ceil(s/t) cells, the rest floor(s/t); part sizes come
/// from the assignment by largest remainder and must split evenly into the
/// part's cells (one point per cell per domain).
pub fn build_construction(
    cfg: &SphereConfig,
    s: usize,
    t: usize,
    sizes: &SizeAssignment,
) -> Result<GeometricGraph> {
    cfg.validate()?;
    if t == 0 || s < t {
        return Err(Error::invalid("construction requires s >= t >= 1"));
    }
    if sizes.len() != t {
        return Err(Error::invalid(
            "size assignment must have one entry per part",
        ));
    }
    let mu = cfg.mu();
    let r = s % t;
    let cells_per_part: Vec<usize> = (0..t)
        .map(|i| if i < r { s.div_ceil(t) } else { s / t })
        .collect();
    let targets: Vec<BigRational> = sizes
        .shares()
        .iter()
        .map(|x| x * BigRational::from_integer(num_bigint::BigInt::from(cfg.n as i64)))
        .collect();
    let part_sizes = apportion_usize(&targets, cfg.n);
    for (i, (&size, &cells)) in part_sizes.iter().zip(&cells_per_part).enumerate() {
        if size % cells != 0 {
            return Err(Error::invalid(format!(
                "part {i} holds {size} vertices which does not split into {cells} equal cells"
            )));
        }
        if size == 0 {
            return Err(Error::invalid(format!("part {i} received no vertices")));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dim = cfg.d + 1;
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(cfg.n);
    let mut centers: Vec<Vec<f64>> = Vec::new(); // per vertex, its domain center
    let mut cell_of = Vec::with_capacity(cfg.n);
    let mut part_of = Vec::with_capacity(cfg.n);
    let mut cell_part = Vec::new();
    let mut next_cell = 0usize;
    for (pi, (&size, &cells)) in part_sizes.iter().zip(&cells_per_part).enumerate() {
        let domains = size / cells;
        let base_cell = next_cell;
        for _ in 0..cells {
            cell_part.push(pi);
            next_cell += 1;
        }
        for _ in 0..domains {
            let center = unit_gaussian(&mut rng, dim);
            for c in 0..cells {
                points.push(perturbed(&mut rng, &center, mu));
                centers.push(center.clone());
                cell_of.push(base_cell + c);
                part_of.push(pi);
            }
        }
    }

    // Resample any point whose pairwise squared distance falls inside the
    // guard band of a decision threshold.
    let t_cross = (std::f64::consts::SQRT_2 - mu) * (std::f64::consts::SQRT_2 - mu);
    let t_anti = (2.0 - mu) * (2.0 - mu);
    let n = points.len();
    let mut attempts = 0usize;
    'outer: loop {
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    continue;
                }
                let d2 = dist2(&points[u], &points[v]);
                let threshold = if cell_of[u] == cell_of[v] {
                    t_anti
                } else {
                    t_cross
                };
                if (d2 - threshold).abs() < GUARD {
                    attempts += 1;
                    if attempts > 10_000 {
                        return Err(Error::CapExceeded {
                            what: "guard-band resampling",
                            cap: 10_000,
                        });
                    }
                    points[v] = perturbed(&mut rng, &centers[v], mu);
                    continue 'outer;
                }
            }
        }
        break;
    }

    let mut adj = vec![BitSet::new(n); n];
    for u in 0..n {
        for v in u + 1..n {
            let edge = if part_of[u] != part_of[v] {
                true
            } else {
                let d2 = dist2(&points[u], &points[v]);
                if cell_of[u] == cell_of[v] {
                    d2 > t_anti
                } else {
                    d2 < t_cross
                }
            };
            if edge {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    Ok(GeometricGraph {
        points,
        cell_of,
        part_of,
        cell_part,
        mu,
        adj,
    })
}

/// The classic two-class construction on one part.
pub fn build_be_pair(cfg: &SphereConfig) -> Result<GeometricGraph> {
    build_construction(cfg, 2, 1, &SizeAssignment::uniform(1))
}

fn apportion_usize(targets: &[BigRational], n: usize) -> Vec<usize> {
    let mut base: Vec<usize> = Vec::with_capacity(targets.len());
    let mut rems: Vec<(usize, BigRational)> = Vec::with_capacity(targets.len());
    let mut used = 0usize;
    for (i, t) in targets.iter().enumerate() {
        let fl = t.floor();
        let b = fl.to_integer().to_usize().unwrap_or(0);
        base.push(b);
        used += b;
        rems.push((i, t - fl));
    }
    rems.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut left = n.saturating_sub(used);
    for (i, _) in rems {
        if left == 0 {
            break;
        }
        base[i] += 1;
        left -= 1;
    }
    base
}

#[derive(Clone, Debug)]
pub struct CliqueCensus {
    /// counts[l-1] = number of complete subgraphs on l vertices, l = 1..=q_max.
    pub counts: Vec<u128>,
    pub omega: usize,
}

impl CliqueCensus {
    pub fn count(&self, l: usize) -> u128 {
        self.counts.get(l - 1).copied().unwrap_or(0)
    }
}

/// Exact clique counts up to q_max plus the clique number. `cap` bounds the
/// number of search nodes; exceeding it is an explicit error.
pub fn clique_census(g: &GeometricGraph, q_max: usize, cap: u64) -> Result<CliqueCensus> {
    if q_max < 2 {
        return Err(Error::invalid("clique census requires q_max >= 2"));
    }
    let counts = cliques::count_cliques_by_size(g.adjacency(), g.n(), q_max, cap)?;
    let omega = cliques::max_clique_size(g.adjacency(), &BitSet::full(g.n()));
    Ok(CliqueCensus { counts, omega })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairStats {
    pub cell_a: usize,
    pub cell_b: usize,
    pub same_part: bool,
    pub edges: u64,
    pub density: f64,
    pub min_degree_a_to_b: usize,
    pub max_degree_a_to_b: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceBound {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructuralReport {
    pub n: usize,
    pub cell_sizes: Vec<usize>,
    pub within_cell_edges: Vec<u64>,
    pub pair_stats: Vec<PairStats>,
    pub independence: IndependenceBound,
}

impl StructuralReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Densities per cell pair, within-class edge counts, degree ranges, and
/// independence-number bounds (exact up to 60 vertices, otherwise a greedy
/// lower bound against a clique-cover upper bound, labeled as such).
pub fn structural_report(g: &GeometricGraph) -> StructuralReport {
    let n = g.n();
    let cells = g.cells();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for v in 0..n {
        members[g.cell_of[v]].push(v);
    }
    let cell_sizes: Vec<usize> = members.iter().map(|m| m.len()).collect();
    let mut within_cell_edges = vec![0u64; cells];
    for (c, mem) in members.iter().enumerate() {
        for (i, &u) in mem.iter().enumerate() {
            for &v in &mem[i + 1..] {
                if g.adjacent(u, v) {
                    within_cell_edges[c] += 1;
                }
            }
        }
    }
    let mut pair_stats = Vec::new();
    for a in 0..cells {
        for b in a + 1..cells {
            let mut edges = 0u64;
            let mut min_deg = usize::MAX;
            let mut max_deg = 0usize;
            for &u in &members[a] {
                let deg = members[b].iter().filter(|&&v| g.adjacent(u, v)).count();
                edges += deg as u64;
                min_deg = min_deg.min(deg);
                max_deg = max_deg.max(deg);
            }
            let density = edges as f64 / (members[a].len() * members[b].len()) as f64;
            pair_stats.push(PairStats {
                cell_a: a,
                cell_b: b,
                same_part: g.cell_part[a] == g.cell_part[b],
                edges,
                density,
                min_degree_a_to_b: if members[a].is_empty() { 0 } else { min_deg },
                max_degree_a_to_b: max_deg,
            });
        }
    }
    let independence = independence_bounds(g);
    StructuralReport {
        n,
        cell_sizes,
        within_cell_edges,
        pair_stats,
        independence,
    }
}

fn independence_bounds(g: &GeometricGraph) -> IndependenceBound {
    let n = g.n();
    if n <= 60 {
        // Exact: maximum clique of the complement.
        let comp: Vec<BitSet> = (0..n)
            .map(|u| {
                let mut row = BitSet::full(n);
                row.remove(u);
                row.subtract(&g.adjacency()[u]);
                row
            })
            .collect();
        let alpha = cliques::max_clique_size(&comp, &BitSet::full(n));
        return IndependenceBound {
            lower: alpha,
            upper: alpha,
            exact: true,
        };
    }
    // Greedy independent set by ascending degree, and per cell (cells are
    // near-independent, so the best single cell is usually the winner).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| g.degree(v));
    let mut blocked = BitSet::new(n);
    let mut lower = 0usize;
    for &v in &order {
        if !blocked.contains(v) {
            blocked.insert(v);
            blocked.union_with(&g.adjacency()[v]);
            lower += 1;
        }
    }
    for cell in 0..g.cells() {
        let mut taken = 0usize;
        let mut hit = BitSet::new(n);
        for v in 0..n {
            if g.cell_of[v] == cell && !hit.contains(v) {
                taken += 1;
                hit.union_with(&g.adjacency()[v]);
            }
        }
        lower = lower.max(taken);
    }
    // Greedy clique cover: any partition into cliques bounds alpha above.
    let mut unassigned = BitSet::full(n);
    let mut upper = 0usize;
    while let Some(v) = unassigned.first() {
        let mut clique = BitSet::new(n);
        clique.insert(v);
        unassigned.remove(v);
        let mut cands = unassigned.intersection(&g.adjacency()[v]);
        while let Some(u) = cands.first() {
            clique.insert(u);
            unassigned.remove(u);
            cands.intersect_with(&g.adjacency()[u]);
        }
        upper += 1;
    }
    IndependenceBound {
        lower,
        upper,
        exact: false,
    }
}
