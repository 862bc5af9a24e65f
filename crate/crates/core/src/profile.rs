//! Profile-graph calculus: exact density polynomials in cell sizes,
//! size optimization over the simplex, finite realizations, and the
//! pruning inequalities that cut down candidate profiles.
//!
//! A profile graph is a complete multipartite graph (weight 1 across parts)
//! whose part i is internally a balanced complete s_i-partite graph of
//! weight-1/2 edges; the cells-per-part tuple (s_1 >= ... >= s_t) is the
//! profile. With part i holding an x_i fraction of the vertices split into
//! s_i equal cells, the q-clique density is
//!
//!   D = sum over (l_1..l_t), sum l_i = q, l_i <= s_i of
//!       prod_i C(s_i, l_i) (x_i/s_i)^{l_i} (1/2)^{C(l_i,2)}.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::ratio::{
    binomial_rat, format_ratio, parse_ratio, pow_rat, rat_int, simplest_within, to_f64,
};
use crate::wgraph::{Weight, WeightedGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Cells-per-part tuple, canonically sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    parts: Vec<usize>,
}

impl Profile {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a profile needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::invalid("every part must contain at least one cell"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Profile { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total number of cells.
    pub fn s(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn t(&self) -> usize {
        self.parts.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ProfileJson {
            parts: self.parts.clone(),
        })
        .expect("profile serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: ProfileJson = serde_json::from_str(text)?;
        Profile::new(parsed.parts)
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    parts: Vec<usize>,
}

/// Nonnegative part shares x_1..x_t summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeAssignment {
    x: Vec<BigRational>,
}

impl SizeAssignment {
    pub fn new(x: Vec<BigRational>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::invalid("empty size assignment"));
        }
        if x.iter().any(|v| v.is_negative()) {
            return Err(Error::invalid(
                "size assignment entries must be nonnegative",
            ));
        }
        let sum: BigRational = x.iter().sum();
        if sum.is_zero() {
            return Err(Error::invalid("size assignment must not be all zero"));
        }
        let err = (to_f64(&sum) - 1.0).abs();
        if err > 1e-12 {
            return Err(Error::invalid(format!(
                "size assignment sums to {}, not 1",
                format_ratio(&sum)
            )));
        }
        // Rescale exactly so downstream arithmetic sees a true unit sum.
        let x = x.into_iter().map(|v| v / &sum).collect();
        Ok(SizeAssignment { x })
    }

    pub fn uniform(t: usize) -> Self {
        SizeAssignment {
            x: vec![BigRational::new(BigInt::one(), BigInt::from(t as i64)); t],
        }
    }

    pub fn shares(&self) -> &[BigRational] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.x.iter().map(format_ratio).collect()
    }

    pub fn parse_entries(entries: &[String]) -> Result<Self> {
        let x = entries
            .iter()
            .map(|s| parse_ratio(s))
            .collect::<Result<Vec<_>>>()?;
        SizeAssignment::new(x)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: AssignmentJson = serde_json::from_str(text)?;
        Self::parse_entries(&parsed.x)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AssignmentJson {
            x: self.to_strings(),
        })
        .expect("assignment serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct AssignmentJson {
    x: Vec<String>,
}

/// A density in [0, 1]: a float plus the exact rational when the evaluation
/// point was rational.
#[derive(Clone, Debug)]
pub struct DensityValue {
    pub value: f64,
    pub exact: Option<BigRational>,
}

impl DensityValue {
    pub fn zero() -> Self {
        DensityValue {
            value: 0.0,
            exact: Some(BigRational::zero()),
        }
    }

    pub fn exact_string(&self) -> Option<String> {
        self.exact.as_ref().map(format_ratio)
    }
}

/// Exact q-clique density of profile `p` at part shares `x` (one per part).
pub fn density_exact(p: &Profile, x: &[BigRational], q: usize) -> BigRational {
    // dp[j] = total weight over ways to pick j vertices among processed parts.
    let mut dp = vec![BigRational::zero(); q + 1];
    dp[0] = BigRational::one();
    for (i, &s) in p.parts().iter().enumerate() {
        let per_cell = &x[i] / rat_int(s as i64);
        let mut factors = Vec::with_capacity(s.min(q) + 1);
        for l in 0..=s.min(q) {
            let f = binomial_rat(s, l)
                * pow_rat(&per_cell, l)
                * half_pow_rat(l * l.saturating_sub(1) / 2);
            factors.push(f);
        }
        let mut next = vec![BigRational::zero(); q + 1];
        for j in 0..=q {
            if dp[j].is_zero() {
                continue;
            }
            for (l, f) in factors.iter().enumerate() {
                if j + l > q {
                    break;
                }
                if !f.is_zero() {
                    next[j + l] += &dp[j] * f;
                }
            }
        }
        dp = next;
    }
    dp[q].clone()
}

/// Same sum evaluated in floating point; used inside optimizer inner loops.
pub(crate) fn density_f64(p: &Profile, x: &[f64], q: usize) -> f64 {
    let mut dp = vec![0.0f64; q + 1];
    dp[0] = 1.0;
    for (i, &s) in p.parts().iter().enumerate() {
        let per_cell = x[i] / s as f64;
        let mut factors = Vec::with_capacity(s.min(q) + 1);
        for l in 0..=s.min(q) {
            let choose = binom_f64(s, l);
            let f = choose
                * per_cell.powi(l as i32)
                * 0.5f64.powi((l * l.saturating_sub(1) / 2) as i32);
            factors.push(f);
        }
        let mut next = vec![0.0f64; q + 1];
        for j in 0..=q {
            if dp[j] == 0.0 {
                continue;
            }
            for (l, f) in factors.iter().enumerate() {
                if j + l > q {
                    break;
                }
                next[j + l] += dp[j] * f;
            }
        }
        dp = next;
    }
    dp[q]
}

fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn half_pow_rat(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// q-clique density of `p` at assignment `a`.
pub fn density_at(p: &Profile, a: &SizeAssignment, q: usize) -> Result<DensityValue> {
    if a.len() != p.t() {
        return Err(Error::invalid(format!(
            "assignment has {} entries but profile {} has {} parts",
            a.len(),
            p,
            p.t()
        )));
    }
    if q < 1 {
        return Err(Error::invalid("density_at requires q >= 1"));
    }
    let exact = density_exact(p, a.shares(), q);
    Ok(DensityValue {
        value: to_f64(&exact),
        exact: Some(exact),
    })
}

// ---------------------------------------------------------------------------
// Optimization over the simplex of part shares.
// ---------------------------------------------------------------------------

/// Groups of parts sharing a cell count; by the relative-cell symmetry, equal
/// cell counts may share a single size variable.
struct Groups {
    /// (cells per part, number of parts) per distinct cell count.
    spec: Vec<(usize, usize)>,
    /// group index of each part.
    of_part: Vec<usize>,
}

fn group_parts(p: &Profile) -> Groups {
    let mut spec: Vec<(usize, usize)> = Vec::new();
    let mut of_part = Vec::with_capacity(p.t());
    for &s in p.parts() {
        match spec.last_mut() {
            Some((v, c)) if *v == s => {
                *c += 1;
            }
            _ => spec.push((s, 1)),
        }
        of_part.push(spec.len() - 1);
    }
    Groups { spec, of_part }
}

fn assignment_from_groups(groups: &Groups, z: &[BigRational]) -> Vec<BigRational> {
    groups
        .of_part
        .iter()
        .map(|&g| &z[g] / rat_int(groups.spec[g].1 as i64))
        .collect()
}

/// Maximizes the q-clique density of `p` over part shares. Parts with equal
/// cell counts share a variable, so the search runs in the number of distinct
/// cell counts: dimension 1 is exact, dimension 2 is solved by derivative
/// sign bisection on an exact polynomial, higher dimensions use multi-start
/// projected ascent with pattern refinement and a final exact evaluation at
/// the simplified rational point.
pub fn optimize_sizes(p: &Profile, q: usize) -> Result<(SizeAssignment, DensityValue)> {
    if q < 1 {
        return Err(Error::invalid("optimize_sizes requires q >= 1"));
    }
    let s = p.s();
    let t = p.t();
    if s < q {
        return Ok((SizeAssignment::uniform(t), DensityValue::zero()));
    }
    if s == q {
        // Every positive q-clique uses all cells, so the objective is a
        // constant times the product of cell sizes: equal cells win.
        let x: Vec<BigRational> = p
            .parts()
            .iter()
            .map(|&si| BigRational::new(BigInt::from(si as i64), BigInt::from(q as i64)))
            .collect();
        let exact = density_exact(p, &x, q);
        let a = SizeAssignment::new(x)?;
        return Ok((
            a,
            DensityValue {
                value: to_f64(&exact),
                exact: Some(exact),
            },
        ));
    }

    let groups = group_parts(p);
    let m = groups.spec.len();
    match m {
        1 => {
            let z = vec![BigRational::one()];
            let x = assignment_from_groups(&groups, &z);
            let exact = density_exact(p, &x, q);
            let a = SizeAssignment::new(x)?;
            Ok((
                a,
                DensityValue {
                    value: to_f64(&exact),
                    exact: Some(exact),
                },
            ))
        }
        2 => optimize_univariate(p, q, &groups),
        _ => optimize_multistart(p, q, &groups),
    }
}

// --- univariate exact path ---

/// Dense polynomial with exact rational coefficients.
#[derive(Clone, Debug)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn zero() -> Self {
        Poly(vec![])
    }

    fn constant(c: BigRational) -> Self {
        Poly(vec![c])
    }

    fn monomial(c: BigRational, deg: usize) -> Self {
        let mut v = vec![BigRational::zero(); deg + 1];
        v[deg] = c;
        Poly(v)
    }

    fn add_assign(&mut self, other: &Poly) {
        if other.0.len() > self.0.len() {
            self.0.resize(other.0.len(), BigRational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly(out)
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int((i + 1) as i64))
                .collect(),
        )
    }

    fn eval(&self, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// (1 - z)^k expanded.
fn one_minus_z_pow(k: usize) -> Poly {
    let mut p = Poly::constant(BigRational::one());
    let lin = Poly(vec![BigRational::one(), -BigRational::one()]);
    for _ in 0..k {
        p = p.mul(&lin);
    }
    p
}

/// Exact density polynomial in z, the total share of the first group.
fn density_poly_in_z(p: &Profile, q: usize, groups: &Groups) -> Poly {
    let (c1, c2) = (groups.spec[0].1, groups.spec[1].1);
    let mut dp: Vec<Poly> = (0..=q).map(|_| Poly::zero()).collect();
    dp[0] = Poly::constant(BigRational::one());
    for (i, &s) in p.parts().iter().enumerate() {
        let first_group = groups.of_part[i] == 0;
        let denom = rat_int((if first_group { c1 } else { c2 } as i64) * s as i64);
        let mut factors: Vec<Poly> = Vec::new();
        for l in 0..=s.min(q) {
            let coeff = binomial_rat(s, l)
                * pow_rat(&(BigRational::one() / &denom), l)
                * half_pow_rat(l * l.saturating_sub(1) / 2);
            let var = if first_group {
                Poly::monomial(BigRational::one(), l)
            } else {
                one_minus_z_pow(l)
            };
            factors.push(var.scale(&coeff));
        }
        let mut next: Vec<Poly> = (0..=q).map(|_| Poly::zero()).collect();
        for j in 0..=q {
            if dp[j].0.is_empty() {
                continue;
            }
            for (l, f) in factors.iter().enumerate() {
                if j + l > q {
                    break;
                }
                next[j + l].add_assign(&dp[j].mul(f));
            }
        }
        dp = next;
    }
    dp.swap_remove(q)
}

fn optimize_univariate(
    p: &Profile,
    q: usize,
    groups: &Groups,
) -> Result<(SizeAssignment, DensityValue)> {
    let f = density_poly_in_z(p, q, groups);
    let fp = f.derivative();

    // Candidate points: the endpoints plus every sign change of f' located on
    // a dyadic grid and bisected to 1e-12.
    let grid = 256usize;
    let mut candidates: Vec<BigRational> = vec![BigRational::zero(), BigRational::one()];
    let mut prev_sign = None;
    let mut best_grid: Option<(BigRational, BigRational)> = None;
    for k in 0..=grid {
        let z = BigRational::new(BigInt::from(k as i64), BigInt::from(grid as i64));
        let val = f.eval(&z);
        if best_grid.as_ref().is_none_or(|(_, bv)| val > *bv) {
            best_grid = Some((z.clone(), val));
        }
        let sgn = fp.eval(&z).cmp(&BigRational::zero());
        if let Some(ps) = prev_sign {
            if ps != sgn
                && (ps == std::cmp::Ordering::Greater || sgn == std::cmp::Ordering::Greater)
            {
                let lo = BigRational::new(BigInt::from((k - 1) as i64), BigInt::from(grid as i64));
                candidates.push(bisect_root(&fp, lo, z.clone()));
            }
        }
        prev_sign = Some(sgn);
    }
    if let Some((z, _)) = best_grid {
        candidates.push(z);
    }
    // Also try simplified rationals next to every candidate: the maximizer is
    // frequently a small fraction such as 4/7 and deserves an exact report.
    let mut simplified: Vec<BigRational> = Vec::new();
    for c in &candidates {
        let r = simplest_within(to_f64(c), 1e-9);
        if !r.is_negative() && r <= BigRational::one() {
            simplified.push(r);
        }
    }
    candidates.extend(simplified);

    let evaluated: Vec<(BigRational, BigRational)> =
        candidates.into_iter().map(|z| (f.eval(&z), z)).collect();
    let best_v = evaluated
        .iter()
        .map(|(v, _)| v.clone())
        .max()
        .expect("nonempty candidates");
    // Among points within 1e-13 of the optimum, report the simplest one; the
    // true maximizer is often irrational and any such point certifies the
    // value far below the working tolerance.
    let slack = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(13));
    let best_z = evaluated
        .iter()
        .filter(|(v, _)| &best_v - v <= slack)
        .min_by(|(_, a), (_, b)| a.denom().cmp(b.denom()))
        .expect("optimum candidate survives")
        .1
        .clone();

    let one_minus = BigRational::one() - &best_z;
    let x = assignment_from_groups(groups, &[best_z, one_minus]);
    let exact = density_exact(p, &x, q);
    let a = SizeAssignment::new(x)?;
    Ok((
        a,
        DensityValue {
            value: to_f64(&exact),
            exact: Some(exact),
        },
    ))
}

/// Bisects a sign change of `fp` to width 1e-12 (52 halvings from a 1/256 grid).
fn bisect_root(fp: &Poly, mut lo: BigRational, mut hi: BigRational) -> BigRational {
    let slo = fp.eval(&lo).cmp(&BigRational::zero());
    for _ in 0..52 {
        let mid = (&lo + &hi) / rat_int(2);
        let sm = fp.eval(&mid).cmp(&BigRational::zero());
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (&lo + &hi) / rat_int(2)
}

// --- multi-start path for three or more distinct cell counts ---

fn optimize_multistart(
    p: &Profile,
    q: usize,
    groups: &Groups,
) -> Result<(SizeAssignment, DensityValue)> {
    let m = groups.spec.len();
    let eval = |z: &[f64]| -> f64 {
        let x: Vec<f64> = groups
            .of_part
            .iter()
            .map(|&g| z[g] / groups.spec[g].1 as f64)
            .collect();
        density_f64(p, &x, q)
    };

    // Starts: uniform, each vertex blended 3:1 with uniform, then seeded
    // random points to reach at least 16.
    let mut starts: Vec<Vec<f64>> = Vec::new();
    starts.push(vec![1.0 / m as f64; m]);
    for j in 0..m {
        let mut v = vec![0.25 / m as f64; m];
        v[j] += 0.75;
        let norm: f64 = v.iter().sum();
        for e in &mut v {
            *e /= norm;
        }
        starts.push(v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5254_4c41);
    while starts.len() < 16 {
        let mut v: Vec<f64> = (0..m).map(|_| rng.gen::<f64>().max(1e-6)).collect();
        let norm: f64 = v.iter().sum();
        for e in &mut v {
            *e /= norm;
        }
        starts.push(v);
    }

    let mut best_z = starts[0].clone();
    let mut best_v = f64::NEG_INFINITY;
    for start in &starts {
        let (z, v) = ascend(&eval, start.clone());
        if v > best_v {
            best_v = v;
            best_z = z;
        }
    }
    let (z, _v) = pattern_refine(&eval, best_z);

    // Exact evaluation at the simplified rational point.
    let mut zr: Vec<BigRational> = z[..m - 1]
        .iter()
        .map(|&v| simplest_within(v.max(0.0), 1e-9))
        .collect();
    let mut rest = BigRational::one();
    for v in &zr {
        rest -= v;
    }
    if rest.is_negative() {
        rest = BigRational::zero();
        let total: BigRational = zr.iter().sum();
        zr = zr.into_iter().map(|v| v / &total).collect();
    }
    zr.push(rest);
    let x = assignment_from_groups(groups, &zr);
    let exact = density_exact(p, &x, q);
    let a = SizeAssignment::new(x)?;
    Ok((
        a,
        DensityValue {
            value: to_f64(&exact),
            exact: Some(exact),
        },
    ))
}

fn project_simplex(v: &mut [f64]) {
    // Euclidean projection onto the unit simplex.
    let mut u: Vec<f64> = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut css = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        css += ui;
        let t = (css - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    for e in v.iter_mut() {
        *e = (*e - theta).max(0.0);
    }
    let s: f64 = v.iter().sum();
    if s > 0.0 {
        for e in v.iter_mut() {
            *e /= s;
        }
    }
}

fn ascend(eval: &impl Fn(&[f64]) -> f64, mut z: Vec<f64>) -> (Vec<f64>, f64) {
    let m = z.len();
    let mut fz = eval(&z);
    let mut step = 0.1;
    for _ in 0..400 {
        // Central-difference gradient.
        let h = 1e-7;
        let mut grad = vec![0.0; m];
        for j in 0..m {
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[j] += h;
            zm[j] -= h;
            grad[j] = (eval(&zp) - eval(&zm)) / (2.0 * h);
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut cand: Vec<f64> = z.iter().zip(&grad).map(|(a, g)| a + step * g).collect();
            project_simplex(&mut cand);
            let fc = eval(&cand);
            if fc > fz + 1e-18 {
                z = cand;
                fz = fc;
                improved = true;
                step *= 1.5;
                break;
            }
            step *= 0.5;
            if step < 1e-14 {
                break;
            }
        }
        if !improved {
            break;
        }
    }
    (z, fz)
}

fn pattern_refine(eval: &impl Fn(&[f64]) -> f64, mut z: Vec<f64>) -> (Vec<f64>, f64) {
    let m = z.len();
    let mut fz = eval(&z);
    let mut delta = 0.05;
    while delta > 1e-10 {
        let mut improved = false;
        for i in 0..m {
            for j in 0..m {
                if i == j || z[j] < delta {
                    continue;
                }
                let mut cand = z.clone();
                cand[i] += delta;
                cand[j] -= delta;
                let fc = eval(&cand);
                if fc > fz {
                    z = cand;
                    fz = fc;
                    improved = true;
                }
            }
        }
        if !improved {
            delta *= 0.5;
        }
    }
    (z, fz)
}

// ---------------------------------------------------------------------------
// Realizations.
// ---------------------------------------------------------------------------

/// Largest-remainder apportionment of `n` seats with exact rational targets.
fn apportion(targets: &[BigRational], n: usize) -> Vec<usize> {
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

/// Cell sizes for a part of `size` vertices split into `cells` classes,
/// as equal as possible, larger cells first.
fn split_cells(size: usize, cells: usize) -> Vec<usize> {
    let lo = size / cells;
    let extra = size % cells;
    (0..cells)
        .map(|c| if c < extra { lo + 1 } else { lo })
        .collect()
}

/// Builds the n-vertex realization of profile `p` at assignment `a`:
/// weight 0 inside cells, 1/2 across cells of a part, 1 across parts.
pub fn realize(p: &Profile, a: &SizeAssignment, n: usize) -> Result<WeightedGraph> {
    if a.len() != p.t() {
        return Err(Error::invalid(
            "assignment length must equal the number of parts",
        ));
    }
    if n < p.s() {
        return Err(Error::invalid(format!(
            "cannot realize profile {} on {} vertices: some cell would be empty",
            p, n
        )));
    }
    let targets: Vec<BigRational> = a.shares().iter().map(|x| x * rat_int(n as i64)).collect();
    let part_sizes = apportion(&targets, n);
    let cell_sizes: Vec<Vec<usize>> = p
        .parts()
        .iter()
        .zip(&part_sizes)
        .map(|(&s, &size)| split_cells(size, s))
        .collect();
    Ok(realize_with_cell_sizes(p, &cell_sizes))
}

/// Realization with explicit cell sizes (grouped per part). Cells may be
/// empty; the graph simply omits those vertices.
pub fn realize_with_cell_sizes(p: &Profile, cell_sizes: &[Vec<usize>]) -> WeightedGraph {
    debug_assert_eq!(cell_sizes.len(), p.t());
    let mut part_of = Vec::new();
    let mut cell_of = Vec::new();
    for (pi, sizes) in cell_sizes.iter().enumerate() {
        for (ci, &sz) in sizes.iter().enumerate() {
            for _ in 0..sz {
                part_of.push(pi);
                cell_of.push((pi, ci));
            }
        }
    }
    let n = part_of.len();
    WeightedGraph::from_fn(n, |i, j| {
        if part_of[i] != part_of[j] {
            Weight::One
        } else if cell_of[i] != cell_of[j] {
            Weight::Half
        } else {
            Weight::Zero
        }
    })
}

// ---------------------------------------------------------------------------
// Pruning rules.
// ---------------------------------------------------------------------------

/// The cell-count inequality: splitting a k-cell part is never profitable
/// once 2^{k-2} (k/(k-1))^{k-1} - k <= (q-k+1)/(s-q) fails, so a surviving
/// profile with s > q must satisfy it for its largest part (or have k <= 2).
pub fn kbound_check(k: usize, q: usize, s: usize) -> Result<bool> {
    if s <= q {
        return Err(Error::invalid("kbound_check requires s > q"));
    }
    if !(3..=q).contains(&k) {
        return Err(Error::invalid("kbound_check requires 3 <= k <= q"));
    }
    let lhs = BigRational::from_integer(BigInt::one() << (k - 2))
        * pow_rat(
            &BigRational::new(BigInt::from(k as i64), BigInt::from((k - 1) as i64)),
            k - 1,
        )
        - rat_int(k as i64);
    let rhs = BigRational::new(
        BigInt::from((q - k + 1) as i64),
        BigInt::from((s - q) as i64),
    );
    Ok(lhs <= rhs)
}

/// Which pruning claims to apply during profile enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruningFlags {
    /// Keep only profiles with s + t = p - 1; off widens to s + t <= p - 1.
    pub part_plus_cell: bool,
    /// No part carries more than q cells.
    pub cell_bound_q: bool,
    /// The k-cell inequality on the largest part when s > q.
    pub cell_bound_k: bool,
    /// No profile with both a 3-cell part and a 1-cell part.
    pub no_three_with_one: bool,
}

impl PruningFlags {
    pub fn none() -> Self {
        PruningFlags {
            part_plus_cell: true,
            cell_bound_q: false,
            cell_bound_k: false,
            no_three_with_one: false,
        }
    }

    /// Everything that is sound for this q; the 3-with-1 exclusion is only
    /// exercised for q = 5, matching how the case analysis deploys it.
    pub fn full(q: usize) -> Self {
        PruningFlags {
            part_plus_cell: true,
            cell_bound_q: true,
            cell_bound_k: true,
            no_three_with_one: q == 5,
        }
    }

    /// Widest enumeration: all profiles with s + t <= p - 1.
    pub fn loose() -> Self {
        PruningFlags {
            part_plus_cell: false,
            cell_bound_q: false,
            cell_bound_k: false,
            no_three_with_one: false,
        }
    }
}

/// All partitions of `s` into exactly `t` positive parts, descending.
pub(crate) fn all_partitions_into(s: usize, t: usize, out: &mut Vec<Vec<usize>>) {
    partitions_into(s, t, s, out);
}

fn partitions_into(s: usize, t: usize, max_part: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(
        remaining: usize,
        slots: usize,
        cap: usize,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(acc.clone());
            }
            return;
        }
        // Each remaining slot takes at least one unit.
        let hi = cap.min(remaining.saturating_sub(slots - 1));
        for part in (1..=hi).rev() {
            acc.push(part);
            rec(remaining - part, slots - 1, part, acc, out);
            acc.pop();
        }
    }
    if t == 0 || s < t {
        return;
    }
    let mut acc = Vec::with_capacity(t);
    rec(s, t, max_part.min(s), &mut acc, out);
}

/// Enumerates the candidate profiles for the (q, p) problem, in lexicographic
/// order of the canonical tuple. Returns an empty list when p < q + 2.
pub fn candidate_profiles(q: usize, p: usize, flags: PruningFlags) -> Vec<Profile> {
    let mut out = Vec::new();
    if p < q + 2 {
        return out;
    }
    let budgets: Vec<usize> = if flags.part_plus_cell {
        vec![p - 1]
    } else {
        (q + 1..=p - 1).collect()
    };
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for budget in budgets {
        for t in 1..budget {
            let s = budget - t;
            if s < q || s < t {
                continue;
            }
            partitions_into(s, t, s, &mut raw);
        }
    }
    raw.sort();
    raw.dedup();
    'outer: for parts in raw {
        let s: usize = parts.iter().sum();
        let k = parts[0];
        if flags.cell_bound_q && k > q {
            continue;
        }
        if flags.cell_bound_k
            && s > q
            && k >= 3
            && (k > q || !kbound_check(k, q, s).unwrap_or(false))
        {
            continue 'outer;
        }
        if flags.no_three_with_one && parts.contains(&3) && parts.contains(&1) {
            continue;
        }
        out.push(Profile::new(parts).expect("generated partition is valid"));
    }
    out
}

// ---------------------------------------------------------------------------
// The two-cells-twice repartition identity.
// ---------------------------------------------------------------------------

/// Count changes when two parts of two cells (each cell of size 3x) become
/// three single-cell parts of size 4x: edges +3x^2, triangles +10x^3,
/// 4-cliques -81/4 x^4. For small integer x the monomials are cross-checked
/// against exact recounts on the finite realizations.
pub fn repartition_delta(x: &BigRational) -> Result<(BigRational, BigRational, BigRational)> {
    if !x.is_positive() {
        return Err(Error::invalid("repartition_delta requires x > 0"));
    }
    let d_edges = rat_int(3) * pow_rat(x, 2);
    let d_tri = rat_int(10) * pow_rat(x, 3);
    let d_k4 = -BigRational::new(BigInt::from(81), BigInt::from(4)) * pow_rat(x, 4);
    if x.is_integer() && *x <= rat_int(8) {
        let xi = x.to_integer().to_usize().expect("small integer");
        let (re, rt, rk) = repartition_realized(xi)?;
        if re.to_ratio() != d_edges || rt.to_ratio() != d_tri || rk.to_ratio() != d_k4 {
            return Err(Error::contract(format!(
                "repartition deltas disagree with realization recount at x = {xi}"
            )));
        }
    }
    Ok((d_edges, d_tri, d_k4))
}

/// Exact count deltas measured on realizations: profile (2,2) with four cells
/// of size 3x against profile (1,1,1) with three parts of size 4x.
pub fn repartition_realized(x: usize) -> Result<(Dyadic, Dyadic, Dyadic)> {
    let before = realize_with_cell_sizes(
        &Profile::new(vec![2, 2])?,
        &[vec![3 * x, 3 * x], vec![3 * x, 3 * x]],
    );
    let after = realize_with_cell_sizes(
        &Profile::new(vec![1, 1, 1])?,
        &[vec![4 * x], vec![4 * x], vec![4 * x]],
    );
    let delta =
        |q: usize| -> Result<Dyadic> { Ok(&after.count_cliques(q)? - &before.count_cliques(q)?) };
    Ok((delta(2)?, delta(3)?, delta(4)?))
}
