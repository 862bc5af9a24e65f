//! Top-level density computation: the limiting q-clique density over
//! p-skeleton-free weighted graphs, closed-form value tables, the balanced
//! conjecture profile with its counterexamples, and part-count bounds.
//!
//! `rt_density` enumerates every profile with s + t = p - 1 and s >= q and
//! optimizes each; the pruning claims are validated as properties elsewhere
//! rather than trusted here.

use crate::error::{Error, Result};
use crate::profile::{
    candidate_profiles, kbound_check, optimize_sizes, DensityValue, Profile, PruningFlags,
    SizeAssignment,
};
use crate::ratio::{binomial_rat, format_ratio, pow_rat, to_f64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Tolerance used when comparing optimized densities against closed forms.
pub const MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct DensityResult {
    pub q: usize,
    pub p: usize,
    pub best_profile: Profile,
    /// All maximizers within 1e-12, lexicographically smallest first.
    pub ties: Vec<Profile>,
    pub assignment: SizeAssignment,
    pub value: DensityValue,
    pub closed_form: Option<ClosedFormMatch>,
    /// True when no theorem covers (q, p); the value is then the
    /// profile-graph optimum, a lower bound rather than a proven density.
    pub open_region: bool,
}

#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub id: &'static str,
    pub value: f64,
    pub exact: Option<BigRational>,
}

#[derive(Clone, Debug)]
pub struct ClosedFormMatch {
    pub form: ClosedForm,
    pub difference: f64,
    pub matches: bool,
}

/// The limiting density for quantified clique q and prohibited order p,
/// maximized over all candidate profiles.
pub fn rt_density(q: usize, p: usize) -> Result<DensityResult> {
    rt_density_opts(q, p, false)
}

/// `loose` widens the candidate set to every profile with s + t <= p - 1;
/// the extra profiles never win, which the property suite checks.
pub fn rt_density_opts(q: usize, p: usize, loose: bool) -> Result<DensityResult> {
    if q < 2 {
        return Err(Error::invalid("rt_density requires q >= 2"));
    }
    if p < q + 1 {
        return Err(Error::invalid("rt_density requires p >= q + 1"));
    }
    if p == q + 1 {
        let profile = Profile::new(vec![1])?;
        let assignment = SizeAssignment::uniform(1);
        let value = DensityValue::zero();
        let closed_form = attach_match(q, p, &value);
        return Ok(DensityResult {
            q,
            p,
            best_profile: profile.clone(),
            ties: vec![profile],
            assignment,
            value,
            closed_form,
            open_region: false,
        });
    }
    let flags = if loose {
        PruningFlags::loose()
    } else {
        PruningFlags::none()
    };
    let profiles = candidate_profiles(q, p, flags);
    if profiles.is_empty() {
        return Err(Error::invalid(format!(
            "no candidate profiles for q={q}, p={p}"
        )));
    }
    let mut evaluated: Vec<(Profile, SizeAssignment, DensityValue)> = profiles
        .into_par_iter()
        .map(|profile| {
            let (a, d) = optimize_sizes(&profile, q)?;
            Ok((profile, a, d))
        })
        .collect::<Result<Vec<_>>>()?;
    evaluated.sort_by(|a, b| a.0.cmp(&b.0));

    let vmax = evaluated
        .iter()
        .map(|(_, _, d)| d.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut near: Vec<&(Profile, SizeAssignment, DensityValue)> = evaluated
        .iter()
        .filter(|(_, _, d)| d.value >= vmax - 1e-12)
        .collect();
    // Refine with exact comparisons when available.
    if near.iter().all(|(_, _, d)| d.exact.is_some()) && near.len() > 1 {
        let emax = near
            .iter()
            .map(|(_, _, d)| d.exact.clone().unwrap())
            .max()
            .unwrap();
        near.retain(|(_, _, d)| d.exact.as_ref() == Some(&emax));
    }
    let ties: Vec<Profile> = near.iter().map(|(pr, _, _)| pr.clone()).collect();
    let (best_profile, assignment, value) = near[0].clone();
    let closed_form = attach_match(q, p, &value);
    let open_region = closed_form.is_none();
    Ok(DensityResult {
        q,
        p,
        best_profile,
        ties,
        assignment,
        value,
        closed_form,
        open_region,
    })
}

fn attach_match(q: usize, p: usize, value: &DensityValue) -> Option<ClosedFormMatch> {
    closed_form(q, p).map(|form| {
        let difference = (form.value - value.value).abs();
        ClosedFormMatch {
            difference,
            matches: difference <= MATCH_TOL,
            form,
        }
    })
}

fn half_pow(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

fn exact_form(id: &'static str, exact: BigRational) -> ClosedForm {
    ClosedForm {
        id,
        value: to_f64(&exact),
        exact: Some(exact),
    }
}

/// (1/q)^q (1/2)^e
fn inv_q_pow(q: usize, e: usize) -> BigRational {
    pow_rat(&BigRational::new(BigInt::one(), BigInt::from(q as i64)), q) * half_pow(e)
}

/// C(h, q) / h^q, the odd-p closed form.
fn odd_form(h: usize, q: usize) -> BigRational {
    binomial_rat(h, q) * pow_rat(&BigRational::new(BigInt::one(), BigInt::from(h as i64)), q)
}

/// Even-p closed form: the optimum over the profile with one 2-cell part and
/// h - 2 singleton parts, evaluated by the profile optimizer.
fn even_form(h: usize, q: usize) -> DensityValue {
    let mut parts = vec![2usize];
    parts.extend(std::iter::repeat_n(1, h.saturating_sub(2)));
    let profile = Profile::new(parts).expect("valid even-form profile");
    let (_, d) = optimize_sizes(&profile, q).expect("even-form optimization");
    d
}

/// Closed-form value of the density when (q, p) is covered by a theorem.
pub fn closed_form(q: usize, p: usize) -> Option<ClosedForm> {
    if q < 2 || p < q + 1 {
        return None;
    }
    if p == q + 1 {
        return Some(exact_form("adjacent-zero", BigRational::zero()));
    }
    match q {
        2 => {
            if p.is_multiple_of(2) {
                let h = p / 2;
                let v = BigRational::new(
                    BigInt::from(3 * h as i64 - 5),
                    BigInt::from(6 * h as i64 - 4),
                );
                Some(exact_form("q2-even", v))
            } else {
                Some(exact_form("q2-odd", odd_form(p / 2, 2)))
            }
        }
        3 => {
            if p == 5 {
                return Some(exact_form("offset-2", inv_q_pow(3, 3)));
            }
            if p.is_multiple_of(2) {
                let d = even_form(p / 2, 3);
                Some(ClosedForm {
                    id: "q3-even",
                    value: d.value,
                    exact: d.exact,
                })
            } else {
                Some(exact_form("q3-odd", odd_form(p / 2, 3)))
            }
        }
        4 => match p {
            6 => Some(exact_form("q4-small", inv_q_pow(4, 6))),
            7 => Some(exact_form("q4-small", inv_q_pow(4, 2))),
            _ if p.is_multiple_of(2) => {
                let d = even_form(p / 2, 4);
                Some(ClosedForm {
                    id: "q4-even",
                    value: d.value,
                    exact: d.exact,
                })
            }
            _ => Some(exact_form("q4-odd", odd_form(p / 2, 4))),
        },
        5 => match p {
            7 => Some(exact_form("q5-small", inv_q_pow(5, 10))),
            8 => Some(exact_form("q5-small", inv_q_pow(5, 4))),
            9 => Some(exact_form("q5-small", inv_q_pow(5, 2))),
            10 => Some(exact_form(
                "q5-small",
                binomial_rat(6, 5)
                    * pow_rat(&BigRational::new(BigInt::one(), BigInt::from(6)), 5)
                    * half_pow(2),
            )),
            11 => {
                // Maximum of z^3 (1-z)(8-7z)/1024 at z = (30 - 2 sqrt 15)/35:
                // (675 + 228 sqrt 15)/4802000. (The two-cell-pair objective
                // for profile (2,2,1,1); certified numerically, the surd is
                // not represented algebraically.)
                let value = (675.0 + 228.0 * 15f64.sqrt()) / 4_802_000.0;
                Some(ClosedForm {
                    id: "q5-surd",
                    value,
                    exact: None,
                })
            }
            _ if p.is_multiple_of(2) => {
                let d = even_form(p / 2, 5);
                Some(ClosedForm {
                    id: "q5-even",
                    value: d.value,
                    exact: d.exact,
                })
            }
            _ => Some(exact_form("q5-odd", odd_form(p / 2, 5))),
        },
        _ => {
            if p == q + 2 {
                Some(exact_form("offset-2", inv_q_pow(q, q * (q - 1) / 2)))
            } else if p == q + 3 {
                let e = (q / 2) * (q / 2 - 1) / 2 + (q.div_ceil(2)) * (q.div_ceil(2) - 1) / 2;
                Some(exact_form("offset-3", inv_q_pow(q, e)))
            } else if p == q + 4 {
                let e: usize = (0..3).map(|i| c2((q + i) / 3)).sum();
                Some(exact_form("offset-4", inv_q_pow(q, e)))
            } else if p >= 5 * q {
                if p.is_multiple_of(2) {
                    let d = even_form(p / 2, q);
                    Some(ClosedForm {
                        id: "large-p-even",
                        value: d.value,
                        exact: d.exact,
                    })
                } else {
                    Some(exact_form("large-p-odd", odd_form(p / 2, q)))
                }
            } else {
                None
            }
        }
    }
}

fn c2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Balanced profile of the s-cells-in-t-parts family: s mod t parts carry
/// ceil(s/t) cells, the rest floor(s/t).
pub fn balanced_profile(s: usize, t: usize) -> Result<Profile> {
    if t == 0 || s < t {
        return Err(Error::invalid("balanced_profile requires s >= t >= 1"));
    }
    let r = s % t;
    let mut parts = vec![s.div_ceil(t); r];
    parts.extend(std::iter::repeat_n(s / t, t - r));
    Profile::new(parts)
}

/// The profile the balanced conjecture predicts to be optimal: s = q cells in
/// p - q - 1 parts when p <= 2q - 1, the near-halved split when p >= 2q.
pub fn conjecture_profile(q: usize, p: usize) -> Result<Profile> {
    if q < 3 || p < q + 2 {
        return Err(Error::invalid(
            "conjecture_profile requires q >= 3 and p >= q + 2",
        ));
    }
    if p < 2 * q {
        balanced_profile(q, p - q - 1)
    } else {
        balanced_profile((p - 1).div_ceil(2), (p - 1) / 2)
    }
}

#[derive(Clone, Debug)]
pub struct GapResult {
    pub value: f64,
    /// Exact gap when both optima are exact rationals.
    pub exact: Option<BigRational>,
}

/// optimize(pb) - optimize(pa): positive when pb beats pa.
pub fn counterexample_gap(q: usize, pa: &Profile, pb: &Profile) -> Result<GapResult> {
    let (_, da) = optimize_sizes(pa, q)?;
    let (_, db) = optimize_sizes(pb, q)?;
    let exact = match (&da.exact, &db.exact) {
        (Some(a), Some(b)) => Some(b - a),
        _ => None,
    };
    Ok(GapResult {
        value: db.value - da.value,
        exact,
    })
}

#[derive(Clone, Debug)]
pub struct CounterexampleCertificate {
    pub k: usize,
    pub q: usize,
    /// Exact left side C(q+k, q) (q/(q+k))^q (1/2)^{2k}.
    pub lhs: BigRational,
    /// Exact right side 1 + c.
    pub rhs: BigRational,
    /// Conjectured profile and the denser alternative used for verification.
    pub conjectured: Profile,
    pub alternative: Profile,
    /// Density gap between the two profiles and the bar it must clear.
    pub gap: f64,
    pub gap_required: f64,
}

#[derive(Clone, Debug)]
pub enum CounterexampleSearch {
    Found(CounterexampleCertificate),
    NotFoundBelow(usize),
}

/// Least q >= 3k + 4 with C(q+k, q) (q/(q+k))^q (1/2)^{2k} >= 1 + c,
/// together with profile-level verification that the wider family beats the
/// conjectured one by a factor of at least 1 + c.
pub fn counterexample_search(
    k: usize,
    c: &BigRational,
    q_max: usize,
) -> Result<CounterexampleSearch> {
    if k < 1 {
        return Err(Error::invalid("counterexample_search requires k >= 1"));
    }
    if !(c > &BigRational::zero()) {
        return Err(Error::invalid("counterexample_search requires c > 0"));
    }
    let rhs = BigRational::one() + c;
    for q in (3 * k + 4)..=q_max {
        let lhs = binomial_rat(q + k, q)
            * pow_rat(
                &BigRational::new(BigInt::from(q as i64), BigInt::from((q + k) as i64)),
                q,
            )
            * half_pow(2 * k);
        if lhs >= rhs {
            // Implied profile pair: for even q - 3k the q-cell family against
            // the all-pairs family on q + k cells; otherwise the singleton
            // family at p = 2q + 1 against its widened variant.
            let (conjectured, alternative) = if (q - 3 * k).is_multiple_of(2) {
                let l = (q - 3 * k) / 2;
                let mut a = vec![2usize; l];
                a.extend(std::iter::repeat_n(1, 3 * k));
                let b = vec![2usize; l + 2 * k];
                (Profile::new(a)?, Profile::new(b)?)
            } else {
                let a = vec![1usize; q];
                let mut b = vec![2usize; 2 * k];
                b.extend(std::iter::repeat_n(1, q - 3 * k));
                (Profile::new(a)?, Profile::new(b)?)
            };
            let (_, da) = optimize_sizes(&conjectured, q)?;
            let gap = counterexample_gap(q, &conjectured, &alternative)?;
            let gap_required = to_f64(c) * da.value;
            if gap.value + 1e-15 < gap_required {
                return Err(Error::contract(format!(
                    "inequality holds at q={q} but the profile gap {} misses the required {}",
                    gap.value, gap_required
                )));
            }
            return Ok(CounterexampleSearch::Found(CounterexampleCertificate {
                k,
                q,
                lhs,
                rhs,
                conjectured,
                alternative,
                gap: gap.value,
                gap_required,
            }));
        }
    }
    Ok(CounterexampleSearch::NotFoundBelow(q_max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartBoundRegime {
    /// p >= 5q with q >= 5: surviving profiles must have s - t <= 1,
    /// equivalently t >= floor((p-1)/2).
    LargeP,
    /// q >= 6 with p - 1 - q >= c q / ln q: surviving profiles must have
    /// t >= c q / ln q.
    SmallOffset,
    /// Outside both ranges; vacuously true.
    OutOfRange,
}

#[derive(Clone, Debug)]
pub struct PartBoundOutcome {
    pub holds: bool,
    pub regime: PartBoundRegime,
    pub min_parts: Option<usize>,
    pub required: Option<f64>,
}

/// Checks the part-count lower bounds over every profile with s + t = p - 1
/// and s >= q that survives the cell-count pruning (and, in the large-p
/// regime, the two-cell-pair repartition which forces all but at most one
/// part to a single cell).
pub fn verify_part_bounds(q: usize, p: usize, c: f64) -> PartBoundOutcome {
    let large = q >= 5 && p >= 5 * q;
    let small = q >= 6 && !large && (p as f64 - 1.0 - q as f64) >= c * q as f64 / (q as f64).ln();
    if !large && !small {
        return PartBoundOutcome {
            holds: true,
            regime: PartBoundRegime::OutOfRange,
            min_parts: None,
            required: None,
        };
    }
    let mut min_parts: Option<usize> = None;
    for t in 1..p - 1 {
        let s = p - 1 - t;
        if s < q || s < t {
            continue;
        }
        if feasible_profile_exists(q, s, t, large) {
            min_parts = Some(min_parts.map_or(t, |m| m.min(t)));
        }
    }
    let required = if large {
        ((p - 1) / 2) as f64
    } else {
        c * q as f64 / (q as f64).ln()
    };
    let holds = min_parts.is_none_or(|m| m as f64 >= required);
    PartBoundOutcome {
        holds,
        regime: if large {
            PartBoundRegime::LargeP
        } else {
            PartBoundRegime::SmallOffset
        },
        min_parts,
        required: Some(required),
    }
}

/// Is there a partition of s into t parts that survives pruning? The allowed
/// cell counts per part form a prefix 1..=k_max (the cell inequality is
/// monotone in k), so existence is t <= s <= t * k_max; the repartition rule
/// additionally caps the number of multi-cell parts at one.
fn feasible_profile_exists(q: usize, s: usize, t: usize, repartition: bool) -> bool {
    let k_max = max_allowed_cells(q, s);
    if !(t <= s && s <= t * k_max) {
        return false;
    }
    if repartition {
        // At most one part with two or more cells: s <= t - 1 + k_max.
        s <= t - 1 + k_max
    } else {
        true
    }
}

pub(crate) fn max_allowed_cells(q: usize, s: usize) -> usize {
    if s <= q {
        return q.min(s);
    }
    let mut k_max = 2usize.min(s);
    for k in 3..=q.min(s) {
        if kbound_check(k, q, s).unwrap_or(false) {
            k_max = k;
        } else {
            break;
        }
    }
    k_max
}

/// One row of the density table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub q: usize,
    pub p: usize,
    pub profile: String,
    pub assignment: String,
    pub value: f64,
    pub exact: Option<String>,
    pub closed_form: Option<f64>,
    /// None marks an open cell with no covering theorem.
    pub matches: Option<bool>,
}

/// Density grid over the requested ranges, skipping invalid cells (p <= q).
pub fn density_table(q_range: (usize, usize), p_range: (usize, usize)) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for q in q_range.0..=q_range.1 {
        for p in p_range.0..=p_range.1 {
            if p < q + 1 {
                continue;
            }
            let r = rt_density(q, p)?;
            rows.push(TableRow {
                q,
                p,
                profile: format!("{}", r.best_profile),
                assignment: r.assignment.to_strings().join("+"),
                value: r.value.value,
                exact: r.value.exact.as_ref().map(format_ratio),
                closed_form: r.closed_form.as_ref().map(|m| m.form.value),
                matches: r.closed_form.as_ref().map(|m| m.matches),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn profile(parts: &[usize]) -> Profile {
        Profile::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn density_small_cases() {
        let r = rt_density(4, 8).unwrap();
        assert_eq!(r.best_profile, profile(&[2, 1, 1]));
        assert_eq!(r.value.exact.clone().unwrap(), rat(1, 512));
        assert!(r.closed_form.unwrap().matches);

        let r = rt_density(5, 10).unwrap();
        assert_eq!(r.best_profile, profile(&[2, 2, 2]));
        assert_eq!(r.value.exact.clone().unwrap(), rat(1, 5184));

        let r = rt_density(3, 7).unwrap();
        assert_eq!(r.value.exact.clone().unwrap(), rat(1, 27));

        let r = rt_density(5, 6).unwrap();
        assert_eq!(r.value.value, 0.0);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form(2, 4).unwrap().exact.unwrap(), rat(1, 8));
        assert_eq!(closed_form(2, 6).unwrap().exact.unwrap(), rat(2, 7));
        // One part of six cells halved across two parts: exponent C(3,2)+C(3,2).
        assert_eq!(closed_form(6, 9).unwrap().exact.unwrap(), inv_q_pow(6, 6));
        let surd = closed_form(5, 11).unwrap();
        assert!(surd.exact.is_none());
        assert!((surd.value - 3.244_565_187_287e-4).abs() < 1e-13);
        assert!(closed_form(6, 20).is_none());
        assert_eq!(
            closed_form(7, 8).unwrap().exact.unwrap(),
            BigRational::zero()
        );
    }

    #[test]
    fn conjecture_profiles() {
        assert_eq!(conjecture_profile(5, 10).unwrap(), profile(&[2, 1, 1, 1]));
        assert_eq!(
            conjecture_profile(5, 11).unwrap(),
            profile(&[1, 1, 1, 1, 1])
        );
        assert_eq!(conjecture_profile(7, 12).unwrap(), profile(&[2, 2, 2, 1]));
        assert!(conjecture_profile(2, 9).is_err());
    }

    #[test]
    fn counterexample_gaps() {
        let g = counterexample_gap(5, &profile(&[2, 1, 1, 1]), &profile(&[2, 2, 2])).unwrap();
        assert_eq!(g.exact.unwrap(), rat(1, 5184) - rat(1, 6250));
        assert!(g.value > 0.0);
        let g = counterexample_gap(5, &profile(&[1; 5]), &profile(&[2, 2, 1, 1])).unwrap();
        assert!(g.value > 0.0);
        let g = counterexample_gap(5, &profile(&[2, 2, 2]), &profile(&[2, 2, 2])).unwrap();
        assert_eq!(g.value, 0.0);
    }

    #[test]
    fn counterexample_search_matches_certificate() {
        let found = counterexample_search(1, &rat(1, 100), 64).unwrap();
        let CounterexampleSearch::Found(cert) = found else {
            panic!("expected a certificate")
        };
        assert_eq!(cert.q, 10);
        // C(11,10) (10/11)^10 / 4 exactly.
        let expect = binomial_rat(11, 10) * pow_rat(&rat(10, 11), 10) * rat(1, 4);
        assert_eq!(cert.lhs, expect);
        assert!(cert.lhs >= cert.rhs);
        assert!(cert.gap >= cert.gap_required);

        // With a bar of 1/10 the same q no longer suffices.
        let found = counterexample_search(1, &rat(1, 10), 64).unwrap();
        let CounterexampleSearch::Found(cert) = found else {
            panic!("expected a certificate")
        };
        assert!(cert.q > 10);
    }

    #[test]
    fn part_bound_regimes() {
        let out = verify_part_bounds(3, 7, 0.5);
        assert_eq!(out.regime, PartBoundRegime::OutOfRange);
        assert!(out.holds);

        let out = verify_part_bounds(5, 25, 0.5);
        assert_eq!(out.regime, PartBoundRegime::LargeP);
        assert!(out.holds);
        assert_eq!(out.min_parts, Some(12));

        let q = 64usize;
        let p = q + (0.5 * q as f64 / (q as f64).ln()).ceil() as usize + 1;
        let out = verify_part_bounds(q, p, 0.5);
        assert_eq!(out.regime, PartBoundRegime::SmallOffset);
        assert!(
            out.holds,
            "min parts {:?} required {:?}",
            out.min_parts, out.required
        );
    }

    #[test]
    fn zero_for_adjacent_orders() {
        let r = rt_density(7, 8).unwrap();
        assert_eq!(r.value.value, 0.0);
        assert!(r.closed_form.unwrap().matches);
    }
}
