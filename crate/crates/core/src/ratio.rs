//! Helpers for arbitrary-precision rationals: binomials, powers, parsing of
//! `"a/b"` and decimal strings, and simplest-rational recovery from floats.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

pub fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(big(v))
}

/// C(n, k) as a big integer; zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(big(n as i64), big(k as i64))
}

pub fn binomial_rat(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

/// r^k for nonnegative k.
pub fn pow_rat(r: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"a/b"`, an integer, or a decimal like `"0.125"` into an exact rational.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad rational numerator in {s:?}")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad rational denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::invalid(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::invalid(format!("bad decimal {s:?}")))?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    let num: BigInt = s
        .parse()
        .map_err(|_| Error::invalid(format!("bad rational {s:?}")))?;
    Ok(BigRational::from_integer(num))
}

pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Simplest rational within `tol` of `x`, by walking the continued fraction
/// of `x` and stopping at the first convergent that is close enough.
pub fn simplest_within(x: f64, tol: f64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    for _ in 0..64 {
        let a = v.floor();
        let ai = BigInt::from(a as i128);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        let approx = BigRational::new(p2.clone(), q2.clone());
        let err = (to_f64(&approx) - x.abs()).abs();
        if err <= tol || q2 > BigInt::from(1_000_000_000_000_i64) {
            let r = if neg { -approx } else { approx };
            return r;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac <= f64::EPSILON {
            break;
        }
        v = 1.0 / frac;
    }
    let r = BigRational::new(p1, q1.max(BigInt::one()));
    if neg {
        -r
    } else {
        r
    }
}

pub fn ratio_is_nonneg(r: &BigRational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_ratio("4/7").unwrap(), rat(4, 7));
        assert_eq!(parse_ratio("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_ratio("3").unwrap(), rat_int(3));
        assert_eq!(parse_ratio("-1/2").unwrap(), rat(-1, 2));
        assert!(parse_ratio("x").is_err());
        assert!(parse_ratio("1/0").is_err());
    }

    #[test]
    fn simplest_rational_recovers_small_fractions() {
        assert_eq!(simplest_within(4.0 / 7.0, 1e-10), rat(4, 7));
        assert_eq!(simplest_within(0.4, 1e-10), rat(2, 5));
        assert_eq!(simplest_within(1.0, 1e-10), rat_int(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 5), big(6));
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(2, 5), big(0));
    }
}
