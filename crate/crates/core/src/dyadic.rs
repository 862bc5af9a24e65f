//! Exact dyadic rationals: values of the form `m / 2^e`.
//!
//! Clique weights over the alphabet {0, 1/2, 1} and all derived counts are
//! dyadic, so this type is closed under the arithmetic the rest of the crate
//! performs. Canonical form keeps the mantissa odd (or zero with exponent 0).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: 0,
        }
    }

    /// 1 / 2^k.
    pub fn half_pow(k: u32) -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: k,
        }
    }

    /// `num / 2^exp`, normalized.
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic {
            num: BigInt::from(v),
            exp: 0,
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        // Strip common factors of two while the exponent allows it.
        while self.exp > 0 && (&self.num % 2_i32).is_zero() {
            self.num /= 2_i32;
            self.exp -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_ratio().to_f64().unwrap_or(f64::NAN)
    }

    /// Exact string form as a reduced fraction, e.g. `81/4` or `2`.
    pub fn to_exact_string(&self) -> String {
        if self.exp == 0 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact_string())
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare a/2^e1 with b/2^e2 via a*2^(e2-max)... align to max exponent.
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let a = &self.num << (e - self.exp);
        let b = &rhs.num << (e - rhs.exp);
        Dyadic::new(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let a = &self.num << (e - self.exp);
        let b = &rhs.num << (e - rhs.exp);
        Dyadic::new(a - b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        let mut acc = Dyadic::zero();
        for d in iter {
            acc += &d;
        }
        acc
    }
}

impl Dyadic {
    pub fn abs(&self) -> Dyadic {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_keeps_mantissa_odd() {
        let d = Dyadic::new(BigInt::from(12), 4); // 12/16 = 3/4
        assert_eq!(d.numerator(), &BigInt::from(3));
        assert_eq!(d.exponent(), 2);
        assert_eq!(d.to_exact_string(), "3/4");
    }

    #[test]
    fn integers_have_exponent_zero() {
        let d = Dyadic::new(BigInt::from(8), 2); // 8/4 = 2
        assert_eq!(d.to_exact_string(), "2");
        assert_eq!(d.exponent(), 0);
    }

    #[test]
    fn arithmetic() {
        let h = Dyadic::half_pow(1);
        let q = &h * &h;
        assert_eq!(q.to_exact_string(), "1/4");
        let s = &q + &h; // 3/4
        assert_eq!(s.to_exact_string(), "3/4");
        assert_eq!((&s - &q).to_exact_string(), "1/2");
        assert!(s > q);
        assert_eq!(
            (&Dyadic::from_int(81) * &Dyadic::half_pow(2)).to_exact_string(),
            "81/4"
        );
    }

    #[test]
    fn ordering_across_exponents() {
        let a = Dyadic::new(BigInt::from(5), 3); // 5/8
        let b = Dyadic::new(BigInt::from(3), 2); // 3/4
        assert!(a < b);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
    }
}
