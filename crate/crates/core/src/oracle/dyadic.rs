use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact dyadic rational `num / 2^exp`, kept with `num` odd (or zero with
/// `exp = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Dyadic { num: num.into(), exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Self {
        Dyadic::new(1, 0)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num >>= 1;
            self.exp -= 1;
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    /// Multiplies by `2^k` for any integer `k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            let shift = (k as u64).min(self.exp as u64) as u32;
            let extra = k as u64 - shift as u64;
            Dyadic::new(&self.num << extra, self.exp - shift)
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (&self.num << (e - self.exp), &other.num << (e - other.exp), e)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    /// If `self / other` is an integer power of two, its exponent.
    pub fn log2_ratio(&self, other: &Self) -> Option<i64> {
        if self.num.is_zero() || other.num.is_zero() || self.num.sign() != other.num.sign() {
            return None;
        }
        let (tz_a, tz_b) = (self.num.trailing_zeros()?, other.num.trailing_zeros()?);
        if (&self.num >> tz_a) != (&other.num >> tz_b) {
            return None;
        }
        Some(tz_a as i64 - tz_b as i64 - self.exp as i64 + other.exp as i64)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let half = Dyadic::new(1, 1);
        let quarter = Dyadic::new(2, 3);
        assert_eq!(quarter, Dyadic::new(1, 2));
        assert_eq!(&half + &quarter, Dyadic::new(3, 2));
        assert_eq!(&half - &half, Dyadic::zero());
        assert_eq!(half.mul_pow2(1), Dyadic::one());
        assert_eq!(Dyadic::new(3, 0).mul_pow2(-2), Dyadic::new(3, 2));
        assert!(quarter < half);
        assert_eq!(half.log2_ratio(&quarter), Some(1));
        assert_eq!(quarter.log2_ratio(&half), Some(-1));
        assert_eq!(Dyadic::new(3, 2).log2_ratio(&half), None);
        assert_eq!(Dyadic::new(3, 0).to_string(), "3");
        assert_eq!(Dyadic::new(3, 3).to_string(), "3/8");
    }
}
