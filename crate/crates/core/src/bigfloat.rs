//! Fixed-point big reals: a BigInt mantissa scaled by 2^-prec_bits.
//! Enough for evaluating symbolic volumes (logarithms of small integers and
//! zeta constants) at arbitrary decimal precision; no general float tower.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::{Error, Result};

/// value = mant / 2^prec_bits. All binary operations require equal
/// precisions; mixing precisions is a caller bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    prec_bits: u32,
}

/// Working bits for a requested decimal precision, with guard bits covering
/// series truncation and rounding noise.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
}

impl BigFloat {
    pub fn zero(prec_bits: u32) -> Self {
        BigFloat { mant: BigInt::zero(), prec_bits }
    }

    pub fn from_bigint(n: &BigInt, prec_bits: u32) -> Self {
        BigFloat { mant: n << prec_bits, prec_bits }
    }

    pub fn from_rat(q: &Rat, prec_bits: u32) -> Self {
        // Round to nearest.
        let num = q.numer() << (prec_bits + 1);
        let mant = (num / q.denom() + BigInt::one()) >> 1;
        BigFloat { mant, prec_bits }
    }

    pub fn prec_bits(&self) -> u32 {
        self.prec_bits
    }

    pub fn to_rat(&self) -> Rat {
        Rat::new(self.mant.clone(), BigInt::one() << self.prec_bits)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), prec_bits: self.prec_bits }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -self.mant.clone(), prec_bits: self.prec_bits }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.prec_bits, other.prec_bits, "mixed BigFloat precisions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        BigFloat { mant: &self.mant + &other.mant, prec_bits: self.prec_bits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        BigFloat { mant: &self.mant - &other.mant, prec_bits: self.prec_bits }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        BigFloat {
            mant: (&self.mant * &other.mant) >> self.prec_bits,
            prec_bits: self.prec_bits,
        }
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        BigFloat {
            mant: (&self.mant * q.numer()) / q.denom(),
            prec_bits: self.prec_bits,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.check(other);
        assert!(!other.mant.is_zero(), "division by zero");
        BigFloat {
            mant: (&self.mant << self.prec_bits) / &other.mant,
            prec_bits: self.prec_bits,
        }
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.check(other);
        self.mant.abs().cmp(&other.mant.abs())
    }

    /// 2^-k at this precision; the unit for truncation thresholds.
    pub fn ulp_threshold(prec_bits: u32, k: u32) -> Self {
        BigFloat {
            mant: if k <= prec_bits { BigInt::one() << (prec_bits - k) } else { BigInt::zero() },
            prec_bits,
        }
    }

    /// Natural logarithm for strictly positive values: peel off powers of
    /// two, then the atanh series at (m-1)/(m+1) with m in [1, 2).
    pub fn ln(&self) -> Result<Self> {
        if !self.mant.is_positive() {
            return Err(Error::InvalidInput("ln of a non-positive value".into()));
        }
        let bits = self.prec_bits;
        // self = m * 2^e with mant(m) in [2^bits, 2^{bits+1}).
        let e = self.mant.bits() as i64 - 1 - bits as i64;
        let m = BigFloat {
            mant: shift(&self.mant, -e),
            prec_bits: bits,
        };
        let one = BigFloat::from_bigint(&BigInt::one(), bits);
        let t = m.sub(&one).div(&m.add(&one));
        let t2 = t.mul(&t);
        // 2 * sum t^{2k+1}/(2k+1)
        let mut power = t.clone();
        let mut sum = t;
        let mut k = 1u64;
        loop {
            power = power.mul(&t2);
            if power.is_zero() {
                break;
            }
            let term = BigFloat {
                mant: &power.mant / BigInt::from(2 * k + 1),
                prec_bits: bits,
            };
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            k += 1;
        }
        let ln_m = BigFloat {
            mant: sum.mant << 1,
            prec_bits: bits,
        };
        let ln2 = ln_2(bits);
        Ok(ln_m.add(&BigFloat {
            mant: (&ln2.mant * BigInt::from(e)),
            prec_bits: bits,
        }))
    }

    /// Decimal rendering with the given number of fractional digits,
    /// round-to-nearest.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (&self.mant * &scale) << 1;
        let rounded: BigInt = (shift(&scaled, -(self.prec_bits as i64)) + BigInt::one()) >> 1;
        let neg = rounded.is_negative();
        let digits_str = rounded.abs().to_string();
        let (int_part, frac_part) = if digits_str.len() > digits as usize {
            let split = digits_str.len() - digits as usize;
            (digits_str[..split].to_string(), digits_str[split..].to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", digits_str, width = digits as usize))
        };
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec_bits as f64 / std::f64::consts::LOG2_10) as u32;
        write!(f, "{}", self.to_decimal_string(digits.min(50)))
    }
}

fn shift(n: &BigInt, e: i64) -> BigInt {
    if e >= 0 {
        n << (e as u64)
    } else {
        n >> ((-e) as u64)
    }
}

/// atanh(1/q) for integer q >= 2, by the integer series
/// sum_k 1/((2k+1) q^{2k+1}).
fn atanh_inv(q: u64, prec_bits: u32) -> BigFloat {
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut power = (BigInt::one() << prec_bits) / BigInt::from(q);
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &q2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    BigFloat { mant: sum, prec_bits }
}

/// atan(1/q) for integer q >= 2, alternating integer series.
fn atan_inv(q: u64, prec_bits: u32) -> BigFloat {
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut power = (BigInt::one() << prec_bits) / BigInt::from(q);
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &q2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    BigFloat { mant: sum, prec_bits }
}

/// ln 2 = 2 atanh(1/3).
pub fn ln_2(prec_bits: u32) -> BigFloat {
    let a = atanh_inv(3, prec_bits);
    BigFloat { mant: a.mant << 1, prec_bits }
}

/// Machin's formula: pi = 16 atan(1/5) - 4 atan(1/239).
pub fn pi(prec_bits: u32) -> BigFloat {
    let a = atan_inv(5, prec_bits);
    let b = atan_inv(239, prec_bits);
    BigFloat {
        mant: (a.mant << 4) - (b.mant << 2),
        prec_bits,
    }
}

/// ln n for a positive integer, via ln of the exact value.
pub fn ln_u64(n: u64, prec_bits: u32) -> Result<BigFloat> {
    BigFloat::from_bigint(&BigInt::from(n), prec_bits).ln()
}

/// ln of a positive BigInt.
pub fn ln_bigint(n: &BigInt, prec_bits: u32) -> Result<BigFloat> {
    BigFloat::from_bigint(n, prec_bits).ln()
}

/// Agreement check: |a - b| < 10^-digits.
pub fn agree_to_digits(a: &BigFloat, b: &BigFloat, digits: u32) -> bool {
    let diff = a.sub(b).abs();
    let tol = BigFloat::from_rat(
        &Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits)),
        a.prec_bits(),
    );
    diff.cmp_abs(&tol) == Ordering::Less
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436026";
    const LN7_50: &str = "1.94591014905531330510535274344317972963708472958186";
    const PI_50: &str = "3.14159265358979323846264338327950288419716939937511";

    #[test]
    fn decimal_rendering() {
        let bits = bits_for_digits(30);
        let x = BigFloat::from_rat(&rat(-3, 2), bits);
        assert_eq!(x.to_decimal_string(3), "-1.500");
        let y = BigFloat::from_rat(&rat(1, 3), bits);
        assert_eq!(y.to_decimal_string(6), "0.333333");
        assert_eq!(BigFloat::from_rat(&rat_int(42), bits).to_decimal_string(0), "42");
    }

    #[test]
    fn ln_of_two_and_seven() {
        let bits = bits_for_digits(50);
        assert_eq!(ln_2(bits).to_decimal_string(50), LN2_50);
        assert_eq!(ln_u64(7, bits).unwrap().to_decimal_string(50), LN7_50);
        // ln(1) = 0
        assert!(ln_u64(1, bits).unwrap().is_zero());
        assert!(BigFloat::zero(bits).ln().is_err());
    }

    #[test]
    fn ln_is_additive() {
        let bits = bits_for_digits(40);
        let l6 = ln_u64(6, bits).unwrap();
        let sum = ln_u64(2, bits).unwrap().add(&ln_u64(3, bits).unwrap());
        assert!(agree_to_digits(&l6, &sum, 40));
    }

    #[test]
    fn machin_pi() {
        let bits = bits_for_digits(50);
        assert_eq!(pi(bits).to_decimal_string(50), PI_50);
    }

    #[test]
    fn precision_doubling_is_stable() {
        for digits in [10u32, 20, 40] {
            let lo = ln_u64(7, bits_for_digits(digits)).unwrap();
            let hi = ln_u64(7, bits_for_digits(digits * 2)).unwrap();
            // Compare the decimal strings to the smaller precision.
            assert_eq!(
                lo.to_decimal_string(digits),
                hi.to_decimal_string(digits),
            );
        }
    }

    #[test]
    fn arithmetic_round_trip() {
        let bits = bits_for_digits(30);
        let a = BigFloat::from_rat(&rat(22, 7), bits);
        let b = BigFloat::from_rat(&rat(7, 22), bits);
        let prod = a.mul(&b);
        let one = BigFloat::from_bigint(&num_bigint::BigInt::from(1), bits);
        assert!(agree_to_digits(&prod, &one, 30));
        let q = a.div(&b);
        let expect = BigFloat::from_rat(&rat(484, 49), bits);
        assert!(agree_to_digits(&q, &expect, 30));
    }
}
