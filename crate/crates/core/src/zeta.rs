//! zeta(-1) = -1/12 exactly, and zeta'(-1) to arbitrary precision by two
//! independent routes that certify each other:
//!
//! * the Glaisher-Kinkelin constant, zeta'(-1) = 1/12 - ln A, with ln A from
//!   the hyperfactorial asymptotic accelerated by Euler-Maclaurin corrections;
//! * the functional equation at s = 2, which expresses zeta'(-1) through
//!   gamma, ln(2 pi), and zeta'(2), each summed by Euler-Maclaurin.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{rat, rat_int, Rat};
use crate::bigfloat::{agree_to_digits, bits_for_digits, ln_2, ln_bigint, ln_u64, pi, BigFloat};
use crate::{Error, Result};

/// zeta(-1) and a certified high-precision zeta'(-1).
#[derive(Debug, Clone)]
pub struct ZetaConstants {
    pub precision_digits: u32,
    /// -1/12, exact.
    pub zeta_m1: Rat,
    /// zeta'(-1), with the two methods agreeing to `precision_digits`.
    pub zeta_prime_m1: BigFloat,
}

impl ZetaConstants {
    /// 2 zeta'(-1)/zeta(-1) = -24 zeta'(-1), the transcendental constant in
    /// the volume formulas.
    pub fn bracket_constant(&self) -> BigFloat {
        self.zeta_prime_m1.mul_rat(&rat_int(-24))
    }
}

/// Bernoulli numbers B_0..B_n as exact rationals. Even indices come from
/// tangent numbers (an integer-only O(n^2) recurrence, much faster than the
/// defining rational recurrence): B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)).
pub fn bernoulli_upto(n: usize) -> Vec<Rat> {
    let half = n / 2;
    let t = tangent_numbers(half);
    let mut b: Vec<Rat> = vec![Rat::zero(); n + 1];
    b[0] = Rat::one();
    if n >= 1 {
        b[1] = rat(-1, 2);
    }
    for k in 1..=half {
        let four_k = BigInt::one() << (2 * k);
        let denom = &four_k * (&four_k - BigInt::one());
        let num = &t[k] * BigInt::from(2 * k);
        let val = Rat::new(num, denom);
        b[2 * k] = if k % 2 == 1 { val } else { -val };
    }
    b
}

/// Tangent numbers T_1..T_n (1, 2, 16, 272, ...) by the in-place integer
/// recurrence of Brent-Harvey.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

/// The hyperfactorial H(n) = prod_{k<=n} k^k.
fn hyperfactorial(n: u64) -> BigInt {
    let mut h = BigInt::one();
    for k in 2..=n {
        h *= BigInt::from(k).pow(k as u32);
    }
    h
}

/// H_n = sum_{k<=n} 1/k, exact.
fn harmonic(n: u64) -> Rat {
    let mut acc = Rat::zero();
    for k in 1..=n {
        acc += rat(1, k as i64);
    }
    acc
}

/// Adds Euler-Maclaurin style correction terms until they drop below the
/// 2^-(bits - 8) threshold; errors out if the asymptotic tail starts growing
/// first (the summation point was too small for the requested precision).
fn sum_asymptotic<F: Fn(usize) -> Rat>(
    term_at: F,
    max_terms: usize,
    bits: u32,
) -> Result<BigFloat> {
    let mut total = BigFloat::zero(bits);
    let threshold = BigFloat::ulp_threshold(bits, bits - 8);
    let mut prev: Option<BigFloat> = None;
    for j in 0..max_terms {
        let term = BigFloat::from_rat(&term_at(j), bits);
        if term.cmp_abs(&threshold) == std::cmp::Ordering::Less {
            total = total.add(&term);
            return Ok(total);
        }
        if let Some(p) = &prev {
            if term.cmp_abs(p) != std::cmp::Ordering::Less {
                return Err(Error::Precision(
                    "asymptotic correction series diverged before reaching the target".into(),
                ));
            }
        }
        total = total.add(&term);
        prev = Some(term);
    }
    Err(Error::Precision("correction term budget exhausted".into()))
}

/// ln A by the hyperfactorial asymptotic at n:
/// ln H(n) - (n^2/2 + n/2 + 1/12) ln n + n^2/4
///        + sum_{j>=2} B_2j / ((2j)(2j-1)(2j-2) n^{2j-2}).
fn ln_glaisher(n: u64, bits: u32, bern: &[Rat]) -> Result<BigFloat> {
    let ln_h = ln_bigint(&hyperfactorial(n), bits)?;
    let ln_n = ln_u64(n, bits)?;
    let n_rat = rat_int(n as i64);
    let poly = &n_rat * &n_rat / rat_int(2) + &n_rat / rat_int(2) + rat(1, 12);
    let main = ln_h
        .sub(&ln_n.mul_rat(&poly))
        .add(&BigFloat::from_rat(&(&n_rat * &n_rat / rat_int(4)), bits));
    let n_big = BigInt::from(n);
    let corrections = sum_asymptotic(
        |idx| {
            let j = idx + 2;
            let denom = BigInt::from(2 * j) * BigInt::from(2 * j - 1) * BigInt::from(2 * j - 2);
            let n_pow = n_big.pow(2 * j as u32 - 2);
            &bern[2 * j] / Rat::from_integer(denom * n_pow)
        },
        bern.len() / 2,
        bits,
    )?;
    Ok(main.add(&corrections))
}

/// Euler's constant by Euler-Maclaurin at n:
/// H_n - ln n - 1/(2n) + sum_{j>=1} B_2j/(2j n^{2j}).
fn euler_gamma(n: u64, bits: u32, bern: &[Rat]) -> Result<BigFloat> {
    let ln_n = ln_u64(n, bits)?;
    let main = BigFloat::from_rat(&(harmonic(n) - rat(1, 2 * n as i64)), bits).sub(&ln_n);
    let n_big = BigInt::from(n);
    let corrections = sum_asymptotic(
        |idx| {
            let j = idx + 1;
            &bern[2 * j] / Rat::from_integer(BigInt::from(2 * j) * n_big.pow(2 * j as u32))
        },
        bern.len() / 2,
        bits,
    )?;
    Ok(main.add(&corrections))
}

/// zeta'(2) = -sum_{n>=2} ln(n)/n^2 by Euler-Maclaurin at n = N:
/// the finite sum to N-1 plus the tail
/// (ln N + 1)/N + ln N/(2 N^2) - sum_j B_2j/(2j)! g^{(2j-1)}(N)
/// where g(x) = ln x/x^2 and g^{(k)}(x) = (a_k ln x + b_k)/x^{k+2}.
fn zeta_prime_2(n: u64, bits: u32, bern: &[Rat]) -> Result<BigFloat> {
    // Logarithms of 2..n from prime logarithms.
    let mut logs: Vec<BigFloat> = vec![BigFloat::zero(bits); (n + 1) as usize];
    for m in 2..=n {
        let f = crate::arith::factor_u64(m);
        let mut acc = BigFloat::zero(bits);
        for (p, e) in f {
            let lp = if p == m { ln_u64(p, bits)? } else { logs[p as usize].clone() };
            acc = acc.add(&lp.mul_rat(&rat_int(e as i64)));
        }
        logs[m as usize] = acc;
    }
    let mut finite = BigFloat::zero(bits);
    for m in 2..n {
        finite = finite.add(&logs[m as usize].mul_rat(&rat(1, (m * m) as i64)));
    }
    let ln_n = logs[n as usize].clone();
    let n_rat = rat_int(n as i64);

    // Integral and boundary terms.
    let tail = ln_n
        .add(&BigFloat::from_bigint(&BigInt::one(), bits))
        .mul_rat(&n_rat.recip())
        .add(&ln_n.mul_rat(&rat(1, (2 * n * n) as i64)));

    // Derivative coefficients: a_0 = 1, b_0 = 0,
    // a_{k+1} = -(k+2) a_k, b_{k+1} = a_k - (k+2) b_k.
    let mut a = vec![Rat::one()];
    let mut b = vec![Rat::zero()];
    for k in 0..bern.len() {
        let f = rat_int(k as i64 + 2);
        a.push(-&f * &a[k]);
        b.push(&a[k] - &f * &b[k]);
    }

    // Factorials for (2j)!.
    let mut fact: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=bern.len() {
        let last = fact.last().unwrap() * BigInt::from(m);
        fact.push(last);
    }

    let n_big = BigInt::from(n);
    let threshold = BigFloat::ulp_threshold(bits, bits - 8);
    let mut em_sum = BigFloat::zero(bits);
    let mut prev: Option<BigFloat> = None;
    for j in 1.. {
        if 2 * j + 1 >= a.len() || 2 * j >= bern.len() {
            return Err(Error::Precision("correction term budget exhausted".into()));
        }
        let k = 2 * j - 1;
        let scale = &bern[2 * j] / Rat::from_integer(fact[2 * j].clone() * n_big.pow(2 * j as u32 + 1));
        // B_2j/(2j)! * (a_k ln N + b_k)/N^{2j+1}
        let term = ln_n
            .mul_rat(&(&a[k] * &scale))
            .add(&BigFloat::from_rat(&(&b[k] * &scale), bits));
        if term.cmp_abs(&threshold) == std::cmp::Ordering::Less {
            em_sum = em_sum.add(&term);
            break;
        }
        if let Some(p) = &prev {
            if term.cmp_abs(p) != std::cmp::Ordering::Less {
                return Err(Error::Precision(
                    "asymptotic correction series diverged before reaching the target".into(),
                ));
            }
        }
        em_sum = em_sum.add(&term);
        prev = Some(term);
    }

    Ok(finite.add(&tail).sub(&em_sum).neg())
}

/// zeta'(-1) via the Glaisher-Kinkelin relation zeta'(-1) = 1/12 - ln A.
pub fn zeta_prime_m1_glaisher(digits: u32) -> Result<BigFloat> {
    let bits = bits_for_digits(digits);
    let n = summation_point(digits);
    let bern = bernoulli_upto(term_budget(n));
    let ln_a = ln_glaisher(n, bits, &bern)?;
    Ok(BigFloat::from_rat(&rat(1, 12), bits).sub(&ln_a))
}

/// zeta'(-1) via the functional equation at s = 2:
/// zeta'(-1) = (1/12) (1 - gamma - ln(2 pi) + zeta'(2)/zeta(2)).
pub fn zeta_prime_m1_functional(digits: u32) -> Result<BigFloat> {
    let bits = bits_for_digits(digits);
    let n = summation_point(digits);
    let bern = bernoulli_upto(term_budget(n));
    let gamma = euler_gamma(n, bits, &bern)?;
    let pi_val = pi(bits);
    let ln_2pi = ln_2(bits).add(&pi_val.ln()?);
    let zeta2 = pi_val.mul(&pi_val).mul_rat(&rat(1, 6));
    let zp2 = zeta_prime_2(n, bits, &bern)?;
    let bracket = BigFloat::from_bigint(&BigInt::one(), bits)
        .sub(&gamma)
        .sub(&ln_2pi)
        .add(&zp2.div(&zeta2));
    Ok(bracket.mul_rat(&rat(1, 12)))
}

/// Euler-Maclaurin summation point: error ~ e^{-2 pi n}, so n a bit above
/// digits/e delivers the target with margin.
fn summation_point(digits: u32) -> u64 {
    (digits as u64).max(16) + 8
}

fn term_budget(n: u64) -> usize {
    // The smallest correction term at summation point n is ~ e^(-2 pi n);
    // terms shrink below any requested threshold well before index ~ n.
    (2 * n as usize).max(64)
}

/// Both methods at the requested precision; errors unless they agree to
/// 10^-digits.
pub fn zeta_constants(digits: u32) -> Result<ZetaConstants> {
    if digits == 0 {
        return Err(Error::InvalidInput("precision must be at least 1 digit".into()));
    }
    let a = zeta_prime_m1_glaisher(digits)?;
    let b = zeta_prime_m1_functional(digits)?;
    if !agree_to_digits(&a, &b, digits) {
        return Err(Error::Precision(format!(
            "zeta'(-1) methods disagree at {digits} digits: {a} vs {b}"
        )));
    }
    Ok(ZetaConstants {
        precision_digits: digits,
        zeta_m1: rat(-1, 12),
        zeta_prime_m1: a,
    })
}

/// Cached constants, shared across threads once computed at a precision.
pub fn zeta_constants_cached(digits: u32) -> Result<ZetaConstants> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, ZetaConstants>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(z) = cache.lock().expect("zeta cache lock").get(&digits) {
        return Ok(z.clone());
    }
    let z = zeta_constants(digits)?;
    cache.lock().expect("zeta cache lock").insert(digits, z.clone());
    Ok(z)
}
