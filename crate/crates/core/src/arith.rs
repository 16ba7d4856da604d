//! Small shared number-theory helpers: primality, factorization, gcds,
//! rational parsing/formatting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational, reduced to lowest terms on construction.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `"n"` or `"n/d"`.
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"n"` or `"n/d"`.
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    // These witnesses decide primality for every n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a as u128, d as u128, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod_u128(x, x, n as u128);
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    (a * b) % m
}

fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Prime factorization of `n > 0` by trial division, as sorted `(p, e)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factors `|n|` for a nonzero BigInt that fits in u64.
pub fn factor_bigint(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("{n} too large to factor by trial division")))?;
    if m == 0 {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    Ok(factor_u64(m))
}

pub fn is_squarefree_u64(n: u64) -> bool {
    factor_u64(n).iter().all(|&(_, e)| e == 1)
}

/// Distinct primes dividing both numerator and denominator of `q != 0`.
pub fn rational_support(q: &Rat) -> Result<Vec<u64>> {
    let mut primes: Vec<u64> = factor_bigint(q.numer())?.into_iter().map(|(p, _)| p).collect();
    primes.extend(factor_bigint(q.denom())?.into_iter().map(|(p, _)| p));
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(q: &Rat, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = q.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = q.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    v
}

/// The prime-to-p part of a nonzero rational, as a 2-adic-style unit:
/// returns (v, u) with q = p^v * u and gcd of u with p trivial.
pub fn unit_part(q: &Rat, p: u64) -> (i64, Rat) {
    let v = valuation(q, p);
    let pw = Rat::from_integer(BigInt::from(p)).pow(v as i32);
    (v, q / pw)
}

/// Extended gcd: returns (g, x, y) with g = x*a + y*b, g >= 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Solves a*x = b (mod m) for m > 0. Returns (x0, m') with the solution set
/// {x0 + k*m'}, or None if gcd(a, m) does not divide b.
pub fn solve_congruence(a: &BigInt, b: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    if m.is_one() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    if !(b % &g).is_zero() {
        return None;
    }
    let m1 = m / &g;
    let x0 = ((b / &g) * x).mod_floor(&m1);
    Some((x0, m1))
}

/// Integer square root of a nonnegative BigInt, with exactness flag.
pub fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Square root of a residue mod an odd prime by exhaustive search.
/// Primes here are small (divisors of desk-scale inputs), so this is fine.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (0..p).find(|r| (r * r) % p == a)
}
