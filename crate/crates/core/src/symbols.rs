//! Legendre and Hilbert symbols at all places of Q, and the local invariants
//! of hermitian spaces and quaternion algebras built from them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{is_prime_u64, rat_int, rational_support, unit_part, Rat};
use crate::{Error, Result};

/// A place of Q: a finite prime or the archimedean place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl Place {
    pub fn finite(p: u64) -> Self {
        Place::Finite(p)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// A vector of local signs, stored sparsely: only the places where the
/// invariant is -1 are kept. Entries at unlisted finite places are +1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct InvariantVector {
    minus_primes: Vec<u64>,
    minus_at_infinity: bool,
}

impl InvariantVector {
    /// Collects the -1 entries of `sign` over the given finite places and inf.
    pub fn collect<F: FnMut(&Place) -> i32>(finite_support: &[u64], mut sign: F) -> Self {
        let mut minus_primes: Vec<u64> = finite_support
            .iter()
            .copied()
            .filter(|&p| sign(&Place::Finite(p)) == -1)
            .collect();
        minus_primes.sort_unstable();
        minus_primes.dedup();
        InvariantVector {
            minus_primes,
            minus_at_infinity: sign(&Place::Infinite) == -1,
        }
    }

    pub fn sign(&self, v: &Place) -> i32 {
        match v {
            Place::Finite(p) => {
                if self.minus_primes.contains(p) {
                    -1
                } else {
                    1
                }
            }
            Place::Infinite => {
                if self.minus_at_infinity {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Finite places carrying -1.
    pub fn minus_primes(&self) -> &[u64] {
        &self.minus_primes
    }

    pub fn minus_at_infinity(&self) -> bool {
        self.minus_at_infinity
    }

    /// Product of all entries; +1 exactly when the -1 support has even size.
    pub fn product(&self) -> i32 {
        let n = self.minus_primes.len() + usize::from(self.minus_at_infinity);
        if n % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Quadratic residue symbol of `a` mod an odd prime `p`; 0 iff p | a.
pub fn legendre(a: &BigInt, p: u64) -> Result<i32> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    Ok(jacobi(a, p))
}

/// Jacobi symbol (a/n) for odd n > 0; equals Legendre when n is prime.
fn jacobi(a: &BigInt, n: u64) -> i32 {
    let mut num = a.mod_floor(&BigInt::from(n)).to_u64().expect("reduced residue fits");
    let mut den = n;
    let mut acc = 1i32;
    loop {
        num %= den;
        if num == 0 {
            return if den == 1 { acc } else { 0 };
        }
        while num % 2 == 0 {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                acc = -acc;
            }
        }
        if num == 1 {
            return acc;
        }
        if num % 4 == 3 && den % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut num, &mut den);
    }
}

/// Hilbert symbol (a,b)_v for nonzero rationals via the classical closed
/// formulas: valuation/unit decomposition at odd p, the eps/omega formula at
/// p = 2, and the sign rule at infinity.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("Hilbert symbol of zero".into()));
    }
    match v {
        Place::Infinite => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(2) => {
            let (alpha, u) = unit_part(a, 2);
            let (beta, w) = unit_part(b, 2);
            let u8 = odd_unit_mod8(&u);
            let w8 = odd_unit_mod8(&w);
            let exp = eps(u8) * eps(w8)
                + (alpha.rem_euclid(2)) * omega(w8)
                + (beta.rem_euclid(2)) * omega(u8);
            Ok(if exp % 2 == 0 { 1 } else { -1 })
        }
        Place::Finite(p) => {
            if !is_prime_u64(*p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            let (alpha, u) = unit_part(a, *p);
            let (beta, w) = unit_part(b, *p);
            // (a,b)_p = (-1)^{alpha beta eps(p)} (u|p)^beta (w|p)^alpha
            let mut s = 1i32;
            if alpha.rem_euclid(2) == 1 && beta.rem_euclid(2) == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if beta.rem_euclid(2) == 1 {
                s *= legendre_unit(&u, *p)?;
            }
            if alpha.rem_euclid(2) == 1 {
                s *= legendre_unit(&w, *p)?;
            }
            Ok(s)
        }
    }
}

/// Legendre symbol of a p-adic unit given as a rational with p-free
/// numerator and denominator: (n/d | p) = (n*d | p).
fn legendre_unit(u: &Rat, p: u64) -> Result<i32> {
    legendre(&(u.numer() * u.denom()), p)
}

/// The class mod 8 of a 2-adic unit n/d with n, d odd: n*d mod 8, using that
/// every odd residue is its own inverse mod 8.
fn odd_unit_mod8(u: &Rat) -> u64 {
    let m = (u.numer() * u.denom()).mod_floor(&BigInt::from(8));
    m.to_u64().expect("residue mod 8 fits")
}

fn eps(u8: u64) -> i64 {
    // (u-1)/2 mod 2: 0 for u = 1,5 and 1 for u = 3,7 mod 8... careful:
    // eps depends on u mod 4: 0 if u = 1 mod 4, 1 if u = 3 mod 4.
    if u8 % 4 == 1 {
        0
    } else {
        1
    }
}

fn omega(u8: u64) -> i64 {
    // (u^2-1)/8 mod 2: 0 if u = 1,7 mod 8, 1 if u = 3,5 mod 8.
    if u8 == 1 || u8 == 7 {
        0
    } else {
        1
    }
}

/// Product of (a,b)_v over the infinite place and all primes dividing 2ab.
/// Hilbert reciprocity says this is always +1; exposed as a self-check.
pub fn hilbert_product(a: &Rat, b: &Rat) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("Hilbert symbol of zero".into()));
    }
    let mut support = vec![2u64];
    support.extend(rational_support(a)?);
    support.extend(rational_support(b)?);
    support.sort_unstable();
    support.dedup();
    let mut prod = hilbert_symbol(a, b, &Place::Infinite)?;
    for p in support {
        prod *= hilbert_symbol(a, b, &Place::Finite(p))?;
    }
    Ok(prod)
}

/// Local invariant of the hermitian space with determinant class `det_w`
/// over the field of discriminant `d`: (det(W), disc(k))_v.
pub fn space_invariant(det_w: &Rat, d: i64, v: &Place) -> Result<i32> {
    check_odd_fundamental(d)?;
    hilbert_symbol(det_w, &rat_int(d), v)
}

/// Local invariant of the quaternion algebra attached to the space:
/// (-1, disc(k))_v * (det(W), disc(k))_v.
pub fn algebra_invariant_from_space(det_w: &Rat, d: i64, v: &Place) -> Result<i32> {
    check_odd_fundamental(d)?;
    Ok(hilbert_symbol(&rat_int(-1), &rat_int(d), v)? * hilbert_symbol(det_w, &rat_int(d), v)?)
}

pub(crate) fn check_odd_fundamental(d: i64) -> Result<()> {
    crate::field::validate_discriminant(d).map(|_| ())
}

/// Places at which invariants of objects built from (det, disc) can be -1:
/// the primes dividing 2 * d * det, suitable as finite support for
/// [`InvariantVector::collect`].
pub fn invariant_support(det_w: &Rat, d: i64) -> Result<Vec<u64>> {
    let mut support = vec![2u64];
    support.extend(rational_support(det_w)?);
    support.extend(rational_support(&rat_int(d))?);
    support.sort_unstable();
    support.dedup();
    Ok(support)
}

/// Collects the invariant vector of the hermitian space (det_w, d).
pub fn space_invariant_vector(det_w: &Rat, d: i64) -> Result<InvariantVector> {
    let support = invariant_support(det_w, d)?;
    let mut err = None;
    let iv = InvariantVector::collect(&support, |v| match space_invariant(det_w, d, v) {
        Ok(s) => s,
        Err(e) => {
            err = Some(e);
            1
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(iv),
    }
}

/// Map from finite places to signs, for reporting.
pub fn invariant_map(iv: &InvariantVector) -> BTreeMap<u64, i32> {
    iv.minus_primes().iter().map(|&p| (p, -1)).collect()
}
