//! The imaginary quadratic field k = Q(sqrt(D)) of odd fundamental
//! discriminant D: context, elements, norms and conjugation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factor_u64, rat, Rat};
use crate::{Error, Result};

/// Context for k = Q(sqrt(D)): the discriminant, its prime support, and the
/// torsion unit count. Ring of integers is Z\[omega\] with omega = (1+sqrt(D))/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    d: i64,
    unit_count: u32,
    disc_primes: Vec<u64>,
}

/// Largest |D| accepted; keeps trial-division factorization instant.
pub const MAX_ABS_DISCRIMINANT: u64 = 1 << 40;

/// Checks that `d` is a negative odd fundamental discriminant
/// (equivalently: d < 0, d = 1 mod 4, squarefree) and returns |d|'s factors.
pub fn validate_discriminant(d: i64) -> Result<Vec<(u64, u32)>> {
    if d >= 0 {
        return Err(Error::InvalidDiscriminant(d, "must be negative".into()));
    }
    if d.unsigned_abs() > MAX_ABS_DISCRIMINANT {
        return Err(Error::InvalidDiscriminant(
            d,
            format!("|D| exceeds the supported bound {MAX_ABS_DISCRIMINANT}"),
        ));
    }
    if d % 2 == 0 {
        return Err(Error::InvalidDiscriminant(d, "even discriminant; only odd fundamental discriminants are supported".into()));
    }
    if d.rem_euclid(4) != 1 {
        return Err(Error::InvalidDiscriminant(d, "not congruent to 1 mod 4".into()));
    }
    let factors = factor_u64(d.unsigned_abs());
    if factors.iter().any(|&(_, e)| e > 1) {
        return Err(Error::InvalidDiscriminant(d, "not squarefree".into()));
    }
    Ok(factors)
}

/// Builds the field context, rejecting anything that is not a negative odd
/// fundamental discriminant.
pub fn make_field(d: i64) -> Result<FieldContext> {
    let factors = validate_discriminant(d)?;
    Ok(FieldContext {
        d,
        unit_count: if d == -3 { 6 } else { 2 },
        disc_primes: factors.into_iter().map(|(p, _)| p).collect(),
    })
}

impl FieldContext {
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn d_big(&self) -> BigInt {
        BigInt::from(self.d)
    }

    pub fn abs_d(&self) -> u64 {
        self.d.unsigned_abs()
    }

    /// |O_k^x|: 6 for D = -3, else 2 (odd D excludes D = -4).
    pub fn unit_count(&self) -> u32 {
        self.unit_count
    }

    /// Sorted primes dividing |D|.
    pub fn disc_primes(&self) -> &[u64] {
        &self.disc_primes
    }

    /// o(k), the number of primes dividing the discriminant.
    pub fn o_k(&self) -> u32 {
        self.disc_primes.len() as u32
    }

    /// omega = (1 + sqrt(D))/2, a generator of O_k over Z.
    pub fn omega(&self) -> FieldElement {
        FieldElement::from_omega_coords(BigInt::zero(), BigInt::one())
    }

    /// delta = sqrt(D), the fixed square root with delta^2 = D.
    pub fn delta(&self) -> FieldElement {
        FieldElement::new(Rat::zero(), Rat::one())
    }
}

/// An element x + y*sqrt(D) of k, with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub x: Rat,
    pub y: Rat,
}

impl FieldElement {
    pub fn new(x: Rat, y: Rat) -> Self {
        FieldElement { x, y }
    }

    pub fn zero() -> Self {
        FieldElement::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        FieldElement::new(Rat::one(), Rat::zero())
    }

    pub fn from_rat(q: Rat) -> Self {
        FieldElement::new(q, Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// From integral coordinates a + b*omega in the basis {1, omega}.
    pub fn from_omega_coords(a: BigInt, b: BigInt) -> Self {
        // a + b(1+sqrt(D))/2 = (a + b/2) + (b/2) sqrt(D)
        let half_b = Rat::new(b, BigInt::from(2));
        FieldElement::new(Rat::from_integer(a) + &half_b, half_b)
    }

    /// Coordinates (a, b) with self = a + b*omega, if both are integers.
    pub fn to_omega_coords(&self) -> Option<(BigInt, BigInt)> {
        let b = &self.y * Rat::from_integer(BigInt::from(2));
        let a = &self.x - &self.y;
        if b.denom().is_one() && a.denom().is_one() {
            Some((a.numer().clone(), b.numer().clone()))
        } else {
            None
        }
    }

    /// Membership in O_k = Z\[omega\].
    pub fn is_integral(&self) -> bool {
        self.to_omega_coords().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        FieldElement::new(self.x.clone(), -self.y.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        FieldElement::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        FieldElement::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn neg(&self) -> Self {
        FieldElement::new(-self.x.clone(), -self.y.clone())
    }

    pub fn mul(&self, other: &Self, ctx: &FieldContext) -> Self {
        let d = Rat::from_integer(ctx.d_big());
        FieldElement::new(
            &self.x * &other.x + &d * &self.y * &other.y,
            &self.x * &other.y + &self.y * &other.x,
        )
    }

    pub fn scale(&self, q: &Rat) -> Self {
        FieldElement::new(&self.x * q, &self.y * q)
    }

    /// Nm(x + y sqrt(D)) = x^2 - D y^2; nonnegative since D < 0.
    pub fn norm(&self, ctx: &FieldContext) -> Rat {
        let d = Rat::from_integer(ctx.d_big());
        &self.x * &self.x - d * &self.y * &self.y
    }

    /// Tr(x + y sqrt(D)) = 2x.
    pub fn trace(&self) -> Rat {
        &self.x * rat(2, 1)
    }

    pub fn inverse(&self, ctx: &FieldContext) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm(ctx);
        Some(self.conj().scale(&n.recip()))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt(D)", self.x, self.y)
    }
}
