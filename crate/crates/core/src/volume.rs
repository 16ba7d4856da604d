//! Geometric degrees and arithmetic volumes of the curve components, held
//! as exact rational combinations of 1, 2 zeta'(-1)/zeta(-1), and log p, and
//! evaluated numerically only on request.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{factor_u64, is_squarefree_u64, rat, rat_int, Rat};
use crate::bigfloat::{bits_for_digits, ln_u64, BigFloat};
use crate::field::FieldContext;
use crate::hermitian::HermitianSpace;
use crate::zeta::zeta_constants_cached;
use crate::{Error, Result};

/// An exact symbolic volume: c_const * 1 + c_zeta * (2 zeta'(-1)/zeta(-1))
/// + sum_p c_log(p) * log p.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VolumeValue {
    pub c_const: Rat,
    pub c_zeta: Rat,
    pub c_log: BTreeMap<u64, Rat>,
}

impl VolumeValue {
    pub fn constant(c: Rat) -> Self {
        VolumeValue {
            c_const: c,
            ..Default::default()
        }
    }

    pub fn log_term(p: u64, coeff: Rat) -> Self {
        let mut c_log = BTreeMap::new();
        if !coeff.is_zero() {
            c_log.insert(p, coeff);
        }
        VolumeValue {
            c_log,
            ..Default::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c_const.is_zero() && self.c_zeta.is_zero() && self.c_log.is_empty()
    }

    fn prune(mut self) -> Self {
        self.c_log.retain(|_, c| !c.is_zero());
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c_log = self.c_log.clone();
        for (p, c) in &other.c_log {
            *c_log.entry(*p).or_insert_with(Rat::zero) += c;
        }
        VolumeValue {
            c_const: &self.c_const + &other.c_const,
            c_zeta: &self.c_zeta + &other.c_zeta,
            c_log,
        }
        .prune()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn scale(&self, q: &Rat) -> Self {
        VolumeValue {
            c_const: &self.c_const * q,
            c_zeta: &self.c_zeta * q,
            c_log: self.c_log.iter().map(|(p, c)| (*p, c * q)).collect(),
        }
        .prune()
    }

    /// Numeric value at the requested precision: transcendental constants
    /// are computed at working precision well beyond `digits`, and the
    /// zeta constant is certified by two independent methods. The absolute
    /// error of the result is below 10^-digits; rendering the result with
    /// [`crate::bigfloat::BigFloat::to_decimal_string`] at `digits` reports
    /// exactly the certified digits.
    pub fn evaluate(&self, digits: u32) -> Result<BigFloat> {
        if digits == 0 {
            return Err(Error::InvalidInput("precision must be at least 1 digit".into()));
        }
        // Guard digits absorb the accumulation over a handful of terms.
        let work_digits = digits + 10;
        let bits = bits_for_digits(work_digits);
        let zeta = zeta_constants_cached(work_digits)?;
        let mut acc = BigFloat::from_rat(&self.c_const, bits);
        if !self.c_zeta.is_zero() {
            acc = acc.add(&zeta.bracket_constant().mul_rat(&self.c_zeta));
        }
        for (&p, c) in &self.c_log {
            acc = acc.add(&ln_u64(p, bits)?.mul_rat(c));
        }
        Ok(acc)
    }

    /// Decimal rendering of [`Self::evaluate`] with exactly `digits`
    /// fractional digits.
    pub fn evaluate_decimal(&self, digits: u32) -> Result<String> {
        Ok(self.evaluate(digits)?.to_decimal_string(digits))
    }
}

impl fmt::Display for VolumeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} * 2z'(-1)/z(-1)", self.c_const, self.c_zeta)?;
        for (p, c) in &self.c_log {
            write!(f, " + {c} * log {p}")?;
        }
        Ok(())
    }
}

/// Argument checks shared by the quaternionic formulas: disc_B > 1
/// squarefree with an even number of prime factors (a division algebra),
/// N squarefree positive and coprime to disc_B.
fn check_quaternionic_args(disc_b: u64, level: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    if disc_b <= 1 {
        return Err(Error::InvalidInput(
            "disc(B) must exceed 1: the formulas require a division algebra".into(),
        ));
    }
    if !is_squarefree_u64(disc_b) {
        return Err(Error::InvalidInput(format!("disc(B) = {disc_b} is not squarefree")));
    }
    let disc_primes: Vec<u64> = factor_u64(disc_b).into_iter().map(|(p, _)| p).collect();
    if disc_primes.len() % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "disc(B) = {disc_b} has an odd number of prime factors; B would be definite"
        )));
    }
    if level == 0 || !is_squarefree_u64(level) {
        return Err(Error::InvalidInput(format!("level N = {level} is not squarefree")));
    }
    if num_integer::gcd(disc_b, level) != 1 {
        return Err(Error::InvalidInput(format!(
            "level N = {level} is not coprime to disc(B) = {disc_b}"
        )));
    }
    let level_primes: Vec<u64> = factor_u64(level).into_iter().map(|(p, _)| p).collect();
    Ok((disc_primes, level_primes))
}

/// Degree of the Hodge bundle of the intermediate surface over the
/// quaternionic curve: (1/12) prod_{p | disc B} (1-p) prod_{p | N} (1+p).
pub fn quaternionic_degree(disc_b: u64, level: u64) -> Result<Rat> {
    let (dp, np) = check_quaternionic_args(disc_b, level)?;
    let mut deg = rat(1, 12);
    for p in dp {
        deg *= rat_int(1 - p as i64);
    }
    for p in np {
        deg *= rat_int(1 + p as i64);
    }
    Ok(deg)
}

/// Arithmetic volume of the intermediate surface's Hodge bundle:
/// -deg * (1 + 2z'(-1)/z(-1) + sum_{p|disc} (1+p)/(1-p) log(p)/2
///                           + sum_{p|N} (1-p)/(1+p) log(p)/2).
pub fn quaternionic_volume(disc_b: u64, level: u64) -> Result<VolumeValue> {
    let (dp, np) = check_quaternionic_args(disc_b, level)?;
    let deg = quaternionic_degree(disc_b, level)?;
    let neg_deg = -deg;
    let mut c_log = BTreeMap::new();
    for p in dp {
        let ratio = rat(1 + p as i64, 1 - p as i64);
        c_log.insert(p, &neg_deg * ratio / rat_int(2));
    }
    for p in np {
        let ratio = rat(1 - p as i64, 1 + p as i64);
        c_log.insert(p, &neg_deg * ratio / rat_int(2));
    }
    Ok(VolumeValue {
        c_const: neg_deg.clone(),
        c_zeta: neg_deg,
        c_log,
    })
}

/// Degree of the Hodge bundle of A_0; equal to the intermediate one.
pub fn a0_degree(disc_b: u64, level: u64) -> Result<Rat> {
    quaternionic_degree(disc_b, level)
}

/// Volume of the Hodge bundle of A_0: same shape with the level sum omitted.
pub fn a0_volume(disc_b: u64, level: u64) -> Result<VolumeValue> {
    let (dp, _) = check_quaternionic_args(disc_b, level)?;
    let deg = a0_degree(disc_b, level)?;
    let neg_deg = -deg;
    let mut c_log = BTreeMap::new();
    for p in dp {
        let ratio = rat(1 + p as i64, 1 - p as i64);
        c_log.insert(p, &neg_deg * ratio / rat_int(2));
    }
    Ok(VolumeValue {
        c_const: neg_deg.clone(),
        c_zeta: neg_deg,
        c_log,
    })
}

/// The supersingular mass at p | N, as a pure log p term:
/// (log p / 24) (p-1)/(p+1) prod_{l | disc B}(l-1) prod_{l | N}(l+1).
/// This is -vol(F_p) for the vertical fiber component at p.
pub fn mass(p: u64, disc_b: u64, level: u64) -> Result<VolumeValue> {
    let (dp, np) = check_quaternionic_args(disc_b, level)?;
    if !np.contains(&p) {
        return Err(Error::InvalidInput(format!("p = {p} does not divide N = {level}")));
    }
    let mut coeff = rat(1, 24) * rat(p as i64 - 1, p as i64 + 1);
    for l in dp {
        coeff *= rat_int(l as i64 - 1);
    }
    for l in np {
        coeff *= rat_int(l as i64 + 1);
    }
    Ok(VolumeValue::log_term(p, coeff))
}

/// Degree of the Hodge bundle on a connected component attached to W:
/// (1 / (12 |O_k^x|)) prod_{p | D} (1 + p°). The isotropic case is the
/// all-positive specialization of the same product.
pub fn unitary_degree(ctx: &FieldContext, space: &HermitianSpace) -> Result<Rat> {
    check_space(ctx, space)?;
    let mut deg = Rat::new(1.into(), (12 * ctx.unit_count() as i64).into());
    for &p in ctx.disc_primes() {
        deg *= rat_int(1 + space.p_circ(p));
    }
    if !deg.is_positive() {
        return Err(Error::Internal(format!(
            "unitary degree {deg} is not positive at D = {}",
            ctx.d()
        )));
    }
    Ok(deg)
}

/// Arithmetic volume of the component:
/// -deg * (1 + 2z'(-1)/z(-1) + (1/2) sum_{p | D} (1-p°)/(1+p°) log p).
/// Depends only on W, not on the lattice class within it.
pub fn unitary_volume(ctx: &FieldContext, space: &HermitianSpace) -> Result<VolumeValue> {
    check_space(ctx, space)?;
    let deg = unitary_degree(ctx, space)?;
    let neg_deg = -deg;
    let mut c_log = BTreeMap::new();
    for &p in ctx.disc_primes() {
        let pc = space.p_circ(p);
        let ratio = rat(1 - pc, 1 + pc);
        c_log.insert(p, &neg_deg * ratio / rat_int(2));
    }
    Ok(VolumeValue {
        c_const: neg_deg.clone(),
        c_zeta: neg_deg,
        c_log,
    })
}

/// Specialized second implementation for the globally isotropic space, where
/// every p° = +p (the compactified-curve case). Used to pin the single
/// code path of [`unitary_volume`] against an independent expansion.
pub fn unitary_volume_isotropic_direct(ctx: &FieldContext) -> Result<VolumeValue> {
    let mut deg = Rat::new(1.into(), (12 * ctx.unit_count() as i64).into());
    for &p in ctx.disc_primes() {
        deg *= rat_int(1 + p as i64);
    }
    let neg_deg = -deg;
    let mut c_log = BTreeMap::new();
    for &p in ctx.disc_primes() {
        c_log.insert(p, &neg_deg * rat(1 - p as i64, 1 + p as i64) / rat_int(2));
    }
    Ok(VolumeValue {
        c_const: neg_deg.clone(),
        c_zeta: neg_deg,
        c_log,
    })
}

fn check_space(ctx: &FieldContext, space: &HermitianSpace) -> Result<()> {
    if space.ctx() != ctx {
        return Err(Error::InvalidInput(format!(
            "space over D = {} evaluated against context D = {}",
            space.ctx().d(),
            ctx.d()
        )));
    }
    Ok(())
}
