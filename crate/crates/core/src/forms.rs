//! Reduced binary quadratic forms as ideal-class representatives: enumeration,
//! Gauss composition, and the principal genus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::solve_congruence;
use crate::field::FieldContext;
use crate::{Error, Result};

/// A primitive positive-definite binary quadratic form A x^2 + B xy + C y^2
/// with B^2 - 4AC = D, kept in reduced shape:
/// |B| <= A <= C, and B >= 0 when |B| = A or A = C.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormClass {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl FormClass {
    /// Reduces (a, b, c) and checks primitivity and positive-definiteness.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() || (&b * &b - BigInt::from(4) * &a * &c).is_positive() {
            return Err(Error::InvalidInput(format!(
                "({a}, {b}, {c}) is not positive definite"
            )));
        }
        if a.gcd(&b).gcd(&c) != BigInt::one() {
            return Err(Error::InvalidInput(format!("({a}, {b}, {c}) is not primitive")));
        }
        Ok(reduce(a, b, c))
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_reduced(&self) -> bool {
        let abs_b = self.b.abs();
        if abs_b > self.a || self.a > self.c {
            return false;
        }
        if (abs_b == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    /// The principal form (1, 1, (1-D)/4) of odd discriminant D.
    pub fn principal(ctx: &FieldContext) -> Self {
        FormClass {
            a: BigInt::one(),
            b: BigInt::one(),
            c: (BigInt::one() - ctx.d_big()) / BigInt::from(4),
        }
    }

    pub fn is_principal_form(&self, ctx: &FieldContext) -> bool {
        *self == FormClass::principal(ctx)
    }

    /// The inverse class, represented by the reduction of (a, -b, c).
    pub fn inverse(&self) -> Self {
        reduce(self.a.clone(), -self.b.clone(), self.c.clone())
    }

    /// Coefficients as machine integers, when they fit.
    pub fn coefficients_i64(&self) -> Option<(i64, i64, i64)> {
        use num_traits::ToPrimitive;
        Some((self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?))
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Reduction of a positive-definite form to the canonical representative.
fn reduce(mut a: BigInt, mut b: BigInt, mut c: BigInt) -> FormClass {
    let d = &b * &b - BigInt::from(4) * &a * &c;
    if a.is_negative() {
        a = -a;
        c = -c;
    }
    loop {
        if c < a {
            std::mem::swap(&mut a, &mut c);
            b = -b;
        }
        if b.abs() > a {
            // Shift b into [-a, a] and recompute c from the discriminant.
            let two_a = BigInt::from(2) * &a;
            let k = (&b + &a).div_floor(&two_a);
            b -= &k * &two_a;
            c = (&b * &b - &d) / (BigInt::from(4) * &a);
            continue;
        }
        if (b.abs() == a || a == c) && b.is_negative() {
            b = -b;
            continue;
        }
        break;
    }
    FormClass { a, b, c }
}

/// Gauss composition of two forms of the same discriminant, reduced.
///
/// General algorithm via congruence solving (the same one used by class-group
/// based VDF implementations); handles non-coprime leading coefficients and
/// ambiguous forms.
pub fn compose(ctx: &FieldContext, f1: &FormClass, f2: &FormClass) -> Result<FormClass> {
    let d = ctx.d_big();
    if f1.discriminant() != d || f2.discriminant() != d {
        return Err(Error::InvalidInput(format!(
            "discriminant mismatch: {} * {} over D = {}",
            f1, f2, ctx.d()
        )));
    }
    let g = (&f1.b + &f2.b) / BigInt::from(2);
    let h = (&f2.b - &f1.b) / BigInt::from(2);
    let w = f1.a.gcd(&f2.a).gcd(&g);

    let j = w.clone();
    let s = &f1.a / &w;
    let t = &f2.a / &w;
    let u = &g / &w;
    let st = &s * &t;

    // mu solves (t u) mu = h u + s c1 (mod s t); always consistent here.
    let (mu, nu) = solve_congruence(&(&t * &u), &(&h * &u + &s * &f1.c), &st)
        .ok_or_else(|| Error::Internal(format!("composition congruence failed for {f1} * {f2}")))?;
    let (lambda, _) = solve_congruence(&(&t * &nu), &(&h - &t * &mu), &s)
        .ok_or_else(|| Error::Internal(format!("composition congruence failed for {f1} * {f2}")))?;

    let k = &mu + &nu * &lambda;
    let l = (&k * &t - &h) / &s;
    let m = (&t * &u * &k - &h * &u - &f1.c * &s) / &st;
    let b = &j * &u - &k * &t - &l * &s;
    let c = &k * &l - &j * &m;
    Ok(reduce(st, b, c))
}

/// f^n by repeated squaring (n >= 0).
pub fn power(ctx: &FieldContext, f: &FormClass, n: u64) -> Result<FormClass> {
    let mut acc = FormClass::principal(ctx);
    let mut base = f.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = compose(ctx, &acc, &base)?;
        }
        base = compose(ctx, &base, &base)?;
        n >>= 1;
    }
    Ok(acc)
}

/// The class group CL(k), materialized as the full list of reduced forms.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    elements: Vec<FormClass>,
}

impl ClassGroup {
    pub fn elements(&self) -> &[FormClass] {
        &self.elements
    }

    /// h(D) = |CL(k)|.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self, ctx: &FieldContext) -> FormClass {
        FormClass::principal(ctx)
    }

    pub fn contains(&self, f: &FormClass) -> bool {
        self.elements.contains(f)
    }
}

/// Enumerates all reduced primitive forms of discriminant D by the bounded
/// search |B| <= A <= sqrt(|D|/3); the result is sorted lexicographically.
pub fn reduced_forms(ctx: &FieldContext) -> ClassGroup {
    let d = ctx.d();
    let mut elements = Vec::new();
    let mut a: i64 = 1;
    while 3 * a * a <= -d {
        // B runs over odd values with |B| <= A (D odd forces B odd).
        let mut b: i64 = -a;
        if b % 2 == 0 {
            b += 1;
        }
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let form = FormClass {
                    a: BigInt::from(a),
                    b: BigInt::from(b),
                    c: BigInt::from(c),
                };
                if form.is_reduced() && form.a.gcd(&form.b).gcd(&form.c).is_one() {
                    elements.push(form);
                }
            }
            b += 2;
        }
        a += 1;
    }
    elements.sort();
    elements.dedup();
    ClassGroup { elements }
}

/// The principal genus CL_0(k): the set of squares {f^2 : f in CL(k)}.
/// Its size must equal |CL| / 2^(o_k - 1); a mismatch means the composition
/// law is broken, reported as an internal error.
pub fn principal_genus(ctx: &FieldContext, group: &ClassGroup) -> Result<Vec<FormClass>> {
    let mut squares: Vec<FormClass> = group
        .elements()
        .iter()
        .map(|f| compose(ctx, f, f))
        .collect::<Result<_>>()?;
    squares.sort();
    squares.dedup();
    let expected = group.order() / (1usize << (ctx.o_k() - 1));
    if squares.len() != expected {
        return Err(Error::Internal(format!(
            "genus theory violated at D = {}: {} squares, expected {}",
            ctx.d(),
            squares.len(),
            expected
        )));
    }
    Ok(squares)
}
