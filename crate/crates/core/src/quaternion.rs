//! The quaternion algebra attached to a hermitian space, its ramification
//! and level, the symplectic and hermitian forms on it, and the explicit
//! Eichler order R = O_k + a*j with full exact verification.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_squarefree_u64, rat_int, rational_support, sqrt_exact, Rat};
use crate::field::{FieldContext, FieldElement};
use crate::hermitian::{HermitianLattice, HermitianSpace};
use crate::ideals::{solve_norm_equation, FractionalIdeal};
use crate::symbols::{algebra_invariant_from_space, hilbert_symbol, Place};
use crate::zlattice::{rat_det, ZLattice};
use crate::{Error, Result};

/// The quaternion algebra (a,b / Q) with i^2 = a, j^2 = b, ij = -ji, plus
/// its ramification data. Only indefinite algebras appear here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    a: Rat,
    b: Rat,
    ramified: Vec<u64>,
    disc_b: u64,
}

impl QuaternionAlgebra {
    /// Computes the ramified set {p : (a,b)_p = -1} over the support of 2ab
    /// and checks indefiniteness and parity.
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidInput("quaternion presentation needs nonzero a, b".into()));
        }
        let mut support = vec![2u64];
        support.extend(rational_support(&a)?);
        support.extend(rational_support(&b)?);
        support.sort_unstable();
        support.dedup();
        let mut ramified = Vec::new();
        for p in support {
            if hilbert_symbol(&a, &b, &Place::Finite(p))? == -1 {
                ramified.push(p);
            }
        }
        if hilbert_symbol(&a, &b, &Place::Infinite)? == -1 {
            return Err(Error::InvalidInput(format!(
                "({}, {} / Q) is definite",
                a, b
            )));
        }
        if ramified.len() % 2 != 0 {
            return Err(Error::Internal(format!(
                "odd ramification set {ramified:?} contradicts reciprocity"
            )));
        }
        let disc_b = ramified.iter().product();
        Ok(QuaternionAlgebra { a, b, ramified, disc_b })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// Sorted finite ramified primes; even cardinality.
    pub fn ramified(&self) -> &[u64] {
        &self.ramified
    }

    /// disc(B): the product of the finite ramified primes; 1 when split.
    pub fn disc(&self) -> u64 {
        self.disc_b
    }

    pub fn is_split(&self) -> bool {
        self.disc_b == 1
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} / Q)", self.a, self.b)
    }
}

/// An element w + x i + y j + z ij with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionElement {
    pub w: Rat,
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl QuaternionElement {
    pub fn new(w: Rat, x: Rat, y: Rat, z: Rat) -> Self {
        QuaternionElement { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        Self::new(Rat::one(), Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn i() -> Self {
        Self::new(Rat::zero(), Rat::one(), Rat::zero(), Rat::zero())
    }

    pub fn j() -> Self {
        Self::new(Rat::zero(), Rat::zero(), Rat::one(), Rat::zero())
    }

    /// The image of alpha in k under the embedding i = delta = sqrt(D).
    pub fn from_field(alpha: &FieldElement) -> Self {
        Self::new(alpha.x.clone(), alpha.y.clone(), Rat::zero(), Rat::zero())
    }

    /// alpha * j for alpha in k: spans the second summand of B = k + k j.
    pub fn from_field_times_j(alpha: &FieldElement) -> Self {
        Self::new(Rat::zero(), Rat::zero(), alpha.x.clone(), alpha.y.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.w + &other.w,
            &self.x + &other.x,
            &self.y + &other.y,
            &self.z + &other.z,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.w - &other.w,
            &self.x - &other.x,
            &self.y - &other.y,
            &self.z - &other.z,
        )
    }

    pub fn scale(&self, q: &Rat) -> Self {
        Self::new(&self.w * q, &self.x * q, &self.y * q, &self.z * q)
    }

    pub fn multiply(&self, other: &Self, alg: &QuaternionAlgebra) -> Self {
        let (a, b) = (&alg.a, &alg.b);
        let (w1, x1, y1, z1) = (&self.w, &self.x, &self.y, &self.z);
        let (w2, x2, y2, z2) = (&other.w, &other.x, &other.y, &other.z);
        Self::new(
            w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2,
            w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
        )
    }

    /// Main involution: w - x i - y j - z ij.
    pub fn conjugate(&self) -> Self {
        Self::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    /// Reduced trace 2w.
    pub fn trd(&self) -> Rat {
        &self.w * rat_int(2)
    }

    /// Reduced norm w^2 - a x^2 - b y^2 + a b z^2.
    pub fn nrd(&self, alg: &QuaternionAlgebra) -> Rat {
        let (a, b) = (&alg.a, &alg.b);
        &self.w * &self.w - a * &self.x * &self.x - b * &self.y * &self.y
            + a * b * &self.z * &self.z
    }

    /// The positive involution b -> delta conj(b) delta^{-1} with delta = i:
    /// fixes j and ij, negates i (conjugation on the embedded k).
    pub fn dagger(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn inverse(&self, alg: &QuaternionAlgebra) -> Option<Self> {
        let n = self.nrd(alg);
        if n.is_zero() {
            return None;
        }
        Some(self.conjugate().scale(&n.recip()))
    }

    pub fn coords(&self) -> Vec<Rat> {
        vec![self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

impl fmt::Display for QuaternionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} i + {} j + {} ij", self.w, self.x, self.y, self.z)
    }
}

/// The algebra attached to W: presentation (disc(k), -det(W)), with the
/// ramified set computed by Hilbert symbols and checked against the
/// invariant-match relation at every relevant place.
pub fn algebra_from_space(space: &HermitianSpace) -> Result<QuaternionAlgebra> {
    let ctx = space.ctx();
    let det = space.det_class();
    let alg = QuaternionAlgebra::new(Rat::from_integer(ctx.d_big()), -det.clone())?;
    // inv_p(B) = (-1, D)_p * inv_p(W) at every place of interest.
    let mut support = vec![2u64];
    support.extend(ctx.disc_primes());
    support.extend(&alg.ramified);
    support.sort_unstable();
    support.dedup();
    for p in support {
        let v = Place::Finite(p);
        let lhs = hilbert_symbol(&alg.a, &alg.b, &v)?;
        let rhs = algebra_invariant_from_space(&det, ctx.d(), &v)?;
        if lhs != rhs {
            return Err(Error::Internal(format!(
                "invariant match fails at p = {p} for D = {}, det = {det}",
                ctx.d()
            )));
        }
    }
    if algebra_invariant_from_space(&det, ctx.d(), &Place::Infinite)? != 1 {
        return Err(Error::Internal(format!(
            "algebra for D = {}, det = {det} is definite",
            ctx.d()
        )));
    }
    Ok(alg)
}

/// The level N = |D| / disc(B); integral by construction.
pub fn level(ctx: &FieldContext, alg: &QuaternionAlgebra) -> Result<u64> {
    let abs_d = ctx.abs_d();
    if alg.disc_b == 0 || abs_d % alg.disc_b != 0 {
        return Err(Error::InvalidInput(format!(
            "disc(B) = {} does not divide |D| = {abs_d}",
            alg.disc_b
        )));
    }
    Ok(abs_d / alg.disc_b)
}

/// lambda(x, y) = Trd(delta^{-1} x conj(y)) with delta = i; the perfect
/// symplectic form compatible with the dagger involution.
pub fn symplectic_form(
    alg: &QuaternionAlgebra,
    x: &QuaternionElement,
    y: &QuaternionElement,
) -> Rat {
    let delta_inv = QuaternionElement::i().inverse(alg).expect("i is a unit");
    delta_inv
        .multiply(&x.multiply(&y.conjugate(), alg), alg)
        .trd()
}

/// The k-valued hermitian form <x, y> = pi(x conj(y)), where pi projects
/// B = k + k j onto the first summand (coordinates of 1 and i).
pub fn hermitian_form(
    alg: &QuaternionAlgebra,
    x: &QuaternionElement,
    y: &QuaternionElement,
) -> FieldElement {
    let p = x.multiply(&y.conjugate(), alg);
    FieldElement::new(p.w, p.x)
}

/// An Eichler order R = O_k + a*j of level N in B, with its Z-basis and the
/// provenance of its construction: the lattice's Steinitz ideal and the
/// norm-equation solution that rescaled it.
#[derive(Debug, Clone)]
pub struct EichlerOrder {
    algebra: QuaternionAlgebra,
    basis: [QuaternionElement; 4],
    level: u64,
    source_ideal: FractionalIdeal,
    rescaler: FieldElement,
    steinitz: FractionalIdeal,
}

impl EichlerOrder {
    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &[QuaternionElement; 4] {
        &self.basis
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// The Steinitz ideal of the input lattice, before rescaling.
    pub fn source_ideal(&self) -> &FractionalIdeal {
        &self.source_ideal
    }

    /// The element alpha with a = source_ideal / alpha and Nm(a) j^2 = 1.
    pub fn rescaler(&self) -> &FieldElement {
        &self.rescaler
    }

    /// The rescaled coefficient ideal of the k*j part.
    pub fn steinitz_ideal(&self) -> &FractionalIdeal {
        &self.steinitz
    }

    pub fn to_zlattice(&self) -> Result<ZLattice> {
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(|e| e.coords()).collect();
        ZLattice::from_rows(&rows)
    }
}

/// Reduced discriminant of a 4-element Z-basis spanning an order: the
/// positive square root of |det Trd(e_i e_j)|. Errors when the determinant
/// is not a perfect square (the basis does not span an order).
pub fn reduced_discriminant(alg: &QuaternionAlgebra, basis: &[QuaternionElement; 4]) -> Result<BigInt> {
    let gram: Vec<Vec<Rat>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| u.multiply(v, alg).trd()).collect())
        .collect();
    let det = rat_det(&gram);
    if !det.denom().is_one() {
        return Err(Error::InvalidInput(format!(
            "trace form determinant {det} is not integral"
        )));
    }
    let det = det.numer().abs();
    sqrt_exact(&det).ok_or_else(|| {
        Error::InvalidInput(format!("|det Trd(e_i e_j)| = {det} is not a perfect square"))
    })
}

/// Builds and fully verifies the Eichler order R = O_k + a*j attached to a
/// self-dual lattice L in W:
///
/// 1. Nm(a) j^2 must lie in Nm(k^x) (a consequence of the Steinitz coset);
/// 2. rescale a so that Nm(a) j^2 = 1 exactly, via the norm-equation solver;
/// 3. assemble the Z-basis of O_k + a*j;
/// 4. verify ring closure, O_k-containment, R^dagger = R, reduced
///    discriminant |D| (squarefree), self-duality under the symplectic form,
///    and hermitian self-duality with Steinitz class equal to that of L;
/// 5. set the level N = |D| / disc(B).
pub fn construct_eichler_order(
    space: &HermitianSpace,
    lattice: &HermitianLattice,
) -> Result<EichlerOrder> {
    let ctx = space.ctx();
    let alg = algebra_from_space(space)?;
    let j_sq = alg.b.clone(); // j^2 = -det(W) = m > 0

    let steinitz_form = lattice.steinitz();
    let ideal = crate::ideals::ideal_from_form(ctx, &steinitz_form)?;

    // Nm(a) j^2 is a norm from k; solve Nm(alpha) = Nm(a) j^2 and divide.
    let target = ideal.norm() * &j_sq;
    let alpha = solve_norm_equation(ctx, &target)?.ok_or_else(|| {
        Error::Internal(format!(
            "Nm(a) j^2 = {target} is not a norm at D = {}; the Steinitz coset forces solvability",
            ctx.d()
        ))
    })?;
    let alpha_inv = alpha.inverse(ctx).expect("norm-one rescaler is nonzero");
    let scaled = ideal.scale(&alpha_inv, ctx)?;
    if scaled.norm() * &j_sq != Rat::one() {
        return Err(Error::Internal("rescaling failed to normalize Nm(a) j^2".into()));
    }

    // Z-basis {1, omega, g1 j, g2 j} with (g1, g2) the module generators.
    let [g1, g2] = scaled.generators();
    let basis = [
        QuaternionElement::one(),
        QuaternionElement::from_field(&ctx.omega()),
        QuaternionElement::from_field_times_j(&g1),
        QuaternionElement::from_field_times_j(&g2),
    ];

    let order_lattice = ZLattice::from_rows(
        &basis.iter().map(|e| e.coords()).collect::<Vec<_>>(),
    )?;

    // Ring closure: all pairwise basis products stay inside.
    for u in &basis {
        for v in &basis {
            let prod = u.multiply(v, &alg);
            if !order_lattice.contains(&prod.coords()) {
                return Err(Error::Internal(format!(
                    "order not closed under multiplication at D = {}: {u} * {v}",
                    ctx.d()
                )));
            }
        }
    }
    // Contains 1 and the image of O_k.
    for elt in [
        QuaternionElement::one(),
        QuaternionElement::from_field(&ctx.omega()),
    ] {
        if !order_lattice.contains(&elt.coords()) {
            return Err(Error::Internal("order does not contain O_k".into()));
        }
    }
    // Stability under the positive involution.
    for u in &basis {
        if !order_lattice.contains(&u.dagger().coords()) {
            return Err(Error::Internal(format!(
                "order not dagger-stable at D = {}",
                ctx.d()
            )));
        }
    }
    // Reduced discriminant |D|, squarefree.
    let rd = reduced_discriminant(&alg, &basis)?;
    if rd != BigInt::from(ctx.abs_d()) {
        return Err(Error::Internal(format!(
            "reduced discriminant {rd} != |D| = {}",
            ctx.abs_d()
        )));
    }
    if !is_squarefree_u64(rd.to_u64().expect("desk-scale discriminant")) {
        return Err(Error::Internal("reduced discriminant is not squarefree".into()));
    }
    // Self-dual Z-lattice under the symplectic form: integral Gram of
    // determinant +-1.
    let sym_gram: Vec<Vec<Rat>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| symplectic_form(&alg, u, v)).collect())
        .collect();
    if sym_gram
        .iter()
        .any(|row| row.iter().any(|q| !q.denom().is_one()))
    {
        return Err(Error::Internal("symplectic Gram is not integral".into()));
    }
    let sym_det = rat_det(&sym_gram);
    if sym_det.abs() != Rat::one() {
        return Err(Error::Internal(format!(
            "symplectic Gram determinant {sym_det} is not a unit"
        )));
    }
    // Hermitian self-duality: R viewed as O_k (+) a*j is the split lattice
    // with Gram diag(1, -j^2) = diag(1, -1/Nm(a)); its Steinitz class must
    // match the input lattice.
    let as_hermitian = HermitianLattice::split(ctx, scaled.clone());
    if !as_hermitian.is_self_dual()? {
        return Err(Error::Internal("order is not hermitian self-dual".into()));
    }
    if as_hermitian.steinitz() != steinitz_form {
        return Err(Error::Internal(format!(
            "Steinitz class of the order differs from the lattice at D = {}",
            ctx.d()
        )));
    }

    Ok(EichlerOrder {
        level: level(ctx, &alg)?,
        algebra: alg,
        basis,
        source_ideal: ideal,
        rescaler: alpha,
        steinitz: scaled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::field::make_field;
    use crate::forms::FormClass;
    use crate::hermitian::{enumerate_spaces, lattice_classes, lattice_rep};

    fn split_algebra_m2q() -> QuaternionAlgebra {
        // (1, 1 / Q) = M_2(Q).
        QuaternionAlgebra::new(rat_int(1), rat_int(1)).unwrap()
    }

    #[test]
    fn defining_relations() {
        let alg = QuaternionAlgebra::new(rat_int(-7), rat_int(1)).unwrap();
        let i = QuaternionElement::i();
        let j = QuaternionElement::j();
        let ij = i.multiply(&j, &alg);
        assert_eq!(ij, j.multiply(&i, &alg).scale(&rat_int(-1)), "ij = -ji");
        assert_eq!(
            i.multiply(&i, &alg),
            QuaternionElement::one().scale(&rat_int(-7))
        );
        // Nrd(i) = -a = 7 > 0.
        assert_eq!(i.nrd(&alg), rat_int(7));
        assert_eq!(i.trd(), rat_int(0));
    }

    #[test]
    fn norm_is_multiplicative_and_trace_commutes() {
        let alg = QuaternionAlgebra::new(rat_int(-15), rat_int(3)).unwrap();
        let x = QuaternionElement::new(rat(1, 2), rat_int(3), rat(-2, 5), rat_int(1));
        let y = QuaternionElement::new(rat_int(-1), rat(1, 3), rat_int(2), rat(5, 2));
        let xy = x.multiply(&y, &alg);
        let yx = y.multiply(&x, &alg);
        assert_eq!(xy.nrd(&alg), x.nrd(&alg) * y.nrd(&alg));
        assert_eq!(xy.trd(), yx.trd());
        // conj is an anti-involution: conj(xy) = conj(y) conj(x).
        assert_eq!(xy.conjugate(), y.conjugate().multiply(&x.conjugate(), &alg));
        // x + conj(x) = Trd(x), x * conj(x) = Nrd(x).
        assert_eq!(
            x.add(&x.conjugate()),
            QuaternionElement::one().scale(&x.trd())
        );
        assert_eq!(
            x.multiply(&x.conjugate(), &alg),
            QuaternionElement::one().scale(&x.nrd(&alg))
        );
    }

    #[test]
    fn dagger_fixes_j_and_conjugates_k() {
        let i = QuaternionElement::i();
        let j = QuaternionElement::j();
        assert_eq!(j.dagger(), j);
        assert_eq!(i.dagger(), i.scale(&rat_int(-1)));
        // dagger is an involution.
        let x = QuaternionElement::new(rat_int(1), rat_int(2), rat_int(3), rat_int(4));
        assert_eq!(x.dagger().dagger(), x);
    }

    #[test]
    fn ramification_examples() {
        // (-1, -1 / Q) is ramified exactly at {2, inf}: definite, rejected.
        assert!(QuaternionAlgebra::new(rat_int(-1), rat_int(-1)).is_err());

        // D = -7, det = -1: b = 1 is a square, so B is split.
        let alg = QuaternionAlgebra::new(rat_int(-7), rat_int(1)).unwrap();
        assert!(alg.is_split());
        assert_eq!(alg.disc(), 1);

        // D = -15 anisotropic space: ramified at {3, 5}.
        let alg = QuaternionAlgebra::new(rat_int(-15), rat_int(3)).unwrap();
        assert_eq!(alg.ramified(), &[3, 5]);
        assert_eq!(alg.disc(), 15);
    }

    #[test]
    fn algebra_from_spaces_and_levels() {
        let ctx = make_field(-7).unwrap();
        let spaces = enumerate_spaces(&ctx).unwrap();
        let alg = algebra_from_space(&spaces[0]).unwrap();
        assert_eq!(alg.disc(), 1);
        assert_eq!(level(&ctx, &alg).unwrap(), 7);

        let ctx = make_field(-15).unwrap();
        let spaces = enumerate_spaces(&ctx).unwrap();
        let split = algebra_from_space(&spaces[0]).unwrap();
        assert_eq!(split.disc(), 1);
        assert_eq!(level(&ctx, &split).unwrap(), 15);
        let division = algebra_from_space(&spaces[1]).unwrap();
        assert_eq!(division.disc(), 15);
        assert_eq!(level(&ctx, &division).unwrap(), 1);

        // Ramified sets always have even cardinality.
        for d in [-23, -455, -255] {
            let ctx = make_field(d).unwrap();
            for space in enumerate_spaces(&ctx).unwrap() {
                let alg = algebra_from_space(&space).unwrap();
                assert_eq!(alg.ramified().len() % 2, 0, "D={d}");
                assert_eq!(ctx.abs_d() % alg.disc(), 0, "level integrality at D={d}");
            }
        }
    }

    #[test]
    fn level_at_minus_455() {
        let ctx = make_field(-455).unwrap();
        let spaces = enumerate_spaces(&ctx).unwrap();
        let mut discs: Vec<u64> = spaces
            .iter()
            .map(|w| algebra_from_space(w).unwrap().disc())
            .collect();
        discs.sort_unstable();
        // One split space; the three division algebras ramify at prime
        // pairs from {5, 7, 13}.
        assert_eq!(discs, vec![1, 35, 65, 91]);
        let i = spaces
            .iter()
            .position(|w| algebra_from_space(w).unwrap().disc() == 35)
            .unwrap();
        assert_eq!(level(&ctx, &algebra_from_space(&spaces[i]).unwrap()).unwrap(), 13);
    }

    #[test]
    fn level_rejects_mismatched_pair() {
        let ctx = make_field(-7).unwrap();
        let alg = QuaternionAlgebra::new(rat_int(-15), rat_int(3)).unwrap();
        assert_eq!(alg.disc(), 15);
        assert!(level(&ctx, &alg).is_err());
    }

    #[test]
    fn symplectic_form_properties() {
        let alg = QuaternionAlgebra::new(rat_int(-23), rat_int(2)).unwrap();
        let elts = [
            QuaternionElement::new(rat_int(1), rat(1, 2), rat_int(0), rat_int(3)),
            QuaternionElement::new(rat_int(-2), rat_int(1), rat(2, 3), rat_int(0)),
            QuaternionElement::new(rat(1, 5), rat_int(0), rat_int(1), rat(-1, 2)),
        ];
        for x in &elts {
            // Alternating.
            assert_eq!(symplectic_form(&alg, x, x), Rat::zero());
            for y in &elts {
                // lambda(b x, y) = lambda(x, b^dagger y) for all b.
                for b in &elts {
                    let lhs = symplectic_form(&alg, &b.multiply(x, &alg), y);
                    let rhs = symplectic_form(&alg, x, &b.dagger().multiply(y, &alg));
                    assert_eq!(lhs, rhs, "rosati compatibility");
                }
                // lambda(x, y) = Tr_{k/Q} <delta^{-1} x, y>.
                let delta_inv = QuaternionElement::i().inverse(&alg).unwrap();
                let h = hermitian_form(&alg, &delta_inv.multiply(x, &alg), y);
                assert_eq!(symplectic_form(&alg, x, y), h.trace());
            }
        }
        // lambda(k j, k) = 0: the two summands pair to zero.
        let ctx = make_field(-23).unwrap();
        let aj = QuaternionElement::from_field_times_j(&ctx.omega());
        let a = QuaternionElement::from_field(&ctx.omega());
        assert_eq!(symplectic_form(&alg, &aj, &a), Rat::zero());
    }

    #[test]
    fn hermitian_form_is_sesquilinear_over_k() {
        let alg = QuaternionAlgebra::new(rat_int(-7), rat_int(1)).unwrap();
        let ctx = make_field(-7).unwrap();
        let omega = ctx.omega();
        let x = QuaternionElement::new(rat_int(1), rat_int(2), rat_int(0), rat_int(1));
        let y = QuaternionElement::new(rat_int(0), rat_int(1), rat_int(1), rat_int(0));
        // <a x, y> = a <x, y> for a in k.
        let ax = QuaternionElement::from_field(&omega).multiply(&x, &alg);
        assert_eq!(
            hermitian_form(&alg, &ax, &y),
            omega.mul(&hermitian_form(&alg, &x, &y), &ctx)
        );
        // <x, a y> = conj(a) <x, y>.
        let ay = QuaternionElement::from_field(&omega).multiply(&y, &alg);
        assert_eq!(
            hermitian_form(&alg, &x, &ay),
            omega.conj().mul(&hermitian_form(&alg, &x, &y), &ctx)
        );
    }

    #[test]
    fn reduced_discriminant_of_matrix_order() {
        // In (1,1/Q) = M_2(Q) the standard maximal order has discriminant 1:
        // basis (1+j)/2, (i+ij)/2, (j ... use idempotents e11, e12, e21, e22.
        let alg = split_algebra_m2q();
        let half = rat(1, 2);
        // Matrix units: e11 = (1+i)/2, e22 = (1-i)/2, e12 = (j+ij)/2,
        // e21 = (j-ij)/2 under i -> diag(1,-1), j -> antidiag(1,1).
        let e11 = QuaternionElement::new(half.clone(), half.clone(), Rat::zero(), Rat::zero());
        let e22 = QuaternionElement::new(half.clone(), -half.clone(), Rat::zero(), Rat::zero());
        let e12 = QuaternionElement::new(Rat::zero(), Rat::zero(), half.clone(), half.clone());
        let e21 = QuaternionElement::new(Rat::zero(), Rat::zero(), half.clone(), -half.clone());
        // Idempotent sanity.
        assert_eq!(e11.multiply(&e11, &alg), e11);
        assert_eq!(e11.multiply(&e12, &alg), e12);
        let basis = [e11, e12, e21, e22];
        assert_eq!(reduced_discriminant(&alg, &basis).unwrap(), BigInt::one());
    }

    #[test]
    fn eichler_order_at_minus_seven() {
        let ctx = make_field(-7).unwrap();
        let space = &enumerate_spaces(&ctx).unwrap()[0];
        let class = FormClass::principal(&ctx);
        let lattice = lattice_rep(space, &class).unwrap();
        let order = construct_eichler_order(space, &lattice).unwrap();
        // R = O_k + O_k j: reduced discriminant 7 (trace Gram det 49), level 7.
        assert_eq!(order.level(), 7);
        assert_eq!(
            reduced_discriminant(order.algebra(), order.basis()).unwrap(),
            BigInt::from(7)
        );
        assert!(order.algebra().is_split());
    }

    #[test]
    fn eichler_orders_for_all_lattices_small() {
        for d in [-7, -15, -23] {
            let ctx = make_field(d).unwrap();
            for space in enumerate_spaces(&ctx).unwrap() {
                for class in lattice_classes(&space).unwrap() {
                    let lattice = lattice_rep(&space, &class).unwrap();
                    let order = construct_eichler_order(&space, &lattice).unwrap();
                    assert_eq!(
                        reduced_discriminant(order.algebra(), order.basis()).unwrap(),
                        BigInt::from(ctx.abs_d()),
                        "reduced discriminant at D={d}"
                    );
                    assert_eq!(
                        order.level() * order.algebra().disc(),
                        ctx.abs_d(),
                        "N disc(B) = |D| at D={d}"
                    );
                }
            }
        }
    }
}
