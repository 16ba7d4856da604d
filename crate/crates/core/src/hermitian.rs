//! Signature-(1,1) hermitian spaces over k that admit a self-dual lattice,
//! their Steinitz-class parametrization, concrete lattice representatives,
//! duality and twisting.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{rat_int, Rat};
use crate::field::{FieldContext, FieldElement};
use crate::forms::{compose, reduced_forms, FormClass};
use crate::ideals::{ideal_from_form, FractionalIdeal};
use crate::symbols::{algebra_invariant_from_space, space_invariant_vector, InvariantVector, Place};
use crate::zlattice::{rat_det, ZLattice};
use crate::{Error, Result};

/// A hermitian space W of signature (1,1) over k that admits a self-dual
/// lattice. Such spaces correspond to cosets of the principal genus in
/// CL(k); the canonical determinant representative is det(W) = -m with m
/// the norm (leading coefficient) of the smallest reduced form in the coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianSpace {
    ctx: FieldContext,
    det_m: u64,
    /// The Steinitz coset a_W CL_0(k), sorted by reduced-form label; its
    /// smallest element is the canonical representative.
    coset: Vec<FormClass>,
    inv: InvariantVector,
    /// p | D mapped to true when W (x) Q_p is isotropic.
    isotropy: BTreeMap<u64, bool>,
}

impl HermitianSpace {
    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    /// det(W) as the canonical representative -m in Q^x / Nm(k^x).
    pub fn det_class(&self) -> Rat {
        rat_int(-(self.det_m as i64))
    }

    /// The positive m with det(W) = -m: the norm of the canonical coset
    /// representative ideal.
    pub fn det_m(&self) -> u64 {
        self.det_m
    }

    pub fn invariants(&self) -> &InvariantVector {
        &self.inv
    }

    pub fn is_isotropic_at(&self, p: u64) -> bool {
        *self.isotropy.get(&p).expect("isotropy is recorded at every p | D")
    }

    /// The signed prime: +p when W is isotropic at p, -p otherwise.
    pub fn p_circ(&self, p: u64) -> i64 {
        if self.is_isotropic_at(p) {
            p as i64
        } else {
            -(p as i64)
        }
    }

    /// Signed primes over all p | D, sorted by p.
    pub fn p_circ_all(&self) -> Vec<(u64, i64)> {
        self.ctx.disc_primes().iter().map(|&p| (p, self.p_circ(p))).collect()
    }

    /// True when W (x) Q_p is isotropic for every p | D, i.e. the attached
    /// quaternion algebra is split everywhere.
    pub fn is_globally_isotropic(&self) -> bool {
        self.ctx.disc_primes().iter().all(|&p| self.is_isotropic_at(p))
    }

    /// The canonical coset representative ideal a_W, of norm m.
    pub fn coset_ideal(&self) -> Result<FractionalIdeal> {
        ideal_from_form(&self.ctx, &self.coset[0])
    }
}

/// Enumerates the hermitian spaces of signature (1,1) over k that admit a
/// self-dual lattice. The Steinitz class map matches them with the cosets
/// of the principal genus CL_0(k) in CL(k), so there are exactly
/// 2^(o_k - 1): the determinant class of the coset of \[a\] is -Nm(a).
///
/// Enumerating divisor determinants -m for m | |D| is NOT equivalent: at
/// D = -39 the ramified classes land inside CL_0 (the class group is cyclic
/// of order 4 and the ambiguous class is the square), so every divisor
/// yields the split space and the other space has det class -2.
pub fn enumerate_spaces(ctx: &FieldContext) -> Result<Vec<HermitianSpace>> {
    let group = reduced_forms(ctx);
    let genus = crate::forms::principal_genus(ctx, &group)?;

    // Partition CL(k) into cosets of CL_0(k).
    let mut remaining: Vec<FormClass> = group.elements().to_vec();
    let mut cosets: Vec<Vec<FormClass>> = Vec::new();
    while let Some(rep) = remaining.first().cloned() {
        let mut coset: Vec<FormClass> = genus
            .iter()
            .map(|s| compose(ctx, &rep, s))
            .collect::<Result<_>>()?;
        coset.sort();
        coset.dedup();
        if coset.len() != genus.len() {
            return Err(Error::Internal(format!(
                "coset of {rep} at D = {} has size {}, expected {}",
                ctx.d(),
                coset.len(),
                genus.len()
            )));
        }
        remaining.retain(|f| !coset.contains(f));
        cosets.push(coset);
    }
    cosets.sort_by(|a, b| a[0].cmp(&b[0]));

    let mut seen: Vec<InvariantVector> = Vec::new();
    let mut spaces = Vec::new();
    for coset in cosets {
        // det(W) = -Nm(a_W) = -(leading coefficient of the minimal form).
        let m = coset[0]
            .a
            .to_u64()
            .ok_or_else(|| Error::Internal("coset representative norm overflows u64".into()))?;
        let det = rat_int(-(m as i64));
        let inv = space_invariant_vector(&det, ctx.d())?;
        if seen.contains(&inv) {
            return Err(Error::Internal(format!(
                "distinct Steinitz cosets share local invariants at D = {}",
                ctx.d()
            )));
        }
        let mut isotropy = BTreeMap::new();
        for &p in ctx.disc_primes() {
            let inv_b = algebra_invariant_from_space(&det, ctx.d(), &Place::Finite(p))?;
            isotropy.insert(p, inv_b == 1);
        }
        if algebra_invariant_from_space(&det, ctx.d(), &Place::Infinite)? != 1 {
            return Err(Error::Internal(format!(
                "space det = -{m} over D = {} yields a definite algebra",
                ctx.d()
            )));
        }
        seen.push(inv.clone());
        spaces.push(HermitianSpace {
            ctx: ctx.clone(),
            det_m: m,
            coset,
            inv,
            isotropy,
        });
    }

    let expected = 1usize << (ctx.o_k() - 1);
    if spaces.len() != expected {
        return Err(Error::Internal(format!(
            "found {} hermitian spaces over D = {}, expected {}",
            spaces.len(),
            ctx.d(),
            expected
        )));
    }
    Ok(spaces)
}

/// The set L_W of isometry classes of self-dual lattices in W: the coset
/// a_W * CL_0(k) of the principal genus, labeled by reduced forms and sorted
/// lexicographically. Its size is |CL_0(k)|.
pub fn lattice_classes(space: &HermitianSpace) -> Result<Vec<FormClass>> {
    let ctx = space.ctx();
    let group = reduced_forms(ctx);
    let expected = group.order() / (1usize << (ctx.o_k() - 1));
    if space.coset.len() != expected {
        return Err(Error::Internal(format!(
            "Steinitz coset at D = {} has {} classes, expected {}",
            ctx.d(),
            space.coset.len(),
            expected
        )));
    }
    Ok(space.coset.clone())
}

/// Total number of self-dual lattices over all spaces; always equals the
/// class number h(D), by bijectivity of the Steinitz map.
pub fn total_census(ctx: &FieldContext) -> Result<usize> {
    let mut total = 0;
    for space in enumerate_spaces(ctx)? {
        total += lattice_classes(&space)?.len();
    }
    let h = reduced_forms(ctx).order();
    if total != h {
        return Err(Error::Internal(format!(
            "census mismatch at D = {}: {} lattices vs h = {}",
            ctx.d(),
            total,
            h
        )));
    }
    Ok(total)
}

/// A hermitian O_k-lattice given by a pseudo-basis in a fixed reference
/// basis {e1, e2} of W: L = b1 v1 + b2 v2, with the ambient form recorded as
/// the hermitian Gram matrix of (e1, e2). The form is conjugate-linear in
/// its second argument.
#[derive(Debug, Clone)]
pub struct HermitianLattice {
    ctx: FieldContext,
    ideals: [FractionalIdeal; 2],
    vectors: [[FieldElement; 2]; 2],
    space_gram: [[FieldElement; 2]; 2],
}

impl HermitianLattice {
    /// The split lattice O_k e1 + a e2 with Gram diag(1, -1/Nm(a)).
    pub fn split(ctx: &FieldContext, steinitz: FractionalIdeal) -> Self {
        let minus_inv_norm = -steinitz.norm().recip();
        HermitianLattice {
            ctx: ctx.clone(),
            ideals: [FractionalIdeal::unit(), steinitz],
            vectors: [
                [FieldElement::one(), FieldElement::zero()],
                [FieldElement::zero(), FieldElement::one()],
            ],
            space_gram: [
                [FieldElement::one(), FieldElement::zero()],
                [FieldElement::zero(), FieldElement::from_rat(minus_inv_norm)],
            ],
        }
    }

    /// A general pseudo-basis lattice. The Gram matrix must be hermitian and
    /// nondegenerate.
    pub fn general(
        ctx: &FieldContext,
        ideals: [FractionalIdeal; 2],
        vectors: [[FieldElement; 2]; 2],
        space_gram: [[FieldElement; 2]; 2],
    ) -> Result<Self> {
        if space_gram[0][1] != space_gram[1][0].conj()
            || !space_gram[0][0].conj().sub(&space_gram[0][0]).is_zero()
            || !space_gram[1][1].conj().sub(&space_gram[1][1]).is_zero()
        {
            return Err(Error::InvalidInput("Gram matrix is not hermitian".into()));
        }
        let lat = HermitianLattice {
            ctx: ctx.clone(),
            ideals,
            vectors,
            space_gram,
        };
        if lat.gram_det().is_zero() {
            return Err(Error::InvalidInput("degenerate hermitian form".into()));
        }
        Ok(lat)
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    /// Pairing of two coordinate vectors under the ambient form.
    pub fn pair(&self, u: &[FieldElement; 2], v: &[FieldElement; 2]) -> FieldElement {
        let ctx = &self.ctx;
        let mut acc = FieldElement::zero();
        for a in 0..2 {
            for b in 0..2 {
                acc = acc.add(&u[a].mul(&self.space_gram[a][b], ctx).mul(&v[b].conj(), ctx));
            }
        }
        acc
    }

    /// Gram matrix of the pseudo-basis vectors.
    fn basis_gram(&self) -> [[FieldElement; 2]; 2] {
        [
            [
                self.pair(&self.vectors[0], &self.vectors[0]),
                self.pair(&self.vectors[0], &self.vectors[1]),
            ],
            [
                self.pair(&self.vectors[1], &self.vectors[0]),
                self.pair(&self.vectors[1], &self.vectors[1]),
            ],
        ]
    }

    fn gram_det(&self) -> FieldElement {
        let g = self.basis_gram();
        g[0][0].mul(&g[1][1], &self.ctx).sub(&g[0][1].mul(&g[1][0], &self.ctx))
    }

    /// det(L (x) Q) in Q^x, from the pseudo-basis Gram matrix. The hermitian
    /// determinant of a nondegenerate form is a nonzero rational.
    pub fn det(&self) -> Rat {
        let det = self.gram_det();
        debug_assert!(det.y.is_zero(), "hermitian Gram determinant is rational");
        det.x
    }

    /// The Steinitz class St(L) = [b1 b2], labeled by its reduced form.
    pub fn steinitz(&self) -> FormClass {
        self.ideals[0]
            .multiply(&self.ideals[1], &self.ctx)
            .class_label(&self.ctx)
    }

    /// The Z-generators of L as rational coordinate rows over the Q-basis
    /// {e1, omega e1, e2, omega e2}.
    pub fn z_generators(&self) -> Vec<Vec<Rat>> {
        let ctx = &self.ctx;
        let mut rows = Vec::new();
        for (ideal, vector) in self.ideals.iter().zip(self.vectors.iter()) {
            for g in ideal.generators() {
                let w = [g.mul(&vector[0], ctx), g.mul(&vector[1], ctx)];
                rows.push(coords_row(&w));
            }
        }
        rows
    }

    /// Canonical Z-lattice of L inside W = Q^4.
    pub fn to_zlattice(&self) -> Result<ZLattice> {
        ZLattice::from_rows(&self.z_generators())
    }

    /// The dual lattice L^v = {x : <x, L> in O_k}, computed exactly from the
    /// pseudo-basis: conjugate-inverse coefficient ideals on the dual basis.
    pub fn dual_lattice(&self) -> Result<HermitianLattice> {
        let ctx = &self.ctx;
        let g = self.basis_gram();
        let det = self.gram_det();
        if det.is_zero() {
            return Err(Error::InvalidInput("degenerate Gram".into()));
        }
        let det_inv = det.inverse(ctx).expect("nonzero determinant");
        // Rows of G^{-1} in pseudo-basis coordinates give the dual basis.
        let c = [
            [g[1][1].mul(&det_inv, ctx), g[0][1].neg().mul(&det_inv, ctx)],
            [g[1][0].neg().mul(&det_inv, ctx), g[0][0].mul(&det_inv, ctx)],
        ];
        let mut vectors = [
            [FieldElement::zero(), FieldElement::zero()],
            [FieldElement::zero(), FieldElement::zero()],
        ];
        for i in 0..2 {
            for a in 0..2 {
                vectors[i][a] = c[i][0]
                    .mul(&self.vectors[0][a], ctx)
                    .add(&c[i][1].mul(&self.vectors[1][a], ctx));
            }
        }
        let ideals = [
            self.ideals[0].conjugate(ctx).inverse(ctx),
            self.ideals[1].conjugate(ctx).inverse(ctx),
        ];
        Ok(HermitianLattice {
            ctx: ctx.clone(),
            ideals,
            vectors,
            space_gram: self.space_gram.clone(),
        })
    }

    /// Self-duality: L^v = L as Z-lattices in W.
    pub fn is_self_dual(&self) -> Result<bool> {
        Ok(self.dual_lattice()?.to_zlattice()? == self.to_zlattice()?)
    }

    /// The twist L^c = c (x) L, with the form scaled by c1 conj(c2)/Nm(c):
    /// coefficient ideals pick up c, the ambient Gram is divided by Nm(c).
    pub fn twist(&self, c: &FractionalIdeal) -> HermitianLattice {
        let ctx = &self.ctx;
        let inv_norm = c.norm().recip();
        let scale = FieldElement::from_rat(inv_norm);
        let mut gram = self.space_gram.clone();
        for row in gram.iter_mut() {
            for entry in row.iter_mut() {
                *entry = entry.mul(&scale, ctx);
            }
        }
        HermitianLattice {
            ctx: ctx.clone(),
            ideals: [self.ideals[0].multiply(c, ctx), self.ideals[1].multiply(c, ctx)],
            vectors: self.vectors.clone(),
            space_gram: gram,
        }
    }

    /// Equality as sublattices of the same ambient space (same Gram, same
    /// Z-span).
    pub fn same_lattice(&self, other: &HermitianLattice) -> Result<bool> {
        Ok(self.space_gram == other.space_gram && self.to_zlattice()? == other.to_zlattice()?)
    }

    /// The rational symplectic Gram of the 4 Z-generators under
    /// lambda(x, y) = Tr(delta^{-1} <x, y>); integral with |det| = 1 exactly
    /// when L is self-dual.
    pub fn trace_gram(&self) -> Vec<Vec<Rat>> {
        let ctx = &self.ctx;
        let delta_inv = ctx.delta().inverse(ctx).expect("delta is a unit");
        let mut gens: Vec<[FieldElement; 2]> = Vec::new();
        for (ideal, vector) in self.ideals.iter().zip(self.vectors.iter()) {
            for g in ideal.generators() {
                gens.push([g.mul(&vector[0], ctx), g.mul(&vector[1], ctx)]);
            }
        }
        gens.iter()
            .map(|u| {
                gens.iter()
                    .map(|v| delta_inv.mul(&self.pair(u, v), ctx).trace())
                    .collect()
            })
            .collect()
    }

    /// Independent route to the dual: the Z-dual under the trace form
    /// lambda, which coincides with the hermitian dual because the inverse
    /// different of O_k is delta^{-1} O_k. Returns the dual as a Z-lattice.
    pub fn dual_via_trace(&self) -> Result<ZLattice> {
        let gram = self.trace_gram();
        let inv = crate::zlattice::rat_inverse(&gram)
            .ok_or_else(|| Error::InvalidInput("degenerate trace form".into()))?;
        let gens = self.z_generators();
        let mut rows = Vec::new();
        for coeffs in inv {
            let mut row = vec![Rat::zero(); 4];
            for (c, g) in coeffs.iter().zip(gens.iter()) {
                for (r, x) in row.iter_mut().zip(g.iter()) {
                    *r += c * x;
                }
            }
            rows.push(row);
        }
        ZLattice::from_rows(&rows)
    }
}

/// Coordinates of (w1, w2) in k^2 over {e1, omega e1, e2, omega e2}.
fn coords_row(w: &[FieldElement; 2]) -> Vec<Rat> {
    let mut row = Vec::with_capacity(4);
    for wi in w {
        // x + y sqrt(D) = (x - y) + 2y omega
        row.push(&wi.x - &wi.y);
        row.push(&wi.y * Rat::from_integer(BigInt::from(2)));
    }
    row
}

/// The lattice representative of a class c in L_W: the split lattice
/// O_k + a with a = the reduced-form ideal of c, carrying the diagonal form
/// (1, -1/Nm(a)). Self-duality is verified before returning.
pub fn lattice_rep(space: &HermitianSpace, class: &FormClass) -> Result<HermitianLattice> {
    let classes = lattice_classes(space)?;
    if !classes.contains(class) {
        return Err(Error::InvalidInput(format!(
            "class {class} is not in the admissible coset for det = -{}",
            space.det_m
        )));
    }
    let ctx = space.ctx();
    let ideal = ideal_from_form(ctx, class)?;
    let lattice = HermitianLattice::split(ctx, ideal);
    if !lattice.is_self_dual()? {
        return Err(Error::Internal(format!(
            "split lattice for {class} at D = {} is not self-dual",
            ctx.d()
        )));
    }
    Ok(lattice)
}

/// Determinant of the 4x4 rational trace Gram, exposed for consistency
/// checks: a self-dual lattice has |det| = 1.
pub fn trace_gram_det(lattice: &HermitianLattice) -> Rat {
    rat_det(&lattice.trace_gram())
}
