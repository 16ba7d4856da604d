//! Property tests on randomized inputs: symbol identities, norm-equation
//! soundness, and twist/dual contracts on random ideals.

use num_bigint::BigInt;
use proptest::prelude::*;

use shimura_volumes::arith::{rat_int, Rat};
use shimura_volumes::hermitian::{enumerate_spaces, lattice_classes, lattice_rep};
use shimura_volumes::ideals::{ideal_from_form, solve_norm_equation};
use shimura_volumes::symbols::{hilbert_product, hilbert_symbol, Place};
use shimura_volumes::{make_field, reduced_forms};

fn nonzero(range: i64) -> impl Strategy<Value = i64> {
    (-range..=range).prop_filter("nonzero", |&v| v != 0)
}

fn small_fundamental_disc() -> impl Strategy<Value = i64> {
    (3i64..=200)
        .prop_map(|n| -n)
        .prop_filter("odd fundamental", |&d| {
            shimura_volumes::field::validate_discriminant(d).is_ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_symmetry_and_square_invariance(
        an in nonzero(10_000), ad in nonzero(10_000),
        bn in nonzero(10_000), bd in nonzero(10_000),
        c in nonzero(50),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        inf in any::<bool>(),
    ) {
        let a = Rat::new(BigInt::from(an), BigInt::from(ad));
        let b = Rat::new(BigInt::from(bn), BigInt::from(bd));
        let v = if inf { Place::Infinite } else { Place::Finite(p) };
        let ab = hilbert_symbol(&a, &b, &v).unwrap();
        prop_assert_eq!(ab, hilbert_symbol(&b, &a, &v).unwrap());
        let scaled = &a * rat_int(c) * rat_int(c);
        prop_assert_eq!(ab, hilbert_symbol(&scaled, &b, &v).unwrap());
    }

    #[test]
    fn hilbert_reciprocity(
        an in nonzero(10_000), ad in nonzero(10_000),
        bn in nonzero(10_000), bd in nonzero(10_000),
    ) {
        let a = Rat::new(BigInt::from(an), BigInt::from(ad));
        let b = Rat::new(BigInt::from(bn), BigInt::from(bd));
        prop_assert_eq!(hilbert_product(&a, &b).unwrap(), 1);
    }

    #[test]
    fn norm_equation_solutions_are_exact(d in small_fundamental_disc(), qn in 1i64..=60, qd in 1i64..=12) {
        let ctx = make_field(d).unwrap();
        let q = Rat::new(BigInt::from(qn), BigInt::from(qd));
        if let Some(alpha) = solve_norm_equation(&ctx, &q).unwrap() {
            prop_assert_eq!(alpha.norm(&ctx), q);
        }
        // Norms of actual elements are always solvable.
        let witness = shimura_volumes::FieldElement::from_omega_coords(
            BigInt::from(qn % 7),
            BigInt::from(qd % 5 + 1),
        );
        let target = witness.norm(&ctx);
        let found = solve_norm_equation(&ctx, &target).unwrap();
        prop_assert!(found.is_some(), "Nm({witness}) = {target} must be solvable");
        prop_assert_eq!(found.unwrap().norm(&ctx), target);
    }

    #[test]
    fn twist_scales_steinitz_by_square(d in small_fundamental_disc(), idx in any::<prop::sample::Index>(), cidx in any::<prop::sample::Index>()) {
        let ctx = make_field(d).unwrap();
        let spaces = enumerate_spaces(&ctx).unwrap();
        let space = &spaces[idx.index(spaces.len())];
        let classes = lattice_classes(space).unwrap();
        let class = classes[idx.index(classes.len())].clone();
        let lat = lattice_rep(space, &class).unwrap();

        let group = reduced_forms(&ctx);
        let cform = group.elements()[cidx.index(group.order())].clone();
        let c = ideal_from_form(&ctx, &cform).unwrap();

        let twisted = lat.twist(&c);
        // steinitz(L^c) = [c]^2 steinitz(L)
        let c2 = c.multiply(&c, &ctx);
        let expected = c2
            .multiply(&ideal_from_form(&ctx, &lat.steinitz()).unwrap(), &ctx)
            .class_label(&ctx);
        prop_assert_eq!(twisted.steinitz(), expected);
        // Twisting preserves self-duality and the det class up to Nm(c)^2.
        prop_assert!(twisted.is_self_dual().unwrap());
        prop_assert_eq!(lat.det() / twisted.det(), c.norm() * c.norm());
    }

    #[test]
    fn dual_is_involutive_on_representatives(d in small_fundamental_disc(), idx in any::<prop::sample::Index>()) {
        let ctx = make_field(d).unwrap();
        let spaces = enumerate_spaces(&ctx).unwrap();
        let space = &spaces[idx.index(spaces.len())];
        let classes = lattice_classes(space).unwrap();
        let class = classes[idx.index(classes.len())].clone();
        let lat = lattice_rep(space, &class).unwrap();
        let ddual = lat.dual_lattice().unwrap().dual_lattice().unwrap();
        prop_assert!(lat.same_lattice(&ddual).unwrap());
    }

    #[test]
    fn ideal_conjugate_norm_identity(d in small_fundamental_disc(), idx in any::<prop::sample::Index>()) {
        let ctx = make_field(d).unwrap();
        let group = reduced_forms(&ctx);
        let f = group.elements()[idx.index(group.order())].clone();
        let ideal = ideal_from_form(&ctx, &f).unwrap();
        let prod = ideal.multiply(&ideal.conjugate(&ctx), &ctx);
        let expected = shimura_volumes::FractionalIdeal::unit().scale_rat(&ideal.norm(), &ctx);
        prop_assert_eq!(prod, expected);
    }
}
