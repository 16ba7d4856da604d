//! Wider sweeps than the acceptance gate; ignored by default. Run with
//!
//!     cargo test -p shimura-volumes --test stress -- --ignored --nocapture

use shimura_volumes::verify::{
    verify_genus_counting, verify_mass_decomposition, verify_projection_formula,
    verify_self_duality, verify_steinitz_census,
};
use shimura_volumes::zeta::zeta_constants;

#[test]
#[ignore]
fn self_duality_to_500() {
    let r = verify_self_duality(500);
    println!("{}: {} checks", r.name, r.checks);
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
#[ignore]
fn steinitz_census_to_2000() {
    let r = verify_steinitz_census(2000);
    println!("{}: {} checks", r.name, r.checks);
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
#[ignore]
fn genus_counting_to_5000() {
    let r = verify_genus_counting(5000);
    println!("{}: {} checks", r.name, r.checks);
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
#[ignore]
fn projection_formula_to_5000() {
    let r = verify_projection_formula(5000);
    println!("{}: {} checks", r.name, r.checks);
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
#[ignore]
fn mass_decomposition_1000_pairs() {
    let r = verify_mass_decomposition(1000);
    println!("{}: {} checks", r.name, r.checks);
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
#[ignore]
fn zeta_at_200_digits() {
    let z = zeta_constants(200).expect("dual-method agreement at 200 digits");
    // Leading digits stay pinned against the lower-precision value.
    let low = zeta_constants(50).expect("50 digits");
    assert_eq!(
        z.zeta_prime_m1.to_decimal_string(50),
        low.zeta_prime_m1.to_decimal_string(50)
    );
}
