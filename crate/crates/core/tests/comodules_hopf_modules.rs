mod common;

use bialgebroid::algebra::{ActionFamily, Side};
use bialgebroid::comodule::{check_comodule, coinvariants, comodule_hopf_galois, same_coaction, side_switch, verify_comodule_translation, Comodule};
use bialgebroid::fixtures::{dual_numbers, group_z2, idempotent_monoid};
use bialgebroid::hopf_module::{
    base_regular, build_u_lower_star_hopf_module, build_u_star_hopf_module, check_hopf_module, delta_comparison, fundamental_ll, fundamental_rl, l_l_type2,
    mixing_identity, r_l_type1, HopfKind, HopfModule,
};
use bialgebroid::matrix::Matrix;
use bialgebroid::report::Status;
use bialgebroid::Error;
use common::{augmentation, base_module, fixtures_ref};
use proptest::prelude::*;

#[test]
fn regular_comodules_on_both_sides() {
    for (name, b) in fixtures_ref() {
        for side in [Side::Left, Side::Right] {
            let r = check_comodule(b, &Comodule::regular(b, side));
            assert!(r.passed(), "{name} {side:?}\n{}", r.to_text());
        }
    }
}

#[test]
fn scaled_coaction_is_not_counital() {
    let b = group_z2(3).unwrap();
    let mut c = Comodule::regular(&b, Side::Left);
    c.coaction = c.coaction.scale(&b.field().from_i64(2));
    let r = check_comodule(&b, &c);
    assert_eq!(r.status("comodule.counital"), Some(Status::Fail));
    assert!(r.get("comodule.counital").unwrap().witness.is_some());
}

#[test]
fn coinvariants_of_the_regular_comodule_are_the_target_image() {
    // Δ(t(a)) = 1 ⊗ t(a), and on Hopf fixtures nothing else is coinvariant.
    for (name, b) in fixtures_ref().iter().filter(|(_, b)| b.is_left_hopf()) {
        let cov = coinvariants(b, &Comodule::regular(b, Side::Left)).unwrap().space;
        assert_eq!(cov.dim(), b.base_dim(), "{name}");
        for a in 0..b.base_dim() {
            assert!(cov.contains(&b.t(&b.base().basis(a))), "{name}");
        }
    }
}

#[test]
fn galois_maps_and_translations_of_regular_comodules() {
    for (name, b) in fixtures_ref().iter().take(12) {
        let c = Comodule::regular(b, Side::Left);
        let g = comodule_hopf_galois(b, &c).unwrap();
        assert!(g.well_defined, "{name}");
        assert_eq!(g.bijective(), b.is_left_hopf(), "{name}");
        let r = verify_comodule_translation(b, &c).unwrap();
        assert!(r.passed(), "{name}\n{}", r.to_text());
        if !b.is_left_hopf() {
            assert!(r.items.iter().all(|i| i.status == Status::Skipped), "{name}");
        }
    }
}

#[test]
fn side_switch_round_trips() {
    for (name, b) in fixtures_ref().iter().filter(|(_, b)| b.is_left_hopf() && b.is_right_hopf()).take(10) {
        let c = Comodule::regular(b, Side::Left);
        let right = side_switch(b, &c).unwrap();
        assert!(check_comodule(b, &right).passed(), "{name}");
        let back = side_switch(b, &right).unwrap();
        assert!(same_coaction(b, &back, &c).unwrap(), "{name}");
    }
    let m = idempotent_monoid();
    assert!(matches!(side_switch(&m, &Comodule::regular(&m, Side::Left)), Err(Error::Unsupported(_))));
}

#[test]
fn regular_hopf_modules() {
    for (name, b) in fixtures_ref() {
        for kind in [HopfKind::LeftLeft, HopfKind::RightLeft] {
            let m = HopfModule::regular(b, kind).unwrap();
            let r = check_hopf_module(b, &m);
            assert!(r.passed(), "{name} {kind:?}\n{}", r.to_text());
        }
    }
}

#[test]
fn identity_operators_are_not_a_hopf_module() {
    // Every u acting as the identity breaks X·X = 0 on the dual numbers.
    let b = dual_numbers();
    let mut m = HopfModule::regular(&b, HopfKind::LeftLeft).unwrap();
    m.module = ActionFamily::new(Side::Left, vec![Matrix::identity(b.field(), b.dim()); b.dim()]);
    let r = check_hopf_module(&b, &m);
    assert!(!r.passed());
    let bad = r.failures();
    assert!(bad.iter().any(|i| i.check_id == "hopf_module.module" && i.witness.is_some()));
}

#[test]
fn tensor_constructions_are_hopf_modules() {
    for (name, b) in fixtures_ref().iter().take(12) {
        let n = base_regular(b, Side::Left);
        let rl = r_l_type1(b, &n).unwrap();
        assert!(check_hopf_module(b, &rl.module).passed(), "{name}");
        let ll = l_l_type2(b, &base_module(b)).unwrap();
        assert!(check_hopf_module(b, &ll.module).passed(), "{name}");
    }
}

#[test]
fn delta_comparison_is_an_iso_exactly_on_hopf_fixtures() {
    for (name, b) in fixtures_ref().iter().take(12) {
        let d = delta_comparison(b, &base_module(b)).unwrap();
        assert!(d.morphism, "{name}");
        if b.is_left_hopf() {
            assert!(d.iso, "{name}");
        }
    }
}

#[test]
fn fundamental_theorems_on_regular_modules() {
    for (name, b) in fixtures_ref().iter().filter(|(_, b)| b.is_left_hopf()) {
        let ll = fundamental_ll(b, &HopfModule::regular(b, HopfKind::LeftLeft).unwrap()).unwrap();
        assert!(ll.iso, "{name}");
        assert_eq!(ll.coinvariants.dim(), b.base_dim(), "{name}");
        let rl = fundamental_rl(b, &HopfModule::regular(b, HopfKind::RightLeft).unwrap()).unwrap();
        assert!(rl.verified && rl.images_coinvariant, "{name}");
    }
}

#[test]
fn monoid_fundamental_theorems_fail_honestly() {
    let m = idempotent_monoid();
    let rl = HopfModule::regular(&m, HopfKind::RightLeft).unwrap();
    assert!(matches!(fundamental_rl(&m, &rl), Err(Error::Unsupported(_))));
    // U ⊗ U with the diagonal action has two coinvariant directions that
    // do not generate it.
    let regular = ActionFamily::new(Side::Left, (0..m.dim()).map(|u| m.total().left_mul_matrix(&m.basis(u))).collect());
    let t2 = l_l_type2(&m, &regular).unwrap();
    let ll = fundamental_ll(&m, &t2.module).unwrap();
    assert_eq!((ll.coinvariants.dim(), ll.surjective), (2, false));
    assert!(!delta_comparison(&m, &regular).unwrap().iso);
}

#[test]
fn mixing_identity_on_right_left_modules() {
    for (name, b) in fixtures_ref().iter().filter(|(_, b)| b.is_left_hopf() && b.is_right_hopf()).take(10) {
        let m = HopfModule::regular(b, HopfKind::RightLeft).unwrap();
        let r = mixing_identity(b, &m).unwrap();
        assert!(r.passed(), "{name}\n{}", r.to_text());
    }
}

#[test]
fn dual_hopf_modules_are_free_on_their_coinvariants() {
    for (name, b) in fixtures_ref().iter().filter(|(_, b)| b.is_left_hopf()).take(10) {
        for (_, m) in [build_u_star_hopf_module(b).unwrap(), build_u_lower_star_hopf_module(b).unwrap()] {
            assert!(check_hopf_module(b, &m).passed(), "{name}");
            assert!(fundamental_ll(b, &m).unwrap().iso, "{name}");
        }
    }
    let m = idempotent_monoid();
    assert!(matches!(build_u_star_hopf_module(&m), Err(Error::Unsupported(_))));
}

#[test]
fn trivial_comodules_over_equal_source_and_target() {
    for (name, b) in fixtures_ref().iter().filter(|(n, _)| !n.starts_with("jet")) {
        let Some(aug) = augmentation(b, Side::Left) else { continue };
        let c = Comodule::trivial(b, aug);
        assert!(check_comodule(b, &c).passed(), "{name}");
        assert_eq!(coinvariants(b, &c).unwrap().space.dim(), 1, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Random `t(a)` is coinvariant in `U`.
    #[test]
    fn target_images_are_coinvariant(k in 0usize..17, coeffs in prop::collection::vec(0i64..3, 1..6)) {
        let all = fixtures_ref();
        let (_, b) = &all[k % all.len()];
        let a: Vec<_> = (0..b.base_dim()).map(|i| b.field().from_i64(coeffs[i % coeffs.len()])).collect();
        let cov = coinvariants(b, &Comodule::regular(b, Side::Left)).unwrap().space;
        prop_assert!(cov.contains(&b.t(&a)));
    }
}
