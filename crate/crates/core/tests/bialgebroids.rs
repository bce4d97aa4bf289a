mod common;

use bialgebroid::bialgebroid::kron;
use bialgebroid::fixtures::{dual_numbers, group_z2, idempotent_monoid, over_ground, truncated};
use bialgebroid::matrix::{add_vec, Matrix, Vector};
use bialgebroid::report::Status;
use bialgebroid::{LeftBialgebroid, Scalar};
use common::{fixtures, fixtures_ref, fp};
use proptest::prelude::*;

#[test]
fn every_fixture_satisfies_the_axioms() {
    for (name, b) in fixtures() {
        let r = b.check();
        assert!(r.passed(), "{name}\n{}", r.to_text());
        assert!(r.items.len() >= 15, "{name}: only {} checks ran", r.items.len());
    }
}

#[test]
fn hopf_status_per_fixture() {
    for (name, b) in fixtures() {
        let want = name != "idempotent-monoid";
        assert_eq!((b.is_left_hopf(), b.is_right_hopf()), (want, want), "{name}");
    }
}

#[test]
fn bogus_counit_is_caught() {
    // ε(X) = 1 on F_2[X]/(X²) is not multiplicative: ε(X·X) = 0.
    let f = fp(2);
    let b = over_ground(truncated(f, "X", 2), &[vec![(0, 0)], vec![(1, 0), (0, 1)]], &[1, 1]).unwrap();
    let r = b.check();
    assert_eq!(r.status("counit.product"), Some(Status::Fail));
    assert_eq!(r.status("coproduct.counital"), Some(Status::Fail));
    assert!(r.get("counit.product").unwrap().witness.is_some());
}

#[test]
fn non_coassociative_coproduct_is_caught() {
    // Δ(X) = X ⊗ X + X ⊗ 1 breaks coassociativity.
    let f = fp(2);
    let b = over_ground(truncated(f, "X", 2), &[vec![(0, 0)], vec![(1, 1), (1, 0)]], &[1, 0]).unwrap();
    assert_eq!(b.check().status("coproduct.coassociative"), Some(Status::Fail));
}

#[test]
fn shape_errors_are_rejected() {
    let f = fp(2);
    let u = truncated(f, "X", 2);
    let bad = Matrix::zeros(f, 3, 1);
    let one = Matrix::from_columns(f, 2, &[u.one()]);
    let eps = Matrix::from_rows(f, &[vec![f.one(), f.zero()]], 2).unwrap();
    let delta = Matrix::zeros(f, 4, 2);
    assert!(LeftBialgebroid::new(bialgebroid::fixtures::ground(f), u, bad, one, delta, eps).is_err());
}

#[test]
fn coop_is_an_involution() {
    for (name, b) in fixtures() {
        let cc = b.coop().coop();
        assert!(cc.same_presentation(&b), "{name}");
        assert!(b.coop().check().passed(), "{name}: coop fails the axioms");
    }
}

#[test]
fn op_round_trips_through_the_right_bialgebroid() {
    for (name, b) in fixtures().into_iter().take(10) {
        let w = b.op();
        assert!(w.check().passed(), "{name}");
        assert!(w.op().unwrap().same_presentation(&b), "{name}");
    }
}

fn tensor_of(b: &LeftBialgebroid, terms: &[(usize, usize)]) -> Vector {
    let mut out = bialgebroid::matrix::zero_vec(b.field(), b.dim() * b.dim());
    for &(i, j) in terms {
        out = add_vec(&out, &kron(&b.basis(i), &b.basis(j)));
    }
    out
}

#[test]
fn translation_of_group_likes_and_primitives() {
    // Hopf algebras over k: u₊ ⊗ u₋ = u(1) ⊗ S(u(2)). For g with g² = 1 that is
    // g ⊗ g; for a primitive X over F_2 it is X ⊗ 1 + 1 ⊗ X.
    let z2 = group_z2(3).unwrap();
    let dl = &z2.spaces().unwrap().dl;
    assert_eq!(z2.translate_left(&z2.basis(1)).unwrap(), dl.project(&tensor_of(&z2, &[(1, 1)])));
    let dr = &z2.spaces().unwrap().dr;
    assert_eq!(z2.translate_right(&z2.basis(1)).unwrap(), dr.project(&tensor_of(&z2, &[(1, 1)])));

    let dn = dual_numbers();
    let dl = &dn.spaces().unwrap().dl;
    assert_eq!(dn.translate_left(&dn.basis(1)).unwrap(), dl.project(&tensor_of(&dn, &[(1, 0), (0, 1)])));
}

#[test]
fn monoid_is_not_hopf_and_translation_is_refused() {
    let m = idempotent_monoid();
    let (al, ar) = m.hopf_galois_maps().unwrap();
    assert!(!al.is_invertible() && !ar.is_invertible());
    assert!(matches!(m.translate_left(&m.basis(1)), Err(bialgebroid::Error::Unsupported(_))));
    let r = m.verify_translation_identities();
    assert!(r.passed());
    assert!(r.items.iter().all(|i| i.status == Status::Skipped));
}

fn element(b: &LeftBialgebroid, coeffs: &[u8]) -> Vec<Scalar> {
    (0..b.dim()).map(|i| b.field().from_i64(coeffs[i % coeffs.len()] as i64)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `(uv)₊ ⊗ (uv)₋ = u₊v₊ ⊗ v₋u₋` on random elements, recomputed from lifts.
    #[test]
    fn translation_is_anti_multiplicative(k in 0usize..16, x in prop::collection::vec(0u8..3, 1..10), y in prop::collection::vec(0u8..3, 1..10)) {
        let hopf: Vec<_> = fixtures_ref().iter().filter(|(_, b)| b.is_left_hopf()).collect();
        let (_, b) = hopf[k % hopf.len()];
        let (u, v) = (element(b, &x), element(b, &y));
        let lu = b.translate_left_lift(&u).unwrap();
        let lv = b.translate_left_lift(&v).unwrap();
        let dl = &b.spaces().unwrap().dl;
        let product = b.lift_product_with(&lu, &lv, true);
        prop_assert_eq!(dl.project(&product), b.translate_left(&b.mul(&u, &v)).unwrap());
    }

    /// `Δ` is linear and multiplicative on random elements.
    #[test]
    fn coproduct_is_multiplicative(k in 0usize..17, x in prop::collection::vec(0u8..3, 1..10), y in prop::collection::vec(0u8..3, 1..10)) {
        let all = fixtures_ref();
        let (_, b) = &all[k % all.len()];
        let (u, v) = (element(b, &x), element(b, &y));
        let q = &b.spaces().unwrap().q;
        let prod = b.lift_product(&b.delta_lift(&u), &b.delta_lift(&v));
        prop_assert_eq!(q.project(&prod), b.coproduct(&b.mul(&u, &v)).unwrap());
    }

    /// Products of Takeuchi members do not depend on the lifts: perturbing
    /// both lifts of `Δ(u)` and `Δ(v)` by relation vectors changes nothing.
    #[test]
    fn takeuchi_products_ignore_the_lift(k in 0usize..17, x in prop::collection::vec(0u8..3, 1..10), y in prop::collection::vec(0u8..3, 1..10), w in prop::collection::vec(0u8..3, 1..40)) {
        let all = fixtures_ref();
        let (name, b) = &all[k % all.len()];
        let (u, v) = (element(b, &x), element(b, &y));
        let q = &b.spaces().unwrap().q;
        let n = b.dim() * b.dim();
        let noise = |shift: usize| -> Vector {
            let amb: Vector = (0..n).map(|i| b.field().from_i64(w[(i + shift) % w.len()] as i64)).collect();
            bialgebroid::matrix::sub_vec(&amb, &q.lift(&q.project(&amb)))
        };
        let (r1, r2) = (noise(0), noise(7));
        prop_assert!(q.project(&r1).iter().all(|c| c.is_zero()));
        let du = add_vec(&b.delta_lift(&u), &r1);
        let dv = add_vec(&b.delta_lift(&v), &r2);
        prop_assert_eq!(q.project(&b.lift_product(&du, &dv)), b.coproduct(&b.mul(&u, &v)).unwrap(), "{}", name);
    }
}
