mod common;

use bialgebroid::dual::{check_dual_actions, check_s_maps, left_dual, right_dual, Dual};
use bialgebroid::fixtures::{dual_numbers, group_z2, idempotent_monoid};
use bialgebroid::matrix::{nonzeros, unit_vec, Vector};
use bialgebroid::report::Status;
use bialgebroid::LeftBialgebroid;
use common::fixtures_ref;
use proptest::prelude::*;

fn both(b: &LeftBialgebroid) -> [Dual; 2] {
    [left_dual(b).unwrap(), right_dual(b).unwrap()]
}

#[test]
fn duals_are_right_bialgebroids_in_biduality() {
    for (name, b) in fixtures_ref() {
        for d in both(b) {
            let r = d.check();
            assert!(r.passed(), "{name} {:?}\n{}", d.kind, r.to_text());
            let r = d.biduality_check();
            assert!(r.passed(), "{name} {:?}\n{}", d.kind, r.to_text());
            assert_eq!(d.pairing_rank(), b.dim(), "{name}");
        }
    }
}

#[test]
fn dual_basis_is_dual_to_the_free_basis() {
    for (name, b) in fixtures_ref().iter().take(12) {
        for d in both(b) {
            let r = d.free_basis().len();
            assert_eq!(r * b.base_dim(), b.dim(), "{name}");
            for i in 0..r {
                for (j, e) in d.free_basis().iter().enumerate() {
                    let want = if i == j { b.base().one() } else { b.base().zero() };
                    assert_eq!(d.eval(&d.dual_basis(i), e), want, "{name} {i} {j}");
                }
            }
        }
    }
}

/// Over `A = k` both duals are the linear dual with the convolution product
/// `(ψψ')(u) = ψ(u(1)) ψ'(u(2))` or its mirror; on these cocommutative
/// fixtures the two agree.
#[test]
fn convolution_over_the_ground_field() {
    for b in [dual_numbers(), group_z2(2).unwrap(), group_z2(3).unwrap(), idempotent_monoid()] {
        let n = b.dim();
        let f = b.field();
        for d in both(&b) {
            let w = &d.bialgebroid.total;
            for x in 0..n {
                for y in 0..n {
                    let (wx, wy) = (unit_vec(f, n, x), unit_vec(f, n, y));
                    let prod = d.functional(&w.mul(&wx, &wy));
                    let (fx, fy) = (d.functional(&wx), d.functional(&wy));
                    for u in 0..n {
                        let mut want = f.zero();
                        for (idx, c) in nonzeros(&b.delta_columns()[u]) {
                            let (u1, u2) = (idx / n, idx % n);
                            want = &want + &(c * &(fx.get(0, u1) * fy.get(0, u2)));
                        }
                        assert_eq!(prod.get(0, u), &want);
                    }
                }
            }
            // The unit is the counit of U.
            assert_eq!(&d.functional(&w.one()), b.counit_matrix());
        }
    }
}

#[test]
fn antipode_maps_between_the_duals() {
    for (name, b) in fixtures_ref() {
        let r = check_s_maps(b).unwrap();
        assert!(r.passed(), "{name}\n{}", r.to_text());
        let hopf = b.is_left_hopf() && b.is_right_hopf();
        let want = if hopf { Status::Pass } else { Status::Skipped };
        assert_eq!(r.status("s_maps.inverse"), Some(want), "{name}");
    }
}

#[test]
fn module_structures_on_the_duals() {
    for (name, b) in fixtures_ref() {
        let r = check_dual_actions(b).unwrap();
        assert!(r.passed(), "{name}\n{}", r.to_text());
    }
}

fn coords(d: &Dual, c: &[i64]) -> Vector {
    let f = d.origin().field();
    (0..d.dim()).map(|i| f.from_i64(c[i % c.len()])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn functionals_round_trip(k in 0usize..17, c in prop::collection::vec(-2i64..3, 1..12), right in any::<bool>()) {
        let all = fixtures_ref();
        let (_, b) = &all[k % all.len()];
        let d = if right { right_dual(b).unwrap() } else { left_dual(b).unwrap() };
        let w = coords(&d, &c);
        prop_assert_eq!(d.coords_of(&d.functional(&w)), Some(w.clone()));
        for u in 0..b.dim() {
            prop_assert_eq!(d.eval(&w, &b.basis(u)), d.functional(&w).col(u));
        }
    }

    /// `ψ(s(a)u) = a ψ(u)` on `U_*` and `φ(t(a)u) = φ(u) a` on `U^*`.
    #[test]
    fn functionals_are_linear_over_the_base(k in 0usize..17, c in prop::collection::vec(-2i64..3, 1..12), a in 0usize..4, u in 0usize..64) {
        let all = fixtures_ref();
        let (name, b) = &all[k % all.len()];
        let (a, u) = (b.base().basis(a % b.base_dim()), b.basis(u % b.dim()));
        let lower = left_dual(b).unwrap();
        let w = coords(&lower, &c);
        prop_assert_eq!(lower.eval(&w, &b.mul(&b.s(&a), &u)), b.base().mul(&a, &lower.eval(&w, &u)), "{}", name);
        let upper = right_dual(b).unwrap();
        let w = coords(&upper, &c);
        prop_assert_eq!(upper.eval(&w, &b.mul(&b.t(&a), &u)), b.base().mul(&upper.eval(&w, &u), &a), "{}", name);
    }
}
