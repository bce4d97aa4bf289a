#![allow(dead_code)]

use std::sync::LazyLock;

use bialgebroid::algebra::{ActionFamily, Side};
use bialgebroid::fixtures::{base_as_total, dual_numbers, group_z2, idempotent_monoid, truncated};
use bialgebroid::io::load_crossed;
use bialgebroid::lie_rinehart::{abelian, jet_algebroid, rank_one, rank_two, restricted_enveloping, RestrictedLieRinehart};
use bialgebroid::matrix::Matrix;
use bialgebroid::{Field, LeftBialgebroid};

pub fn fp(p: u32) -> Field {
    Field::prime(p).unwrap()
}

pub fn crossed() -> RestrictedLieRinehart {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/crossed-sl.json");
    load_crossed(path).unwrap().build().unwrap()
}

/// The restricted Lie–Rinehart algebras behind the enveloping fixtures.
pub fn lie_rinehart() -> Vec<(String, RestrictedLieRinehart)> {
    let mut out = Vec::new();
    for p in [2, 3] {
        out.push((format!("rank1-p{p}"), rank_one(p).unwrap()));
        out.push((format!("rank2-p{p}"), rank_two(p).unwrap()));
        out.push((format!("abelian2-p{p}"), abelian(fp(p), 2).unwrap()));
    }
    out.push(("crossed".into(), crossed()));
    out
}

static ALL: LazyLock<Vec<(String, LeftBialgebroid)>> = LazyLock::new(build_fixtures);

/// Every fixture used across the suites, small ones first. Built once per
/// test binary; hopf data is cached inside each value.
pub fn fixtures() -> Vec<(String, LeftBialgebroid)> {
    ALL.clone()
}

pub fn fixtures_ref() -> &'static [(String, LeftBialgebroid)] {
    &ALL
}

fn build_fixtures() -> Vec<(String, LeftBialgebroid)> {
    let mut out = vec![
        ("dual-numbers".to_string(), dual_numbers()),
        ("group-z2-p2".into(), group_z2(2).unwrap()),
        ("group-z2-p3".into(), group_z2(3).unwrap()),
        ("idempotent-monoid".into(), idempotent_monoid()),
        ("base-p2".into(), base_as_total(&truncated(fp(2), "t", 2)).unwrap()),
        ("base-p3".into(), base_as_total(&truncated(fp(3), "t", 3)).unwrap()),
    ];
    for (name, l) in lie_rinehart() {
        out.push((name, restricted_enveloping(&l).unwrap()));
    }
    out.extend(jets());
    out
}

pub fn jets() -> Vec<(String, LeftBialgebroid)> {
    let mut out = Vec::new();
    for p in [2, 3] {
        for (n, l) in [(1, rank_one(p).unwrap()), (2, rank_two(p).unwrap())] {
            out.push((format!("jet-n{n}-p{p}"), jet_algebroid(&l).unwrap().as_left().unwrap()));
        }
    }
    out
}

/// `A` as a left `U`-module through `u·a = ε(u s(a))`.
pub fn base_module(b: &LeftBialgebroid) -> ActionFamily {
    let f = b.field();
    let da = b.base_dim();
    let ops = (0..b.dim())
        .map(|u| {
            let cols: Vec<_> = (0..da).map(|a| b.action_on_base(&b.basis(u), &b.base().basis(a))).collect();
            Matrix::from_columns(f, da, &cols)
        })
        .collect();
    ActionFamily::new(Side::Left, ops)
}

/// The one-dimensional `A`-module through the coefficient of `b_0`, when
/// that is a character of `A`.
pub fn augmentation(b: &LeftBialgebroid, side: Side) -> Option<ActionFamily> {
    let f = b.field();
    let a = b.base();
    let ops: Vec<Matrix> = (0..a.dim()).map(|i| Matrix::from_rows(f, &[vec![a.basis(i)[0].clone()]], 1).unwrap()).collect();
    let m = ActionFamily::new(side, ops);
    m.check(a).is_none().then_some(m)
}
