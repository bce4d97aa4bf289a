//! Small bialgebroids used throughout the tests, the CLI and the bindings.

use crate::algebra::Algebra;
use crate::bialgebroid::{kron, LeftBialgebroid};
use crate::error::{invalid, Result};
use crate::field::Field;
use crate::matrix::{unit_vec, zero_vec, Matrix, Vector};

/// The ground field as a one-dimensional algebra.
pub fn ground(f: Field) -> Algebra {
    Algebra::from_fn(f, vec!["1".into()], unit_vec(f, 1, 0), |_, _| unit_vec(f, 1, 0))
}

/// `k[t]/(t^n)` with basis `1, t, ..., t^{n-1}`.
pub fn truncated(f: Field, var: &str, n: usize) -> Algebra {
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        })
        .collect();
    Algebra::from_fn(f, labels, unit_vec(f, n, 0), |i, j| if i + j < n { unit_vec(f, n, i + j) } else { zero_vec(f, n) })
}

/// A bialgebra over `k` seen as a bialgebroid with `A = k`.
/// `delta[u]` lists `(i, j)` with coefficient one.
pub fn over_ground(total: Algebra, delta: &[Vec<(usize, usize)>], counit: &[i64]) -> Result<LeftBialgebroid> {
    let f = total.field();
    let n = total.dim();
    if delta.len() != n || counit.len() != n {
        return invalid("one coproduct and counit value per basis element expected");
    }
    let terms: Vec<Vec<_>> = delta.iter().map(|ts| ts.iter().map(|&(i, j)| (i, j, f.one())).collect()).collect();
    let d = LeftBialgebroid::delta_from_terms(f, n, &terms);
    let one = Matrix::from_columns(f, n, &[total.one()]);
    let eps = Matrix::from_rows(f, &[counit.iter().map(|&c| f.from_i64(c)).collect()], n)?;
    LeftBialgebroid::new(ground(f), total, one.clone(), one, d, eps)
}

/// `F_2[X]/(X²)` with `X` primitive.
pub fn dual_numbers() -> LeftBialgebroid {
    let f = Field::prime(2).expect("2 is prime");
    over_ground(truncated(f, "X", 2), &[vec![(0, 0)], vec![(1, 0), (0, 1)]], &[1, 0]).expect("valid fixture")
}

/// The group algebra of `Z/2` over `F_p`, `g` grouplike.
pub fn group_z2(p: u32) -> Result<LeftBialgebroid> {
    let f = Field::prime(p)?;
    let total = Algebra::from_fn(f, vec!["1".into(), "g".into()], unit_vec(f, 2, 0), |i, j| unit_vec(f, 2, (i + j) % 2));
    over_ground(total, &[vec![(0, 0)], vec![(1, 1)]], &[1, 1])
}

/// `F_2[{1, x}]` with `x² = x` and `x` grouplike: a bialgebra that is
/// neither left nor right Hopf.
pub fn idempotent_monoid() -> LeftBialgebroid {
    let f = Field::prime(2).expect("2 is prime");
    let total = Algebra::from_fn(f, vec!["1".into(), "x".into()], unit_vec(f, 2, 0), |i, j| unit_vec(f, 2, i.max(j)));
    over_ground(total, &[vec![(0, 0)], vec![(1, 1)]], &[1, 1]).expect("valid fixture")
}

/// `U = A` for commutative `A`, with `s = t = id`, `Δ(a) = a ⊗ 1`, `ε = id`.
pub fn base_as_total(a: &Algebra) -> Result<LeftBialgebroid> {
    if !a.is_commutative() {
        return invalid("U = A needs a commutative base");
    }
    let f = a.field();
    let n = a.dim();
    let id = Matrix::identity(f, n);
    let one = a.one();
    let cols: Vec<Vector> = (0..n).map(|i| kron(&a.basis(i), &one)).collect();
    let delta = Matrix::from_columns(f, n * n, &cols);
    LeftBialgebroid::new(a.clone(), a.clone(), id.clone(), id.clone(), delta, id)
}

/// Named presets available from the command line. `p` and `rank` are
/// ignored where they do not apply.
pub fn preset(name: &str, p: u32, rank: usize) -> Result<LeftBialgebroid> {
    use crate::lie_rinehart as lr;
    match name {
        "dual-numbers" => Ok(dual_numbers()),
        "group-z2" => group_z2(p),
        "idempotent-monoid" => Ok(idempotent_monoid()),
        "base" => base_as_total(&truncated(Field::prime(p)?, "t", p as usize)),
        "rank1-dual-numbers" => lr::restricted_enveloping(&lr::rank_one(p)?),
        "abelian-n" => lr::restricted_enveloping(&lr::abelian(Field::prime(p)?, rank)?),
        "rank2" => lr::restricted_enveloping(&lr::rank_two(p)?),
        "jet" => {
            let l = match rank {
                1 => lr::rank_one(p)?,
                2 => lr::rank_two(p)?,
                _ => return invalid("the jet preset has rank 1 or 2"),
            };
            lr::jet_algebroid(&l)?.as_left()
        }
        _ => invalid(format!("unknown preset {name}")),
    }
}

pub const PRESETS: [&str; 8] = ["dual-numbers", "group-z2", "idempotent-monoid", "base", "rank1-dual-numbers", "abelian-n", "rank2", "jet"];
