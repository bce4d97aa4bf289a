//! Manipulating lifts: vectors in plain `k`-tensor products of several factors.

use crate::field::Scalar;
use crate::matrix::{nonzeros, zero_vec, Vector};

pub fn split(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut m = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        m[k] = idx % dims[k];
        idx /= dims[k];
    }
    m
}

pub fn join(multi: &[usize], dims: &[usize]) -> usize {
    multi.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

/// Calls `f(multi_index, coefficient)` for every nonzero entry.
pub fn terms<'a>(v: &'a [Scalar], dims: &'a [usize]) -> impl Iterator<Item = (Vec<usize>, &'a Scalar)> + 'a {
    nonzeros(v).map(move |(i, c)| (split(i, dims), c))
}

/// Replaces factor `k` (basis index `i`) by the two-factor vector `table[i]`
/// of shape `pair`.
pub fn expand(v: &[Scalar], dims: &[usize], k: usize, table: &[Vector], pair: (usize, usize)) -> Vector {
    let mut new_dims = dims.to_vec();
    new_dims.splice(k..=k, [pair.0, pair.1]);
    let len: usize = new_dims.iter().product();
    let field = v[0].field();
    let mut out = zero_vec(field, len);
    for (multi, c) in terms(v, dims) {
        for (p, d) in nonzeros(&table[multi[k]]) {
            let mut m2 = multi.clone();
            m2.splice(k..=k, [p / pair.1, p % pair.1]);
            out[join(&m2, &new_dims)].add_mul(c, d);
        }
    }
    out
}

/// Output factor `i` is input factor `perm[i]`.
pub fn permute(v: &[Scalar], dims: &[usize], perm: &[usize]) -> Vector {
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut out = zero_vec(v[0].field(), v.len());
    for (multi, c) in terms(v, dims) {
        let m2: Vec<usize> = perm.iter().map(|&p| multi[p]).collect();
        out[join(&m2, &new_dims)] = c.clone();
    }
    out
}

/// Applies a linear map given on basis vectors to factor `k`.
/// `images[i]` is the image of basis vector `i`, of length `new_dim`.
pub fn map_factor(v: &[Scalar], dims: &[usize], k: usize, images: &[Vector], new_dim: usize) -> Vector {
    let mut new_dims = dims.to_vec();
    new_dims[k] = new_dim;
    let len: usize = new_dims.iter().product();
    let mut out = zero_vec(v[0].field(), len);
    for (multi, c) in terms(v, dims) {
        for (j, d) in nonzeros(&images[multi[k]]) {
            let mut m2 = multi.clone();
            m2[k] = j;
            out[join(&m2, &new_dims)].add_mul(c, d);
        }
    }
    out
}

/// Sum over terms of a caller-computed vector, scaled by the coefficient.
pub fn accumulate(v: &[Scalar], dims: &[usize], len: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Vector {
    let mut out = zero_vec(v[0].field(), len);
    for (multi, c) in terms(v, dims) {
        let img = f(&multi);
        for (j, d) in nonzeros(&img) {
            out[j].add_mul(c, d);
        }
    }
    out
}
