//! Finite-dimensional unital associative algebras given by structure constants.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{invalid, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{axpy, is_zero_vec, nonzeros, sub_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::report::{Report, Witnesses};

/// Sparse product table: `table[i * dim + j]` lists the terms of `b_i b_j`.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Vector,
}

impl Algebra {
    /// Builds an algebra from triples `(i, j, k, c)` meaning `b_i b_j += c b_k`.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        triples: &[(usize, usize, usize, Scalar)],
        unit: Vector,
    ) -> Result<Algebra> {
        let dim = labels.len();
        if dim == 0 {
            return invalid("algebra of dimension zero");
        }
        if unit.len() != dim {
            return invalid(format!("unit has length {} but the algebra has dimension {dim}", unit.len()));
        }
        let mut dense = vec![zero_vec(field, dim); dim * dim];
        for (i, j, k, c) in triples {
            if *i >= dim || *j >= dim || *k >= dim {
                return invalid(format!("structure constant index ({i},{j},{k}) out of range"));
            }
            dense[i * dim + j][*k] += c;
        }
        Ok(Algebra::from_dense(field, labels, dense, unit))
    }

    /// `products[i * dim + j]` is the coordinate vector of `b_i b_j`.
    pub fn from_dense(field: Field, labels: Vec<String>, products: Vec<Vector>, unit: Vector) -> Algebra {
        let dim = labels.len();
        assert_eq!(products.len(), dim * dim);
        let table = products
            .into_iter()
            .map(|v| nonzeros(&v).map(|(k, c)| (k, c.clone())).collect())
            .collect();
        Algebra { field, dim, labels, table, unit }
    }

    pub fn from_fn(field: Field, labels: Vec<String>, unit: Vector, mut f: impl FnMut(usize, usize) -> Vector) -> Algebra {
        let dim = labels.len();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                products.push(f(i, j));
            }
        }
        Algebra::from_dense(field, labels, products, unit)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> Vector {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.field, self.dim)
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vec(self.field, self.dim, i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    /// Structure constants as `(i, j, k, c)` triples.
    pub fn triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        let ys: Vec<(usize, &Scalar)> = nonzeros(y).collect();
        for (i, a) in nonzeros(x) {
            for &(j, b) in &ys {
                let ab = a * b;
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    /// `b_i * y`
    pub fn mul_basis_left(&self, i: usize, y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (j, b) in nonzeros(y) {
            for (k, c) in &self.table[i * self.dim + j] {
                out[*k].add_mul(b, c);
            }
        }
        out
    }

    /// `x * b_j`
    pub fn mul_basis_right(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = self.zero();
        for (i, a) in nonzeros(x) {
            for (k, c) in &self.table[i * self.dim + j] {
                out[*k].add_mul(a, c);
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], n: u64) -> Vector {
        let mut r = self.one();
        for _ in 0..n {
            r = self.mul(&r, x);
        }
        r
    }

    /// Matrix of `y -> x y`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul_basis_right(x, j)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul_basis_left(j, x)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn opposite(&self) -> Algebra {
        let mut table = vec![Vec::new(); self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                table[i * self.dim + j] = self.table[j * self.dim + i].clone();
            }
        }
        let labels = self.labels.iter().map(|l| format!("{l}°")).collect();
        Algebra { field: self.field, dim: self.dim, labels, table, unit: self.unit.clone() }
    }

    /// `self ⊗ other` with basis index `i * other.dim + j`.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (m, n) = (self.dim, other.dim);
        let mut labels = Vec::with_capacity(m * n);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        let mut unit = zero_vec(self.field, m * n);
        for (i, a) in nonzeros(&self.unit) {
            for (j, b) in nonzeros(&other.unit) {
                unit[i * n + j] = a * b;
            }
        }
        let mut table = vec![Vec::new(); m * m * n * n];
        for i1 in 0..m {
            for j1 in 0..n {
                for i2 in 0..m {
                    for j2 in 0..n {
                        let mut terms = Vec::new();
                        for (k1, c1) in self.basis_product(i1, i2) {
                            for (k2, c2) in other.basis_product(j1, j2) {
                                terms.push((k1 * n + k2, c1 * c2));
                            }
                        }
                        table[(i1 * n + j1) * m * n + (i2 * n + j2)] = terms;
                    }
                }
            }
        }
        Algebra { field: self.field, dim: m * n, labels, table, unit }
    }

    /// `A ⊗ A^op`.
    pub fn enveloping(&self) -> Algebra {
        self.tensor(&self.opposite())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| sorted(self.basis_product(i, j)) == sorted(self.basis_product(j, i))))
    }

    /// Span of all products of the given elements, including the unit.
    pub fn subalgebra(&self, gens: &[Vector]) -> Subspace {
        let mut vs = vec![self.one()];
        let mut s = Subspace::span(self.field, self.dim, vs.clone());
        loop {
            let mut grew = false;
            for b in s.basis.clone() {
                for g in gens {
                    let p = self.mul(&b, g);
                    if !s.contains(&p) {
                        vs.push(p);
                        s = Subspace::span(self.field, self.dim, vs.clone());
                        grew = true;
                    }
                }
            }
            if !grew {
                return s;
            }
        }
    }

    /// Indices of a small set of basis elements generating the algebra.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut s = self.subalgebra(&[]);
        for i in 0..self.dim {
            if s.dim() == self.dim {
                break;
            }
            if !s.contains(&self.basis(i)) {
                gens.push(i);
                let gv: Vec<Vector> = gens.iter().map(|&g| self.basis(g)).collect();
                s = self.subalgebra(&gv);
            }
        }
        gens
    }

    /// Checks associativity on basis triples and the unit laws.
    pub fn check(&self, name: &str) -> Report {
        let mut r = Report::new();
        let mut w = Witnesses::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..self.dim {
                    let left = self.mul_basis_right(&ij, k);
                    let jk = self.mul(&self.basis(j), &self.basis(k));
                    let right = self.mul_basis_left(i, &jk);
                    if left != right {
                        w.add(json!([i, j, k]));
                    }
                }
            }
        }
        r.record(&format!("{name}.associative"), "product is associative on basis triples", w.into_failure());
        let mut w = Witnesses::new();
        for i in 0..self.dim {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                w.add(json!(i));
            }
        }
        r.record(&format!("{name}.unit"), "unit element is two-sided", w.into_failure());
        r
    }

    /// `x - y` is zero.
    pub fn equal(&self, x: &[Scalar], y: &[Scalar]) -> bool {
        is_zero_vec(&sub_vec(x, y))
    }

    /// Linear combination of basis products, used by callers building tables.
    pub fn combine(&self, coeffs: &[Scalar], vs: &[Vector]) -> Vector {
        let mut out = self.zero();
        for (c, v) in coeffs.iter().zip(vs) {
            axpy(&mut out, c, v);
        }
        out
    }
}

fn sorted(terms: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    let mut t = terms.to_vec();
    t.sort_by_key(|(k, _)| *k);
    t
}

/// Writes `Σ cᵢ eᵢ` with the given labels, e.g. `t·X + 2·X^2`. Unit
/// coefficients are dropped and the label `1` prints as its coefficient.
pub fn format_combination(v: &[Scalar], label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (i, c) in nonzeros(v) {
        let name = label(i);
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        let term = match (mag.is_one(), name == "1") {
            (true, _) => name,
            (false, true) => mag.to_string(),
            (false, false) => format!("{mag}·{name}"),
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// An action of an algebra on a vector space, one matrix per basis element.
#[derive(Clone, Debug)]
pub struct ActionFamily {
    pub side: Side,
    pub ops: Vec<Matrix>,
}

impl ActionFamily {
    pub fn new(side: Side, ops: Vec<Matrix>) -> ActionFamily {
        ActionFamily { side, ops }
    }

    pub fn carrier_dim(&self) -> usize {
        self.ops.first().map_or(0, |m| m.rows())
    }

    /// The operator of an arbitrary element.
    pub fn op(&self, a: &[Scalar]) -> Matrix {
        let n = self.carrier_dim();
        let field = self.ops[0].field();
        let mut m = Matrix::zeros(field, n, n);
        for (i, c) in nonzeros(a) {
            m = m.add(&self.ops[i].scale(c));
        }
        m
    }

    pub fn apply(&self, a: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.ops[0].field(), self.carrier_dim());
        for (i, c) in nonzeros(a) {
            axpy(&mut out, c, &self.ops[i].mul_vec(v));
        }
        out
    }

    /// Witness of a failure of the action axioms, if any.
    pub fn check(&self, alg: &Algebra) -> Option<serde_json::Value> {
        if self.ops.len() != alg.dim() {
            return Some(json!({ "error": "one operator per basis element expected" }));
        }
        let n = self.carrier_dim();
        let id = Matrix::identity(alg.field(), n);
        if self.op(&alg.one()) != id {
            return Some(json!({ "unit": "does not act as the identity" }));
        }
        let mut w = Witnesses::new();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let prod = self.op(&alg.mul(&alg.basis(i), &alg.basis(j)));
                let composed = match self.side {
                    Side::Left => self.ops[i].mul(&self.ops[j]),
                    Side::Right => self.ops[j].mul(&self.ops[i]),
                };
                if prod != composed {
                    w.add(json!([i, j]));
                }
            }
        }
        w.into_failure()
    }

    /// The same matrices read as the opposite-side action of the opposite algebra.
    pub fn flipped(&self) -> ActionFamily {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        ActionFamily { side, ops: self.ops.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[x]/(x^n)
    fn truncated(f: Field, n: usize) -> Algebra {
        let labels = (0..n).map(|i| format!("x^{i}")).collect();
        Algebra::from_fn(f, labels, unit_vec(f, n, 0), |i, j| {
            if i + j < n {
                unit_vec(f, n, i + j)
            } else {
                zero_vec(f, n)
            }
        })
    }

    #[test]
    fn truncated_polynomials() {
        let f = Field::prime(3).unwrap();
        let a = truncated(f, 3);
        assert!(a.check("A").passed());
        assert!(a.is_commutative());
        assert_eq!(a.generators(), vec![1]);
        let x = a.basis(1);
        assert!(is_zero_vec(&a.pow(&x, 3)));
    }

    #[test]
    fn tensor_and_opposite() {
        let f = Field::Rationals;
        let a = truncated(f, 2);
        let e = a.enveloping();
        assert_eq!(e.dim(), 4);
        assert!(e.check("A^e").passed());
        assert_eq!(e.generators().len(), 2);
    }

    #[test]
    fn detects_nonassociative() {
        let f = Field::prime(2).unwrap();
        // b1 b1 = b1 but b1 (b1 b1) computed via a bogus entry for b1 b0.
        let labels = vec!["1".to_string(), "x".to_string()];
        let one = f.one();
        let triples = vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
            (1, 0, 0, one.clone()),
            (1, 1, 1, one.clone()),
        ];
        let a = Algebra::new(f, labels, &triples, unit_vec(f, 2, 0)).unwrap();
        let r = a.check("A");
        assert!(!r.passed());
    }
}
