//! Left bialgebroids `(U, A, s, t, Δ, ε)` given by structure constants.
//!
//! `U` carries the actions `a▷u◁b = s(a)t(b)u` and `a▶u◀b = u t(a) s(b)`.
//! The coproduct is stored as a lift into `U ⊗_k U`; only its image in
//! `U◁ ⊗_A ▷U` is meaningful.

use std::sync::OnceLock;

use serde_json::json;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::lift;
use crate::matrix::{axpy, nonzeros, zero_vec, Matrix, Vector};
use crate::report::{Report, Witnesses};
use crate::tensor::{Relation, TensorQuotient};

/// The three binary tensor spaces most formulas live in.
#[derive(Clone, Debug)]
pub struct Spaces {
    /// `U◁ ⊗_A ▷U`, relation `t(a)x ⊗ y = x ⊗ s(a)y`
    pub q: TensorQuotient,
    /// `▶U ⊗_{A^op} U◁`, relation `x t(a) ⊗ y = x ⊗ t(a)y`
    pub dl: TensorQuotient,
    /// `U◀ ⊗_A ▷U`, relation `x s(a) ⊗ y = x ⊗ s(a)y`
    pub dr: TensorQuotient,
}

#[derive(Clone, Debug)]
pub struct LeftBialgebroid {
    base: Algebra,
    total: Algebra,
    source: Matrix,
    target: Matrix,
    delta: Matrix,
    counit: Matrix,
    gens: Vec<usize>,
    delta_cols: Vec<Vector>,
    ls: Vec<Matrix>,
    lt: Vec<Matrix>,
    rs: Vec<Matrix>,
    rt: Vec<Matrix>,
    spaces: OnceLock<std::result::Result<Spaces, String>>,
    pub(crate) hopf_cache: OnceLock<std::result::Result<crate::hopf::HopfData, String>>,
}

impl LeftBialgebroid {
    /// `source`, `target`: `dim U × dim A`; `delta`: `dim U² × dim U` with
    /// column `u` the lift of `Δ(b_u)`; `counit`: `dim A × dim U`.
    pub fn new(base: Algebra, total: Algebra, source: Matrix, target: Matrix, delta: Matrix, counit: Matrix) -> Result<LeftBialgebroid> {
        let (da, du) = (base.dim(), total.dim());
        if base.field() != total.field() {
            return Err(Error::Invalid("base and total algebra over different fields".into()));
        }
        let shape = |m: &Matrix, r: usize, c: usize, name: &str| {
            if m.rows() != r || m.cols() != c {
                Err(Error::Dimension(format!("{name} is {}x{}, expected {r}x{c}", m.rows(), m.cols())))
            } else {
                Ok(())
            }
        };
        shape(&source, du, da, "source")?;
        shape(&target, du, da, "target")?;
        shape(&delta, du * du, du, "coproduct")?;
        shape(&counit, da, du, "counit")?;
        let gens = base.generators();
        let delta_cols = delta.col_vectors();
        let ls = (0..da).map(|a| total.left_mul_matrix(&source.col(a))).collect();
        let lt = (0..da).map(|a| total.left_mul_matrix(&target.col(a))).collect();
        let rs = (0..da).map(|a| total.right_mul_matrix(&source.col(a))).collect();
        let rt = (0..da).map(|a| total.right_mul_matrix(&target.col(a))).collect();
        Ok(LeftBialgebroid {
            base,
            total,
            source,
            target,
            delta,
            counit,
            gens,
            delta_cols,
            ls,
            lt,
            rs,
            rt,
            spaces: OnceLock::new(),
            hopf_cache: OnceLock::new(),
        })
    }

    /// Builds the coproduct matrix from per-basis lists of `(i, j, c)` terms.
    pub fn delta_from_terms(field: Field, dim: usize, terms: &[Vec<(usize, usize, Scalar)>]) -> Matrix {
        let mut m = Matrix::zeros(field, dim * dim, dim);
        for (u, ts) in terms.iter().enumerate() {
            for (i, j, c) in ts {
                m.add_at(i * dim + j, u, c);
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.total.field()
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn total(&self) -> &Algebra {
        &self.total
    }

    pub fn source_matrix(&self) -> &Matrix {
        &self.source
    }

    pub fn target_matrix(&self) -> &Matrix {
        &self.target
    }

    pub fn delta_matrix(&self) -> &Matrix {
        &self.delta
    }

    pub fn counit_matrix(&self) -> &Matrix {
        &self.counit
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Left multiplication by `s(a)`, one matrix per basis element of `A`.
    pub fn ls(&self) -> &[Matrix] {
        &self.ls
    }

    /// Left multiplication by `t(a)`.
    pub fn lt(&self) -> &[Matrix] {
        &self.lt
    }

    /// Right multiplication by `s(a)`.
    pub fn rs(&self) -> &[Matrix] {
        &self.rs
    }

    /// Right multiplication by `t(a)`.
    pub fn rt(&self) -> &[Matrix] {
        &self.rt
    }

    pub fn s(&self, a: &[Scalar]) -> Vector {
        self.source.mul_vec(a)
    }

    pub fn t(&self, a: &[Scalar]) -> Vector {
        self.target.mul_vec(a)
    }

    pub fn eps(&self, u: &[Scalar]) -> Vector {
        self.counit.mul_vec(u)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.total.mul(x, y)
    }

    pub fn one(&self) -> Vector {
        self.total.one()
    }

    pub fn basis(&self, i: usize) -> Vector {
        self.total.basis(i)
    }

    pub fn zero(&self) -> Vector {
        self.total.zero()
    }

    /// Lift of `Δ(u)` in `U ⊗_k U`.
    pub fn delta_lift(&self, u: &[Scalar]) -> Vector {
        self.delta.mul_vec(u)
    }

    /// `u(a) = ε(u s(a))`, the action of `U` on the base.
    pub fn action_on_base(&self, u: &[Scalar], a: &[Scalar]) -> Vector {
        self.eps(&self.mul(u, &self.s(a)))
    }

    /// `x ⊗ y` in `U ⊗_k U`.
    pub fn pure(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        kron(x, y)
    }

    pub fn spaces(&self) -> Result<&Spaces> {
        let s = self.spaces.get_or_init(|| {
            let f = self.field();
            let n = self.dim();
            let build = || -> Result<Spaces> {
                Ok(Spaces {
                    q: TensorQuotient::balanced(f, n, self.lt.clone(), n, self.ls.clone(), &self.gens)?,
                    dl: TensorQuotient::balanced(f, n, self.rt.clone(), n, self.lt.clone(), &self.gens)?,
                    dr: TensorQuotient::balanced(f, n, self.rs.clone(), n, self.ls.clone(), &self.gens)?,
                })
            };
            build().map_err(|e| e.to_string())
        });
        s.as_ref().map_err(|e| Error::Unsupported(e.clone()))
    }

    /// Class of `Δ(u)` in `U◁ ⊗_A ▷U`.
    pub fn coproduct(&self, u: &[Scalar]) -> Result<Vector> {
        Ok(self.spaces()?.q.project(&self.delta_lift(u)))
    }

    /// Triple space `U◁ ⊗_A ▷U◁ ⊗_A ▷U` for coassociativity.
    pub fn triple_space(&self) -> Result<TensorQuotient> {
        let n = self.dim();
        TensorQuotient::new(
            self.field(),
            vec![n, n, n],
            vec![Relation::new(0, self.lt.clone(), 1, self.ls.clone()), Relation::new(1, self.lt.clone(), 2, self.ls.clone())],
            &self.gens,
        )
    }

    /// Applies `Δ` to factor `k` of a lift with `factors` factors `U`.
    pub fn delta_on_factor(&self, v: &[Scalar], factors: usize, k: usize) -> Vector {
        let n = self.dim();
        lift::expand(v, &vec![n; factors], k, &self.delta_cols, (n, n))
    }

    /// Multiplies factors `k` and `k + 1` of a lift with `factors` factors `U`.
    pub fn mul_adjacent(&self, v: &[Scalar], factors: usize, k: usize) -> Vector {
        let n = self.dim();
        let dims = vec![n; factors];
        let out_dims = vec![n; factors - 1];
        let mut out = zero_vec(self.field(), n.pow(factors as u32 - 1));
        for (multi, c) in lift::terms(v, &dims) {
            for (m, d) in self.total.basis_product(multi[k], multi[k + 1]) {
                let mut m2 = multi.clone();
                m2.splice(k..=k + 1, [*m]);
                out[lift::join(&m2, &out_dims)].add_mul(c, d);
            }
        }
        out
    }

    /// Lifts of `Δ(b_u)` for every basis element.
    pub fn delta_columns(&self) -> &[Vector] {
        &self.delta_cols
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new();
        r.extend(self.base.check("base"));
        r.extend(self.total.check("total"));
        let f = self.field();
        let (da, du) = (self.base_dim(), self.dim());
        let a_basis: Vec<Vector> = (0..da).map(|i| self.base.basis(i)).collect();

        let mut w = Witnesses::new();
        if self.s(&self.base.one()) != self.one() {
            w.add(json!("s(1) != 1"));
        }
        for i in 0..da {
            for j in 0..da {
                let lhs = self.s(&self.base.mul(&a_basis[i], &a_basis[j]));
                let rhs = self.mul(&self.s(&a_basis[i]), &self.s(&a_basis[j]));
                if lhs != rhs {
                    w.add(json!([i, j]));
                }
            }
        }
        r.record("source.algebra_map", "s is a unital algebra map A -> U", w.into_failure());

        let mut w = Witnesses::new();
        if self.t(&self.base.one()) != self.one() {
            w.add(json!("t(1) != 1"));
        }
        for i in 0..da {
            for j in 0..da {
                let lhs = self.t(&self.base.mul(&a_basis[i], &a_basis[j]));
                let rhs = self.mul(&self.t(&a_basis[j]), &self.t(&a_basis[i]));
                if lhs != rhs {
                    w.add(json!([i, j]));
                }
            }
        }
        r.record("target.anti_algebra_map", "t is a unital algebra map A^op -> U", w.into_failure());

        let mut w = Witnesses::new();
        for i in 0..da {
            for j in 0..da {
                if self.mul(&self.s(&a_basis[i]), &self.t(&a_basis[j])) != self.mul(&self.t(&a_basis[j]), &self.s(&a_basis[i])) {
                    w.add(json!([i, j]));
                }
            }
        }
        let st_ok = r.record("source_target.commute", "images of s and t commute", w.into_failure());

        let mut w = Witnesses::new();
        if self.eps(&self.one()) != self.base.one() {
            w.add(json!("ε(1) != 1"));
        }
        r.record("counit.unital", "ε(1) = 1", w.into_failure());

        let mut w = Witnesses::new();
        for a in 0..da {
            for b in 0..da {
                for u in 0..du {
                    let x = self.mul(&self.mul(&self.s(&a_basis[a]), &self.t(&a_basis[b])), &self.basis(u));
                    let lhs = self.eps(&x);
                    let rhs = self.base.mul(&self.base.mul(&a_basis[a], &self.eps(&self.basis(u))), &a_basis[b]);
                    if lhs != rhs {
                        w.add(json!({ "a": a, "b": b, "u": u }));
                    }
                }
            }
        }
        r.record("counit.bimodule", "ε(s(a)t(b)u) = a ε(u) b", w.into_failure());

        let mut w = Witnesses::new();
        for u in 0..du {
            for v in 0..du {
                let bu = self.basis(u);
                let ev = self.eps(&self.basis(v));
                let lhs = self.eps(&self.mul(&bu, &self.basis(v)));
                let via_s = self.eps(&self.mul(&bu, &self.s(&ev)));
                let via_t = self.eps(&self.mul(&bu, &self.t(&ev)));
                if lhs != via_s || lhs != via_t {
                    w.add(json!({ "u": u, "v": v }));
                }
            }
        }
        r.record("counit.product", "ε(uv) = ε(u s(ε(v))) = ε(u t(ε(v)))", w.into_failure());

        let spaces = match self.spaces() {
            Ok(s) => s,
            Err(e) => {
                r.record("coproduct.spaces", "balanced tensor spaces can be formed", Some(json!(e.to_string())));
                return r;
            }
        };
        let q = &spaces.q;
        let deltas: Vec<Vector> = (0..du).map(|u| self.delta_lift(&self.basis(u))).collect();
        let classes: Vec<Vector> = deltas.iter().map(|d| q.project(d)).collect();

        let mut w = Witnesses::new();
        for a in 0..da {
            for b in 0..da {
                let sa = self.s(&a_basis[a]);
                let tb = self.t(&a_basis[b]);
                for u in 0..du {
                    let x = self.mul(&self.mul(&sa, &tb), &self.basis(u));
                    let lhs = q.project(&self.delta_lift(&x));
                    let d = &deltas[u];
                    let mut moved = zero_vec(f, du * du);
                    for (idx, c) in nonzeros(d) {
                        let (i, j) = (idx / du, idx % du);
                        let xi = self.mul(&sa, &self.basis(i));
                        let yj = self.mul(&tb, &self.basis(j));
                        axpy(&mut moved, c, &kron(&xi, &yj));
                    }
                    if lhs != q.project(&moved) {
                        w.add(json!({ "a": a, "b": b, "u": u }));
                    }
                }
            }
        }
        r.record("coproduct.bimodule", "Δ(s(a)t(b)u) = s(a)u(1) ⊗ t(b)u(2)", w.into_failure());

        if st_ok {
            match q.takeuchi(0, &self.rt, 1, &self.rs) {
                Ok(tk) => {
                    let mut w = Witnesses::new();
                    for (u, c) in classes.iter().enumerate() {
                        if !tk.contains(c) {
                            w.add(json!(u));
                        }
                    }
                    r.record("coproduct.takeuchi", "Δ(u) lies in the Takeuchi product", w.into_failure());
                }
                Err(e) => {
                    r.record("coproduct.takeuchi", "Δ(u) lies in the Takeuchi product", Some(json!(e.to_string())));
                }
            }
        } else {
            r.skip("coproduct.takeuchi", "Δ(u) lies in the Takeuchi product", "s and t do not commute");
        }

        match self.triple_space() {
            Ok(t3) => {
                let mut w = Witnesses::new();
                for (u, d) in deltas.iter().enumerate() {
                    let left = t3.project(&self.delta_on_factor(d, 2, 0));
                    let right = t3.project(&self.delta_on_factor(d, 2, 1));
                    if left != right {
                        w.add(json!(u));
                    }
                }
                r.record("coproduct.coassociative", "(Δ⊗id)Δ = (id⊗Δ)Δ", w.into_failure());
            }
            Err(e) => {
                r.record("coproduct.coassociative", "(Δ⊗id)Δ = (id⊗Δ)Δ", Some(json!(e.to_string())));
            }
        }

        let mut w = Witnesses::new();
        for (u, d) in deltas.iter().enumerate() {
            let mut left = self.zero();
            let mut right = self.zero();
            for (idx, c) in nonzeros(d) {
                let (x, y) = (self.basis(idx / du), self.basis(idx % du));
                axpy(&mut left, c, &self.mul(&self.s(&self.eps(&x)), &y));
                axpy(&mut right, c, &self.mul(&self.t(&self.eps(&y)), &x));
            }
            let bu = self.basis(u);
            if left != bu || right != bu {
                w.add(json!(u));
            }
        }
        r.record("coproduct.counital", "s(ε(u(1)))u(2) = u = t(ε(u(2)))u(1)", w.into_failure());

        let mut w = Witnesses::new();
        for u in 0..du {
            for v in 0..du {
                let lhs = q.project(&self.delta_lift(&self.mul(&self.basis(u), &self.basis(v))));
                let rhs = q.project(&self.lift_product(&deltas[u], &deltas[v]));
                if lhs != rhs {
                    w.add(json!({ "u": u, "v": v }));
                }
            }
        }
        if q.project(&self.delta_lift(&self.one())) != q.project(&kron(&self.one(), &self.one())) {
            w.add(json!("Δ(1) != 1⊗1"));
        }
        r.record("coproduct.multiplicative", "Δ(uv) = Δ(u)Δ(v) and Δ(1) = 1⊗1", w.into_failure());
        r
    }

    /// Factorwise product `(x⊗y)(x'⊗y') = xx' ⊗ yy'` of two lifts.
    pub fn lift_product(&self, p: &[Scalar], q: &[Scalar]) -> Vector {
        self.lift_product_with(p, q, false)
    }

    /// With `reverse_second`, the second factors multiply as `y'y`.
    pub fn lift_product_with(&self, p: &[Scalar], q: &[Scalar], reverse_second: bool) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(self.field(), n * n);
        let qs: Vec<(usize, &Scalar)> = nonzeros(q).collect();
        for (i1, c1) in nonzeros(p) {
            for &(i2, c2) in &qs {
                let c = c1 * c2;
                let first = self.total.basis_product(i1 / n, i2 / n);
                let second =
                    if reverse_second { self.total.basis_product(i2 % n, i1 % n) } else { self.total.basis_product(i1 % n, i2 % n) };
                for (k1, d1) in first {
                    for (k2, d2) in second {
                        out[k1 * n + k2].add_mul(&c, &(d1 * d2));
                    }
                }
            }
        }
        out
    }

    /// `(U, A^op, t, s, Δ^coop, ε)`
    pub fn coop(&self) -> LeftBialgebroid {
        let n = self.dim();
        LeftBialgebroid::new(
            self.base.opposite(),
            self.total.clone(),
            self.target.clone(),
            self.source.clone(),
            flip_pairs(&self.delta, n),
            self.counit.clone(),
        )
        .expect("coopposite preserves shapes")
    }

    /// The right bialgebroid `(U^op, A, t, s, Δ, ε)`.
    pub fn op(&self) -> RightBialgebroid {
        RightBialgebroid {
            total: self.total.opposite(),
            base: self.base.clone(),
            source: self.target.clone(),
            target: self.source.clone(),
            delta: self.delta.clone(),
            counit: self.counit.clone(),
        }
    }

    /// Componentwise equality with projected coproducts compared.
    pub fn same_presentation(&self, other: &LeftBialgebroid) -> bool {
        if self.dim() != other.dim() || self.base_dim() != other.base_dim() {
            return false;
        }
        if self.base.triples() != other.base.triples() || self.total.triples() != other.total.triples() {
            return false;
        }
        if self.source != other.source || self.target != other.target || self.counit != other.counit {
            return false;
        }
        match (self.spaces(), other.spaces()) {
            (Ok(a), Ok(b)) => (0..self.dim()).all(|u| {
                let e = self.basis(u);
                a.q.project(&self.delta_lift(&e)) == b.q.project(&other.delta_lift(&e))
            }),
            _ => false,
        }
    }
}

/// A right bialgebroid `(W, A, s, t, Δ, ε)` with `Δ` landing in `W◀ ⊗_A ▶W`.
/// Every check goes through the left bialgebroid `W^op_coop`.
#[derive(Clone, Debug)]
pub struct RightBialgebroid {
    pub total: Algebra,
    pub base: Algebra,
    pub source: Matrix,
    pub target: Matrix,
    pub delta: Matrix,
    pub counit: Matrix,
}

impl RightBialgebroid {
    /// `(W^op, A^op, s, t, Δ^coop, ε)`
    pub fn op_coop(&self) -> Result<LeftBialgebroid> {
        let n = self.total.dim();
        LeftBialgebroid::new(
            self.base.opposite(),
            self.total.opposite(),
            self.source.clone(),
            self.target.clone(),
            flip_pairs(&self.delta, n),
            self.counit.clone(),
        )
    }

    pub fn check(&self) -> Report {
        match self.op_coop() {
            Ok(l) => l.check(),
            Err(e) => {
                let mut r = Report::new();
                r.record("right.shape", "presentation shapes", Some(json!(e.to_string())));
                r
            }
        }
    }

    /// `(W, A^op, t, s, Δ^coop, ε)`
    pub fn coop(&self) -> RightBialgebroid {
        RightBialgebroid {
            total: self.total.clone(),
            base: self.base.opposite(),
            source: self.target.clone(),
            target: self.source.clone(),
            delta: flip_pairs(&self.delta, self.total.dim()),
            counit: self.counit.clone(),
        }
    }

    /// The left bialgebroid `(W^op, A, t, s, Δ, ε)`.
    pub fn op(&self) -> Result<LeftBialgebroid> {
        LeftBialgebroid::new(
            self.base.clone(),
            self.total.opposite(),
            self.target.clone(),
            self.source.clone(),
            self.delta.clone(),
            self.counit.clone(),
        )
    }

    pub fn same_presentation(&self, other: &RightBialgebroid) -> bool {
        match (self.op_coop(), other.op_coop()) {
            (Ok(a), Ok(b)) => a.same_presentation(&b),
            _ => false,
        }
    }

    /// Right integrals `w0 w = w0 s(ε(w))`.
    pub fn right_integrals(&self) -> Result<crate::integral::IntegralSpace> {
        crate::integral::left_integrals(&self.op_coop()?)
    }
}

/// Swaps the factors of every column of a `dim² × m` lift matrix.
pub fn flip_pairs(m: &Matrix, dim: usize) -> Matrix {
    let mut out = Matrix::zeros(m.field(), m.rows(), m.cols());
    for j in 0..m.cols() {
        for idx in 0..m.rows() {
            let c = m.get(idx, j);
            if !c.is_zero() {
                out.set((idx % dim) * dim + idx / dim, j, c.clone());
            }
        }
    }
    out
}

/// Swaps the factors of a vector in `k^{d1} ⊗ k^{d2}`.
pub fn flip_vec(v: &[Scalar], d1: usize, d2: usize) -> Vector {
    let mut out = zero_vec(v[0].field(), v.len());
    for (idx, c) in nonzeros(v) {
        out[(idx % d2) * d1 + idx / d2] = c.clone();
    }
    out
}

pub fn kron(x: &[Scalar], y: &[Scalar]) -> Vector {
    let f = x[0].field();
    let n = y.len();
    let mut out = zero_vec(f, x.len() * n);
    for (i, a) in nonzeros(x) {
        for (j, b) in nonzeros(y) {
            out[i * n + j] = a * b;
        }
    }
    out
}

/// Checks that `(phi_u, phi_a)` is a morphism `B -> B'`: both are algebra
/// maps intertwining `s`, `t`, `ε` and the projected coproducts.
pub fn check_morphism(b: &LeftBialgebroid, b2: &LeftBialgebroid, phi_u: &Matrix, phi_a: &Matrix) -> Report {
    let mut r = Report::new();
    let f = b.field();
    let (da, du) = (b.base_dim(), b.dim());
    let mut w = Witnesses::new();
    if phi_u.mul_vec(&b.one()) != b2.one() {
        w.add(json!("unit"));
    }
    for i in 0..du {
        for j in 0..du {
            let lhs = phi_u.mul_vec(&b.mul(&b.basis(i), &b.basis(j)));
            let rhs = b2.mul(&phi_u.col(i), &phi_u.col(j));
            if lhs != rhs {
                w.add(json!([i, j]));
            }
        }
    }
    r.record("morphism.total", "total map is an algebra map", w.into_failure());
    let mut w = Witnesses::new();
    if phi_a.mul_vec(&b.base().one()) != b2.base().one() {
        w.add(json!("unit"));
    }
    for i in 0..da {
        for j in 0..da {
            let lhs = phi_a.mul_vec(&b.base().mul(&b.base().basis(i), &b.base().basis(j)));
            let rhs = b2.base().mul(&phi_a.col(i), &phi_a.col(j));
            if lhs != rhs {
                w.add(json!([i, j]));
            }
        }
    }
    r.record("morphism.base", "base map is an algebra map", w.into_failure());
    let flag = |ok: bool| if ok { None } else { Some(serde_json::Value::Null) };
    r.record("morphism.source", "intertwines s", flag(phi_u.mul(b.source_matrix()) == b2.source_matrix().mul(phi_a)));
    r.record("morphism.target", "intertwines t", flag(phi_u.mul(b.target_matrix()) == b2.target_matrix().mul(phi_a)));
    r.record("morphism.counit", "intertwines ε", flag(b2.counit_matrix().mul(phi_u) == phi_a.mul(b.counit_matrix())));
    let mut w = Witnesses::new();
    match b2.spaces() {
        Ok(sp) => {
            for u in 0..du {
                let lhs = sp.q.project(&b2.delta_lift(&phi_u.col(u)));
                let d = b.delta_lift(&b.basis(u));
                let mut img = zero_vec(f, b2.dim() * b2.dim());
                for (idx, c) in nonzeros(&d) {
                    axpy(&mut img, c, &kron(&phi_u.col(idx / du), &phi_u.col(idx % du)));
                }
                if lhs != sp.q.project(&img) {
                    w.add(json!(u));
                }
            }
        }
        Err(e) => w.add(json!(e.to_string())),
    }
    r.record("morphism.coproduct", "intertwines the projected coproducts", w.into_failure());
    r
}
