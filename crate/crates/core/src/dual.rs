//! The dual right bialgebroids `U_* = Hom_A(▷U, A)` and `U^* = Hom_{A^op}(U◁, A)`.
//!
//! Both carriers are free over `A` on a chosen basis `e_1..e_r` of the
//! relevant module structure of `U`, so a functional is determined by its
//! values `ψ(e_i) ∈ A`. The `k`-basis of the dual is indexed by `i * dim A + c`
//! and sends `e_i` to `b_c` and the other `e_j` to zero.

use serde::Serialize;
use serde_json::json;

use crate::algebra::{ActionFamily, Algebra, Side};
use crate::bialgebroid::{kron, LeftBialgebroid, RightBialgebroid};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{axpy, nonzeros, unit_vec, zero_vec, Matrix, Vector};
use crate::report::{Report, Witnesses};
use crate::tensor::free_basis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DualKind {
    /// `U_*`, functionals with `ψ(s(a)u) = a ψ(u)`
    Left,
    /// `U^*`, functionals with `φ(t(a)u) = φ(u) a`
    Right,
}

#[derive(Clone, Debug)]
pub struct Dual {
    pub kind: DualKind,
    pub bialgebroid: RightBialgebroid,
    origin: LeftBialgebroid,
    free: Vec<Vector>,
    coeffs: Matrix,
    evals: Vec<Matrix>,
}

pub fn left_dual(b: &LeftBialgebroid) -> Result<Dual> {
    Dual::build(b, DualKind::Left)
}

pub fn right_dual(b: &LeftBialgebroid) -> Result<Dual> {
    Dual::build(b, DualKind::Right)
}

impl Dual {
    fn build(b: &LeftBialgebroid, kind: DualKind) -> Result<Dual> {
        let f = b.field();
        let (n, da) = (b.dim(), b.base_dim());
        let ops = match kind {
            DualKind::Left => b.ls(),
            DualKind::Right => b.lt(),
        };
        let (free, coeffs) = free_basis(f, ops).ok_or_else(|| Error::Unsupported("U is not free over A for the required action".into()))?;
        let mut d = Dual { kind, bialgebroid: b.op(), origin: b.clone(), free, coeffs, evals: Vec::new() };
        d.evals = (0..n)
            .map(|k| {
                let cols: Vec<Vector> = (0..n).map(|u| d.eval(&unit_vec(f, n, k), &b.basis(u))).collect();
                Matrix::from_columns(f, da, &cols)
            })
            .collect();

        let base = b.base();
        let bad = |what: &str| Error::Invalid(format!("{what} is not a functional of the right type"));
        let counit = Matrix::from_columns(f, da, &d.evals.iter().map(|e| e.mul_vec(&b.one())).collect::<Vec<_>>());
        let eps_matrix = b.counit_matrix().clone();
        let unit = d.coords_of(&eps_matrix).ok_or_else(|| bad("ε"))?;

        // X[k][u]: the element of U whose image under ψ' gives ⟨b_u, ψ_k ψ'⟩.
        let deltas = b.delta_columns();
        let mut x_cols: Vec<Matrix> = Vec::with_capacity(n);
        for k in 0..n {
            let cols: Vec<Vector> = (0..n)
                .map(|u| {
                    let mut out = zero_vec(f, n);
                    for (idx, c) in nonzeros(&deltas[u]) {
                        let (i, j) = (idx / n, idx % n);
                        let term = match kind {
                            DualKind::Left => b.mul(&b.t(&d.evals[k].col(j)), &b.basis(i)),
                            DualKind::Right => b.mul(&b.s(&d.evals[k].col(i)), &b.basis(j)),
                        };
                        axpy(&mut out, c, &term);
                    }
                    out
                })
                .collect();
            x_cols.push(Matrix::from_columns(f, n, &cols));
        }
        let mut products = Vec::with_capacity(n * n);
        for x in &x_cols {
            for k2 in 0..n {
                products.push(d.coords_of(&d.evals[k2].mul(x)).ok_or_else(|| bad("a product"))?);
            }
        }
        let labels = (0..n).map(|k| d.label(k)).collect();
        let total = Algebra::from_dense(f, labels, products, unit);

        let mut source = Vec::with_capacity(da);
        let mut target = Vec::with_capacity(da);
        for a in 0..da {
            let ba = base.basis(a);
            let (s_val, t_val) = match kind {
                DualKind::Left => (base.right_mul_matrix(&ba).mul(&eps_matrix), eps_matrix.mul(&b.rt()[a])),
                DualKind::Right => (eps_matrix.mul(&b.rs()[a]), base.left_mul_matrix(&ba).mul(&eps_matrix)),
            };
            source.push(d.coords_of(&s_val).ok_or_else(|| bad("the source map"))?);
            target.push(d.coords_of(&t_val).ok_or_else(|| bad("the target map"))?);
        }

        let mut delta = Matrix::zeros(f, n * n, n);
        for k in 0..n {
            let mut col = zero_vec(f, n * n);
            for (i, e) in d.free.iter().enumerate() {
                let shifted = d.coords_of(&d.evals[k].mul(&b.total().right_mul_matrix(e))).ok_or_else(|| bad("a coproduct factor"))?;
                let star = d.dual_basis(i);
                let term = match kind {
                    DualKind::Left => kron(&star, &shifted),
                    DualKind::Right => kron(&shifted, &star),
                };
                axpy(&mut col, &f.one(), &term);
            }
            for (idx, c) in nonzeros(&col) {
                delta.set(idx, k, c.clone());
            }
        }

        d.bialgebroid = RightBialgebroid {
            total,
            base: base.clone(),
            source: Matrix::from_columns(f, n, &source),
            target: Matrix::from_columns(f, n, &target),
            delta,
            counit,
        };
        Ok(d)
    }

    fn label(&self, k: usize) -> String {
        let da = self.origin.base_dim();
        let sym = match self.kind {
            DualKind::Left => "e",
            DualKind::Right => "f",
        };
        format!("{sym}{}*{}", k / da, self.origin.base().labels()[k % da])
    }

    pub fn origin(&self) -> &LeftBialgebroid {
        &self.origin
    }

    pub fn dim(&self) -> usize {
        self.evals.len()
    }

    /// The chosen `A`-basis of `U`.
    pub fn free_basis(&self) -> &[Vector] {
        &self.free
    }

    /// `A`-coordinates of `u` along the free basis.
    pub fn coefficients(&self, u: &[Scalar]) -> Vec<Vector> {
        let da = self.origin.base_dim();
        let c = self.coeffs.mul_vec(u);
        c.chunks(da).map(|x| x.to_vec()).collect()
    }

    /// `⟨u, w⟩ ∈ A` for a dual element with coordinates `w`.
    pub fn eval(&self, w: &[Scalar], u: &[Scalar]) -> Vector {
        let base = self.origin.base();
        let da = base.dim();
        let mut out = base.zero();
        for (b, cb) in self.coefficients(u).iter().enumerate() {
            let val = &w[b * da..(b + 1) * da];
            let term = match self.kind {
                DualKind::Left => base.mul(cb, val),
                DualKind::Right => base.mul(val, cb),
            };
            axpy(&mut out, &self.origin.field().one(), &term);
        }
        out
    }

    /// The `dim A × dim U` matrix of a dual element.
    pub fn functional(&self, w: &[Scalar]) -> Matrix {
        let f = self.origin.field();
        let (da, n) = (self.origin.base_dim(), self.dim());
        let mut m = Matrix::zeros(f, da, n);
        for (k, c) in nonzeros(w) {
            m = m.add(&self.evals[k].scale(c));
        }
        m
    }

    /// Coordinates of the functional with matrix `m`, if it has the right
    /// linearity.
    pub fn coords_of(&self, m: &Matrix) -> Option<Vector> {
        let mut w = Vec::with_capacity(self.dim());
        for e in &self.free {
            w.extend(m.mul_vec(e));
        }
        let n = self.dim();
        let ok = (0..n).all(|u| self.eval(&w, &self.origin.basis(u)) == m.col(u));
        ok.then_some(w)
    }

    /// `e_i^*`, with `e_i^*(e_j) = δ_ij`.
    pub fn dual_basis(&self, i: usize) -> Vector {
        let f = self.origin.field();
        let da = self.origin.base_dim();
        let mut w = zero_vec(f, self.dim());
        w[i * da..(i + 1) * da].clone_from_slice(&self.origin.base().one());
        w
    }

    /// Rank of the pairing `U → A^{dim U}`, `u ↦ (⟨u, w_k⟩)_k`.
    pub fn pairing_rank(&self) -> usize {
        let rows: Vec<Vector> = self.evals.iter().flat_map(|e| e.row_vectors()).collect();
        Matrix::from_rows(self.origin.field(), &rows, self.dim()).map(|m| m.rank()).unwrap_or(0)
    }

    /// Right bialgebroid axioms plus `η(w) = ⟨1, w⟩` and unit `ε`.
    pub fn check(&self) -> Report {
        let mut r = self.bialgebroid.check();
        let b = &self.origin;
        let one = b.one();
        let mut w = Witnesses::new();
        for k in 0..self.dim() {
            if self.bialgebroid.counit.col(k) != self.evals[k].mul_vec(&one) {
                w.add(json!(k));
            }
        }
        r.record("dual.counit", "η(w) = ⟨1, w⟩", w.into_failure());
        let unit = self.functional(&self.bialgebroid.total.one());
        r.flag("dual.unit", "the unit is ε", &unit == b.counit_matrix());
        r
    }

    /// The pairing is nondegenerate and the coproduct is dual to the product
    /// of `U`: `⟨uu', w⟩` is recovered from `Δ(w)`.
    pub fn biduality_check(&self) -> Report {
        let mut r = Report::new();
        let b = &self.origin;
        let n = self.dim();
        r.flag("biduality.dimension", "dim U = dim of the dual", n == b.dim());
        r.flag("biduality.nondegenerate", "the evaluation pairing is nondegenerate", self.pairing_rank() == b.dim());
        let delta = &self.bialgebroid.delta;
        let mut w = Witnesses::new();
        for k in 0..n {
            let d = delta.col(k);
            for u in 0..b.dim() {
                for v in 0..b.dim() {
                    let (bu, bv) = (b.basis(u), b.basis(v));
                    let lhs = self.evals[k].mul_vec(&b.mul(&bu, &bv));
                    let mut rhs = b.base().zero();
                    for (idx, c) in nonzeros(&d) {
                        let (k1, k2) = (idx / n, idx % n);
                        let val = match self.kind {
                            DualKind::Left => self.evals[k2].mul_vec(&b.mul(&bu, &b.s(&self.evals[k1].mul_vec(&bv)))),
                            DualKind::Right => self.evals[k1].mul_vec(&b.mul(&bu, &b.t(&self.evals[k2].mul_vec(&bv)))),
                        };
                        axpy(&mut rhs, c, &val);
                    }
                    if lhs != rhs {
                        w.add(json!({ "w": k, "u": u, "v": v }));
                    }
                }
            }
        }
        let item = match self.kind {
            DualKind::Left => "ψ(uv) = ψ(2)(u s(ψ(1)(v)))",
            DualKind::Right => "φ(uv) = φ(1)(u t(φ(2)(v)))",
        };
        r.record("biduality.product", item, w.into_failure());
        let mut w = Witnesses::new();
        for k in 0..n {
            if self.bialgebroid.counit.col(k) != self.evals[k].mul_vec(&b.one()) {
                w.add(json!(k));
            }
        }
        r.record("biduality.counit", "the counit is evaluation at 1", w.into_failure());
        r
    }
}

/// `S^* : U^* → U_*`, `S^*(φ)(u) = ε(u₊ t(φ(u₋)))`. Needs left Hopf.
pub fn s_upper_star(upper: &Dual, lower: &Dual) -> Result<Matrix> {
    let b = upper.origin();
    let n = b.dim();
    let lifts: Vec<Vector> = (0..n).map(|u| b.translate_left_lift(&b.basis(u))).collect::<Result<_>>()?;
    let cols = (0..n)
        .map(|k| {
            let vals: Vec<Vector> = lifts
                .iter()
                .map(|l| {
                    let mut out = b.base().zero();
                    for (idx, c) in nonzeros(l) {
                        let (x, y) = (b.basis(idx / n), b.basis(idx % n));
                        axpy(&mut out, c, &b.eps(&b.mul(&x, &b.t(&upper.evals[k].mul_vec(&y)))));
                    }
                    out
                })
                .collect();
            let m = Matrix::from_columns(b.field(), b.base_dim(), &vals);
            lower.coords_of(&m).ok_or_else(|| Error::Invalid("S^*(φ) is not A-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(b.field(), n, &cols))
}

/// `S_* : U_* → U^*`, `S_*(ψ)(u) = ε(u₍₊₎ s(ψ(u₍₋₎)))`. Needs right Hopf.
pub fn s_lower_star(lower: &Dual, upper: &Dual) -> Result<Matrix> {
    let b = lower.origin();
    let n = b.dim();
    let lifts: Vec<Vector> = (0..n).map(|u| b.translate_right_lift(&b.basis(u))).collect::<Result<_>>()?;
    let cols = (0..n)
        .map(|k| {
            let vals: Vec<Vector> = lifts
                .iter()
                .map(|l| {
                    let mut out = b.base().zero();
                    for (idx, c) in nonzeros(l) {
                        let (x, y) = (b.basis(idx / n), b.basis(idx % n));
                        axpy(&mut out, c, &b.eps(&b.mul(&x, &b.s(&lower.evals[k].mul_vec(&y)))));
                    }
                    out
                })
                .collect();
            let m = Matrix::from_columns(b.field(), b.base_dim(), &vals);
            upper.coords_of(&m).ok_or_else(|| Error::Invalid("S_*(ψ) is not A^op-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(b.field(), n, &cols))
}

/// Algebra map, unit and augmentation checks for `m : from → to`.
fn check_ring_map(r: &mut Report, id: &str, m: &Matrix, from: &Dual, to: &Dual) {
    let (x, y) = (&from.bialgebroid, &to.bialgebroid);
    let n = from.dim();
    let mut w = Witnesses::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = m.mul_vec(&x.total.mul(&x.total.basis(i), &x.total.basis(j)));
            let rhs = y.total.mul(&m.col(i), &m.col(j));
            if lhs != rhs {
                w.add(json!([i, j]));
            }
        }
    }
    r.record(&format!("{id}.multiplicative"), "algebra map on dual-basis pairs", w.into_failure());
    r.flag(&format!("{id}.unit"), "sends ε to ε", m.mul_vec(&x.total.one()) == y.total.one());
    r.flag(&format!("{id}.augmentation"), "preserves evaluation at 1", y.counit.mul(m) == x.counit);
}

/// Morphism properties of `S^*` and `S_*` and, when both exist, that they
/// are mutually inverse.
pub fn check_s_maps(b: &LeftBialgebroid) -> Result<Report> {
    let lower = left_dual(b)?;
    let upper = right_dual(b)?;
    let mut r = Report::new();
    let up = if b.is_left_hopf() { Some(s_upper_star(&upper, &lower)?) } else { None };
    let down = if b.is_right_hopf() { Some(s_lower_star(&lower, &upper)?) } else { None };
    match &up {
        Some(m) => check_ring_map(&mut r, "s_upper_star", m, &upper, &lower),
        None => r.skip("s_upper_star", "S^* is a morphism of A^e-rings", "not left Hopf"),
    }
    match &down {
        Some(m) => check_ring_map(&mut r, "s_lower_star", m, &lower, &upper),
        None => r.skip("s_lower_star", "S_* is a morphism of A^e-rings", "not right Hopf"),
    }
    match (&up, &down) {
        (Some(u), Some(d)) => {
            let id = Matrix::identity(b.field(), b.dim());
            r.flag("s_maps.inverse", "S^* S_* = id and S_* S^* = id", u.mul(d) == id && d.mul(u) == id);
        }
        _ => r.skip("s_maps.inverse", "S^* S_* = id and S_* S^* = id", "needs both Hopf sides"),
    }
    Ok(r)
}

/// The four left `U`-module structures on the duals.
#[derive(Clone, Debug)]
pub struct DualActions {
    /// `u⇁ψ = ψ(−u)` on `U_*`
    pub lower_hook: ActionFamily,
    /// `u⇀φ = φ(−u)` on `U^*`
    pub upper_hook: ActionFamily,
    /// `(u•φ)(v) = ε(u₊ s(φ(u₋v)))` on `U^*`, when left Hopf
    pub upper_bullet: Option<ActionFamily>,
    /// `(u•ψ)(v) = ε(u₍₊₎ s(ψ(u₍₋₎v)))` on `U_*`, when right Hopf
    pub lower_bullet: Option<ActionFamily>,
}

fn hook(d: &Dual) -> Result<ActionFamily> {
    let b = d.origin();
    let n = b.dim();
    let ops = (0..n)
        .map(|u| {
            let r = b.total().right_mul_matrix(&b.basis(u));
            let cols = (0..n)
                .map(|k| d.coords_of(&d.evals[k].mul(&r)).ok_or_else(|| Error::Invalid("translated functional".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(b.field(), n, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ActionFamily::new(Side::Left, ops))
}

fn bullet(d: &Dual, lifts: &[Vector]) -> Result<ActionFamily> {
    let b = d.origin();
    let n = b.dim();
    let f = b.field();
    let ops = (0..n)
        .map(|u| {
            let cols = (0..n)
                .map(|k| {
                    let vals: Vec<Vector> = (0..n)
                        .map(|v| {
                            let bv = b.basis(v);
                            let mut out = b.base().zero();
                            for (idx, c) in nonzeros(&lifts[u]) {
                                let (x, y) = (b.basis(idx / n), b.basis(idx % n));
                                let inner = d.evals[k].mul_vec(&b.mul(&y, &bv));
                                axpy(&mut out, c, &b.eps(&b.mul(&x, &b.s(&inner))));
                            }
                            out
                        })
                        .collect();
                    let m = Matrix::from_columns(f, b.base_dim(), &vals);
                    d.coords_of(&m).ok_or_else(|| Error::Invalid("u•w is not a functional of the right type".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(f, n, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ActionFamily::new(Side::Left, ops))
}

pub fn dual_actions(lower: &Dual, upper: &Dual) -> Result<DualActions> {
    let b = lower.origin();
    let n = b.dim();
    let upper_bullet = if b.is_left_hopf() {
        let lifts: Vec<Vector> = (0..n).map(|u| b.translate_left_lift(&b.basis(u))).collect::<Result<_>>()?;
        Some(bullet(upper, &lifts)?)
    } else {
        None
    };
    let lower_bullet = if b.is_right_hopf() {
        let lifts: Vec<Vector> = (0..n).map(|u| b.translate_right_lift(&b.basis(u))).collect::<Result<_>>()?;
        Some(bullet(lower, &lifts)?)
    } else {
        None
    };
    Ok(DualActions { lower_hook: hook(lower)?, upper_hook: hook(upper)?, upper_bullet, lower_bullet })
}

/// Module axioms for the four actions and the intertwining properties of `S^*`.
pub fn check_dual_actions(b: &LeftBialgebroid) -> Result<Report> {
    let lower = left_dual(b)?;
    let upper = right_dual(b)?;
    let acts = dual_actions(&lower, &upper)?;
    let mut r = Report::new();
    let u = b.total();
    r.record("actions.lower_hook", "u⇁ψ = ψ(−u) is a left U-module", acts.lower_hook.check(u));
    r.record("actions.upper_hook", "u⇀φ = φ(−u) is a left U-module", acts.upper_hook.check(u));
    match &acts.upper_bullet {
        Some(a) => {
            r.record("actions.upper_bullet", "u•φ is a left U-module on U^*", a.check(u));
        }
        None => r.skip("actions.upper_bullet", "u•φ is a left U-module on U^*", "not left Hopf"),
    }
    match &acts.lower_bullet {
        Some(a) => {
            r.record("actions.lower_bullet", "u•ψ is a left U-module on U_*", a.check(u));
        }
        None => r.skip("actions.lower_bullet", "u•ψ is a left U-module on U_*", "not right Hopf"),
    }
    let intertwines = |s: &Matrix, from: &ActionFamily, to: &ActionFamily| {
        let mut w = Witnesses::new();
        for k in 0..b.dim() {
            if s.mul(&from.ops[k]) != to.ops[k].mul(s) {
                w.add(json!(k));
            }
        }
        w.into_failure()
    };
    let first = "S^* sends (U^*, •) to (U_*, ⇁)";
    let second = "S^* sends (U^*, ⇀) to (U_*, •)";
    if b.is_left_hopf() {
        let s = s_upper_star(&upper, &lower)?;
        r.record("actions.s_bullet_hook", first, intertwines(&s, acts.upper_bullet.as_ref().unwrap(), &acts.lower_hook));
        match &acts.lower_bullet {
            Some(lb) => {
                r.record("actions.s_hook_bullet", second, intertwines(&s, &acts.upper_hook, lb));
            }
            None => r.skip("actions.s_hook_bullet", second, "not right Hopf"),
        }
    } else {
        r.skip("actions.s_bullet_hook", first, "not left Hopf");
        r.skip("actions.s_hook_bullet", second, "not left Hopf");
    }
    Ok(r)
}
