//! Hopf–Galois maps, translation maps and their identity suites.
//!
//! `α_ℓ : ▶U ⊗_{A^op} U◁ → U◁ ⊗_A ▷U`, `u ⊗ v ↦ u(1) ⊗ u(2)v`, and
//! `α_r : U◀ ⊗_A ▷U → U◁ ⊗_A ▷U`, `u ⊗ v ↦ u(1)v ⊗ u(2)`.
//! Translations are `u₊ ⊗ u₋ = α_ℓ⁻¹(u ⊗ 1)` and `u₍₊₎ ⊗ u₍₋₎ = α_r⁻¹(1 ⊗ u)`.

use serde_json::json;

use crate::bialgebroid::{kron, LeftBialgebroid};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lift;
use crate::matrix::{axpy, is_zero_vec, nonzeros, zero_vec, Matrix, Vector};
use crate::report::{Report, Witnesses};
use crate::tensor::{Relation, TensorQuotient};

#[derive(Clone, Debug)]
pub struct HopfData {
    pub alpha_l: Matrix,
    pub alpha_r: Matrix,
    pub alpha_l_defined: bool,
    pub alpha_r_defined: bool,
    /// Column `u`: class of `(b_u)₊ ⊗ (b_u)₋` in `▶U ⊗ U◁`.
    pub trans_l: Option<Matrix>,
    /// Column `u`: class of `(b_u)₍₊₎ ⊗ (b_u)₍₋₎` in `U◀ ⊗ ▷U`.
    pub trans_r: Option<Matrix>,
    tl_lifts: Vec<Vector>,
    tr_lifts: Vec<Vector>,
}

impl HopfData {
    pub fn left_lifts(&self) -> Option<&[Vector]> {
        self.trans_l.as_ref().map(|_| self.tl_lifts.as_slice())
    }

    pub fn right_lifts(&self) -> Option<&[Vector]> {
        self.trans_r.as_ref().map(|_| self.tr_lifts.as_slice())
    }
}

impl LeftBialgebroid {
    fn alpha_l_lift(&self, v: &[Scalar]) -> Vector {
        self.mul_adjacent(&self.delta_on_factor(v, 2, 0), 3, 1)
    }

    fn alpha_r_lift(&self, v: &[Scalar]) -> Vector {
        let n = self.dim();
        let e = self.delta_on_factor(v, 2, 0);
        self.mul_adjacent(&lift::permute(&e, &[n, n, n], &[0, 2, 1]), 3, 0)
    }

    pub fn hopf_data(&self) -> Result<&HopfData> {
        let h = self.hopf_cache.get_or_init(|| self.compute_hopf().map_err(|e| e.to_string()));
        h.as_ref().map_err(|e| Error::Unsupported(e.clone()))
    }

    fn compute_hopf(&self) -> Result<HopfData> {
        let sp = self.spaces()?;
        let n = self.dim();
        let f = self.field();
        let build = |dom: &TensorQuotient, a: &dyn Fn(&[Scalar]) -> Vector| {
            let cols: Vec<Vector> = (0..dom.dim())
                .map(|j| {
                    let mut e = zero_vec(f, dom.dim());
                    e[j] = f.one();
                    sp.q.project(&a(&dom.lift(&e)))
                })
                .collect();
            Matrix::from_columns(f, sp.q.dim(), &cols)
        };
        let defined = |r_ops: &[Matrix], l_ops: &[Matrix], a: &dyn Fn(&[Scalar]) -> Vector| {
            self.generators().iter().all(|&g| {
                (0..n).all(|x| {
                    (0..n).all(|y| {
                        let mut v = kron(&r_ops[g].col(x), &self.basis(y));
                        axpy(&mut v, &-f.one(), &kron(&self.basis(x), &l_ops[g].col(y)));
                        is_zero_vec(&sp.q.project(&a(&v)))
                    })
                })
            })
        };
        let al = |v: &[Scalar]| self.alpha_l_lift(v);
        let ar = |v: &[Scalar]| self.alpha_r_lift(v);
        let alpha_l = build(&sp.dl, &al);
        let alpha_r = build(&sp.dr, &ar);
        let alpha_l_defined = defined(self.rt(), self.lt(), &al);
        let alpha_r_defined = defined(self.rs(), self.ls(), &ar);
        let one = self.one();
        let invert = |alpha: &Matrix, ok: bool, dom: &TensorQuotient, canon: &dyn Fn(&Vector) -> Vector| {
            if !ok || alpha.rows() != alpha.cols() {
                return None;
            }
            let inv = alpha.invert()?;
            let cols: Vec<Vector> = (0..n).map(|u| inv.mul_vec(&sp.q.project(&canon(&self.basis(u))))).collect();
            let lifts = cols.iter().map(|c| dom.lift(c)).collect();
            Some((Matrix::from_columns(f, dom.dim(), &cols), lifts))
        };
        let tl = invert(&alpha_l, alpha_l_defined, &sp.dl, &|u| kron(u, &one));
        let tr = invert(&alpha_r, alpha_r_defined, &sp.dr, &|u| kron(&one, u));
        let (trans_l, tl_lifts) = match tl {
            Some((m, l)) => (Some(m), l),
            None => (None, Vec::new()),
        };
        let (trans_r, tr_lifts) = match tr {
            Some((m, l)) => (Some(m), l),
            None => (None, Vec::new()),
        };
        Ok(HopfData { alpha_l, alpha_r, alpha_l_defined, alpha_r_defined, trans_l, trans_r, tl_lifts, tr_lifts })
    }

    /// Matrices of `(α_ℓ, α_r)` on the quotient spaces. Fails if either map
    /// is not well defined on its domain.
    pub fn hopf_galois_maps(&self) -> Result<(Matrix, Matrix)> {
        let h = self.hopf_data()?;
        if !h.alpha_l_defined || !h.alpha_r_defined {
            return Err(Error::Invalid("Hopf–Galois map is not well defined on the balanced tensor product".into()));
        }
        Ok((h.alpha_l.clone(), h.alpha_r.clone()))
    }

    pub fn is_left_hopf(&self) -> bool {
        self.hopf_data().map(|h| h.trans_l.is_some()).unwrap_or(false)
    }

    pub fn is_right_hopf(&self) -> bool {
        self.hopf_data().map(|h| h.trans_r.is_some()).unwrap_or(false)
    }

    /// Class of `u₊ ⊗ u₋` in `▶U ⊗_{A^op} U◁`.
    pub fn translate_left(&self, u: &[Scalar]) -> Result<Vector> {
        match &self.hopf_data()?.trans_l {
            Some(m) => Ok(m.mul_vec(u)),
            None => Err(Error::Unsupported("not left Hopf".into())),
        }
    }

    /// Class of `u₍₊₎ ⊗ u₍₋₎` in `U◀ ⊗_A ▷U`.
    pub fn translate_right(&self, u: &[Scalar]) -> Result<Vector> {
        match &self.hopf_data()?.trans_r {
            Some(m) => Ok(m.mul_vec(u)),
            None => Err(Error::Unsupported("not right Hopf".into())),
        }
    }

    /// A lift of `u₊ ⊗ u₋` to `U ⊗_k U`.
    pub fn translate_left_lift(&self, u: &[Scalar]) -> Result<Vector> {
        let lifts = self.hopf_data()?.left_lifts().ok_or_else(|| Error::Unsupported("not left Hopf".into()))?;
        Ok(combine_lifts(self, u, lifts))
    }

    pub fn translate_right_lift(&self, u: &[Scalar]) -> Result<Vector> {
        let lifts = self.hopf_data()?.right_lifts().ok_or_else(|| Error::Unsupported("not right Hopf".into()))?;
        Ok(combine_lifts(self, u, lifts))
    }

    /// Checks sch1–sch9 (left Hopf) and tch1–tch9 (right Hopf). Identities on
    /// the missing side are skipped.
    pub fn verify_translation_identities(&self) -> Report {
        let mut r = Report::new();
        match self.hopf_data() {
            Ok(h) => {
                match h.left_lifts() {
                    Some(tl) => left_suite(self, tl, &mut r),
                    None => {
                        for (id, item) in SCH {
                            r.skip(id, item, "not left Hopf");
                        }
                    }
                }
                match h.right_lifts() {
                    Some(tr) => right_suite(self, tr, &mut r),
                    None => {
                        for (id, item) in TCH {
                            r.skip(id, item, "not right Hopf");
                        }
                    }
                }
            }
            Err(e) => {
                for (id, item) in SCH.iter().chain(TCH.iter()) {
                    r.skip(id, item, e.to_string());
                }
            }
        }
        r
    }
}

fn combine_lifts(b: &LeftBialgebroid, u: &[Scalar], lifts: &[Vector]) -> Vector {
    let n = b.dim();
    let mut out = zero_vec(b.field(), n * n);
    for (i, c) in nonzeros(u) {
        axpy(&mut out, c, &lifts[i]);
    }
    out
}

const SCH: [(&str, &str); 9] = [
    ("sch1", "u₊ ⊗ u₋ lies in the Takeuchi product U ×_{A^op} U"),
    ("sch2", "u₊(1) ⊗ u₊(2)u₋ = u ⊗ 1"),
    ("sch3", "u(1)₊ ⊗ u(1)₋u(2) = u ⊗ 1"),
    ("sch4", "u₊(1) ⊗ u₊(2) ⊗ u₋ = u(1) ⊗ u(2)₊ ⊗ u(2)₋"),
    ("sch5", "u₊ ⊗ u₋(1) ⊗ u₋(2) = u₊₊ ⊗ u₋ ⊗ u₊₋"),
    ("sch6", "(uv)₊ ⊗ (uv)₋ = u₊v₊ ⊗ v₋u₋"),
    ("sch7", "u₊u₋ = s(ε(u))"),
    ("sch8", "u₊ t(ε(u₋)) = u"),
    ("sch9", "(s(a)t(b))₊ ⊗ (s(a)t(b))₋ = s(a) ⊗ s(b)"),
];

const TCH: [(&str, &str); 9] = [
    ("tch1", "u₍₊₎ ⊗ u₍₋₎ lies in the Takeuchi product U ×^A U"),
    ("tch2", "u₍₊₎(1)u₍₋₎ ⊗ u₍₊₎(2) = 1 ⊗ u"),
    ("tch3", "u(2)₍₋₎u(1) ⊗ u(2)₍₊₎ = 1 ⊗ u"),
    ("tch4", "u(1)₍₊₎ ⊗ u(1)₍₋₎ ⊗ u(2) = u₍₊₎(1) ⊗ u₍₋₎ ⊗ u₍₊₎(2)"),
    ("tch5", "u₍₊₎₍₊₎ ⊗ u₍₊₎₍₋₎ ⊗ u₍₋₎ = u₍₊₎ ⊗ u₍₋₎(1) ⊗ u₍₋₎(2)"),
    ("tch6", "(uv)₍₊₎ ⊗ (uv)₍₋₎ = u₍₊₎v₍₊₎ ⊗ v₍₋₎u₍₋₎"),
    ("tch7", "u₍₊₎u₍₋₎ = t(ε(u))"),
    ("tch8", "u₍₊₎ s(ε(u₍₋₎)) = u"),
    ("tch9", "(s(a)t(b))₍₊₎ ⊗ (s(a)t(b))₍₋₎ = t(b) ⊗ t(a)"),
];

/// Records a per-basis check `ok(u)` over all basis elements.
fn each_basis(r: &mut Report, id: &str, item: &str, n: usize, mut ok: impl FnMut(usize) -> bool) {
    let mut w = Witnesses::new();
    for u in 0..n {
        if !ok(u) {
            w.add(json!({ "u": u }));
        }
    }
    r.record(id, item, w.into_failure());
}

fn record_err(r: &mut Report, id: &str, item: &str, e: Error) {
    r.record(id, item, Some(json!(e.to_string())));
}

fn triple(b: &LeftBialgebroid, rels: [(usize, &[Matrix], usize, &[Matrix]); 2]) -> Result<TensorQuotient> {
    let n = b.dim();
    let relations = rels.iter().map(|&(i, x, j, y)| Relation::new(i, x.to_vec(), j, y.to_vec())).collect();
    TensorQuotient::new(b.field(), vec![n, n, n], relations, b.generators())
}

fn left_suite(b: &LeftBialgebroid, tl: &[Vector], r: &mut Report) {
    let n = b.dim();
    let sp = b.spaces().expect("spaces exist when translations do");
    let dl = &sp.dl;
    let one = b.one();
    let t_of = |u: &[Scalar]| combine_lifts(b, u, tl);

    match dl.takeuchi(0, b.lt(), 1, b.rt()) {
        Ok(tk) => each_basis(r, SCH[0].0, SCH[0].1, n, |u| tk.contains(&dl.project(&tl[u]))),
        Err(e) => record_err(r, SCH[0].0, SCH[0].1, e),
    }

    each_basis(r, SCH[1].0, SCH[1].1, n, |u| sp.q.project(&b.alpha_l_lift(&tl[u])) == sp.q.project(&kron(&b.basis(u), &one)));

    each_basis(r, SCH[2].0, SCH[2].1, n, |u| {
        let e = lift::expand(&b.delta_columns()[u], &[n, n], 0, tl, (n, n));
        dl.project(&b.mul_adjacent(&e, 3, 1)) == dl.project(&kron(&b.basis(u), &one))
    });

    match triple(b, [(0, b.lt(), 1, b.ls()), (1, b.rt(), 2, b.lt())]) {
        Ok(s4) => each_basis(r, SCH[3].0, SCH[3].1, n, |u| {
            let lhs = b.delta_on_factor(&tl[u], 2, 0);
            let rhs = lift::expand(&b.delta_columns()[u], &[n, n], 1, tl, (n, n));
            s4.project(&lhs) == s4.project(&rhs)
        }),
        Err(e) => record_err(r, SCH[3].0, SCH[3].1, e),
    }

    match triple(b, [(0, b.rt(), 2, b.lt()), (1, b.lt(), 2, b.ls())]) {
        Ok(s5) => each_basis(r, SCH[4].0, SCH[4].1, n, |u| {
            let lhs = b.delta_on_factor(&tl[u], 2, 1);
            let e = lift::expand(&tl[u], &[n, n], 0, tl, (n, n));
            let rhs = lift::permute(&e, &[n, n, n], &[0, 2, 1]);
            s5.project(&lhs) == s5.project(&rhs)
        }),
        Err(e) => record_err(r, SCH[4].0, SCH[4].1, e),
    }

    let mut w = Witnesses::new();
    for u in 0..n {
        for v in 0..n {
            let lhs = dl.project(&t_of(&b.mul(&b.basis(u), &b.basis(v))));
            let rhs = dl.project(&b.lift_product_with(&tl[u], &tl[v], true));
            if lhs != rhs {
                w.add(json!({ "u": u, "v": v }));
            }
        }
    }
    r.record(SCH[5].0, SCH[5].1, w.into_failure());

    each_basis(r, SCH[6].0, SCH[6].1, n, |u| b.mul_adjacent(&tl[u], 2, 0) == b.s(&b.eps(&b.basis(u))));

    each_basis(r, SCH[7].0, SCH[7].1, n, |u| {
        let v = lift::accumulate(&tl[u], &[n, n], n, |m| b.mul(&b.basis(m[0]), &b.t(&b.eps(&b.basis(m[1])))));
        v == b.basis(u)
    });

    let da = b.base_dim();
    let mut w = Witnesses::new();
    for a in 0..da {
        for c in 0..da {
            let (sa, sc) = (b.s(&b.base().basis(a)), b.s(&b.base().basis(c)));
            let x = b.mul(&sa, &b.t(&b.base().basis(c)));
            if dl.project(&t_of(&x)) != dl.project(&kron(&sa, &sc)) {
                w.add(json!({ "a": a, "b": c }));
            }
        }
    }
    r.record(SCH[8].0, SCH[8].1, w.into_failure());
}

fn right_suite(b: &LeftBialgebroid, tr: &[Vector], r: &mut Report) {
    let n = b.dim();
    let sp = b.spaces().expect("spaces exist when translations do");
    let dr = &sp.dr;
    let one = b.one();
    let t_of = |u: &[Scalar]| combine_lifts(b, u, tr);

    match dr.takeuchi(0, b.ls(), 1, b.rs()) {
        Ok(tk) => each_basis(r, TCH[0].0, TCH[0].1, n, |u| tk.contains(&dr.project(&tr[u]))),
        Err(e) => record_err(r, TCH[0].0, TCH[0].1, e),
    }

    each_basis(r, TCH[1].0, TCH[1].1, n, |u| sp.q.project(&b.alpha_r_lift(&tr[u])) == sp.q.project(&kron(&one, &b.basis(u))));

    match TensorQuotient::balanced(b.field(), n, b.ls().to_vec(), n, b.rs().to_vec(), b.generators()) {
        Ok(s3) => each_basis(r, TCH[2].0, TCH[2].1, n, |u| {
            let e = lift::expand(&b.delta_columns()[u], &[n, n], 1, tr, (n, n));
            let moved = lift::permute(&e, &[n, n, n], &[2, 0, 1]);
            s3.project(&b.mul_adjacent(&moved, 3, 0)) == s3.project(&kron(&one, &b.basis(u)))
        }),
        Err(e) => record_err(r, TCH[2].0, TCH[2].1, e),
    }

    match triple(b, [(0, b.rs(), 1, b.ls()), (0, b.lt(), 2, b.ls())]) {
        Ok(s4) => each_basis(r, TCH[3].0, TCH[3].1, n, |u| {
            let e = b.delta_on_factor(&tr[u], 2, 0);
            let lhs = lift::permute(&e, &[n, n, n], &[0, 2, 1]);
            let rhs = lift::expand(&b.delta_columns()[u], &[n, n], 0, tr, (n, n));
            s4.project(&lhs) == s4.project(&rhs)
        }),
        Err(e) => record_err(r, TCH[3].0, TCH[3].1, e),
    }

    match triple(b, [(0, b.rs(), 1, b.ls()), (1, b.lt(), 2, b.ls())]) {
        Ok(s5) => each_basis(r, TCH[4].0, TCH[4].1, n, |u| {
            let lhs = lift::expand(&tr[u], &[n, n], 0, tr, (n, n));
            let rhs = b.delta_on_factor(&tr[u], 2, 1);
            s5.project(&lhs) == s5.project(&rhs)
        }),
        Err(e) => record_err(r, TCH[4].0, TCH[4].1, e),
    }

    let mut w = Witnesses::new();
    for u in 0..n {
        for v in 0..n {
            let lhs = dr.project(&t_of(&b.mul(&b.basis(u), &b.basis(v))));
            let rhs = dr.project(&b.lift_product_with(&tr[u], &tr[v], true));
            if lhs != rhs {
                w.add(json!({ "u": u, "v": v }));
            }
        }
    }
    r.record(TCH[5].0, TCH[5].1, w.into_failure());

    each_basis(r, TCH[6].0, TCH[6].1, n, |u| b.mul_adjacent(&tr[u], 2, 0) == b.t(&b.eps(&b.basis(u))));

    each_basis(r, TCH[7].0, TCH[7].1, n, |u| {
        let v = lift::accumulate(&tr[u], &[n, n], n, |m| b.mul(&b.basis(m[0]), &b.s(&b.eps(&b.basis(m[1])))));
        v == b.basis(u)
    });

    let da = b.base_dim();
    let mut w = Witnesses::new();
    for a in 0..da {
        for c in 0..da {
            let x = b.mul(&b.s(&b.base().basis(a)), &b.t(&b.base().basis(c)));
            let rhs = kron(&b.t(&b.base().basis(c)), &b.t(&b.base().basis(a)));
            if dr.project(&t_of(&x)) != dr.project(&rhs) {
                w.add(json!({ "a": a, "b": c }));
            }
        }
    }
    r.record(TCH[8].0, TCH[8].1, w.into_failure());
}
