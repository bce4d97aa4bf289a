//! Frobenius systems for the extensions `s : A → U` and `t : A^op → U`,
//! the battery of equivalent Frobenius conditions, and quasi-Frobenius
//! diagnostics.

use serde::Serialize;
use serde_json::json;

use crate::bialgebroid::{kron, LeftBialgebroid};
use crate::dual::{left_dual, right_dual, Dual};
use crate::error::Result;
use crate::integral::{left_integrals, search};
use crate::matrix::{axpy, nonzeros, sub_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::report::{Report, Witnesses};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    ViaS,
    ViaT,
}

/// `(θ, Σ xᵢ ⊗ yᵢ)` with `Σ s(θ(u xᵢ)) yᵢ = u = Σ xᵢ s(θ(yᵢ u))`. For
/// `ViaT` every formula is read in `U_coop`, whose source map is `t`.
#[derive(Clone, Debug)]
pub struct FrobeniusSystem {
    pub extension: Extension,
    /// `θ` as a `dim A × dim U` matrix.
    pub theta: Matrix,
    /// `Σ xᵢ ⊗ yᵢ` as a lift in `U ⊗ U`.
    pub tensor: Vector,
    /// The element with `t₀⇁θ = ε`.
    pub t0: Vector,
    pub t0_generates: bool,
}

fn source_side(b: &LeftBialgebroid, ext: Extension) -> LeftBialgebroid {
    match ext {
        Extension::ViaS => b.clone(),
        Extension::ViaT => b.coop(),
    }
}

/// `u ↦ u⇁w = w(−·u)` as a matrix from `U` to the dual, when every image
/// has the dual's linearity.
fn hook_map(d: &Dual, w: &[crate::field::Scalar]) -> Option<Matrix> {
    let b = d.origin();
    let m = d.functional(w);
    let cols = (0..b.dim())
        .map(|u| d.coords_of(&m.mul(&b.total().right_mul_matrix(&b.basis(u)))))
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_columns(b.field(), d.dim(), &cols))
}

/// `A`-bimodule functionals in `U_*`: those with `ψ(u s(a)) = ψ(u)a`.
fn bimodule_functionals(lower: &Dual) -> Subspace {
    let b = lower.origin();
    let f = b.field();
    let (n, da, dw) = (b.dim(), b.base_dim(), lower.dim());
    let funcs: Vec<Matrix> = (0..dw).map(|k| lower.functional(&unit_vec(f, dw, k))).collect();
    let mut rows = Vec::new();
    for u in 0..n {
        for &g in b.generators() {
            let moved = b.mul(&b.basis(u), &b.s(&b.base().basis(g)));
            let diffs: Vec<Vector> = funcs
                .iter()
                .map(|fk| sub_vec(&fk.mul_vec(&moved), &b.base().mul(&fk.mul_vec(&b.basis(u)), &b.base().basis(g))))
                .collect();
            for c in 0..da {
                rows.push(diffs.iter().map(|d| d[c].clone()).collect());
            }
        }
    }
    match Matrix::from_rows(f, &rows, dw) {
        Ok(m) => Subspace::kernel_of(&m),
        Err(_) => Subspace::whole(f, dw),
    }
}

/// Checks `θ(s(a)u s(c)) = aθ(u)c` and both Frobenius identities.
pub fn verify_system(b: &LeftBialgebroid, theta: &Matrix, tensor: &[crate::field::Scalar]) -> Report {
    let f = b.field();
    let n = b.dim();
    let base = b.base();
    let th = |u: &Vector| theta.mul_vec(u);
    let mut r = Report::new();
    let mut w = Witnesses::new();
    for u in 0..n {
        for a in 0..b.base_dim() {
            for &c in b.generators() {
                let x = b.mul(&b.mul(&b.s(&base.basis(a)), &b.basis(u)), &b.s(&base.basis(c)));
                if th(&x) != base.mul(&base.mul(&base.basis(a), &th(&b.basis(u))), &base.basis(c)) {
                    w.add(json!({ "u": u, "a": a, "c": c }));
                }
            }
        }
    }
    r.record("frobenius.bimodule", "θ(s(a)u s(c)) = aθ(u)c", w.into_failure());
    let mut w1 = Witnesses::new();
    let mut w2 = Witnesses::new();
    for u in 0..n {
        let bu = b.basis(u);
        let mut left = zero_vec(f, n);
        let mut right = zero_vec(f, n);
        for (idx, c) in nonzeros(tensor) {
            let (x, y) = (b.basis(idx / n), b.basis(idx % n));
            axpy(&mut left, c, &b.mul(&b.s(&th(&b.mul(&bu, &x))), &y));
            axpy(&mut right, c, &b.mul(&x, &b.s(&th(&b.mul(&y, &bu)))));
        }
        if left != bu {
            w1.add(json!(u));
        }
        if right != bu {
            w2.add(json!(u));
        }
    }
    r.record("frobenius.first", "Σ s(θ(u xᵢ)) yᵢ = u", w1.into_failure());
    r.record("frobenius.second", "Σ xᵢ s(θ(yᵢ u)) = u", w2.into_failure());
    r
}

/// Searches bimodule functionals `θ ∈ U_*` for which `u ↦ u⇁θ` is
/// bijective, then builds the tensor `Σ χ⁻¹(eᵢ^*) ⊗ eᵢ` and verifies the
/// system exactly.
pub fn frobenius_system(b: &LeftBialgebroid, ext: Extension) -> Result<Option<FrobeniusSystem>> {
    let c = source_side(b, ext);
    let lower = left_dual(&c)?;
    let f = c.field();
    let n = c.dim();
    let thetas = bimodule_functionals(&lower);
    if lower.dim() != n || thetas.dim() == 0 {
        return Ok(None);
    }
    let chi_of = |coeffs: &Vector| hook_map(&lower, &thetas.combine(coeffs)).filter(|m| m.is_invertible());
    let Some(coeffs) = search(f, thetas.dim(), |v| chi_of(v).is_some()) else {
        return Ok(None);
    };
    let theta_w = thetas.combine(&coeffs);
    let chi = chi_of(&coeffs).expect("certified");
    let inv = chi.invert().expect("certified");
    let mut tensor = zero_vec(f, n * n);
    for (i, e) in lower.free_basis().iter().enumerate() {
        let x = inv.mul_vec(&lower.dual_basis(i));
        axpy(&mut tensor, &f.one(), &kron(&x, e));
    }
    let theta = lower.functional(&theta_w);
    if !verify_system(&c, &theta, &tensor).passed() {
        return Ok(None);
    }
    let eps = lower.coords_of(c.counit_matrix()).expect("ε lies in U_*");
    let t0 = inv.mul_vec(&eps);
    let t0_generates = left_integrals(&c)?.generated_by(&t0);
    Ok(Some(FrobeniusSystem { extension: ext, theta, tensor, t0, t0_generates }))
}

/// Whether `ψ ↦ t(ψ(t₀(2)))t₀(1)` (or `φ ↦ s(φ(t₀(1)))t₀(2)` for `U^*`) is
/// bijective onto `U`.
fn through_t0(b: &LeftBialgebroid, d: &Dual, t0: &[crate::field::Scalar], upper: bool) -> bool {
    let f = b.field();
    let n = b.dim();
    let lift = b.delta_lift(t0);
    let cols: Vec<Vector> = (0..d.dim())
        .map(|k| {
            let w = unit_vec(f, d.dim(), k);
            let mut out = zero_vec(f, n);
            for (idx, c) in nonzeros(&lift) {
                let (x, y) = (b.basis(idx / n), b.basis(idx % n));
                let term = if upper { b.mul(&b.s(&d.eval(&w, &x)), &y) } else { b.mul(&b.t(&d.eval(&w, &y)), &x) };
                axpy(&mut out, c, &term);
            }
            out
        })
        .collect();
    Matrix::from_columns(f, n, &cols).is_invertible()
}

fn exists_in(span: &[Vector], ok: impl Fn(&Vector) -> bool, f: crate::field::Field) -> bool {
    if span.is_empty() {
        return false;
    }
    let dim = span[0].len();
    search(f, span.len(), |c| {
        let mut v = zero_vec(f, dim);
        for (x, s) in c.iter().zip(span) {
            axpy(&mut v, x, s);
        }
        ok(&v)
    })
    .is_some()
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub id: String,
    pub item: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusConditions {
    pub items: Vec<Condition>,
    /// `t` is Frobenius iff `▶∫^ℓ` is free of rank one; needs left Hopf.
    pub integral_criterion: Option<bool>,
    /// All items agree; asserted only for left and right Hopf.
    pub consistent: Option<bool>,
}

impl FrobeniusConditions {
    pub fn get(&self, id: &str) -> Option<bool> {
        self.items.iter().find(|c| c.id == id).map(|c| c.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|c| c.holds)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.items {
            out.push_str(&format!("{:<6} {:<7} {}\n", if c.holds { "true" } else { "false" }, c.id, c.item));
        }
        let show = |x: Option<bool>| x.map_or("n/a".to_string(), |v| v.to_string());
        out.push_str(&format!("integral criterion holds: {}\n", show(self.integral_criterion)));
        out.push_str(&format!("consistent: {}\n", show(self.consistent)));
        out
    }
}

/// Every condition of the Frobenius theorem evaluated on its own, the
/// integral criterion for `t`, and a consistency flag.
pub fn frobenius_conditions(b: &LeftBialgebroid) -> Result<FrobeniusConditions> {
    let f = b.field();
    let lower = left_dual(b)?;
    let upper = right_dual(b)?;
    let ints = left_integrals(b)?;
    let lower_r = lower.bialgebroid.right_integrals()?;
    let upper_r = upper.bialgebroid.right_integrals()?;
    let lower_oc = lower.bialgebroid.op_coop()?;
    let upper_oc = upper.bialgebroid.op_coop()?;
    let frob = |x: &LeftBialgebroid, e: Extension| frobenius_system(x, e).map(|s| s.is_some());

    let raw: Vec<(&str, &str, bool)> = vec![
        ("item1", "∫^r of U_* is free of rank one", lower_r.free_rank_one),
        ("item2", "s : A → U is Frobenius", frob(b, Extension::ViaS)?),
        ("item3", "∫^ℓ of U is free of rank one", ints.free_rank_one),
        ("item4", "the source of (U_*)^{op,coop} is Frobenius", frob(&lower_oc, Extension::ViaS)?),
        ("item5", "u ↦ u⇁ψ₀ is bijective for some ψ₀ ∈ ∫^r of U_*", exists_in(&lower_r.basis, |w| hook_map(&lower, w).is_some_and(|m| m.is_invertible()), f)),
        ("item6", "ψ ↦ t(ψ(t₀(2)))t₀(1) is bijective for some t₀ ∈ ∫^ℓ", exists_in(&ints.basis, |t| through_t0(b, &lower, t, false), f)),
        ("item7", "the source of (U^*)^{op,coop} is Frobenius", frob(&upper_oc, Extension::ViaS)?),
        ("item8", "t : A^op → U is Frobenius", frob(b, Extension::ViaT)?),
        ("item9", "the target of (U_*)^{op,coop} is Frobenius", frob(&lower_oc, Extension::ViaT)?),
        ("item10", "the target of (U^*)^{op,coop} is Frobenius", frob(&upper_oc, Extension::ViaT)?),
        ("item11", "u ↦ u⇀φ₀ is bijective for some φ₀ ∈ ∫^r of U^*", exists_in(&upper_r.basis, |w| hook_map(&upper, w).is_some_and(|m| m.is_invertible()), f)),
        ("item12", "φ ↦ s(φ(t₀(1)))t₀(2) is bijective for some t₀ ∈ ∫^ℓ", exists_in(&ints.basis, |t| through_t0(b, &upper, t, true), f)),
    ];
    let items: Vec<Condition> = raw.into_iter().map(|(id, item, holds)| Condition { id: id.into(), item: item.into(), holds }).collect();
    let free_t = crate::integral::free_generator(b.base(), &ints.action_t.ops).is_some();
    let integral_criterion = b.is_left_hopf().then(|| items[7].holds == free_t);
    let consistent = (b.is_left_hopf() && b.is_right_hopf()).then(|| items.iter().all(|c| c.holds == items[0].holds));
    Ok(FrobeniusConditions { items, integral_criterion, consistent })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiFrobenius {
    pub projective: bool,
    /// The integral space is zero, so projectivity holds vacuously.
    pub degenerate: bool,
    pub free_rank_one: bool,
    pub integral_dim: usize,
}

/// Whether `∫^ℓ` is a direct summand of a finite free `A`-module.
pub fn quasi_frobenius_check(b: &LeftBialgebroid) -> Result<QuasiFrobenius> {
    let ints = left_integrals(b)?;
    Ok(QuasiFrobenius { projective: ints.projective, degenerate: ints.dim() == 0, free_rank_one: ints.free_rank_one, integral_dim: ints.dim() })
}
