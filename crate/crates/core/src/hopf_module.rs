//! Hopf modules: the four kinds, the standard examples, the structures on
//! the duals and the fundamental theorems.
//!
//! Kinds are named module side first: `RightLeft` is a right `U`-module with
//! a left `U`-comodule. Over a left bialgebroid only `LeftLeft` and
//! `RightLeft` occur; the other two live over right bialgebroids and are
//! reduced to the first two over `W^{op,coop}`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{ActionFamily, Side};
use crate::bialgebroid::{kron, LeftBialgebroid, RightBialgebroid};
use crate::comodule::{check_comodule, coinvariants, comodule_hopf_galois, induced_action, restrict, translation_space, Comodule};
use crate::dual::{dual_actions, left_dual, right_dual, s_upper_star, Dual};
use crate::error::{Error, Result};
use crate::matrix::{axpy, nonzeros, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::report::{Report, Witnesses};
use crate::tensor::TensorQuotient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopfKind {
    LeftLeft,
    RightLeft,
    RightRight,
    LeftRight,
}

impl HopfKind {
    fn mirrored(self) -> HopfKind {
        match self {
            HopfKind::LeftLeft => HopfKind::RightRight,
            HopfKind::RightRight => HopfKind::LeftLeft,
            HopfKind::RightLeft => HopfKind::LeftRight,
            HopfKind::LeftRight => HopfKind::RightLeft,
        }
    }

    fn module_side(self) -> Side {
        match self {
            HopfKind::LeftLeft | HopfKind::LeftRight => Side::Left,
            HopfKind::RightLeft | HopfKind::RightRight => Side::Right,
        }
    }

    fn comodule_side(self) -> Side {
        match self {
            HopfKind::LeftLeft | HopfKind::RightLeft => Side::Left,
            HopfKind::RightRight | HopfKind::LeftRight => Side::Right,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HopfModule {
    pub kind: HopfKind,
    /// One operator per basis element of the total algebra.
    pub module: ActionFamily,
    pub comodule: Comodule,
}

impl HopfModule {
    pub fn dim(&self) -> usize {
        self.comodule.dim()
    }

    /// The total algebra over itself: left-left or right-left.
    pub fn regular(b: &LeftBialgebroid, kind: HopfKind) -> Result<HopfModule> {
        let n = b.dim();
        let ops: Vec<Matrix> = match kind {
            HopfKind::LeftLeft => (0..n).map(|u| b.total().left_mul_matrix(&b.basis(u))).collect(),
            HopfKind::RightLeft => (0..n).map(|u| b.total().right_mul_matrix(&b.basis(u))).collect(),
            _ => return Err(Error::Unsupported("over a left bialgebroid only left comodule kinds occur".into())),
        };
        Ok(HopfModule { kind, module: ActionFamily::new(kind.module_side(), ops), comodule: Comodule::regular(b, Side::Left) })
    }

    /// `W` over itself, right-right or left-right.
    pub fn regular_right(w: &RightBialgebroid, kind: HopfKind) -> Result<HopfModule> {
        let l = w.op_coop()?;
        Ok(HopfModule::regular(&l, kind.mirrored())?.mirrored(l.dim()))
    }

    /// The same data read over `W^{op,coop}` (or back).
    pub fn mirrored(&self, total_dim: usize) -> HopfModule {
        HopfModule { kind: self.kind.mirrored(), module: self.module.flipped(), comodule: self.comodule.flipped(total_dim) }
    }

    /// Conjugates every structure map by a linear isomorphism `iso` from
    /// this carrier to another.
    pub fn transport(&self, b: &LeftBialgebroid, iso: &Matrix) -> Result<HopfModule> {
        let inv = iso.invert().ok_or_else(|| Error::Invalid("transport needs an invertible map".into()))?;
        let conj = |m: &Matrix| iso.mul(m).mul(&inv);
        let module = ActionFamily::new(self.module.side, self.module.ops.iter().map(conj).collect());
        let action = ActionFamily::new(self.comodule.action.side, self.comodule.action.ops.iter().map(conj).collect());
        let (du, d) = (b.dim(), self.dim());
        let f = b.field();
        let cols: Vec<Vector> = (0..d)
            .map(|k| {
                let v = self.comodule.coaction.mul_vec(&inv.col(k));
                let mut out = zero_vec(f, du * d);
                for (idx, c) in nonzeros(&v) {
                    let (x, m) = match self.comodule.side {
                        Side::Left => (idx / d, idx % d),
                        Side::Right => (idx % du, idx / du),
                    };
                    let y = iso.col(m);
                    let t = match self.comodule.side {
                        Side::Left => kron(&b.basis(x), &y),
                        Side::Right => kron(&y, &b.basis(x)),
                    };
                    axpy(&mut out, c, &t);
                }
                out
            })
            .collect();
        Ok(HopfModule {
            kind: self.kind,
            module,
            comodule: Comodule::new(self.comodule.side, action, Matrix::from_columns(f, du * d, &cols))?,
        })
    }
}

fn coaction_space(b: &LeftBialgebroid, n: &Comodule) -> Result<TensorQuotient> {
    TensorQuotient::balanced(b.field(), b.dim(), b.lt().to_vec(), n.dim(), n.action.ops.clone(), b.generators())
}

/// The axioms of a left-left or right-left Hopf module over `b`.
pub fn check_hopf_module(b: &LeftBialgebroid, m: &HopfModule) -> Report {
    let mut r = Report::new();
    if !matches!(m.kind, HopfKind::LeftLeft | HopfKind::RightLeft) {
        r.record("hopf_module.kind", "left-left or right-left over a left bialgebroid", Some(json!(m.kind)));
        return r;
    }
    if m.module.side != m.kind.module_side() || m.comodule.side != m.kind.comodule_side() {
        r.record("hopf_module.sides", "module and comodule sides match the kind", Some(json!(m.kind)));
        return r;
    }
    let f = b.field();
    let (du, dm) = (b.dim(), m.dim());
    r.record("hopf_module.module", "M is a U-module", m.module.check(b.total()));
    r.extend(check_comodule(b, &m.comodule));

    let sa: Vec<Matrix> = (0..b.base_dim()).map(|a| m.module.op(&b.s(&b.base().basis(a)))).collect();
    match m.kind {
        HopfKind::LeftLeft => {
            let ok = m.comodule.action.ops == sa;
            r.flag("hopf_module.base_action", "a·m = s(a)m", ok);
        }
        _ => {
            let res = induced_action(b, &m.comodule).map(|ind| ind.ops == sa);
            r.record("hopf_module.base_action", "m·a = m s(a) for the induced right action", match res {
                Ok(true) => None,
                Ok(false) => Some(json!("induced action differs from m s(a)")),
                Err(e) => Some(json!(e.to_string())),
            });
        }
    }

    let c = match coaction_space(b, &m.comodule) {
        Ok(c) => c,
        Err(e) => {
            r.record("hopf_module.compatible", "the compatibility law", Some(json!(e.to_string())));
            return r;
        }
    };
    let cols = m.comodule.coaction.col_vectors();
    let mut w = Witnesses::new();
    for u in 0..du {
        let du_lift = b.delta_lift(&b.basis(u));
        for k in 0..dm {
            let moved = m.module.ops[u].col(k);
            let lhs = c.project(&m.comodule.coaction.mul_vec(&moved));
            let mut rhs = zero_vec(f, du * dm);
            for (i, ci) in nonzeros(&du_lift) {
                let (x, y) = (i / du, i % du);
                for (j, cj) in nonzeros(&cols[k]) {
                    let (z, k2) = (j / dm, j % dm);
                    let first = match m.kind {
                        HopfKind::LeftLeft => b.mul(&b.basis(x), &b.basis(z)),
                        _ => b.mul(&b.basis(z), &b.basis(x)),
                    };
                    axpy(&mut rhs, &(ci * cj), &kron(&first, &m.module.ops[y].col(k2)));
                }
            }
            if lhs != c.project(&rhs) {
                w.add(json!({ "u": u, "m": k }));
            }
        }
    }
    let item = match m.kind {
        HopfKind::LeftLeft => "u(1)m(-1) ⊗ u(2)m(0) = Δ(um)",
        _ => "m(-1)u(1) ⊗ m(0)u(2) = Δ(mu)",
    };
    r.record("hopf_module.compatible", item, w.into_failure());
    r
}

/// The axioms of a right-right or left-right Hopf module over `w`.
pub fn check_right_hopf_module(w: &RightBialgebroid, m: &HopfModule) -> Result<Report> {
    if !matches!(m.kind, HopfKind::RightRight | HopfKind::LeftRight) {
        return Err(Error::Invalid("right-right or left-right expected over a right bialgebroid".into()));
    }
    let l = w.op_coop()?;
    Ok(check_hopf_module(&l, &m.mirrored(l.dim())))
}

/// A Hopf module on `U◁ ⊗ N` or `▶U ⊗ P` together with its carrier space.
#[derive(Clone, Debug)]
pub struct TensorHopfModule {
    pub space: TensorQuotient,
    pub module: HopfModule,
}

/// `v ⊗ n ↦ v(1) ⊗ (v(2) ⊗ n)` on the carrier `q` whose first factor is `U`.
fn first_factor_coaction(b: &LeftBialgebroid, q: &TensorQuotient) -> Matrix {
    let f = b.field();
    let (du, dq) = (b.dim(), q.dim());
    let dn = q.factor_dims()[1];
    let cols: Vec<Vector> = (0..dq)
        .map(|j| {
            let mut out = zero_vec(f, du * dq);
            for (idx, c) in nonzeros(&q.lift(&unit_vec(f, dq, j))) {
                let (v, n) = (idx / dn, idx % dn);
                for (i, d) in nonzeros(&b.delta_columns()[v]) {
                    let (x, y) = (i / du, i % du);
                    axpy(&mut out, &(c * d), &kron(&b.basis(x), &q.project_pure(&[y, n])));
                }
            }
            out
        })
        .collect();
    Matrix::from_columns(f, du * dq, &cols)
}

fn descend_all(q: &TensorQuotient, ms: &[Matrix]) -> Result<Vec<Matrix>> {
    ms.iter().map(|m| q.descend(0, m)).collect()
}

/// `U◁ ⊗_A N` for a left `A`-module `N`, right-left:
/// `(v ⊗ n)u = vu ⊗ n` and `v ⊗ n ↦ v(1) ⊗ v(2) ⊗ n`.
pub fn r_l_type1(b: &LeftBialgebroid, n: &ActionFamily) -> Result<TensorHopfModule> {
    if n.side != Side::Left {
        return Err(Error::Invalid("a left A-module is expected".into()));
    }
    let q = TensorQuotient::balanced(b.field(), b.dim(), b.lt().to_vec(), n.carrier_dim(), n.ops.clone(), b.generators())?;
    let right: Vec<Matrix> = (0..b.dim()).map(|u| b.total().right_mul_matrix(&b.basis(u))).collect();
    let module = ActionFamily::new(Side::Right, descend_all(&q, &right)?);
    let action = ActionFamily::new(Side::Left, descend_all(&q, b.ls())?);
    let comodule = Comodule::new(Side::Left, action, first_factor_coaction(b, &q))?;
    Ok(TensorHopfModule { module: HopfModule { kind: HopfKind::RightLeft, module, comodule }, space: q })
}

/// `▶U ⊗_{A^op} P` for a right `A`-module `P`, left-left:
/// `u(v ⊗ x) = uv ⊗ x` and `v ⊗ x ↦ v(1) ⊗ v(2) ⊗ x`.
pub fn l_l_type1(b: &LeftBialgebroid, p: &ActionFamily) -> Result<TensorHopfModule> {
    if p.side != Side::Right {
        return Err(Error::Invalid("a right A-module is expected".into()));
    }
    let q = TensorQuotient::balanced(b.field(), b.dim(), b.rt().to_vec(), p.carrier_dim(), p.ops.clone(), b.generators())?;
    let left: Vec<Matrix> = (0..b.dim()).map(|u| b.total().left_mul_matrix(&b.basis(u))).collect();
    let module = ActionFamily::new(Side::Left, descend_all(&q, &left)?);
    let action = ActionFamily::new(Side::Left, descend_all(&q, b.ls())?);
    let comodule = Comodule::new(Side::Left, action, first_factor_coaction(b, &q))?;
    Ok(TensorHopfModule { module: HopfModule { kind: HopfKind::LeftLeft, module, comodule }, space: q })
}

/// `U◁ ⊗_A N` for a left `U`-module `N`, left-left:
/// `u(v ⊗ n) = u(1)v ⊗ u(2)n` and `v ⊗ n ↦ v(1) ⊗ v(2) ⊗ n`.
pub fn l_l_type2(b: &LeftBialgebroid, n: &ActionFamily) -> Result<TensorHopfModule> {
    let f = b.field();
    let du = b.dim();
    let dn = n.carrier_dim();
    let n_s: Vec<Matrix> = (0..b.base_dim()).map(|a| n.op(&b.s(&b.base().basis(a)))).collect();
    let q = TensorQuotient::balanced(f, du, b.lt().to_vec(), dn, n_s, b.generators())?;
    let dq = q.dim();
    let ops = (0..du)
        .map(|u| {
            let cols: Vec<Vector> = (0..dq)
                .map(|j| {
                    let mut out = zero_vec(f, du * dn);
                    for (idx, c) in nonzeros(&q.lift(&unit_vec(f, dq, j))) {
                        let (v, k) = (idx / dn, idx % dn);
                        for (i, d) in nonzeros(&b.delta_columns()[u]) {
                            let (x, y) = (i / du, i % du);
                            let first = b.mul(&b.basis(x), &b.basis(v));
                            axpy(&mut out, &(c * d), &kron(&first, &n.ops[y].col(k)));
                        }
                    }
                    q.project(&out)
                })
                .collect();
            Matrix::from_columns(f, dq, &cols)
        })
        .collect();
    let action = ActionFamily::new(Side::Left, descend_all(&q, b.ls())?);
    let comodule = Comodule::new(Side::Left, action, first_factor_coaction(b, &q))?;
    Ok(TensorHopfModule { module: HopfModule { kind: HopfKind::LeftLeft, module: ActionFamily::new(Side::Left, ops), comodule }, space: q })
}

/// Whether `phi` intertwines both the module and the comodule structures.
pub fn is_hopf_morphism(b: &LeftBialgebroid, from: &HopfModule, to: &HopfModule, phi: &Matrix) -> Result<bool> {
    if from.kind != to.kind || phi.cols() != from.dim() || phi.rows() != to.dim() {
        return Ok(false);
    }
    let (d1, d2) = (from.dim(), to.dim());
    let modules = (0..b.dim()).all(|u| phi.mul(&from.module.ops[u]) == to.module.ops[u].mul(phi));
    let f = b.field();
    let du = b.dim();
    let c2 = coaction_space(b, &to.comodule)?;
    let comodules = (0..d1).all(|k| {
        let lhs = c2.project(&to.comodule.coaction.mul_vec(&phi.col(k)));
        let mut rhs = zero_vec(f, du * d2);
        for (idx, c) in nonzeros(&from.comodule.coaction.col(k)) {
            let (x, m) = (idx / d1, idx % d1);
            axpy(&mut rhs, c, &kron(&b.basis(x), &phi.col(m)));
        }
        lhs == c2.project(&rhs)
    });
    Ok(modules && comodules)
}

#[derive(Clone, Debug)]
pub struct DeltaComparison {
    pub domain: TensorHopfModule,
    pub codomain: TensorHopfModule,
    pub map: Matrix,
    pub morphism: bool,
    pub iso: bool,
}

/// `δ_N : ▶U ⊗_{A^op} N◁ → U◁ ⊗_A ▷N`, `u ⊗ n ↦ u(1) ⊗ u(2)n`, for a
/// left `U`-module `N` with `n◁a = t(a)n`.
pub fn delta_comparison(b: &LeftBialgebroid, n: &ActionFamily) -> Result<DeltaComparison> {
    let f = b.field();
    let du = b.dim();
    let dn = n.carrier_dim();
    let n_t: Vec<Matrix> = (0..b.base_dim()).map(|a| n.op(&b.t(&b.base().basis(a)))).collect();
    let domain = l_l_type1(b, &ActionFamily::new(Side::Right, n_t))?;
    let codomain = l_l_type2(b, n)?;
    let (q1, q2) = (&domain.space, &codomain.space);
    let cols: Vec<Vector> = (0..q1.dim())
        .map(|j| {
            let mut out = zero_vec(f, du * dn);
            for (idx, c) in nonzeros(&q1.lift(&unit_vec(f, q1.dim(), j))) {
                let (u, k) = (idx / dn, idx % dn);
                for (i, d) in nonzeros(&b.delta_columns()[u]) {
                    let (x, y) = (i / du, i % du);
                    axpy(&mut out, &(c * d), &kron(&b.basis(x), &n.ops[y].col(k)));
                }
            }
            q2.project(&out)
        })
        .collect();
    let map = Matrix::from_columns(f, q2.dim(), &cols);
    let morphism = is_hopf_morphism(b, &domain.module, &codomain.module, &map)?;
    let iso = map.is_invertible();
    Ok(DeltaComparison { domain, codomain, map, morphism, iso })
}

/// `U^*` as a left-left Hopf module: `(u•φ)(v) = ε(u₊ s(φ(u₋v)))` and
/// `φ ↦ Σ f_j ⊗ φ f_j^*` over the chosen basis of `U◁`. Needs left Hopf.
pub fn build_u_star_hopf_module(b: &LeftBialgebroid) -> Result<(Dual, HopfModule)> {
    let lower = left_dual(b)?;
    let upper = right_dual(b)?;
    let bullet = dual_actions(&lower, &upper)?
        .upper_bullet
        .ok_or_else(|| Error::Unsupported("the U^* Hopf module needs left Hopf".into()))?;
    let module = u_star_from(b, &upper, bullet)?;
    Ok((upper, module))
}

fn u_star_from(b: &LeftBialgebroid, upper: &Dual, bullet: ActionFamily) -> Result<HopfModule> {
    let f = b.field();
    let (du, d) = (b.dim(), upper.dim());
    let w = &upper.bialgebroid.total;
    let cols: Vec<Vector> = (0..d)
        .map(|k| {
            let phi = unit_vec(f, d, k);
            let mut out = zero_vec(f, du * d);
            for (j, fj) in upper.free_basis().iter().enumerate() {
                axpy(&mut out, &f.one(), &kron(fj, &w.mul(&phi, &upper.dual_basis(j))));
            }
            out
        })
        .collect();
    let action = ActionFamily::new(Side::Left, (0..b.base_dim()).map(|a| bullet.op(&b.s(&b.base().basis(a)))).collect());
    let comodule = Comodule::new(Side::Left, action, Matrix::from_columns(f, du * d, &cols))?;
    Ok(HopfModule { kind: HopfKind::LeftLeft, module: bullet, comodule })
}

/// `U_*` as a left-left Hopf module, transported from `U^*` along `S^*`.
/// The module action becomes `⇁`.
pub fn build_u_lower_star_hopf_module(b: &LeftBialgebroid) -> Result<(Dual, HopfModule)> {
    let lower = left_dual(b)?;
    let upper = right_dual(b)?;
    let bullet = dual_actions(&lower, &upper)?
        .upper_bullet
        .ok_or_else(|| Error::Unsupported("the U_* Hopf module needs left Hopf".into()))?;
    let s = s_upper_star(&upper, &lower)?;
    let module = u_star_from(b, &upper, bullet)?.transport(b, &s)?;
    Ok((lower, module))
}

/// `(mu)[+] ⊗ (mu)[-] = m[+]u₍₊₎ ⊗ u₍₋₎m[-]` on all basis pairs of a
/// right-left Hopf module. Needs right Hopf and a bijective comodule map.
pub fn mixing_identity(b: &LeftBialgebroid, m: &HopfModule) -> Result<Report> {
    if m.kind != HopfKind::RightLeft {
        return Err(Error::Invalid("the mixing identity is stated for right-left Hopf modules".into()));
    }
    let g = comodule_hopf_galois(b, &m.comodule)?;
    let tl = g.lifts().ok_or_else(|| Error::Unsupported("the comodule Hopf–Galois map is not bijective".into()))?;
    let d = translation_space(b, &m.comodule)?;
    let f = b.field();
    let (du, dm) = (b.dim(), m.dim());
    let tr: Vec<Vector> = (0..du).map(|u| b.translate_right_lift(&b.basis(u))).collect::<Result<_>>()?;
    let mut w = Witnesses::new();
    for u in 0..du {
        for k in 0..dm {
            let mut lhs = zero_vec(f, dm * du);
            for (j, c) in nonzeros(&m.module.ops[u].col(k)) {
                axpy(&mut lhs, c, &tl[j]);
            }
            let mut rhs = zero_vec(f, dm * du);
            for (i, c) in nonzeros(&tl[k]) {
                let (k2, y) = (i / du, i % du);
                for (j, e) in nonzeros(&tr[u]) {
                    let (p, q) = (j / du, j % du);
                    let first = m.module.ops[p].col(k2);
                    axpy(&mut rhs, &(c * e), &kron(&first, &b.mul(&b.basis(q), &b.basis(y))));
                }
            }
            if d.project(&lhs) != d.project(&rhs) {
                w.add(json!({ "m": k, "u": u }));
            }
        }
    }
    let mut r = Report::new();
    r.record("mixing", "(mu)[+] ⊗ (mu)[-] = m[+]u₍₊₎ ⊗ u₍₋₎m[-]", w.into_failure());
    Ok(r)
}

/// The fundamental theorem for right-left Hopf modules with bijective
/// comodule Hopf–Galois map.
#[derive(Clone, Debug)]
pub struct FundamentalRl {
    /// `M^cov` with `a▶m = m t(a)`.
    pub coinvariants: Subspace,
    pub cov_action: ActionFamily,
    /// `U◁ ⊗_A M^cov` in coordinates of the coinvariant basis.
    pub domain: TensorQuotient,
    /// `u ⊗ m ↦ mu`
    pub gamma: Matrix,
    /// `m ↦ m(-1) ⊗ m(0)[+]m(0)[-]`, when those land in `M^cov`
    pub eta: Option<Matrix>,
    pub images_coinvariant: bool,
    pub verified: bool,
}

pub fn fundamental_rl(b: &LeftBialgebroid, m: &HopfModule) -> Result<FundamentalRl> {
    if m.kind != HopfKind::RightLeft {
        return Err(Error::Invalid("a right-left Hopf module is expected".into()));
    }
    let g = comodule_hopf_galois(b, &m.comodule)?;
    let tl = g.lifts().ok_or_else(|| Error::Unsupported("the comodule Hopf–Galois map is not bijective".into()))?;
    let f = b.field();
    let (du, dm) = (b.dim(), m.dim());
    let cov = coinvariants(b, &m.comodule)?.space;
    let tri: Vec<Matrix> = (0..b.base_dim()).map(|a| m.module.op(&b.t(&b.base().basis(a)))).collect();
    let cov_action = restrict(&cov, &ActionFamily::new(Side::Left, tri))
        .ok_or_else(|| Error::Invalid("M^cov is not stable under m ↦ m t(a)".into()))?;
    let dc = cov.dim();
    let domain = TensorQuotient::balanced(f, du, b.lt().to_vec(), dc, cov_action.ops.clone(), b.generators())?;
    let gcols: Vec<Vector> = (0..domain.dim())
        .map(|j| {
            let mut out = zero_vec(f, dm);
            for (idx, c) in nonzeros(&domain.lift(&unit_vec(f, domain.dim(), j))) {
                let (u, k) = (idx / dc, idx % dc);
                axpy(&mut out, c, &m.module.ops[u].mul_vec(&cov.basis[k]));
            }
            out
        })
        .collect();
    let gamma = Matrix::from_columns(f, dm, &gcols);

    let proj: Vec<Vector> = tl
        .iter()
        .map(|t| {
            let mut out = zero_vec(f, dm);
            for (idx, c) in nonzeros(t) {
                let (k, y) = (idx / du, idx % du);
                axpy(&mut out, c, &m.module.ops[y].col(k));
            }
            out
        })
        .collect();
    let coords: Option<Vec<Vector>> = proj.iter().map(|p| cov.coords(p)).collect();
    let images_coinvariant = coords.is_some();
    let eta = coords.map(|coords| {
        let cols: Vec<Vector> = (0..dm)
            .map(|k| {
                let mut out = zero_vec(f, du * dc);
                for (idx, c) in nonzeros(&m.comodule.coaction.col(k)) {
                    let (x, k2) = (idx / dm, idx % dm);
                    axpy(&mut out, c, &kron(&b.basis(x), &coords[k2]));
                }
                domain.project(&out)
            })
            .collect();
        Matrix::from_columns(f, domain.dim(), &cols)
    });
    let verified = eta.as_ref().is_some_and(|e| {
        e.rows() == gamma.cols()
            && gamma.mul(e) == Matrix::identity(f, dm)
            && e.mul(&gamma) == Matrix::identity(f, domain.dim())
    });
    Ok(FundamentalRl { coinvariants: cov, cov_action, domain, gamma, eta, images_coinvariant, verified })
}

/// The fundamental theorem for left-left Hopf modules.
#[derive(Clone, Debug)]
pub struct FundamentalLl {
    /// `M^cov` with `m·a = t(a)m`.
    pub coinvariants: Subspace,
    pub cov_action: ActionFamily,
    /// `▶U ⊗_{A^op} M^cov`
    pub domain: TensorQuotient,
    /// `u ⊗ m ↦ um`
    pub gamma: Matrix,
    pub surjective: bool,
    pub iso: bool,
}

pub fn fundamental_ll(b: &LeftBialgebroid, m: &HopfModule) -> Result<FundamentalLl> {
    if m.kind != HopfKind::LeftLeft {
        return Err(Error::Invalid("a left-left Hopf module is expected".into()));
    }
    let f = b.field();
    let (du, dm) = (b.dim(), m.dim());
    let cov = coinvariants(b, &m.comodule)?.space;
    let tri: Vec<Matrix> = (0..b.base_dim()).map(|a| m.module.op(&b.t(&b.base().basis(a)))).collect();
    let cov_action = restrict(&cov, &ActionFamily::new(Side::Right, tri))
        .ok_or_else(|| Error::Invalid("M^cov is not stable under m ↦ t(a)m".into()))?;
    let dc = cov.dim();
    let domain = TensorQuotient::balanced(f, du, b.rt().to_vec(), dc, cov_action.ops.clone(), b.generators())?;
    let cols: Vec<Vector> = (0..domain.dim())
        .map(|j| {
            let mut out = zero_vec(f, dm);
            for (idx, c) in nonzeros(&domain.lift(&unit_vec(f, domain.dim(), j))) {
                let (u, k) = (idx / dc, idx % dc);
                axpy(&mut out, c, &m.module.ops[u].mul_vec(&cov.basis[k]));
            }
            out
        })
        .collect();
    let gamma = Matrix::from_columns(f, dm, &cols);
    let surjective = gamma.rank() == dm;
    let iso = surjective && gamma.cols() == dm;
    Ok(FundamentalLl { coinvariants: cov, cov_action, domain, gamma, surjective, iso })
}

/// `A` over itself by left or right multiplication.
pub fn base_regular(b: &LeftBialgebroid, side: Side) -> ActionFamily {
    let a = b.base();
    let ops = (0..a.dim())
        .map(|i| match side {
            Side::Left => a.left_mul_matrix(&a.basis(i)),
            Side::Right => a.right_mul_matrix(&a.basis(i)),
        })
        .collect();
    ActionFamily::new(side, ops)
}

