//! Restricted Lie–Rinehart algebras over `F_p`, their restricted enveloping
//! bialgebroids and the jet algebroids dual to them.
//!
//! `L` is free over `A` on `e_1..e_n`. An element of `L` is a list of `n`
//! coefficients in `A`. The enveloping algebra has the PBW basis
//! `b_c e_1^{α_1}...e_n^{α_n}` with `0 ≤ α_i < p`, stored at index
//! `mono(α) * dim A + c`.

use std::collections::HashMap;

use serde_json::json;

use crate::algebra::Algebra;
use crate::bialgebroid::LeftBialgebroid;
use crate::dual::{left_dual, Dual};
use crate::error::{invalid, Error, Result};
use crate::field::{Field, Scalar};
use crate::fixtures::{ground, truncated};
use crate::integral::{self, IntegralSpace};
use crate::matrix::{axpy, is_zero_vec, nonzeros, unit_vec, zero_vec, Matrix, Vector};
use crate::report::{Report, Witnesses};

#[derive(Clone, Debug)]
pub struct RestrictedLieRinehart {
    pub base: Algebra,
    pub rank: usize,
    /// `bracket[i * rank + j]` is `[e_i, e_j]`.
    pub bracket: Vec<Vec<Vector>>,
    /// Derivation matrices `ω(e_i)` on `A`.
    pub anchor: Vec<Matrix>,
    /// `p_operation[i]` is `e_i^{[p]}`.
    pub p_operation: Vec<Vec<Vector>>,
}

type LieElem = Vec<Vector>;

impl RestrictedLieRinehart {
    pub fn new(base: Algebra, bracket: Vec<Vec<Vector>>, anchor: Vec<Matrix>, p_operation: Vec<Vec<Vector>>) -> Result<RestrictedLieRinehart> {
        let n = anchor.len();
        let da = base.dim();
        if !matches!(base.field(), Field::Prime(_)) {
            return invalid("restricted Lie–Rinehart algebras need a prime field");
        }
        if bracket.len() != n * n || p_operation.len() != n {
            return invalid("bracket and p-operation must be given on every generator");
        }
        let shapes_ok = bracket.iter().chain(&p_operation).all(|x| x.len() == n && x.iter().all(|c| c.len() == da))
            && anchor.iter().all(|m| m.rows() == da && m.cols() == da);
        if !shapes_ok {
            return Err(Error::Dimension("Lie–Rinehart data does not match the base".into()));
        }
        Ok(RestrictedLieRinehart { base, rank: n, bracket, anchor, p_operation })
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn p(&self) -> usize {
        self.field().characteristic() as usize
    }

    fn zero_elem(&self) -> LieElem {
        vec![self.base.zero(); self.rank]
    }

    /// `a e_i`
    pub fn elem(&self, a: &[Scalar], i: usize) -> LieElem {
        let mut x = self.zero_elem();
        x[i] = a.to_vec();
        x
    }

    /// The derivation `ω(X)` as a matrix.
    pub fn anchor_of(&self, x: &LieElem) -> Matrix {
        let da = self.base.dim();
        let mut m = Matrix::zeros(self.field(), da, da);
        for (i, a) in x.iter().enumerate() {
            if !is_zero_vec(a) {
                m = m.add(&self.base.left_mul_matrix(a).mul(&self.anchor[i]));
            }
        }
        m
    }

    /// `[X, Y]` extended from the generators by the Leibniz rule.
    pub fn bracket_of(&self, x: &LieElem, y: &LieElem) -> LieElem {
        let a = &self.base;
        let one = self.field().one();
        let mut out = self.zero_elem();
        for (i, xi) in x.iter().enumerate() {
            if is_zero_vec(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if is_zero_vec(yj) {
                    continue;
                }
                axpy(&mut out[j], &one, &a.mul(xi, &self.anchor[i].mul_vec(yj)));
                axpy(&mut out[i], &-one.clone(), &a.mul(yj, &self.anchor[j].mul_vec(xi)));
                let c = a.mul(xi, yj);
                for (k, f) in self.bracket[i * self.rank + j].iter().enumerate() {
                    axpy(&mut out[k], &one, &a.mul(&c, f));
                }
            }
        }
        out
    }

    /// `(a e_i)^{[p]} = a^p e_i^{[p]} + ω(a e_i)^{p−1}(a) e_i`.
    pub fn p_power_of(&self, a: &[Scalar], i: usize) -> LieElem {
        let p = self.p();
        let alg = &self.base;
        let ap = alg.pow(a, p as u64);
        let mut out: LieElem = self.p_operation[i].iter().map(|c| alg.mul(&ap, c)).collect();
        let w = self.anchor_of(&self.elem(a, i));
        let mut v = a.to_vec();
        for _ in 0..p - 1 {
            v = w.mul_vec(&v);
        }
        axpy(&mut out[i], &self.field().one(), &v);
        out
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let alg = &self.base;
        let (n, da) = (self.rank, alg.dim());
        let p = self.p();
        r.extend(alg.check("base"));
        r.flag("lr.base_commutative", "A is commutative", alg.is_commutative());

        let mut w = Witnesses::new();
        for (i, d) in self.anchor.iter().enumerate() {
            for a in 0..da {
                for b in 0..da {
                    let (ba, bb) = (alg.basis(a), alg.basis(b));
                    let lhs = d.mul_vec(&alg.mul(&ba, &bb));
                    let mut rhs = alg.mul(&ba, &d.mul_vec(&bb));
                    axpy(&mut rhs, &self.field().one(), &alg.mul(&d.mul_vec(&ba), &bb));
                    if lhs != rhs {
                        w.add(json!({ "generator": i, "a": a, "b": b }));
                    }
                }
            }
        }
        r.record("lr.anchor_derivation", "each ω(e_i) is a derivation of A", w.into_failure());

        let mut w = Witnesses::new();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.bracket[i * n + j];
                let ji = &self.bracket[j * n + i];
                if ij.iter().zip(ji).any(|(x, y)| !is_zero_vec(&crate::matrix::add_vec(x, y))) {
                    w.add(json!([i, j]));
                }
            }
        }
        r.record("lr.antisymmetric", "[e_i, e_j] = −[e_j, e_i] and [e_i, e_i] = 0", w.into_failure());

        let one = alg.one();
        let gens: Vec<LieElem> = (0..n).map(|i| self.elem(&one, i)).collect();
        let mut w = Witnesses::new();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.anchor_of(&self.bracket_of(&gens[i], &gens[j]));
                let rhs = self.anchor[i].mul(&self.anchor[j]).sub(&self.anchor[j].mul(&self.anchor[i]));
                if lhs != rhs {
                    w.add(json!([i, j]));
                }
            }
        }
        r.record("lr.anchor_morphism", "ω[X, Y] = [ω(X), ω(Y)]", w.into_failure());

        let mut w = Witnesses::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (&gens[i], &gens[j], &gens[k]);
                    let mut sum = self.bracket_of(x, &self.bracket_of(y, z));
                    for (acc, t) in sum.iter_mut().zip(self.bracket_of(y, &self.bracket_of(z, x))) {
                        axpy(acc, &self.field().one(), &t);
                    }
                    for (acc, t) in sum.iter_mut().zip(self.bracket_of(z, &self.bracket_of(x, y))) {
                        axpy(acc, &self.field().one(), &t);
                    }
                    if sum.iter().any(|c| !is_zero_vec(c)) {
                        w.add(json!([i, j, k]));
                    }
                }
            }
        }
        r.record("lr.jacobi", "Jacobi identity on generator triples", w.into_failure());

        let mut w_anchor = Witnesses::new();
        let mut w_ad = Witnesses::new();
        for i in 0..n {
            for c in 0..da {
                let bc = alg.basis(c);
                let x = self.elem(&bc, i);
                let xp = self.p_power_of(&bc, i);
                let mut pw = Matrix::identity(self.field(), da);
                let wx = self.anchor_of(&x);
                for _ in 0..p {
                    pw = wx.mul(&pw);
                }
                if self.anchor_of(&xp) != pw {
                    w_anchor.add(json!({ "generator": i, "coefficient": c }));
                }
                for (j, y) in gens.iter().enumerate() {
                    let lhs = self.bracket_of(&xp, y);
                    let mut rhs = y.clone();
                    for _ in 0..p {
                        rhs = self.bracket_of(&x, &rhs);
                    }
                    if lhs != rhs {
                        w_ad.add(json!({ "generator": i, "coefficient": c, "against": j }));
                    }
                }
            }
        }
        r.record("lr.restricted_anchor", "ω(X^[p]) = ω(X)^p for X = b e_i", w_anchor.into_failure());
        r.record("lr.restricted_ad", "ad(X^[p]) = ad(X)^p for X = b e_i", w_ad.into_failure());
        r
    }

    pub fn pbw_dim(&self) -> usize {
        self.base.dim() * self.p().pow(self.rank as u32)
    }

    pub fn monomial(&self, mut idx: usize) -> Vec<usize> {
        let p = self.p();
        let mut alpha = vec![0; self.rank];
        for k in (0..self.rank).rev() {
            alpha[k] = idx % p;
            idx /= p;
        }
        alpha
    }

    pub fn mono_index(&self, alpha: &[usize]) -> usize {
        alpha.iter().fold(0, |acc, a| acc * self.p() + a)
    }
}

/// Normal forms: `nf[mono]` is the `A`-coefficient of `e^mono`.
type Nf = Vec<Vector>;

struct Straightener<'a> {
    l: &'a RestrictedLieRinehart,
    cache: HashMap<(usize, usize), Nf>,
    depth: usize,
}

const DEPTH_LIMIT: usize = 10_000;

impl<'a> Straightener<'a> {
    fn zero(&self) -> Nf {
        vec![self.l.base.zero(); self.l.p().pow(self.l.rank as u32)]
    }

    fn add_scaled(&self, out: &mut Nf, a: &[Scalar], x: &Nf) {
        let one = self.l.field().one();
        for (o, c) in out.iter_mut().zip(x) {
            if !is_zero_vec(c) {
                axpy(o, &one, &self.l.base.mul(a, c));
            }
        }
    }

    /// `e_i e^α`
    fn gen_times_mono(&mut self, i: usize, mono: usize) -> Result<Nf> {
        if let Some(x) = self.cache.get(&(i, mono)) {
            return Ok(x.clone());
        }
        self.depth += 1;
        if self.depth > DEPTH_LIMIT {
            return Err(Error::Invalid("straightening does not terminate".into()));
        }
        let l = self.l;
        let p = l.p();
        let one = l.base.one();
        let mut alpha = l.monomial(mono);
        let first = alpha.iter().position(|&a| a > 0);
        let mut out = self.zero();
        match first {
            Some(j) if j < i => {
                alpha[j] -= 1;
                let rest = l.mono_index(&alpha);
                let moved = self.gen_times_mono(i, rest)?;
                let front = self.gen_times(j, &moved)?;
                self.add_scaled(&mut out, &one, &front);
                for (k, f) in l.bracket[i * l.rank + j].clone().iter().enumerate() {
                    if !is_zero_vec(f) {
                        let t = self.gen_times_mono(k, rest)?;
                        self.add_scaled(&mut out, f, &t);
                    }
                }
            }
            _ if alpha[i] + 1 < p => {
                alpha[i] += 1;
                out[l.mono_index(&alpha)] = one;
            }
            _ => {
                alpha[i] = 0;
                let rest = l.mono_index(&alpha);
                for (k, g) in l.p_operation[i].clone().iter().enumerate() {
                    if !is_zero_vec(g) {
                        let t = self.gen_times_mono(k, rest)?;
                        self.add_scaled(&mut out, g, &t);
                    }
                }
            }
        }
        self.depth -= 1;
        self.cache.insert((i, mono), out.clone());
        Ok(out)
    }

    /// `e_i x` with `e_i c = c e_i + ω(e_i)(c)`.
    fn gen_times(&mut self, i: usize, x: &Nf) -> Result<Nf> {
        let mut out = self.zero();
        let one = self.l.field().one();
        for (mono, c) in x.iter().enumerate() {
            if is_zero_vec(c) {
                continue;
            }
            let t = self.gen_times_mono(i, mono)?;
            self.add_scaled(&mut out, c, &t);
            axpy(&mut out[mono], &one, &self.l.anchor[i].mul_vec(c));
        }
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// The restricted enveloping bialgebroid `U'_A(L)`, with `s = t` the
/// inclusion of `A`, `Δ(D) = D ⊗ 1 + 1 ⊗ D` and `ε(D) = 0` on generators.
pub fn restricted_enveloping(l: &RestrictedLieRinehart) -> Result<LeftBialgebroid> {
    let f = l.field();
    let alg = &l.base;
    let da = alg.dim();
    let monos = l.p().pow(l.rank as u32);
    let dim = da * monos;
    let mut st = Straightener { l, cache: HashMap::new(), depth: 0 };
    let flatten = |x: &Nf| -> Vector {
        let mut v = zero_vec(f, dim);
        for (m, c) in x.iter().enumerate() {
            v[m * da..(m + 1) * da].clone_from_slice(c);
        }
        v
    };
    let mut products = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let (m1, c1) = (i / da, i % da);
        let alpha = l.monomial(m1);
        for j in 0..dim {
            let (m2, c2) = (j / da, j % da);
            let mut x = st.zero();
            x[m2] = alg.basis(c2);
            for (g, &e) in alpha.iter().enumerate().rev() {
                for _ in 0..e {
                    x = st.gen_times(g, &x)?;
                }
            }
            let mut y = st.zero();
            st.add_scaled(&mut y, &alg.basis(c1), &x);
            products.push(flatten(&y));
        }
    }
    let labels: Vec<String> = (0..dim)
        .map(|i| {
            let alpha = l.monomial(i / da);
            let a = &alg.labels()[i % da];
            let gens: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(g, &e)| if e == 1 { format!("e{}", g + 1) } else { format!("e{}^{e}", g + 1) })
                .collect();
            match (a.as_str(), gens.is_empty()) {
                (_, true) => a.clone(),
                ("1", false) => gens.join(""),
                _ => format!("{a}·{}", gens.join("")),
            }
        })
        .collect();
    let mut unit = zero_vec(f, dim);
    unit[..da].clone_from_slice(&alg.one());
    let total = Algebra::from_dense(f, labels, products, unit);

    let source = Matrix::from_columns(f, dim, &(0..da).map(|c| unit_vec(f, dim, c)).collect::<Vec<_>>());
    let mut counit = Matrix::zeros(f, da, dim);
    for c in 0..da {
        for (k, x) in nonzeros(&alg.basis(c)) {
            counit.set(k, c, x.clone());
        }
    }
    let mut delta = Matrix::zeros(f, dim * dim, dim);
    for u in 0..dim {
        let (m, c) = (u / da, u % da);
        let alpha = l.monomial(m);
        let mut beta = vec![0; l.rank];
        loop {
            let coeff: i64 = alpha.iter().zip(&beta).map(|(&a, &b)| binomial(a, b)).product();
            let rest: Vec<usize> = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
            let x = l.mono_index(&beta) * da + c;
            let y = l.mono_index(&rest) * da;
            for (k, e) in nonzeros(&alg.one()) {
                delta.add_at(x * dim + y + k, u, &(&f.from_i64(coeff) * e));
            }
            let mut k = l.rank;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if beta[k] < alpha[k] {
                    beta[k] += 1;
                    break;
                }
                beta[k] = 0;
            }
            if beta.iter().all(|&b| b == 0) {
                break;
            }
        }
    }
    LeftBialgebroid::new(alg.clone(), total, source.clone(), source, delta, counit)
}

/// The jet algebroid `J = U'_*` with its functionals `λ_i` dual to `e_i`.
#[derive(Clone, Debug)]
pub struct Jet {
    pub dual: Dual,
    pub lambdas: Vec<Vector>,
    pub p: usize,
    pub rank: usize,
}

pub fn jet_algebroid(l: &RestrictedLieRinehart) -> Result<Jet> {
    let u = restricted_enveloping(l)?;
    let dual = left_dual(&u)?;
    let f = l.field();
    let da = l.base.dim();
    let n = u.dim();
    let lambdas = (0..l.rank)
        .map(|i| {
            let mut alpha = vec![0; l.rank];
            alpha[i] = 1;
            let m = l.mono_index(&alpha);
            let mut val = Matrix::zeros(f, da, n);
            for c in 0..da {
                val.set(c, m * da + c, f.one());
            }
            dual.coords_of(&val).ok_or_else(|| Error::Invalid("λ_i is not A-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Jet { dual, lambdas, p: l.p(), rank: l.rank })
}

impl Jet {
    fn algebra(&self) -> &Algebra {
        &self.dual.bialgebroid.total
    }

    /// `λ^α` computed with the product of `J`.
    pub fn monomial(&self, alpha: &[usize]) -> Vector {
        let w = self.algebra();
        let mut x = w.one();
        for (i, &e) in alpha.iter().enumerate() {
            x = w.mul(&x, &w.pow(&self.lambdas[i], e as u64));
        }
        x
    }

    /// `λ_1^{p−1}...λ_n^{p−1}`
    pub fn omega(&self) -> Vector {
        self.monomial(&vec![self.p - 1; self.rank])
    }

    pub fn lambdas_nilpotent(&self) -> bool {
        let w = self.algebra();
        self.lambdas.iter().all(|l| is_zero_vec(&w.pow(l, self.p as u64)))
    }

    /// The elements `s(b_c) λ^α` span `J` over `k`.
    pub fn monomials_span(&self) -> bool {
        let w = &self.dual.bialgebroid;
        let n = self.dual.dim();
        let da = w.base.dim();
        let mut vecs = Vec::new();
        for m in 0..self.p.pow(self.rank as u32) {
            let mut alpha = vec![0; self.rank];
            let mut r = m;
            for k in (0..self.rank).rev() {
                alpha[k] = r % self.p;
                r /= self.p;
            }
            let lam = self.monomial(&alpha);
            for c in 0..da {
                vecs.push(w.total.mul(&w.source.col(c), &lam));
            }
        }
        crate::matrix::Subspace::span(w.total.field(), n, vecs).dim() == n
    }

    /// `J` read as the left bialgebroid `(J^op, A, t, s, Δ, η)`.
    pub fn as_left(&self) -> Result<LeftBialgebroid> {
        self.dual.bialgebroid.op()
    }
}

#[derive(Clone, Debug)]
pub struct JetIntegral {
    pub omega: Vector,
    pub integrals: IntegralSpace,
    /// `ω` is a left integral.
    pub verified: bool,
    /// The integrals are free of rank one over `A` on `ω`.
    pub rank_one: bool,
}

pub fn jet_integral(l: &RestrictedLieRinehart) -> Result<JetIntegral> {
    let jet = jet_algebroid(l)?;
    let left = jet.as_left()?;
    let omega = jet.omega();
    let integrals = integral::left_integrals(&left)?;
    let verified = integral::is_left_integral(&left, &omega);
    let rank_one = verified && integrals.dim() == left.base_dim() && integrals.generated_by(&omega) && integrals.actions_agree();
    Ok(JetIntegral { omega, integrals, verified, rank_one })
}

/// A restricted Lie algebra over `k`: `[X_i, X_j] = Σ c_k X_k`.
#[derive(Clone, Debug)]
pub struct RestrictedLie {
    pub field: Field,
    pub dim: usize,
    pub bracket: Vec<Vec<Scalar>>,
    pub p_operation: Vec<Vec<Scalar>>,
}

/// `A ⊗ g` with `[a⊗X, b⊗Y] = aσ(X)(b)⊗Y − bσ(Y)(a)⊗X + ab⊗[X,Y]` and
/// anchor `a σ(X)`.
pub fn restricted_crossed_product(g: &RestrictedLie, base: &Algebra, sigma: &[Matrix]) -> Result<RestrictedLieRinehart> {
    let f = base.field();
    let m = g.dim;
    if sigma.len() != m || g.bracket.len() != m * m || g.p_operation.len() != m {
        return Err(Error::Dimension("σ, bracket and p-operation must cover every basis vector".into()));
    }
    let p = f.characteristic() as usize;
    let da = base.dim();
    let combo = |c: &[Scalar]| -> Matrix {
        let mut out = Matrix::zeros(f, da, da);
        for (k, x) in nonzeros(c) {
            out = out.add(&sigma[k].scale(x));
        }
        out
    };
    for i in 0..m {
        for j in 0..m {
            let lhs = combo(&g.bracket[i * m + j]);
            let rhs = sigma[i].mul(&sigma[j]).sub(&sigma[j].mul(&sigma[i]));
            if lhs != rhs {
                return invalid(format!("σ does not preserve the bracket on ({i}, {j})"));
            }
        }
        let mut pw = Matrix::identity(f, da);
        for _ in 0..p {
            pw = sigma[i].mul(&pw);
        }
        if combo(&g.p_operation[i]) != pw {
            return invalid(format!("σ does not preserve the p-operation on {i}"));
        }
    }
    let one = base.one();
    let lift = |c: &[Scalar]| -> Vec<Vector> { c.iter().map(|x| crate::matrix::scale_vec(x, &one)).collect() };
    let bracket = g.bracket.iter().map(|c| lift(c)).collect();
    let p_operation = g.p_operation.iter().map(|c| lift(c)).collect();
    RestrictedLieRinehart::new(base.clone(), bracket, sigma.to_vec(), p_operation)
}

/// `d/dt` on `k[t]/(t^n)`.
pub fn d_dt(f: Field, n: usize) -> Matrix {
    let mut m = Matrix::zeros(f, n, n);
    for k in 1..n {
        m.set(k - 1, k, f.from_i64(k as i64));
    }
    m
}

/// `A = F_p[t]/(t^p)`, `L = A ∂` with `∂(t) = 1` and `∂^[p] = 0`.
pub fn rank_one(p: u32) -> Result<RestrictedLieRinehart> {
    let f = Field::prime(p)?;
    let n = p as usize;
    let base = truncated(f, "t", n);
    let z = vec![vec![base.zero()]];
    RestrictedLieRinehart::new(base, z.clone(), vec![d_dt(f, n)], z)
}

/// `A = F_p[t]/(t^p)`, `L = A e_1 ⊕ A e_2` with `ω(e_1) = d/dt`, `ω(e_2) = 0`,
/// zero bracket and zero p-operation.
pub fn rank_two(p: u32) -> Result<RestrictedLieRinehart> {
    let f = Field::prime(p)?;
    let n = p as usize;
    let base = truncated(f, "t", n);
    let zero = vec![base.zero(), base.zero()];
    RestrictedLieRinehart::new(base, vec![zero.clone(); 4], vec![d_dt(f, n), Matrix::zeros(f, n, n)], vec![zero; 2])
}

/// `A = k` and an abelian `L` of rank `n` with zero p-operation.
pub fn abelian(f: Field, n: usize) -> Result<RestrictedLieRinehart> {
    let base = ground(f);
    let zero = vec![base.zero(); n];
    RestrictedLieRinehart::new(base, vec![zero.clone(); n * n], vec![Matrix::zeros(f, 1, 1); n], vec![zero; n])
}
