//! Integrals, Maschke separability and module-theoretic diagnostics of
//! integral spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::{ActionFamily, Algebra, Side};
use crate::bialgebroid::{kron, LeftBialgebroid};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{axpy, nonzeros, unit_vec, zero_vec, Matrix, Subspace, Vector};

/// The span of the integrals with the two right `A`-actions `l ↦ l s(a)` and
/// `l ↦ l t(a)`, written in coordinates of `basis`.
#[derive(Clone, Debug)]
pub struct IntegralSpace {
    pub side: Side,
    pub basis: Vec<Vector>,
    pub action_s: ActionFamily,
    pub action_t: ActionFamily,
    pub free_rank_one: bool,
    /// A generator of the span over `A`, as an element of `U`.
    pub generator: Option<Vector>,
    pub projective: bool,
    span: Subspace,
}

impl IntegralSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.span.contains(x)
    }

    pub fn coords(&self, x: &[Scalar]) -> Option<Vector> {
        self.span.coords(x)
    }

    pub fn element(&self, coords: &[Scalar]) -> Vector {
        self.span.combine(coords)
    }

    /// `a ↦ v s(a)` is a bijection from `A` onto the span.
    pub fn generated_by(&self, v: &[Scalar]) -> bool {
        match self.span.coords(v) {
            Some(c) if self.dim() == self.action_s.ops.len() => {
                let cols: Vec<Vector> = self.action_s.ops.iter().map(|m| m.mul_vec(&c)).collect();
                Matrix::from_columns(c[0].field(), self.dim(), &cols).is_invertible()
            }
            _ => false,
        }
    }

    /// True when `l s(a) = l t(a)` on the whole span.
    pub fn actions_agree(&self) -> bool {
        self.action_s.ops == self.action_t.ops
    }
}

/// `u l = s(ε(u)) l` for every basis element `u`.
pub fn is_left_integral(b: &LeftBialgebroid, l: &[Scalar]) -> bool {
    (0..b.dim()).all(|u| {
        let bu = b.basis(u);
        b.mul(&bu, l) == b.mul(&b.s(&b.eps(&bu)), l)
    })
}

pub fn left_integrals(b: &LeftBialgebroid) -> Result<IntegralSpace> {
    let f = b.field();
    let n = b.dim();
    let blocks: Vec<Matrix> = (0..n)
        .map(|u| {
            let bu = b.basis(u);
            b.total().left_mul_matrix(&bu).sub(&b.total().left_mul_matrix(&b.s(&b.eps(&bu))))
        })
        .collect();
    let span = Subspace::kernel_of(&Matrix::vstack(f, n, &blocks));
    let action = |img: &dyn Fn(&[Scalar], usize) -> Vector| -> Result<ActionFamily> {
        let ops = (0..b.base_dim())
            .map(|a| {
                let cols = span
                    .basis
                    .iter()
                    .map(|l| span.coords(&img(l, a)).ok_or_else(|| Error::Invalid("integral span not closed under A".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_columns(f, span.dim(), &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ActionFamily::new(Side::Right, ops))
    };
    let action_s = action(&|l, a| b.mul(l, &b.s(&b.base().basis(a))))?;
    let action_t = action(&|l, a| b.mul(l, &b.t(&b.base().basis(a))))?;
    let gen = if span.dim() == 0 { None } else { free_generator(b.base(), &action_s.ops) };
    let projective = if span.dim() == 0 { true } else { is_projective(b.base(), &action_s.ops) };
    Ok(IntegralSpace {
        side: Side::Left,
        basis: span.basis.clone(),
        free_rank_one: gen.is_some(),
        generator: gen.map(|c| span.combine(&c)),
        projective,
        action_s,
        action_t,
        span,
    })
}

/// `u l₍₊₎ ⊗ l₍₋₎ = l₍₊₎ ⊗ l₍₋₎ u` in `U◀ ⊗_A ▷U` for all basis `u`.
/// Returns the first failing basis index.
pub fn integral_invariance_check(b: &LeftBialgebroid, l: &[Scalar]) -> Result<Option<usize>> {
    let lift = b.translate_right_lift(l)?;
    let dr = &b.spaces()?.dr;
    let n = b.dim();
    for u in 0..n {
        let bu = b.basis(u);
        let mut lhs = zero_vec(b.field(), n * n);
        let mut rhs = zero_vec(b.field(), n * n);
        for (idx, c) in nonzeros(&lift) {
            let (x, y) = (b.basis(idx / n), b.basis(idx % n));
            axpy(&mut lhs, c, &kron(&b.mul(&bu, &x), &y));
            axpy(&mut rhs, c, &kron(&x, &b.mul(&y, &bu)));
        }
        if dr.project(&lhs) != dr.project(&rhs) {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// A left integral with `ε(l) = 1`.
pub fn normalized_left_integral(b: &LeftBialgebroid) -> Result<Option<Vector>> {
    let ints = left_integrals(b)?;
    if ints.dim() == 0 {
        return Ok(None);
    }
    let cols: Vec<Vector> = ints.basis.iter().map(|l| b.eps(l)).collect();
    let m = Matrix::from_columns(b.field(), b.base_dim(), &cols);
    Ok(m.solve_affine(&b.base().one()).map(|(c, _)| ints.element(&c)))
}

#[derive(Clone, Debug)]
pub struct Separability {
    /// Class in `U◀ ⊗_A ▷U` of a central element `e₁ ⊗ e₂` with `e₁e₂ = 1`.
    pub splitting: Option<Vector>,
    pub normalized_integral: Option<Vector>,
    /// `l₍₊₎ ⊗ l₍₋₎` for the normalized integral, when right Hopf.
    pub from_integral: Option<Vector>,
}

impl Separability {
    pub fn separable(&self) -> bool {
        self.splitting.is_some()
    }

    /// Separable exactly when a normalized integral exists.
    pub fn consistent(&self) -> bool {
        self.splitting.is_some() == self.normalized_integral.is_some()
    }

    pub fn reason(&self) -> String {
        match (&self.splitting, &self.normalized_integral) {
            (Some(_), _) => "separable".into(),
            (None, None) => "not separable: ε vanishes on the left integrals".into(),
            (None, Some(_)) => "not separable, although a normalized integral exists".into(),
        }
    }
}

/// Solves for the splitting element with one linear system over the quotient.
pub fn separability_check(b: &LeftBialgebroid) -> Result<Separability> {
    let f = b.field();
    let n = b.dim();
    let dr = &b.spaces()?.dr;
    let d = dr.dim();
    let mut blocks = Vec::new();
    for g in b.total().generators() {
        let bg = b.basis(g);
        let l = dr.descend(0, &b.total().left_mul_matrix(&bg))?;
        let r = dr.descend(1, &b.total().right_mul_matrix(&bg))?;
        blocks.push(l.sub(&r));
    }
    let mult_cols: Vec<Vector> = (0..d)
        .map(|j| {
            let lift = dr.lift(&unit_vec(f, d, j));
            b.mul_adjacent(&lift, 2, 0)
        })
        .collect();
    blocks.push(Matrix::from_columns(f, n, &mult_cols));
    let system = Matrix::vstack(f, d, &blocks);
    let mut rhs = zero_vec(f, system.rows() - n);
    rhs.extend(b.one());
    let splitting = system.solve_affine(&rhs).map(|(x, _)| x);
    let normalized_integral = normalized_left_integral(b)?;
    let from_integral = match &normalized_integral {
        Some(l) if b.is_right_hopf() => Some(b.translate_right(l)?),
        _ => None,
    };
    Ok(Separability { splitting, normalized_integral, from_integral })
}

/// Coordinates of some `v` such that `a ↦ ops(a) v` is a bijection `A → V`.
pub fn free_generator(base: &Algebra, ops: &[Matrix]) -> Option<Vector> {
    let f = base.field();
    let dim = ops.first()?.rows();
    if dim != base.dim() {
        return None;
    }
    search(f, dim, |v| {
        let cols: Vec<Vector> = ops.iter().map(|m| m.mul_vec(v)).collect();
        Matrix::from_columns(f, dim, &cols).is_invertible()
    })
}

/// Looks for a coefficient vector of length `dim` accepted by `certify`.
/// Tries basis vectors and pair sums, then every vector over a small prime
/// field, then seeded random combinations.
pub(crate) fn search(f: Field, dim: usize, certify: impl Fn(&Vector) -> bool) -> Option<Vector> {
    let mut candidates: Vec<Vector> = (0..dim).map(|i| unit_vec(f, dim, i)).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut v = unit_vec(f, dim, i);
            v[j] = f.one();
            candidates.push(v);
        }
    }
    if let Some(v) = candidates.into_iter().find(&certify) {
        return Some(v);
    }
    if let Field::Prime(p) = f {
        if (dim as f64) * (p as f64).log2() <= 16.0 {
            let total = (p as usize).pow(dim as u32);
            return (1..total).map(|k| digits(f, k, p as usize, dim)).find(&certify);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1f2e3d4c);
    (0..256)
        .map(|_| (0..dim).map(|_| f.from_i64(rng.gen_range(-8..=8))).collect::<Vector>())
        .find(&certify)
}

fn digits(f: Field, mut k: usize, p: usize, dim: usize) -> Vector {
    let mut v = zero_vec(f, dim);
    for x in v.iter_mut() {
        *x = f.from_i64((k % p) as i64);
        k /= p;
    }
    v
}

/// Whether `V`, with basis-indexed action matrices `ops`, is a direct summand
/// of a finite free module. Chooses generators `m_1..m_r`, so that
/// `π : A^r → V` is onto, and solves for an `A`-linear section of `π`.
pub fn is_projective(base: &Algebra, ops: &[Matrix]) -> bool {
    let f = base.field();
    let da = base.dim();
    let dim = ops[0].rows();
    let mut gens: Vec<Vector> = Vec::new();
    let mut covered = Subspace::span(f, dim, vec![]);
    for i in 0..dim {
        let e = unit_vec(f, dim, i);
        if !covered.contains(&e) {
            gens.push(e);
            let imgs = gens.iter().flat_map(|g| ops.iter().map(move |m| m.mul_vec(g))).collect();
            covered = Subspace::span(f, dim, imgs);
        }
    }
    let r = gens.len();
    let free_dim = r * da;
    // Right action on A^r: (x_i)·a = (x_i a); basis vector (i, c) is e_i b_c.
    let free_op = |a: usize| {
        let mut m = Matrix::zeros(f, free_dim, free_dim);
        for i in 0..r {
            for c in 0..da {
                for (k, x) in base.basis_product(c, a) {
                    m.set(i * da + k, i * da + c, x.clone());
                }
            }
        }
        m
    };
    let pi_cols: Vec<Vector> = (0..free_dim).map(|j| ops[j % da].mul_vec(&gens[j / da])).collect();
    let pi = Matrix::from_columns(f, dim, &pi_cols);
    // Unknown σ: free_dim × dim, flattened row-major.
    let unknowns = free_dim * dim;
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for a in base.generators() {
        let fa = free_op(a);
        // σ ops[a] - fa σ = 0
        for i in 0..free_dim {
            for j in 0..dim {
                let mut row = zero_vec(f, unknowns);
                for k in 0..dim {
                    row[i * dim + k] += ops[a].get(k, j);
                }
                for k in 0..free_dim {
                    row[k * dim + j] -= fa.get(i, k);
                }
                rows.push(row);
                rhs.push(f.zero());
            }
        }
    }
    // π σ = id
    for i in 0..dim {
        for j in 0..dim {
            let mut row = zero_vec(f, unknowns);
            for k in 0..free_dim {
                row[k * dim + j] += pi.get(i, k);
            }
            rows.push(row);
            rhs.push(if i == j { f.one() } else { f.zero() });
        }
    }
    let sys = match Matrix::from_rows(f, &rows, unknowns) {
        Ok(m) => m,
        Err(_) => return false,
    };
    sys.solve_affine(&rhs).is_some()
}

/// Report-friendly summary of an integral space.
pub fn describe(ints: &IntegralSpace) -> serde_json::Value {
    json!({
        "dim": ints.dim(),
        "basis": ints.basis.iter().map(|v| crate::matrix::vec_to_strings(v)).collect::<Vec<_>>(),
        "free_rank_one": ints.free_rank_one,
        "generator": ints.generator.as_ref().map(|v| crate::matrix::vec_to_strings(v)),
        "projective": ints.projective,
        "actions_agree": ints.actions_agree(),
    })
}
