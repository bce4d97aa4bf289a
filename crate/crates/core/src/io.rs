//! JSON documents: bialgebroid presentations with optional modules,
//! comodules and Hopf modules, and command reports.
//!
//! Scalars are strings (`"5"`, `"-2/3"`) so that nothing is rounded. Sparse
//! tables are lists of index tuples ending in the coefficient.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{ActionFamily, Algebra, Side};
use crate::bialgebroid::LeftBialgebroid;
use crate::comodule::Comodule;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hopf_module::{HopfKind, HopfModule};
use crate::lie_rinehart::{restricted_crossed_product, RestrictedLie, RestrictedLieRinehart};
use crate::matrix::{nonzeros, zero_vec, Matrix, Vector};
use crate::report::{Report, ReportItem};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    /// `[i, j, k, c]`: `b_i b_j` has coefficient `c` on `b_k`.
    pub products: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebroidDoc {
    pub base: String,
    pub total: String,
    /// Rows of the `dim U × dim A` matrix of `s`.
    pub source: Vec<Vec<String>>,
    pub target: Vec<Vec<String>>,
    /// `[u, i, j, c]`: the lift of `Δ(b_u)` has coefficient `c` on `b_i ⊗ b_j`.
    pub delta: Vec<(usize, usize, usize, String)>,
    /// Rows of the `dim A × dim U` matrix of `ε`.
    pub counit: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    Base,
    Total,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub over: Over,
    pub side: Side,
    pub dim: usize,
    /// One matrix (as rows) per basis element of the acting algebra.
    pub ops: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleDoc {
    pub side: Side,
    /// Name of a base-algebra module giving the `A`-action.
    pub action: String,
    /// `[m, i, j, c]`: the lift of the coaction of `b_m` has coefficient `c`
    /// on `b_i ⊗ b_j` (`U ⊗ M` for left comodules, `M ⊗ U` for right ones).
    pub coaction: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfModuleDoc {
    pub kind: HopfKind,
    pub module: String,
    pub comodule: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub field: Field,
    pub algebras: BTreeMap<String, AlgebraDoc>,
    pub bialgebroid: BialgebroidDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comodules: BTreeMap<String, ComoduleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hopf_modules: BTreeMap<String, HopfModuleDoc>,
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub bialgebroid: LeftBialgebroid,
    pub names: (String, String),
    pub modules: BTreeMap<String, ActionFamily>,
    pub comodules: BTreeMap<String, Comodule>,
    pub hopf_modules: BTreeMap<String, HopfModule>,
}

fn shape(at: &str, msg: String) -> Error {
    Error::Dimension(format!("{at}: {msg}"))
}

fn scalars(f: Field, at: &str, xs: &[String], len: usize) -> Result<Vector> {
    if xs.len() != len {
        return Err(shape(at, format!("{} entries where {len} are expected", xs.len())));
    }
    xs.iter().map(|x| f.parse(x).map_err(|e| Error::Parse(format!("{at}: {e}")))).collect()
}

fn matrix(f: Field, at: &str, rows: &[Vec<String>], r: usize, c: usize) -> Result<Matrix> {
    if rows.len() != r {
        return Err(shape(at, format!("{} rows where {r} are expected", rows.len())));
    }
    let rows = rows.iter().enumerate().map(|(i, row)| scalars(f, &format!("{at}[{i}]"), row, c)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(f, &rows, c)
}

/// Columns of a sparse `[col, i, j, c]` table into vectors of length `d1 * d2`.
fn sparse_columns(f: Field, at: &str, entries: &[(usize, usize, usize, String)], cols: usize, d1: usize, d2: usize) -> Result<Matrix> {
    let mut out = vec![zero_vec(f, d1 * d2); cols];
    for (n, (col, i, j, c)) in entries.iter().enumerate() {
        if *col >= cols || *i >= d1 || *j >= d2 {
            return Err(shape(&format!("{at}[{n}]"), format!("index ({col}, {i}, {j}) out of range")));
        }
        let x = f.parse(c).map_err(|e| Error::Parse(format!("{at}[{n}]: {e}")))?;
        out[*col][i * d2 + j] += &x;
    }
    Ok(Matrix::from_columns(f, d1 * d2, &out))
}

fn algebra(f: Field, name: &str, doc: &AlgebraDoc) -> Result<Algebra> {
    let at = format!("algebras.{name}");
    let dim = doc.labels.len();
    let unit = scalars(f, &format!("{at}.unit"), &doc.unit, dim)?;
    let triples = doc
        .products
        .iter()
        .enumerate()
        .map(|(n, (i, j, k, c))| {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(shape(&format!("{at}.products[{n}]"), format!("index ({i}, {j}, {k}) out of range")));
            }
            Ok((*i, *j, *k, f.parse(c).map_err(|e| Error::Parse(format!("{at}.products[{n}]: {e}")))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Algebra::new(f, doc.labels.clone(), &triples, unit)
}

fn to_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(|r| to_strings(r)).collect()
}

fn sparse_entries(m: &Matrix, d2: usize) -> Vec<(usize, usize, usize, String)> {
    let mut out = Vec::new();
    for (col, v) in m.col_vectors().iter().enumerate() {
        for (idx, c) in nonzeros(v) {
            out.push((col, idx / d2, idx % d2, c.to_string()));
        }
    }
    out
}

fn algebra_doc(a: &Algebra) -> AlgebraDoc {
    let products = a.triples().into_iter().map(|(i, j, k, c)| (i, j, k, c.to_string())).collect();
    AlgebraDoc { labels: a.labels().to_vec(), unit: to_strings(&a.one()), products }
}

fn module_doc(m: &ActionFamily, over: Over) -> ModuleDoc {
    ModuleDoc { over, side: m.side, dim: m.carrier_dim(), ops: m.ops.iter().map(matrix_rows).collect() }
}

impl SpecDocument {
    pub fn from_json(text: &str) -> Result<SpecDocument> {
        let doc: SpecDocument = serde_json::from_str(text)?;
        if let Field::Prime(p) = doc.field {
            Field::prime(p)?;
        }
        Ok(doc)
    }

    /// Validates every shape and builds the structures.
    pub fn build(&self) -> Result<Presentation> {
        let f = match self.field {
            Field::Prime(p) => Field::prime(p)?,
            Field::Rationals => Field::Rationals,
        };
        let d = &self.bialgebroid;
        let lookup = |name: &str, what: &str| {
            self.algebras.get(name).ok_or_else(|| Error::Invalid(format!("bialgebroid.{what}: no algebra named {name:?}")))
        };
        let base = algebra(f, &d.base, lookup(&d.base, "base")?)?;
        let total = algebra(f, &d.total, lookup(&d.total, "total")?)?;
        let (da, du) = (base.dim(), total.dim());
        let source = matrix(f, "bialgebroid.source", &d.source, du, da)?;
        let target = matrix(f, "bialgebroid.target", &d.target, du, da)?;
        let counit = matrix(f, "bialgebroid.counit", &d.counit, da, du)?;
        let delta = sparse_columns(f, "bialgebroid.delta", &d.delta, du, du, du)?;
        let b = LeftBialgebroid::new(base, total, source, target, delta, counit)?;

        let mut modules = BTreeMap::new();
        for (name, m) in &self.modules {
            let at = format!("modules.{name}");
            let n = match m.over {
                Over::Base => da,
                Over::Total => du,
            };
            if m.ops.len() != n {
                return Err(shape(&at, format!("{} operators where {n} are expected", m.ops.len())));
            }
            let ops = m.ops.iter().enumerate().map(|(i, rows)| matrix(f, &format!("{at}.ops[{i}]"), rows, m.dim, m.dim)).collect::<Result<Vec<_>>>()?;
            modules.insert(name.clone(), (m.over, ActionFamily::new(m.side, ops)));
        }
        let mut comodules = BTreeMap::new();
        for (name, c) in &self.comodules {
            let at = format!("comodules.{name}");
            let action = match modules.get(&c.action) {
                Some((Over::Base, a)) => a.clone(),
                _ => return Err(Error::Invalid(format!("{at}.action: no base module named {:?}", c.action))),
            };
            let dm = action.carrier_dim();
            let (d1, d2) = match c.side {
                Side::Left => (du, dm),
                Side::Right => (dm, du),
            };
            let coaction = sparse_columns(f, &format!("{at}.coaction"), &c.coaction, dm, d1, d2)?;
            comodules.insert(name.clone(), Comodule::new(c.side, action, coaction)?);
        }
        let mut hopf_modules = BTreeMap::new();
        for (name, h) in &self.hopf_modules {
            let at = format!("hopf_modules.{name}");
            let module = match modules.get(&h.module) {
                Some((Over::Total, a)) => a.clone(),
                _ => return Err(Error::Invalid(format!("{at}.module: no total-algebra module named {:?}", h.module))),
            };
            let comodule = comodules.get(&h.comodule).cloned().ok_or_else(|| Error::Invalid(format!("{at}.comodule: no comodule named {:?}", h.comodule)))?;
            if module.carrier_dim() != comodule.dim() {
                return Err(shape(&at, "module and comodule carriers differ".into()));
            }
            hopf_modules.insert(name.clone(), HopfModule { kind: h.kind, module, comodule });
        }
        Ok(Presentation {
            bialgebroid: b,
            names: (d.base.clone(), d.total.clone()),
            modules: modules.into_iter().map(|(k, v)| (k, v.1)).collect(),
            comodules,
            hopf_modules,
        })
    }

    /// A document with no modules, naming the algebras `A` and `U`
    /// (or just `A` when they coincide).
    pub fn from_bialgebroid(b: &LeftBialgebroid) -> SpecDocument {
        let same = b.base().labels() == b.total().labels() && algebra_doc(b.base()) == algebra_doc(b.total());
        let (a, u) = ("A".to_string(), if same { "A".to_string() } else { "U".to_string() });
        let mut algebras = BTreeMap::new();
        algebras.insert(a.clone(), algebra_doc(b.base()));
        algebras.insert(u.clone(), algebra_doc(b.total()));
        SpecDocument {
            field: b.field(),
            algebras,
            bialgebroid: BialgebroidDoc {
                base: a,
                total: u,
                source: matrix_rows(b.source_matrix()),
                target: matrix_rows(b.target_matrix()),
                delta: sparse_entries(b.delta_matrix(), b.dim()),
                counit: matrix_rows(b.counit_matrix()),
            },
            modules: BTreeMap::new(),
            comodules: BTreeMap::new(),
            hopf_modules: BTreeMap::new(),
        }
    }

    /// Rebuilds the document from validated structures: reduced scalars,
    /// merged and sorted sparse entries, zero entries dropped.
    pub fn canonical(&self) -> Result<SpecDocument> {
        let p = self.build()?;
        let b = &p.bialgebroid;
        let mut doc = SpecDocument::from_bialgebroid(b);
        let (a, u) = p.names.clone();
        doc.algebras = BTreeMap::new();
        doc.algebras.insert(a.clone(), algebra_doc(b.base()));
        doc.algebras.insert(u.clone(), algebra_doc(b.total()));
        doc.bialgebroid.base = a;
        doc.bialgebroid.total = u;
        for (name, m) in &self.modules {
            let built = &p.modules[name];
            doc.modules.insert(name.clone(), module_doc(built, m.over));
        }
        for (name, c) in &self.comodules {
            let built = &p.comodules[name];
            let d2 = match c.side {
                Side::Left => built.dim(),
                Side::Right => b.dim(),
            };
            doc.comodules.insert(name.clone(), ComoduleDoc { side: c.side, action: c.action.clone(), coaction: sparse_entries(&built.coaction, d2) });
        }
        doc.hopf_modules = self.hopf_modules.clone();
        Ok(doc)
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.canonical()?)?;
        s.push('\n');
        Ok(s)
    }
}

/// A restricted Lie algebra `g` acting on a commutative base through
/// `σ : g → Der(A)`; builds the crossed-product Lie–Rinehart algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedDoc {
    pub field: Field,
    pub base: AlgebraDoc,
    pub lie_dim: usize,
    /// `[X_i, X_j]` has coefficient `c` on `X_k`: `(i, j, k, c)`.
    #[serde(default)]
    pub bracket: Vec<(usize, usize, usize, String)>,
    /// `X_i^{[p]}` has coefficient `c` on `X_k`: `(i, k, c)`.
    #[serde(default)]
    pub p_operation: Vec<(usize, usize, String)>,
    /// One `dim A × dim A` matrix per `X_i`.
    pub sigma: Vec<Vec<Vec<String>>>,
}

impl CrossedDoc {
    pub fn build(&self) -> Result<RestrictedLieRinehart> {
        let f = match self.field {
            Field::Prime(p) => Field::prime(p)?,
            Field::Rationals => return Err(Error::Invalid("field: crossed products need a prime field".into())),
        };
        let base = algebra(f, "base", &self.base)?;
        let m = self.lie_dim;
        let mut bracket = vec![zero_vec(f, m); m * m];
        for (n, (i, j, k, c)) in self.bracket.iter().enumerate() {
            if *i >= m || *j >= m || *k >= m {
                return Err(shape(&format!("bracket[{n}]"), format!("index ({i}, {j}, {k}) out of range")));
            }
            bracket[i * m + j][*k] += &f.parse(c).map_err(|e| Error::Parse(format!("bracket[{n}]: {e}")))?;
        }
        let mut p_operation = vec![zero_vec(f, m); m];
        for (n, (i, k, c)) in self.p_operation.iter().enumerate() {
            if *i >= m || *k >= m {
                return Err(shape(&format!("p_operation[{n}]"), format!("index ({i}, {k}) out of range")));
            }
            p_operation[*i][*k] += &f.parse(c).map_err(|e| Error::Parse(format!("p_operation[{n}]: {e}")))?;
        }
        if self.sigma.len() != m {
            return Err(shape("sigma", format!("{} matrices where {m} are expected", self.sigma.len())));
        }
        let da = base.dim();
        let sigma = self.sigma.iter().enumerate().map(|(i, rows)| matrix(f, &format!("sigma[{i}]"), rows, da, da)).collect::<Result<Vec<_>>>()?;
        let g = RestrictedLie { field: f, dim: m, bracket, p_operation };
        restricted_crossed_product(&g, &base, &sigma)
    }
}

pub fn load_crossed(path: impl AsRef<Path>) -> Result<CrossedDoc> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<SpecDocument> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    SpecDocument::from_json(&text).map_err(|e| match e {
        Error::Json(j) => Error::Parse(format!("{}: {j}", path.display())),
        other => other,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub fixture: String,
    pub items: Vec<ReportItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, f64>,
}

impl ReportDocument {
    pub fn new(command: &str, fixture: &str, report: Report) -> ReportDocument {
        ReportDocument { command: command.into(), fixture: fixture.into(), items: report.items, data: None, timings: BTreeMap::new() }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != crate::report::Status::Fail)
    }

    /// Deterministic JSON: timings are left out.
    pub fn canonical_json(&self) -> Result<String> {
        let mut doc = self.clone();
        doc.timings.clear();
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }

    pub fn json_with_timings(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} on {}\n", self.command, self.fixture);
        let r = Report { items: self.items.clone() };
        out.push_str(&r.to_text());
        if let Some(d) = &self.data {
            out.push_str(&text_data(d, 0));
        }
        out
    }
}

fn text_data(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) => format!("{pad}{k}:\n{}", text_data(x, indent + 2)),
                _ => format!("{pad}{k}: {}\n", plain(x)),
            })
            .collect(),
        other => format!("{pad}{}\n", plain(other)),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
