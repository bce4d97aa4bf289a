//! Dense matrices over a [`Field`] with exact Gauss-Jordan elimination.
//!
//! Prime fields take a fast path through `u64` residues; the rationals go
//! through `BigRational`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{inv_mod, Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vec(f: Field, n: usize) -> Vector {
    vec![f.zero(); n]
}

pub fn unit_vec(f: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(f, n);
    v[i] = f.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += c * x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            yi.add_mul(c, xi);
        }
    }
}

pub fn sub_vec(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn add_vec(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn scale_vec(c: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

/// Indices and values of the nonzero entries.
pub fn nonzeros(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}

pub fn vec_to_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vector], cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in a {}-column matrix", r.len(), cols)));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Scalar) {
        self.data[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension");
        let mut out = zero_vec(self.field, self.rows);
        for (j, x) in nonzeros(v) {
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    o.add_mul(a, x);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: add_vec(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: scale_vec(c, &self.data) }
    }

    /// Stacks `blocks` vertically.
    pub fn vstack(field: Field, cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Matrix { field, rows, cols, data }
    }

    pub fn rank(&self) -> usize {
        rref(self.field, self.row_vectors(), self.cols).pivots.len()
    }

    /// Reduced row echelon form of the row space.
    pub fn rref(&self) -> Echelon {
        rref(self.field, self.row_vectors(), self.cols)
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        self.rref().kernel()
    }

    /// All solutions of `Mx = b`: a particular solution and a kernel basis,
    /// or `None` when the system is inconsistent.
    pub fn solve_affine(&self, b: &[Scalar]) -> Option<(Vector, Vec<Vector>)> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let sol = self.solve_many(&[b.to_vec()])?;
        Some((sol.into_iter().next().unwrap(), self.kernel()))
    }

    /// Particular solutions of `Mx = b` for each right-hand side.
    pub fn solve_many(&self, rhs: &[Vector]) -> Option<Vec<Vector>> {
        let n = self.cols;
        let k = rhs.len();
        let rows: Vec<Vector> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(rhs.iter().map(|b| b[i].clone()));
                r
            })
            .collect();
        let e = rref(self.field, rows, n + k);
        if e.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut sols = vec![zero_vec(self.field, n); k];
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            for (j, s) in sols.iter_mut().enumerate() {
                s[p] = row[n + j].clone();
            }
        }
        Some(sols)
    }

    pub fn invert(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let rows: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(unit_vec(self.field, n, i));
                r
            })
            .collect();
        let e = rref(self.field, rows, 2 * n);
        if e.pivots.len() != n || e.pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let inv: Vec<Vector> = e.rows.iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(self.field, &inv, n).unwrap())
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Nonzero rows of a reduced row echelon form with their pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: Field,
    pub cols: usize,
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn kernel(&self) -> Vec<Vector> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = unit_vec(self.field, self.cols, f);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -&row[f];
                    }
                }
                v
            })
            .collect()
    }
}

pub fn rref(field: Field, rows: Vec<Vector>, cols: usize) -> Echelon {
    match field {
        Field::Prime(p) => {
            let mut r: Vec<Vec<u64>> =
                rows.iter().map(|row| row.iter().map(|x| x.fp_value() as u64).collect()).collect();
            let pivots = rref_fp(p as u64, &mut r, cols);
            let rows = r
                .into_iter()
                .map(|row| row.into_iter().map(|v| Scalar::Fp(v as u32, p)).collect())
                .collect();
            Echelon { field, cols, rows, pivots }
        }
        Field::Rationals => {
            let mut r = rows;
            let pivots = rref_generic(&mut r, cols);
            Echelon { field, cols, rows: r, pivots }
        }
    }
}

fn rref_fp(p: u64, rows: &mut Vec<Vec<u64>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c], p);
        if inv != 1 {
            for x in &mut rows[r][c..] {
                *x = *x * inv % p;
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let nz: Vec<usize> = (c..cols).filter(|&k| pivot_row[k] != 0).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.is_empty() {
                continue;
            }
            let f = row[c];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for &k in &nz {
                row[k] = (row[k] + g * pivot_row[k]) % p;
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn rref_generic(rows: &mut Vec<Vector>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, i);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in &mut rows[r][c..] {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let nz: Vec<usize> = (c..cols).filter(|&k| !pivot_row[k].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let f = -&row[c];
            for &k in &nz {
                row[k].add_mul(&f, &pivot_row[k]);
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `k^n` stored as a reduced echelon basis, so the
/// coordinates of a member are its entries at the pivot positions.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub field: Field,
    pub ambient: usize,
    pub basis: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: Vec<Vector>) -> Subspace {
        let e = rref(field, vectors, ambient);
        Subspace { field, ambient, basis: e.rows, pivots: e.pivots }
    }

    pub fn kernel_of(m: &Matrix) -> Subspace {
        Subspace::span(m.field(), m.cols(), m.kernel())
    }

    pub fn whole(field: Field, n: usize) -> Subspace {
        Subspace::span(field, n, (0..n).map(|i| unit_vec(field, n, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Residue of `x` after subtracting its pivot components.
    pub fn reduce(&self, x: &[Scalar]) -> Vector {
        let mut y = x.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !y[p].is_zero() {
                let c = -&y[p];
                axpy(&mut y, &c, b);
            }
        }
        y
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(x))
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coords(&self, x: &[Scalar]) -> Option<Vector> {
        if !self.contains(x) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| x[p].clone()).collect())
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        let mut v = zero_vec(self.field, self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut v, c, b);
        }
        v
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Solve sum a_i b_i = sum c_j d_j.
        let n = self.dim() + other.dim();
        let mut m = Matrix::zeros(self.field, self.ambient, n);
        for (j, b) in self.basis.iter().chain(&other.basis).enumerate() {
            let neg = j >= self.dim();
            for (i, x) in b.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, if neg { -x } else { x.clone() });
                }
            }
        }
        let vs = m.kernel().into_iter().map(|k| self.combine(&k[..self.dim()])).collect();
        Subspace::span(self.field, self.ambient, vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        let rs: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Matrix::from_rows(f, &rs, cols).unwrap()
    }

    #[test]
    fn rank_and_kernel_mod_p() {
        let f = Field::prime(3).unwrap();
        let a = m(f, &[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&a.mul_vec(&k[0])));
    }

    #[test]
    fn rational_inverse() {
        let q = Field::Rationals;
        let a = m(q, &[&[2, 1], &[1, 1]]);
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(q, 2));
        assert!(m(q, &[&[1, 2], &[2, 4]]).invert().is_none());
    }

    #[test]
    fn affine_solutions() {
        let q = Field::Rationals;
        let a = m(q, &[&[1, 1], &[2, 2]]);
        let (x, k) = a.solve_affine(&[q.from_i64(3), q.from_i64(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q.from_i64(3), q.from_i64(6)]);
        assert_eq!(k.len(), 1);
        assert!(a.solve_affine(&[q.from_i64(1), q.from_i64(3)]).is_none());
    }

    #[test]
    fn subspace_coordinates() {
        let f = Field::prime(5).unwrap();
        let v1 = vec![f.from_i64(1), f.from_i64(2), f.from_i64(0)];
        let v2 = vec![f.from_i64(0), f.from_i64(1), f.from_i64(1)];
        let s = Subspace::span(f, 3, vec![v1.clone(), v2.clone()]);
        let x = add_vec(&scale_vec(&f.from_i64(3), &v1), &v2);
        let c = s.coords(&x).unwrap();
        assert_eq!(s.combine(&c), x);
        assert!(!s.contains(&unit_vec(f, 3, 2)));
        let t = Subspace::span(f, 3, vec![unit_vec(f, 3, 0), unit_vec(f, 3, 1)]);
        assert_eq!(s.intersect(&t).dim(), 1);
    }
}
