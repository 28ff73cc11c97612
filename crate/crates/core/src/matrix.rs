//! Dense matrices over a [`Field`] and the exact linear algebra built on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldEmbedding};
use crate::poly::Poly;

/// A dense row-major matrix; every entry lives in `field`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}×{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(e)) {
            return Err(Error::InvalidInput(format!("entry {bad:?} is not an element of {field}")));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Matrix {
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.from_i64(x))).collect();
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                data.push(c[i].clone());
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Self::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Elem) -> Matrix {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(field: &Field, entries: &[Elem]) -> Matrix {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: &Field, blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(r0 + i) * c + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    fn assert_same_shape(&self, o: &Matrix) {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        assert!(self.field == o.field, "matrix field mismatch");
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.assert_same_shape(o);
        let f = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.assert_same_shape(o);
        let f = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let f = &self.field;
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, c)).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch in product");
        assert!(self.field == o.field, "matrix field mismatch");
        let f = &self.field;
        let mut data = vec![f.zero(); self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    data[idx] = f.add(&data[idx], &f.mul(a, b));
                }
            }
        }
        Matrix { field: f.clone(), rows: self.rows, cols: o.cols, data }
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut r = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(&self.field, self.rows)
    }

    /// The scalar c if this matrix equals c·I.
    pub fn scalar_value(&self) -> Option<Elem> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        (*self == Matrix::scalar(&self.field, self.rows, &c)).then_some(c)
    }

    pub fn trace(&self) -> Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Apply a field embedding entrywise.
    pub fn map_field(&self, e: &FieldEmbedding) -> Matrix {
        assert!(self.field == e.from);
        Matrix { field: e.to.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| e.map(a)).collect() }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Elem {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// P·M·P⁻¹
    pub fn conjugate_by(&self, p: &Matrix) -> Result<Matrix> {
        Ok(p.mul(self).mul(&p.inverse()?))
    }

    /// N^n = 0 for an n×n matrix.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u64).is_zero()
    }

    /// det(xI − M) via reduction to upper Hessenberg form; valid in every characteristic.
    pub fn char_poly(&self) -> Poly {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let col = m - 1;
            if f.is_zero(h.get(m, col)) {
                if let Some(i) = (m + 1..n).find(|&i| !f.is_zero(h.get(i, col))) {
                    for j in 0..n {
                        h.data.swap(i * n + j, m * n + j);
                    }
                    for r in 0..n {
                        h.data.swap(r * n + i, r * n + m);
                    }
                }
            }
            if f.is_zero(h.get(m, col)) {
                continue;
            }
            let pinv = f.inv(h.get(m, col)).unwrap();
            for i in m + 1..n {
                let u = f.mul(h.get(i, col), &pinv);
                if f.is_zero(&u) {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), &f.mul(&u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, m), &f.mul(&u, h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        let x = Poly::x(f);
        let mut p: Vec<Poly> = vec![Poly::one(f)];
        for k in 1..=n {
            let lin = x.sub(&Poly::constant(f, h.get(k - 1, k - 1).clone()), f);
            let mut pk = lin.mul(&p[k - 1], f);
            let mut prod = f.one();
            for i in (1..k).rev() {
                prod = f.mul(&prod, h.get(i, i - 1));
                if f.is_zero(&prod) {
                    break;
                }
                let c = f.mul(h.get(i - 1, k - 1), &prod);
                pk = pk.sub(&p[i - 1].scale(&c, f), f);
            }
            p.push(pk);
        }
        p.pop().unwrap()
    }

    /// Monic minimal polynomial, from the first linear dependency among I, M, M², ….
    pub fn min_poly(&self) -> Poly {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut powers = vec![Matrix::identity(f, n)];
        loop {
            let k = powers.len();
            let next = powers[k - 1].mul(self);
            // solve Σ c_i M^i = M^k
            let mut aug_cols: Vec<Vec<Elem>> = powers.iter().map(|m| m.data.clone()).collect();
            aug_cols.push(next.data.clone());
            let aug = Matrix::from_columns(f, n * n, &aug_cols);
            let (r, pivots) = aug.rref();
            if !pivots.contains(&k) {
                let mut coeffs = vec![f.zero(); k + 1];
                for (row, &pc) in pivots.iter().enumerate() {
                    coeffs[pc] = f.neg(r.get(row, k));
                }
                coeffs[k] = f.one();
                return Poly::from_coeffs(f, coeffs);
            }
            powers.push(next);
        }
    }

    /// p(M) by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        let f = &self.field;
        let n = self.rows;
        p.coeffs().iter().rev().fold(Matrix::zeros(f, n, n), |acc, c| {
            acc.mul(self).add(&Matrix::scalar(f, n, c))
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|e| self.field.fmt_elem(e)).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(out, "[{}]", rows.join(", "))
    }
}

/// A linear subspace of F^n stored by its reduced row echelon basis, so that
/// equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Elem>>,
}

impl Subspace {
    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Subspace {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let rows: Vec<Elem> = vectors.iter().flat_map(|v| v.iter().cloned()).collect();
        let m = Matrix { field: field.clone(), rows: vectors.len(), cols: ambient, data: rows };
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { field: field.clone(), ambient, basis }
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { field: field.clone(), ambient, basis: Vec::new() }
    }

    pub fn whole(field: &Field, ambient: usize) -> Subspace {
        Self::span(field, ambient, &Matrix::identity(field, ambient).to_rows())
    }

    /// Kernel of a matrix as a subspace of its source.
    pub fn kernel_of(m: &Matrix) -> Subspace {
        Self::span(&m.field, m.cols, &m.kernel())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Self::span(&self.field, self.ambient, &vs).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.basis.iter().all(|v| o.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(o.basis.iter().cloned());
        Self::span(&self.field, self.ambient, &vs)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field, self.ambient);
        }
        let f = &self.field;
        // solve Σ a_i u_i − Σ b_j w_j = 0
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().map(|w| w.iter().map(|x| f.neg(x)).collect()));
        let m = Matrix::from_columns(f, self.ambient, &cols);
        let vecs: Vec<Vec<Elem>> = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![f.zero(); self.ambient];
                for (a, u) in k.iter().zip(&self.basis) {
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi = f.add(vi, &f.mul(a, ui));
                    }
                }
                v
            })
            .collect();
        Self::span(f, self.ambient, &vecs)
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vs: Vec<Vec<Elem>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::span(&self.field, m.rows, &vs)
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.image(m).is_subspace_of(self)
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.field, self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let f = &self.field;
        let mut cols = self.basis.clone();
        cols.push(v.to_vec());
        let m = Matrix::from_columns(f, self.ambient, &cols);
        let (r, pivots) = m.rref();
        let k = self.basis.len();
        if pivots.contains(&k) {
            return None;
        }
        let mut out = vec![f.zero(); k];
        for (row, &pc) in pivots.iter().enumerate() {
            out[pc] = r.get(row, k).clone();
        }
        Some(out)
    }
}
