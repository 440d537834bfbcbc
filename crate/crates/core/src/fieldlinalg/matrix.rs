//! Dense matrices and subspaces over an [`Fq`].

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::{Fe, FieldError, Fq};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zero(f: &Fq, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity(f: &Fq, n: usize) -> Self {
        let mut m = Matrix::zero(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    /// Rows of equal length `cols`; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<Fe>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_i64(f: &Fq, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|&a| f.from_i64(a)).collect())
            .collect();
        Matrix::from_rows(&rows, cols)
    }

    /// Companion matrix of a monic polynomial: `x^n` in terms of lower powers
    /// in the last column.
    pub fn companion(f: &Fq, poly: &Poly) -> Self {
        let g = poly.monic(f);
        let n = g.degree().expect("nonzero polynomial");
        let mut m = Matrix::zero(f, n, n);
        for i in 1..n {
            m.set(i, i - 1, f.one());
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(&g.coeffs()[i]));
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(f: &Fq, rows: usize, cols: usize, rng: &mut R) -> Self {
        Matrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| f.random(rng)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, f: &Fq, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Matrix::zero(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, f: &Fq, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.rows, "shape mismatch");
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(o, &f.mul(a, self.get(k, j)));
            }
        }
        out
    }

    pub fn scale(&self, f: &Fq, a: &Fe) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f.mul(x, a)).collect(),
        }
    }

    pub fn sub(&self, f: &Fq, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    /// In-place reduced row-echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &Fq) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, piv);
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn rank(&self, f: &Fq) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right kernel `{x : M x = 0}`, as rows.
    pub fn kernel(&self, f: &Fq) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Coefficients `c` with `c · M = v` (a combination of the rows), or
    /// `None` when `v` is not in the row space. Unique when the rows are
    /// independent.
    pub fn solve_left(&self, f: &Fq, v: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        let r = self.rows;
        let mut aug = Matrix::zero(f, self.cols, r + 1);
        for (j, vj) in v.iter().enumerate() {
            for i in 0..r {
                aug.set(j, i, self.get(i, j).clone());
            }
            aug.set(j, r, vj.clone());
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&r) {
            return None;
        }
        let mut c = vec![f.zero(); r];
        for (row, &pc) in pivots.iter().enumerate() {
            c[pc] = aug.get(row, r).clone();
        }
        Some(c)
    }

    pub fn inverse(&self, f: &Fq) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        let n = self.rows;
        let mut aug = Matrix::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn det(&self, f: &Fq) -> Fe {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if piv != c {
                m.swap_rows(piv, c);
                det = f.neg(&det);
            }
            let p = m.get(c, c).clone();
            det = f.mul(&det, &p);
            let inv = f.inv(&p).unwrap();
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

    /// `det(x I - M)`, via reduction to Hessenberg form.
    pub fn char_poly(&self, f: &Fq) -> Poly {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else {
                continue;
            };
            // similarity by a transposition keeps the spectrum
            h.swap_rows(i, m);
            h.swap_cols(i, m);
            let inv = f.inv(h.get(m, m - 1)).unwrap();
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), &inv);
                if f.is_zero(&u) {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), &f.mul(&u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = f.add(h.get(j, m), &f.mul(&u, h.get(j, i)));
                    h.set(j, m, v);
                }
            }
        }
        // p_m = (x - h_{m-1,m-1}) p_{m-1} - Σ_i t_i h_{m-i-1,m-1} p_{m-i-1}
        let mut p: Vec<Poly> = vec![Poly::constant(f, f.one())];
        for m in 1..=n {
            let lin = Poly::new(vec![f.neg(h.get(m - 1, m - 1)), f.one()]);
            let mut pm = lin.mul(f, &p[m - 1]);
            let mut t = f.one();
            for i in 1..m {
                t = f.mul(&t, h.get(m - i, m - i - 1));
                let c = f.mul(&t, h.get(m - i - 1, m - 1));
                pm = pm.sub(f, &p[m - i - 1].scale(f, &c));
            }
            p.push(pm);
        }
        p.swap_remove(n)
    }

    /// Entrywise Frobenius.
    pub fn frobenius(&self, f: &Fq) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.frobenius(a)).collect(),
        }
    }

    /// Entries of an `F_p` matrix viewed in the extension `big`.
    pub fn lift_prime(&self, big: &Fq) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| big.lift_prime(a)).collect(),
        }
    }
}

/// A subspace of `F^n`, stored as the nonzero rows of its reduced
/// row-echelon basis, so equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Fe>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn whole(f: &Fq, ambient: usize) -> Self {
        Subspace::span_of(f, ambient, &Matrix::identity(f, ambient).row_vecs())
    }

    /// The span of the given vectors.
    pub fn span_of(f: &Fq, ambient: usize, vectors: &[Vec<Fe>]) -> Self {
        let mut m = Matrix::from_rows(vectors, ambient);
        let r = m.rref(f).len();
        Subspace {
            ambient,
            rows: m.row_vecs().into_iter().take(r).collect(),
        }
    }

    /// The span of coordinate vectors `e_i`, `i ∈ idx`.
    pub fn coordinate(f: &Fq, ambient: usize, idx: &[usize]) -> Self {
        let vecs: Vec<Vec<Fe>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![f.zero(); ambient];
                v[i] = f.one();
                v
            })
            .collect();
        Subspace::span_of(f, ambient, &vecs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.rows, self.ambient)
    }

    fn check(&self, o: &Subspace) -> Result<(), FieldError> {
        if self.ambient != o.ambient {
            return Err(FieldError::Dimension(format!(
                "ambient {} vs {}",
                self.ambient, o.ambient
            )));
        }
        Ok(())
    }

    pub fn span(&self, f: &Fq, o: &Subspace) -> Result<Subspace, FieldError> {
        self.check(o)?;
        let mut v = self.rows.clone();
        v.extend(o.rows.iter().cloned());
        Ok(Subspace::span_of(f, self.ambient, &v))
    }

    pub fn intersect(&self, f: &Fq, o: &Subspace) -> Result<Subspace, FieldError> {
        self.check(o)?;
        let (a, b) = (self.dim(), o.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // (α, β) with Σ α_i a_i + Σ β_j b_j = 0 gives Σ α_i a_i in both
        let mut stacked = self.rows.clone();
        stacked.extend(o.rows.iter().cloned());
        let coeffs = Matrix::from_rows(&stacked, self.ambient).transpose().kernel(f);
        let vecs: Vec<Vec<Fe>> = coeffs
            .iter()
            .map(|c| {
                let mut v = vec![f.zero(); self.ambient];
                for (ci, row) in c[..a].iter().zip(&self.rows) {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = f.add(x, &f.mul(ci, y));
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::span_of(f, self.ambient, &vecs))
    }

    pub fn contains_vector(&self, f: &Fq, v: &[Fe]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(&rows, self.ambient).rank(f) == self.dim()
    }

    pub fn contains(&self, f: &Fq, o: &Subspace) -> bool {
        o.rows.iter().all(|v| self.contains_vector(f, v))
    }

    /// `dim(self ∩ o)` without building a basis.
    pub fn meet_dim(&self, f: &Fq, o: &Subspace) -> usize {
        let mut rows = self.rows.clone();
        rows.extend(o.rows.iter().cloned());
        self.dim() + o.dim() - Matrix::from_rows(&rows, self.ambient).rank(f)
    }

    /// The image under a linear map acting on row vectors.
    pub fn image(&self, f: &Fq, m: &Matrix) -> Subspace {
        let vecs: Vec<Vec<Fe>> = self.rows.iter().map(|v| m.apply_row(f, v)).collect();
        Subspace::span_of(f, m.cols(), &vecs)
    }

    /// Entrywise `p`-th power, re-canonicalized.
    pub fn frobenius_map(&self, f: &Fq) -> Subspace {
        let vecs: Vec<Vec<Fe>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|a| f.frobenius(a)).collect())
            .collect();
        Subspace::span_of(f, self.ambient, &vecs)
    }

    /// An `F_p` subspace viewed over the extension `big`.
    pub fn lift_prime(&self, big: &Fq) -> Subspace {
        let vecs: Vec<Vec<Fe>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|a| big.lift_prime(a)).collect())
            .collect();
        Subspace::span_of(big, self.ambient, &vecs)
    }

    /// Every basis entry lies in `F_p`.
    pub fn defined_over_prime(&self, f: &Fq) -> bool {
        self.rows.iter().flatten().all(|a| f.in_prime_field(a))
    }
}

/// A uniformly random `dim`-dimensional subspace of `F^ambient`: random
/// matrices are redrawn until they have full rank.
pub fn random_subspace<R: Rng + ?Sized>(f: &Fq, dim: usize, ambient: usize, rng: &mut R) -> Subspace {
    assert!(dim <= ambient, "dimension exceeds ambient");
    loop {
        let m = Matrix::random(f, dim, ambient, rng);
        let s = Subspace::span_of(f, ambient, &m.row_vecs());
        if s.dim() == dim {
            return s;
        }
    }
}
