//! Dense matrices over a [`FieldCtx`] and the elimination routines built on
//! them.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx, FieldId};

/// Row-major dense matrix. Records the field it was built over.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<FEl>,
    field: FieldId,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|x| x.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![FEl::ZERO; rows * cols],
            field: ctx.id(),
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        Self::scalar(ctx, n, FEl::ONE)
    }

    pub fn scalar(ctx: &FieldCtx, n: usize, c: FEl) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diag(ctx: &FieldCtx, entries: &[FEl]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(ctx, n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn from_fn(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FEl,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            data,
            field: ctx.id(),
        }
    }

    pub fn from_rows(ctx: &FieldCtx, rows: &[Vec<FEl>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if let Some(x) = rows.iter().flatten().find(|x| x.index() >= ctx.q()) {
            return Err(Error::InvalidCoefficient(x.index() as u64));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.concat(),
            field: ctx.id(),
        })
    }

    pub(crate) fn from_vec(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<FEl>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Mat {
            rows,
            cols,
            data,
            field: ctx.id(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn field(&self) -> FieldId {
        self.field
    }
    pub fn data(&self) -> &[FEl] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FEl {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FEl) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[FEl] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat {
            rows: self.cols,
            cols: self.rows,
            data: vec![FEl::ZERO; self.data.len()],
            field: self.field,
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(FEl) -> FEl) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
            field: self.field,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// `Some(c)` when the matrix is `c * I`.
    pub fn as_scalar(&self) -> Option<FEl> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            FEl::ONE
        } else {
            self.get(0, 0)
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { c } else { FEl::ZERO };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let r = self.rows + other.rows;
        let c = self.cols + other.cols;
        let mut m = Mat {
            rows: r,
            cols: c,
            data: vec![FEl::ZERO; r * c],
            field: self.field,
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Mat {
            rows: rows.len(),
            cols: cols.len(),
            data,
            field: self.field,
        }
    }
}

/// Matrix arithmetic is provided by the field context.
impl FieldCtx {
    pub fn check_mat(&self, m: &Mat) -> Result<()> {
        if m.field == self.id() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self, a.rows, b.cols);
        for i in 0..a.rows {
            for l in 0..a.cols {
                let x = a.get(i, l);
                if x.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let v = self.add(out.get(i, j), self.mul(x, b.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mat_add(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        let data = a
            .data
            .iter()
            .zip(&b.data)
            .map(|(&x, &y)| self.add(x, y))
            .collect();
        Mat::from_vec(self, a.rows, a.cols, data)
    }

    pub fn mat_sub(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        let data = a
            .data
            .iter()
            .zip(&b.data)
            .map(|(&x, &y)| self.sub(x, y))
            .collect();
        Mat::from_vec(self, a.rows, a.cols, data)
    }

    pub fn mat_scale(&self, c: FEl, a: &Mat) -> Mat {
        a.map(|x| self.mul(c, x))
    }

    /// Entrywise half-Frobenius.
    pub fn mat_conj(&self, a: &Mat) -> Result<Mat> {
        self.conj(FEl::ONE)?;
        Ok(a.map(|x| self.conj(x).expect("k is even")))
    }

    pub fn trace(&self, a: &Mat) -> FEl {
        (0..a.rows.min(a.cols)).fold(FEl::ZERO, |acc, i| self.add(acc, a.get(i, i)))
    }

    /// Product of a list of matrices, left to right; identity of size `n` for
    /// an empty list.
    pub fn mat_product<'a>(&self, n: usize, ms: impl IntoIterator<Item = &'a Mat>) -> Mat {
        ms.into_iter()
            .fold(Mat::identity(self, n), |acc, m| self.mat_mul(&acc, m))
    }

    pub fn mat_pow(&self, a: &Mat, mut e: u64) -> Mat {
        let mut base = a.clone();
        let mut acc = Mat::identity(self, a.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            base = self.mat_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn mat_inverse(&self, a: &Mat) -> Result<Mat> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                a.rows, a.cols
            )));
        }
        let n = a.rows;
        let mut aug = Mat::zeros(self, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, a.get(i, j));
            }
            aug.set(i, n + i, FEl::ONE);
        }
        let rank = self.rref_in_place(&mut aug, n);
        if rank < n {
            return Err(Error::Singular);
        }
        Ok(Mat::from_fn(self, n, n, |i, j| aug.get(i, n + j)))
    }

    pub fn det(&self, a: &Mat) -> FEl {
        assert!(a.is_square());
        let n = a.rows;
        let mut m = a.clone();
        let mut det = FEl::ONE;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return FEl::ZERO;
            };
            if piv != c {
                for j in 0..n {
                    let t = m.get(c, j);
                    m.set(c, j, m.get(piv, j));
                    m.set(piv, j, t);
                }
                det = self.neg(det);
            }
            let pv = m.get(c, c);
            det = self.mul(det, pv);
            let pinv = self.inv_nonzero(pv);
            for r in c + 1..n {
                let f = self.mul(m.get(r, c), pinv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = self.sub(m.get(r, j), self.mul(f, m.get(c, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn rank(&self, a: &Mat) -> usize {
        let mut m = a.clone();
        self.rref_in_place(&mut m, a.cols)
    }

    /// Reduces `m` to reduced row echelon form, pivoting only in the first
    /// `pivot_cols` columns. Returns the rank.
    fn rref_in_place(&self, m: &mut Mat, pivot_cols: usize) -> usize {
        let (rows, cols) = (m.rows, m.cols);
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    let t = m.get(r, j);
                    m.set(r, j, m.get(piv, j));
                    m.set(piv, j, t);
                }
            }
            let pinv = self.inv_nonzero(m.get(r, c));
            for j in 0..cols {
                let v = self.mul(m.get(r, j), pinv);
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let v = self.sub(m.get(i, j), self.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel `{x : a x = 0}`.
    pub fn nullspace(&self, a: &Mat) -> Vec<Vec<FEl>> {
        let mut rs = RowSpace::new(a.cols);
        for i in 0..a.rows {
            rs.insert(self, a.row(i).to_vec());
        }
        rs.kernel(self)
    }
}

/// Incrementally maintained reduced row echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct RowSpace {
    width: usize,
    rows: Vec<Vec<FEl>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        RowSpace {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, ctx: &FieldCtx, v: &mut [FEl]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p];
            if f.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = ctx.sub(*x, ctx.mul(f, y));
                }
            }
        }
    }

    pub fn contains(&self, ctx: &FieldCtx, v: &[FEl]) -> bool {
        let mut v = v.to_vec();
        self.reduce(ctx, &mut v);
        v.iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns `true` when it was independent of the current rows.
    pub fn insert(&mut self, ctx: &FieldCtx, mut v: Vec<FEl>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(ctx, &mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = ctx.inv_nonzero(v[p]);
        for x in v.iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let f = row[p];
            if f.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = ctx.sub(*x, ctx.mul(f, y));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Basis of the vectors orthogonal (under the dot product) to every row.
    /// Free columns are taken in increasing order, each basis vector having a
    /// 1 in its free column.
    pub fn kernel(&self, ctx: &FieldCtx) -> Vec<Vec<FEl>> {
        let mut is_pivot = vec![false; self.width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.width)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![FEl::ZERO; self.width];
                x[f] = FEl::ONE;
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = ctx.neg(row[f]);
                }
                x
            })
            .collect()
    }
}

/// Dimension of the matrix algebra generated by `gens`: the span of all
/// words, grown from the identity by left multiplication. The generators act
/// absolutely irreducibly exactly when this is `N^2`.
pub fn algebra_span_dim(ctx: &FieldCtx, n: usize, gens: &[Mat]) -> usize {
    let mut space = RowSpace::new(n * n);
    let id = Mat::identity(ctx, n);
    space.insert(ctx, id.data.clone());
    let mut queue = std::collections::VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        if space.dim() == n * n {
            break;
        }
        for g in gens {
            let prod = ctx.mat_mul(g, &m);
            if space.insert(ctx, prod.data.clone()) {
                queue.push_back(prod);
            }
        }
    }
    space.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 2, None).unwrap()
    }

    fn random_mat(ctx: &FieldCtx, n: usize, seed: &[u32]) -> Mat {
        Mat::from_fn(ctx, n, n, |i, j| {
            FEl(seed[(i * n + j) % seed.len()] % ctx.q())
        })
    }

    #[test]
    fn inverse_and_det() {
        let f = f9();
        let a = Mat::from_rows(&f, &[vec![FEl(1), FEl(2)], vec![FEl(3), FEl(4)]]).unwrap();
        let inv = f.mat_inverse(&a).unwrap();
        assert_eq!(f.mat_mul(&a, &inv), Mat::identity(&f, 2));
        let sing = Mat::from_rows(&f, &[vec![FEl(1), FEl(2)], vec![FEl(1), FEl(2)]]).unwrap();
        assert_eq!(f.mat_inverse(&sing), Err(Error::Singular));
        assert_eq!(f.det(&sing), FEl::ZERO);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let f = f9();
        let a = Mat::from_rows(
            &f,
            &[vec![FEl(1), FEl(1), FEl(1)], vec![FEl(2), FEl(2), FEl(2)]],
        )
        .unwrap();
        let ker = f.nullspace(&a);
        assert_eq!(ker.len(), 2);
        for v in ker {
            let col = Mat::from_fn(&f, 3, 1, |i, _| v[i]);
            assert!(f.mat_mul(&a, &col).is_zero());
        }
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(s in prop::collection::vec(0u32..9, 9), t in prop::collection::vec(0u32..9, 9)) {
            let f = f9();
            let a = random_mat(&f, 3, &s);
            let b = random_mat(&f, 3, &t);
            prop_assert_eq!(f.det(&f.mat_mul(&a, &b)), f.mul(f.det(&a), f.det(&b)));
            prop_assert_eq!(f.rank(&a) == 3, !f.det(&a).is_zero());
        }

        #[test]
        fn rank_nullity(s in prop::collection::vec(0u32..3, 12)) {
            let f = f9();
            let a = Mat::from_fn(&f, 3, 4, |i, j| FEl(s[i * 4 + j]));
            prop_assert_eq!(f.rank(&a) + f.nullspace(&a).len(), 4);
        }
    }
}
