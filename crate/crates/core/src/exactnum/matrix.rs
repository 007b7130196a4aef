//! Dense matrices over finite fields and incremental echelon bases.
//!
//! Vectors are row vectors and matrices act on the right, matching the right
//! module conventions used throughout the crate.

use crate::error::{Error, Result};

use super::field::{FFElem, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FFMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FFMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_raw(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        FFMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        FFMatrix { rows: n, cols, data }
    }

    pub fn from_elems(rows: &[Vec<FFElem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimMismatch("ragged matrix rows".into()));
        }
        Ok(Self::from_rows(rows.iter().map(|r| r.iter().map(|e| e.0).collect()).collect(), cols))
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FFElem {
        FFElem(self.data[r * self.cols + c])
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FFElem) {
        self.data[r * self.cols + c] = v.0;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn raw(&self) -> &[u32] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn map_entries(&self, f: impl Fn(u32) -> u32) -> Self {
        FFMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Product skipping zero entries of `self`, so sparse left factors are cheap.
    pub fn mul(&self, field: &FiniteField, other: &FFMatrix) -> FFMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for (k, &a) in self.row(r).iter().enumerate() {
                if a != 0 {
                    axpy(field, dst, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn vec_mul(&self, field: &FiniteField, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u32; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a != 0 {
                axpy(field, &mut out, a, self.row(k));
            }
        }
        out
    }

    pub fn add(&self, field: &FiniteField, other: &FFMatrix) -> FFMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FFMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| field.add_raw(a, b)).collect(),
        }
    }

    pub fn sub(&self, field: &FiniteField, other: &FFMatrix) -> FFMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FFMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| field.sub_raw(a, b)).collect(),
        }
    }

    pub fn scale(&self, field: &FiniteField, c: FFElem) -> FFMatrix {
        self.map_entries(|x| field.mul_raw(c.0, x))
    }

    /// `self - c * I`.
    pub fn minus_scalar(&self, field: &FiniteField, c: FFElem) -> FFMatrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            m.data[idx] = field.sub_raw(m.data[idx], c.0);
        }
        m
    }

    pub fn kron(&self, field: &FiniteField, other: &FFMatrix) -> FFMatrix {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(r1 * r2, c1 * c2);
        for a in 0..r1 {
            for b in 0..c1 {
                let x = self.data[a * c1 + b];
                if x == 0 {
                    continue;
                }
                for i in 0..r2 {
                    for j in 0..c2 {
                        out.data[(a * r2 + i) * (c1 * c2) + b * c2 + j] = field.mul_raw(x, other.data[i * c2 + j]);
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(a: &FFMatrix, b: &FFMatrix) -> FFMatrix {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for r in 0..a.rows {
            out.row_mut(r)[..a.cols].copy_from_slice(a.row(r));
        }
        for r in 0..b.rows {
            out.row_mut(a.rows + r)[a.cols..].copy_from_slice(b.row(r));
        }
        out
    }

    pub fn pow(&self, field: &FiniteField, mut e: u64) -> FFMatrix {
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(field, &base);
            }
            base = base.mul(field, &base);
            e >>= 1;
        }
        result
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        for r in 0..self.rows {
            basis.insert(field, self.row(r).to_vec());
        }
        basis.rank()
    }

    pub fn det(&self, field: &FiniteField) -> FFElem {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a.data[r * n + c] != 0) else {
                return FFElem::ZERO;
            };
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                }
                det = field.neg_raw(det);
            }
            let pv = a.data[c * n + c];
            det = field.mul_raw(det, pv);
            let inv = field.inv_raw(pv);
            for r in c + 1..n {
                let f = a.data[r * n + c];
                if f == 0 {
                    continue;
                }
                let f = field.neg_raw(field.mul_raw(f, inv));
                let (top, bottom) = a.data.split_at_mut(r * n);
                axpy(field, &mut bottom[..n], f, &top[c * n..c * n + n]);
            }
        }
        FFElem(det)
    }

    pub fn inverse(&self, field: &FiniteField) -> Option<FFMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.extend((0..n).map(|c| u32::from(c == r)));
                v
            })
            .collect();
        let ech = EchelonBasis::from_rows(field, 2 * n, rows).into_rref(field);
        if ech.pivots().iter().take(n).enumerate().any(|(i, &p)| p != i) || ech.rank() < n {
            return None;
        }
        let data = ech.rows.iter().flat_map(|r| r[n..].to_vec()).collect();
        Some(FFMatrix::from_raw(n, n, data))
    }

    /// Basis of `{x : x * self = 0}`.
    pub fn left_kernel(&self, field: &FiniteField) -> Vec<Vec<u32>> {
        self.transpose().right_kernel(field)
    }

    /// Basis of `{x : self * x^T = 0}`, one vector per free column in
    /// increasing order.
    pub fn right_kernel(&self, field: &FiniteField) -> Vec<Vec<u32>> {
        let ech = EchelonBasis::from_rows(field, self.cols, self.row_vecs()).into_rref(field);
        ech.null_space(field)
    }
}

/// `dst += a * src` entrywise.
#[inline]
pub fn axpy(field: &FiniteField, dst: &mut [u32], a: u32, src: &[u32]) {
    if a == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = field.add_raw(*d, field.mul_raw(a, s));
        }
    }
}

/// A row-echelon basis grown one vector at a time.
///
/// Each stored row has a leading one at its pivot column and zeros at the
/// pivot columns of all rows stored before it. After [`into_rref`] every row
/// is zero at every other pivot.
///
/// [`into_rref`]: EchelonBasis::into_rref
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(ncols: usize) -> Self {
        EchelonBasis { ncols, rows: Vec::new(), pivots: Vec::new(), row_of_pivot: vec![None; ncols] }
    }

    pub fn from_rows(field: &FiniteField, ncols: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut b = Self::new(ncols);
        for r in rows {
            b.insert(field, r);
        }
        b
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.row_of_pivot[c].is_some()
    }

    /// Reduces `v` in place so that it vanishes at every pivot column.
    pub fn reduce(&self, field: &FiniteField, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.ncols);
        for c in 0..self.ncols {
            let x = v[c];
            if x == 0 {
                continue;
            }
            if let Some(r) = self.row_of_pivot[c] {
                axpy(field, v, field.neg_raw(x), &self.rows[r]);
            }
        }
    }

    /// Inserts `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, field: &FiniteField, mut v: Vec<u32>) -> bool {
        self.reduce(field, &mut v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = field.inv_raw(v[pivot]);
        if inv != 1 {
            for x in v.iter_mut() {
                if *x != 0 {
                    *x = field.mul_raw(*x, inv);
                }
            }
        }
        self.row_of_pivot[pivot] = Some(self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(v);
        true
    }

    pub fn contains(&self, field: &FiniteField, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form with rows sorted by pivot column.
    pub fn into_rref(mut self, field: &FiniteField) -> Self {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let mut rows: Vec<Vec<u32>> = order.iter().map(|&r| std::mem::take(&mut self.rows[r])).collect();
        let pivots: Vec<usize> = order.iter().map(|&r| self.pivots[r]).collect();
        for i in (0..rows.len()).rev() {
            let (above, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            let pc = pivots[i];
            for row in above.iter_mut() {
                let x = row[pc];
                if x != 0 {
                    axpy(field, row, field.neg_raw(x), pivot_row);
                }
            }
        }
        let mut row_of_pivot = vec![None; self.ncols];
        for (i, &p) in pivots.iter().enumerate() {
            row_of_pivot[p] = Some(i);
        }
        EchelonBasis { ncols: self.ncols, rows, pivots, row_of_pivot }
    }

    /// Null space of the (RREF) row space viewed as a linear system.
    pub fn null_space(&self, field: &FiniteField) -> Vec<Vec<u32>> {
        (0..self.ncols)
            .filter(|&c| !self.is_pivot(c))
            .map(|free| {
                let mut x = vec![0u32; self.ncols];
                x[free] = 1;
                for (r, &pc) in self.pivots.iter().enumerate() {
                    let v = self.rows[r][free];
                    if v != 0 {
                        x[pc] = field.neg_raw(v);
                    }
                }
                x
            })
            .collect()
    }

    /// Coordinates of the non-pivot columns of `v` after reduction; with an
    /// RREF basis this is the canonical projection onto the quotient by the span.
    pub fn quotient_coords(&self, field: &FiniteField, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).map(|c| w[c]).collect()
    }
}

/// A subquotient `Z / B` of a coordinate space with a deterministic basis.
#[derive(Debug, Clone)]
pub struct Subquotient {
    sub: EchelonBasis,
    complement: EchelonBasis,
}

impl Subquotient {
    /// `b_rows` must span a subspace of the span of `z_rows`.
    pub fn new(field: &FiniteField, ncols: usize, z_rows: Vec<Vec<u32>>, b_rows: Vec<Vec<u32>>) -> Self {
        let sub = EchelonBasis::from_rows(field, ncols, b_rows);
        let mut complement = EchelonBasis::new(ncols);
        for mut z in z_rows {
            sub.reduce(field, &mut z);
            complement.insert(field, z);
        }
        Subquotient { sub, complement: complement.into_rref(field) }
    }

    pub fn dim(&self) -> usize {
        self.complement.rank()
    }

    /// Representatives of the quotient basis.
    pub fn basis(&self) -> &[Vec<u32>] {
        self.complement.rows()
    }

    /// Coordinates in the quotient basis of a vector of `Z`.
    pub fn coords(&self, field: &FiniteField, v: &[u32]) -> Result<Vec<u32>> {
        let mut w = v.to_vec();
        self.sub.reduce(field, &mut w);
        let coords: Vec<u32> = self.complement.pivots().iter().map(|&c| w[c]).collect();
        for (k, &c) in coords.iter().enumerate() {
            axpy(field, &mut w, field.neg_raw(c), &self.complement.rows()[k]);
        }
        if w.iter().any(|&x| x != 0) {
            return Err(Error::Internal("vector does not lie in the cycle space".into()));
        }
        Ok(coords)
    }
}
