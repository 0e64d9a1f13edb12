use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::{Rat, Subspace};
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds a matrix from rows; an empty list gives a `0 x cols` matrix.
    pub fn from_rows(cols: usize, rows: &[Vec<Rat>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<Rat>]) -> Result<Self> {
        Ok(Mat::from_rows(rows, cols)?.transpose())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| super::rat(x))
            })
            .collect();
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
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

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Rat] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| super::dot(self.row(i), v)).collect()
    }

    /// `v^T M`
    pub fn vec_mul(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = super::zero_vec(self.cols);
        for (i, c) in v.iter().enumerate() {
            super::axpy(&mut out, c, self.row(i));
        }
        out
    }

    /// `x^T M y`
    pub fn bilinear(&self, x: &[Rat], y: &[Rat]) -> Rat {
        super::dot(x, &self.mul_vec(y))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: super::add_vec(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: super::sub_vec(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: super::scale_vec(c, &self.data),
        }
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        Mat {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Gauss-Jordan elimination scanning columns left to right; each pivot
    /// is the first nonzero entry at or below the current row and is
    /// normalized to 1.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for x in m.row_mut(r) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, p) in m.row_mut(i).iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let rr = self.rref();
        Subspace::from_rref_kernel(&rr, self.cols)
    }

    /// Solves `M x = b`. The particular solution sets every free variable of
    /// the reduced system to zero; `None` when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<(Vec<Rat>, Subspace)>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let bcol = Mat::from_cols(self.rows, &[b.to_vec()])?;
        let aug = self.hstack(&bcol).rref();
        if aug.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = super::zero_vec(self.cols);
        for (r, &c) in aug.pivots.iter().enumerate() {
            x[c] = aug.matrix[(r, self.cols)].clone();
        }
        Ok(Some((x, self.kernel())))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let rr = self.hstack(&Mat::identity(n)).rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(rr.matrix.submatrix(&rows, &cols))
    }

    /// Determinant by fraction-preserving elimination.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.recip();
            let pivot_row = m.row(c).to_vec();
            for i in c + 1..n {
                let f = &m[(i, c)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for (x, p) in m.row_mut(i).iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        det
    }

    /// Row space as a subspace of the column space dimension.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    /// Column space as a subspace of the row dimension.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_matrix(&self.transpose())
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_i64(rows)
    }

    #[test]
    fn rref_examples() {
        let r = m(&[&[0, 2], &[1, 1]]).rref();
        assert_eq!(r.matrix, Mat::identity(2));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let r = m(&[&[2, 0], &[4, 0]]).rref();
        assert_eq!(r.matrix, m(&[&[1, 0], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);

        let r = m(&[&[1, 2, 3]]).rref();
        assert_eq!(r.matrix, m(&[&[1, 2, 3]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let k = m(&[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains_vector(&[rat(1), rat(-1)]));

        let k = m(&[&[1, 2, 3]]).kernel();
        assert_eq!(k.dim(), 2);
        assert!(k.contains_vector(&[rat(-2), rat(1), rat(0)]));
        assert!(k.contains_vector(&[rat(-3), rat(0), rat(1)]));

        assert_eq!(Mat::identity(3).kernel().dim(), 0);
    }

    #[test]
    fn solve_examples() {
        let (x, h) = m(&[&[1, 1], &[0, 1]])
            .solve(&[rat(3), rat(1)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert_eq!(h.dim(), 0);

        let (x, h) = m(&[&[1, 1]]).solve(&[rat(2)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(2), rat(0)]);
        assert_eq!(h.dim(), 1);
        assert!(h.contains_vector(&[rat(1), rat(-1)]));

        assert!(m(&[&[1], &[1]]).solve(&[rat(0), rat(1)]).unwrap().is_none());
        assert!(m(&[&[1]]).solve(&[rat(0), rat(1)]).is_err());
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), rat(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), rat(0));
        let b = Mat::from_vec(2, 2, vec![ratio(1, 2), rat(0), rat(3), ratio(2, 3)]).unwrap();
        assert_eq!(b.det(), ratio(1, 3));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), rat(-1));
        assert_eq!(Mat::zeros(0, 0).det(), rat(1));
    }
}
