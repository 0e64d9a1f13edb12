use num_traits::{One, Zero};

use super::{Mat, Rat, Rref};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored as the RREF of a spanning set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
        }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Mat) -> Self {
        let rr = m.rref();
        let rows: Vec<usize> = (0..rr.rank).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Subspace {
            ambient: m.cols(),
            basis: rr.matrix.submatrix(&rows, &cols),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        Ok(Self::from_matrix(&Mat::from_rows(ambient, vectors)?))
    }

    /// Span of standard basis vectors `e_k` for the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Rat>> = indices
            .iter()
            .map(|&k| super::unit_vec(ambient, k))
            .collect();
        Self::span(ambient, &vs).expect("unit vectors have the ambient length")
    }

    pub(super) fn from_rref_kernel(rr: &Rref, cols: usize) -> Self {
        let free: Vec<usize> = (0..cols).filter(|c| !rr.pivots.contains(c)).collect();
        let vectors: Vec<Vec<Rat>> = free
            .iter()
            .map(|&f| {
                let mut v = super::zero_vec(cols);
                v[f] = Rat::one();
                for (r, &p) in rr.pivots.iter().enumerate() {
                    v[p] = -rr.matrix[(r, f)].clone();
                }
                v
            })
            .collect();
        Self::span(cols, &vectors).expect("kernel vectors have the ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    /// Pivot columns of the stored RREF basis.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("RREF rows are nonzero")
            })
            .collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        // Reduce against the RREF rows; zero residue means membership.
        let mut r = v.to_vec();
        for (row, p) in self.pivots().into_iter().enumerate() {
            let c = r[p].clone();
            if !c.is_zero() {
                super::axpy(&mut r, &(-c), self.basis.row(row));
            }
        }
        super::is_zero_vec(&r)
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok((0..other.dim()).all(|r| self.contains_vector(other.basis.row(r))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // a·U = b·V  <=>  [U^T | -V^T] (a, b) = 0
        let system = self
            .basis
            .transpose()
            .hstack(&other.basis.transpose().scale(&(-Rat::one())));
        let k = system.kernel();
        let du = self.dim();
        let vectors: Vec<Vec<Rat>> = k
            .basis_vectors()
            .iter()
            .map(|sol| self.basis.vec_mul(&sol[..du]))
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// Canonical complement in the ambient space: the standard vectors at
    /// the non-pivot columns of the RREF basis.
    pub fn complement(&self) -> Subspace {
        let piv = self.pivots();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !piv.contains(c)).collect();
        Subspace::coordinate(self.ambient, &free)
    }

    /// Canonical complement of `self` inside `outer`, chosen among the RREF
    /// basis vectors of `outer` by the same non-pivot rule applied in
    /// `outer`'s coordinates.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Subspace> {
        self.check(outer)?;
        if !outer.contains(self)? {
            return Err(Error::Precondition(
                "complement_in: subspace is not contained in the outer space".into(),
            ));
        }
        let coords: Vec<Vec<Rat>> = self
            .basis_vectors()
            .iter()
            .map(|v| outer.coordinates(v).expect("contained vector"))
            .collect();
        let inner = Subspace::span(outer.dim(), &coords)?;
        let piv = inner.pivots();
        let chosen: Vec<Vec<Rat>> = (0..outer.dim())
            .filter(|c| !piv.contains(c))
            .map(|c| outer.basis.row(c).to_vec())
            .collect();
        Subspace::span(self.ambient, &chosen)
    }

    /// Coordinates of `v` with respect to the stored RREF basis.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.contains_vector(v) {
            return None;
        }
        // For an RREF basis the coordinate of row r is the entry at its pivot.
        Some(self.pivots().into_iter().map(|p| v[p].clone()).collect())
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &Mat) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: map.cols(),
            });
        }
        let vs: Vec<Vec<Rat>> = self
            .basis_vectors()
            .iter()
            .map(|v| map.mul_vec(v))
            .collect();
        Subspace::span(map.rows(), &vs)
    }
}
