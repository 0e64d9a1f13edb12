//! Lie algebras given by rational structure constants.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, JacobiViolation, Result};
use crate::exactla::{self, LinearSystem, Mat, Rat, Subspace};

/// `[e_i, e_j] = coeff · e_k` contribution, stored with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Rat,
}

impl StructureConstant {
    pub fn new(i: usize, j: usize, k: usize, coeff: Rat) -> Self {
        StructureConstant { i, j, k, coeff }
    }
}

/// A finite-dimensional Lie algebra over Q.
///
/// Only pairs `i < j` are stored; the opposite order is derived by sign, so
/// antisymmetry holds by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    constants: Vec<StructureConstant>,
    // sparse [e_i, e_j] for every ordered pair, index i * dim + j
    table: Vec<Vec<(usize, Rat)>>,
}

pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

impl LieAlgebra {
    /// Builds and validates (Jacobi identity) a Lie algebra.
    pub fn new(basis_names: Vec<String>, constants: Vec<StructureConstant>) -> Result<Self> {
        let alg = Self::new_unchecked(basis_names, constants)?;
        alg.validate().map_err(Error::Jacobi)?;
        Ok(alg)
    }

    /// Builds the bracket without checking the Jacobi identity. Index ranges
    /// and the `i < j` storage rule are still enforced.
    pub fn new_unchecked(
        basis_names: Vec<String>,
        constants: Vec<StructureConstant>,
    ) -> Result<Self> {
        let dim = basis_names.len();
        let mut merged: std::collections::BTreeMap<(usize, usize, usize), Rat> =
            Default::default();
        for c in constants {
            for idx in [c.i, c.j, c.k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if c.i >= c.j {
                return Err(Error::Precondition(format!(
                    "structure constant ({}, {}, {}) must have i < j",
                    c.i, c.j, c.k
                )));
            }
            *merged.entry((c.i, c.j, c.k)).or_insert_with(Rat::zero) += c.coeff;
        }
        let constants: Vec<StructureConstant> = merged
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j, k), coeff)| StructureConstant { i, j, k, coeff })
            .collect();
        let mut table = vec![Vec::new(); dim * dim];
        for c in &constants {
            table[c.i * dim + c.j].push((c.k, c.coeff.clone()));
            table[c.j * dim + c.i].push((c.k, -c.coeff.clone()));
        }
        Ok(LieAlgebra {
            dim,
            basis_names,
            constants,
            table,
        })
    }

    /// Builds from a function giving `[e_i, e_j]` (dense) for `i < j`.
    pub fn from_brackets<F>(basis_names: Vec<String>, mut bracket: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<Rat>,
    {
        let n = basis_names.len();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = bracket(i, j);
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        constants.push(StructureConstant::new(i, j, k, c));
                    }
                }
            }
        }
        Self::new(basis_names, constants)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new_unchecked(default_names("e", dim), Vec::new()).expect("no constants")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn constants(&self) -> &[StructureConstant] {
        &self.constants
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.basis_names = names;
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Sparse `[e_i, e_j]`.
    pub fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.table[i * self.dim + j]
    }

    /// Dense `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        let mut v = exactla::zero_vec(self.dim);
        for (k, c) in self.bracket_terms(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    fn check_len(&self, v: &[Rat]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = exactla::zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let terms = self.bracket_terms(i, j);
                if terms.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in terms {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad(&self, x: &[Rat]) -> Result<Mat> {
        self.check_len(x)?;
        let n = self.dim;
        let mut m = Mat::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.bracket_terms(i, j) {
                    m[(*k, j)] += xi * c;
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Mat {
        self.ad(&exactla::unit_vec(self.dim, i))
            .expect("unit vector has the right length")
    }

    /// Checks the cyclic Jacobi sum on every basis triple `i < j < k`.
    pub fn validate(&self) -> std::result::Result<(), JacobiViolation> {
        let n = self.dim;
        let e = |k: usize| exactla::unit_vec(n, k);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket_unchecked(&e(i), &self.bracket_basis(j, k));
                    let b = self.bracket_unchecked(&e(j), &self.bracket_basis(k, i));
                    let c = self.bracket_unchecked(&e(k), &self.bracket_basis(i, j));
                    let r = exactla::add_vec(&exactla::add_vec(&a, &b), &c);
                    if !exactla::is_zero_vec(&r) {
                        return Err(JacobiViolation {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Same algebra written in a new basis; the columns of `basis` are the
    /// new basis vectors in old coordinates.
    pub fn change_basis(&self, basis: &Mat, names: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim;
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: basis.cols(),
            });
        }
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
        let cols = basis.col_vecs();
        LieAlgebra::from_brackets(names, |a, b| {
            inv.mul_vec(&self.bracket_unchecked(&cols[a], &cols[b]))
        })
    }

    /// Span of `[u, v]` over bases of `u` and `v`.
    pub fn bracket_spaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in u.basis_vectors() {
            for b in v.basis_vectors() {
                let w = self.bracket_unchecked(&a, &b);
                if !exactla::is_zero_vec(&w) {
                    vs.push(w);
                }
            }
        }
        Subspace::span(self.dim, &vs).expect("bracket vectors have length dim")
    }

    pub fn center(&self) -> Subspace {
        self.upper_step(&Subspace::zero(self.dim))
    }

    // {x : [g, x] ⊆ prev}
    fn upper_step(&self, prev: &Subspace) -> Subspace {
        let n = self.dim;
        // rows of `ann` vanish exactly on `prev`
        let ann = prev.basis().kernel();
        let ann = ann.basis();
        let mut system = Mat::zeros(0, n);
        for i in 0..n {
            system = system.vstack(&ann.mul(&self.ad_basis(i)));
        }
        system.kernel()
    }

    pub fn central_series(&self) -> CentralSeriesReport {
        let n = self.dim;
        let mut upper = Vec::new();
        let mut prev = Subspace::zero(n);
        loop {
            let next = self.upper_step(&prev);
            if next == prev {
                break;
            }
            upper.push(next.clone());
            prev = next;
        }
        let upper_stable = upper.len();
        if upper.is_empty() {
            upper.push(Subspace::zero(n));
        }

        let full = Subspace::full(n);
        let mut lower = vec![full.clone()];
        loop {
            let last = lower.last().expect("nonempty");
            let next = self.bracket_spaces(&full, last);
            if &next == last {
                break;
            }
            lower.push(next);
        }
        let lower_stable = lower.len() - 1;
        let nilpotency_class = if lower.last().expect("nonempty").is_zero() {
            Some(lower_stable)
        } else {
            None
        };
        CentralSeriesReport {
            upper,
            lower,
            nilpotency_class,
            stabilization_index: upper_stable.max(lower_stable),
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.central_series().nilpotency_class.is_some()
    }

    /// The canonical ideals `i(g) = Σ_k Z_k ∩ g^k` and
    /// `J(g) = ∩_k (Z_k + g^k)`, k running from 1 until both series are
    /// stable.
    pub fn canonical_ideals(&self) -> Result<CanonicalIdeals> {
        let series = self.central_series();
        self.canonical_ideals_from(&series)
    }

    pub fn canonical_ideals_from(&self, series: &CentralSeriesReport) -> Result<CanonicalIdeals> {
        if series.nilpotency_class.is_none() {
            return Err(Error::NotNilpotent);
        }
        let n = self.dim;
        let m = series.stabilization_index.max(1);
        let mut i_g = Subspace::zero(n);
        let mut j_g = Subspace::full(n);
        for k in 1..=m {
            let z = series.upper_term(k);
            let l = series.lower_term(k);
            i_g = i_g.sum(&z.intersect(l)?)?;
            j_g = j_g.intersect(&z.sum(l)?)?;
        }
        let ideals = CanonicalIdeals { i_g, j_g };
        let full = Subspace::full(n);
        let nested = ideals.j_g.contains(&ideals.i_g)?;
        let abelian = self.bracket_spaces(&ideals.j_g, &ideals.j_g).is_zero();
        let into_i = ideals
            .i_g
            .contains(&self.bracket_spaces(&full, &ideals.j_g))?;
        if !(nested && abelian && into_i) {
            return Err(Error::TheoremViolation(format!(
                "canonical ideals fail i ⊆ J ({nested}), [J,J]=0 ({abelian}), [g,J] ⊆ i ({into_i})"
            )));
        }
        Ok(ideals)
    }

    /// Checks the three structural clauses of the canonical-ideal lemma.
    pub fn verify_canonical_ideals(&self) -> Result<CanonicalIdealsReport> {
        let series = self.central_series();
        if series.nilpotency_class.is_none() {
            return Err(Error::NotNilpotent);
        }
        let n = self.dim;
        let m = series.stabilization_index.max(1);
        let mut i_g = Subspace::zero(n);
        let mut j_g = Subspace::full(n);
        for k in 1..=m {
            let z = series.upper_term(k);
            let l = series.lower_term(k);
            i_g = i_g.sum(&z.intersect(l)?)?;
            j_g = j_g.intersect(&z.sum(l)?)?;
        }
        let mut formula = series.upper_term(1).clone();
        for k in 1..m {
            formula = formula.sum(&series.upper_term(k + 1).intersect(series.lower_term(k))?)?;
        }
        let full = Subspace::full(n);
        Ok(CanonicalIdealsReport {
            m,
            i_in_j: j_g.contains(&i_g)?,
            j_formula: formula == j_g,
            j_abelian: self.bracket_spaces(&j_g, &j_g).is_zero(),
            g_j_in_i: i_g.contains(&self.bracket_spaces(&full, &j_g))?,
        })
    }

    /// Linear maps `T` with `T([X,Y]) = [X, T(Y)]` for all `X, Y`, as a
    /// subspace of `Q^{n²}` in row-major coordinates `T[r][c] ↦ r·n + c`.
    pub fn centroid(&self) -> Subspace {
        let n = self.dim;
        let idx = |r: usize, c: usize| r * n + c;
        let mut sys = LinearSystem::new(n * n);
        let ads: Vec<Mat> = (0..n).map(|i| self.ad_basis(i)).collect();
        for (i, ad) in ads.iter().enumerate() {
            for j in 0..n {
                let terms = self.bracket_terms(i, j);
                for r in 0..n {
                    let mut eq: Vec<(usize, Rat)> = terms
                        .iter()
                        .map(|(k, c)| (idx(r, *k), c.clone()))
                        .collect();
                    for s in 0..n {
                        let a = &ad[(r, s)];
                        if !a.is_zero() {
                            eq.push((idx(s, j), -a.clone()));
                        }
                    }
                    sys.add_homogeneous(eq);
                }
            }
        }
        sys.kernel()
    }

    /// `T([e_i, e_j]) = [e_i, T(e_j)]` on all basis pairs.
    pub fn is_in_centroid(&self, t: &Mat) -> bool {
        let n = self.dim;
        if t.rows() != n || t.cols() != n {
            return false;
        }
        (0..n).all(|i| {
            let ad = self.ad_basis(i);
            (0..n).all(|j| t.mul_vec(&self.bracket_basis(i, j)) == ad.mul_vec(&t.col(j)))
        })
    }
}

/// Reshapes a centroid coordinate vector into its `n × n` matrix.
pub fn centroid_matrix(n: usize, coords: &[Rat]) -> Mat {
    Mat::from_vec(n, n, coords.to_vec()).expect("n² coordinates")
}

/// Upper and lower central series.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralSeriesReport {
    /// `upper[k-1] = Z_k`, listed until the series is stable.
    pub upper: Vec<Subspace>,
    /// `lower[k] = g^k` with `g^0 = g`, listed until stable.
    pub lower: Vec<Subspace>,
    pub nilpotency_class: Option<usize>,
    pub stabilization_index: usize,
}

impl CentralSeriesReport {
    /// `Z_k` for any `k ≥ 1`; past the stored terms the series is constant.
    pub fn upper_term(&self, k: usize) -> &Subspace {
        assert!(k >= 1, "upper central series starts at Z_1");
        &self.upper[(k - 1).min(self.upper.len() - 1)]
    }

    /// `g^k` for any `k ≥ 0`.
    pub fn lower_term(&self, k: usize) -> &Subspace {
        &self.lower[k.min(self.lower.len() - 1)]
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalIdeals {
    pub i_g: Subspace,
    pub j_g: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalIdealsReport {
    pub m: usize,
    pub i_in_j: bool,
    pub j_formula: bool,
    pub j_abelian: bool,
    pub g_j_in_i: bool,
}

impl CanonicalIdealsReport {
    pub fn all_pass(&self) -> bool {
        self.i_in_j && self.j_formula && self.j_abelian && self.g_j_in_i
    }
}
