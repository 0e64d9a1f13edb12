use num_traits::Zero;

use super::cochain::{differential, e_phi_of, Cochain};
use crate::error::{Error, ExtensionFailure, Result};
use crate::exactla::{self, Mat, Rat};
use crate::liealg::{default_names, LieAlgebra, StructureConstant};

/// Input of the abelian extension `h(λ, μ, φ, ρ)` on `h ⊕ a ⊕ i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionData {
    pub h: LieAlgebra,
    pub dim_a: usize,
    pub dim_i: usize,
    /// `rho[x]`: `dim_i × dim_i`, the action of `e_x` on `i`.
    pub rho: Vec<Mat>,
    /// `phi[x]`: `dim_i × dim_a`, the map `a → i` attached to `e_x`.
    pub phi: Vec<Mat>,
    pub lambda: Cochain,
    pub mu: Cochain,
}

/// Coadjoint representation: `ad*(e_i)[j][k] = -c_{ij}^k`.
pub fn coad(h: &LieAlgebra) -> Vec<Mat> {
    (0..h.dim()).map(|i| h.ad_basis(i).transpose().scale(&-exactla::one())).collect()
}

impl ExtensionData {
    /// Checked constructor.
    pub fn new(
        h: LieAlgebra,
        dim_a: usize,
        dim_i: usize,
        rho: Vec<Mat>,
        phi: Vec<Mat>,
        lambda: Cochain,
        mu: Cochain,
    ) -> Result<Self> {
        let data = ExtensionData {
            h,
            dim_a,
            dim_i,
            rho,
            phi,
            lambda,
            mu,
        };
        data.check().map_err(Error::InvalidExtension)?;
        Ok(data)
    }

    /// All-zero data with the given dimensions.
    pub fn trivial(h: LieAlgebra, dim_a: usize, dim_i: usize) -> Self {
        let r = h.dim();
        ExtensionData {
            rho: vec![Mat::zeros(dim_i, dim_i); r],
            phi: vec![Mat::zeros(dim_i, dim_a); r],
            lambda: Cochain::zero(r, 2, dim_a),
            mu: Cochain::zero(r, 2, dim_i),
            h,
            dim_a,
            dim_i,
        }
    }

    pub fn r(&self) -> usize {
        self.h.dim()
    }

    pub fn total_dim(&self) -> usize {
        self.r() + self.dim_a + self.dim_i
    }

    pub fn with_cocycle(&self, lambda: Cochain, mu: Cochain) -> ExtensionData {
        ExtensionData {
            lambda,
            mu,
            ..self.clone()
        }
    }

    fn check_shapes(&self) -> std::result::Result<(), ExtensionFailure> {
        let r = self.r();
        let shape = |m: &str| Err(ExtensionFailure::Shape(m.to_string()));
        if self.rho.len() != r || self.phi.len() != r {
            return shape("rho and phi need one matrix per basis vector of h");
        }
        if self
            .rho
            .iter()
            .any(|m| m.rows() != self.dim_i || m.cols() != self.dim_i)
        {
            return shape("rho matrices must be dim_i × dim_i");
        }
        if self
            .phi
            .iter()
            .any(|m| m.rows() != self.dim_i || m.cols() != self.dim_a)
        {
            return shape("phi matrices must be dim_i × dim_a");
        }
        for (name, c, t) in [("lambda", &self.lambda, self.dim_a), ("mu", &self.mu, self.dim_i)] {
            if c.r() != r || c.degree() != 2 || c.target_dim() != t {
                return Err(ExtensionFailure::Shape(format!(
                    "{name} must be an alternating bilinear map into a space of dim {t}"
                )));
            }
        }
        Ok(())
    }

    /// Checks that `ρ` is a representation, `φ` a 1-cocycle and
    /// `d_R(λ, μ) = 0`.
    pub fn check(&self) -> std::result::Result<(), ExtensionFailure> {
        self.check_shapes()?;
        let r = self.r();
        for x in 0..r {
            for y in x + 1..r {
                let lhs = self.rho_of(&self.h.bracket_basis(x, y));
                if lhs != self.rho[x].commutator(&self.rho[y]) {
                    return Err(ExtensionFailure::RhoNotRepresentation { x, y });
                }
                let lhs = self.phi_of(&self.h.bracket_basis(x, y));
                let rhs = self.rho[x].mul(&self.phi[y]).sub(&self.rho[y].mul(&self.phi[x]));
                if lhs != rhs {
                    return Err(ExtensionFailure::PhiNotCocycle { x, y });
                }
            }
        }
        let (da, di) = self.d_r(&self.lambda, &self.mu);
        if !(da.is_zero() && di.is_zero()) {
            let t = da
                .first_nonzero()
                .or_else(|| di.first_nonzero())
                .expect("one part is nonzero")
                .0;
            return Err(ExtensionFailure::NotCocycle {
                a_part: da.value(&t).to_vec(),
                i_part: di.value(&t).to_vec(),
                tuple: t,
            });
        }
        Ok(())
    }

    fn combine_mats(mats: &[Mat], x: &[Rat], rows: usize, cols: usize) -> Mat {
        x.iter()
            .zip(mats)
            .filter(|(c, _)| !c.is_zero())
            .fold(Mat::zeros(rows, cols), |acc, (c, m)| acc.add(&m.scale(c)))
    }

    /// `ρ(x)` for a vector `x ∈ h`.
    pub fn rho_of(&self, x: &[Rat]) -> Mat {
        Self::combine_mats(&self.rho, x, self.dim_i, self.dim_i)
    }

    /// `φ(x)` for a vector `x ∈ h`.
    pub fn phi_of(&self, x: &[Rat]) -> Mat {
        Self::combine_mats(&self.phi, x, self.dim_i, self.dim_a)
    }

    pub fn d_a(&self, c: &Cochain) -> Cochain {
        differential(&self.h, None, c)
    }

    pub fn d_rho(&self, c: &Cochain) -> Cochain {
        differential(&self.h, Some(&self.rho), c)
    }

    pub fn e_phi(&self, c: &Cochain) -> Cochain {
        e_phi_of(&self.phi, c)
    }

    /// `d_R(λ, μ) = (d_a λ, e_φ λ + d_ρ μ)`.
    pub fn d_r(&self, lambda: &Cochain, mu: &Cochain) -> (Cochain, Cochain) {
        (self.d_a(lambda), self.e_phi(lambda).add(&self.d_rho(mu)))
    }

    pub fn basis_names(&self) -> Vec<String> {
        let mut names = self.h.basis_names().to_vec();
        names.extend(default_names("u", self.dim_a));
        names.extend(default_names("alpha", self.dim_i));
        names
    }

    /// The Lie algebra `h(λ, μ, φ, ρ)`, basis ordered `h`, `a`, `i`.
    pub fn build(&self) -> Result<LieAlgebra> {
        self.check().map_err(Error::InvalidExtension)?;
        let alg = LieAlgebra::new_unchecked(self.basis_names(), self.structure_constants())?;
        alg.validate().map_err(|v| {
            Error::TheoremViolation(format!(
                "extension data passed the cocycle check but Jacobi fails at {:?}",
                v.triple
            ))
        })?;
        Ok(alg)
    }

    fn structure_constants(&self) -> Vec<StructureConstant> {
        let (r, da) = (self.r(), self.dim_a);
        let (a0, i0) = (r, r + da);
        let mut out: Vec<StructureConstant> = self
            .h
            .constants()
            .to_vec();
        let mut push = |i: usize, j: usize, k: usize, c: &Rat| {
            if !c.is_zero() {
                out.push(StructureConstant::new(i, j, k, c.clone()));
            }
        };
        for x in 0..r {
            for y in x + 1..r {
                for (k, c) in self.lambda.value(&[x, y]).iter().enumerate() {
                    push(x, y, a0 + k, c);
                }
                for (k, c) in self.mu.value(&[x, y]).iter().enumerate() {
                    push(x, y, i0 + k, c);
                }
            }
            for u in 0..da {
                for k in 0..self.dim_i {
                    push(x, a0 + u, i0 + k, &self.phi[x][(k, u)]);
                }
            }
            for al in 0..self.dim_i {
                for k in 0..self.dim_i {
                    push(x, i0 + al, i0 + k, &self.rho[x][(k, al)]);
                }
            }
        }
        out
    }
}
