//! Commutative associative unital algebras `S`, current algebras `g ⊗ S`
//! and the centroid-valued pairing a metric on `g ⊗ S` induces on `S`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{AssocViolation, Error, Result};
use crate::exactla::{self, Mat, Rat};
use crate::extension::extract_extension_data;
use crate::invforms::{self, BilinearForm};
use crate::liealg::{LieAlgebra, StructureConstant};

/// `s_a · s_b = coeff · s_c` contribution, stored with `a ≤ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocConstant {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub coeff: Rat,
}

impl AssocConstant {
    pub fn new(a: usize, b: usize, c: usize, coeff: Rat) -> Self {
        AssocConstant { a, b, c, coeff }
    }
}

/// A finite-dimensional commutative associative algebra with unit.
#[derive(Debug, Clone, PartialEq)]
pub struct AssocAlgebra {
    basis_names: Vec<String>,
    unit: Vec<Rat>,
    // dense s_a s_b, index a * dim + b
    table: Vec<Vec<Rat>>,
}

impl AssocAlgebra {
    pub fn new(basis_names: Vec<String>, constants: &[AssocConstant], unit: Vec<Rat>) -> Result<Self> {
        let s = Self::new_unchecked(basis_names, constants, unit)?;
        s.validate().map_err(Error::Assoc)?;
        Ok(s)
    }

    /// Fills the product table symmetrically; no axioms are checked.
    pub fn new_unchecked(
        basis_names: Vec<String>,
        constants: &[AssocConstant],
        unit: Vec<Rat>,
    ) -> Result<Self> {
        let m = basis_names.len();
        if unit.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: unit.len(),
            });
        }
        let mut table = vec![exactla::zero_vec(m); m * m];
        for k in constants {
            for idx in [k.a, k.b, k.c] {
                if idx >= m {
                    return Err(Error::IndexOutOfRange { index: idx, dim: m });
                }
            }
            if k.a > k.b {
                return Err(Error::Precondition(format!(
                    "product constant ({}, {}, {}) must have a <= b",
                    k.a, k.b, k.c
                )));
            }
            table[k.a * m + k.b][k.c] += &k.coeff;
            if k.a != k.b {
                table[k.b * m + k.a][k.c] += &k.coeff;
            }
        }
        Ok(AssocAlgebra {
            basis_names,
            unit,
            table,
        })
    }

    /// `Q` itself.
    pub fn field() -> Self {
        Self::truncated_polynomial(1)
    }

    /// `Q[t]/(t^k)` on the basis `1, t, …, t^{k-1}`.
    pub fn truncated_polynomial(k: usize) -> Self {
        assert!(k >= 1);
        let names = (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        let mut consts = Vec::new();
        for a in 0..k {
            for b in a..k {
                if a + b < k {
                    consts.push(AssocConstant::new(a, b, a + b, Rat::one()));
                }
            }
        }
        Self::new(names, &consts, exactla::unit_vec(k, 0)).expect("truncated polynomial ring")
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    pub fn product_basis(&self, a: usize, b: usize) -> &[Rat] {
        &self.table[a * self.dim() + b]
    }

    pub fn constants(&self) -> Vec<AssocConstant> {
        let m = self.dim();
        let mut out = Vec::new();
        for a in 0..m {
            for b in a..m {
                for (c, v) in self.product_basis(a, b).iter().enumerate() {
                    if !v.is_zero() {
                        out.push(AssocConstant::new(a, b, c, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let m = self.dim();
        let mut out = exactla::zero_vec(m);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                exactla::axpy(&mut out, &(xa * yb), self.product_basis(a, b));
            }
        }
        out
    }

    /// Commutativity, associativity on basis triples and the unit law.
    pub fn validate(&self) -> std::result::Result<(), AssocViolation> {
        let m = self.dim();
        for a in 0..m {
            for b in a + 1..m {
                if self.product_basis(a, b) != self.product_basis(b, a) {
                    return Err(AssocViolation::NotCommutative { a, b });
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let e = |k| exactla::unit_vec(m, k);
                    let left = self.mul(self.product_basis(a, b), &e(c));
                    let right = self.mul(&e(a), self.product_basis(b, c));
                    if left != right {
                        return Err(AssocViolation::NotAssociative {
                            a,
                            b,
                            c,
                            residual: exactla::sub_vec(&left, &right),
                        });
                    }
                }
            }
        }
        for b in 0..m {
            if self.mul(&self.unit, &exactla::unit_vec(m, b)) != exactla::unit_vec(m, b) {
                return Err(AssocViolation::NotUnit { basis: b });
            }
        }
        Ok(())
    }

    /// `θ(st, u) = θ(s, tu)` on basis triples.
    pub fn is_invariant_form(&self, theta: &BilinearForm) -> bool {
        let m = self.dim();
        if theta.dim() != m {
            return false;
        }
        let e = |k| exactla::unit_vec(m, k);
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| {
                    theta.eval(self.product_basis(a, b), &e(c)) == theta.eval(&e(a), self.product_basis(b, c))
                })
            })
        })
    }
}

/// `[X ⊗ s, Y ⊗ t] = [X, Y] ⊗ st` on the basis `e_i ⊗ s_a`, index
/// `i · dim S + a`.
pub fn current_algebra(g: &LieAlgebra, s: &AssocAlgebra) -> Result<LieAlgebra> {
    let m = s.dim();
    let names: Vec<String> = g
        .basis_names()
        .iter()
        .flat_map(|x| s.basis_names().iter().map(move |t| format!("{x}⊗{t}")))
        .collect();
    let mut consts = Vec::new();
    for c in g.constants() {
        for a in 0..m {
            for b in 0..m {
                for (d, v) in s.product_basis(a, b).iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    consts.push(StructureConstant::new(c.i * m + a, c.j * m + b, c.k * m + d, &c.coeff * v));
                }
            }
        }
    }
    LieAlgebra::new(names, consts)
}

/// `B ⊗ θ` on `g ⊗ S`.
pub fn tensor_form(b: &BilinearForm, theta: &BilinearForm) -> BilinearForm {
    b.kron(theta)
}

/// `Γ(s_a, s_b)` and its block decomposition along `g = h ⊕ J(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentAnalysis {
    pub dim_s: usize,
    /// The complement `h` with its induced bracket.
    pub h: LieAlgebra,
    /// Columns: the `h`, `a`, `i` basis in the original coordinates.
    pub basis: Mat,
    /// `gamma[a * dim_s + b] = Γ(s_a, s_b)` in the original basis.
    pub gamma: Vec<Mat>,
    /// `h → h` block of `Γ` in the decomposed basis.
    pub epsilon: Vec<Mat>,
    /// `h → J` block.
    pub theta: Vec<Mat>,
    /// `J → J` block.
    pub vartheta: Vec<Mat>,
}

impl CurrentAnalysis {
    pub fn gamma(&self, a: usize, b: usize) -> &Mat {
        &self.gamma[a * self.dim_s + b]
    }

    pub fn epsilon(&self, a: usize, b: usize) -> &Mat {
        &self.epsilon[a * self.dim_s + b]
    }

    /// `ε` bilinearly extended to arbitrary `s, t`.
    pub fn epsilon_of(&self, s: &[Rat], t: &[Rat]) -> Mat {
        let r = self.h.dim();
        let mut out = Mat::zeros(r, r);
        for (a, sa) in s.iter().enumerate() {
            for (b, tb) in t.iter().enumerate() {
                if !sa.is_zero() && !tb.is_zero() {
                    out = out.add(&self.epsilon(a, b).scale(&(sa * tb)));
                }
            }
        }
        out
    }
}

/// Extracts `Γ(s,t)` from `B(Γ(s,t)X, Y) = B̄(X⊗s, Y⊗t)` and splits it
/// along the canonical decomposition of `g`.
pub fn gamma_operators(
    g: &LieAlgebra,
    b: &BilinearForm,
    s: &AssocAlgebra,
    gs: &LieAlgebra,
    bbar: &BilinearForm,
) -> Result<CurrentAnalysis> {
    let (n, m) = (g.dim(), s.dim());
    if gs.dim() != n * m || bbar.dim() != n * m {
        return Err(Error::DimensionMismatch {
            expected: n * m,
            found: bbar.dim(),
        });
    }
    if !invforms::is_invariant(g, b) {
        return Err(Error::NotInvariant);
    }
    let b_inv = b
        .gram()
        .inverse()
        .ok_or_else(|| Error::Degenerate("B must be non-degenerate".into()))?;
    if !invforms::is_invariant(gs, bbar) {
        return Err(Error::NotInvariant);
    }
    if bbar.is_degenerate() {
        return Err(Error::Degenerate("the form on g ⊗ S must be non-degenerate".into()));
    }
    let ex = extract_extension_data(g, b)?;
    let q = ex.basis.clone();
    let q_inv = q.inverse().expect("decomposition basis is invertible");
    let r = ex.data.r();
    let jdim = n - r;
    let hs: Vec<usize> = (0..r).collect();
    let js: Vec<usize> = (r..n).collect();

    let mut gamma = Vec::with_capacity(m * m);
    let (mut epsilon, mut theta, mut vartheta) = (Vec::new(), Vec::new(), Vec::new());
    for a in 0..m {
        for bb in 0..m {
            let mut slice = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    slice[(i, j)] = bbar.entry(i * m + a, j * m + bb).clone();
                }
            }
            let gam = b_inv.mul(&slice.transpose());
            if !g.is_in_centroid(&gam) {
                return Err(Error::TheoremViolation(format!(
                    "Γ(s{}, s{}) is not in the centroid",
                    a + 1,
                    bb + 1
                )));
            }
            let local = q_inv.mul(&gam).mul(&q);
            if !local.submatrix(&hs, &js).is_zero() {
                return Err(Error::TheoremViolation(format!(
                    "Γ(s{}, s{}) does not preserve J(g)",
                    a + 1,
                    bb + 1
                )));
            }
            epsilon.push(local.submatrix(&hs, &hs));
            theta.push(local.submatrix(&js, &hs));
            vartheta.push(local.submatrix(&js, &js));
            gamma.push(gam);
        }
    }
    debug_assert!(vartheta.iter().all(|v: &Mat| v.rows() == jdim));
    Ok(CurrentAnalysis {
        dim_s: m,
        h: ex.data.h,
        basis: q,
        gamma,
        epsilon,
        theta,
        vartheta,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    /// `ε(s_a, s_b) = ε(s_a s_b, 1)` on all basis pairs.
    pub product_rule: bool,
    pub product_rule_failure: Option<(usize, usize)>,
    /// `s ↦ (ε(s, s_b))_b` is injective.
    pub nondegenerate: bool,
    pub kernel_dim: usize,
    /// Every `ε(s_a, s_b)` lies in the centroid of `h`.
    pub in_centroid: bool,
}

impl PairingReport {
    pub fn all_pass(&self) -> bool {
        self.product_rule && self.nondegenerate && self.in_centroid
    }
}

pub fn pairing_check(analysis: &CurrentAnalysis, s: &AssocAlgebra) -> PairingReport {
    let m = s.dim();
    let r = analysis.h.dim();
    let mut failure = None;
    'outer: for a in 0..m {
        for b in 0..m {
            let lhs = analysis.epsilon(a, b);
            let rhs = analysis.epsilon_of(s.product_basis(a, b), s.unit());
            if *lhs != rhs {
                failure = Some((a, b));
                break 'outer;
            }
        }
    }
    // column a: the stacked entries of ε(s_a, s_b) over all b
    let cols: Vec<Vec<Rat>> = (0..m)
        .map(|a| {
            (0..m)
                .flat_map(|b| analysis.epsilon(a, b).entries().to_vec())
                .collect()
        })
        .collect();
    let stacked = Mat::from_cols(m * r * r, &cols).expect("consistent lengths");
    let rank = stacked.rank();
    let in_centroid = analysis.epsilon.iter().all(|e| analysis.h.is_in_centroid(e));
    PairingReport {
        product_rule: failure.is_none(),
        product_rule_failure: failure,
        nondegenerate: rank == m,
        kernel_dim: m - rank,
        in_centroid,
    }
}

/// `Γ(s,t) = Γ(st,1)` on `[g, g]`, for all basis `s, t`.
pub fn gamma_restriction_check(analysis: &CurrentAnalysis, g: &LieAlgebra, s: &AssocAlgebra) -> bool {
    let m = s.dim();
    let derived = g.central_series().lower_term(1).basis_vectors();
    let gamma_of = |x: &[Rat], y: &[Rat]| {
        let n = g.dim();
        let mut out = Mat::zeros(n, n);
        for (a, xa) in x.iter().enumerate() {
            for (b, yb) in y.iter().enumerate() {
                if !xa.is_zero() && !yb.is_zero() {
                    out = out.add(&analysis.gamma(a, b).scale(&(xa * yb)));
                }
            }
        }
        out
    };
    (0..m).all(|a| {
        (0..m).all(|b| {
            let lhs = analysis.gamma(a, b);
            let swapped = analysis.gamma(b, a);
            let rhs = gamma_of(s.product_basis(a, b), s.unit());
            derived
                .iter()
                .all(|v| lhs.mul_vec(v) == rhs.mul_vec(v) && lhs.mul_vec(v) == swapped.mul_vec(v))
        })
    })
}
