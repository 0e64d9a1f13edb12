use num_traits::One;
use serde::Serialize;

use super::cochain::Cochain;
use super::data::{coad, ExtensionData};
use super::iso::psi_matrix;
use crate::error::{Error, Result};
use crate::exactla::{self, LinearSystem, Mat, Rat, Subspace};
use crate::invforms::{self, BilinearForm};
use crate::liealg::LieAlgebra;

/// A bilinear map `h × h → V` with no symmetry assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    r: usize,
    target: usize,
    values: Vec<Vec<Rat>>,
}

impl BilinearMap {
    pub fn get(&self, x: usize, y: usize) -> &[Rat] {
        &self.values[x * self.r + y]
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn is_skew(&self) -> bool {
        (0..self.r).all(|x| {
            (0..self.r).all(|y| exactla::is_zero_vec(&exactla::add_vec(self.get(x, y), self.get(y, x))))
        })
    }

    pub fn to_cochain(&self) -> Option<Cochain> {
        self.is_skew()
            .then(|| Cochain::from_fn(self.r, 2, self.target, |t| self.get(t[0], t[1]).to_vec()))
    }
}

fn require_dual(data: &ExtensionData) -> Result<()> {
    if data.dim_i != data.r() {
        return Err(Error::Precondition(format!(
            "i must be identified with h*: dim i = {}, dim h = {}",
            data.dim_i,
            data.r()
        )));
    }
    Ok(())
}

fn require_b_a(data: &ExtensionData, b_a: &Mat) -> Result<Mat> {
    if b_a.rows() != data.dim_a || b_a.cols() != data.dim_a {
        return Err(Error::DimensionMismatch {
            expected: data.dim_a,
            found: b_a.rows(),
        });
    }
    if !b_a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    b_a.inverse()
        .ok_or_else(|| Error::Degenerate("B_a must be non-degenerate".into()))
}

/// `λ_φ` with `φ(x)(u)(y) = -B_a(λ_φ(x,y), u)`.
pub fn lambda_phi(data: &ExtensionData, b_a: &Mat) -> Result<BilinearMap> {
    require_dual(data)?;
    let inv = require_b_a(data, b_a)?;
    let r = data.r();
    let mut values = Vec::with_capacity(r * r);
    for x in 0..r {
        for y in 0..r {
            let t: Vec<Rat> = (0..data.dim_a).map(|u| -data.phi[x][(y, u)].clone()).collect();
            values.push(inv.mul_vec(&t));
        }
    }
    Ok(BilinearMap {
        r,
        target: data.dim_a,
        values,
    })
}

/// `μ(x,y)(z) = μ(y,z)(x)` on all basis triples.
pub fn mu_is_cyclic(mu: &Cochain) -> bool {
    let r = mu.r();
    (0..r).all(|x| (0..r).all(|y| (0..r).all(|z| mu.eval(&[x, y])[z] == mu.eval(&[y, z])[x])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MetricConditions {
    /// `φ(x)(u)(y) = -B_a(λ(x,y), u)` for all basis `x, y, u`.
    pub phi_lambda_dual: bool,
    pub mu_cyclic: bool,
}

impl MetricConditions {
    pub fn both(&self) -> bool {
        self.phi_lambda_dual && self.mu_cyclic
    }
}

pub fn check_metric_conditions(data: &ExtensionData, b_a: &Mat) -> Result<MetricConditions> {
    require_dual(data)?;
    let r = data.r();
    let dual = (0..r).all(|x| {
        (0..r).all(|y| {
            let bl = b_a.mul_vec(&data.lambda.eval(&[x, y]));
            (0..data.dim_a).all(|u| data.phi[x][(y, u)] == -bl[u].clone())
        })
    });
    Ok(MetricConditions {
        phi_lambda_dual: dual,
        mu_cyclic: mu_is_cyclic(&data.mu),
    })
}

/// `B(x+u+α, y+v+β) = α(y) + β(x) + B_a(u, v)` on `h ⊕ a ⊕ h*`.
pub fn assemble_metric(data: &ExtensionData, b_a: &Mat) -> Result<BilinearForm> {
    require_dual(data)?;
    let (r, da) = (data.r(), data.dim_a);
    let n = data.total_dim();
    let mut g = Mat::zeros(n, n);
    for j in 0..r {
        g[(j, r + da + j)] = Rat::one();
        g[(r + da + j, j)] = Rat::one();
    }
    for u in 0..da {
        for v in 0..da {
            g[(r + u, r + v)] = b_a[(u, v)].clone();
        }
    }
    BilinearForm::new(g)
}

/// Output of a successful criterion run.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionSolution {
    /// `L: h → a`.
    pub l: Cochain,
    /// The cohomologous data `(λ_φ, μ + e_φ(L))`.
    pub target: ExtensionData,
    pub target_algebra: LieAlgebra,
    /// Invariant metric on the target algebra.
    pub target_metric: BilinearForm,
    /// `Ψ`: original basis to target basis (columns are images).
    pub psi: Mat,
    /// `Ψ`-pullback of the target metric: an invariant metric on the
    /// original algebra.
    pub metric: BilinearForm,
    /// Solution space of the homogeneous system, in `L`-coordinates.
    pub freedom: Subspace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `e_φ(L) = 0` and `λ_φ = λ + d_a(L)`.
    Kernel,
    /// `λ_φ = λ + d_a(L)` and `B_a(λ_φ(y,z), L(x)) = B_a(λ_φ(x,y), L(z))`.
    Cyclic,
}

/// Index of `L(e_x)_u` among the `L` unknowns.
pub fn l_index(dim_a: usize, x: usize, u: usize) -> usize {
    x * dim_a + u
}

/// Equations `e_φ(L) = 0`.
pub fn add_e_phi_kernel(sys: &mut LinearSystem, data: &ExtensionData) {
    let (r, da) = (data.r(), data.dim_a);
    for x in 0..r {
        for y in x + 1..r {
            for k in 0..data.dim_i {
                let eq = (0..da).flat_map(|u| {
                    [
                        (l_index(da, y, u), data.phi[x][(k, u)].clone()),
                        (l_index(da, x, u), -data.phi[y][(k, u)].clone()),
                    ]
                });
                sys.add_homogeneous(eq);
            }
        }
    }
}

/// Equations `B_a(λ_φ(y,z), L(x)) = B_a(λ_φ(x,y), L(z))`.
pub fn add_cyclic_condition(sys: &mut LinearSystem, data: &ExtensionData, b_a: &Mat, lphi: &BilinearMap) {
    let (r, da) = (data.r(), data.dim_a);
    let w: Vec<Vec<Rat>> = (0..r * r)
        .map(|k| b_a.mul_vec(&lphi.values[k]))
        .collect();
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                let left = &w[y * r + z];
                let right = &w[x * r + y];
                let eq = (0..da).flat_map(|u| {
                    [
                        (l_index(da, x, u), left[u].clone()),
                        (l_index(da, z, u), -right[u].clone()),
                    ]
                });
                sys.add_homogeneous(eq);
            }
        }
    }
}

fn check_preconditions(data: &ExtensionData) -> Result<()> {
    require_dual(data)?;
    data.check().map_err(Error::InvalidExtension)?;
    if data.rho != coad(&data.h) {
        return Err(Error::Precondition("rho must be the coadjoint representation".into()));
    }
    if !mu_is_cyclic(&data.mu) {
        return Err(Error::Precondition("mu must be cyclic".into()));
    }
    Ok(())
}

/// Runs one of the two sufficient criteria. `Ok(None)` means the linear
/// system has no solution (the criterion does not apply).
pub fn solve_criterion(
    data: &ExtensionData,
    b_a: &Mat,
    criterion: Criterion,
) -> Result<Option<CriterionSolution>> {
    check_preconditions(data)?;
    let lphi = lambda_phi(data, b_a)?;
    let (r, da) = (data.r(), data.dim_a);
    let mut sys = LinearSystem::new(r * da);
    // λ_φ(x,y) - λ(x,y) = d_a(L)(x,y) = -L([x,y]) over all ordered pairs
    for x in 0..r {
        for y in 0..r {
            let rhs = exactla::sub_vec(lphi.get(x, y), &data.lambda.eval(&[x, y]));
            let terms = data.h.bracket_terms(x, y);
            for (u, rhs_u) in rhs.into_iter().enumerate() {
                let eq = terms.iter().map(|(k, c)| (l_index(da, *k, u), -c.clone()));
                sys.add_equation(eq, rhs_u);
            }
        }
    }
    match criterion {
        Criterion::Kernel => add_e_phi_kernel(&mut sys, data),
        Criterion::Cyclic => add_cyclic_condition(&mut sys, data, b_a, &lphi),
    }
    let Some((coords, freedom)) = sys.solve() else {
        return Ok(None);
    };
    let l = Cochain::from_coords(r, 1, da, &coords);
    finish(data, b_a, l, freedom).map(Some)
}

pub fn solve_kernel_criterion(data: &ExtensionData, b_a: &Mat) -> Result<Option<CriterionSolution>> {
    solve_criterion(data, b_a, Criterion::Kernel)
}

pub fn solve_cyclic_criterion(data: &ExtensionData, b_a: &Mat) -> Result<Option<CriterionSolution>> {
    solve_criterion(data, b_a, Criterion::Cyclic)
}

/// Whether `L` satisfies the equations of the given criterion.
pub fn satisfies_criterion(data: &ExtensionData, b_a: &Mat, l: &Cochain, criterion: Criterion) -> Result<bool> {
    let lphi = lambda_phi(data, b_a)?;
    let Some(lphi_c) = lphi.to_cochain() else {
        return Ok(false);
    };
    if data.lambda.add(&data.d_a(l)) != lphi_c {
        return Ok(false);
    }
    let r = data.r();
    Ok(match criterion {
        Criterion::Kernel => data.e_phi(l).is_zero(),
        Criterion::Cyclic => (0..r).all(|x| {
            (0..r).all(|y| {
                (0..r).all(|z| {
                    let lhs = b_a.bilinear(lphi.get(y, z), l.value(&[x]));
                    let rhs = b_a.bilinear(lphi.get(x, y), l.value(&[z]));
                    lhs == rhs
                })
            })
        }),
    })
}

fn finish(data: &ExtensionData, b_a: &Mat, l: Cochain, freedom: Subspace) -> Result<CriterionSolution> {
    let lphi = lambda_phi(data, b_a)?
        .to_cochain()
        .ok_or_else(|| Error::TheoremViolation("solution found but λ_φ is not skew".into()))?;
    let mu_prime = data.mu.add(&data.e_phi(&l));
    if data.lambda.add(&data.d_a(&l)) != lphi {
        return Err(Error::TheoremViolation("λ + d_a(L) differs from λ_φ".into()));
    }
    let target = data.with_cocycle(lphi, mu_prime);
    let target_algebra = target.build()?;
    let target_metric = assemble_metric(&target, b_a)?;
    let conditions = check_metric_conditions(&target, b_a)?;
    if !conditions.both() || !invforms::is_metric(&target_algebra, &target_metric) {
        return Err(Error::TheoremViolation(format!(
            "criterion solved but the assembled form is not an invariant metric ({conditions:?})"
        )));
    }
    let zero_m = Cochain::zero(data.r(), 1, data.dim_i);
    let psi = psi_matrix(data, &l, &zero_m);
    let metric = target_metric.pullback(&psi);
    let source = data.build()?;
    if !invforms::is_metric(&source, &metric) {
        return Err(Error::TheoremViolation(
            "transported metric is not an invariant metric on the original algebra".into(),
        ));
    }
    Ok(CriterionSolution {
        l,
        target,
        target_algebra,
        target_metric,
        psi,
        metric,
        freedom,
    })
}

/// `L` coordinates of the solutions of `e_φ(L) = 0`.
pub fn e_phi_kernel(data: &ExtensionData) -> Subspace {
    let mut sys = LinearSystem::new(data.r() * data.dim_a);
    add_e_phi_kernel(&mut sys, data);
    sys.kernel()
}

/// `L` coordinates of the solutions of the cyclic condition alone.
pub fn cyclic_condition_kernel(data: &ExtensionData, b_a: &Mat) -> Result<Subspace> {
    let lphi = lambda_phi(data, b_a)?;
    let mut sys = LinearSystem::new(data.r() * data.dim_a);
    add_cyclic_condition(&mut sys, data, b_a, &lphi);
    Ok(sys.kernel())
}
