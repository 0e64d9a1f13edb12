//! Seeded generators of valid extension data, used by the property suites
//! and benchmarks.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::exactla::{self, Mat, Rat, Subspace};
use crate::extension::{binomial, coad, cyclic_condition_kernel, e_phi_kernel, lambda_phi, Cochain, ExtensionData};
use crate::invforms::BilinearForm;
use crate::liealg::{LieAlgebra, StructureConstant};
use crate::samples;

/// Small nilpotent algebras used as the base `h`.
pub fn h_catalog() -> Vec<LieAlgebra> {
    let one = exactla::one;
    let filiform = LieAlgebra::new(
        crate::liealg::default_names("x", 4),
        vec![
            StructureConstant::new(0, 1, 2, one()),
            StructureConstant::new(0, 2, 3, one()),
        ],
    )
    .expect("filiform algebra");
    let h5 = LieAlgebra::new(
        crate::liealg::default_names("x", 5),
        vec![
            StructureConstant::new(0, 1, 4, one()),
            StructureConstant::new(2, 3, 4, one()),
        ],
    )
    .expect("five-dimensional Heisenberg algebra");
    vec![
        LieAlgebra::abelian(1),
        LieAlgebra::abelian(2),
        LieAlgebra::abelian(3),
        samples::heisenberg(),
        filiform,
        h5,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoKind {
    Zero,
    Coadjoint,
    Adjoint,
}

/// Integer coefficients in `-h..=h`.
pub fn random_int_vec<R: Rng + ?Sized>(rng: &mut R, n: usize, h: i64) -> Vec<Rat> {
    (0..n).map(|_| exactla::rat(rng.random_range(-h..=h))).collect()
}

/// Random integer combination of a basis of `s`.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, s: &Subspace, h: i64) -> Vec<Rat> {
    let mut v = exactla::zero_vec(s.ambient_dim());
    for b in s.basis_vectors() {
        let c = exactla::rat(rng.random_range(-h..=h));
        exactla::axpy(&mut v, &c, &b);
    }
    v
}

pub fn random_cochain<R: Rng + ?Sized>(rng: &mut R, r: usize, degree: usize, target: usize, h: i64) -> Cochain {
    Cochain::from_fn(r, degree, target, |_| random_int_vec(rng, target, h))
}

/// Kernel of the linear map `Q^n → Q^m` given by evaluation on unit vectors.
pub fn kernel_of<F: Fn(&[Rat]) -> Vec<Rat>>(n: usize, f: F) -> Subspace {
    let cols: Vec<Vec<Rat>> = (0..n).map(|k| f(&exactla::unit_vec(n, k))).collect();
    let rows = cols.first().map_or(0, |c| c.len());
    if rows == 0 {
        return Subspace::full(n);
    }
    Mat::from_cols(rows, &cols).expect("columns share a length").kernel()
}

fn phi_from_coords(r: usize, di: usize, da: usize, coords: &[Rat]) -> Vec<Mat> {
    (0..r)
        .map(|x| {
            Mat::from_vec(di, da, coords[x * di * da..(x + 1) * di * da].to_vec()).expect("block length")
        })
        .collect()
}

/// Solutions of `φ([x,y]) = ρ(x)φ(y) - ρ(y)φ(x)`, coordinates
/// `x·di·da + k·da + u` for `φ(x)[k][u]`.
pub fn phi_cocycles(h: &LieAlgebra, rho: &[Mat], da: usize, di: usize) -> Subspace {
    let r = h.dim();
    kernel_of(r * di * da, |c| {
        let phi = phi_from_coords(r, di, da, c);
        let mut out = Vec::new();
        for x in 0..r {
            for y in x + 1..r {
                let mut lhs = Mat::zeros(di, da);
                for (k, coeff) in h.bracket_terms(x, y) {
                    lhs = lhs.add(&phi[*k].scale(coeff));
                }
                let rhs = rho[x].mul(&phi[y]).sub(&rho[y].mul(&phi[x]));
                out.extend_from_slice(lhs.sub(&rhs).entries());
            }
        }
        out
    })
}

/// Solutions `(λ, μ)` of `d_R(λ, μ) = 0`, in concatenated cochain
/// coordinates.
pub fn two_cocycles(data: &ExtensionData) -> Subspace {
    let (r, da, di) = (data.r(), data.dim_a, data.dim_i);
    let nl = binomial(r, 2) * da;
    let nm = binomial(r, 2) * di;
    kernel_of(nl + nm, |c| {
        let l = Cochain::from_coords(r, 2, da, &c[..nl]);
        let m = Cochain::from_coords(r, 2, di, &c[nl..]);
        let (a, i) = data.d_r(&l, &m);
        let mut out = a.coords();
        out.extend(i.coords());
        out
    })
}

fn split_cocycle(data: &ExtensionData, v: &[Rat]) -> (Cochain, Cochain) {
    let r = data.r();
    let nl = binomial(r, 2) * data.dim_a;
    (
        Cochain::from_coords(r, 2, data.dim_a, &v[..nl]),
        Cochain::from_coords(r, 2, data.dim_i, &v[nl..]),
    )
}

/// Valid extension data with `3 ≤ total dim ≤ max_dim` (`max_dim ≥ 3`).
pub fn random_extension_data<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> ExtensionData {
    assert!(max_dim >= 3);
    let catalog = h_catalog();
    loop {
        let h = catalog.choose(rng).expect("non-empty catalog").clone();
        let r = h.dim();
        let kind = *[RhoKind::Zero, RhoKind::Coadjoint, RhoKind::Adjoint].choose(rng).expect("non-empty");
        let (rho, di) = match kind {
            RhoKind::Zero => {
                let di = rng.random_range(0..=2);
                (vec![Mat::zeros(di, di); r], di)
            }
            RhoKind::Coadjoint => (coad(&h), r),
            RhoKind::Adjoint => ((0..r).map(|x| h.ad_basis(x)).collect(), r),
        };
        let da = rng.random_range(0..=3);
        let total = r + da + di;
        if !(3..=max_dim).contains(&total) {
            continue;
        }
        let phi_space = phi_cocycles(&h, &rho, da, di);
        let phi = phi_from_coords(r, di, da, &random_element(rng, &phi_space, 2));
        let base = ExtensionData {
            rho,
            phi,
            ..ExtensionData::trivial(h, da, di)
        };
        let z2 = two_cocycles(&base);
        let (lambda, mu) = split_cocycle(&base, &random_element(rng, &z2, 2));
        let data = base.with_cocycle(lambda, mu);
        debug_assert!(data.check().is_ok());
        return data;
    }
}

/// Extension data satisfying the metric conditions for `B_a`, with
/// `ρ = ad*`: `φ` is dual to `λ` and `μ` is cyclic.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticData {
    pub data: ExtensionData,
    pub b_a: Mat,
}

impl QuadraticData {
    pub fn algebra(&self) -> LieAlgebra {
        self.data.build().expect("valid data")
    }

    pub fn metric(&self) -> BilinearForm {
        crate::extension::assemble_metric(&self.data, &self.b_a).expect("dual data")
    }
}

// μ(x,y)(z) = ω(x,y,z) for an alternating 3-form ω
fn mu_from_three_form(r: usize, omega: &Cochain) -> Cochain {
    Cochain::from_fn(r, 2, r, |t| (0..r).map(|z| omega.eval(&[t[0], t[1], z])[0].clone()).collect())
}

/// Metric-admitting data over a non-abelian `h` with `2r + dim a ≤ max_dim`.
pub fn random_quadratic_data<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> QuadraticData {
    let catalog: Vec<LieAlgebra> = h_catalog()
        .into_iter()
        .filter(|h| !h.is_abelian() && 2 * h.dim() <= max_dim)
        .collect();
    assert!(!catalog.is_empty(), "max_dim too small");
    loop {
        let h = catalog.choose(rng).expect("non-empty").clone();
        let r = h.dim();
        let da = rng.random_range(0..=(max_dim - 2 * r).min(3));
        let diag: Vec<Rat> = (0..da)
            .map(|_| exactla::rat(*[1i64, 1, 2, -1].choose(rng).expect("non-empty")))
            .collect();
        let mut b_a = Mat::zeros(da, da);
        for (k, d) in diag.iter().enumerate() {
            b_a[(k, k)] = d.clone();
        }
        let frame = ExtensionData {
            rho: coad(&h),
            ..ExtensionData::trivial(h.clone(), da, r)
        };
        // λ ∈ Z²(h; a), φ dual to λ
        let z2a = kernel_of(binomial(r, 2) * da, |c| {
            frame.d_a(&Cochain::from_coords(r, 2, da, c)).coords()
        });
        let lambda = Cochain::from_coords(r, 2, da, &random_element(rng, &z2a, 2));
        let phi: Vec<Mat> = (0..r)
            .map(|x| {
                let mut m = Mat::zeros(r, da);
                for y in 0..r {
                    let bl = b_a.mul_vec(&lambda.eval(&[x, y]));
                    for u in 0..da {
                        m[(y, u)] = -bl[u].clone();
                    }
                }
                m
            })
            .collect();
        let with_phi = ExtensionData { phi, ..frame };
        // μ from a 3-form with d_ρ μ = -e_φ λ
        let n3 = binomial(r, 3);
        let rhs = with_phi.e_phi(&lambda).scale(&-exactla::one()).coords();
        let cols: Vec<Vec<Rat>> = (0..n3)
            .map(|k| {
                let omega = Cochain::from_coords(r, 3, 1, &exactla::unit_vec(n3, k));
                with_phi.d_rho(&mu_from_three_form(r, &omega)).coords()
            })
            .collect();
        let solution = if rhs.is_empty() {
            Some((exactla::zero_vec(n3), Subspace::full(n3)))
        } else if n3 == 0 {
            exactla::is_zero_vec(&rhs).then(|| (Vec::new(), Subspace::zero(0)))
        } else {
            Mat::from_cols(rhs.len(), &cols)
                .expect("columns share a length")
                .solve(&rhs)
                .expect("consistent shapes")
        };
        let Some((particular, freedom)) = solution else {
            continue;
        };
        let coeffs = exactla::add_vec(&particular, &random_element(rng, &freedom, 1));
        let omega = Cochain::from_coords(r, 3, 1, &coeffs);
        let data = with_phi.with_cocycle(lambda, mu_from_three_form(r, &omega));
        debug_assert!(data.check().is_ok());
        return QuadraticData { data, b_a };
    }
}

/// A solver instance: `data` is metric-admitting data moved by a
/// coboundary, and `l0` is a known solution.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedInstance {
    pub data: ExtensionData,
    pub b_a: Mat,
    pub l0: Cochain,
}

/// `λ = λ_φ - d_a(L0)` with `e_φ(L0) = 0`.
pub fn perturb_for_kernel<R: Rng + ?Sized>(rng: &mut R, q: &QuadraticData) -> PerturbedInstance {
    let space = e_phi_kernel(&q.data);
    let l0 = Cochain::from_coords(q.data.r(), 1, q.data.dim_a, &random_element(rng, &space, 3));
    perturb(q, l0)
}

/// `λ = λ_φ - d_a(L0)`, `μ = μ - e_φ(L0)` with `L0` satisfying the cyclic
/// condition.
pub fn perturb_for_cyclic<R: Rng + ?Sized>(rng: &mut R, q: &QuadraticData) -> PerturbedInstance {
    let space = cyclic_condition_kernel(&q.data, &q.b_a).expect("dual data");
    let l0 = Cochain::from_coords(q.data.r(), 1, q.data.dim_a, &random_element(rng, &space, 3));
    perturb(q, l0)
}

fn perturb(q: &QuadraticData, l0: Cochain) -> PerturbedInstance {
    let lphi = lambda_phi(&q.data, &q.b_a)
        .expect("dual data")
        .to_cochain()
        .expect("skew");
    let lambda = lphi.sub(&q.data.d_a(&l0));
    let mu = q.data.mu.sub(&q.data.e_phi(&l0));
    PerturbedInstance {
        data: q.data.with_cocycle(lambda, mu),
        b_a: q.b_a.clone(),
        l0,
    }
}
