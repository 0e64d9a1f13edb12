//! Invariant symmetric bilinear forms, metric search and the Witt-style
//! decomposition `g = h ⊕ a ⊕ i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{self, det_integer_rows, integer_rows, LinearSystem, Mat, Rat, Subspace};
use crate::liealg::LieAlgebra;

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    gram: Mat,
}

impl BilinearForm {
    pub fn new(gram: Mat) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearForm { gram })
    }

    pub fn zero(n: usize) -> Self {
        BilinearForm {
            gram: Mat::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        BilinearForm {
            gram: Mat::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn into_gram(self) -> Mat {
        self.gram
    }

    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> Rat {
        self.gram.bilinear(x, y)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.gram[(i, j)]
    }

    pub fn det(&self) -> Rat {
        self.gram.det()
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    /// `{x : B(x, ·) = 0}`.
    pub fn radical(&self) -> Subspace {
        self.gram.kernel()
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    /// Gram matrix of the restriction to the span of `vectors`.
    pub fn restrict(&self, vectors: &[Vec<Rat>]) -> Mat {
        let k = vectors.len();
        let mut m = Mat::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = self.eval(&vectors[i], &vectors[j]);
                m[(j, i)] = v.clone();
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn scale(&self, c: &Rat) -> BilinearForm {
        BilinearForm {
            gram: self.gram.scale(c),
        }
    }

    pub fn add(&self, other: &BilinearForm) -> BilinearForm {
        BilinearForm {
            gram: self.gram.add(&other.gram),
        }
    }

    /// `Pᵀ G P`: the form in the basis given by the columns of `p`.
    pub fn pullback(&self, p: &Mat) -> BilinearForm {
        BilinearForm {
            gram: p.transpose().mul(&self.gram).mul(p),
        }
    }

    /// Kronecker product `B ⊗ θ`, indexed `i·dim θ + a`.
    pub fn kron(&self, other: &BilinearForm) -> BilinearForm {
        let (n, m) = (self.dim(), other.dim());
        let mut g = Mat::zeros(n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                let b = &self.gram[(i, j)];
                if b.is_zero() {
                    continue;
                }
                for a in 0..m {
                    for c in 0..m {
                        g[(i * m + a, j * m + c)] = b * &other.gram[(a, c)];
                    }
                }
            }
        }
        BilinearForm { gram: g }
    }
}

/// Linear combination `Σ c_i F_i`.
pub fn combine(forms: &[BilinearForm], coeffs: &[Rat]) -> BilinearForm {
    let n = forms.first().map_or(0, |f| f.dim());
    let mut gram = Mat::zeros(n, n);
    for (f, c) in forms.iter().zip(coeffs) {
        if !c.is_zero() {
            gram = gram.add(&f.gram.scale(c));
        }
    }
    BilinearForm { gram }
}

/// Basis of all invariant symmetric forms on an algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantFormSpace {
    pub basis: Vec<BilinearForm>,
}

impl InvariantFormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, form: &BilinearForm) -> bool {
        let Some(first) = self.basis.first() else {
            return form.is_zero();
        };
        let n = first.dim();
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(|f| f.gram.entries().to_vec()).collect();
        let span = Subspace::span(n * n, &rows).expect("n² entries");
        form.dim() == n && span.contains_vector(form.gram.entries())
    }

    /// Solves for the forms in the space matching the prescribed entries
    /// `(i, j, value)`; `None` when no member matches.
    pub fn with_entries(&self, entries: &[(usize, usize, Rat)]) -> Option<(BilinearForm, Subspace)> {
        let k = self.dim();
        let mut sys = LinearSystem::new(k);
        for (i, j, v) in entries {
            sys.add_equation(
                self.basis
                    .iter()
                    .enumerate()
                    .map(|(t, f)| (t, f.gram[(*i, *j)].clone())),
                v.clone(),
            );
        }
        let (coeffs, free) = sys.solve()?;
        Some((combine(&self.basis, &coeffs), free))
    }
}

fn sym_index(n: usize, p: usize, q: usize) -> usize {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    p * n - p * (p + 1) / 2 + q
}

/// Joint kernel of `f ↦ f([x,·],·) + f(·,[x,·])` over symmetric `f`.
pub fn invariant_forms(alg: &LieAlgebra) -> InvariantFormSpace {
    let n = alg.dim();
    let unknowns = n * (n + 1) / 2;
    let mut sys = LinearSystem::new(unknowns);
    for i in 0..n {
        for j in 0..n {
            let bij = alg.bracket_terms(i, j);
            for k in j..n {
                let bik = alg.bracket_terms(i, k);
                if bij.is_empty() && bik.is_empty() {
                    continue;
                }
                let eq = bij
                    .iter()
                    .map(|(l, c)| (sym_index(n, *l, k), c.clone()))
                    .chain(bik.iter().map(|(l, c)| (sym_index(n, j, *l), c.clone())));
                sys.add_homogeneous(eq);
            }
        }
    }
    let basis = sys
        .kernel()
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let mut g = Mat::zeros(n, n);
            for p in 0..n {
                for q in p..n {
                    let x = v[sym_index(n, p, q)].clone();
                    g[(q, p)] = x.clone();
                    g[(p, q)] = x;
                }
            }
            BilinearForm { gram: g }
        })
        .collect();
    InvariantFormSpace { basis }
}

/// `B([x,y],z) + B(y,[x,z]) = 0` on every basis triple.
pub fn is_invariant(alg: &LieAlgebra, form: &BilinearForm) -> bool {
    let n = alg.dim();
    if form.dim() != n {
        return false;
    }
    (0..n).all(|i| {
        let ad = alg.ad_basis(i);
        let g = form.gram();
        ad.transpose().mul(g).add(&g.mul(&ad)).is_zero()
    })
}

pub fn is_metric(alg: &LieAlgebra, form: &BilinearForm) -> bool {
    is_invariant(alg, form) && !form.is_degenerate()
}

/// Knobs of the three-stage metric search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricSearchConfig {
    pub sign_cap: usize,
    pub random_attempts: usize,
    pub random_height: i64,
    pub grid_budget: u64,
}

impl Default for MetricSearchConfig {
    fn default() -> Self {
        MetricSearchConfig {
            sign_cap: 64,
            random_attempts: 256,
            random_height: 10,
            grid_budget: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStage {
    Deterministic,
    Random,
    Grid,
}

/// Exact proof that no element of the form space is non-degenerate.
#[derive(Debug, Clone, PartialEq)]
pub enum NoMetricCertificate {
    /// `det(Σ c_i F_i)` vanishes on a grid whose per-variable size exceeds
    /// its degree in that variable, hence vanishes identically.
    GridExhausted { sizes: Vec<usize>, evaluations: u64 },
    /// A nonzero vector in the radical of every basis form.
    CommonRadical { vector: Vec<Rat> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum MetricSearch {
    Found {
        form: BilinearForm,
        stage: SearchStage,
        coeffs: Vec<Rat>,
    },
    NoMetric(NoMetricCertificate),
    Inconclusive {
        grid_size: u128,
    },
}

impl MetricSearch {
    pub fn metric(&self) -> Option<&BilinearForm> {
        match self {
            MetricSearch::Found { form, .. } => Some(form),
            _ => None,
        }
    }
}

fn nonzero_det(f: &BilinearForm) -> bool {
    !det_integer_rows(&integer_rows(f.gram())).is_zero()
}

/// Searches the invariant-form space for a non-degenerate element.
pub fn find_invariant_metric<R: Rng + ?Sized>(
    alg: &LieAlgebra,
    config: &MetricSearchConfig,
    rng: &mut R,
) -> MetricSearch {
    let space = invariant_forms(alg);
    search_nondegenerate(&space.basis, alg.dim(), config, rng)
}

/// The search itself, over an arbitrary family of symmetric forms.
pub fn search_nondegenerate<R: Rng + ?Sized>(
    forms: &[BilinearForm],
    n: usize,
    config: &MetricSearchConfig,
    rng: &mut R,
) -> MetricSearch {
    let k = forms.len();
    if n == 0 {
        return MetricSearch::Found {
            form: BilinearForm::zero(0),
            stage: SearchStage::Deterministic,
            coeffs: vec![],
        };
    }
    if k == 0 {
        return MetricSearch::NoMetric(NoMetricCertificate::GridExhausted {
            sizes: vec![],
            evaluations: 1,
        });
    }

    let found = |coeffs: Vec<Rat>, stage| {
        let form = combine(forms, &coeffs);
        nonzero_det(&form).then_some(MetricSearch::Found {
            form,
            stage,
            coeffs,
        })
    };

    let mut tried = 0usize;
    for t in 0..k {
        if tried >= config.sign_cap {
            break;
        }
        tried += 1;
        if let Some(r) = found(exactla::unit_vec(k, t), SearchStage::Deterministic) {
            return r;
        }
    }
    // base-3 counter with digits mapped 0, 1, -1
    let mut digits = vec![0u8; k];
    'signs: while tried < config.sign_cap {
        let mut pos = 0;
        loop {
            if pos == k {
                break 'signs;
            }
            digits[pos] += 1;
            if digits[pos] == 3 {
                digits[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
        if digits.iter().filter(|&&d| d != 0).count() < 2 {
            continue;
        }
        tried += 1;
        let coeffs: Vec<Rat> = digits
            .iter()
            .map(|d| match d {
                0 => Rat::zero(),
                1 => Rat::one(),
                _ => -Rat::one(),
            })
            .collect();
        if let Some(r) = found(coeffs, SearchStage::Deterministic) {
            return r;
        }
    }

    for _ in 0..config.random_attempts {
        let coeffs: Vec<Rat> = (0..k)
            .map(|_| exactla::random_rat(rng, config.random_height))
            .collect();
        if let Some(r) = found(coeffs, SearchStage::Random) {
            return r;
        }
    }

    grid_search(forms, n, config)
}

fn grid_search(forms: &[BilinearForm], n: usize, config: &MetricSearchConfig) -> MetricSearch {
    // Rescaling each F_i by a positive integer does not change whether the
    // determinant polynomial vanishes, nor its degree in each variable.
    let scaled: Vec<(Vec<Vec<BigInt>>, Rat)> = forms
        .iter()
        .map(|f| {
            let rows = integer_rows(f.gram());
            let scale = if f.gram().is_zero() {
                Rat::one()
            } else {
                let (i, j) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !f.gram()[(i, j)].is_zero())
                    .expect("nonzero form");
                Rat::from_integer(rows[i][j].clone()) / f.gram()[(i, j)].clone()
            };
            (rows, scale)
        })
        .collect();
    let sizes: Vec<usize> = forms.iter().map(|f| f.rank() + 1).collect();
    let total: u128 = sizes.iter().map(|&s| s as u128).product();
    if total > config.grid_budget as u128 {
        return common_radical(forms, n)
            .map(|vector| MetricSearch::NoMetric(NoMetricCertificate::CommonRadical { vector }))
            .unwrap_or(MetricSearch::Inconclusive { grid_size: total });
    }

    let point = |mut idx: u128| -> Vec<i64> {
        sizes
            .iter()
            .map(|&s| {
                let d = (idx % s as u128) as i64;
                idx /= s as u128;
                d
            })
            .collect()
    };
    let hit = (0..total as u64).into_par_iter().find_map_first(|idx| {
        let c = point(idx as u128);
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for ((rows, _), ci) in scaled.iter().zip(&c) {
            if *ci == 0 {
                continue;
            }
            for (mr, fr) in m.iter_mut().zip(rows) {
                for (x, y) in mr.iter_mut().zip(fr) {
                    *x += y * *ci;
                }
            }
        }
        (!det_integer_rows(&m).is_zero()).then_some(c)
    });
    match hit {
        Some(c) => {
            // coefficient on the original (unscaled) forms
            let coeffs: Vec<Rat> = c
                .iter()
                .zip(&scaled)
                .map(|(ci, (_, s))| exactla::rat(*ci) * s)
                .collect();
            let form = combine(forms, &coeffs);
            MetricSearch::Found {
                form,
                stage: SearchStage::Grid,
                coeffs,
            }
        }
        None => MetricSearch::NoMetric(NoMetricCertificate::GridExhausted {
            sizes,
            evaluations: total as u64,
        }),
    }
}

fn common_radical(forms: &[BilinearForm], n: usize) -> Option<Vec<Rat>> {
    let stacked = forms
        .iter()
        .fold(Mat::zeros(0, n), |acc, f| acc.vstack(f.gram()));
    stacked.kernel().basis_vectors().into_iter().next()
}

/// `{x : B(x, u) = 0 for all u ∈ U}`.
pub fn orthogonal_complement(form: &BilinearForm, u: &Subspace) -> Result<Subspace> {
    if form.dim() != u.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: u.ambient_dim(),
        });
    }
    if form.is_degenerate() {
        return Err(Error::Degenerate("orthogonal complement needs a non-degenerate form".into()));
    }
    if u.is_zero() {
        return Ok(Subspace::full(form.dim()));
    }
    Ok(u.basis().mul(form.gram()).kernel())
}

/// `g = h ⊕ a ⊕ i` with `h`, `i` isotropic, `a ⊥ (h ⊕ i)` and the `h`, `i`
/// bases dual to each other.
#[derive(Debug, Clone, PartialEq)]
pub struct WittDecomposition {
    pub h: Vec<Vec<Rat>>,
    pub a: Vec<Vec<Rat>>,
    pub i: Vec<Vec<Rat>>,
    pub j: Subspace,
    /// `phi[(k, j)] = B(i_k, h_j)`: the pairing `i → h*`.
    pub phi: Mat,
    /// Gram of `B` on the `a` basis.
    pub b_a: Mat,
}

impl WittDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h.len(), self.a.len(), self.i.len())
    }

    /// Columns: the `h`, `a`, `i` bases in that order.
    pub fn change_of_basis(&self) -> Mat {
        let n = self.j.ambient_dim();
        let cols: Vec<Vec<Rat>> = self
            .h
            .iter()
            .chain(&self.a)
            .chain(&self.i)
            .cloned()
            .collect();
        Mat::from_cols(n, &cols).expect("decomposition vectors have ambient length")
    }

    pub fn h_space(&self) -> Subspace {
        span_of(self.j.ambient_dim(), &self.h)
    }

    pub fn a_space(&self) -> Subspace {
        span_of(self.j.ambient_dim(), &self.a)
    }

    pub fn i_space(&self) -> Subspace {
        span_of(self.j.ambient_dim(), &self.i)
    }

    /// Checks every structural property exactly.
    pub fn verify(&self, form: &BilinearForm) -> bool {
        let n = self.j.ambient_dim();
        let (r, da, di) = self.dims();
        let full = r + da + di == n && self.change_of_basis().rank() == n;
        let h_iso = form.restrict(&self.h).is_zero();
        let i_iso = form.restrict(&self.i).is_zero();
        let a_perp = self
            .a
            .iter()
            .all(|u| self.h.iter().chain(&self.i).all(|v| form.eval(u, v).is_zero()));
        let a_nondeg = !form.restrict(&self.a).det().is_zero();
        let dual = r == di
            && (0..r).all(|j| {
                (0..di).all(|k| {
                    let v = form.eval(&self.h[j], &self.i[k]);
                    if j == k {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            });
        full && h_iso && i_iso && a_perp && a_nondeg && dual
    }
}

fn span_of(n: usize, vs: &[Vec<Rat>]) -> Subspace {
    Subspace::span(n, vs).expect("vectors have ambient length")
}

pub fn witt_decomposition(alg: &LieAlgebra, form: &BilinearForm) -> Result<WittDecomposition> {
    if !is_invariant(alg, form) {
        return Err(Error::NotInvariant);
    }
    if form.is_degenerate() {
        return Err(Error::Degenerate("witt decomposition needs a metric".into()));
    }
    if alg.is_abelian() {
        return Err(Error::Precondition("witt decomposition needs a non-abelian algebra".into()));
    }
    let ideals = alg.canonical_ideals()?;
    let perp = orthogonal_complement(form, &ideals.i_g)?;
    if perp != ideals.j_g {
        return Err(Error::TheoremViolation("i(g)^⊥ differs from J(g)".into()));
    }
    let i_basis = ideals.i_g.basis_vectors();
    let a_basis = ideals.i_g.complement_in(&ideals.j_g)?.basis_vectors();
    let mut h_basis = ideals.j_g.complement().basis_vectors();

    let b_a = form.restrict(&a_basis);
    let b_a_inv = b_a
        .inverse()
        .ok_or_else(|| Error::Degenerate("B restricted to a".into()))?;
    for x in h_basis.iter_mut() {
        let t: Vec<Rat> = a_basis.iter().map(|u| form.eval(x, u)).collect();
        let c = b_a_inv.mul_vec(&t);
        for (ck, u) in c.iter().zip(&a_basis) {
            exactla::axpy(x, &-ck.clone(), u);
        }
    }

    let r = h_basis.len();
    if r != i_basis.len() {
        return Err(Error::TheoremViolation(format!(
            "dim h = {r} but dim i = {}",
            i_basis.len()
        )));
    }
    let mut p = Mat::zeros(r, r);
    let mut g = Mat::zeros(r, r);
    for j in 0..r {
        for k in 0..r {
            p[(j, k)] = form.eval(&h_basis[j], &i_basis[k]);
            g[(j, k)] = form.eval(&h_basis[j], &h_basis[k]);
        }
    }
    let p_inv = p
        .inverse()
        .ok_or_else(|| Error::Degenerate("B does not pair h with i".into()))?;
    // x'_j = x_j - Σ_k C_jk α_k with C Pᵀ = G/2
    let c = g.scale(&exactla::ratio(1, 2)).mul(&p_inv.transpose());
    let corrected: Vec<Vec<Rat>> = (0..r)
        .map(|j| {
            let mut x = h_basis[j].clone();
            for (k, alpha) in i_basis.iter().enumerate() {
                exactla::axpy(&mut x, &-c[(j, k)].clone(), alpha);
            }
            x
        })
        .collect();
    h_basis = corrected;
    // dual basis of i: α'_k = Σ_m α_m (P^{-1})_{mk}
    let i_dual: Vec<Vec<Rat>> = (0..r)
        .map(|k| {
            let mut v = exactla::zero_vec(alg.dim());
            for (m, alpha) in i_basis.iter().enumerate() {
                exactla::axpy(&mut v, &p_inv[(m, k)], alpha);
            }
            v
        })
        .collect();
    let mut phi = Mat::zeros(r, r);
    for k in 0..r {
        for j in 0..r {
            phi[(k, j)] = form.eval(&i_dual[k], &h_basis[j]);
        }
    }
    let out = WittDecomposition {
        h: h_basis,
        a: a_basis,
        i: i_dual,
        j: ideals.j_g,
        phi,
        b_a,
    };
    if !out.verify(form) {
        return Err(Error::TheoremViolation("decomposition failed its own checks".into()));
    }
    Ok(out)
}
