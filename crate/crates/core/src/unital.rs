//! The unital algebra `A_f = Q × g` attached to an invariant symmetric form
//! `f`, with product `(ξ,x)(η,y) = (ξη + f(x,y), ξy + ηx + ½[x,y])`.
//!
//! Elements are vectors of length `1 + dim g`; coordinate 0 is the scalar.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{self, ClosureOperator, Mat, Rat, Subspace};
use crate::invforms::{self, BilinearForm};
use crate::liealg::{LieAlgebra, StructureConstant};

#[derive(Debug, Clone)]
pub struct UnitalAlgebra {
    g: LieAlgebra,
    f: BilinearForm,
    // left[k] and right[k]: multiplication by the k-th basis element of A
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl UnitalAlgebra {
    /// `f` must be invariant and non-zero.
    pub fn new(g: LieAlgebra, f: BilinearForm) -> Result<Self> {
        if f.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: f.dim(),
            });
        }
        if f.is_zero() {
            return Err(Error::Precondition("f must be non-zero".into()));
        }
        if !invforms::is_invariant(&g, &f) {
            return Err(Error::NotInvariant);
        }
        let mut a = UnitalAlgebra {
            g,
            f,
            left: Vec::new(),
            right: Vec::new(),
        };
        let d = a.dim();
        let e = |k| exactla::unit_vec(d, k);
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(d);
        for k in 0..d {
            let lcols: Vec<Vec<Rat>> = (0..d).map(|j| a.product(&e(k), &e(j))).collect();
            let rcols: Vec<Vec<Rat>> = (0..d).map(|j| a.product(&e(j), &e(k))).collect();
            left.push(Mat::from_cols(d, &lcols).expect("square"));
            right.push(Mat::from_cols(d, &rcols).expect("square"));
        }
        a.left = left;
        a.right = right;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.g.dim() + 1
    }

    pub fn lie_algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn form(&self) -> &BilinearForm {
        &self.f
    }

    pub fn unit(&self) -> Vec<Rat> {
        exactla::unit_vec(self.dim(), 0)
    }

    /// Embeds `(ξ, x)`.
    pub fn element(xi: &Rat, x: &[Rat]) -> Vec<Rat> {
        let mut v = Vec::with_capacity(x.len() + 1);
        v.push(xi.clone());
        v.extend_from_slice(x);
        v
    }

    pub fn product(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let (s, v) = af_product(&self.g, &self.f, (&a[0], &a[1..]), (&b[0], &b[1..]));
        Self::element(&s, &v)
    }

    pub fn commutator(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        exactla::sub_vec(&self.product(a, b), &self.product(b, a))
    }

    pub fn left_mult(&self, k: usize) -> &Mat {
        &self.left[k]
    }

    pub fn right_mult(&self, k: usize) -> &Mat {
        &self.right[k]
    }

    fn closure_operator(&self) -> ClosureOperator {
        let gens: Vec<Mat> = self.left.iter().chain(&self.right).cloned().collect();
        ClosureOperator::new(&gens, self.dim())
    }

    /// Two-sided ideal generated by `v`.
    pub fn ideal_closure(&self, v: &[Rat]) -> Subspace {
        self.closure_operator().closure(&[v.to_vec()])
    }

    /// Closed under left and right multiplication by every basis element.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let vs = s.basis_vectors();
        self.left.iter().chain(&self.right).all(|m| vs.iter().all(|v| s.contains_vector(&m.mul_vec(v))))
    }

    /// A non-zero proper ideal.
    pub fn is_proper_ideal(&self, s: &Subspace) -> bool {
        s.ambient_dim() == self.dim() && !s.is_zero() && !s.is_full() && self.is_ideal(s)
    }

    /// Runs the three stages described on [`SimplicityVerdict`]. `budget` is
    /// the number of seeded random generators tried in stage 2.
    pub fn simplicity_check(&self, seed: u64, budget: usize) -> Result<SimplicityVerdict> {
        self.simplicity_check_with(seed, budget, DEFAULT_SIGN_CAP)
    }

    pub fn simplicity_check_with(&self, seed: u64, budget: usize, sign_cap: usize) -> Result<SimplicityVerdict> {
        let n = self.g.dim();
        if n <= 1 {
            return Err(Error::Precondition("simplicity check needs dim g > 1".into()));
        }
        let d = n + 1;
        let mut stats = SearchStats::default();

        let rad = self.f.radical();
        if !rad.is_zero() {
            let lifted: Vec<Vec<Rat>> = rad
                .basis_vectors()
                .iter()
                .map(|v| Self::element(&Rat::zero(), v))
                .collect();
            let witness = Subspace::span(d, &lifted).expect("lengths match");
            if !self.is_proper_ideal(&witness) {
                return Err(Error::TheoremViolation(
                    "{0} × rad f is not a proper two-sided ideal".into(),
                ));
            }
            return Ok(SimplicityVerdict {
                verdict: Verdict::NotSimple,
                stage: 1,
                witness: Some(witness),
                stats,
                theorem_applies: false,
            });
        }

        let op = self.closure_operator();
        let proper = |v: &Vec<Rat>| {
            let k = op.closure_dim(std::slice::from_ref(v));
            (k > 0 && k < d).then(|| v.clone())
        };

        let basis: Vec<Vec<Rat>> = (0..d).map(|k| exactla::unit_vec(d, k)).collect();
        let signs = sign_vectors(d, sign_cap);
        let mut rng = StdRng::seed_from_u64(seed);
        let random: Vec<Vec<Rat>> = (0..budget)
            .map(|_| (0..d).map(|_| exactla::random_rat(&mut rng, 10)).collect())
            .collect();

        let mut found = None;
        for (batch, counter) in [
            (&basis, &mut stats.basis_closures),
            (&signs, &mut stats.sign_closures),
            (&random, &mut stats.random_closures),
        ] {
            match batch.par_iter().enumerate().find_map_first(|(i, v)| proper(v).map(|w| (i, w))) {
                Some((i, v)) => {
                    *counter = i + 1;
                    found = Some(v);
                    break;
                }
                None => *counter = batch.len(),
            }
        }

        let theorem_applies = self.g.is_nilpotent();
        if let Some(v) = found {
            let witness = op.closure(&[v]);
            debug_assert!(self.is_proper_ideal(&witness));
            return Ok(SimplicityVerdict {
                verdict: Verdict::NotSimple,
                stage: 2,
                witness: Some(witness),
                stats,
                theorem_applies,
            });
        }
        let (verdict, stage) = if theorem_applies {
            (Verdict::Simple, 3)
        } else {
            (Verdict::ProbablySimple, 2)
        };
        Ok(SimplicityVerdict {
            verdict,
            stage,
            witness: None,
            stats,
            theorem_applies,
        })
    }

    /// `A_f / Q(1,0)` under the commutator bracket, compared with `g` via
    /// `(ξ,x) + Q(1,0) ↦ x`.
    pub fn commutator_quotient_iso(&self) -> QuotientIso {
        let n = self.g.dim();
        let d = n + 1;
        let e = |k| exactla::unit_vec(d, k);
        let unit_central = (0..d).all(|k| exactla::is_zero_vec(&self.commutator(&e(0), &e(k))[1..]));
        let mut consts = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.commutator(&e(i + 1), &e(j + 1));
                for (k, v) in c[1..].iter().enumerate() {
                    if !v.is_zero() {
                        consts.push(StructureConstant::new(i, j, k, v.clone()));
                    }
                }
            }
        }
        let quotient = LieAlgebra::new_unchecked(self.g.basis_names().to_vec(), consts)
            .expect("indices come from g");
        let failure = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| quotient.bracket_basis(i, j) != self.g.bracket_basis(i, j));
        let mut map = Mat::zeros(n, d);
        for k in 0..n {
            map[(k, k + 1)] = exactla::one();
        }
        QuotientIso {
            quotient,
            map,
            unit_central,
            failure,
        }
    }
}

/// Default number of non-zero `0/±1` generators tried in stage 2.
pub const DEFAULT_SIGN_CAP: usize = 256;

// non-zero vectors with entries in {0, 1, -1}, in base-3 counter order
fn sign_vectors(d: usize, cap: usize) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    let mut digits = vec![0u8; d];
    loop {
        let mut k = 0;
        while k < d && digits[k] == 2 {
            digits[k] = 0;
            k += 1;
        }
        if k == d || out.len() >= cap {
            return out;
        }
        digits[k] += 1;
        out.push(
            digits
                .iter()
                .map(|&t| match t {
                    0 => exactla::zero(),
                    1 => exactla::one(),
                    _ => -exactla::one(),
                })
                .collect(),
        );
    }
}

/// `(ξη + f(x,y), ξy + ηx + ½[x,y])`.
pub fn af_product(
    g: &LieAlgebra,
    f: &BilinearForm,
    (xi, x): (&Rat, &[Rat]),
    (eta, y): (&Rat, &[Rat]),
) -> (Rat, Vec<Rat>) {
    assert!(x.len() == g.dim() && y.len() == g.dim(), "vectors must lie in g");
    let scalar = xi * eta + f.eval(x, y);
    let mut v = exactla::scale_vec(xi, y);
    exactla::axpy(&mut v, eta, x);
    exactla::axpy(&mut v, &exactla::ratio(1, 2), &g.bracket_unchecked(x, y));
    (scalar, v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Simple,
    NotSimple,
    ProbablySimple,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Simple => "simple",
            Verdict::NotSimple => "not_simple",
            Verdict::ProbablySimple => "probably_simple",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub basis_closures: usize,
    pub sign_closures: usize,
    pub random_closures: usize,
}

impl SearchStats {
    pub fn total(&self) -> usize {
        self.basis_closures + self.sign_closures + self.random_closures
    }
}

/// Outcome of [`UnitalAlgebra::simplicity_check`].
///
/// Stage 1 returns `{0} × rad f` when `f` is degenerate. Stage 2 searches
/// closures of basis, sign and seeded random vectors; a proper closure is an
/// exact witness. Only the non-simple side is certified by a witness: when
/// the search finds nothing, the answer is `Simple` (stage 3) if `g` is
/// nilpotent, since `f` is then non-degenerate and the theorem applies, and
/// `ProbablySimple` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicityVerdict {
    pub verdict: Verdict,
    pub stage: u8,
    pub witness: Option<Subspace>,
    pub stats: SearchStats,
    /// `g` is nilpotent, so a witness at stage 2 would contradict the theorem.
    pub theorem_applies: bool,
}

impl SimplicityVerdict {
    /// A stage-2 witness against a non-degenerate `f` on nilpotent `g`.
    pub fn contradicts_theorem(&self) -> bool {
        self.stage == 2 && self.verdict == Verdict::NotSimple && self.theorem_applies
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientIso {
    pub quotient: LieAlgebra,
    /// `dim g × dim A`, dropping the scalar coordinate.
    pub map: Mat,
    /// `[(1,0), A] ⊆ Q(1,0)`, so the quotient bracket is well defined.
    pub unit_central: bool,
    /// First basis pair where the quotient bracket differs from `g`.
    pub failure: Option<(usize, usize)>,
}

impl QuotientIso {
    pub fn verified(&self) -> bool {
        self.unit_central && self.failure.is_none()
    }
}

/// A non-zero invariant symmetric form on a nilpotent algebra.
pub fn nonzero_invariant_form_exists(g: &LieAlgebra) -> Result<BilinearForm> {
    if g.dim() == 0 {
        return Err(Error::Precondition("the algebra is zero".into()));
    }
    if !g.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    invforms::invariant_forms(g)
        .basis
        .into_iter()
        .next()
        .ok_or_else(|| Error::TheoremViolation("no non-zero invariant form on a nilpotent algebra".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::samples;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    fn h3_degenerate() -> UnitalAlgebra {
        let f = BilinearForm::new(Mat::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])).unwrap();
        UnitalAlgebra::new(samples::heisenberg(), f).unwrap()
    }

    fn example(xi: i64) -> UnitalAlgebra {
        UnitalAlgebra::new(samples::example_algebra(&rat(xi)), samples::example_metric(&rat(xi))).unwrap()
    }

    fn random_elem(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rat> {
        (0..d).map(|_| rat(rng.random_range(-5..=5))).collect()
    }

    #[test]
    fn product_formula() {
        let a = example(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (u, v) = (random_elem(&mut rng, 10), random_elem(&mut rng, 10));
            assert_eq!(a.product(&a.unit(), &u), u);
            assert_eq!(a.product(&u, &a.unit()), u);
            let br = a.lie_algebra().bracket(&u[1..], &v[1..]).unwrap();
            assert_eq!(a.commutator(&u, &v), UnitalAlgebra::element(&rat(0), &br));
            let (x, y) = (&u[1..], &v[1..]);
            let pure = a.product(&UnitalAlgebra::element(&rat(0), x), &UnitalAlgebra::element(&rat(0), y));
            assert_eq!(pure[0], a.form().eval(x, y));
            assert_eq!(pure[1..], exactla::scale_vec(&exactla::ratio(1, 2), &br)[..]);
        }
    }

    #[test]
    fn closures() {
        let a = example(1);
        assert!(a.ideal_closure(&a.unit()).is_full());
        assert!(a.ideal_closure(&exactla::unit_vec(10, 1)).is_full());
        let h = h3_degenerate();
        let c = h.ideal_closure(&exactla::unit_vec(4, 3));
        assert_eq!(c, Subspace::coordinate(4, &[3]));
        assert!(h.is_proper_ideal(&c));
        // (1, x3) has ξ² = 1 ≠ f(x3, x3) = 0, so it generates everything
        let mixed = vec![rat(1), rat(0), rat(0), rat(1)];
        assert!(h.ideal_closure(&mixed).is_full());
    }

    #[test]
    fn degenerate_form_gives_radical_witness() {
        let v = h3_degenerate().simplicity_check(0, 10).unwrap();
        assert_eq!(v.verdict, Verdict::NotSimple);
        assert_eq!(v.stage, 1);
        assert_eq!(v.witness, Some(Subspace::coordinate(4, &[3])));
    }

    #[test]
    fn metric_gives_simple() {
        let v = example(1).simplicity_check(7, 200).unwrap();
        assert_eq!(v.verdict, Verdict::Simple);
        assert_eq!(v.stage, 3);
        assert_eq!(v.stats.random_closures, 200);
        assert!(!v.contradicts_theorem());

        let ab = UnitalAlgebra::new(LieAlgebra::abelian(2), BilinearForm::identity(2)).unwrap();
        let v = ab.simplicity_check(1, 100).unwrap();
        assert_eq!(v.verdict, Verdict::Simple);
        assert_eq!(v.stats.sign_closures, 26);
    }

    #[test]
    fn sign_vectors_enumerate_all_nonzero() {
        assert_eq!(sign_vectors(3, 1000).len(), 26);
        assert_eq!(sign_vectors(3, 5).len(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(UnitalAlgebra::new(LieAlgebra::abelian(1), BilinearForm::identity(1))
            .unwrap()
            .simplicity_check(0, 1)
            .is_err());
        assert!(matches!(
            UnitalAlgebra::new(samples::heisenberg(), BilinearForm::identity(3)),
            Err(Error::NotInvariant)
        ));
        assert!(UnitalAlgebra::new(samples::heisenberg(), BilinearForm::zero(3)).is_err());
    }

    #[test]
    fn quotient_recovers_g() {
        for a in [h3_degenerate(), example(1), example(0)] {
            let q = a.commutator_quotient_iso();
            assert!(q.verified());
            assert_eq!(q.quotient.dim(), a.lie_algebra().dim());
            assert_eq!(q.quotient.constants(), a.lie_algebra().constants());
        }
    }

    #[test]
    fn invariant_form_exists() {
        let f = nonzero_invariant_form_exists(&samples::heisenberg()).unwrap();
        assert!(!f.is_zero());
        assert!(invforms::is_invariant(&samples::heisenberg(), &f));
        let space = invforms::invariant_forms(&samples::example_algebra(&rat(1)));
        assert!(space.contains(&samples::example_metric(&rat(1))));
        assert!(matches!(
            nonzero_invariant_form_exists(&non_nilpotent()),
            Err(Error::NotNilpotent)
        ));
    }

    fn non_nilpotent() -> LieAlgebra {
        // [x1, x2] = x2
        LieAlgebra::new(
            vec!["x1".into(), "x2".into()],
            vec![StructureConstant::new(0, 1, 1, rat(1))],
        )
        .unwrap()
    }

    #[test]
    fn non_nilpotent_degenerate_form() {
        // f(x1, x1) = 1 is invariant: [x1,x2] = x2 and f vanishes on x2,
        // so f is degenerate and stage 1 answers
        let f = BilinearForm::new(Mat::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        let a = UnitalAlgebra::new(non_nilpotent(), f).unwrap();
        let v = a.simplicity_check(0, 10).unwrap();
        assert_eq!(v.stage, 1);
        assert!(!v.theorem_applies);
    }

    #[test]
    fn sl2_trace_form_is_only_probably_simple() {
        // basis h, e, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
        let sl2 = LieAlgebra::new(
            vec!["h".into(), "e".into(), "f".into()],
            vec![
                StructureConstant::new(0, 1, 1, rat(2)),
                StructureConstant::new(0, 2, 2, rat(-2)),
                StructureConstant::new(1, 2, 0, rat(1)),
            ],
        )
        .unwrap();
        let trace = BilinearForm::new(Mat::from_i64(&[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
        let v = UnitalAlgebra::new(sl2, trace).unwrap().simplicity_check(5, 50).unwrap();
        assert_eq!(v.verdict, Verdict::ProbablySimple);
        assert_eq!(v.stage, 2);
        assert!(v.witness.is_none());
    }

    #[test]
    fn zero_random_vector_is_not_a_witness() {
        // seed 20 draws the zero vector among its first 10^4 random vectors
        let f = BilinearForm::new(Mat::from_i64(&[&[1, -2, 0], &[-2, -1, 0], &[0, 0, 1]])).unwrap();
        let a = UnitalAlgebra::new(LieAlgebra::abelian(3), f).unwrap();
        let v = a.simplicity_check(20, 10_000).unwrap();
        assert_eq!(v.verdict, Verdict::Simple);
        assert_eq!(v.stats.random_closures, 10_000);
    }
}
