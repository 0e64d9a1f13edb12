use super::*;
use crate::error::{Error, ExtensionFailure};
use crate::exactla::{rat, scale_vec, unit_vec, Mat, Rat};
use crate::invforms::{self, BilinearForm};
use crate::samples::{self, example_b_a, example_extension};

fn u(k: usize) -> Vec<Rat> {
    unit_vec(3, k)
}

/// `L(x_j) = ξ u_j`.
fn reference_l(xi: &Rat) -> Cochain {
    Cochain::from_matrix(&Mat::identity(3).scale(xi))
}

#[test]
fn worked_example_differentials() {
    let xi = rat(1);
    let data = example_extension(&xi);
    let l = reference_l(&xi);
    let dl = data.d_a(&l);
    assert_eq!(dl.eval(&[0, 1]), scale_vec(&-xi.clone(), &u(2)));
    assert!(crate::exactla::is_zero_vec(&dl.eval(&[1, 2])));
    assert!(crate::exactla::is_zero_vec(&dl.eval(&[2, 0])));

    assert!(data.d_rho(&data.mu).is_zero());
    assert!(data.e_phi(&data.lambda).is_zero());
    let (a, i) = data.d_r(&data.lambda, &data.mu);
    assert!(a.is_zero() && i.is_zero());

    // e_φ(L)(x1,x2) = φ(x1)(u2) - φ(x2)(u1) = 2α3 at ξ = 1
    assert_eq!(data.e_phi(&l).eval(&[0, 1]), scale_vec(&rat(2), &u(2)));
}

#[test]
fn zero_phi_gives_zero_e_phi() {
    let data = ExtensionData::trivial(samples::heisenberg(), 2, 3);
    let c = Cochain::from_fn(3, 1, 2, |t| vec![rat(t[0] as i64 + 1), rat(7)]);
    assert!(data.e_phi(&c).is_zero());
}

#[test]
fn worked_example_bracket_table() {
    let g = samples::example_algebra(&rat(1));
    assert_eq!(g.dim(), 9);
    let e = |k| unit_vec(9, k);
    let v = |pairs: &[(usize, i64)]| {
        let mut out = crate::exactla::zero_vec(9);
        for &(k, c) in pairs {
            out[k] = rat(c);
        }
        out
    };
    let br = |a: usize, b: usize| g.bracket(&e(a), &e(b)).unwrap();
    // [x1,x2] = x3 + 2u3 - 2α3, [x2,x3] = u1 - 2α1, [x3,x1] = u2 - 2α2
    assert_eq!(br(0, 1), v(&[(2, 1), (5, 2), (8, -2)]));
    assert_eq!(br(1, 2), v(&[(3, 1), (6, -2)]));
    assert_eq!(br(2, 0), v(&[(4, 1), (7, -2)]));
    // [x1,u2] = -[x2,u1] = α3, [x2,u3] = -[x3,u2] = α1, [x3,u1] = -[x1,u3] = α2
    assert_eq!(br(0, 4), e(8));
    assert_eq!(br(1, 3), v(&[(8, -1)]));
    assert_eq!(br(1, 5), e(6));
    assert_eq!(br(2, 4), v(&[(6, -1)]));
    assert_eq!(br(2, 3), e(7));
    assert_eq!(br(0, 5), v(&[(7, -1)]));
    // [x1,α3] = -α2, [x2,α3] = α1
    assert_eq!(br(0, 8), v(&[(7, -1)]));
    assert_eq!(br(1, 8), e(6));
    assert!(g.validate().is_ok());
}

#[test]
fn tampered_lambda_is_refused() {
    let data = example_extension(&rat(1));
    let mut lambda = data.lambda.clone();
    // an extra term in λ(x1,x3) breaks e_φ(λ) + d_ρ(μ) = 0 at (x1,x2,x3)
    lambda.set(&[0, 2], u(0));
    let bad = data.with_cocycle(lambda, data.mu.clone());
    match bad.build() {
        Err(Error::InvalidExtension(ExtensionFailure::NotCocycle { tuple, .. })) => {
            assert_eq!(tuple, vec![0, 1, 2]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn lambda_phi_of_worked_example() {
    let data = example_extension(&rat(1));
    let lp = lambda_phi(&data, &example_b_a()).unwrap();
    assert_eq!(lp.get(0, 1), u(2).as_slice());
    assert_eq!(lp.get(1, 2), u(0).as_slice());
    assert_eq!(lp.get(2, 0), u(1).as_slice());
    assert_eq!(lp.get(1, 0), scale_vec(&rat(-1), &u(2)).as_slice());
    assert!(lp.is_skew());

    let trivial = ExtensionData::trivial(samples::heisenberg(), 2, 3);
    let lp0 = lambda_phi(&trivial, &Mat::identity(2)).unwrap();
    assert!(lp0.to_cochain().unwrap().is_zero());
    assert!(lambda_phi(&trivial, &Mat::zeros(2, 2)).is_err());
}

#[test]
fn metric_conditions_at_xi_zero() {
    let data = example_extension(&rat(0));
    let lp = lambda_phi(&data, &example_b_a()).unwrap().to_cochain().unwrap();
    let fixed = data.with_cocycle(lp, data.mu.clone());
    let cond = check_metric_conditions(&fixed, &example_b_a()).unwrap();
    assert!(cond.both());
    let b = assemble_metric(&fixed, &example_b_a()).unwrap();
    assert!(invforms::is_metric(&fixed.build().unwrap(), &b));
    // pairing and isotropy of the assembled gram
    for j in 0..3 {
        for k in 0..3 {
            let d = if j == k { rat(1) } else { rat(0) };
            assert_eq!(b.entry(j, 6 + k), &d);
            assert_eq!(b.entry(3 + j, 3 + k), &d);
            assert_eq!(b.entry(j, k), &rat(0));
        }
    }
}

#[test]
fn non_cyclic_mu_is_detected() {
    let h = samples::heisenberg();
    let mut mu = Cochain::zero(3, 2, 3);
    mu.set(&[0, 1], u(0));
    assert!(!mu_is_cyclic(&mu));
    let data = ExtensionData::trivial(h, 0, 3).with_cocycle(Cochain::zero(3, 2, 0), mu);
    let cond = check_metric_conditions(&data, &Mat::zeros(0, 0)).unwrap();
    assert!(!cond.mu_cyclic);
}

#[test]
fn kernel_criterion_fails_for_nonzero_xi() {
    for xi in [rat(1), rat(2), rat(-3)] {
        let data = example_extension(&xi);
        assert!(solve_kernel_criterion(&data, &example_b_a()).unwrap().is_none());
    }
    let sol = solve_kernel_criterion(&example_extension(&rat(0)), &example_b_a())
        .unwrap()
        .unwrap();
    assert!(sol.l.is_zero());
}

#[test]
fn cyclic_criterion_on_worked_example() {
    for xi in [rat(0), rat(1), rat(2), crate::exactla::ratio(-1, 3)] {
        let data = example_extension(&xi);
        let b_a = example_b_a();
        let sol = solve_cyclic_criterion(&data, &b_a).unwrap().expect("criterion applies");
        assert!(satisfies_criterion(&data, &b_a, &sol.l, Criterion::Cyclic).unwrap());
        let paper = reference_l(&xi);
        assert!(satisfies_criterion(&data, &b_a, &paper, Criterion::Cyclic).unwrap());
        // paper's L lies in the affine solution set
        let diff = paper.sub(&sol.l).coords();
        assert!(sol.freedom.contains_vector(&diff));
        let g = data.build().unwrap();
        assert!(invforms::is_metric(&g, &sol.metric));

        // B_a(λ_φ(x1,x2), L(x3)) = ξ
        let lp = lambda_phi(&data, &b_a).unwrap();
        assert_eq!(b_a.bilinear(lp.get(0, 1), paper.value(&[2])), xi);
    }
}

#[test]
fn reference_l_transports_to_the_corrected_metric() {
    for xi in [rat(0), rat(1), rat(2)] {
        let data = example_extension(&xi);
        let l = reference_l(&xi);
        let zero = Cochain::zero(3, 1, 3);
        let target = shift_by(&data, &l, &zero);
        let report = cohomologous_iso(&data, &target, &l, &zero).unwrap();
        assert!(report.verified());
        let b = assemble_metric(&target, &example_b_a()).unwrap();
        let pulled = b.pullback(&report.matrix);
        assert_eq!(pulled, samples::example_metric(&xi));
        assert!(invforms::is_metric(&data.build().unwrap(), &pulled));
    }
}

#[test]
fn listed_metric_is_invariant_only_at_zero() {
    assert!(invforms::is_metric(
        &samples::example_algebra(&rat(0)),
        &samples::example_listed_metric(&rat(0))
    ));
    assert!(!invforms::is_invariant(
        &samples::example_algebra(&rat(1)),
        &samples::example_listed_metric(&rat(1))
    ));
    // but its listed entries are attained inside the invariant-form space
    let g = samples::example_algebra(&rat(1));
    let space = invforms::invariant_forms(&g);
    let (member, _) = space
        .with_entries(&samples::example_listed_entries(&rat(1)))
        .unwrap();
    assert!(invforms::is_invariant(&g, &member));
    assert!(space.contains(&samples::example_metric(&rat(1))));
}

#[test]
fn identity_iso() {
    let data = example_extension(&rat(1));
    let l = Cochain::zero(3, 1, 3);
    let m = Cochain::zero(3, 1, 3);
    let r = cohomologous_iso(&data, &data, &l, &m).unwrap();
    assert!(r.verified());
    assert_eq!(r.matrix, Mat::identity(9));
    // a wrong target is a precondition failure
    let other = example_extension(&rat(2));
    assert!(matches!(
        cohomologous_iso(&data, &other, &l, &m),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn extraction_at_xi_zero_recovers_tables() {
    let xi = rat(0);
    let g = samples::example_algebra(&xi);
    let b = samples::example_metric(&xi);
    let ex = extract_extension_data(&g, &b).unwrap();
    assert_eq!(ex.basis, Mat::identity(9));
    let want = example_extension(&xi);
    assert_eq!(ex.data.lambda, want.lambda);
    assert_eq!(ex.data.mu, want.mu);
    assert_eq!(ex.data.phi, want.phi);
    assert_eq!(ex.data.rho, want.rho);
    assert_eq!(ex.b_a, Mat::identity(3));
}

#[test]
fn extraction_round_trip() {
    for xi in [rat(1), rat(2)] {
        let g = samples::example_algebra(&xi);
        let b = samples::example_metric(&xi);
        let ex = extract_extension_data(&g, &b).unwrap();
        assert!(ex.witt.verify(&b));
        let rebuilt = ex.data.build().unwrap();
        assert_eq!(rebuilt.constants(), ex.decomposed.constants());
        assert!(check_metric_conditions(&ex.data, &ex.b_a).unwrap().both());
        assert!(solve_kernel_criterion(&ex.data, &ex.b_a).unwrap().is_some());
    }
}

#[test]
fn heisenberg_cannot_be_decomposed() {
    let h = samples::heisenberg();
    assert!(extract_extension_data(&h, &BilinearForm::identity(3)).is_err());
}

#[test]
fn witt_at_xi_zero_is_unchanged_and_corrected_at_one() {
    let g0 = samples::example_algebra(&rat(0));
    let w0 = invforms::witt_decomposition(&g0, &samples::example_metric(&rat(0))).unwrap();
    assert_eq!(w0.change_of_basis(), Mat::identity(9));
    assert_eq!(w0.phi, Mat::identity(3));

    let g1 = samples::example_algebra(&rat(1));
    let b1 = samples::example_metric(&rat(1));
    let w1 = invforms::witt_decomposition(&g1, &b1).unwrap();
    assert!(w1.verify(&b1));
    // x_j corrected by +u_j
    let mut x1 = unit_vec(9, 0);
    x1[3] = rat(1);
    assert_eq!(w1.h[0], x1);
}

#[test]
fn worked_example_series_and_ideals() {
    use crate::exactla::Subspace;
    let g = samples::example_algebra(&rat(1));
    let s = g.central_series();
    let c = |idx: &[usize]| Subspace::coordinate(9, idx);
    let span = |rows: &[&[i64]]| {
        let vs: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Subspace::span(9, &vs).unwrap()
    };
    // u3 - α3 is central: [x1,u3] = [x1,α3] = -α2, [x2,u3] = [x2,α3] = α1,
    // and x3 acts trivially on both. Values cross-checked with an
    // independent symbolic computation.
    assert_eq!(s.upper.len(), 5);
    assert_eq!(s.upper_term(1), &span(&[&[0, 0, 0, 0, 0, 1, 0, 0, -1], &[0, 0, 0, 0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 0, 0, 0, 1, 0]]));
    assert_eq!(s.upper_term(2), &c(&[5, 6, 7, 8]));
    assert_eq!(s.upper_term(3), &c(&[3, 4, 5, 6, 7, 8]));
    assert_eq!(s.upper_term(4), &c(&[2, 3, 4, 5, 6, 7, 8]));
    assert_eq!(s.upper_term(5), &Subspace::full(9));
    assert_eq!(s.lower_term(1), &span(&[&[0, 0, 1, 0, 0, 2, 0, 0, 0]]).sum(&c(&[3, 4, 6, 7, 8])).unwrap());
    assert_eq!(s.lower_term(2), &c(&[3, 4, 6, 7, 8]));
    assert_eq!(s.lower_term(3), &c(&[6, 7, 8]));
    assert_eq!(s.lower_term(4), &c(&[6, 7]));
    assert!(s.lower_term(5).is_zero());
    assert_eq!(s.nilpotency_class, Some(5));

    let ideals = g.canonical_ideals().unwrap();
    assert_eq!(ideals.i_g, c(&[6, 7, 8]));
    assert_eq!(ideals.j_g, c(&[3, 4, 5, 6, 7, 8]));
    assert!(g.verify_canonical_ideals().unwrap().all_pass());
    let perp = invforms::orthogonal_complement(&samples::example_metric(&rat(1)), &ideals.i_g).unwrap();
    assert_eq!(perp, ideals.j_g);
}
