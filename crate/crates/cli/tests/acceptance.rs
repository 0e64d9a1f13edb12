//! End-to-end acceptance suite. Each test prints one `criterion N: PASS` or
//! `criterion N: FAIL` line and fails when any of its checks fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use quadlie_cli::run_args;
use quadlie_core::current::{current_algebra, gamma_operators, tensor_form, pairing_check, AssocAlgebra};
use quadlie_core::exactla::{self, rat, Mat, Rat, Subspace};
use quadlie_core::extension::{
    cohomologous_iso, psi_matrix, satisfies_criterion, shift_by, solve_kernel_criterion, solve_cyclic_criterion, Cochain, Criterion,
};
use quadlie_core::invforms::{self, BilinearForm, MetricSearch, MetricSearchConfig, NoMetricCertificate};
use quadlie_core::liealg::LieAlgebra;
use quadlie_core::random::{
    perturb_for_cyclic, perturb_for_kernel, random_cochain, random_element, random_extension_data,
    random_quadratic_data,
};
use quadlie_core::samples;
use quadlie_core::unital::{nonzero_invariant_form_exists, UnitalAlgebra, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn report(n: usize, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {n}: PASS ({what})");
    } else {
        println!("criterion {n}: FAIL ({what})");
        for f in failures.iter().take(20) {
            println!("  {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:#?}");
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["quadlie"];
    full.extend_from_slice(args);
    full.push("--json");
    let (code, out, err) = run_args(full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: bad JSON ({e}); stderr {err}"));
    (code, v)
}

fn rat_of(v: &Value) -> Rat {
    exactla::parse_rat(v.as_str().expect("rational string")).expect("rational")
}

fn mat_of(v: &Value) -> Mat {
    let rows: Vec<Vec<Rat>> = v
        .as_array()
        .expect("rows")
        .iter()
        .map(|r| r.as_array().expect("row").iter().map(rat_of).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    Mat::from_rows(cols, &rows).expect("rectangular")
}

fn subspace_of(n: usize, v: &Value) -> Subspace {
    let m = mat_of(&v["basis"]);
    Subspace::span(n, &m.row_vecs()).expect("ambient")
}

fn same_space(a: &Subspace, b: &Subspace) -> bool {
    a.contains(b).unwrap() && b.contains(a).unwrap()
}

// Worked example basis: x1..x3 = 0..2, u1..u3 = 3..5, alpha1..alpha3 = 6..8.
const X: usize = 0;
const U: usize = 3;
const A: usize = 6;

type BracketTable = Vec<(usize, usize, Vec<(usize, Rat)>)>;

/// The worked-example bracket table, written out by hand.
fn example_oracle(xi: &Rat) -> LieAlgebra {
    let one = rat(1);
    let names: Vec<String> = ["x1", "x2", "x3", "u1", "u2", "u3", "alpha1", "alpha2", "alpha3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let two_xi = rat(2) * xi;
    let table: BracketTable = vec![
        (X, X + 1, vec![(X + 2, one.clone()), (U + 2, &one + xi), (A + 2, -two_xi.clone())]),
        (X + 1, X + 2, vec![(U, one.clone()), (A, -two_xi.clone())]),
        (X + 2, X, vec![(U + 1, one.clone()), (A + 1, -two_xi.clone())]),
        (X, U + 1, vec![(A + 2, one.clone())]),
        (X + 1, U, vec![(A + 2, -one.clone())]),
        (X + 1, U + 2, vec![(A, one.clone())]),
        (X + 2, U + 1, vec![(A, -one.clone())]),
        (X + 2, U, vec![(A + 1, one.clone())]),
        (X, U + 2, vec![(A + 1, -one.clone())]),
        (X, A + 2, vec![(A + 1, -one.clone())]),
        (X + 1, A + 2, vec![(A, one.clone())]),
    ];
    LieAlgebra::from_brackets(names, |i, j| {
        let mut v = exactla::zero_vec(9);
        for (a, b, terms) in &table {
            let sign = if (*a, *b) == (i, j) {
                rat(1)
            } else if (*b, *a) == (i, j) {
                rat(-1)
            } else {
                continue;
            };
            for (k, c) in terms {
                v[*k] += &sign * c;
            }
        }
        v
    })
    .expect("oracle table")
}

fn bracket_mismatches(expected: &LieAlgebra, got: &LieAlgebra) -> Vec<String> {
    let mut out = Vec::new();
    if expected.dim() != got.dim() {
        return vec![format!("dimension {} vs {}", got.dim(), expected.dim())];
    }
    for i in 0..expected.dim() {
        for j in i + 1..expected.dim() {
            if expected.bracket_basis(i, j) != got.bracket_basis(i, j) {
                out.push(format!("bracket ({i},{j}) differs"));
            }
        }
    }
    out
}

/// `B([e_i,e_j],e_k) + B(e_j,[e_i,e_k]) = 0` for all basis triples, and `B`
/// symmetric, checked entry by entry.
fn oracle_invariant(g: &LieAlgebra, b: &Mat) -> bool {
    let n = g.dim();
    if b.rows() != n || b.cols() != n || !b.is_symmetric() {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let ij = g.bracket_basis(i, j);
            for k in 0..n {
                let ik = g.bracket_basis(i, k);
                let lhs: Rat = (0..n).map(|m| &ij[m] * &b[(m, k)]).sum();
                let rhs: Rat = (0..n).map(|m| &b[(j, m)] * &ik[m]).sum();
                if lhs + rhs != rat(0) {
                    return false;
                }
            }
        }
    }
    true
}

fn oracle_metric(g: &LieAlgebra, b: &Mat) -> bool {
    oracle_invariant(g, b) && b.rank() == g.dim()
}

#[test]
fn criterion_1_worked_example() {
    let mut failures = Vec::new();

    // Bracket table: the fixture through `extend`, and the built-in example.
    for xi in ["0", "1", "2"] {
        let x = exactla::parse_rat(xi).unwrap();
        let oracle = example_oracle(&x);
        let (code, v) = cli_json(&["extend", "--input", &fixture("example21.ext.json"), "--xi", xi]);
        if code != 0 {
            failures.push(format!("extend at xi={xi} exited {code}"));
            continue;
        }
        let names: Vec<String> = v["basis_names"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect();
        let consts = v["constants"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                quadlie_core::StructureConstant::new(
                    c["i"].as_u64().unwrap() as usize,
                    c["j"].as_u64().unwrap() as usize,
                    c["k"].as_u64().unwrap() as usize,
                    rat_of(&c["c"]),
                )
            })
            .collect();
        let from_file = LieAlgebra::new(names, consts).expect("extend output is a Lie algebra");
        for m in bracket_mismatches(&oracle, &from_file) {
            failures.push(format!("fixture at xi={xi}: {m}"));
        }
        for m in bracket_mismatches(&oracle, &samples::example_algebra(&x)) {
            failures.push(format!("built-in example at xi={xi}: {m}"));
        }
    }

    // End to end at xi = 1.
    let (code, v) = cli_json(&["reproduce-example", "--xi", "1"]);
    if code != 0 {
        failures.push(format!("reproduce-example --xi 1 exited {code}"));
    }
    for (k, ok) in v["checks"].as_object().expect("checks").iter() {
        if ok != &Value::Bool(true) {
            failures.push(format!("reproduce-example check {k} failed"));
        }
    }
    let coord = |idx: &[usize]| Subspace::coordinate(9, idx);
    let h_dual = coord(&[A, A + 1, A + 2]);
    let a_h_dual = coord(&[U, U + 1, U + 2, A, A + 1, A + 2]);
    let z1 = coord(&[A, A + 1]);
    let z4 = coord(&[X + 2, U, U + 1, U + 2, A, A + 1, A + 2]);
    let expected_upper = [
        ("Z1", z1.clone()),
        ("Z2", h_dual.clone()),
        ("Z3", a_h_dual.clone()),
        ("Z4", z4.clone()),
        ("Z5", Subspace::full(9)),
    ];
    let expected_lower = [
        ("g^1", z4),
        ("g^2", a_h_dual.clone()),
        ("g^3", h_dual.clone()),
        ("g^4", z1),
        ("g^5", Subspace::zero(9)),
    ];
    let upper = v["series"]["upper"].as_array().expect("upper series");
    let lower = v["series"]["lower"].as_array().expect("lower series");
    for (k, (name, want)) in expected_upper.iter().enumerate() {
        match upper.get(k) {
            Some(term) if same_space(&subspace_of(9, term), want) => {}
            Some(term) => failures.push(format!(
                "{name}: computed {} (dim {}), expected dim {}",
                term["span"].as_str().unwrap_or("?"),
                term["dim"],
                want.dim()
            )),
            None => failures.push(format!("{name}: missing")),
        }
    }
    for (k, (name, want)) in expected_lower.iter().enumerate() {
        match lower.get(k + 1) {
            Some(term) if same_space(&subspace_of(9, term), want) => {}
            Some(term) => failures.push(format!(
                "{name}: computed {} (dim {}), expected dim {}",
                term["span"].as_str().unwrap_or("?"),
                term["dim"],
                want.dim()
            )),
            None => failures.push(format!("{name}: missing")),
        }
    }
    if v["series"]["nilpotency_class"] != 5 {
        failures.push(format!("nilpotency class {}", v["series"]["nilpotency_class"]));
    }
    if !same_space(&subspace_of(9, &v["i"]), &h_dual) {
        failures.push("i(g) is not h*".into());
    }
    if !same_space(&subspace_of(9, &v["J"]), &a_h_dual) {
        failures.push("J(g) is not a + h*".into());
    }

    // Metric existence and the listed entries at every xi.
    for xi in ["0", "1", "2"] {
        let x = exactla::parse_rat(xi).unwrap();
        let g = example_oracle(&x);
        let (code, v) = cli_json(&["reproduce-example", "--xi", xi]);
        if code != 0 {
            failures.push(format!("reproduce-example --xi {xi} exited {code}"));
            continue;
        }
        // L(x_j) = xi u_j lies in the affine solution set.
        let l = mat_of(&v["cyclic_criterion"]["L"]);
        let freedom: Vec<Vec<Rat>> = v["cyclic_criterion"]["freedom"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r.as_array().unwrap().iter().map(rat_of).collect())
            .collect();
        let diff = exactla::sub_vec(l.entries(), Mat::identity(3).scale(&x).entries());
        let free = Subspace::span(9, &freedom).expect("L coordinates");
        if !free.contains_vector(&diff) {
            failures.push(format!("xi={xi}: L(x_j) = xi u_j is not in the solution set"));
        }
        let b = mat_of(&v["metric"]);
        if !oracle_metric(&g, &b) {
            failures.push(format!("xi={xi}: reported metric is not an invariant metric"));
        }
        for (i, j, want) in samples::example_listed_entries(&x) {
            if b[(i, j)] != want {
                failures.push(format!("xi={xi}: B({i},{j}) = {} but listed {want}", b[(i, j)]));
            }
        }
        if invforms::invariant_forms(&g).with_entries(&samples::example_listed_entries(&x)).is_none() {
            failures.push(format!("xi={xi}: listed entries are not met by any invariant form"));
        }
    }
    report(1, "worked example end to end", &failures);
}

fn nilpotent_suite() -> Vec<LieAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e33a);
    let mut out: Vec<LieAlgebra> = (0..80)
        .map(|_| random_extension_data(&mut rng, 8).build().expect("random data builds"))
        .collect();
    out.extend((0..30).map(|_| random_quadratic_data(&mut rng, 8).algebra()));
    out
}

#[test]
fn criterion_2_canonical_ideals() {
    let mut failures = Vec::new();
    let mut with_metric = 0;
    let algebras = nilpotent_suite();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (n, g) in algebras.iter().enumerate() {
        let d = g.dim();
        if !(3..=8).contains(&d) {
            failures.push(format!("#{n}: dimension {d} outside 3..=8"));
        }
        let report = g.verify_canonical_ideals().expect("nilpotent");
        if !report.all_pass() {
            failures.push(format!("#{n}: {report:?}"));
        }
        let ideals = g.canonical_ideals().expect("nilpotent");
        let (i_g, j_g) = (&ideals.i_g, &ideals.j_g);
        // Independent checks of the clauses on basis vectors.
        if !j_g.contains(i_g).unwrap() {
            failures.push(format!("#{n}: i(g) not inside J(g)"));
        }
        let jv = j_g.basis_vectors();
        for a in &jv {
            for b in &jv {
                if !exactla::is_zero_vec(&g.bracket(a, b).unwrap()) {
                    failures.push(format!("#{n}: J(g) not abelian"));
                }
            }
            for k in 0..d {
                if !i_g.contains_vector(&g.bracket(&exactla::unit_vec(d, k), a).unwrap()) {
                    failures.push(format!("#{n}: [g, J(g)] not inside i(g)"));
                }
            }
        }
        if let MetricSearch::Found { form, .. } =
            invforms::find_invariant_metric(g, &MetricSearchConfig::default(), &mut rng)
        {
            with_metric += 1;
            let orth = i_g
                .basis_vectors()
                .iter()
                .all(|x| jv.iter().all(|y| form.eval(x, y) == rat(0)));
            if !(oracle_metric(g, form.gram()) && orth && i_g.dim() + j_g.dim() == d) {
                failures.push(format!("#{n}: i(g)^perp != J(g)"));
            }
        }
    }
    if algebras.len() < 100 {
        failures.push(format!("only {} algebras", algebras.len()));
    }
    if with_metric == 0 {
        failures.push("no algebra carried a metric, so clause (iv) was never exercised".into());
    }
    println!("  {} algebras, {} with a metric", algebras.len(), with_metric);
    report(2, "canonical ideals on random nilpotent algebras", &failures);
}

/// Degree-1 differential written out directly:
/// `dc(x,y) = ρ(x)c(y) - ρ(y)c(x) - c([x,y])`.
fn oracle_d1(h: &LieAlgebra, rho: Option<&[Mat]>, c: &Cochain) -> Cochain {
    let r = h.dim();
    Cochain::from_fn(r, 2, c.target_dim(), |t| {
        let (x, y) = (t[0], t[1]);
        let mut v = exactla::zero_vec(c.target_dim());
        if let Some(rho) = rho {
            v = exactla::add_vec(&v, &rho[x].mul_vec(&c.eval(&[y])));
            v = exactla::sub_vec(&v, &rho[y].mul_vec(&c.eval(&[x])));
        }
        let xy = h.bracket_basis(x, y);
        for (z, cz) in xy.iter().enumerate() {
            if *cz != rat(0) {
                v = exactla::sub_vec(&v, &exactla::scale_vec(cz, &c.eval(&[z])));
            }
        }
        v
    })
}

#[test]
fn criterion_3_cochain_identities() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases = 120;
    for n in 0..cases {
        let data = random_extension_data(&mut rng, 8);
        let r = data.r();
        let p = (n % 3).min(r);
        let ca = random_cochain(&mut rng, r, p, data.dim_a, 3);
        let ci = random_cochain(&mut rng, r, p, data.dim_i, 3);
        if !data.d_a(&data.d_a(&ca)).is_zero() {
            failures.push(format!("#{n}: d_a^2 != 0 in degree {p}"));
        }
        if !data.d_rho(&data.d_rho(&ci)).is_zero() {
            failures.push(format!("#{n}: d_rho^2 != 0 in degree {p}"));
        }
        let (a1, i1) = data.d_r(&ca, &ci);
        let (a2, i2) = data.d_r(&a1, &i1);
        if !(a2.is_zero() && i2.is_zero()) {
            failures.push(format!("#{n}: d_R^2 != 0 in degree {p}"));
        }
        if data.e_phi(&data.d_a(&ca)) != data.d_rho(&data.e_phi(&ca)).scale(&rat(-1)) {
            failures.push(format!("#{n}: e_phi d_a != -d_rho e_phi in degree {p}"));
        }
        if p == 1 {
            if data.d_a(&ca) != oracle_d1(&data.h, None, &ca) {
                failures.push(format!("#{n}: d_a disagrees with the direct formula"));
            }
            if data.d_rho(&ci) != oracle_d1(&data.h, Some(&data.rho), &ci) {
                failures.push(format!("#{n}: d_rho disagrees with the direct formula"));
            }
        }
    }
    report(3, "cochain identities", &failures);
}

#[test]
fn criterion_4_coboundary_isomorphism() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 0..60 {
        let data = random_extension_data(&mut rng, 8);
        let l = random_cochain(&mut rng, data.r(), 1, data.dim_a, 3);
        let m = random_cochain(&mut rng, data.r(), 1, data.dim_i, 3);
        let target = shift_by(&data, &l, &m);
        match cohomologous_iso(&data, &target, &l, &m) {
            Ok(r) if r.verified() => {}
            Ok(r) => failures.push(format!("#{n}: iso fails at {:?}", r.failure)),
            Err(e) => failures.push(format!("#{n}: {e}")),
        }
        let (g1, g2) = (data.build().unwrap(), target.build().unwrap());
        let p = psi_matrix(&data, &l, &m);
        let d = g1.dim();
        let hom = (0..d).all(|a| {
            (0..d).all(|b| p.mul_vec(&g1.bracket_basis(a, b)) == g2.bracket(&p.col(a), &p.col(b)).unwrap())
        });
        if !hom || p.rank() != d {
            failures.push(format!("#{n}: Psi is not an isomorphism by direct check"));
        }
    }
    report(4, "coboundary shift isomorphism", &failures);
}

#[test]
fn criterion_5_solver_soundness() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut returned = 0;
    for n in 0..60 {
        let q = random_quadratic_data(&mut rng, 9);
        let (inst, crit) = if n % 2 == 0 {
            (perturb_for_kernel(&mut rng, &q), Criterion::Kernel)
        } else {
            (perturb_for_cyclic(&mut rng, &q), Criterion::Cyclic)
        };
        let g = inst.data.build().expect("perturbed data builds");
        if !satisfies_criterion(&inst.data, &inst.b_a, &inst.l0, crit).unwrap() {
            failures.push(format!("#{n}: planted L does not satisfy {crit:?}"));
        }
        let k = solve_kernel_criterion(&inst.data, &inst.b_a).expect("kernel solver");
        let c = solve_cyclic_criterion(&inst.data, &inst.b_a).expect("cyclic solver");
        let planted = if crit == Criterion::Kernel { &k } else { &c };
        if planted.is_none() {
            failures.push(format!("#{n}: {crit:?} solver found nothing despite a planted solution"));
        }
        for (which, sol) in [(Criterion::Kernel, k), (Criterion::Cyclic, c)] {
            let Some(sol) = sol else { continue };
            returned += 1;
            if !satisfies_criterion(&inst.data, &inst.b_a, &sol.l, which).unwrap() {
                failures.push(format!("#{n}: returned L fails {which:?}"));
            }
            if !(invforms::is_metric(&g, &sol.metric) && oracle_metric(&g, sol.metric.gram())) {
                failures.push(format!("#{n}: {which:?} solution does not transport to a metric"));
            }
        }
    }
    println!("  {returned} solutions checked");
    report(5, "criterion solvers transport to metrics", &failures);
}

#[test]
fn criterion_6_nonzero_invariant_form() {
    let mut failures = Vec::new();
    for (n, g) in nilpotent_suite().iter().enumerate() {
        let space = invforms::invariant_forms(g);
        if space.dim() == 0 {
            failures.push(format!("#{n}: no non-zero invariant form"));
        }
        for f in &space.basis {
            if f.is_zero() || !oracle_invariant(g, f.gram()) {
                failures.push(format!("#{n}: basis form is zero or not invariant"));
            }
        }
    }
    report(6, "non-zero invariant forms on nilpotent algebras", &failures);
}

fn oracle_is_proper_ideal(a: &UnitalAlgebra, s: &Subspace) -> bool {
    let n = a.dim();
    if s.is_zero() || s.is_full() {
        return false;
    }
    s.basis_vectors().iter().all(|w| {
        (0..n).all(|k| {
            let e = exactla::unit_vec(n, k);
            s.contains_vector(&a.product(&e, w)) && s.contains_vector(&a.product(w, &e))
        })
    })
}

#[test]
fn criterion_7_unital_simplicity() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs: Vec<(String, LieAlgebra, BilinearForm)> = Vec::new();
    let h3 = samples::heisenberg();
    let f3 = nonzero_invariant_form_exists(&h3).unwrap();
    pairs.push(("h3".into(), h3, f3));
    let one = rat(1);
    pairs.push(("example".into(), samples::example_algebra(&one), samples::example_metric(&one)));
    for n in 0..12 {
        let q = random_quadratic_data(&mut rng, 8);
        pairs.push((format!("metric #{n}"), q.algebra(), q.metric()));
    }
    for n in 0..12 {
        let g = random_extension_data(&mut rng, 7).build().unwrap();
        let space = invforms::invariant_forms(&g);
        let coords = Subspace::full(space.dim());
        let c = random_element(&mut rng, &coords, 2);
        let mut f = invforms::combine(&space.basis, &c);
        if f.is_zero() {
            f = space.basis[0].clone();
        }
        pairs.push((format!("form #{n}"), g, f));
    }
    let (mut degenerate, mut nondegenerate) = (0, 0);
    for (k, (name, g, f)) in pairs.into_iter().enumerate() {
        let dim = g.dim();
        let rad_nonzero = f.gram().rank() < dim;
        let a = UnitalAlgebra::new(g, f).expect("invariant non-zero form");
        let v = a.simplicity_check(k as u64, 10_000).expect("simplicity check");
        if rad_nonzero {
            degenerate += 1;
            let ok = v.verdict == Verdict::NotSimple && v.witness.as_ref().is_some_and(|w| oracle_is_proper_ideal(&a, w));
            if !ok {
                failures.push(format!("{name}: degenerate form but no verified witness ({:?})", v.verdict));
            }
        } else if dim > 1 {
            nondegenerate += 1;
            if v.verdict == Verdict::NotSimple {
                failures.push(format!("{name}: proper ideal found for a non-degenerate form"));
            }
            if v.stats.random_closures != 10_000 {
                failures.push(format!("{name}: only {} random closures", v.stats.random_closures));
            }
        }
        if !a.commutator_quotient_iso().verified() {
            failures.push(format!("{name}: commutator quotient is not isomorphic to g"));
        }
    }
    println!("  {degenerate} degenerate pairs, {nondegenerate} non-degenerate pairs");
    if degenerate == 0 || nondegenerate == 0 {
        failures.push("suite does not cover both branches".into());
    }
    report(7, "unital algebra simplicity and commutator quotient", &failures);
}

fn antidiagonal(k: usize) -> BilinearForm {
    let mut m = Mat::zeros(k, k);
    for i in 0..k {
        m[(i, k - 1 - i)] = rat(1);
    }
    BilinearForm::new(m).unwrap()
}

#[test]
fn criterion_8_current_algebras() {
    let mut failures = Vec::new();
    let one = rat(1);
    let g = samples::example_algebra(&one);
    let b = samples::example_metric(&one);
    for k in 1..=3 {
        let s = AssocAlgebra::truncated_polynomial(k);
        let theta = antidiagonal(k);
        if !s.is_invariant_form(&theta) || theta.is_degenerate() {
            failures.push(format!("S_{k}: theta is not an invariant metric"));
            continue;
        }
        let gs = current_algebra(&g, &s).unwrap();
        let bbar = tensor_form(&b, &theta);
        let an = match gamma_operators(&g, &b, &s, &gs, &bbar) {
            Ok(an) => an,
            Err(e) => {
                failures.push(format!("S_{k}: {e}"));
                continue;
            }
        };
        let rep = pairing_check(&an, &s);
        if !rep.all_pass() {
            failures.push(format!("S_{k}: {rep:?}"));
        }
        let unit = s.unit().to_vec();
        let basis = |a: usize| exactla::unit_vec(k, a);
        for a in 0..k {
            for c in 0..k {
                if *an.epsilon(a, c) != an.epsilon_of(&s.mul(&basis(a), &basis(c)), &unit) {
                    failures.push(format!("S_{k}: eps(s{a}, s{c}) != eps(s{a} s{c}, 1)"));
                }
            }
        }
        // s -> eps(s, .) is injective: one row per basis element of S.
        let rows: Vec<Vec<Rat>> = (0..k)
            .map(|a| (0..k).flat_map(|c| an.epsilon(a, c).entries().to_vec()).collect())
            .collect();
        let width = rows[0].len();
        if Mat::from_rows(width, &rows).unwrap().rank() != k {
            failures.push(format!("S_{k}: s -> eps(s, .) has a kernel"));
        }
        let h = &an.h;
        let r = h.dim();
        for e in &an.epsilon {
            let centroid = (0..r).all(|x| {
                (0..r).all(|y| {
                    e.mul_vec(&h.bracket_basis(x, y)) == h.bracket(&exactla::unit_vec(r, x), &e.col(y)).unwrap()
                })
            });
            if !centroid {
                failures.push(format!("S_{k}: an eps value is outside Cent(h)"));
            }
        }
    }
    report(8, "current algebra pairing", &failures);
}

#[test]
fn criterion_9_heisenberg_certificate() {
    let mut failures = Vec::new();
    let h3 = samples::heisenberg();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let start = Instant::now();
    let res = invforms::find_invariant_metric(&h3, &MetricSearchConfig::default(), &mut rng);
    let took = start.elapsed();
    match &res {
        MetricSearch::NoMetric(NoMetricCertificate::GridExhausted { sizes, evaluations }) => {
            if sizes.len() != 3 {
                failures.push(format!("grid over {} variables, expected 3", sizes.len()));
            }
            println!("  grid {sizes:?}, {evaluations} evaluations, {took:?}");
        }
        other => failures.push(format!("expected a grid certificate, got {other:?}")),
    }
    if took >= Duration::from_secs(1) {
        failures.push(format!("took {took:?}"));
    }
    // Every invariant form on h3 kills the centre, so det vanishes identically.
    let space = invforms::invariant_forms(&h3);
    let centre = exactla::unit_vec(3, 2);
    if space.dim() != 3 || !space.basis.iter().all(|f| exactla::is_zero_vec(&f.gram().mul_vec(&centre))) {
        failures.push("invariant forms of h3 do not share the centre as radical".into());
    }
    let (code, out, _) = run_args(["quadlie", "metric", "--input", &fixture("h3.json")]);
    if code != 0 || !out.contains("no invariant metric (det≡0 certificate)") {
        failures.push(format!("metric command: exit {code}, output {out:?}"));
    }
    report(9, "negative metric certificate for h3", &failures);
}
