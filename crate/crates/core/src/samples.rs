//! Small named algebras used across tests, benches and the CLI.

use crate::exactla::{self, rat, Mat, Rat};
use crate::extension::{coad, Cochain, ExtensionData};
use crate::invforms::BilinearForm;
use crate::liealg::{default_names, LieAlgebra, StructureConstant};

/// Heisenberg algebra `[x1, x2] = x3`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(
        default_names("x", 3),
        vec![StructureConstant::new(0, 1, 2, rat(1))],
    )
    .expect("Heisenberg algebra satisfies Jacobi")
}

/// The worked example: `h` Heisenberg, `a` three-dimensional with
/// `B_a = Id`, `i = h*`, parameter `xi`.
pub fn example_extension(xi: &Rat) -> ExtensionData {
    let h = heisenberg();
    let e = |k: usize| exactla::unit_vec(3, k);
    let s = |c: Rat, k: usize| exactla::scale_vec(&c, &e(k));
    let mut phi = vec![Mat::zeros(3, 3); 3];
    // φ(x1)(u2) = α3, φ(x1)(u3) = -α2
    phi[0][(2, 1)] = rat(1);
    phi[0][(1, 2)] = rat(-1);
    // φ(x2)(u3) = α1, φ(x2)(u1) = -α3
    phi[1][(0, 2)] = rat(1);
    phi[1][(2, 0)] = rat(-1);
    // φ(x3)(u1) = α2, φ(x3)(u2) = -α1
    phi[2][(1, 0)] = rat(1);
    phi[2][(0, 1)] = rat(-1);

    let mut lambda = Cochain::zero(3, 2, 3);
    lambda.set(&[0, 1], s(rat(1) + xi, 2));
    lambda.set(&[1, 2], e(0));
    lambda.set(&[2, 0], e(1));
    let m2 = -rat(2) * xi;
    let mut mu = Cochain::zero(3, 2, 3);
    mu.set(&[0, 1], s(m2.clone(), 2));
    mu.set(&[1, 2], s(m2.clone(), 0));
    mu.set(&[2, 0], s(m2, 1));
    let rho = coad(&h);
    ExtensionData::new(h, 3, 3, rho, phi, lambda, mu).expect("worked example is a valid extension")
}

pub fn example_b_a() -> Mat {
    Mat::identity(3)
}

/// The worked-example algebra on `x1..x3, u1..u3, alpha1..alpha3`.
pub fn example_algebra(xi: &Rat) -> LieAlgebra {
    example_extension(xi).build().expect("worked example builds")
}

/// The listed metric entries: `B(x_j,u_k) = -ξδ`, `B(u_j,u_k) = δ`,
/// `B(x_j,α_k) = δ`.
pub fn example_listed_entries(xi: &Rat) -> Vec<(usize, usize, Rat)> {
    let mut out = Vec::new();
    for j in 0..3 {
        for k in 0..3 {
            let d = if j == k { rat(1) } else { rat(0) };
            out.push((j, 3 + k, -xi.clone() * &d));
            out.push((3 + j, 3 + k, d.clone()));
            out.push((j, 6 + k, d));
        }
    }
    out
}

/// Listed entries with every other entry zero. Invariant only at `ξ = 0`.
pub fn example_listed_metric(xi: &Rat) -> BilinearForm {
    let mut g = Mat::zeros(9, 9);
    for (i, j, v) in example_listed_entries(xi) {
        g[(i, j)] = v.clone();
        g[(j, i)] = v;
    }
    BilinearForm::new(g).expect("symmetric by construction")
}

/// The listed entries plus `B(x_j, x_k) = ξ²δ`: the metric obtained by
/// transporting the assembled metric back through `x ↦ x - ξu`.
pub fn example_metric(xi: &Rat) -> BilinearForm {
    let mut g = example_listed_metric(xi).into_gram();
    for j in 0..3 {
        g[(j, j)] = xi * xi;
    }
    BilinearForm::new(g).expect("symmetric by construction")
}
