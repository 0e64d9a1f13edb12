use num_traits::Zero;

use super::cochain::Cochain;
use super::data::{coad, ExtensionData};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::invforms::{witt_decomposition, BilinearForm, WittDecomposition};
use crate::liealg::{default_names, LieAlgebra, StructureConstant};

/// Extension data read off a quadratic algebra in its decomposed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Extracted {
    pub data: ExtensionData,
    pub witt: WittDecomposition,
    /// Columns: the decomposed basis in original coordinates.
    pub basis: Mat,
    /// The algebra rewritten in the decomposed basis.
    pub decomposed: LieAlgebra,
    pub b_a: Mat,
}

/// Rewrites a non-abelian nilpotent quadratic algebra as
/// `h(λ, μ, φ, ad*_h)`.
pub fn extract_extension_data(alg: &LieAlgebra, form: &BilinearForm) -> Result<Extracted> {
    let witt = witt_decomposition(alg, form)?;
    let (r, da, di) = witt.dims();
    let basis = witt.change_of_basis();
    let mut names = default_names("x", r);
    names.extend(default_names("u", da));
    names.extend(default_names("alpha", di));
    let g = alg.change_basis(&basis, names)?;
    let (a0, i0) = (r, r + da);
    let n = g.dim();

    let mut h_consts = Vec::new();
    let mut lambda = Cochain::zero(r, 2, da);
    let mut mu = Cochain::zero(r, 2, di);
    for x in 0..r {
        for y in x + 1..r {
            let v = g.bracket_basis(x, y);
            for (k, c) in v[..r].iter().enumerate() {
                if !c.is_zero() {
                    h_consts.push(StructureConstant::new(x, y, k, c.clone()));
                }
            }
            lambda.set(&[x, y], v[a0..i0].to_vec());
            mu.set(&[x, y], v[i0..].to_vec());
        }
    }
    let h = LieAlgebra::new(g.basis_names()[..r].to_vec(), h_consts)?;

    let mut phi = vec![Mat::zeros(di, da); r];
    let mut rho = vec![Mat::zeros(di, di); r];
    for x in 0..r {
        for t in a0..n {
            let v = g.bracket_basis(x, t);
            if v[..i0].iter().any(|c| !c.is_zero()) {
                return Err(Error::TheoremViolation(format!(
                    "[g, J] is not contained in i at ({x}, {t})"
                )));
            }
            for k in 0..di {
                if t < i0 {
                    phi[x][(k, t - a0)] = v[i0 + k].clone();
                } else {
                    rho[x][(k, t - i0)] = v[i0 + k].clone();
                }
            }
        }
    }
    for s in a0..n {
        for t in s + 1..n {
            if !g.bracket_terms(s, t).is_empty() {
                return Err(Error::TheoremViolation("J(g) is not abelian".into()));
            }
        }
    }
    if rho != coad(&h) {
        return Err(Error::TheoremViolation(
            "i does not act as the coadjoint module under the pairing".into(),
        ));
    }
    let data = ExtensionData::new(h, da, di, rho, phi, lambda, mu)?;
    Ok(Extracted {
        b_a: witt.b_a.clone(),
        data,
        witt,
        basis,
        decomposed: g,
    })
}
