use super::cochain::Cochain;
use super::data::ExtensionData;
use crate::error::{Error, Result};
use crate::exactla::Mat;

/// Matrix of `Ψ(x) = x - L(x) - M(x)`, the identity on `a` and `i`.
pub fn psi_matrix(data: &ExtensionData, l: &Cochain, m: &Cochain) -> Mat {
    let (r, da) = (data.r(), data.dim_a);
    let mut p = Mat::identity(data.total_dim());
    for x in 0..r {
        for (u, c) in l.value(&[x]).iter().enumerate() {
            p[(r + u, x)] = -c.clone();
        }
        for (k, c) in m.value(&[x]).iter().enumerate() {
            p[(r + da + k, x)] = -c.clone();
        }
    }
    p
}

/// `(λ, μ) + d_R(L, M)` as new extension data.
pub fn shift_by(data: &ExtensionData, l: &Cochain, m: &Cochain) -> ExtensionData {
    let (dl, dm) = data.d_r(l, m);
    data.with_cocycle(data.lambda.add(&dl), data.mu.add(&dm))
}

/// `Ψ` together with the outcome of checking it on every basis pair.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoReport {
    pub matrix: Mat,
    /// First basis pair where `Ψ[a,b] ≠ [Ψa, Ψb]'`, if any.
    pub failure: Option<(usize, usize)>,
}

impl IsoReport {
    pub fn verified(&self) -> bool {
        self.failure.is_none()
    }
}

/// Builds `Ψ: h(λ,μ) → h(λ',μ')` for `(λ',μ') = (λ,μ) + d_R(L,M)` and
/// checks that it is a Lie algebra homomorphism.
pub fn cohomologous_iso(
    source: &ExtensionData,
    target: &ExtensionData,
    l: &Cochain,
    m: &Cochain,
) -> Result<IsoReport> {
    let same_frame = source.h == target.h
        && source.dim_a == target.dim_a
        && source.dim_i == target.dim_i
        && source.rho == target.rho
        && source.phi == target.phi;
    if !same_frame {
        return Err(Error::Precondition(
            "both extensions must share h, a, i, rho and phi".into(),
        ));
    }
    let (dl, dm) = source.d_r(l, m);
    let res_a = source.lambda.add(&dl).sub(&target.lambda);
    let res_i = source.mu.add(&dm).sub(&target.mu);
    if !(res_a.is_zero() && res_i.is_zero()) {
        let (t, _) = res_a.first_nonzero().or_else(|| res_i.first_nonzero()).expect("nonzero");
        return Err(Error::Precondition(format!(
            "(λ',μ') - (λ,μ) - d_R(L,M) is nonzero at {:?}: a-part {}, i-part {}",
            t,
            crate::error::fmt_vec(res_a.value(&t)),
            crate::error::fmt_vec(res_i.value(&t))
        )));
    }
    let g = source.build()?;
    let g2 = target.build()?;
    let p = psi_matrix(source, l, m);
    let cols = p.col_vecs();
    let n = g.dim();
    let mut failure = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            let lhs = p.mul_vec(&g.bracket_basis(a, b));
            let rhs = g2.bracket(&cols[a], &cols[b])?;
            if lhs != rhs {
                failure = Some((a, b));
                break 'outer;
            }
        }
    }
    Ok(IsoReport { matrix: p, failure })
}
