use crate::exactla::{self, Mat, Rat};
use crate::liealg::LieAlgebra;

/// An alternating `p`-linear map `h^p → V`, stored on increasing index
/// tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    r: usize,
    degree: usize,
    target: usize,
    values: Vec<Vec<Rat>>,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

// colex rank of an increasing tuple
fn rank(tuple: &[usize]) -> usize {
    tuple
        .iter()
        .enumerate()
        .map(|(m, &t)| binomial(t, m + 1))
        .sum()
}

/// All increasing `p`-tuples over `0..r`, listed in storage order.
pub fn tuples(r: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); binomial(r, p)];
    let mut cur = Vec::with_capacity(p);
    fn rec(r: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut [Vec<usize>]) {
        if cur.len() == p {
            out[rank(cur)] = cur.clone();
            return;
        }
        for t in start..r {
            cur.push(t);
            rec(r, p, t + 1, cur, out);
            cur.pop();
        }
    }
    rec(r, p, 0, &mut cur, &mut out);
    out
}

/// Sorts `args` in place and returns the permutation sign, or `None` when
/// an index repeats.
fn sort_sign(args: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..args.len() {
        let mut j = i;
        while j > 0 && args[j - 1] > args[j] {
            args.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if args.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

impl Cochain {
    pub fn zero(r: usize, degree: usize, target: usize) -> Self {
        Cochain {
            r,
            degree,
            target,
            values: vec![exactla::zero_vec(target); binomial(r, degree)],
        }
    }

    /// Builds from the values on increasing tuples.
    pub fn from_fn<F>(r: usize, degree: usize, target: usize, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Vec<Rat>,
    {
        let values = tuples(r, degree)
            .iter()
            .map(|t| {
                let v = f(t);
                assert_eq!(v.len(), target, "cochain value has wrong length");
                v
            })
            .collect();
        Cochain {
            r,
            degree,
            target,
            values,
        }
    }

    /// A 1-cochain from its `target × r` matrix (column `x` is the image of
    /// `e_x`).
    pub fn from_matrix(m: &Mat) -> Self {
        Cochain::from_fn(m.cols(), 1, m.rows(), |t| m.col(t[0]))
    }

    pub fn to_matrix(&self) -> Mat {
        assert_eq!(self.degree, 1, "only 1-cochains are matrices");
        Mat::from_cols(self.target, &self.values).expect("values have target length")
    }

    /// Flattened coordinates: tuple-major, `rank(tuple) * target + k`.
    pub fn coords(&self) -> Vec<Rat> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn from_coords(r: usize, degree: usize, target: usize, coords: &[Rat]) -> Self {
        assert_eq!(coords.len(), binomial(r, degree) * target);
        let values = if target == 0 {
            vec![Vec::new(); binomial(r, degree)]
        } else {
            coords.chunks(target).map(|c| c.to_vec()).collect()
        };
        Cochain {
            r,
            degree,
            target,
            values,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn num_tuples(&self) -> usize {
        self.values.len()
    }

    /// Value on an increasing tuple.
    pub fn value(&self, tuple: &[usize]) -> &[Rat] {
        &self.values[rank(tuple)]
    }

    /// Sets the value on `args` (any order; the alternating sign is applied).
    pub fn set(&mut self, args: &[usize], v: Vec<Rat>) {
        assert_eq!(v.len(), self.target);
        let mut sorted = args.to_vec();
        let neg = sort_sign(&mut sorted).expect("repeated index in cochain assignment");
        self.values[rank(&sorted)] = if neg { exactla::scale_vec(&-exactla::one(), &v) } else { v };
    }

    /// Value on basis arguments in any order.
    pub fn eval(&self, args: &[usize]) -> Vec<Rat> {
        let mut sorted = args.to_vec();
        match sort_sign(&mut sorted) {
            None => exactla::zero_vec(self.target),
            Some(false) => self.values[rank(&sorted)].clone(),
            Some(true) => self.values[rank(&sorted)].iter().map(|x| -x).collect(),
        }
    }

    /// Adds `c · value(args)` into `acc`.
    fn accumulate(&self, acc: &mut [Rat], c: &Rat, args: &[usize]) {
        let mut sorted = args.to_vec();
        if let Some(neg) = sort_sign(&mut sorted) {
            let c = if neg { -c.clone() } else { c.clone() };
            exactla::axpy(acc, &c, &self.values[rank(&sorted)]);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| exactla::is_zero_vec(v))
    }

    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Vec<Rat>)> {
        tuples(self.r, self.degree)
            .into_iter()
            .zip(&self.values)
            .find(|(_, v)| !exactla::is_zero_vec(v))
            .map(|(t, v)| (t, v.clone()))
    }

    fn check_shape(&self, other: &Cochain) {
        assert_eq!(
            (self.r, self.degree, self.target),
            (other.r, other.degree, other.target),
            "cochain shapes differ"
        );
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_shape(other);
        Cochain {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| exactla::add_vec(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.check_shape(other);
        Cochain {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| exactla::sub_vec(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        Cochain {
            values: self.values.iter().map(|v| exactla::scale_vec(c, v)).collect(),
            ..self.clone()
        }
    }

    /// Post-composes every value with a linear map.
    pub fn map_target(&self, m: &Mat) -> Cochain {
        assert_eq!(m.cols(), self.target);
        Cochain {
            r: self.r,
            degree: self.degree,
            target: m.rows(),
            values: self.values.iter().map(|v| m.mul_vec(v)).collect(),
        }
    }
}

/// Chevalley–Eilenberg differential with values in the module given by
/// `rho` (`None` for a trivial module):
///
/// `dλ(x_0..x_p) = Σ_j (-1)^j ρ(x_j) λ(..x̂_j..)
///               + Σ_{i<j} (-1)^{i+j} λ([x_i,x_j], ..x̂_i..x̂_j..)`.
pub fn differential(h: &LieAlgebra, rho: Option<&[Mat]>, c: &Cochain) -> Cochain {
    let r = h.dim();
    assert_eq!(c.r, r, "cochain lives over a different algebra");
    let p = c.degree;
    Cochain::from_fn(r, p + 1, c.target, |xs| {
        let mut out = exactla::zero_vec(c.target);
        if let Some(rho) = rho {
            for j in 0..=p {
                let rest: Vec<usize> = xs.iter().enumerate().filter(|&(m, _)| m != j).map(|(_, &x)| x).collect();
                let v = rho[xs[j]].mul_vec(c.value(&rest));
                if j % 2 == 0 {
                    out = exactla::add_vec(&out, &v);
                } else {
                    out = exactla::sub_vec(&out, &v);
                }
            }
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let terms = h.bracket_terms(xs[i], xs[j]);
                if terms.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = xs
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != i && m != j)
                    .map(|(_, &x)| x)
                    .collect();
                let sign = if (i + j) % 2 == 0 { exactla::one() } else { -exactla::one() };
                for (k, coeff) in terms {
                    let mut args = Vec::with_capacity(p);
                    args.push(*k);
                    args.extend_from_slice(&rest);
                    c.accumulate(&mut out, &(&sign * coeff), &args);
                }
            }
        }
        out
    })
}

/// `e_φ(λ)(x_0..x_p) = Σ_j (-1)^j φ(x_j) λ(..x̂_j..)`.
pub fn e_phi_of(phi: &[Mat], c: &Cochain) -> Cochain {
    let target = phi.first().map_or(0, |m| m.rows());
    let p = c.degree;
    Cochain::from_fn(c.r, p + 1, target, |xs| {
        let mut out = exactla::zero_vec(target);
        for j in 0..=p {
            let rest: Vec<usize> = xs.iter().enumerate().filter(|&(m, _)| m != j).map(|(_, &x)| x).collect();
            let v = c.value(&rest);
            if exactla::is_zero_vec(v) {
                continue;
            }
            let w = phi[xs[j]].mul_vec(v);
            if j % 2 == 0 {
                out = exactla::add_vec(&out, &w);
            } else {
                out = exactla::sub_vec(&out, &w);
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    #[test]
    fn tuple_ranks_are_a_bijection() {
        for r in 0..6 {
            for p in 0..=r {
                let ts = tuples(r, p);
                assert_eq!(ts.len(), binomial(r, p));
                for (k, t) in ts.iter().enumerate() {
                    assert_eq!(rank(t), k);
                    assert!(t.windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn eval_is_alternating() {
        let mut c = Cochain::zero(3, 2, 1);
        c.set(&[2, 0], vec![rat(5)]);
        assert_eq!(c.eval(&[0, 2]), vec![rat(-5)]);
        assert_eq!(c.eval(&[2, 0]), vec![rat(5)]);
        assert_eq!(c.eval(&[1, 1]), vec![rat(0)]);
    }

    #[test]
    fn coords_round_trip() {
        let c = Cochain::from_fn(4, 2, 2, |t| vec![rat(t[0] as i64), rat(t[1] as i64 * 3)]);
        let back = Cochain::from_coords(4, 2, 2, &c.coords());
        assert_eq!(back, c);
        let m = Mat::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(Cochain::from_matrix(&m).to_matrix(), m);
    }

    #[test]
    fn zero_cochain_over_abelian_has_zero_differential() {
        let h = LieAlgebra::abelian(3);
        let v = Cochain::from_fn(3, 0, 2, |_| vec![rat(1), rat(-4)]);
        assert!(differential(&h, None, &v).is_zero());
    }
}
