//! Exact rational linear algebra.
//!
//! Everything here works over `BigRational`. Subspaces are stored by their
//! reduced row-echelon basis, so two subspaces are equal exactly when their
//! stored matrices are equal.

mod integer;
mod mat;
mod subspace;
mod system;

pub use integer::{closure_under, ClosureOperator, det_integer_rows, integer_rows};
pub use mat::{Mat, Rref};
pub use subspace::Subspace;
pub use system::LinearSystem;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field: reduced fractions of arbitrary precision.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `"p"` or `"p/q"` exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Canonical text form: `"p"` when the denominator is one, `"p/q"` otherwise.
pub fn format_rat(x: &Rat) -> String {
    x.to_string()
}

pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, k: usize) -> Vec<Rat> {
    let mut v = zero_vec(n);
    v[k] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rat], c: &Rat, v: &[Rat]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Absolute height `max(|p|, q)` of a rational, used to bound random draws.
pub fn height(x: &Rat) -> BigInt {
    let p = x.numer().abs();
    let q = x.denom().clone();
    if p > q {
        p
    } else {
        q
    }
}

/// Uniform rational with numerator in `[-h, h]` and denominator in `[1, h]`.
pub fn random_rat<R: rand::Rng + ?Sized>(rng: &mut R, h: i64) -> Rat {
    let h = h.max(1);
    let p = rng.random_range(-h..=h);
    let q = rng.random_range(1..=h);
    ratio(p, q)
}

pub fn random_int_rat<R: rand::Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> Rat {
    rat(rng.random_range(lo..=hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_roundtrip() {
        assert_eq!(format_rat(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rat(&rat(5)), "5");
        assert_eq!(format_rat(&zero()), "0");
        assert_eq!(parse_rat("-3/2"), Some(ratio(-3, 2)));
        assert_eq!(parse_rat("4/2"), Some(rat(2)));
        assert_eq!(parse_rat(" 7 "), Some(rat(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn canonical_zero() {
        let z = ratio(0, -5);
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(format_rat(&z), "0");
    }
}
