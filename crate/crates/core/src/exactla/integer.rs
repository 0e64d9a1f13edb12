//! Integer fast paths for the two hot loops: determinants on the metric
//! search grid and span closures in the unital-algebra simplicity search.
//! Both fall back to arbitrary precision when `i128` would overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Mat, Rat, Subspace};

/// Rows of `m` multiplied by the least common denominator of all entries.
pub fn integer_rows(m: &Mat) -> Vec<Vec<BigInt>> {
    let lcm = m
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det_integer_rows(rows: &[Vec<BigInt>]) -> BigInt {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128()).collect())
        .collect();
    if let Some(a) = small {
        if let Some(d) = bareiss_i128(a) {
            return BigInt::from(d);
        }
    }
    bareiss_big(rows.to_vec())
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = x / prev;
            }
        }
        prev = a[k][k];
    }
    sign.checked_mul(a[n - 1][n - 1])
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = x / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Smallest subspace containing `seeds` and closed under every generator.
pub fn closure_under(generators: &[Mat], seeds: &[Vec<Rat>]) -> Subspace {
    let n = seeds
        .first()
        .map(|s| s.len())
        .or_else(|| generators.first().map(|g| g.cols()))
        .unwrap_or(0);
    ClosureOperator::new(generators, n).closure(seeds)
}

/// A fixed set of linear maps whose invariant-subspace closures are
/// computed repeatedly; the integer scaling of the maps is done once.
#[derive(Debug, Clone)]
pub struct ClosureOperator {
    n: usize,
    generators: Vec<Mat>,
    small: Option<Vec<Vec<Vec<i128>>>>,
}

impl ClosureOperator {
    pub fn new(generators: &[Mat], n: usize) -> Self {
        let small = generators
            .iter()
            .map(|g| {
                integer_rows(g)
                    .into_iter()
                    .map(|r| r.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>();
        ClosureOperator {
            n,
            generators: generators.to_vec(),
            small,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn closure(&self, seeds: &[Vec<Rat>]) -> Subspace {
        match self.closure_rows(seeds) {
            Some(rows) => {
                let rows: Vec<Vec<Rat>> = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| Rat::from_integer(BigInt::from(x))).collect())
                    .collect();
                Subspace::span(self.n, &rows).expect("closure rows have ambient length")
            }
            None => closure_rat(&self.generators, seeds, self.n),
        }
    }

    /// Dimension of the closure, skipping the final row reduction.
    pub fn closure_dim(&self, seeds: &[Vec<Rat>]) -> usize {
        match self.closure_rows(seeds) {
            Some(rows) => rows.len(),
            None => closure_rat(&self.generators, seeds, self.n).dim(),
        }
    }

    fn closure_rows(&self, seeds: &[Vec<Rat>]) -> Option<Vec<Vec<i128>>> {
        let gens = self.small.as_ref()?;
        let n = self.n;
        let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
        let mut queue: Vec<Vec<i128>> = Vec::new();
        for s in seeds {
            let v = to_i128_vec(s)?;
            if let Some(r) = reduce_i128(&basis, v)? {
                insert_sorted(&mut basis, r.clone());
                queue.push(r);
            }
        }
        while let Some(v) = queue.pop() {
            if basis.len() == n {
                break;
            }
            for g in gens {
                let mut w = Vec::with_capacity(n);
                for row in g {
                    let mut acc = 0i128;
                    for (a, b) in row.iter().zip(&v) {
                        if *a != 0 && *b != 0 {
                            acc = acc.checked_add(a.checked_mul(*b)?)?;
                        }
                    }
                    w.push(acc);
                }
                if let Some(r) = reduce_i128(&basis, w)? {
                    insert_sorted(&mut basis, r.clone());
                    queue.push(r);
                    if basis.len() == n {
                        break;
                    }
                }
            }
        }
        Some(basis.into_iter().map(|(_, r)| r).collect())
    }
}

fn to_i128_vec(v: &[Rat]) -> Option<Vec<i128>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| (x.numer() * (&lcm / x.denom())).to_i128())
        .collect()
}

fn insert_sorted(basis: &mut Vec<(usize, Vec<i128>)>, row: Vec<i128>) {
    let p = row.iter().position(|&x| x != 0).expect("nonzero row");
    let at = basis.partition_point(|(q, _)| *q < p);
    basis.insert(at, (p, row));
}

/// Reduces `v` against an echelon basis sorted by pivot. `Some(None)` means
/// `v` lies in the span; the outer `None` signals overflow.
fn reduce_i128(basis: &[(usize, Vec<i128>)], mut v: Vec<i128>) -> Option<Option<Vec<i128>>> {
    for (p, b) in basis {
        let c = v[*p];
        if c == 0 {
            continue;
        }
        let bp = b[*p];
        for (x, y) in v.iter_mut().zip(b) {
            *x = x.checked_mul(bp)?.checked_sub(c.checked_mul(*y)?)?;
        }
        normalize(&mut v);
    }
    if v.iter().all(|&x| x == 0) {
        Some(None)
    } else {
        normalize(&mut v);
        Some(Some(v))
    }
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn closure_rat(generators: &[Mat], seeds: &[Vec<Rat>], n: usize) -> Subspace {
    let mut span = Subspace::zero(n);
    let mut queue: Vec<Vec<Rat>> = Vec::new();
    let push = |v: Vec<Rat>, span: &mut Subspace, queue: &mut Vec<Vec<Rat>>| {
        if !span.contains_vector(&v) {
            *span = span
                .sum(&Subspace::span(n, std::slice::from_ref(&v)).expect("length"))
                .expect("same ambient");
            queue.push(v);
        }
    };
    for s in seeds {
        push(s.clone(), &mut span, &mut queue);
    }
    while let Some(v) = queue.pop() {
        if span.is_full() {
            break;
        }
        for g in generators {
            push(g.mul_vec(&v), &mut span, &mut queue);
        }
    }
    span
}
