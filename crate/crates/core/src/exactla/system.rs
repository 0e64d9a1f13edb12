use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Mat, Rat, Subspace};

type SparseRow = Vec<(usize, Rat)>;

/// Incrementally assembled linear system `A x = b` with sparse rows.
///
/// Equations are forward-reduced as they arrive, so redundant rows are
/// dropped immediately and at most `unknowns` echelon rows are ever stored.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    unknowns: usize,
    echelon: BTreeMap<usize, (SparseRow, Rat)>,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            echelon: BTreeMap::new(),
            inconsistent: false,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Adds `Σ coeff·x_col = 0`. Repeated columns are summed.
    pub fn add_homogeneous<I>(&mut self, coeffs: I)
    where
        I: IntoIterator<Item = (usize, Rat)>,
    {
        self.add_equation(coeffs, Rat::zero());
    }

    /// Adds `Σ coeff·x_col = rhs`.
    pub fn add_equation<I>(&mut self, coeffs: I, rhs: Rat)
    where
        I: IntoIterator<Item = (usize, Rat)>,
    {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, v) in coeffs {
            assert!(c < self.unknowns, "unknown index {c} out of range");
            if v.is_zero() {
                continue;
            }
            *acc.entry(c).or_insert_with(Rat::zero) += v;
        }
        let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.insert(row, rhs);
    }

    fn insert(&mut self, mut row: SparseRow, mut rhs: Rat) {
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                if !rhs.is_zero() {
                    self.inconsistent = true;
                }
                return;
            };
            match self.echelon.get(&lead) {
                Some((prow, prhs)) => {
                    row = sub_scaled(&row, &lead_val, prow);
                    rhs -= &lead_val * prhs;
                }
                None => {
                    let inv = lead_val.recip();
                    let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                    self.echelon.insert(lead, (row, rhs * inv));
                    return;
                }
            }
        }
    }

    fn dense(&self) -> (Mat, Vec<Rat>) {
        let mut m = Mat::zeros(self.echelon.len(), self.unknowns);
        let mut b = Vec::with_capacity(self.echelon.len());
        for (r, (row, rhs)) in self.echelon.values().enumerate() {
            for (c, v) in row {
                m[(r, *c)] = v.clone();
            }
            b.push(rhs.clone());
        }
        (m, b)
    }

    /// Solution space of the homogeneous part.
    pub fn kernel(&self) -> Subspace {
        self.dense().0.kernel()
    }

    /// Canonical particular solution (free variables zero) plus the
    /// homogeneous solution space, or `None` if inconsistent.
    pub fn solve(&self) -> Option<(Vec<Rat>, Subspace)> {
        if self.inconsistent {
            return None;
        }
        let (m, b) = self.dense();
        m.solve(&b).expect("dense system has matching shape")
    }
}

fn sub_scaled(row: &[(usize, Rat)], c: &Rat, pivot: &[(usize, Rat)]) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(c * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - c * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    debug_assert!(out.first().is_none_or(|(_, v)| !v.is_zero()));
    out
}

impl Default for LinearSystem {
    fn default() -> Self {
        LinearSystem::new(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    #[test]
    fn matches_dense_solve() {
        let mut s = LinearSystem::new(3);
        s.add_equation([(0, rat(1)), (1, rat(1))], rat(2));
        s.add_equation([(0, rat(2)), (1, rat(2))], rat(4));
        s.add_equation([(2, rat(1))], rat(5));
        assert_eq!(s.rank(), 2);
        let (x, h) = s.solve().unwrap();
        assert_eq!(x, vec![rat(2), rat(0), rat(5)]);
        assert_eq!(h.dim(), 1);
    }

    #[test]
    fn detects_inconsistency() {
        let mut s = LinearSystem::new(1);
        s.add_equation([(0, rat(1))], rat(0));
        s.add_equation([(0, rat(1))], rat(1));
        assert!(s.is_inconsistent());
        assert!(s.solve().is_none());
    }

    #[test]
    fn duplicate_columns_are_summed() {
        let mut s = LinearSystem::new(2);
        s.add_homogeneous([(0, rat(1)), (0, rat(-1)), (1, rat(0))]);
        assert_eq!(s.rank(), 0);
        assert_eq!(s.kernel().dim(), 2);
    }
}
