//! Exact rational linear algebra: dense rank and an incremental echelon form.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Sparse vector indexed by coordinate.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Rank of a dense matrix given as rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut echelon = RowEchelon::new();
    for r in rows {
        let v: SparseVec = r
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        echelon.insert(v);
    }
    echelon.rank()
}

/// Product of dense matrices, `a` is `m x k` and `b` is `k x n`.
pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| x * &b[k][j])
                        .fold(Rational::zero(), |acc, t| acc + t)
                })
                .collect()
        })
        .collect()
}

/// Incrementally built row echelon basis of a subspace.
///
/// Every stored row has leading coefficient one at its pivot and no other
/// stored row's pivot among its coordinates is eliminated, which is enough
/// for membership and independence queries.
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).next().map(|(&c, _)| c);
            let Some(col) = next else { break };
            if let Some(row) = self.rows.get(&col) {
                let factor = v[&col].clone();
                for (&c, x) in row {
                    let e = v.entry(c).or_insert_with(Rational::zero);
                    *e -= &factor * x;
                    if e.is_zero() {
                        v.remove(&c);
                    }
                }
            }
            cursor = col + 1;
        }
        v
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for x in r.values_mut() {
                *x *= &inv;
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn row(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn dense_rank() {
        assert_eq!(rank(&[row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank(&[row(&[0, 1, 1]), row(&[1, 0, 1]), row(&[1, 1, 2])]), 2);
        assert_eq!(rank(&[row(&[0, 0])]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn membership() {
        let mut e = RowEchelon::new();
        assert!(e.insert(BTreeMap::from([(1, q(2)), (3, q(1))])));
        assert!(e.insert(BTreeMap::from([(0, q(1)), (1, q(1))])));
        assert!(!e.insert(BTreeMap::from([(0, q(2)), (1, q(4)), (3, q(1))])));
        assert!(e.contains(&BTreeMap::from([(1, q(4)), (3, q(2))])));
        assert!(!e.contains(&BTreeMap::from([(3, q(1))])));
    }

    #[test]
    fn product() {
        let a = vec![row(&[1, 2]), row(&[0, 1])];
        let b = vec![row(&[1, 0]), row(&[3, 1])];
        assert_eq!(mat_mul(&a, &b, 2), vec![row(&[7, 2]), row(&[3, 1])]);
    }
}
