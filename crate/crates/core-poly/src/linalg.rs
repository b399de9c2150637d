//! Exact linear algebra: an incremental sparse echelon form and small dense
//! helpers.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Q;

pub type SparseRow = BTreeMap<usize, Q>;

/// Rows in echelon form keyed by pivot column. Each stored row has a 1 in
/// its pivot column and no entries to the left of it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.pivots.iter()
    }

    /// Reduces a row against the stored pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let hit = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = hit else {
                return row;
            };
            for (c, v) in &self.pivots[&col] {
                let e = row.entry(*c).or_insert_with(Q::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
            cursor = col + 1;
        }
    }

    /// Adds a row; returns false when it was already in the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        let Some((&lead, lv)) = r.iter().next() else {
            return false;
        };
        let inv = lv.recip();
        let r: SparseRow = r.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivots.insert(lead, r);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Reduced row echelon form of a dense matrix; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (dst, p) in m[i].iter_mut().zip(&pivot).take(cols) {
                    *dst -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// A basis of the right kernel `{v : m v = 0}`.
pub fn kernel(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    /// Per unknown: its value when the system pins it down, else `None`.
    Solved(Vec<Option<Q>>),
}

pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Solution {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&n) {
        return Solution::Inconsistent;
    }
    let mut out = vec![None; n];
    for (r, &p) in pivots.iter().enumerate() {
        let determined = (0..n).all(|j| j == p || m[r][j].is_zero());
        if determined {
            out[p] = Some(m[r][n].clone());
        }
    }
    Solution::Solved(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, qi(v))).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 1), (1, 1)])));
        assert!(e.insert(row(&[(1, 1), (2, 1)])));
        assert!(!e.insert(row(&[(0, 1), (2, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(row(&[(0, 2), (1, 4), (2, 2)])));
        assert!(!e.contains(row(&[(2, 1)])));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![qi(1), qi(2), qi(3)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let dot: Q = m[0].iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solves_ledger_like_system() {
        // E + F = -1, E = 1/2
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(0)]];
        let b = vec![qi(-1), q(1, 2)];
        assert_eq!(
            solve(&a, &b),
            Solution::Solved(vec![Some(q(1, 2)), Some(q(-3, 2))])
        );
        let bad = vec![vec![qi(1)], vec![qi(1)]];
        assert_eq!(solve(&bad, &[qi(0), qi(1)]), Solution::Inconsistent);
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![qi(2), qi(1)], vec![qi(1), qi(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![qi(1), qi(-1)], vec![qi(-1), qi(2)]]);
        assert!(inverse(&[vec![qi(1), qi(1)], vec![qi(2), qi(2)]]).is_none());
    }
}
