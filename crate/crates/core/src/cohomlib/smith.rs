//! Smith normal form over the integers.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, SparseMatrix};

/// `u · m · v = d` with `d` diagonal, `d[i][i] | d[i+1][i+1]`, the nonzero
/// diagonal entries positive, and `u`, `v` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let mut d = m.clone();
    reduce(&mut d, Some((&mut u, &mut v)));
    Smith { d, u, v }
}

/// Nonzero invariant factors of a dense matrix, in divisibility order.
pub fn elementary_divisors_dense(mut m: IntMatrix) -> Vec<BigInt> {
    reduce(&mut m, None);
    (0..m.rows().min(m.cols()))
        .map(|i| m.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

/// Position of the nonzero entry of least absolute value in `m[t.., t..]`.
fn smallest(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < m.get(bi, bj).abs()) {
                if x.abs().is_one() {
                    return Some((i, j));
                }
                best = Some((i, j));
            }
        }
    }
    best
}

fn reduce(m: &mut IntMatrix, mut transforms: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let n = m.rows().min(m.cols());
    for t in 0..n {
        let Some((i, j)) = smallest(m, t) else {
            return;
        };
        swap(m, &mut transforms, t, i, t, j);
        loop {
            let pivot = m.get(t, t).clone();
            let mut moved = false;
            for i in t + 1..m.rows() {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = m.get(i, t).div_floor(&pivot);
                row_op(m, &mut transforms, i, t, &-q);
                if !m.get(i, t).is_zero() {
                    swap(m, &mut transforms, t, i, t, t);
                    moved = true;
                    break;
                }
            }
            if moved {
                continue;
            }
            for j in t + 1..m.cols() {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = m.get(t, j).div_floor(&pivot);
                col_op(m, &mut transforms, j, t, &-q);
                if !m.get(t, j).is_zero() {
                    swap(m, &mut transforms, t, t, t, j);
                    moved = true;
                    break;
                }
            }
            if moved {
                continue;
            }
            // pivot row and column are clear; enforce divisibility
            let bad = (t + 1..m.rows())
                .find(|&i| (t + 1..m.cols()).any(|j| !m.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => row_op(m, &mut transforms, t, i, &BigInt::one()),
                None => break,
            }
        }
        if m.get(t, t).is_negative() {
            m.negate_row(t);
            if let Some((u, _)) = transforms.as_mut() {
                u.negate_row(t);
            }
        }
    }
}

fn swap(
    m: &mut IntMatrix,
    transforms: &mut Option<(&mut IntMatrix, &mut IntMatrix)>,
    r1: usize,
    r2: usize,
    c1: usize,
    c2: usize,
) {
    m.swap_rows(r1, r2);
    m.swap_cols(c1, c2);
    if let Some((u, v)) = transforms.as_mut() {
        u.swap_rows(r1, r2);
        v.swap_cols(c1, c2);
    }
}

fn row_op(
    m: &mut IntMatrix,
    transforms: &mut Option<(&mut IntMatrix, &mut IntMatrix)>,
    dst: usize,
    src: usize,
    k: &BigInt,
) {
    m.add_row(dst, src, k);
    if let Some((u, _)) = transforms.as_mut() {
        u.add_row(dst, src, k);
    }
}

fn col_op(
    m: &mut IntMatrix,
    transforms: &mut Option<(&mut IntMatrix, &mut IntMatrix)>,
    dst: usize,
    src: usize,
    k: &BigInt,
) {
    m.add_col(dst, src, k);
    if let Some((_, v)) = transforms.as_mut() {
        v.add_col(dst, src, k);
    }
}

/// Nonzero invariant factors of a sparse matrix.
///
/// Entries equal to ±1 are eliminated first with `i64` arithmetic, each
/// contributing a factor 1; whatever remains goes through the dense
/// big-integer reduction. An overflowing update stops the sparse phase
/// before it is applied, so the remaining matrix is always equivalent.
pub fn elementary_divisors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<HashMap<usize, i64>> = (0..m.rows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols()];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut live_rows: Vec<bool> = vec![true; m.rows()];
    let mut units = 0usize;

    'elimination: loop {
        // unit pivot with the fewest fill-in candidates
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !live_rows[i] || row.is_empty() {
                continue;
            }
            for (&j, &v) in row {
                if v.abs() != 1 {
                    continue;
                }
                let cost = (row.len() - 1) * (col_rows[j].len() - 1);
                if best.is_none_or(|(_, _, c)| cost < c) {
                    best = Some((i, j, cost));
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((p, q, _)) = best else { break };
        let pivot_row = rows[p].clone();
        let pv = pivot_row[&q];
        let targets: Vec<usize> = col_rows[q].iter().copied().filter(|&i| i != p).collect();
        let mut updates = Vec::with_capacity(targets.len());
        for &i in &targets {
            // row_i -= (a_iq / pv) row_p, exact since pv = ±1
            let factor = rows[i][&q] * pv;
            let mut updated = rows[i].clone();
            for (&j, &v) in &pivot_row {
                let delta = match factor.checked_mul(v) {
                    Some(d) => d,
                    None => break 'elimination,
                };
                let slot = updated.entry(j).or_insert(0);
                *slot = match slot.checked_sub(delta) {
                    Some(s) => s,
                    None => break 'elimination,
                };
            }
            updates.push((i, updated));
        }
        for (i, updated) in updates {
            for j in rows[i].keys() {
                col_rows[*j].remove(&i);
            }
            let updated: HashMap<usize, i64> =
                updated.into_iter().filter(|&(_, v)| v != 0).collect();
            for j in updated.keys() {
                col_rows[*j].insert(i);
            }
            rows[i] = updated;
        }
        for j in rows[p].keys() {
            col_rows[*j].remove(&p);
        }
        rows[p].clear();
        live_rows[p] = false;
        // column q is now zero outside the pivot row; the pivot row can be
        // cleared by column operations that touch nothing else
        for i in col_rows[q].drain().collect::<Vec<_>>() {
            rows[i].remove(&q);
        }
        units += 1;
    }

    let remaining_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let remaining_cols: Vec<usize> = (0..col_rows.len())
        .filter(|&j| !col_rows[j].is_empty())
        .collect();
    let mut divisors = vec![BigInt::one(); units];
    if !remaining_rows.is_empty() {
        let col_index: HashMap<usize, usize> = remaining_cols
            .iter()
            .enumerate()
            .map(|(k, &j)| (j, k))
            .collect();
        let mut dense = IntMatrix::zeros(remaining_rows.len(), remaining_cols.len());
        for (r, &i) in remaining_rows.iter().enumerate() {
            for (&j, &v) in &rows[i] {
                dense.set(r, col_index[&j], BigInt::from(v));
            }
        }
        divisors.extend(elementary_divisors_dense(dense));
    }
    divisors
}

/// Rank of a sparse matrix.
pub fn rank(m: &SparseMatrix) -> usize {
    elementary_divisors(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn documented_examples() {
        let s = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), big(&[1, 6]));
        let s = smith_normal_form(&IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]));
        assert_eq!(s.diagonal(), big(&[1, 2]));
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn sparse_path_matches_dense_path() {
        let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let sparse = elementary_divisors(&SparseMatrix::from_dense(&rows));
        let dense = elementary_divisors_dense(IntMatrix::from_rows(&rows));
        assert_eq!(sparse, dense);
        assert_eq!(dense, big(&[2, 6, 12]));
    }

    /// Fraction-free elimination, independent of the reduction under test.
    fn determinant(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn is_diagonal_chain(s: &Smith) -> bool {
        let d = &s.d;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j && !d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols()))
            .map(|i| d.get(i, i).clone())
            .collect();
        diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    w[1].is_multiple_of(&w[0])
                }
            })
    }

    proptest! {
        #[test]
        fn smith_form_is_a_certified_factorisation(
            rows in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r)
            })
        ) {
            let m = IntMatrix::from_rows(&rows);
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
            prop_assert!(is_diagonal_chain(&s));
            prop_assert!(determinant(&s.u).abs().is_one());
            prop_assert!(determinant(&s.v).abs().is_one());
            let sparse = elementary_divisors(&SparseMatrix::from_dense(&rows));
            prop_assert_eq!(sparse, s.diagonal());
        }
    }
}
