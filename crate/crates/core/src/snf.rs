//! Exact integer matrix normal forms.
//!
//! Two workhorses: the Smith normal form (invariant factors of exponent-sum
//! matrices, homology ranks) and a row-style Hermite reduction used as an
//! integer row-span membership test. Entries are arbitrary-precision so
//! adversarial exponents cannot overflow intermediate values.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix, row major. Rows may be empty (zero rows are fine).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let delta = factor * &self[(source, j)];
            self[(target, j)] += delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let delta = factor * &self[(i, source)];
            self[(i, target)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Nonzero invariant factors `d_1 | d_2 | …` of the matrix, each positive.
///
/// Elementary integer row/column operations drive each pivot to divide the
/// submatrix below-right of it; the divisibility chain is enforced at the
/// end by gcd-folding adjacent diagonal entries.
pub fn smith_invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let k_max = a.rows.min(a.cols);
    let mut diag: Vec<BigInt> = Vec::new();

    for k in 0..k_max {
        // Find the entry of minimal nonzero magnitude in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..a.rows {
            for j in k..a.cols {
                if !a[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);

        loop {
            // Clear the pivot column with Euclidean steps.
            let mut dirty = false;
            for i in k + 1..a.rows {
                if !a[(i, k)].is_zero() {
                    let q = -(&a[(i, k)] / &a[(k, k)]);
                    a.add_row(i, k, &q);
                    if !a[(i, k)].is_zero() {
                        // Remainder became the smaller pivot.
                        a.swap_rows(k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..a.cols {
                if !a[(k, j)].is_zero() {
                    let q = -(&a[(k, j)] / &a[(k, k)]);
                    a.add_col(j, k, &q);
                    if !a[(k, j)].is_zero() {
                        a.swap_cols(k, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide every remaining entry; fold in a violator.
            let mut violator = None;
            'scan: for i in k + 1..a.rows {
                for j in k + 1..a.cols {
                    if !(&a[(i, j)] % &a[(k, k)]).is_zero() {
                        violator = Some(i);
                        break 'scan;
                    }
                }
            }
            match violator {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row(k, i, &one);
                }
                None => break,
            }
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
        }
        diag.push(a[(k, k)].clone());
    }

    // Divisibility chain (the pivoting above already guarantees it, but the
    // fold keeps the output canonical regardless).
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = &diag[i] * &diag[j] / &g;
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag.retain(|d| !d.is_zero());
    diag
}

/// Rank over the rationals = number of nonzero invariant factors.
pub fn rank(m: &IntMatrix) -> usize {
    smith_invariant_factors(m).len()
}

/// Integer row echelon form (row-style Hermite): returns the nonzero rows,
/// each with a positive leading entry in a strictly increasing pivot column.
pub fn hermite_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| m.row(i).to_vec())
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let cols = m.cols;
    let mut echelon: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..cols {
        loop {
            // Gather rows whose leading column is `col`.
            let mut idxs: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| leading_col(r) == Some(col))
                .map(|(i, _)| i)
                .collect();
            if idxs.is_empty() {
                break;
            }
            if idxs.len() == 1 {
                let mut row = rows.remove(idxs[0]);
                if row[col].is_negative() {
                    for v in row.iter_mut() {
                        *v = -v.clone();
                    }
                }
                echelon.push(row);
                break;
            }
            // Euclidean: reduce the larger leading entries by the smallest.
            idxs.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let min_idx = idxs[0];
            let min_row = rows[min_idx].clone();
            for &i in &idxs[1..] {
                let q = &rows[i][col] / &min_row[col];
                for j in 0..cols {
                    let delta = &q * &min_row[j];
                    rows[i][j] -= delta;
                }
            }
            rows.retain(|r| r.iter().any(|v| !v.is_zero()));
        }
    }
    echelon
}

fn leading_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|v| !v.is_zero())
}

/// Is `v` in the integer row span of `m`? Reduces `v` against the Hermite
/// rows; membership iff it reduces to zero with integer quotients.
pub fn in_row_span(echelon: &[Vec<BigInt>], v: &[i64]) -> bool {
    let mut v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    for row in echelon {
        let Some(col) = leading_col(row) else { continue };
        if v[col].is_zero() {
            continue;
        }
        if !(&v[col] % &row[col]).is_zero() {
            return false;
        }
        let q = &v[col] / &row[col];
        for j in 0..v.len() {
            let delta = &q * &row[j];
            v[j] -= delta;
        }
    }
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn smith_of_known_matrix() {
        let m = IntMatrix::from_rows(
            alloc::vec![
                alloc::vec![-6, 111, -36, 6],
                alloc::vec![5, -672, 210, 74],
                alloc::vec![0, -255, 81, 24],
                alloc::vec![-7, 255, -81, -10],
            ],
            4,
        );
        assert_eq!(smith_invariant_factors(&m), ints(&[1, 3, 21]));
    }

    #[test]
    fn smith_of_simple_matrices() {
        let m = IntMatrix::from_rows(alloc::vec![alloc::vec![2, 0]], 2);
        assert_eq!(smith_invariant_factors(&m), ints(&[2]));
        let m = IntMatrix::from_rows(alloc::vec![alloc::vec![-1, 0]], 2);
        assert_eq!(smith_invariant_factors(&m), ints(&[1]));
        let m = IntMatrix::zero(2, 3);
        assert!(smith_invariant_factors(&m).is_empty());
        let m = IntMatrix::from_rows(alloc::vec![alloc::vec![2, 0], alloc::vec![0, 3]], 2);
        assert_eq!(smith_invariant_factors(&m), ints(&[1, 6]));
    }

    #[test]
    fn rank_counts_nonzero_factors() {
        let m = IntMatrix::from_rows(
            alloc::vec![alloc::vec![1, 2, 3], alloc::vec![2, 4, 6], alloc::vec![0, 1, 1]],
            3,
        );
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn row_span_membership() {
        let m = IntMatrix::from_rows(alloc::vec![alloc::vec![2, 0], alloc::vec![0, 3]], 2);
        let ech = hermite_rows(&m);
        assert!(in_row_span(&ech, &[2, 3]));
        assert!(in_row_span(&ech, &[4, -3]));
        assert!(!in_row_span(&ech, &[1, 0]));
        assert!(!in_row_span(&ech, &[0, 1]));
        assert!(in_row_span(&ech, &[0, 0]));
    }

    #[test]
    fn row_span_with_dependent_rows() {
        let m = IntMatrix::from_rows(
            alloc::vec![alloc::vec![1, 1, 0], alloc::vec![0, 2, 2], alloc::vec![1, 3, 2]],
            3,
        );
        let ech = hermite_rows(&m);
        assert!(in_row_span(&ech, &[1, 3, 2]));
        assert!(in_row_span(&ech, &[2, 4, 2]));
        assert!(!in_row_span(&ech, &[0, 1, 1]));
    }
}
