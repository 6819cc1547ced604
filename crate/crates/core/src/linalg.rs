//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// column of each nonzero row.
fn row_reduce(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some solution of `matrix · x = rhs`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(matrix.len(), rhs.len());
    let cols = matrix.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            debug_assert_eq!(row.len(), cols);
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Rank of a rational matrix.
pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut rows = matrix.to_vec();
    row_reduce(&mut rows, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[1, 2], &[0, 1]]);
        assert_eq!(solve(&a, &[int(1), int(1)]), Some(vec![int(-1), int(1)]));
        let a = m(&[&[3]]);
        assert_eq!(solve(&a, &[int(1)]), Some(vec![ratio(1, 3)]));
    }

    #[test]
    fn underdetermined_sets_free_to_zero() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[int(1), int(1)]), Some(vec![int(1), int(0)]));
    }

    #[test]
    fn inconsistent() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[int(1), int(2)]), None);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]])), 2);
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn empty_system() {
        assert_eq!(solve(&[], &[]), Some(vec![]));
    }
}
