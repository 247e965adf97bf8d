//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Rank over the rationals of a dense integer matrix.
pub fn rank(mut a: Vec<Vec<BigInt>>) -> usize {
    eliminate(&mut a).0
}

/// Determinant of a square integer matrix.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix is not square");
    if n == 0 {
        return BigInt::one();
    }
    let (rank, sign, last) = eliminate(&mut a);
    if rank < n {
        BigInt::zero()
    } else if sign {
        -last
    } else {
        last
    }
}

/// Returns `(rank, odd number of swaps, last pivot)`.
fn eliminate(a: &mut [Vec<BigInt>]) -> (usize, bool, BigInt) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swapped = false;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Smallest nonzero entry keeps intermediate growth down.
        let Some(pivot) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)))
        else {
            continue;
        };
        if pivot != r {
            a.swap(pivot, r);
            swapped = !swapped;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = &prow[c] * &row[j] - &lead * &prow[j];
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, swapped, prev)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(determinant(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
        assert_eq!(determinant(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn rank_with_skipped_columns() {
        assert_eq!(rank(m(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]])), 2);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(m(&[&[3]])), 1);
    }
}
