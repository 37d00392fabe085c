use super::IntegerMatrix;
use crate::error::Result;

/// `u · m · v = diag(d)` with `d[0] | d[1] | ...` and `u`, `v` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    /// Diagonal of length `min(rows, cols)`; nonzero entries first.
    pub d: Vec<i128>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub rank: usize,
}

/// Smith normal form by repeated smallest-pivot elimination.
///
/// The pivot at each stage is the nonzero entry of least absolute value in
/// the trailing submatrix, swapped into the diagonal position. All arithmetic
/// is checked; overflow surfaces as [`crate::Error::Overflow`].
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SnfDecomposition> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let k = rows.min(cols);

    let mut t = 0;
    while t < k {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let pivot = a[(t, t)];
        let mut dirty = false;
        for i in t + 1..rows {
            let q = a[(i, t)] / pivot;
            if q != 0 {
                a.add_row_multiple(i, t, -q)?;
                u.add_row_multiple(i, t, -q)?;
            }
            dirty |= a[(i, t)] != 0;
        }
        for j in t + 1..cols {
            let q = a[(t, j)] / pivot;
            if q != 0 {
                a.add_col_multiple(j, t, -q)?;
                v.add_col_multiple(j, t, -q)?;
            }
            dirty |= a[(t, j)] != 0;
        }
        if dirty {
            // a smaller remainder now sits in row/column t; re-pivot
            continue;
        }

        if let Some(i) = non_divisible_row(&a, t) {
            a.add_row_multiple(t, i, 1)?;
            u.add_row_multiple(t, i, 1)?;
            continue;
        }

        if a[(t, t)] < 0 {
            a.negate_row(t)?;
            u.negate_row(t)?;
        }
        t += 1;
    }

    let d: Vec<i128> = (0..k).map(|i| a[(i, i)]).collect();
    let rank = d.iter().take_while(|&&x| x != 0).count();
    Ok(SnfDecomposition { d, u, v, rank })
}

fn smallest_nonzero(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u128, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].unsigned_abs();
            if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn non_divisible_row(a: &IntegerMatrix, t: usize) -> Option<usize> {
    let pivot = a[(t, t)];
    (t + 1..a.rows()).find(|&i| (t + 1..a.cols()).any(|j| a[(i, j)] % pivot != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn check(m: &IntegerMatrix) -> SnfDecomposition {
        let snf = smith_normal_form(m).unwrap();
        let prod = snf.u.checked_mul(m).unwrap().checked_mul(&snf.v).unwrap();
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let expected = if i == j { snf.d[i] } else { 0 };
                assert_eq!(prod[(i, j)], expected, "u·m·v not diagonal at ({i},{j}) for {m:?}");
            }
        }
        assert!(snf.d.iter().all(|&x| x >= 0));
        for w in snf.d.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {:?}", snf.d);
            } else {
                assert!(w[0] == 0 || w[1] == 0);
            }
        }
        assert_eq!(snf.u.determinant().unwrap().abs(), 1);
        assert_eq!(snf.v.determinant().unwrap().abs(), 1);
        snf
    }

    #[test]
    fn diagonal_two_three() {
        let m = IntegerMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]).unwrap();
        let snf = check(&m);
        assert_eq!(snf.d, vec![1, 6]);
        assert_eq!(snf.rank, 2);
    }

    #[test]
    fn zero_matrix() {
        let snf = check(&IntegerMatrix::zeros(2, 2));
        assert_eq!(snf.d, vec![0, 0]);
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn one_by_one_identity() {
        let snf = check(&IntegerMatrix::from_rows(&[vec![1i64]]).unwrap());
        assert_eq!(snf.d, vec![1]);
        assert_eq!(snf.rank, 1);
    }

    #[test]
    fn rectangular_and_negative() {
        let m = IntegerMatrix::from_rows(&[vec![-4i64, 6, 2], vec![8, -2, 0]]).unwrap();
        let snf = check(&m);
        assert_eq!(snf.rank, 2);
        // gcd of entries is 2, gcd of 2x2 minors (-40, -16, 4) is 4
        assert_eq!(snf.d, vec![2, 2]);
        check(&m.transpose());
    }

    #[test]
    fn deterministic() {
        let m = IntegerMatrix::from_rows(&[vec![3i64, 5, 7], vec![2, -9, 4], vec![1, 1, 1]]).unwrap();
        assert_eq!(smith_normal_form(&m).unwrap(), smith_normal_form(&m).unwrap());
    }

    #[test]
    fn overflow_is_explicit() {
        // the pivot must be made positive, which cannot be represented
        let m = IntegerMatrix::new(1, 1, vec![i128::MIN]).unwrap();
        assert!(matches!(smith_normal_form(&m), Err(Error::Overflow(_))));
    }

    proptest::proptest! {
        #[test]
        fn random_matrices_decompose(
            rows in 1usize..=6,
            cols in 1usize..=6,
            seed in proptest::collection::vec(-9i64..=9, 36),
        ) {
            let entries = seed[..rows * cols].iter().map(|&x| x as i128).collect();
            let m = IntegerMatrix::new(rows, cols, entries).unwrap();
            check(&m);
        }
    }
}
