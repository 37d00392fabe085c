use std::fmt;

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i128>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i128>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::structural(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows<T: Into<i128> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::structural("ragged rows"));
        }
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| x.into())).collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i128] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Checked product `self · rhs`.
    pub fn checked_mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    let p = self[(i, k)]
                        .checked_mul(rhs[(k, j)])
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc.checked_add(p).ok_or(Error::Overflow("matrix product"))?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Matrix with row `row` and column `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> IntegerMatrix {
        let mut entries = Vec::with_capacity(self.rows.saturating_sub(1) * self.cols.saturating_sub(1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                entries.push(self[(i, j)]);
            }
        }
        IntegerMatrix {
            rows: self.rows.saturating_sub(1),
            cols: self.cols.saturating_sub(1),
            entries,
        }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[(k, k)] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[(i, k)] != 0) else {
                    return Ok(0);
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lhs = a[(i, j)].checked_mul(a[(k, k)]);
                    let rhs = a[(i, k)].checked_mul(a[(k, j)]);
                    let num = lhs
                        .zip(rhs)
                        .and_then(|(l, r)| l.checked_sub(r))
                        .ok_or(Error::Overflow("determinant"))?;
                    a[(i, j)] = num / prev;
                }
                a[(i, k)] = 0;
            }
            prev = a[(k, k)];
        }
        Ok(sign * a[(n - 1, n - 1)])
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`, checked.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: i128) -> Result<()> {
        for j in 0..self.cols {
            let v = factor
                .checked_mul(self[(src, j)])
                .and_then(|p| p.checked_add(self[(dst, j)]))
                .ok_or(Error::Overflow("row operation"))?;
            self[(dst, j)] = v;
        }
        Ok(())
    }

    /// `col[dst] += factor * col[src]`, checked.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: i128) -> Result<()> {
        for i in 0..self.rows {
            let v = factor
                .checked_mul(self[(i, src)])
                .and_then(|p| p.checked_add(self[(i, dst)]))
                .ok_or(Error::Overflow("column operation"))?;
            self[(i, dst)] = v;
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].checked_neg().ok_or(Error::Overflow("row negation"))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = i128;

    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_is_checked() {
        assert!(IntegerMatrix::new(2, 2, vec![1, 2, 3]).is_err());
        assert!(IntegerMatrix::from_rows(&[vec![1i64, 2], vec![3]]).is_err());
    }

    #[test]
    fn determinant_small_cases() {
        let m = IntegerMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), 6);
        let m = IntegerMatrix::from_rows(&[vec![0i64, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.determinant().unwrap(), -1);
        let m = IntegerMatrix::from_rows(&[vec![1i64, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap();
        assert_eq!(m.determinant().unwrap(), -3);
        assert_eq!(IntegerMatrix::zeros(0, 0).determinant().unwrap(), 1);
    }

    #[test]
    fn minor_drops_row_and_column() {
        let m = IntegerMatrix::from_rows(&[vec![1i64, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        assert_eq!(m.minor(1, 0).to_rows(), vec![vec![2, 3], vec![8, 9]]);
    }

    #[test]
    fn product_overflow_is_reported() {
        let big = IntegerMatrix::from_rows(&[vec![i128::MAX / 2 + 1]]).unwrap();
        let two = IntegerMatrix::from_rows(&[vec![2i64]]).unwrap();
        assert_eq!(big.checked_mul(&two), Err(Error::Overflow("matrix product")));
    }
}
