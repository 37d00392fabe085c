use super::{gcd_u64, reduce, smith_normal_form, IntegerMatrix};
use crate::error::{Error, Result};

/// Default ceiling on the number of solutions an enumeration may produce.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// Number of `x ∈ (Z_r)^cols` with `M·x ≡ 0 (mod r)`.
pub fn count_solutions_mod(m: &IntegerMatrix, r: u64) -> Result<u128> {
    check_modulus(r)?;
    let snf = smith_normal_form(m)?;
    let mut count: u128 = 1;
    for i in 0..m.cols() {
        let factor = if i < snf.rank { gcd_u64(modulus_of(snf.d[i], r), r) } else { r };
        count = count.checked_mul(factor as u128).ok_or(Error::Overflow("solution count"))?;
    }
    Ok(count)
}

/// Every solution of `M·x ≡ 0 (mod r)`, exactly once.
///
/// With `u·M·v = diag(d)` the solutions are `x = v·y mod r` where `y_i` runs
/// over multiples of `r / gcd(d_i, r)` for pivot coordinates and over all of
/// `Z_r` otherwise. The stream walks the multipliers of `y` in lexicographic
/// order, last coordinate fastest.
pub fn enumerate_solutions_mod(m: &IntegerMatrix, r: u64, cap: u128) -> Result<SolutionStream> {
    check_modulus(r)?;
    let snf = smith_normal_form(m)?;
    let cols = m.cols();
    let mut step = Vec::with_capacity(cols);
    let mut choices = Vec::with_capacity(cols);
    let mut count: u128 = 1;
    for i in 0..cols {
        let g = if i < snf.rank { gcd_u64(modulus_of(snf.d[i], r), r) } else { r };
        step.push(r / g);
        choices.push(g);
        count = count.checked_mul(g as u128).ok_or(Error::Overflow("solution count"))?;
    }
    if count > cap {
        return Err(Error::BudgetExceeded { count, cap });
    }
    let basis = (0..cols)
        .map(|j| (0..cols).map(|i| reduce(snf.v[(i, j)], r)).collect())
        .collect();
    Ok(SolutionStream {
        r,
        basis,
        step,
        choices,
        index: vec![0; cols],
        remaining: count,
    })
}

fn check_modulus(r: u64) -> Result<()> {
    if r < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {r}")));
    }
    Ok(())
}

/// `d mod r` as a value whose gcd with `r` equals `gcd(d, r)`; zero maps to `r`.
fn modulus_of(d: i128, r: u64) -> u64 {
    match reduce(d, r) {
        0 => r,
        x => x,
    }
}

/// Deterministic stream of solution vectors with entries in `[0, r)`.
#[derive(Debug, Clone)]
pub struct SolutionStream {
    r: u64,
    /// Columns of `v` reduced mod `r`.
    basis: Vec<Vec<u64>>,
    step: Vec<u64>,
    choices: Vec<u64>,
    index: Vec<u64>,
    remaining: u128,
}

impl SolutionStream {
    /// Number of vectors not yet yielded.
    pub fn remaining(&self) -> u128 {
        self.remaining
    }

    fn current(&self) -> Vec<u64> {
        let r = self.r as u128;
        let mut x = vec![0u128; self.basis.len()];
        for (j, col) in self.basis.iter().enumerate() {
            let y = (self.index[j] * self.step[j]) as u128 % r;
            if y == 0 {
                continue;
            }
            for (xi, &c) in x.iter_mut().zip(col) {
                *xi = (*xi + c as u128 * y) % r;
            }
        }
        x.into_iter().map(|v| v as u64).collect()
    }

    fn advance(&mut self) {
        for j in (0..self.index.len()).rev() {
            self.index[j] += 1;
            if self.index[j] < self.choices[j] {
                return;
            }
            self.index[j] = 0;
        }
    }
}

impl Iterator for SolutionStream {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.remaining == 0 {
            return None;
        }
        let x = self.current();
        self.remaining -= 1;
        self.advance();
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match usize::try_from(self.remaining) {
            Ok(n) => (n, Some(n)),
            Err(_) => (usize::MAX, None),
        }
    }
}
