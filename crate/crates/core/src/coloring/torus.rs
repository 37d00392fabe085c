use std::collections::BTreeSet;

use super::{ColoredDiagram, Coloring};
use crate::diagram::torus_diagram;
use crate::error::{Error, Result};
use crate::modular::{is_prime, least_common_prime_divisor, reduce};

/// Colors the closure of `σ_1^n` from top segments `a`, `b`: arc `j` gets
/// `j·b - (j-1)·a`, so the segment leaving crossing `i` (1-based) has
/// `(i+1)·b - i·a`.
pub fn braid_coloring(n: u64, r: u64, a: u64, b: u64) -> Result<ColoredDiagram> {
    if r < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {r}")));
    }
    if a >= r || b >= r {
        return Err(Error::domain(format!("colors must lie in [0, {r}), got a = {a}, b = {b}")));
    }
    let d = torus_diagram(n)?;
    let step = b as i128 - a as i128;
    if reduce(n as i128 * step, r) != 0 {
        return Err(Error::domain(format!(
            "closure condition fails: n(b - a) = {n}·({b} - {a}) is not 0 mod {r}"
        )));
    }
    let assignment = (0..n as usize).map(|j| (j, reduce(a as i128 + j as i128 * step, r))).collect();
    ColoredDiagram::new(d, Coloring::new(r, assignment)?)
}

/// `R_r^p = {0, r/p, ..., (p-1)·r/p}`.
pub fn subpalette(r: u64, p: u64) -> Result<BTreeSet<u64>> {
    if !is_prime(p) || r < 2 || !r.is_multiple_of(p) {
        return Err(Error::domain(format!("{p} is not a prime divisor of {r}")));
    }
    Ok((0..p).map(|i| i * (r / p)).collect())
}

/// Coloring of `T(2, n)` by stacked copies of a `σ_1^p` coloring with
/// colors from `R_r^p`, where `p = ⟨n, r⟩`.
pub fn stacked_coloring(n: u64, r: u64, a: u64, b: u64) -> Result<ColoredDiagram> {
    let p = least_common_prime_divisor(n as i64, r as i64)?;
    if p == 1 {
        return Err(Error::domain(format!("gcd({n}, {r}) = 1: only trivial colorings exist")));
    }
    let sub = subpalette(r, p)?;
    if !sub.contains(&a) || !sub.contains(&b) {
        return Err(Error::domain(format!("a = {a} and b = {b} must both lie in R_{r}^{p} = {sub:?}")));
    }
    braid_coloring(n, r, a, b)
}
