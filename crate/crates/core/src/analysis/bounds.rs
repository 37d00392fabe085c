use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{stacked_coloring, ColoredDiagram, Coloring};
use crate::diagram::DiagramRecord;
use crate::error::{Error, Result};
use crate::modular::least_common_prime_divisor;
use crate::moves::teneva_reduce;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundBranch {
    NoNontrivial,
    Exact2,
    Exact3,
    Exact4,
    Range,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    Theorem,
    Witness,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: usize,
    pub provenance: BoundSource,
}

/// A diagram of `T(2, n)` with a coloring realizing an upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub construction: String,
    pub palette: BTreeSet<u64>,
    pub diagram: DiagramRecord,
    pub coloring: Coloring,
}

impl Witness {
    fn new(construction: String, cd: ColoredDiagram) -> Self {
        let (d, c) = cd.into_parts();
        Witness { construction, palette: c.palette().colors, diagram: d.to_record(), coloring: c }
    }
}

/// What is known about `mincol_r T(2, n)`. Bounds are absent when only
/// trivial colorings exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub r: u64,
    pub lcpd: u64,
    pub branch: BoundBranch,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub witnesses: Vec<Witness>,
}

impl BoundReport {
    pub fn is_exact(&self) -> bool {
        matches!((self.lower, self.upper), (Some(l), Some(u)) if l.value == u.value)
    }
}

pub fn mincol_bounds(n: u64, r: u64) -> Result<BoundReport> {
    if n < 2 || r < 2 {
        return Err(Error::domain(format!("need n >= 2 and r >= 2, got n = {n}, r = {r}")));
    }
    let p = least_common_prime_divisor(n as i64, r as i64)?;
    let theorem = |value| Some(Bound { value, provenance: BoundSource::Theorem });
    let mut report = BoundReport { n, r, lcpd: p, branch: BoundBranch::NoNontrivial, lower: None, upper: None, witnesses: Vec::new() };
    if p == 1 {
        return Ok(report);
    }
    let step = r / p;
    let (branch, lower, witness) = match p {
        2 | 3 => {
            let branch = if p == 2 { BoundBranch::Exact2 } else { BoundBranch::Exact3 };
            let cd = stacked_coloring(n, r, 0, step)?;
            (branch, p as usize, Witness::new(format!("stacked coloring with a = 0, b = {step}"), cd))
        }
        _ => {
            let branch = if p == 5 { BoundBranch::Exact4 } else { BoundBranch::Range };
            let out = teneva_reduce(n, r, 0, step)?;
            let k = (p - 1) / 2;
            let text = format!("Teneva reduction with a = 0, b = {step}, {k} third moves per block of {p} crossings");
            (branch, 4, Witness::new(text, out.colored))
        }
    };
    let upper = witness.palette.len();
    if upper < lower || (branch != BoundBranch::Range && upper != lower) {
        return Err(Error::invariant(format!("witness uses {upper} colors against a lower bound of {lower}")));
    }
    report.branch = branch;
    report.lower = theorem(lower);
    report.upper = Some(Bound { value: upper, provenance: BoundSource::Witness });
    report.witnesses.push(witness);
    Ok(report)
}
