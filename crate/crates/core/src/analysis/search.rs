use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::{stacked_coloring, ColoredDiagram};
use crate::error::{Error, Result};
use crate::modular::least_common_prime_divisor;
use crate::moves::{teneva_run, PaletteTrace};

/// One Teneva transformation on a twist run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistMove {
    pub run: Vec<usize>,
    pub steps: usize,
}

/// Applies the moves in order, concatenating their traces.
pub fn apply_twist_moves(cd: &ColoredDiagram, moves: &[TwistMove]) -> Result<(ColoredDiagram, PaletteTrace)> {
    let mut cur = cd.clone();
    let mut trace = PaletteTrace { initial_palette: cd.coloring().palette().colors, steps: Vec::new() };
    for m in moves {
        let out = teneva_run(&cur, &m.run, m.steps)?;
        trace.steps.extend(out.trace.steps);
        cur = out.colored;
    }
    Ok((cur, trace))
}

/// Contiguous sub-runs of a region in both directions, each pulled all the
/// way. A transformation with `s` steps only touches the last `s + 1`
/// crossings of its run, so shorter pulls are covered by shorter runs.
fn region_moves(region: &[usize]) -> Vec<TwistMove> {
    let mut out = Vec::new();
    for len in 2..=region.len() {
        for start in 0..=region.len() - len {
            for reversed in [false, true] {
                let mut run = region[start..start + len].to_vec();
                if reversed {
                    run.reverse();
                }
                out.push(TwistMove { run, steps: len - 1 });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSearchReport {
    pub initial_palette: usize,
    pub best_palette: usize,
    pub best: Vec<TwistMove>,
    /// For each palette size reached, the first move sequence reaching it.
    pub reached: BTreeMap<usize, Vec<TwistMove>>,
    pub evaluated: u64,
    pub budget: u64,
    pub complete: bool,
}

struct Walk<'a> {
    regions: &'a [Vec<usize>],
    budget: u64,
    report: TwistSearchReport,
}

impl Walk<'_> {
    fn visit(&mut self, cd: &ColoredDiagram, region: usize, seq: &mut Vec<TwistMove>) {
        if region == self.regions.len() {
            return;
        }
        self.visit(cd, region + 1, seq);
        for m in region_moves(&self.regions[region]) {
            if self.report.evaluated >= self.budget {
                self.report.complete = false;
                return;
            }
            self.report.evaluated += 1;
            let Ok(out) = teneva_run(cd, &m.run, m.steps) else { continue };
            seq.push(m);
            let size = out.colored.coloring().palette().size();
            self.report.reached.entry(size).or_insert_with(|| seq.clone());
            if size < self.report.best_palette {
                self.report.best_palette = size;
                self.report.best = seq.clone();
            }
            self.visit(&out.colored, region + 1, seq);
            seq.pop();
        }
    }
}

/// Tries at most one Teneva transformation per twist region, over every
/// contiguous sub-run, direction and step count, within `budget`
/// transformations. Regions are taken in order and may be skipped.
pub fn twist_region_search(cd: &ColoredDiagram, regions: &[Vec<usize>], budget: u64) -> TwistSearchReport {
    let initial = cd.coloring().palette().size();
    let report = TwistSearchReport {
        initial_palette: initial,
        best_palette: initial,
        best: Vec::new(),
        reached: BTreeMap::from([(initial, Vec::new())]),
        evaluated: 0,
        budget,
        complete: true,
    };
    let mut walk = Walk { regions, budget, report };
    walk.visit(cd, 0, &mut Vec::new());
    walk.report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentCandidate {
    pub a: u64,
    pub b: u64,
    /// Offset of the run inside each block of `⟨n, r⟩` crossings.
    pub start: usize,
    pub len: usize,
    pub reversed: bool,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub k: u64,
    pub n: u64,
    pub r: u64,
    pub lcpd: u64,
    pub target: usize,
    pub baseline_palette: usize,
    pub best_palette: usize,
    pub best: Option<ExperimentCandidate>,
    pub evaluated: u64,
    pub budget: u64,
    pub complete: bool,
    /// A searched coloring used fewer than `k + 2` colors.
    pub counterexample: bool,
}

/// Runs inside a block, pulled all the way. For `b = r/p` the runs ending at
/// the block's last crossing come first: they are the standard
/// transformation with steps `1, 2, ..., p - 1`.
fn candidates(p: usize, r: u64) -> Vec<ExperimentCandidate> {
    let step = r / p as u64;
    let mut shapes: Vec<(usize, usize, bool)> = (2..=p).map(|len| (p - len, len, false)).collect();
    for len in 2..=p {
        for start in 0..=p - len {
            for reversed in [false, true] {
                if reversed || start + len != p {
                    shapes.push((start, len, reversed));
                }
            }
        }
    }
    let mut out = Vec::new();
    for i in 1..p as u64 {
        for &(start, len, reversed) in &shapes {
            out.push(ExperimentCandidate { a: 0, b: i * step, start, len, reversed, steps: len - 1 });
        }
    }
    out
}

fn evaluate(n: u64, r: u64, p: usize, c: &ExperimentCandidate) -> Result<usize> {
    let mut cd = stacked_coloring(n, r, c.a, c.b)?;
    for block in 0..n as usize / p {
        let mut run: Vec<usize> = (block * p + c.start..block * p + c.start + c.len).collect();
        if c.reversed {
            run.reverse();
        }
        cd = teneva_run(&cd, &run, c.steps)?.colored;
    }
    Ok(cd.coloring().palette().size())
}

/// Bounded search over Teneva transformations of stacked colorings of
/// `T(2, n)` with `⟨n, r⟩ = 2k+1`, `k > 2`, applied alike to every block of
/// `2k+1` crossings. Running out of budget marks the report incomplete.
pub fn conjecture_experiment(k: u64, n: u64, r: u64, budget: u64) -> Result<ExperimentReport> {
    if k <= 2 {
        return Err(Error::domain(format!("k must exceed 2, got {k}; k = 2 is the settled ⟨n, r⟩ = 5 case")));
    }
    let p = least_common_prime_divisor(n as i64, r as i64)?;
    if p != 2 * k + 1 {
        return Err(Error::domain(format!("⟨{n}, {r}⟩ = {p}, not 2k + 1 = {}", 2 * k + 1)));
    }
    let baseline = p as usize;
    let mut report = ExperimentReport {
        k,
        n,
        r,
        lcpd: p,
        target: (k + 2) as usize,
        baseline_palette: baseline,
        best_palette: baseline,
        best: None,
        evaluated: 0,
        budget,
        complete: true,
        counterexample: false,
    };
    for c in candidates(baseline, r) {
        if report.evaluated >= budget {
            report.complete = false;
            break;
        }
        report.evaluated += 1;
        let Ok(size) = evaluate(n, r, baseline, &c) else { continue };
        if size < report.best_palette {
            report.best_palette = size;
            report.best = Some(c);
        }
    }
    report.counterexample = report.best_palette < report.target;
    Ok(report)
}
