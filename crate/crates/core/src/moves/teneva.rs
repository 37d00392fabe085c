use std::collections::BTreeSet;

use serde::Serialize;

use super::{apply_move, edge_ref, MoveSpec};
use crate::coloring::{stacked_coloring, ColoredDiagram};
use crate::diagram::{torus_diagram, Provenance};
use crate::error::{Error, Result};
use crate::modular::least_common_prime_divisor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaletteStep {
    #[serde(rename = "move")]
    pub spec: MoveSpec,
    pub introduced: BTreeSet<u64>,
    pub removed: BTreeSet<u64>,
    pub gained: BTreeSet<u64>,
    pub lost: BTreeSet<u64>,
    pub palette_size_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaletteTrace {
    pub initial_palette: BTreeSet<u64>,
    pub steps: Vec<PaletteStep>,
}

impl PaletteTrace {
    fn new(cd: &ColoredDiagram) -> Self {
        PaletteTrace { initial_palette: cd.coloring().palette().colors, steps: Vec::new() }
    }

    pub fn final_palette_size(&self) -> usize {
        self.steps.last().map_or(self.initial_palette.len(), |s| s.palette_size_after)
    }

    /// Replays the gained/lost sets from the initial palette and checks each
    /// recorded size.
    pub fn is_consistent(&self) -> bool {
        let mut palette = self.initial_palette.clone();
        self.steps.iter().all(|s| {
            if !s.lost.is_subset(&palette) || !s.gained.is_disjoint(&palette) {
                return false;
            }
            palette.retain(|c| !s.lost.contains(c));
            palette.extend(&s.gained);
            palette.len() == s.palette_size_after
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("traces always serialize")
    }
}

#[derive(Debug, Clone)]
pub struct TenevaOutcome {
    pub colored: ColoredDiagram,
    pub trace: PaletteTrace,
    pub notes: Vec<String>,
}

fn step(cd: &ColoredDiagram, m: MoveSpec, trace: &mut PaletteTrace) -> Result<ColoredDiagram> {
    let out = apply_move(cd, &m)?;
    trace.steps.push(PaletteStep {
        spec: m,
        introduced: out.introduced,
        removed: out.removed,
        gained: out.gained,
        lost: out.lost,
        palette_size_after: out.colored.coloring().palette().size(),
    });
    Ok(out.colored)
}

/// Moves of the transformation on the closure of `σ_1^n`: a kink on the
/// bottom of arc 0, then `steps` third moves pulling it up over crossings
/// `n-2, n-3, ...`.
pub fn teneva_sequence(n: u64, steps: u64) -> Result<Vec<MoveSpec>> {
    if n < 3 {
        return Err(Error::domain(format!("the transformation needs n >= 3, got {n}")));
    }
    if steps < 1 || steps > n - 1 {
        return Err(Error::domain(format!("steps must lie in [1, {}], got {steps}", n - 1)));
    }
    let n = n as usize;
    let mut moves = vec![MoveSpec::R1Add {
        site: super::EdgeRef { arc: 0, segment: 0 },
        under_first: true,
        sign: 1,
    }];
    moves.extend((1..=steps as usize).map(|s| MoveSpec::R3 { crossings: [n - 1 - s, n, n - 1] }));
    Ok(moves)
}

/// Runs [`teneva_sequence`] on a colored standard closure of `σ_1^n`.
pub fn teneva_transform(cd: &ColoredDiagram, steps: u64) -> Result<TenevaOutcome> {
    let n = match cd.diagram().provenance() {
        Provenance::Torus { p: 2, q } => *q,
        _ => return Err(Error::domain("the transformation starts from a standard T(2, n) closure")),
    };
    if cd.diagram().gauss_code() != torus_diagram(n)?.gauss_code() {
        return Err(Error::domain("diagram is not the standard closure of σ_1^n"));
    }
    let moves = teneva_sequence(n, steps)?;
    let mut trace = PaletteTrace::new(cd);
    let mut cur = cd.clone();
    for m in moves {
        cur = step(&cur, m, &mut trace)?;
    }
    Ok(TenevaOutcome { colored: cur, trace, notes: even_note(n, cd.r()) })
}

fn even_note(n: u64, r: u64) -> Vec<String> {
    if n.is_multiple_of(2) && r.is_multiple_of(2) {
        vec![format!(
            "n = {n} and r = {r} are even: ⟨n, r⟩ = 2, so a 2-color coloring gives a smaller bound than this transformation"
        )]
    } else {
        Vec::new()
    }
}

/// Transformation on a twist run `run = [c_1, ..., c_m]` of any diagram,
/// with consecutive crossings joined by bigons.
///
/// A kink is placed on the edge between the under-passage of `c_{m-1}` and
/// the over-passage of `c_m`, and step `s` pulls it over `c_{m-s}`.
pub fn teneva_run(cd: &ColoredDiagram, run: &[usize], steps: usize) -> Result<TenevaOutcome> {
    let m = run.len();
    if m < 2 {
        return Err(Error::domain("a twist run needs at least two crossings"));
    }
    if steps < 1 || steps > m - 1 {
        return Err(Error::domain(format!("steps must lie in [1, {}], got {steps}", m - 1)));
    }
    let code = cd
        .diagram()
        .gauss_code()
        .ok_or_else(|| Error::domain("diagram carries no gauss code; moves need one"))?;
    if run.iter().any(|&c| c >= code.num_crossings()) {
        return Err(Error::pattern(format!("run {run:?} names a missing crossing")));
    }
    let pos = code.positions();
    let adjacent = |a, b| code.next(a) == b || code.next(b) == a;
    for w in run.windows(2) {
        let ([o1, u1], [o2, u2]) = (pos[w[0]], pos[w[1]]);
        if !(adjacent(u1, o2) && adjacent(o1, u2)) {
            return Err(Error::pattern(format!("crossings {} and {} are not a twist", w[0], w[1])));
        }
    }
    let (cm1, cm) = (run[m - 2], run[m - 1]);
    let (u, o) = (pos[cm1][1], pos[cm][0]);
    let (edge, under_first) = if code.next(u) == o { (o, true) } else { (u, false) };
    let site = edge_ref(code, edge);
    let kink = code.num_crossings();
    let base = code.signs()[cm];

    let mut trace = PaletteTrace::new(cd);
    let mut first_error = None;
    let mut cur = None;
    for sign in [base, -base] {
        let mut attempt = PaletteTrace::new(cd);
        let r1 = MoveSpec::R1Add { site, under_first, sign };
        let result = step(cd, r1, &mut attempt)
            .and_then(|kinked| step(&kinked, MoveSpec::R3 { crossings: [cm1, kink, cm] }, &mut attempt));
        match result {
            Ok(d) => {
                trace = attempt;
                cur = Some(d);
                break;
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    let mut cur = match cur {
        Some(d) => d,
        None => return Err(first_error.expect("two attempts were made")),
    };
    for s in 2..=steps {
        cur = step(&cur, MoveSpec::R3 { crossings: [run[m - 1 - s], kink, cm] }, &mut trace)?;
    }
    Ok(TenevaOutcome { colored: cur, trace, notes: Vec::new() })
}

/// Reduction for `⟨n, r⟩ = p = 2k+1`, `k > 1`: the stacked coloring with top
/// colors `a`, `b` from `R_r^p`, then `k` third moves on every `σ_1^p` block.
pub fn teneva_reduce(n: u64, r: u64, a: u64, b: u64) -> Result<TenevaOutcome> {
    let p = least_common_prime_divisor(n as i64, r as i64)?;
    if p % 2 == 0 || p < 5 {
        return Err(Error::domain(format!(
            "reduction needs ⟨n, r⟩ = 2k+1 with k > 1; ⟨{n}, {r}⟩ = {p} belongs to another branch"
        )));
    }
    if a == b {
        return Err(Error::domain("a and b must differ"));
    }
    let start = stacked_coloring(n, r, a, b)?;
    let k = ((p - 1) / 2) as usize;
    let p = p as usize;
    let mut trace = PaletteTrace::new(&start);
    let mut cur = start;
    for block in 0..n as usize / p {
        let run: Vec<usize> = (block * p..(block + 1) * p).collect();
        let out = teneva_run(&cur, &run, k)?;
        trace.steps.extend(out.trace.steps);
        cur = out.colored;
    }
    Ok(TenevaOutcome { colored: cur, trace, notes: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{braid_coloring, count_colorings, palette_of};
    use crate::modular::reduce;

    fn x(k: i128, a: u64, b: u64, r: u64) -> u64 {
        reduce((k + 1) * b as i128 - k * a as i128, r)
    }

    #[test]
    fn sequence_lengths() {
        assert_eq!(teneva_sequence(5, 2).unwrap().len(), 3);
        assert_eq!(teneva_sequence(7, 3).unwrap().len(), 4);
        assert!(teneva_sequence(5, 5).is_err());
        assert!(teneva_sequence(5, 0).is_err());
        assert!(teneva_sequence(2, 1).is_err());
    }

    #[test]
    fn t25_goes_from_five_to_four_colors() {
        let cd = braid_coloring(5, 5, 0, 1).unwrap();
        let out = teneva_transform(&cd, 2).unwrap();
        assert_eq!(palette_of(&out.colored).colors, BTreeSet::from([0, 1, 2, 3]));
        let steps = &out.trace.steps;
        assert_eq!(steps.len(), 3);
        assert_eq!(steps[1].introduced, BTreeSet::from([2]));
        assert_eq!(steps[2].introduced, BTreeSet::from([3]));
        assert_eq!(steps[2].removed, BTreeSet::from([4]));
        assert!(out.trace.is_consistent());
    }

    #[test]
    fn trefoil_instance() {
        let (r, a, b) = (9, 2, 5);
        let cd = braid_coloring(3, r, a, b).unwrap();
        let out = teneva_transform(&cd, 2).unwrap();
        let s = &out.trace.steps;
        assert_eq!(s[1].introduced, BTreeSet::from([x(4, a, b, r)]));
        assert_eq!(s[2].introduced, BTreeSet::from([x(5, a, b, r)]));
        assert_eq!(s[2].removed, BTreeSet::from([x(1, a, b, r)]));
    }

    #[test]
    fn lemma_closed_forms() {
        for n in 3..=9u64 {
            for (r, a, b) in [(n, 0, 1), (2 * n, 3, 5), (3 * n, 1, 4)] {
                let Ok(cd) = braid_coloring(n, r, a % r, b % r) else { continue };
                let (a, b) = (a % r, b % r);
                let out = teneva_transform(&cd, n - 1).unwrap();
                let s = &out.trace.steps;
                let n = n as i128;
                assert_eq!(s[1].introduced, BTreeSet::from([x(n + 1, a, b, r)]));
                for i in 2..n as usize {
                    let ii = i as i128;
                    assert_eq!(s[i].removed, BTreeSet::from([x(n - ii, a, b, r)]), "n={n} i={i}");
                    assert_eq!(s[i].introduced, BTreeSet::from([x(n + ii, a, b, r)]), "n={n} i={i}");
                }
                assert!(out.trace.is_consistent());
                assert_eq!(count_colorings(out.colored.diagram(), r).unwrap(), count_colorings(cd.diagram(), r).unwrap());
            }
        }
    }

    #[test]
    fn generic_run_matches_torus_sequence() {
        let cd = braid_coloring(7, 7, 0, 1).unwrap();
        let a = teneva_transform(&cd, 4).unwrap();
        let b = teneva_run(&cd, &(0..7).collect::<Vec<_>>(), 4).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.colored, b.colored);
    }

    #[test]
    fn prime_reduction_to_k_plus_two() {
        for p in [5u64, 7, 11, 13] {
            let k = (p - 1) / 2;
            let cd = braid_coloring(p, p, 0, 1).unwrap();
            let out = teneva_transform(&cd, k).unwrap();
            assert_eq!(out.trace.final_palette_size() as u64, k + 2);
            let more = teneva_transform(&cd, k + 1).unwrap();
            assert!(more.trace.final_palette_size() > out.trace.final_palette_size());
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(palette_of(&teneva_reduce(5, 5, 0, 1).unwrap().colored).size(), 4);
        assert!(matches!(teneva_reduce(9, 9, 0, 1), Err(Error::Domain(_))));
        let out = teneva_reduce(7, 21, 0, 3).unwrap();
        assert!(palette_of(&out.colored).size() <= 5);
        assert!(palette_of(&out.colored).colors.iter().all(|c| c % 3 == 0));
        let out = teneva_reduce(10, 5, 0, 1).unwrap();
        assert_eq!(palette_of(&out.colored).size(), 4);
        assert!(out.notes.is_empty());
    }

    #[test]
    fn even_pairs_are_flagged() {
        let out = teneva_transform(&braid_coloring(6, 6, 0, 1).unwrap(), 3).unwrap();
        assert_eq!(out.notes.len(), 1);
        let out = teneva_transform(&braid_coloring(6, 3, 0, 1).unwrap(), 3).unwrap();
        assert!(out.notes.is_empty());
    }

    #[test]
    fn transform_needs_standard_closure() {
        let cd = braid_coloring(5, 5, 0, 1).unwrap();
        let moved = teneva_transform(&cd, 1).unwrap().colored;
        assert!(matches!(teneva_transform(&moved, 1), Err(Error::Domain(_))));
    }
}
