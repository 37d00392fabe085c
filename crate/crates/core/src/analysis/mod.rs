//! Minimum color counts, the torus bound calculator, the three-color
//! classifier and bounded searches over Teneva transformations.

mod bounds;
mod search;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use bounds::{mincol_bounds, Bound, BoundBranch, BoundReport, Witness};
pub use search::{
    apply_twist_moves, conjecture_experiment, twist_region_search, ExperimentCandidate, ExperimentReport, TwistMove, TwistSearchReport,
};

use crate::coloring::{count_colorings, enumerate_colorings};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::modular::{is_prime, reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleKind {
    /// Any two of the colors meeting at a crossing produce the third.
    ClosedCyclic,
    /// Some color is never `2u - v` for the other two colors `u`, `v`.
    BlockedColor,
    NotApplicable,
}

/// Multiplication-table class of three distinct colors under `x ∗ y = 2y - x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleClass {
    pub kind: TripleKind,
    /// Every color of the triple that cannot end an under-arc.
    pub blocked: BTreeSet<u64>,
    pub requires_3_divides_r: bool,
}

pub fn classify_triple(a: u64, b: u64, c: u64, r: u64) -> Result<TripleClass> {
    if r < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {r}")));
    }
    let t = [a % r, b % r, c % r];
    if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return Err(Error::domain(format!("colors {a}, {b}, {c} are not distinct mod {r}")));
    }
    let star = |x: u64, y: u64| reduce(2 * y as i128 - x as i128, r);
    let mut blocked = BTreeSet::new();
    for i in 0..3 {
        let (x, u, v) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
        if star(u, v) != x && star(v, u) != x {
            blocked.insert(x);
        }
    }
    // the closed table: x ∗ y is the third color for every pair
    let closed = (0..3).all(|i| star(t[i], t[(i + 1) % 3]) == t[(i + 2) % 3] && star(t[(i + 1) % 3], t[i]) == t[(i + 2) % 3]);
    let kind = if closed {
        TripleKind::ClosedCyclic
    } else if !blocked.is_empty() {
        TripleKind::BlockedColor
    } else {
        TripleKind::NotApplicable
    };
    Ok(TripleClass { kind, blocked, requires_3_divides_r: closed })
}

/// Whether a non-split diagram can carry an `r`-coloring with exactly three
/// colors.
pub fn three_color_feasible(r: u64) -> bool {
    r >= 3 && r.is_multiple_of(3)
}

/// Fewest colors over the nontrivial `r`-colorings of `d`, or `None` if it
/// has only trivial colorings.
pub fn min_colors_of_diagram(d: &Diagram, r: u64, cap: u128) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    for c in enumerate_colorings(d, r, cap)? {
        let size = c.palette().size();
        if size > 1 && best.is_none_or(|b| size < b) {
            best = Some(size);
            if size == 2 {
                break;
            }
        }
    }
    Ok(best)
}

/// Whether every nontrivial `p`-coloring of `d` gives distinct arcs distinct
/// colors. Minimality and alternation of `d` are the caller's assertion.
pub fn harary_check(d: &Diagram, p: u64, cap: u128) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if count_colorings(d, p)? <= p as u128 {
        return Err(Error::domain(format!("diagram has no nontrivial {p}-coloring; p does not divide its determinant")));
    }
    let arcs = d.num_arcs();
    for c in enumerate_colorings(d, p, cap)? {
        let size = c.palette().size();
        if size > 1 && size != arcs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::DEFAULT_CAP;
    use crate::diagram::{rational_diagram, torus_diagram, RationalSpec};
    use proptest::prelude::*;

    #[test]
    fn triple_examples() {
        let t = classify_triple(0, 1, 2, 3).unwrap();
        assert_eq!(t.kind, TripleKind::ClosedCyclic);
        assert!(t.requires_3_divides_r);
        let t = classify_triple(0, 1, 2, 5).unwrap();
        assert_eq!(t.kind, TripleKind::BlockedColor);
        assert_eq!(t.blocked, BTreeSet::from([1]));
        assert_eq!(classify_triple(0, 1, 3, 6).unwrap().kind, TripleKind::BlockedColor);
        assert!(matches!(classify_triple(0, 3, 3, 5), Err(Error::Domain(_))));
        assert!(matches!(classify_triple(1, 6, 2, 5), Err(Error::Domain(_))));
    }

    /// Direct reading of the closure condition: some labeling satisfies all
    /// three equations.
    fn closed_oracle(a: u64, b: u64, c: u64, r: u64) -> bool {
        let m = |x: i128| x.rem_euclid(r as i128);
        let perms = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
        perms.iter().any(|&[a, b, c]| {
            let (a, b, c) = (a as i128, b as i128, c as i128);
            m(2 * b - a) == m(c) && m(2 * a - c) == m(b) && m(2 * c - b) == m(a)
        })
    }

    #[test]
    fn exhaustive_scan_matches_feasibility() {
        for r in 2..=30u64 {
            let mut any = false;
            for a in 0..r {
                for b in a + 1..r {
                    for c in b + 1..r {
                        let t = classify_triple(a, b, c, r).unwrap();
                        assert_eq!(t.kind == TripleKind::ClosedCyclic, closed_oracle(a, b, c, r));
                        assert_ne!(t.kind, TripleKind::NotApplicable, "({a}, {b}, {c}) mod {r}");
                        any |= t.kind == TripleKind::ClosedCyclic;
                    }
                }
            }
            assert_eq!(any, three_color_feasible(r), "r = {r}");
        }
        assert!(three_color_feasible(9) && three_color_feasible(6) && !three_color_feasible(5));
    }

    proptest! {
        #[test]
        fn classification_is_invariant(r in 3u64..60, a in 0u64..60, b in 0u64..60, c in 0u64..60, t in 0u64..60) {
            let (a, b, c) = (a % r, b % r, c % r);
            prop_assume!(a != b && b != c && a != c);
            let base = classify_triple(a, b, c, r).unwrap();
            for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                prop_assert_eq!(&classify_triple(x, y, z, r).unwrap(), &base);
            }
            let moved = classify_triple((a + t) % r, (b + t) % r, (c + t) % r, r).unwrap();
            prop_assert_eq!(moved.kind, base.kind);
            let shifted: BTreeSet<u64> = base.blocked.iter().map(|x| (x + t) % r).collect();
            prop_assert_eq!(moved.blocked, shifted);
        }
    }

    #[test]
    fn diagram_minima() {
        let t = |n| torus_diagram(n).unwrap();
        assert_eq!(min_colors_of_diagram(&t(5), 5, DEFAULT_CAP).unwrap(), Some(5));
        assert_eq!(min_colors_of_diagram(&t(4), 4, DEFAULT_CAP).unwrap(), Some(2));
        assert_eq!(min_colors_of_diagram(&t(5), 7, DEFAULT_CAP).unwrap(), None);
        assert_eq!(min_colors_of_diagram(&t(9), 3, DEFAULT_CAP).unwrap(), Some(3));
        assert!(matches!(min_colors_of_diagram(&t(6), 6, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn odd_moduli_need_more_than_two_colors_on_knots() {
        for n in (3..=11u64).step_by(2) {
            for r in (3..=21u64).step_by(2) {
                if let Some(m) = min_colors_of_diagram(&torus_diagram(n).unwrap(), r, DEFAULT_CAP).unwrap() {
                    assert!(m > 2, "n = {n}, r = {r}");
                }
            }
        }
    }

    #[test]
    fn three_divides_both_gives_three() {
        for (n, r) in [(3, 3), (9, 3), (3, 9), (6, 9), (9, 15), (12, 6)] {
            let m = min_colors_of_diagram(&torus_diagram(n).unwrap(), r, DEFAULT_CAP).unwrap();
            let p = crate::modular::least_common_prime_divisor(n as i64, r as i64).unwrap();
            assert_eq!(m, Some(p.min(3) as usize), "n = {n}, r = {r}");
        }
    }

    #[test]
    fn harary_examples() {
        assert!(harary_check(&torus_diagram(3).unwrap(), 3, DEFAULT_CAP).unwrap());
        assert!(harary_check(&torus_diagram(5).unwrap(), 5, DEFAULT_CAP).unwrap());
        assert!(!harary_check(&torus_diagram(9).unwrap(), 3, DEFAULT_CAP).unwrap());
        assert!(matches!(harary_check(&torus_diagram(5).unwrap(), 4, DEFAULT_CAP), Err(Error::Domain(_))));
        assert!(matches!(harary_check(&torus_diagram(5).unwrap(), 7, DEFAULT_CAP), Err(Error::Domain(_))));
        let d = rational_diagram(&RationalSpec::new(vec![8, -9]).unwrap()).unwrap();
        assert!(harary_check(&d, 73, DEFAULT_CAP).unwrap());
    }
}
