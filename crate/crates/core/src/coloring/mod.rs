//! Fox colorings: the linear system, counting, enumeration and palettes.

mod torus;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use torus::{braid_coloring, stacked_coloring, subpalette};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::modular::{count_solutions_mod, enumerate_solutions_mod, IntegerMatrix, SolutionStream};

/// Values in `Z_r` keyed by arc id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coloring {
    r: u64,
    assignment: BTreeMap<usize, u64>,
}

impl Coloring {
    pub fn new(r: u64, assignment: BTreeMap<usize, u64>) -> Result<Self> {
        let c = Coloring { r, assignment };
        c.check_range()?;
        Ok(c)
    }

    fn check_range(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::domain(format!("modulus must be at least 2, got {}", self.r)));
        }
        if let Some((arc, v)) = self.assignment.iter().find(|(_, &v)| v >= self.r) {
            return Err(Error::structural(format!("arc {arc} has color {v} outside [0, {})", self.r)));
        }
        Ok(())
    }

    /// Constant coloring with value `v` on every arc of `d`.
    pub fn constant(d: &Diagram, r: u64, v: u64) -> Result<Self> {
        Self::new(r, d.arcs().iter().map(|&a| (a, v)).collect())
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn assignment(&self) -> &BTreeMap<usize, u64> {
        &self.assignment
    }

    pub fn get(&self, arc: usize) -> Option<u64> {
        self.assignment.get(&arc).copied()
    }

    pub fn is_trivial(&self) -> bool {
        let mut values = self.assignment.values();
        match values.next() {
            Some(first) => values.all(|v| v == first),
            None => true,
        }
    }

    pub fn palette(&self) -> Palette {
        Palette { colors: self.assignment.values().copied().collect() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Coloring = serde_json::from_str(text)?;
        c.check_range()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("colorings always serialize")
    }
}

/// The set of colors a coloring uses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Palette {
    pub colors: BTreeSet<u64>,
}

impl Palette {
    pub fn size(&self) -> usize {
        self.colors.len()
    }
}

/// A diagram with a valid coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDiagram {
    diagram: Diagram,
    coloring: Coloring,
}

impl ColoredDiagram {
    pub fn new(diagram: Diagram, coloring: Coloring) -> Result<Self> {
        if !validate_coloring(&diagram, &coloring)? {
            return Err(Error::structural("coloring violates the crossing relation"));
        }
        Ok(ColoredDiagram { diagram, coloring })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn r(&self) -> u64 {
        self.coloring.r
    }

    pub fn into_parts(self) -> (Diagram, Coloring) {
        (self.diagram, self.coloring)
    }
}

/// One row per crossing, one column per arc (in [`Diagram::arcs`] order):
/// `+2` at the over arc, `-1` at each under arc.
pub fn coloring_matrix(d: &Diagram) -> Result<IntegerMatrix> {
    if d.num_crossings() == 0 {
        return Err(Error::domain("a crossingless diagram has no coloring equations"));
    }
    Ok(system(d))
}

fn system(d: &Diagram) -> IntegerMatrix {
    let col = d.arc_index();
    let mut m = IntegerMatrix::zeros(d.num_crossings(), d.num_arcs());
    for (i, x) in d.crossings().iter().enumerate() {
        m[(i, col[&x.over])] += 2;
        m[(i, col[&x.under_in])] -= 1;
        m[(i, col[&x.under_out])] -= 1;
    }
    m
}

/// Number of `r`-colorings, trivial ones included.
pub fn count_colorings(d: &Diagram, r: u64) -> Result<u128> {
    count_solutions_mod(&system(d), r)
}

/// Whether some coloring is not constant.
pub fn has_nontrivial(d: &Diagram, r: u64) -> Result<bool> {
    Ok(count_colorings(d, r)? > r as u128)
}

/// Stream of every `r`-coloring of `d` in a fixed order.
pub fn enumerate_colorings(d: &Diagram, r: u64, cap: u128) -> Result<ColoringStream> {
    Ok(ColoringStream {
        r,
        arcs: d.arcs().to_vec(),
        inner: enumerate_solutions_mod(&system(d), r, cap)?,
    })
}

#[derive(Debug, Clone)]
pub struct ColoringStream {
    r: u64,
    arcs: Vec<usize>,
    inner: SolutionStream,
}

impl ColoringStream {
    pub fn remaining(&self) -> u128 {
        self.inner.remaining()
    }
}

impl Iterator for ColoringStream {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        let x = self.inner.next()?;
        Some(Coloring { r: self.r, assignment: self.arcs.iter().copied().zip(x).collect() })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

/// Whether the crossing relation holds everywhere; the coloring must cover
/// exactly the diagram's arcs.
pub fn validate_coloring(d: &Diagram, c: &Coloring) -> Result<bool> {
    c.check_range()?;
    if !c.assignment.keys().copied().eq(d.arcs().iter().copied()) {
        let missing: Vec<_> = d.arcs().iter().filter(|a| !c.assignment.contains_key(a)).collect();
        let extra: Vec<_> = c.assignment.keys().filter(|a| d.arcs().binary_search(a).is_err()).collect();
        return Err(Error::structural(format!(
            "coloring does not match diagram arcs (missing {missing:?}, extra {extra:?})"
        )));
    }
    let r = c.r as u128;
    Ok(d.crossings().iter().all(|x| {
        let v = |a| c.assignment[&a] as u128;
        (2 * v(x.over)) % r == (v(x.under_in) + v(x.under_out)) % r
    }))
}

pub fn palette_of(cd: &ColoredDiagram) -> Palette {
    cd.coloring.palette()
}

/// `|det|` of the coloring matrix with its first row and column deleted.
pub fn determinant(d: &Diagram) -> Result<u128> {
    if d.components() != 1 {
        return Err(Error::domain(format!(
            "determinant is defined here for knots only; diagram has {} components",
            d.components()
        )));
    }
    let m = coloring_matrix(d)?;
    minor_determinant(&m, 0, 0)
}

/// `|det|` of `m` with row `i` and column `j` deleted.
pub fn minor_determinant(m: &IntegerMatrix, i: usize, j: usize) -> Result<u128> {
    if m.rows() != m.cols() {
        return Err(Error::domain(format!("coloring matrix is {}x{}, not square", m.rows(), m.cols())));
    }
    Ok(m.minor(i, j).determinant()?.unsigned_abs())
}

/// `(r, count_colorings(d, r))` for `r` in `2..=r_max`.
pub fn color_spectrum(d: &Diagram, r_max: u64) -> Result<Vec<(u64, u128)>> {
    if r_max < 2 {
        return Err(Error::domain(format!("spectrum needs r_max >= 2, got {r_max}")));
    }
    (2..=r_max).map(|r| Ok((r, count_colorings(d, r)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, braid_word_parse, rational_diagram, torus_diagram, RationalSpec};
    use crate::modular::{gcd, DEFAULT_CAP};

    fn kink() -> Diagram {
        braid_closure(&braid_word_parse("B2: s1").unwrap())
    }

    fn coloring(r: u64, values: &[u64]) -> Coloring {
        Coloring::new(r, values.iter().copied().enumerate().collect()).unwrap()
    }

    #[test]
    fn matrix_shapes() {
        let m = coloring_matrix(&torus_diagram(3).unwrap()).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        for row in m.to_rows() {
            let mut sorted = row.clone();
            sorted.sort();
            assert_eq!(sorted, vec![-1, -1, 2]);
        }
        assert_eq!(coloring_matrix(&kink()).unwrap().to_rows(), vec![vec![0]]);
        let hopf = coloring_matrix(&torus_diagram(2).unwrap()).unwrap();
        let mut rows = hopf.to_rows();
        rows.sort();
        assert_eq!(rows, vec![vec![-2, 2], vec![2, -2]]);
        let unlink = braid_closure(&braid_word_parse("B2:").unwrap());
        assert!(matches!(coloring_matrix(&unlink), Err(Error::Domain(_))));
        assert_eq!(count_colorings(&unlink, 3).unwrap(), 9);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_colorings(&torus_diagram(3).unwrap(), 3).unwrap(), 9);
        assert_eq!(count_colorings(&torus_diagram(5).unwrap(), 7).unwrap(), 7);
        assert_eq!(count_colorings(&torus_diagram(4).unwrap(), 6).unwrap(), 12);
        assert!(has_nontrivial(&torus_diagram(5).unwrap(), 5).unwrap());
        assert!(!has_nontrivial(&torus_diagram(5).unwrap(), 7).unwrap());
        assert!(has_nontrivial(&torus_diagram(6).unwrap(), 4).unwrap());
    }

    #[test]
    fn spectral_formula() {
        for n in 2..=12u64 {
            let d = torus_diagram(n).unwrap();
            for r in 2..=25u64 {
                let expected = gcd(n as i64, r as i64).unwrap() as u128 * r as u128;
                assert_eq!(count_colorings(&d, r).unwrap(), expected, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let all: Vec<_> = enumerate_colorings(&torus_diagram(3).unwrap(), 3, DEFAULT_CAP).unwrap().collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all.iter().filter(|c| c.is_trivial()).count(), 3);
        assert_eq!(enumerate_colorings(&torus_diagram(2).unwrap(), 2, DEFAULT_CAP).unwrap().count(), 4);
        let five: Vec<_> = enumerate_colorings(&torus_diagram(5).unwrap(), 7, DEFAULT_CAP).unwrap().collect();
        assert_eq!(five.len(), 7);
        assert!(five.iter().all(Coloring::is_trivial));
    }

    #[test]
    fn enumerated_colorings_are_valid_and_distinct() {
        let d = rational_diagram(&RationalSpec::new(vec![2, -3]).unwrap()).unwrap();
        let all: Vec<_> = enumerate_colorings(&d, 7, DEFAULT_CAP).unwrap().collect();
        assert_eq!(all.len() as u128, count_colorings(&d, 7).unwrap());
        assert!(all.iter().all(|c| validate_coloring(&d, c).unwrap()));
        let distinct: BTreeSet<_> = all.iter().map(|c| c.assignment.clone()).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn validation_examples() {
        let d = torus_diagram(3).unwrap();
        assert!(validate_coloring(&d, &coloring(3, &[0, 1, 2])).unwrap());
        assert!(!validate_coloring(&d, &coloring(3, &[0, 0, 1])).unwrap());
        assert!(validate_coloring(&d, &Coloring::constant(&d, 3, 2).unwrap()).unwrap());
        assert!(matches!(validate_coloring(&d, &coloring(3, &[0, 1])), Err(Error::Structural(_))));
        assert!(Coloring::new(3, [(0, 3)].into_iter().collect()).is_err());
    }

    #[test]
    fn coloring_json() {
        let c = coloring(5, &[0, 1, 2, 3, 4]);
        let text = c.to_json();
        assert!(text.contains(r#""assignment":{"0":0"#));
        assert_eq!(Coloring::from_json(&text).unwrap(), c);
        assert!(Coloring::from_json(r#"{"r":3,"assignment":{"0":3}}"#).is_err());
        assert!(Coloring::from_json(r#"{"r":3,"assignment":{},"x":1}"#).is_err());
    }

    #[test]
    fn determinant_examples() {
        let d73 = rational_diagram(&RationalSpec::new(vec![8, -9]).unwrap()).unwrap();
        assert_eq!(determinant(&d73).unwrap(), 73);
        assert_eq!(determinant(&torus_diagram(3).unwrap()).unwrap(), 3);
        assert_eq!(determinant(&kink()).unwrap(), 1);
        assert!(matches!(determinant(&torus_diagram(4).unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn determinant_is_independent_of_deleted_row_and_column() {
        for v in [vec![8, -6], vec![3, -2], vec![2, 1, -3]] {
            let d = rational_diagram(&RationalSpec::new(v).unwrap()).unwrap();
            if d.components() != 1 {
                continue;
            }
            let m = coloring_matrix(&d).unwrap();
            let first = determinant(&d).unwrap();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    assert_eq!(minor_determinant(&m, i, j).unwrap(), first);
                }
            }
        }
    }

    #[test]
    fn rational_determinants_match_continued_fraction() {
        for a in 1..=7i64 {
            for b in 1..=7i64 {
                let d = rational_diagram(&RationalSpec::new(vec![a, -b]).unwrap()).unwrap();
                if d.components() == 1 {
                    assert_eq!(determinant(&d).unwrap(), (a * b + 1) as u128, "[{a}, -{b}]");
                }
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(
            color_spectrum(&torus_diagram(3).unwrap(), 5).unwrap(),
            vec![(2, 2), (3, 9), (4, 4), (5, 5)]
        );
        assert_eq!(color_spectrum(&torus_diagram(4).unwrap(), 4).unwrap(), vec![(2, 4), (3, 3), (4, 16)]);
        assert_eq!(color_spectrum(&kink(), 3).unwrap(), vec![(2, 2), (3, 3)]);
    }

    #[test]
    fn palette_sizes() {
        let d = torus_diagram(3).unwrap();
        let cd = ColoredDiagram::new(d.clone(), Coloring::constant(&d, 3, 1).unwrap()).unwrap();
        assert_eq!(palette_of(&cd).size(), 1);
        assert!(ColoredDiagram::new(d, coloring(3, &[0, 0, 1])).is_err());
    }
}
