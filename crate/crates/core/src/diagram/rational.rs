use std::collections::HashMap;

use super::{Diagram, GaussCode, Passage, Provenance};
use crate::error::{Error, Result};

/// Continued-fraction twist vector of a rational tangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSpec {
    twist_vector: Vec<i64>,
}

impl RationalSpec {
    pub fn new(twist_vector: Vec<i64>) -> Result<Self> {
        if twist_vector.is_empty() {
            return Err(Error::domain("twist vector is empty"));
        }
        if twist_vector.contains(&0) {
            return Err(Error::domain("twist vector entries must be nonzero"));
        }
        Ok(RationalSpec { twist_vector })
    }

    pub fn twist_vector(&self) -> &[i64] {
        &self.twist_vector
    }

    /// Whether entry `i` is a horizontal twist. The last entry is horizontal
    /// and orientations alternate going backwards.
    pub fn is_horizontal(&self, i: usize) -> bool {
        (self.twist_vector.len() - 1 - i).is_multiple_of(2)
    }
}

// Boundary points of the tangle.
const NW: u8 = 0;
const NE: u8 = 1;
const SW: u8 = 2;
const SE: u8 = 3;

// Slots of a crossing are numbered counterclockwise; the under strand joins
// slots 0 and 2, the over strand slots 1 and 3. A crossing is placed with a
// rotation `t`, putting slot `(g + t) % 4` at geometric corner `g`
// (0 = SW, 1 = SE, 2 = NE, 3 = NW).
const G_SW: usize = 0;
const G_SE: usize = 1;
const G_NE: usize = 2;
const G_NW: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Point {
    Slot(usize, usize),
    Boundary(u8),
}

#[derive(Default)]
struct Tangle {
    partner: HashMap<Point, Point>,
    crossings: usize,
    free_loops: usize,
}

impl Tangle {
    fn connect(&mut self, a: Point, b: Point) {
        self.partner.insert(a, b);
        self.partner.insert(b, a);
    }

    /// Replaces boundary point `b` by `x` on the edge that reached it.
    fn attach(&mut self, b: u8, x: Point) {
        let q = self.partner.remove(&Point::Boundary(b)).expect("boundary is always connected");
        self.connect(q, x);
    }

    /// Adds a twist at two boundary points. `entry` are the corners of the new
    /// crossing facing the tangle, `exit` the corners that become the new
    /// boundary, both paired with `ends`.
    fn twist(&mut self, ends: [u8; 2], entry: [usize; 2], exit: [usize; 2], rotation: usize) -> usize {
        let c = self.crossings;
        self.crossings += 1;
        let slot = |g: usize| Point::Slot(c, (g + rotation) % 4);
        for k in 0..2 {
            self.attach(ends[k], slot(entry[k]));
            self.connect(Point::Boundary(ends[k]), slot(exit[k]));
        }
        c
    }

    /// Joins two boundary points, possibly closing a crossingless loop.
    fn join(&mut self, a: u8, b: u8) {
        let pa = self.partner.remove(&Point::Boundary(a)).unwrap();
        let pb = self.partner.remove(&Point::Boundary(b)).unwrap();
        if pa == Point::Boundary(b) {
            self.free_loops += 1;
        } else {
            self.connect(pa, pb);
        }
    }
}

/// Rotation that gives an entry of sign `s` its handedness. Horizontal and
/// vertical twists use opposite rotations so that `[a, -b]` with `a, b > 0`
/// is alternating.
fn rotation(horizontal: bool, s: i64) -> usize {
    usize::from(horizontal == (s > 0))
}

/// Numerator closure of the rational tangle with the given twist vector.
///
/// The tangle fraction is `a_n - 1/(a_{n-1} - 1/(... - 1/a_1))`, so `[a, -b]`
/// closes to a diagram of determinant `a·b + 1`. The recorded twist regions
/// list each entry's crossings in the order they were added.
pub fn rational_diagram(spec: &RationalSpec) -> Result<Diagram> {
    let mut t = Tangle::default();
    if spec.is_horizontal(0) {
        t.connect(Point::Boundary(NW), Point::Boundary(NE));
        t.connect(Point::Boundary(SW), Point::Boundary(SE));
    } else {
        t.connect(Point::Boundary(NW), Point::Boundary(SW));
        t.connect(Point::Boundary(NE), Point::Boundary(SE));
    }
    let mut regions = Vec::new();
    for (i, &a) in spec.twist_vector.iter().enumerate() {
        let horizontal = spec.is_horizontal(i);
        let rot = rotation(horizontal, a);
        let mut region = Vec::new();
        for _ in 0..a.unsigned_abs() {
            let c = if horizontal {
                t.twist([NE, SE], [G_NW, G_SW], [G_NE, G_SE], rot)
            } else {
                t.twist([SW, SE], [G_NW, G_NE], [G_SW, G_SE], rot)
            };
            region.push(c);
        }
        regions.push(region);
    }
    t.join(NW, NE);
    t.join(SW, SE);

    let code = trace(&t);
    let d = Diagram::from_code(
        code,
        Some(Provenance::Rational { twist_vector: spec.twist_vector.clone() }),
    )?;
    Ok(d.with_twist_regions(regions))
}

/// Walks the closed tangle into a signed Gauss code.
fn trace(t: &Tangle) -> GaussCode {
    let n = t.crossings;
    let mut visited = vec![[false; 2]; n];
    let mut entered_under = vec![0usize; n];
    let mut entered_over = vec![0usize; n];
    let mut components = Vec::new();
    for c in 0..n {
        for strand in 0..2 {
            if visited[c][strand] {
                continue;
            }
            let mut passages = Vec::new();
            let (mut x, mut s) = (c, strand);
            loop {
                let over = s % 2 == 1;
                if visited[x][over as usize] {
                    break;
                }
                visited[x][over as usize] = true;
                if over {
                    entered_over[x] = s;
                } else {
                    entered_under[x] = s;
                }
                passages.push(Passage { crossing: x, over });
                match t.partner[&Point::Slot(x, (s + 2) % 4)] {
                    Point::Slot(y, r) => (x, s) = (y, r),
                    Point::Boundary(_) => unreachable!("closed tangle has no boundary"),
                }
            }
            components.push(passages);
        }
    }
    components.extend(std::iter::repeat_n(Vec::new(), t.free_loops));
    // positive iff the over strand runs from slot u+3 to slot u+1
    let signs = (0..n)
        .map(|c| if entered_over[c] == (entered_under[c] + 3) % 4 { 1 } else { -1 })
        .collect();
    GaussCode::new(components, signs).expect("every crossing is traversed twice")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Numerator of the fraction, by the recursion the builder realizes.
    fn fraction(v: &[i64]) -> (i128, i128) {
        let spec = RationalSpec::new(v.to_vec()).unwrap();
        let (mut p, mut q): (i128, i128) = if spec.is_horizontal(0) { (0, 1) } else { (1, 0) };
        for (i, &a) in v.iter().enumerate() {
            if spec.is_horizontal(i) {
                p += a as i128 * q;
            } else {
                q -= a as i128 * p;
            }
        }
        (p, q)
    }

    fn alternating(d: &Diagram) -> bool {
        d.gauss_code().unwrap().components().iter().all(|c| {
            (0..c.len()).all(|k| c[k].over != c[(k + 1) % c.len()].over)
        })
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(matches!(RationalSpec::new(vec![]), Err(Error::Domain(_))));
        assert!(matches!(RationalSpec::new(vec![3, 0]), Err(Error::Domain(_))));
    }

    #[test]
    fn anchors_have_expected_arc_counts() {
        let d = rational_diagram(&RationalSpec::new(vec![8, -9]).unwrap()).unwrap();
        assert_eq!(d.num_arcs(), 17);
        assert_eq!(d.components(), 1);
        assert!(alternating(&d));
        assert_eq!(d.twist_regions().iter().map(Vec::len).collect::<Vec<_>>(), vec![8, 9]);
        let d = rational_diagram(&RationalSpec::new(vec![8, -6]).unwrap()).unwrap();
        assert_eq!(d.num_arcs(), 14);
        assert!(alternating(&d));
    }

    #[test]
    fn single_entry_is_a_twisted_band() {
        let d = rational_diagram(&RationalSpec::new(vec![1]).unwrap()).unwrap();
        assert_eq!((d.num_arcs(), d.num_crossings(), d.components()), (1, 1, 1));
        let d = rational_diagram(&RationalSpec::new(vec![-4]).unwrap()).unwrap();
        assert_eq!((d.num_arcs(), d.components()), (4, 2));
        assert!(d.crossings().iter().all(|x| x.sign == d.crossings()[0].sign));
    }

    #[test]
    fn two_entry_alternating_specs() {
        for a in 1..=6 {
            for b in 1..=6 {
                let d = rational_diagram(&RationalSpec::new(vec![a, -b]).unwrap()).unwrap();
                assert!(alternating(&d), "[{a}, -{b}]");
                assert_eq!(d.num_arcs() as i64, a + b);
                assert_eq!(fraction(&[a, -b]).0.abs(), (a * b + 1) as i128);
            }
        }
    }

    #[test]
    fn components_follow_numerator_parity() {
        // a two-bridge link has two components exactly when the numerator is even
        for v in [vec![2, -3], vec![3, -3], vec![1, 1, 1], vec![2, 2, -1], vec![4, -1, 2], vec![-3, 2, 2]] {
            let d = rational_diagram(&RationalSpec::new(v.clone()).unwrap()).unwrap();
            let p = fraction(&v).0;
            let expected = if p % 2 == 0 { 2 } else { 1 };
            assert_eq!(d.components(), expected, "{v:?}");
            assert!(d.validate().valid);
        }
    }
}
