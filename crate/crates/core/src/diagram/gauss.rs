use serde::{Deserialize, Serialize};

use super::Crossing;
use crate::error::{Error, Result};

/// One pass of a strand through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

impl Passage {
    pub fn over(crossing: usize) -> Self {
        Passage { crossing, over: true }
    }

    pub fn under(crossing: usize) -> Self {
        Passage { crossing, over: false }
    }
}

/// Index of a passage inside a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub comp: usize,
    pub idx: usize,
}

/// The diagram edge that arrives at passage `idx` of component `comp`.
///
/// A crossingless component has the single edge `idx = 0`.
pub type Edge = Pos;

/// Signed Gauss code: for each component the cyclic sequence of passages,
/// plus a sign per crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussCode {
    components: Vec<Vec<Passage>>,
    signs: Vec<i8>,
}

/// Fox-level view of a Gauss code, with the edge-to-arc assignment.
#[derive(Debug, Clone)]
pub(crate) struct ArcLayout {
    pub arcs: Vec<usize>,
    pub crossings: Vec<Crossing>,
    /// `edge_arc[comp][idx]`: arc containing the edge arriving at that passage.
    pub edge_arc: Vec<Vec<usize>>,
    /// Edges of each arc in traversal order, keyed by arc id.
    pub arc_edges: std::collections::BTreeMap<usize, Vec<Edge>>,
}

impl GaussCode {
    pub fn new(components: Vec<Vec<Passage>>, signs: Vec<i8>) -> Result<Self> {
        let code = GaussCode { components, signs };
        code.check()?;
        Ok(code)
    }

    pub(crate) fn check(&self) -> Result<()> {
        let n = self.signs.len();
        if let Some(s) = self.signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::structural(format!("crossing sign must be +1 or -1, got {s}")));
        }
        let mut seen = vec![[false; 2]; n];
        for p in self.components.iter().flatten() {
            if p.crossing >= n {
                return Err(Error::structural(format!(
                    "passage through crossing {} but only {n} signs given",
                    p.crossing
                )));
            }
            let slot = &mut seen[p.crossing][p.over as usize];
            if *slot {
                return Err(Error::structural(format!(
                    "crossing {} passed {} twice",
                    p.crossing,
                    if p.over { "over" } else { "under" }
                )));
            }
            *slot = true;
        }
        if let Some(c) = seen.iter().position(|s| !(s[0] && s[1])) {
            return Err(Error::structural(format!("crossing {c} lacks an over or under passage")));
        }
        Ok(())
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn num_crossings(&self) -> usize {
        self.signs.len()
    }

    pub(crate) fn passage(&self, p: Pos) -> Passage {
        self.components[p.comp][p.idx]
    }

    pub(crate) fn len_of(&self, comp: usize) -> usize {
        self.components[comp].len()
    }

    pub(crate) fn next(&self, p: Pos) -> Pos {
        Pos { comp: p.comp, idx: (p.idx + 1) % self.len_of(p.comp) }
    }

    /// `[over position, under position]` of every crossing.
    pub(crate) fn positions(&self) -> Vec<[Pos; 2]> {
        let mut out = vec![[Pos { comp: 0, idx: 0 }; 2]; self.num_crossings()];
        for (comp, passages) in self.components.iter().enumerate() {
            for (idx, p) in passages.iter().enumerate() {
                out[p.crossing][if p.over { 0 } else { 1 }] = Pos { comp, idx };
            }
        }
        out
    }

    /// All edges, component by component.
    pub(crate) fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (comp, passages) in self.components.iter().enumerate() {
            for idx in 0..passages.len().max(1) {
                out.push(Pos { comp, idx });
            }
        }
        out
    }

    /// Arc ids follow the under-passage each arc runs into: the arc ending at
    /// the under-passage of crossing `c` is arc `c`. Components without
    /// under-passages are closed loops numbered from `num_crossings()` on.
    pub(crate) fn layout(&self) -> ArcLayout {
        let n = self.num_crossings();
        let mut next_loop = n;
        let mut edge_arc = Vec::with_capacity(self.components.len());
        let mut arc_edges = std::collections::BTreeMap::new();
        for (comp, passages) in self.components.iter().enumerate() {
            let len = passages.len();
            let unders: Vec<usize> = (0..len).filter(|&k| !passages[k].over).collect();
            if unders.is_empty() {
                let id = next_loop;
                next_loop += 1;
                edge_arc.push(vec![id; len.max(1)]);
                arc_edges.insert(id, (0..len.max(1)).map(|idx| Pos { comp, idx }).collect());
                continue;
            }
            let mut ids = vec![0; len];
            for (j, &u) in unders.iter().enumerate() {
                let prev = unders[(j + unders.len() - 1) % unders.len()];
                let span = if unders.len() == 1 { len } else { (u + len - prev) % len };
                let mut edges = Vec::with_capacity(span);
                for s in 1..=span {
                    let idx = (prev + s) % len;
                    ids[idx] = passages[u].crossing;
                    edges.push(Pos { comp, idx });
                }
                arc_edges.insert(passages[u].crossing, edges);
            }
            edge_arc.push(ids);
        }

        let positions = self.positions();
        let crossings = positions
            .iter()
            .enumerate()
            .map(|(c, [o, u])| Crossing {
                over: edge_arc[o.comp][o.idx],
                under_in: c,
                under_out: {
                    let out = self.next(*u);
                    edge_arc[out.comp][out.idx]
                },
                sign: self.signs[c],
            })
            .collect();
        ArcLayout {
            arcs: arc_edges.keys().copied().collect(),
            crossings,
            edge_arc,
            arc_edges,
        }
    }

    /// Faces of the planar map implied by the signs, each as a cyclic list of
    /// edges.
    ///
    /// Around a positive crossing the counterclockwise order of edge ends is
    /// over-in, under-in, over-out, under-out; a negative crossing swaps the
    /// two under ends.
    pub(crate) fn faces(&self) -> Vec<Vec<Edge>> {
        // dart = (edge, at_end); at_end means the end at the passage the edge arrives at
        let edges = self.edges();
        let index: std::collections::HashMap<(Edge, bool), usize> = edges
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| [((e, false), 2 * i), ((e, true), 2 * i + 1)])
            .collect();
        let mut rotate = vec![usize::MAX; 2 * edges.len()];
        for (c, [o, u]) in self.positions().into_iter().enumerate() {
            let o_in = index[&(o, true)];
            let o_out = index[&(self.next(o), false)];
            let u_in = index[&(u, true)];
            let u_out = index[&(self.next(u), false)];
            let ring = if self.signs[c] > 0 {
                [o_in, u_in, o_out, u_out]
            } else {
                [o_in, u_out, o_out, u_in]
            };
            for k in 0..4 {
                rotate[ring[k]] = ring[(k + 1) % 4];
            }
        }
        let mut seen = vec![false; rotate.len()];
        let mut faces = Vec::new();
        for start in 0..rotate.len() {
            if seen[start] || rotate[start] == usize::MAX {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(edges[d / 2]);
                d = rotate[d ^ 1];
            }
            faces.push(face);
        }
        faces
    }

    /// Number of connected pieces of the projection that contain crossings.
    fn crossing_pieces(&self) -> usize {
        let n = self.num_crossings();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for passages in &self.components {
            for w in 0..passages.len() {
                let a = find(&mut parent, passages[w].crossing);
                let b = find(&mut parent, passages[(w + 1) % passages.len()].crossing);
                parent[a] = b;
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Whether the signed code is realized by a diagram in the plane (Euler
    /// characteristic 2 on every connected piece). Faces are traced piece by
    /// piece, so each piece contributes its own outer face.
    pub fn is_planar(&self) -> bool {
        let n = self.num_crossings();
        n == 0 || self.faces().len() == n + 2 * self.crossing_pieces()
    }
}
