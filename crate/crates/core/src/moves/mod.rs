//! Reidemeister moves on colored diagrams.
//!
//! Moves rewrite the signed Gauss code. Colors are carried edge by edge:
//! edges outside the rewritten region keep their colors and the new edges
//! are solved from the crossing relation. A move is legal only if its local
//! pattern bounds a face (monogon, bigon or triangle) and the result is
//! planar.

mod random;
mod teneva;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use random::{legal_moves, random_legal_move};
pub use teneva::{
    teneva_reduce, teneva_run, teneva_sequence, teneva_transform, PaletteStep, PaletteTrace, TenevaOutcome,
};

use crate::coloring::{ColoredDiagram, Coloring};
use crate::diagram::{Diagram, Edge, GaussCode, Passage, Pos};
use crate::error::{Error, Result};
use crate::modular::reduce;

/// A diagram edge named by its arc and its index along the arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRef {
    pub arc: usize,
    pub segment: usize,
}

/// An addressed Reidemeister move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum MoveSpec {
    /// Adds a kink on `site`; the new crossing gets the next free index.
    #[serde(rename = "R1_add")]
    R1Add { site: EdgeRef, under_first: bool, sign: i8 },
    #[serde(rename = "R1_remove")]
    R1Remove { crossing: usize },
    /// Pushes edge `over` across edge `under`, creating crossings `N` and
    /// `N + 1` met in that order along `over`. `reversed` means the under
    /// edge meets them as `N + 1`, `N`; `sign` is the sign of crossing `N`.
    #[serde(rename = "R2_add")]
    R2Add { over: EdgeRef, under: EdgeRef, reversed: bool, sign: i8 },
    #[serde(rename = "R2_remove")]
    R2Remove { crossings: [usize; 2] },
    #[serde(rename = "R3")]
    R3 { crossings: [usize; 3] },
}

impl MoveSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MoveSpec::R1Add { .. } => "R1_add",
            MoveSpec::R1Remove { .. } => "R1_remove",
            MoveSpec::R2Add { .. } => "R2_add",
            MoveSpec::R2Remove { .. } => "R2_remove",
            MoveSpec::R3 { .. } => "R3",
        }
    }
}

/// Result of a move.
///
/// `introduced` and `removed` are local: colors of arcs made only of newly
/// created edges, and of old arcs made only of destroyed edges. `gained` and
/// `lost` compare the palettes of the whole diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    pub colored: ColoredDiagram,
    pub introduced: BTreeSet<u64>,
    pub removed: BTreeSet<u64>,
    pub gained: BTreeSet<u64>,
    pub lost: BTreeSet<u64>,
}

pub fn apply_move(cd: &ColoredDiagram, m: &MoveSpec) -> Result<MoveOutcome> {
    let code = cd
        .diagram()
        .gauss_code()
        .ok_or_else(|| Error::domain("diagram carries no gauss code; moves need one"))?;
    let draft = match m {
        MoveSpec::R1Add { site, under_first, sign } => r1_add(code, *site, *under_first, *sign)?,
        MoveSpec::R1Remove { crossing } => r1_remove(code, *crossing)?,
        MoveSpec::R2Add { over, under, reversed, sign } => r2_add(code, *over, *under, *reversed, *sign)?,
        MoveSpec::R2Remove { crossings } => r2_remove(code, *crossings)?,
        MoveSpec::R3 { crossings } => r3(code, *crossings)?,
    };
    let (new_code, origins, destroyed) = draft.finish()?;
    if !new_code.is_planar() {
        return Err(Error::pattern(format!("{} does not yield a planar diagram", m.kind())));
    }
    if let MoveSpec::R2Add { .. } = m {
        check_new_bigon(&new_code)?;
    }
    transport(cd, code, new_code, &origins, &destroyed)
}

fn check_sign(sign: i8) -> Result<()> {
    if sign != 1 && sign != -1 {
        return Err(Error::domain(format!("crossing sign must be +1 or -1, got {sign}")));
    }
    Ok(())
}

pub(crate) fn resolve(code: &GaussCode, r: EdgeRef) -> Result<Edge> {
    let layout = code.layout();
    let edges = layout
        .arc_edges
        .get(&r.arc)
        .ok_or_else(|| Error::pattern(format!("unknown arc {}", r.arc)))?;
    edges.get(r.segment).copied().ok_or_else(|| {
        Error::pattern(format!("arc {} has {} segments, no segment {}", r.arc, edges.len(), r.segment))
    })
}

/// Inverse of [`resolve`].
pub(crate) fn edge_ref(code: &GaussCode, e: Edge) -> EdgeRef {
    let layout = code.layout();
    let arc = layout.edge_arc[e.comp][e.idx];
    let segment = layout.arc_edges[&arc].iter().position(|&x| x == e).expect("edge lies on its arc");
    EdgeRef { arc, segment }
}

fn r1_add(code: &GaussCode, site: EdgeRef, under_first: bool, sign: i8) -> Result<Draft> {
    check_sign(sign)?;
    let e = resolve(code, site)?;
    let m = code.num_crossings();
    let mut d = Draft::new(code);
    d.signs.push(sign);
    let pair = if under_first { [Passage::under(m), Passage::over(m)] } else { [Passage::over(m), Passage::under(m)] };
    d.insert(e, &pair);
    Ok(d)
}

fn r1_remove(code: &GaussCode, c: usize) -> Result<Draft> {
    if c >= code.num_crossings() {
        return Err(Error::pattern(format!("no crossing {c}")));
    }
    let [o, u] = code.positions()[c];
    let start = if code.next(u) == o {
        u
    } else if code.next(o) == u {
        o
    } else {
        return Err(Error::pattern(format!("crossing {c} is not a kink")));
    };
    let loop_edge = code.next(start);
    if !code.faces().iter().any(|f| f == &[loop_edge]) {
        return Err(Error::pattern(format!("kink at crossing {c} does not bound an empty region")));
    }
    let mut d = Draft::new(code);
    d.remove_pairs(&[start]);
    d.remove_crossings(&[c]);
    Ok(d)
}

fn r2_add(code: &GaussCode, over: EdgeRef, under: EdgeRef, reversed: bool, sign: i8) -> Result<Draft> {
    check_sign(sign)?;
    let eo = resolve(code, over)?;
    let eu = resolve(code, under)?;
    if eo == eu {
        return Err(Error::pattern("R2 needs two distinct edges"));
    }
    if !code.faces().iter().any(|f| f.contains(&eo) && f.contains(&eu)) {
        return Err(Error::pattern("the two edges do not bound a common region"));
    }
    let m = code.num_crossings();
    let mut d = Draft::new(code);
    d.signs.extend([sign, -sign]);
    let overs = [Passage::over(m), Passage::over(m + 1)];
    let unders = if reversed {
        [Passage::under(m + 1), Passage::under(m)]
    } else {
        [Passage::under(m), Passage::under(m + 1)]
    };
    // insert at the later position first so the earlier one stays valid
    if (eo.comp, eo.idx) > (eu.comp, eu.idx) {
        d.insert(eo, &overs);
        d.insert(eu, &unders);
    } else {
        d.insert(eu, &unders);
        d.insert(eo, &overs);
    }
    Ok(d)
}

/// The two crossings added last must bound a bigon.
fn check_new_bigon(code: &GaussCode) -> Result<()> {
    let n = code.num_crossings();
    let pos = code.positions();
    let mids: Vec<Edge> = [0, 1]
        .iter()
        .map(|&k| {
            let (a, b) = (pos[n - 2][k], pos[n - 1][k]);
            if code.next(a) == b {
                b
            } else {
                a
            }
        })
        .collect();
    if code.faces().iter().any(|f| f.len() == 2 && f.contains(&mids[0]) && f.contains(&mids[1])) {
        Ok(())
    } else {
        Err(Error::pattern("R2 choice does not create a bigon"))
    }
}

fn r2_remove(code: &GaussCode, [c1, c2]: [usize; 2]) -> Result<Draft> {
    let n = code.num_crossings();
    if c1 == c2 || c1 >= n || c2 >= n {
        return Err(Error::pattern(format!("R2 removal needs two distinct crossings, got {c1}, {c2}")));
    }
    if code.signs()[c1] == code.signs()[c2] {
        return Err(Error::pattern(format!("crossings {c1} and {c2} have equal signs")));
    }
    let pos = code.positions();
    // adjacent-pair starts for the over strand (k = 0) and under strand (k = 1)
    let starts = |k: usize| -> Vec<Pos> {
        let (a, b) = (pos[c1][k], pos[c2][k]);
        let mut out = Vec::new();
        if code.next(a) == b {
            out.push(a);
        }
        if code.next(b) == a {
            out.push(b);
        }
        out
    };
    let faces = code.faces();
    for &so in &starts(0) {
        for &su in &starts(1) {
            let (mo, mu) = (code.next(so), code.next(su));
            if faces.iter().any(|f| f.len() == 2 && f.contains(&mo) && f.contains(&mu)) {
                let mut d = Draft::new(code);
                d.remove_pairs(&[so, su]);
                d.remove_crossings(&[c1, c2]);
                return Ok(d);
            }
        }
    }
    Err(Error::pattern(format!("crossings {c1} and {c2} do not bound a bigon")))
}

fn r3(code: &GaussCode, cs: [usize; 3]) -> Result<Draft> {
    let n = code.num_crossings();
    if cs.iter().any(|&c| c >= n) || cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
        return Err(Error::pattern(format!("R3 needs three distinct crossings, got {cs:?}")));
    }
    let pos = code.positions();
    let passages: Vec<Pos> = cs.iter().flat_map(|&c| pos[c]).collect();
    // candidate pairs: consecutive passages through two different crossings of the triple
    let pairs: Vec<(Pos, Pos)> = passages
        .iter()
        .filter_map(|&p| {
            let q = code.next(p);
            let (a, b) = (code.passage(p).crossing, code.passage(q).crossing);
            (a != b && passages.contains(&q)).then_some((p, q))
        })
        .collect();
    let faces = code.faces();
    let mut found = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            for k in j + 1..pairs.len() {
                let chosen = [pairs[i], pairs[j], pairs[k]];
                if triangle(code, &chosen, &faces) {
                    found.push(chosen);
                }
            }
        }
    }
    match found.len() {
        0 => Err(Error::pattern(format!("crossings {cs:?} do not bound a movable triangle"))),
        1 => {
            let mut d = Draft::new(code);
            for (p, _) in found[0] {
                d.swap_pair(p);
            }
            Ok(d)
        }
        k => Err(Error::pattern(format!("crossings {cs:?} bound {k} movable triangles; ambiguous"))),
    }
}

/// Whether three adjacent pairs cover the six passages once each, form an
/// over-over, an under-under and a mixed strand, and bound a face.
fn triangle(code: &GaussCode, chosen: &[(Pos, Pos); 3], faces: &[Vec<Edge>]) -> bool {
    let mut covered: Vec<Pos> = chosen.iter().flat_map(|&(p, q)| [p, q]).collect();
    covered.sort();
    covered.dedup();
    if covered.len() != 6 {
        return false;
    }
    let mut links: Vec<[usize; 2]> = chosen
        .iter()
        .map(|&(p, q)| {
            let (a, b) = (code.passage(p).crossing, code.passage(q).crossing);
            [a.min(b), a.max(b)]
        })
        .collect();
    links.sort();
    links.dedup();
    if links.len() != 3 {
        return false;
    }
    let mut kinds: Vec<u8> = chosen
        .iter()
        .map(|&(p, q)| code.passage(p).over as u8 + code.passage(q).over as u8)
        .collect();
    kinds.sort();
    if kinds != [0, 1, 2] {
        return false;
    }
    let mids: Vec<Edge> = chosen.iter().map(|&(_, q)| q).collect();
    faces.iter().any(|f| f.len() == 3 && mids.iter().all(|m| f.contains(m)))
}

/// Where an edge of the rewritten code came from.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Origin {
    /// Pieces of these old edges; all carry the same color.
    Kept(Vec<Edge>),
    New,
}

impl Origin {
    fn merge(parts: impl IntoIterator<Item = Origin>) -> Origin {
        let edges: Vec<Edge> = parts
            .into_iter()
            .flat_map(|o| match o {
                Origin::Kept(v) => v,
                Origin::New => Vec::new(),
            })
            .collect();
        if edges.is_empty() {
            Origin::New
        } else {
            Origin::Kept(edges)
        }
    }
}

/// A Gauss code under construction, with the origin of each edge.
struct Draft {
    comps: Vec<Vec<Passage>>,
    /// `incoming[comp][idx]`: origin of the edge arriving at that passage;
    /// a crossingless component has one entry.
    incoming: Vec<Vec<Origin>>,
    signs: Vec<i8>,
    destroyed: Vec<Edge>,
}

impl Draft {
    fn new(code: &GaussCode) -> Self {
        let comps = code.components().to_vec();
        let incoming = comps
            .iter()
            .enumerate()
            .map(|(comp, ps)| (0..ps.len().max(1)).map(|idx| Origin::Kept(vec![Pos { comp, idx }])).collect())
            .collect();
        Draft { comps, incoming, signs: code.signs().to_vec(), destroyed: Vec::new() }
    }

    /// Splits edge `e` (current positions) by inserting `ps` into it.
    fn insert(&mut self, e: Edge, ps: &[Passage]) {
        let origin = self.incoming[e.comp][e.idx].clone();
        let comp = &mut self.comps[e.comp];
        let inc = &mut self.incoming[e.comp];
        if comp.is_empty() {
            *comp = ps.to_vec();
            *inc = std::iter::once(origin).chain(std::iter::repeat_n(Origin::New, ps.len() - 1)).collect();
            return;
        }
        for (j, &p) in ps.iter().enumerate() {
            comp.insert(e.idx + j, p);
            inc.insert(e.idx + j, if j == 0 { origin.clone() } else { Origin::New });
        }
    }

    /// Swaps the passage at `p` with the one after it.
    fn swap_pair(&mut self, p: Pos) {
        let len = self.comps[p.comp].len();
        let q = (p.idx + 1) % len;
        self.comps[p.comp].swap(p.idx, q);
        let old = std::mem::replace(&mut self.incoming[p.comp][q], Origin::New);
        self.note_destroyed(old);
    }

    fn note_destroyed(&mut self, o: Origin) {
        if let Origin::Kept(v) = o {
            self.destroyed.extend(v);
        }
    }

    /// Removes each passage at `starts[i]` together with its successor; the
    /// edge between the two disappears and the edges around them merge.
    fn remove_pairs(&mut self, starts: &[Pos]) {
        let mut by_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in starts {
            by_comp.entry(s.comp).or_default().push(s.idx);
        }
        for (comp, idxs) in by_comp {
            let len = self.comps[comp].len();
            let mut removed = vec![false; len];
            let mut dead_edge = vec![false; len];
            for &k in &idxs {
                removed[k] = true;
                removed[(k + 1) % len] = true;
                dead_edge[(k + 1) % len] = true;
            }
            let inc = std::mem::take(&mut self.incoming[comp]);
            for (k, o) in inc.iter().enumerate() {
                if dead_edge[k] {
                    self.note_destroyed(o.clone());
                }
            }
            let kept: Vec<usize> = (0..len).filter(|&k| !removed[k]).collect();
            if kept.is_empty() {
                let live = (0..len).filter(|&k| !dead_edge[k]).map(|k| inc[k].clone());
                self.incoming[comp] = vec![Origin::merge(live)];
                self.comps[comp].clear();
                continue;
            }
            let mut new_inc = Vec::with_capacity(kept.len());
            for (j, &p) in kept.iter().enumerate() {
                let prev = kept[(j + kept.len() - 1) % kept.len()];
                let span = if kept.len() == 1 { len } else { (p + len - prev) % len };
                let live = (0..span)
                    .map(|s| (prev + 1 + s) % len)
                    .filter(|&k| !dead_edge[k])
                    .map(|k| inc[k].clone());
                new_inc.push(Origin::merge(live));
            }
            self.comps[comp] = kept.iter().map(|&k| self.comps[comp][k]).collect();
            self.incoming[comp] = new_inc;
        }
    }

    /// Drops crossings whose passages are already gone and closes the gaps
    /// in the numbering.
    fn remove_crossings(&mut self, cs: &[usize]) {
        let mut cs = cs.to_vec();
        cs.sort_unstable_by(|a, b| b.cmp(a));
        for c in cs {
            self.signs.remove(c);
            for p in self.comps.iter_mut().flatten() {
                if p.crossing > c {
                    p.crossing -= 1;
                }
            }
        }
    }

    fn finish(self) -> Result<(GaussCode, Vec<Vec<Origin>>, Vec<Edge>)> {
        let code = GaussCode::new(self.comps, self.signs)
            .map_err(|e| Error::invariant(format!("move produced a malformed code: {e}")))?;
        Ok((code, self.incoming, self.destroyed))
    }
}

/// Colors the rewritten code from the old coloring and assembles the outcome.
fn transport(
    cd: &ColoredDiagram,
    old: &GaussCode,
    code: GaussCode,
    origins: &[Vec<Origin>],
    destroyed: &[Edge],
) -> Result<MoveOutcome> {
    let r = cd.r();
    let old_layout = old.layout();
    let old_color = |e: Edge| cd.coloring().assignment()[&old_layout.edge_arc[e.comp][e.idx]];

    let mut color: Vec<Vec<Option<u64>>> = Vec::with_capacity(origins.len());
    for comp in origins {
        let mut row = Vec::with_capacity(comp.len());
        for o in comp {
            row.push(match o {
                Origin::New => None,
                Origin::Kept(edges) => {
                    let c = old_color(edges[0]);
                    if edges.iter().any(|&e| old_color(e) != c) {
                        return Err(Error::invariant("merged edges carry different colors"));
                    }
                    Some(c)
                }
            });
        }
        color.push(row);
    }

    let pos = code.positions();
    let solve = |over: u64, other: u64| reduce(2 * over as i128 - other as i128, r);
    loop {
        let mut changed = false;
        for (comp, ps) in code.components().iter().enumerate() {
            let len = ps.len();
            for (k, p) in ps.iter().enumerate() {
                let (ein, eout) = (k, (k + 1) % len);
                let (cin, cout) = (color[comp][ein], color[comp][eout]);
                let set = if p.over {
                    match (cin, cout) {
                        (Some(v), None) => Some((eout, v)),
                        (None, Some(v)) => Some((ein, v)),
                        _ => None,
                    }
                } else {
                    let o = pos[p.crossing][0];
                    color[o.comp][o.idx].and_then(|oc| match (cin, cout) {
                        (Some(v), None) => Some((eout, solve(oc, v))),
                        (None, Some(v)) => Some((ein, solve(oc, v))),
                        _ => None,
                    })
                };
                if let Some((e, v)) = set {
                    color[comp][e] = Some(v);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let layout = code.layout();
    let mut assignment = BTreeMap::new();
    for (&arc, edges) in &layout.arc_edges {
        let vals: BTreeSet<Option<u64>> = edges.iter().map(|e| color[e.comp][e.idx]).collect();
        match vals.into_iter().collect::<Vec<_>>()[..] {
            [Some(v)] => {
                assignment.insert(arc, v);
            }
            [None] => return Err(Error::invariant(format!("no transported color for arc {arc}"))),
            _ => return Err(Error::invariant(format!("arc {arc} received inconsistent colors"))),
        }
    }

    let introduced: BTreeSet<u64> = layout
        .arc_edges
        .iter()
        .filter(|(_, edges)| edges.iter().all(|e| origins[e.comp][e.idx] == Origin::New))
        .map(|(arc, _)| assignment[arc])
        .collect();
    let removed: BTreeSet<u64> = old_layout
        .arc_edges
        .iter()
        .filter(|(_, edges)| edges.iter().all(|e| destroyed.contains(e)))
        .map(|(arc, _)| cd.coloring().assignment()[arc])
        .collect();

    let diagram = Diagram::from_code(code, None)?;
    let coloring = Coloring::new(r, assignment)?;
    let colored = ColoredDiagram::new(diagram, coloring)
        .map_err(|_| Error::invariant("transported coloring violates the crossing relation"))?;
    let before = cd.coloring().palette().colors;
    let after = colored.coloring().palette().colors;
    Ok(MoveOutcome {
        gained: after.difference(&before).copied().collect(),
        lost: before.difference(&after).copied().collect(),
        introduced,
        removed,
        colored,
    })
}
