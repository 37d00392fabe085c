use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{apply_move, edge_ref, EdgeRef, MoveOutcome, MoveSpec};
use crate::coloring::ColoredDiagram;
use crate::diagram::GaussCode;

/// Moves worth trying, grouped by kind. Face patterns narrow the search;
/// each candidate may still be rejected by [`apply_move`].
fn candidates(code: &GaussCode) -> Vec<Vec<MoveSpec>> {
    let layout = code.layout();
    let faces = code.faces();
    let crossing_at = |e: crate::diagram::Edge| {
        (code.len_of(e.comp) > 0).then(|| code.passage(e).crossing)
    };

    let mut r1_add = Vec::new();
    for (&arc, edges) in &layout.arc_edges {
        for segment in 0..edges.len() {
            for under_first in [false, true] {
                for sign in [1, -1] {
                    r1_add.push(MoveSpec::R1Add { site: EdgeRef { arc, segment }, under_first, sign });
                }
            }
        }
    }
    let r1_remove = (0..code.num_crossings()).map(|crossing| MoveSpec::R1Remove { crossing }).collect();

    let mut r2_add = Vec::new();
    let mut r2_remove = BTreeSet::new();
    let mut r3 = BTreeSet::new();
    for face in &faces {
        let refs: Vec<EdgeRef> = face.iter().map(|&e| edge_ref(code, e)).collect();
        for (i, &over) in refs.iter().enumerate() {
            for &under in &refs[i + 1..] {
                for (o, u) in [(over, under), (under, over)] {
                    for reversed in [false, true] {
                        for sign in [1, -1] {
                            r2_add.push(MoveSpec::R2Add { over: o, under: u, reversed, sign });
                        }
                    }
                }
            }
        }
        let corners: Option<BTreeSet<usize>> = face.iter().map(|&e| crossing_at(e)).collect();
        match (face.len(), corners) {
            (2, Some(c)) if c.len() == 2 => {
                let v: Vec<usize> = c.into_iter().collect();
                r2_remove.insert([v[0], v[1]]);
            }
            (3, Some(c)) if c.len() == 3 => {
                let v: Vec<usize> = c.into_iter().collect();
                r3.insert([v[0], v[1], v[2]]);
            }
            _ => {}
        }
    }
    vec![
        r1_add,
        r1_remove,
        r2_add,
        r2_remove.into_iter().map(|crossings| MoveSpec::R2Remove { crossings }).collect(),
        r3.into_iter().map(|crossings| MoveSpec::R3 { crossings }).collect(),
    ]
}

/// Every legal move on a colored diagram, in a fixed order.
pub fn legal_moves(cd: &ColoredDiagram) -> Vec<MoveSpec> {
    let Some(code) = cd.diagram().gauss_code() else { return Vec::new() };
    candidates(code).into_iter().flatten().filter(|m| apply_move(cd, m).is_ok()).collect()
}

/// Picks a move kind uniformly among those with a legal instance, then a
/// legal move of that kind uniformly. Returns `None` if no move applies.
pub fn random_legal_move<R: Rng + ?Sized>(cd: &ColoredDiagram, rng: &mut R) -> Option<(MoveSpec, MoveOutcome)> {
    let code = cd.diagram().gauss_code()?;
    let mut kinds = candidates(code);
    kinds.retain(|k| !k.is_empty());
    while !kinds.is_empty() {
        let i = rng.gen_range(0..kinds.len());
        let mut pool = kinds.swap_remove(i);
        pool.shuffle(rng);
        for m in pool {
            if let Ok(out) = apply_move(cd, &m) {
                return Some((m, out));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{braid_coloring, count_colorings, validate_coloring};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trefoil_moves() {
        let cd = braid_coloring(3, 3, 0, 1).unwrap();
        let moves = legal_moves(&cd);
        let kinds: BTreeSet<&str> = moves.iter().map(MoveSpec::kind).collect();
        assert!(kinds.contains("R1_add") && kinds.contains("R2_add"));
        assert!(!kinds.contains("R1_remove") && !kinds.contains("R2_remove"));
        // the trefoil's triangles have all-over/all-under corners
        assert!(!kinds.contains("R3"));
    }

    #[test]
    fn seeded_walk_preserves_validity_and_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let start = braid_coloring(5, 5, 0, 1).unwrap();
        let count = count_colorings(start.diagram(), 5).unwrap();
        let mut cd = start;
        for _ in 0..25 {
            let (_, out) = random_legal_move(&cd, &mut rng).unwrap();
            cd = out.colored;
            assert!(validate_coloring(cd.diagram(), cd.coloring()).unwrap());
            assert_eq!(count_colorings(cd.diagram(), 5).unwrap(), count);
        }
    }
}
