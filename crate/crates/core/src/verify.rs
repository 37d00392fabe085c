//! Acceptance checks, shared by the `acceptance` test target and the
//! `verify` command.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    apply_twist_moves, classify_triple, conjecture_experiment, harary_check, min_colors_of_diagram,
    three_color_feasible, twist_region_search, TripleKind,
};
use crate::coloring::{
    braid_coloring, coloring_matrix, count_colorings, determinant, enumerate_colorings, validate_coloring,
    ColoredDiagram, Coloring,
};
use crate::diagram::{
    braid_closure, braid_word_parse, rational_diagram, torus_diagram, Crossing, Diagram, DiagramRecord, Provenance,
    RationalSpec,
};
use crate::error::{Error, Result};
use crate::modular::{gcd, reduce, smith_normal_form, DEFAULT_CAP};
use crate::moves::{random_legal_move, teneva_reduce, teneva_transform};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("[{verdict}] {:>2}. {} ({} ms): {}", self.id, self.name, self.elapsed_ms, self.detail)
    }
}

pub const CRITERIA: [(u8, &str, Option<u64>); 10] = [
    (1, "spectral formula on T(2, n)", Some(5)),
    (2, "SNF count against exhaustive scan", Some(60)),
    (3, "trefoil has nine 3-colorings", None),
    (4, "diagram-level minima per branch", Some(10)),
    (5, "Teneva lemma trace", None),
    (6, "Teneva reduction to k + 2 colors", None),
    (7, "random legal moves preserve counts", None),
    (8, "three-color triple classification", Some(10)),
    (9, "rational anchors N[8, -9] and N[8, -6]", Some(30)),
    (10, "conjecture experiment for k = 3", Some(60)),
];

/// Outcome of a check: `Ok(detail)` passes, `Err(detail)` fails.
type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run_criterion(id: u8) -> Option<CriterionReport> {
    let &(id, name, limit) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = match id {
        1 => spectral(),
        2 => oracle(),
        3 => trefoil(),
        4 => branches(),
        5 => lemma_trace(),
        6 => reduction_count(),
        7 => move_invariance(),
        8 => triples(),
        9 => rational_anchors(),
        _ => experiment(),
    };
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(l) = limit.filter(|&l| elapsed > l) {
        passed = false;
        detail = format!("{detail}; exceeded the {} s limit", l.as_secs());
    }
    Some(CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0)).collect()
}

/// Named diagrams used by the corpus-wide checks.
pub fn corpus() -> Vec<(String, Diagram)> {
    let mut out = Vec::new();
    for n in 2..=9 {
        out.push((format!("torus {n}"), torus_diagram(n).expect("n >= 2")));
    }
    let braids = [
        "B2: s1^-3",
        "B3: s1 s2",
        "B3: s1 s2^-1 s1 s2^-1",
        "B3: s1^2 s2^2",
        "B3: s1^3 s2^-2",
        "B3: s1 s2^-1 s1 s2^-1 s1 s2^-1",
        "B3: s1^2",
        "B4: s1 s2^-1 s3 s2^-1",
        "B4: s1^2 s2 s3^-1 s2",
        "B4: s1^-3 s3^2",
    ];
    for w in braids {
        let d = braid_closure(&braid_word_parse(w).expect("corpus words parse"));
        out.push((w.to_string(), d));
    }
    let vectors: [&[i64]; 10] =
        [&[2, -3], &[3, -2], &[2, 2], &[1, 1, 1], &[2, -1, 2], &[3, -3], &[4, -2], &[-2, 3, 1], &[8, -9], &[8, -6]];
    for v in vectors {
        let d = rational_diagram(&RationalSpec::new(v.to_vec()).expect("nonzero entries")).expect("builds");
        out.push((format!("rational {v:?}"), d));
    }
    // a figure-eight given by Fox data alone
    let record = DiagramRecord {
        arcs: vec![0, 1, 2, 3],
        crossings: vec![
            Crossing { over: 2, under_in: 0, under_out: 1, sign: 1 },
            Crossing { over: 0, under_in: 1, under_out: 2, sign: 1 },
            Crossing { over: 3, under_in: 2, under_out: 3, sign: -1 },
            Crossing { over: 1, under_in: 3, under_out: 0, sign: -1 },
        ],
        provenance: Provenance::Generic { gauss_code: None },
    };
    out.push(("figure-eight (Fox data)".to_string(), Diagram::from_record(&record).expect("valid record")));
    out
}

/// Counts by trying all `r^arcs` assignments against the crossing relation.
pub fn exhaustive_count(d: &Diagram, r: u64) -> u128 {
    let arcs = d.arcs();
    let index = d.arc_index();
    let rel: Vec<[usize; 3]> =
        d.crossings().iter().map(|c| [index[&c.over], index[&c.under_in], index[&c.under_out]]).collect();
    let mut x = vec![0u64; arcs.len()];
    let mut count = 0;
    loop {
        if rel.iter().all(|&[o, a, b]| (2 * x[o]) % r == (x[a] + x[b]) % r) {
            count += 1;
        }
        let mut k = 0;
        while k < x.len() {
            x[k] += 1;
            if x[k] < r {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == x.len() {
            return count;
        }
    }
}

fn spectral() -> Check {
    for n in 2..=12u64 {
        let d = lib(torus_diagram(n))?;
        for r in 2..=25u64 {
            let got = lib(count_colorings(&d, r))?;
            let want = lib(gcd(n as i64, r as i64))? as u128 * r as u128;
            ensure(got == want, || format!("n = {n}, r = {r}: counted {got}, expected {want}"))?;
        }
    }
    Ok("all 264 pairs match gcd(n, r)·r".into())
}

fn oracle() -> Check {
    let mut checked = 0;
    for (name, d) in corpus().into_iter().filter(|(_, d)| d.num_arcs() <= 8) {
        for r in 2..=5 {
            let got = lib(count_colorings(&d, r))?;
            let want = exhaustive_count(&d, r);
            ensure(got == want, || format!("{name}, r = {r}: SNF {got}, scan {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (diagram, r) pairs agree"))
}

fn trefoil() -> Check {
    let got = lib(count_colorings(&lib(torus_diagram(3))?, 3))?;
    ensure(got == 9, || format!("counted {got}"))?;
    Ok("9 colorings".into())
}

fn branches() -> Check {
    let min = |d: &Diagram, r| lib(min_colors_of_diagram(d, r, DEFAULT_CAP));
    for (n, r, want) in [(4, 4, 2), (6, 4, 2), (2, 6, 2), (3, 3, 3), (9, 3, 3), (3, 9, 3)] {
        let got = min(&lib(torus_diagram(n))?, r)?;
        ensure(got == Some(want), || format!("T(2, {n}) at r = {r}: {got:?}, expected {want}"))?;
    }
    for (n, r) in [(5, 5), (5, 10), (10, 5)] {
        let reduced = lib(teneva_reduce(n, r, 0, r / 5))?;
        let got = min(reduced.colored.diagram(), r)?;
        ensure(got == Some(4), || format!("reduced T(2, {n}) at r = {r}: {got:?}, expected 4"))?;
    }
    let standard = min(&lib(torus_diagram(5))?, 5)?;
    ensure(standard == Some(5), || format!("standard T(2, 5) at r = 5: {standard:?}, expected 5"))?;
    Ok("2, 3 and 4 where expected; standard T(2, 5) needs 5".into())
}

fn lemma_trace() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e4e7a);
    let mut traces = 0;
    for n in 3..=15u64 {
        for _ in 0..3 {
            let m = rng.gen_range(1..=6u64);
            let r = n * m;
            let (a, j) = (rng.gen_range(0..r), rng.gen_range(1..n));
            let b = (a + j * m) % r;
            let x = |k: u64| reduce((k as i128 + 1) * b as i128 - k as i128 * a as i128, r);
            let cd = lib(braid_coloring(n, r, a, b))?;
            let full = lib(teneva_transform(&cd, n - 1))?;
            for steps in 1..n {
                let out = lib(teneva_transform(&cd, steps))?;
                let s = &out.trace.steps;
                ensure(s[..] == full.trace.steps[..s.len()], || format!("n = {n}: trace for {steps} steps is not a prefix"))?;
                ensure(out.trace.is_consistent(), || format!("n = {n}: inconsistent palette trace"))?;
            }
            let s = &full.trace.steps;
            let one = BTreeSet::from([x(n + 1)]);
            ensure(s[1].introduced == one, || format!("n = {n}, r = {r}, a = {a}, b = {b}: move 1 introduced {:?}", s[1].introduced))?;
            for i in 2..n {
                let (rem, intro) = (BTreeSet::from([x(n - i)]), BTreeSet::from([x(n + i)]));
                let st = &s[i as usize];
                ensure(st.removed == rem && st.introduced == intro, || {
                    format!("n = {n}, r = {r}, a = {a}, b = {b}, move {i}: removed {:?}, introduced {:?}", st.removed, st.introduced)
                })?;
            }
            traces += 1;
        }
    }
    Ok(format!("{traces} traces match the closed forms"))
}

fn reduction_count() -> Check {
    let mut sizes = Vec::new();
    for p in [5u64, 7, 11, 13] {
        let k = (p - 1) / 2;
        let cd = lib(braid_coloring(p, p, 0, 1))?;
        let at_k = lib(teneva_transform(&cd, k))?.trace.final_palette_size();
        let next = lib(teneva_transform(&cd, k + 1))?.trace.final_palette_size();
        ensure(at_k as u64 == k + 2, || format!("p = {p}: {at_k} colors after {k} moves, expected {}", k + 2))?;
        ensure(next > at_k, || format!("p = {p}: move {} does not increase the palette ({next})", k + 1))?;
        sizes.push(format!("{p}: {at_k} then {next}"));
    }
    Ok(sizes.join(", "))
}

fn random_coloring(d: &Diagram, rng: &mut ChaCha8Rng) -> Result<ColoredDiagram> {
    for r in [3u64, 5, 7, 4, 2] {
        let nontrivial: Vec<Coloring> = enumerate_colorings(d, r, DEFAULT_CAP)?.filter(|c| !c.is_trivial()).collect();
        if let Some(c) = nontrivial.choose(rng) {
            return ColoredDiagram::new(d.clone(), c.clone());
        }
    }
    ColoredDiagram::new(d.clone(), Coloring::constant(d, 3, 0)?)
}

fn move_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let moduli = [2u64, 3, 4, 5, 7];
    let mut states = Vec::new();
    for (name, d) in corpus().into_iter().filter(|(_, d)| d.gauss_code().is_some() && d.num_arcs() <= 10) {
        let counts = moduli.iter().map(|&r| count_colorings(&d, r)).collect::<Result<Vec<_>>>();
        states.push((name, lib(random_coloring(&d, &mut rng))?, lib(counts)?));
    }
    let mut kinds = std::collections::BTreeMap::new();
    for i in 0..200 {
        let k = i % states.len();
        let (name, cd, counts) = &states[k];
        let (spec, out) = random_legal_move(cd, &mut rng).ok_or_else(|| format!("{name}: no legal move"))?;
        let next = out.colored;
        ensure(lib(validate_coloring(next.diagram(), next.coloring()))?, || format!("{name}: {spec:?} broke the coloring"))?;
        for (&r, &want) in moduli.iter().zip(counts) {
            let got = lib(count_colorings(next.diagram(), r))?;
            ensure(got == want, || format!("{name}: {spec:?} changed the {r}-coloring count {want} -> {got}"))?;
        }
        *kinds.entry(spec.kind()).or_insert(0) += 1;
        states[k].1 = next;
    }
    Ok(format!("200 moves on {} diagrams {kinds:?}", states.len()))
}

fn triples() -> Check {
    for r in 2..=30u64 {
        let mut closed = false;
        for a in 0..r {
            for b in a + 1..r {
                for c in b + 1..r {
                    closed |= lib(classify_triple(a, b, c, r))?.kind == TripleKind::ClosedCyclic;
                }
            }
        }
        ensure(closed == (r % 3 == 0), || format!("r = {r}: closed triple exists = {closed}"))?;
        ensure(closed == three_color_feasible(r), || format!("r = {r}: feasibility disagrees with the scan"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut done = 0;
    while done < 1000 {
        let r = rng.gen_range(3..=60u64);
        let (a, b, c, t) = (rng.gen_range(0..r), rng.gen_range(0..r), rng.gen_range(0..r), rng.gen_range(0..r));
        if a == b || b == c || a == c {
            continue;
        }
        let base = lib(classify_triple(a, b, c, r))?;
        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            ensure(lib(classify_triple(x, y, z, r))? == base, || format!("({a}, {b}, {c}) mod {r}: labeling changes the class"))?;
        }
        let moved = lib(classify_triple((a + t) % r, (b + t) % r, (c + t) % r, r))?;
        let shifted: BTreeSet<u64> = base.blocked.iter().map(|x| (x + t) % r).collect();
        ensure(moved.kind == base.kind && moved.blocked == shifted, || {
            format!("({a}, {b}, {c}) mod {r}: translation by {t} changes the class")
        })?;
        done += 1;
    }
    Ok("closed triples exactly when 3 | r for r <= 30; 1000 random triples invariant".into())
}

/// `|det|` from the Smith form: product of the nonzero invariant factors of
/// the coloring matrix, which has corank one for a knot.
fn snf_determinant(d: &Diagram) -> Result<u128> {
    let snf = smith_normal_form(&coloring_matrix(d)?)?;
    if snf.rank + 1 != d.num_arcs() {
        return Err(Error::domain("coloring matrix does not have corank one"));
    }
    snf.d[..snf.rank].iter().try_fold(1u128, |acc, &x| acc.checked_mul(x.unsigned_abs()).ok_or(Error::Overflow("determinant")))
}

fn reduce_rational(v: Vec<i64>, r: u64, from: usize, to: usize) -> std::result::Result<String, String> {
    let d = lib(rational_diagram(&lib(RationalSpec::new(v.clone()))?))?;
    let start = lib(enumerate_colorings(&d, r, DEFAULT_CAP))?
        .find(|c| c.palette().size() == from)
        .ok_or_else(|| format!("{v:?}: no nontrivial {r}-coloring with {from} colors"))?;
    let cd = lib(ColoredDiagram::new(d.clone(), start))?;
    let search = twist_region_search(&cd, d.twist_regions(), u64::MAX);
    let seq = search.reached.get(&to).ok_or_else(|| {
        format!("{v:?}: search reached palettes {:?}, not {to}", search.reached.keys().collect::<Vec<_>>())
    })?;
    let (out, trace) = lib(apply_twist_moves(&cd, seq))?;
    ensure(lib(validate_coloring(out.diagram(), out.coloring()))?, || format!("{v:?}: reduced coloring is invalid"))?;
    ensure(out.coloring().palette().size() == to && trace.is_consistent(), || format!("{v:?}: replay disagrees"))?;
    let runs: Vec<String> = seq.iter().map(|m| format!("{:?}x{}", m.run, m.steps)).collect();
    Ok(format!("{v:?}: {from} -> {to} colors via {} (fewest found {})", runs.join(" + "), search.best_palette))
}

fn rational_anchors() -> Check {
    let d89 = lib(rational_diagram(&lib(RationalSpec::new(vec![8, -9]))?))?;
    let det = lib(determinant(&d89))?;
    ensure(det == 73 && lib(snf_determinant(&d89))? == 73, || format!("det N[8, -9] = {det}, expected 73"))?;
    ensure(d89.num_arcs() == 17, || format!("N[8, -9] has {} arcs", d89.num_arcs()))?;
    let full = lib(enumerate_colorings(&d89, 73, DEFAULT_CAP))?.any(|c| c.palette().size() == 17);
    ensure(full, || "no nontrivial 73-coloring with 17 colors".into())?;
    ensure(lib(harary_check(&d89, 73, DEFAULT_CAP))?, || "harary check fails on N[8, -9]".into())?;
    let first = reduce_rational(vec![8, -9], 73, 17, 12)?;

    let d86 = lib(rational_diagram(&lib(RationalSpec::new(vec![8, -6]))?))?;
    let (det, snf) = (lib(determinant(&d86))?, lib(snf_determinant(&d86))?);
    ensure(det == 49 && snf == 49, || format!("det N[8, -6]: minor {det}, Smith form {snf}, expected 49"))?;
    let second = reduce_rational(vec![8, -6], 7, 7, 5)?;
    Ok(format!("determinants 73 and 49; {first}; {second}"))
}

fn experiment() -> Check {
    let rep = lib(conjecture_experiment(3, 7, 7, 6))?;
    ensure(rep.evaluated == 6, || format!("evaluated {} candidates", rep.evaluated))?;
    ensure(rep.best_palette == 5 && !rep.counterexample, || {
        format!("best palette {}, counterexample {}", rep.best_palette, rep.counterexample)
    })?;
    Ok(format!("best found {} = k + 2 over steps 1..6, no counterexample", rep.best_palette))
}
