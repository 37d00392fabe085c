//! Knot and link diagrams.
//!
//! A [`Diagram`] exposes the data Fox colorings need: arcs and signed
//! crossings with their over/under incidences. Diagrams built by this crate
//! also carry the signed Gauss code they were derived from, which is what
//! Reidemeister moves rewrite.

mod braid;
mod gauss;
mod rational;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use braid::{braid_closure, braid_word_parse, torus_diagram, BraidWord};
pub use gauss::{Edge, GaussCode, Passage, Pos};
pub use rational::{rational_diagram, RationalSpec};


use crate::error::{Error, Result};

/// A crossing: `2·over ≡ under_in + under_out` for every coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// How a diagram was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Provenance {
    BraidClosure { word: String },
    Torus { p: u64, q: u64 },
    Rational { twist_vector: Vec<i64> },
    Generic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gauss_code: Option<GaussCode>,
    },
}

/// Interchange form of a diagram; field names are the JSON contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramRecord {
    pub arcs: Vec<usize>,
    pub crossings: Vec<Crossing>,
    pub provenance: Provenance,
}

/// A validated diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    arcs: Vec<usize>,
    crossings: Vec<Crossing>,
    components: usize,
    provenance: Provenance,
    code: Option<GaussCode>,
    twist_regions: Vec<Vec<usize>>,
}

impl Diagram {
    /// Builds a diagram from a signed Gauss code, rejecting codes with no
    /// planar realization.
    pub fn from_code(code: GaussCode, provenance: Option<Provenance>) -> Result<Self> {
        code.check()?;
        if !code.is_planar() {
            return Err(Error::structural("gauss code has no planar realization"));
        }
        let layout = code.layout();
        let provenance = provenance.unwrap_or_else(|| Provenance::Generic { gauss_code: Some(code.clone()) });
        Ok(Diagram {
            arcs: layout.arcs,
            crossings: layout.crossings,
            components: code.components().len(),
            provenance,
            code: Some(code),
            twist_regions: Vec::new(),
        })
    }

    pub(crate) fn with_twist_regions(mut self, regions: Vec<Vec<usize>>) -> Self {
        self.twist_regions = regions;
        self
    }

    /// Rebuilds a diagram from its interchange record.
    ///
    /// Records with a constructive provenance are rebuilt and must match;
    /// generic records without a code are accepted on their Fox data alone.
    pub fn from_record(record: &DiagramRecord) -> Result<Self> {
        let report = validate_diagram(record);
        if !report.valid {
            let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::structural(msgs.join("; ")));
        }
        match &record.provenance {
            Provenance::Generic { gauss_code: None } => Ok(Diagram {
                arcs: record.arcs.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
                crossings: record.crossings.clone(),
                components: report.components,
                provenance: record.provenance.clone(),
                code: None,
                twist_regions: Vec::new(),
            }),
            p => rebuild(p),
        }
    }

    pub fn to_record(&self) -> DiagramRecord {
        DiagramRecord {
            arcs: self.arcs.clone(),
            crossings: self.crossings.clone(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: DiagramRecord = serde_json::from_str(text)?;
        Self::from_record(&record)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("diagram records always serialize")
    }

    /// Sorted arc ids.
    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn gauss_code(&self) -> Option<&GaussCode> {
        self.code.as_ref()
    }

    /// Crossing lists of the twist regions recorded by the constructor,
    /// each ordered along the region.
    pub fn twist_regions(&self) -> &[Vec<usize>] {
        &self.twist_regions
    }

    /// Column of each arc id in [`Diagram::arcs`].
    pub fn arc_index(&self) -> BTreeMap<usize, usize> {
        self.arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_diagram(&self.to_record())
    }
}

fn rebuild(p: &Provenance) -> Result<Diagram> {
    match p {
        Provenance::BraidClosure { word } => Ok(braid_closure(&braid_word_parse(word)?)),
        Provenance::Torus { p: 2, q } => torus_diagram(*q),
        Provenance::Torus { p, .. } => Err(Error::domain(format!("only T(2, n) is supported, got p = {p}"))),
        Provenance::Rational { twist_vector } => rational_diagram(&RationalSpec::new(twist_vector.clone())?),
        Provenance::Generic { gauss_code: Some(code) } => Diagram::from_code(code.clone(), None),
        Provenance::Generic { gauss_code: None } => Err(Error::invariant("nothing to rebuild from")),
    }
}

/// A broken diagram invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UnknownArc { crossing: usize, arc: usize },
    DuplicateArc { arc: usize },
    BadSign { crossing: usize, sign: i8 },
    UnderEnds { arc: usize, count: usize },
    ProvenanceMismatch { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownArc { crossing, arc } => write!(f, "unknown arc id {arc} at crossing {crossing}"),
            Violation::DuplicateArc { arc } => write!(f, "duplicate arc id {arc}"),
            Violation::BadSign { crossing, sign } => write!(f, "crossing {crossing} has sign {sign}"),
            Violation::UnderEnds { arc, count } => {
                write!(f, "arc {arc} ends at {count} under-positions (expected 2, or 0 for a closed loop)")
            }
            Violation::ProvenanceMismatch { detail } => write!(f, "provenance mismatch: {detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub arcs: usize,
    pub crossings: usize,
    pub components: usize,
    pub violations: Vec<Violation>,
}

/// Checks every diagram invariant and lists what is broken.
pub fn validate_diagram(record: &DiagramRecord) -> ValidationReport {
    let mut violations = Vec::new();
    let mut arcs = BTreeSet::new();
    for &a in &record.arcs {
        if !arcs.insert(a) {
            violations.push(Violation::DuplicateArc { arc: a });
        }
    }
    let mut ends: BTreeMap<usize, usize> = arcs.iter().map(|&a| (a, 0)).collect();
    for (c, x) in record.crossings.iter().enumerate() {
        for arc in [x.over, x.under_in, x.under_out] {
            if !arcs.contains(&arc) {
                violations.push(Violation::UnknownArc { crossing: c, arc });
            }
        }
        if x.sign != 1 && x.sign != -1 {
            violations.push(Violation::BadSign { crossing: c, sign: x.sign });
        }
        for arc in [x.under_in, x.under_out] {
            if let Some(k) = ends.get_mut(&arc) {
                *k += 1;
            }
        }
    }
    for (&arc, &count) in &ends {
        if count != 0 && count != 2 {
            violations.push(Violation::UnderEnds { arc, count });
        }
    }

    let mut components = fox_components(&arcs, &record.crossings);
    match &record.provenance {
        Provenance::Generic { gauss_code: None } => {}
        p => match rebuild(p) {
            Ok(d) => {
                components = d.components;
                if d.arcs != arcs.iter().copied().collect::<Vec<_>>() || d.crossings != record.crossings {
                    violations.push(Violation::ProvenanceMismatch {
                        detail: "arcs or crossings differ from the diagram the provenance builds".into(),
                    });
                }
            }
            Err(e) => violations.push(Violation::ProvenanceMismatch { detail: e.to_string() }),
        },
    }

    ValidationReport {
        valid: violations.is_empty(),
        arcs: arcs.len(),
        crossings: record.crossings.len(),
        components,
        violations,
    }
}

/// Components from Fox data alone: arcs joined through under-passages.
fn fox_components(arcs: &BTreeSet<usize>, crossings: &[Crossing]) -> usize {
    let index: BTreeMap<usize, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in crossings {
        if let (Some(&a), Some(&b)) = (index.get(&x.under_in), index.get(&x.under_out)) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    (0..arcs.len()).filter(|&i| find(&mut parent, i) == i).count()
}
