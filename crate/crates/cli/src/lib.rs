//! Command-line front end: builds a diagram from the command line, runs one
//! library operation and renders a [`Report`].

pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use foxcol::analysis::{
    classify_triple, harary_check, min_colors_of_diagram, mincol_bounds, twist_region_search, BoundReport,
};
use foxcol::coloring::{braid_coloring, color_spectrum, count_colorings, determinant, enumerate_colorings, ColoredDiagram};
use foxcol::diagram::{braid_closure, braid_word_parse, rational_diagram, torus_diagram, Diagram, RationalSpec};
use foxcol::modular::DEFAULT_CAP;
use foxcol::moves::{teneva_reduce, teneva_transform, TenevaOutcome};
use foxcol::verify::run_criterion;
use foxcol::Error;

pub use report::{Report, Source};

pub const CAP_VAR: &str = "FOXCOL_CAP";

#[derive(Debug, Parser)]
#[command(name = "foxcol", version, about = "Fox colorings of knot and link diagrams")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Leave out wall-clock timings, making JSON output reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct DiagramSource {
    /// Standard closure of σ_1^n.
    #[arg(long, value_name = "N")]
    torus: Option<u64>,
    /// Braid word, e.g. "B3: s1 s2^-1 s1 s2^-1".
    #[arg(long, value_name = "WORD")]
    braid: Option<String>,
    /// Twist vector of a rational tangle, e.g. 8,-9.
    #[arg(long, value_name = "A,B,...", value_delimiter = ',', allow_hyphen_values = true)]
    rational: Option<Vec<i64>>,
    /// Diagram record in JSON.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl DiagramSource {
    fn describe(&self) -> String {
        if let Some(n) = self.torus {
            format!("torus {n}")
        } else if let Some(w) = &self.braid {
            format!("braid {w}")
        } else if let Some(v) = &self.rational {
            format!("rational {v:?}")
        } else {
            format!("file {}", self.file.as_ref().expect("one source is required").display())
        }
    }

    fn build(&self) -> Result<Diagram, Failure> {
        if let Some(n) = self.torus {
            Ok(torus_diagram(n)?)
        } else if let Some(w) = &self.braid {
            Ok(braid_closure(&braid_word_parse(w)?))
        } else if let Some(v) = &self.rational {
            Ok(rational_diagram(&RationalSpec::new(v.clone())?)?)
        } else {
            let path = self.file.as_ref().expect("one source is required");
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
            Ok(Diagram::from_json(&text)?)
        }
    }
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Number of r-colorings.
    Count {
        #[command(flatten)]
        source: DiagramSource,
        #[arg(short)]
        r: u64,
    },
    /// Coloring counts for r = 2..=r_max.
    Spectrum {
        #[command(flatten)]
        source: DiagramSource,
        #[arg(long, default_value_t = 12)]
        r_max: u64,
    },
    /// Fewest colors of a nontrivial r-coloring; torus sources add the bounds for T(2, n).
    Mincol {
        #[command(flatten)]
        source: DiagramSource,
        #[arg(short)]
        r: u64,
    },
    /// Teneva transformation (with --steps) or reduction of a torus coloring;
    /// bounded search over twist regions of a rational diagram.
    Teneva {
        #[command(flatten)]
        source: DiagramSource,
        #[arg(short)]
        r: u64,
        #[arg(short)]
        a: Option<u64>,
        #[arg(short)]
        b: Option<u64>,
        #[arg(long)]
        steps: Option<u64>,
        /// Transformations tried by the rational search.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Multiplication-table class of three colors.
    Classify {
        #[arg(short)]
        a: u64,
        #[arg(short)]
        b: u64,
        #[arg(short)]
        c: u64,
        #[arg(short)]
        r: u64,
    },
    /// Determinant of a knot diagram.
    Det {
        #[command(flatten)]
        source: DiagramSource,
    },
    /// Whether every nontrivial p-coloring is injective on arcs.
    Harary {
        #[command(flatten)]
        source: DiagramSource,
        #[arg(short)]
        p: u64,
    },
    /// Runs the acceptance criteria.
    Verify {
        /// Run only these criteria.
        #[arg(long, value_name = "ID")]
        criterion: Vec<u8>,
    },
}

/// Exit status and the text for each output stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn cap() -> Result<u128, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{CAP_VAR} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    match dispatch(&cli.verb) {
        Ok((mut report, ok)) => {
            if !cli.no_timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let stdout = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Table => report.to_table(),
            };
            Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("usage error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn dispatch(verb: &Verb) -> Result<(Report, bool), Failure> {
    let report = match verb {
        Verb::Count { source, r } => {
            let mut rep = with_source("count", source);
            rep.input("r", r);
            rep.result("count", count_colorings(&source.build()?, *r)?, Source::Formula);
            rep
        }
        Verb::Spectrum { source, r_max } => {
            let mut rep = with_source("spectrum", source);
            rep.input("r_max", r_max);
            for (r, count) in color_spectrum(&source.build()?, *r_max)? {
                rep.result(&format!("r={r:02}"), count, Source::Formula);
            }
            rep
        }
        Verb::Mincol { source, r } => mincol(source, *r)?,
        Verb::Teneva { source, r, a, b, steps, budget } => teneva(source, *r, *a, *b, *steps, *budget)?,
        Verb::Classify { a, b, c, r } => {
            let mut rep = Report::new("classify");
            rep.input("colors", [a, b, c]);
            rep.input("r", r);
            let class = classify_triple(*a, *b, *c, *r)?;
            rep.result("kind", class.kind, Source::Enumeration);
            rep.result("blocked", &class.blocked, Source::Enumeration);
            rep.result("requires_3_divides_r", class.requires_3_divides_r, Source::Theorem);
            rep
        }
        Verb::Det { source } => {
            let mut rep = with_source("det", source);
            rep.result("determinant", determinant(&source.build()?)?, Source::Formula);
            rep
        }
        Verb::Harary { source, p } => {
            let mut rep = with_source("harary", source);
            rep.input("p", p);
            rep.result("injective", harary_check(&source.build()?, *p, cap()?)?, Source::Enumeration);
            rep
        }
        Verb::Verify { criterion } => return verify(criterion),
    };
    Ok((report, true))
}

fn with_source(verb: &str, source: &DiagramSource) -> Report {
    let mut rep = Report::new(verb);
    rep.input("source", source.describe());
    rep
}

fn mincol(source: &DiagramSource, r: u64) -> Result<Report, Failure> {
    let mut rep = with_source("mincol", source);
    rep.input("r", r);
    let d = source.build()?;
    rep.result("diagram_min", min_colors_of_diagram(&d, r, cap()?)?, Source::Enumeration);
    if let Some(n) = source.torus {
        let BoundReport { lcpd, branch, lower, upper, witnesses, .. } = mincol_bounds(n, r)?;
        rep.result("lcpd", lcpd, Source::Formula);
        rep.result("branch", branch, Source::Theorem);
        rep.result("lower", lower.map(|b| b.value), Source::Theorem);
        rep.result("upper", upper.map(|b| b.value), Source::Theorem);
        let w: Vec<_> = witnesses.iter().map(|w| json!({ "construction": w.construction, "palette": w.palette })).collect();
        rep.result("witnesses", w, Source::Theorem);
    }
    Ok(rep)
}

fn teneva(source: &DiagramSource, r: u64, a: Option<u64>, b: Option<u64>, steps: Option<u64>, budget: u64) -> Result<Report, Failure> {
    let mut rep = with_source("teneva", source);
    rep.input("r", r);
    if let Some(n) = source.torus {
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Failure::Usage("teneva on a torus source needs -a and -b".into())),
        };
        rep.input("a", a);
        rep.input("b", b);
        let TenevaOutcome { colored, trace, notes } = match steps {
            Some(s) => {
                rep.input("steps", s);
                teneva_transform(&braid_coloring(n, r, a, b)?, s)?
            }
            None => teneva_reduce(n, r, a, b)?,
        };
        rep.result("initial_palette_size", trace.initial_palette.len(), Source::Formula);
        rep.result("palette_size", colored.coloring().palette().size(), Source::Formula);
        rep.result("trace", &trace, Source::Formula);
        if !notes.is_empty() {
            rep.results.insert("notes".into(), json!(notes));
        }
        return Ok(rep);
    }
    if source.rational.is_none() {
        return Err(Failure::Usage("teneva takes a --torus or --rational source".into()));
    }
    if a.is_some() || b.is_some() || steps.is_some() {
        return Err(Failure::Usage("-a, -b and --steps apply to torus sources only".into()));
    }
    rep.input("budget", budget);
    let d = source.build()?;
    let start = enumerate_colorings(&d, r, cap()?)?
        .filter(|c| !c.is_trivial())
        .max_by_key(|c| c.palette().size())
        .ok_or_else(|| Failure::Domain(format!("no nontrivial {r}-coloring")))?;
    let cd = ColoredDiagram::new(d.clone(), start)?;
    let search = twist_region_search(&cd, d.twist_regions(), budget);
    rep.result("initial_coloring", cd.coloring(), Source::Enumeration);
    rep.result("initial_palette_size", search.initial_palette, Source::Enumeration);
    rep.result("palette_size", search.best_palette, Source::Search);
    rep.result("moves", &search.best, Source::Search);
    rep.result("reached", search.reached.keys().collect::<Vec<_>>(), Source::Search);
    rep.result("evaluated", search.evaluated, Source::Search);
    rep.result("complete", search.complete, Source::Search);
    Ok(rep)
}

fn verify(ids: &[u8]) -> Result<(Report, bool), Failure> {
    let ids: Vec<u8> = if ids.is_empty() { (1..=10).collect() } else { ids.to_vec() };
    let mut rep = Report::new("verify");
    rep.input("criteria", &ids);
    let mut all = true;
    for id in ids {
        let c = run_criterion(id).ok_or_else(|| Failure::Usage(format!("no criterion {id}; criteria are 1 to 10")))?;
        all &= c.passed;
        let body = json!({ "name": c.name, "passed": c.passed, "detail": c.detail });
        rep.result(&format!("criterion_{id:02}"), body, Source::Enumeration);
    }
    rep.result("all_passed", all, Source::Enumeration);
    Ok((rep, all))
}
