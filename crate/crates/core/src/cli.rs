//! The `ambrel` command line: parses flags, runs one verb and returns the
//! exit code together with the JSON for standard output and a summary for
//! standard error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::capacity::capacity_of;
use crate::crisp::CrispAmbRep;
use crate::fuzzy::LFuzzyAmbRep;
use crate::generators::{
    projection_rep, random_capacity_with, random_fuzzy_rep, random_rep, translation_rep, trial_rng,
    GenError, GridWindow,
};
use crate::hyperencoding::encode;
use crate::hyperspace::{FiniteSpace, Subset};
use crate::json::{
    capacity_to_json, crisp_to_json, fuzzy_to_json, lattice_from_doc, parse_document, triples_to_json,
    Document, JsonError, LatticeDoc,
};
use crate::lattice::{FiniteLattice, TNorm};
use crate::laws::{self, Config, FuzzySetting, LawError, SearchLaw, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ambrel", version, about = "Crisp and lattice-valued ambiguous representations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Input document.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Second input document.
    #[arg(long)]
    rep2: Option<PathBuf>,
    /// `chain:N`, `boolean-square`, or a lattice JSON file.
    #[arg(long)]
    lattice: Option<String>,
    /// `meet`, `lukasiewicz`, or a JSON file with a t-norm table.
    #[arg(long)]
    tnorm: Option<String>,
    /// Grade label.
    #[arg(long)]
    alpha: Option<String>,
    /// Subset as comma-separated labels or a JSON array.
    #[arg(long)]
    set: Option<String>,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    exhaustive: bool,
    /// Also write the output JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Check a document against its axioms; prints it canonically when valid.
    Validate(Common),
    /// Pseudo-inverse of a crisp or fuzzy representation.
    Sms(Common),
    /// `rep ⊚ rep2`.
    Compose(Common),
    /// α-cut of a fuzzy representation.
    Cut(Common),
    Join(Common),
    Meet(Common),
    /// Capacity `c_{AR}` of the set given by `--set`.
    Capacity(Common),
    /// Unavoidable sets of `--set`.
    Unavoidable(Common),
    /// Generate a representation, capacity or grid example.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[command(flatten)]
        common: Common,
    },
    /// Sup-saturated triple encoding of a fuzzy representation.
    Encode(Common),
    /// Run a law suite.
    Laws {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a counterexample to a law.
    Search {
        #[arg(long, value_enum)]
        law: SearchLawArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Crisp,
    Fuzzy,
    Capacity,
    Identity,
    Top,
    Bottom,
    Projection,
    Translation,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Crisp,
    Fuzzy,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SearchLawArg {
    Modular,
    MeetDistributivity,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Json(Box<JsonError>),
    #[error(transparent)]
    Laws(#[from] LawError),
    #[error(transparent)]
    Gen(#[from] GenError),
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::Json(Box::new(e))
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Json(e) if !e.is_malformed() => EXIT_INVALID,
            _ => EXIT_MALFORMED,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            return Outcome {
                code,
                stdout: String::new(),
                stderr: e.render().to_string(),
            };
        }
    };
    match execute(cli.verb) {
        Ok((code, value, summary)) => Outcome {
            code,
            stdout: render(&value),
            stderr: summary,
        },
        Err(e) => {
            let report = json!({ "verdict": "invalid", "error": e.to_string() });
            Outcome {
                code: e.code(),
                stdout: if e.code() == EXIT_INVALID { render(&report) } else { String::new() },
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

type Run = Result<(i32, Value, String), CliError>;

fn done(value: Value) -> Run {
    Ok((EXIT_OK, value, String::new()))
}

fn execute(verb: Verb) -> Run {
    let (result, out) = match verb {
        Verb::Validate(c) => (validate(&c), c.out),
        Verb::Sms(c) => (sms(&c), c.out),
        Verb::Compose(c) => (compose(&c), c.out),
        Verb::Cut(c) => (cut(&c), c.out),
        Verb::Join(c) => (lattice_op(&c, true), c.out),
        Verb::Meet(c) => (lattice_op(&c, false), c.out),
        Verb::Capacity(c) => (capacity(&c), c.out),
        Verb::Unavoidable(c) => (unavoidable(&c), c.out),
        Verb::Gen { kind, common } => (gen(kind, &common), common.out),
        Verb::Encode(c) => (encode_verb(&c), c.out),
        Verb::Laws { suite, common } => (laws_verb(suite, &common), common.out),
        Verb::Search { law, common } => (search(law, &common), common.out),
    };
    let (code, value, summary) = result?;
    if let Some(path) = out {
        fs::write(&path, render(&value)).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok((code, value, summary))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: Option<&PathBuf>, flag: &str) -> Result<Document, CliError> {
    let path = path.ok_or_else(|| usage(format!("--{flag} is required")))?;
    Ok(parse_document(&read(path)?)?)
}

enum Rep {
    Crisp(CrispAmbRep),
    Fuzzy(LFuzzyAmbRep),
}

fn load_rep(path: Option<&PathBuf>, flag: &str) -> Result<Rep, CliError> {
    match load(path, flag)? {
        Document::Crisp(r) => Ok(Rep::Crisp(r)),
        Document::Fuzzy(r) => Ok(Rep::Fuzzy(r)),
        other => Err(usage(format!("--{flag}: expected a representation, got a {} document", other.kind()))),
    }
}

fn load_pair(c: &Common) -> Result<(Rep, Rep), CliError> {
    Ok((load_rep(c.rep.as_ref(), "rep")?, load_rep(c.rep2.as_ref(), "rep2")?))
}

fn mixed() -> CliError {
    usage("--rep and --rep2 must both be crisp or both be fuzzy")
}

fn validate(c: &Common) -> Run {
    done(load(c.rep.as_ref(), "rep")?.to_json())
}

fn sms(c: &Common) -> Run {
    done(match load_rep(c.rep.as_ref(), "rep")? {
        Rep::Crisp(r) => crisp_to_json(&r.sms()),
        Rep::Fuzzy(r) => fuzzy_to_json(&r.sms()),
    })
}

fn compose(c: &Common) -> Run {
    done(match load_pair(c)? {
        (Rep::Crisp(r), Rep::Crisp(s)) => crisp_to_json(&r.compose(&s).map_err(JsonError::from)?),
        (Rep::Fuzzy(r), Rep::Fuzzy(s)) => {
            let tnorm = tnorm_for(c, r.lattice())?;
            fuzzy_to_json(&r.compose(&s, &tnorm).map_err(JsonError::from)?)
        }
        _ => return Err(mixed()),
    })
}

fn lattice_op(c: &Common, join: bool) -> Run {
    done(match load_pair(c)? {
        (Rep::Crisp(r), Rep::Crisp(s)) => {
            let v = if join { r.join(&s) } else { r.meet(&s) };
            crisp_to_json(&v.map_err(JsonError::from)?)
        }
        (Rep::Fuzzy(r), Rep::Fuzzy(s)) => {
            let v = if join { r.join(&s) } else { r.meet(&s) };
            fuzzy_to_json(&v.map_err(JsonError::from)?)
        }
        _ => return Err(mixed()),
    })
}

fn fuzzy_only(c: &Common) -> Result<LFuzzyAmbRep, CliError> {
    match load_rep(c.rep.as_ref(), "rep")? {
        Rep::Fuzzy(r) => Ok(r),
        Rep::Crisp(_) => Err(usage("--rep must be a fuzzy representation")),
    }
}

fn alpha_of(c: &Common, lattice: &FiniteLattice) -> Result<crate::lattice::Elem, CliError> {
    let label = c.alpha.as_deref().ok_or_else(|| usage("--alpha is required"))?;
    lattice.find(label).map_err(|e| usage(e.to_string()))
}

fn cut(c: &Common) -> Run {
    let r = fuzzy_only(c)?;
    let alpha = alpha_of(c, r.lattice())?;
    done(crisp_to_json(&r.cut(alpha)))
}

fn parse_set(c: &Common, space: &FiniteSpace) -> Result<Subset, CliError> {
    let raw = c.set.as_deref().ok_or_else(|| usage("--set is required"))?.trim();
    let labels: Vec<String> = if raw.starts_with('[') {
        serde_json::from_str(raw).map_err(|e| usage(format!("--set: {e}")))?
    } else {
        raw.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    };
    let s = space.subset_from_labels(&labels).map_err(|e| usage(e.to_string()))?;
    if s.is_empty() {
        return Err(usage("--set must be nonempty"));
    }
    Ok(s)
}

fn capacity(c: &Common) -> Run {
    let r = fuzzy_only(c)?;
    let a = parse_set(c, r.source())?;
    done(capacity_to_json(&capacity_of(&r, a)))
}

fn unavoidable(c: &Common) -> Run {
    let r = match load_rep(c.rep.as_ref(), "rep")? {
        Rep::Crisp(r) => r,
        Rep::Fuzzy(r) => r.cut(alpha_of(c, r.lattice())?),
    };
    let a = parse_set(c, r.source())?;
    let y = r.target();
    let sets: Vec<Vec<String>> = r
        .unavoidable(a)
        .family()
        .iter()
        .map(|s| y.subset_labels(s))
        .collect();
    done(json!({
        "source": r.source().labels(),
        "target": y.labels(),
        "set": r.source().subset_labels(a),
        "unavoidable": sets,
    }))
}

fn encode_verb(c: &Common) -> Run {
    let r = fuzzy_only(c)?;
    done(triples_to_json(&encode(&r).map_err(JsonError::from)?))
}

fn lattice_arg(spec: &str) -> Result<(FiniteLattice, Option<TNorm>), CliError> {
    if spec == "boolean-square" {
        return Ok((FiniteLattice::boolean_square(), None));
    }
    if let Some(n) = spec.strip_prefix("chain:") {
        let n: usize = n.parse().map_err(|_| usage(format!("bad chain length in {spec:?}")))?;
        if !(1..=64).contains(&n) {
            return Err(usage("chain length must be between 1 and 64"));
        }
        return Ok((FiniteLattice::chain(n), None));
    }
    let doc: LatticeDoc = serde_json::from_str(&read(Path::new(spec))?).map_err(JsonError::from)?;
    let declared = doc.tnorm.is_some();
    let parsed = lattice_from_doc(&doc)?;
    Ok((parsed.lattice, declared.then_some(parsed.tnorm)))
}

fn tnorm_arg(spec: &str, lattice: &FiniteLattice) -> Result<TNorm, CliError> {
    match spec {
        "meet" => Ok(TNorm::meet(lattice)),
        "lukasiewicz" => TNorm::lukasiewicz(lattice)
            .ok_or_else(|| usage("the Łukasiewicz t-norm needs a chain")),
        path => {
            let value: Value = serde_json::from_str(&read(Path::new(path))?).map_err(JsonError::from)?;
            let rows = match value.get("tnorm") {
                Some(t) => t.clone(),
                None => value,
            };
            let rows: Vec<Vec<String>> = serde_json::from_value(rows).map_err(JsonError::from)?;
            Ok(TNorm::from_labels(lattice, &rows).map_err(JsonError::from)?)
        }
    }
}

fn tnorm_for(c: &Common, lattice: &FiniteLattice) -> Result<TNorm, CliError> {
    c.tnorm
        .as_deref()
        .map_or_else(|| Ok(TNorm::meet(lattice)), |t| tnorm_arg(t, lattice))
}

fn sizes(c: &Common, want: usize, default: &[usize]) -> Result<Vec<usize>, CliError> {
    let s = if c.sizes.is_empty() { default.to_vec() } else { c.sizes.clone() };
    if s.len() != want || s.contains(&0) {
        return Err(usage(format!("--sizes needs {want} positive numbers")));
    }
    Ok(s)
}

fn gen(kind: GenKind, c: &Common) -> Run {
    if !(0.0..=1.0).contains(&c.density) {
        return Err(usage("--density must lie in [0, 1]"));
    }
    let lattice = || -> Result<FiniteLattice, CliError> {
        Ok(lattice_arg(c.lattice.as_deref().unwrap_or("chain:3"))?.0)
    };
    let spaces = |s: &[usize]| {
        (
            FiniteSpace::numbered("x", s[0]),
            FiniteSpace::numbered("y", s[1]),
        )
    };
    let small = |s: &[usize]| {
        if s.iter().any(|&n| n > 5) {
            Err(usage("generated spaces are limited to 5 points"))
        } else {
            Ok(())
        }
    };
    let value = match kind {
        GenKind::Crisp => {
            let s = sizes(c, 2, &[2, 2])?;
            small(&s)?;
            let (x, y) = spaces(&s);
            crisp_to_json(&random_rep(&x, &y, c.seed, c.density))
        }
        GenKind::Fuzzy => {
            let s = sizes(c, 2, &[2, 2])?;
            small(&s)?;
            let (x, y) = spaces(&s);
            fuzzy_to_json(&random_fuzzy_rep(&x, &y, &lattice()?, c.seed, c.density))
        }
        GenKind::Capacity => {
            let s = sizes(c, 1, &[2])?;
            small(&s)?;
            let y = FiniteSpace::numbered("y", s[0]);
            let mut rng = trial_rng(c.seed, 0);
            capacity_to_json(&random_capacity_with(&mut rng, &y, &lattice()?, c.density))
        }
        GenKind::Identity => {
            let s = sizes(c, 1, &[2])?;
            small(&s)?;
            crisp_to_json(&CrispAmbRep::identity(&FiniteSpace::numbered("x", s[0])))
        }
        GenKind::Top | GenKind::Bottom => {
            let s = sizes(c, 2, &[2, 2])?;
            small(&s)?;
            let (x, y) = spaces(&s);
            crisp_to_json(&if matches!(kind, GenKind::Top) {
                CrispAmbRep::top(&x, &y)
            } else {
                CrispAmbRep::bottom(&x, &y)
            })
        }
        GenKind::Projection | GenKind::Translation => {
            let grid = grid_of(c)?;
            if grid.width * grid.height > 5 {
                return Err(usage("grids are limited to 5 cells"));
            }
            if matches!(kind, GenKind::Projection) {
                crisp_to_json(&projection_rep(&grid))
            } else {
                let chain = match &c.lattice {
                    Some(l) => lattice_arg(l)?.0,
                    None => FiniteLattice::chain(grid.radius() + 1),
                };
                fuzzy_to_json(&translation_rep(&grid, &chain)?)
            }
        }
    };
    done(value)
}

/// `--sizes W,H` for a full grid or `W,H,OX,OY,IW,IH` for a sub-window.
fn grid_of(c: &Common) -> Result<GridWindow, CliError> {
    Ok(match c.sizes.as_slice() {
        [] => GridWindow::full(2, 2)?,
        &[w, h] => GridWindow::full(w, h)?,
        &[w, h, ox, oy, iw, ih] => GridWindow::new(w, h, (ox, oy), (iw, ih))?,
        _ => return Err(usage("grid --sizes takes W,H or W,H,OX,OY,IW,IH")),
    })
}

fn settings(c: &Common) -> Result<Vec<FuzzySetting>, CliError> {
    let Some(spec) = c.lattice.as_deref() else {
        return Ok(vec![
            FuzzySetting::standard(FiniteLattice::chain(3)),
            FuzzySetting::standard(FiniteLattice::boolean_square()),
        ]);
    };
    let (lattice, declared) = lattice_arg(spec)?;
    let mut setting = FuzzySetting::standard(lattice.clone());
    let extra = match &c.tnorm {
        Some(t) => Some((t.clone(), tnorm_arg(t, &lattice)?)),
        None => declared.map(|t| ("declared".to_string(), t)),
    };
    if let Some((name, t)) = extra {
        if !setting.tnorms.iter().any(|(_, u)| *u == t) {
            setting.tnorms.push((name, t));
        }
    }
    Ok(vec![setting])
}

fn laws_verb(suite: Suite, c: &Common) -> Run {
    let s = sizes(c, 3, &[2, 2, 2])?;
    if s.iter().any(|&n| n > 4) {
        return Err(usage("law suites are limited to 4-point spaces"));
    }
    let cfg = Config::new(&s, c.trials.unwrap_or(200), c.seed, c.exhaustive)?;
    let report = match suite {
        Suite::Crisp => laws::crisp_suite(&cfg)?,
        Suite::Fuzzy | Suite::Oracle => {
            if c.exhaustive {
                return Err(usage("--exhaustive applies to the crisp suite only"));
            }
            if s.iter().any(|&n| n > 3) {
                return Err(usage("fuzzy and oracle suites are limited to 3-point spaces"));
            }
            let settings = settings(c)?;
            match suite {
                Suite::Fuzzy => laws::fuzzy_suite(&cfg, &settings),
                _ => laws::oracle_suite(&cfg, &settings),
            }
        }
    };
    let code = match report.verdict {
        Verdict::Verified => EXIT_OK,
        Verdict::Counterexample => EXIT_VIOLATION,
    };
    let summary = report.summary();
    Ok((code, serde_json::to_value(report).expect("serializable"), summary))
}

fn search(law: SearchLawArg, c: &Common) -> Run {
    let s = sizes(c, 3, &[2, 2, 2])?;
    if s.iter().any(|&n| n > 4) {
        return Err(usage("searches are limited to 4-point spaces"));
    }
    let law = match law {
        SearchLawArg::Modular => SearchLaw::Modular,
        SearchLawArg::MeetDistributivity => SearchLaw::MeetDistributivity,
    };
    let cfg = Config::new(&s, c.trials.unwrap_or(1000), c.seed, c.exhaustive)?;
    let report = laws::search(law, &cfg)?;
    let code = if report.witness.is_some() { EXIT_VIOLATION } else { EXIT_OK };
    let summary = format!(
        "search {}: {} after {} inputs\n",
        law.name(),
        report.verdict,
        report.checked
    );
    Ok((code, serde_json::to_value(report).expect("serializable"), summary))
}
