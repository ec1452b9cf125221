//! The `sperkit` command line: argument parsing, input loading, and the
//! JSON envelope `{"status", "result", "diagnostics"}` printed for every
//! invocation.
//!
//! Section inputs marked `"validated": true` are trusted; others are
//! validated when loaded.
//!
//! Exit codes: 0 success (a false answer is still a success), 1 input could
//! not be read, 2 parse or usage error, 3 precondition violation, 4 resource
//! limit.

pub mod formats;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sperkit_core::decide::{decide_sentence, decide_with_params, eliminate, qe, DecideError, Limits};
use sperkit_core::exactnum::{isolate_roots, RealAlg};
use sperkit_core::formula::{parse_open, parse_upoly, Formula, FormulaError};
use sperkit_core::sections::{
    extend_by_zero, sec_add, sec_inv, sec_mul, sec_neg, sec_sqrt, section_from_poly, SectionDesc, SectionError,
};
use sperkit_core::sper::{from_formula, project, CellSet, SperPoint1};

use formats::*;

/// Environment variable overriding the limits as `degree,atoms,depth`; an
/// empty field keeps the default.
pub const LIMITS_ENV: &str = "SPERKIT_LIMITS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Limit(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Precondition(_) => "precondition",
            CliError::Limit(_) => "limit",
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<DecideError> for CliError {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::ResourceLimit(_) => CliError::Limit(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<SectionError> for CliError {
    fn from(e: SectionError) -> Self {
        match e {
            SectionError::Decide(d) => d.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "sperkit", version, about = "Exact real algebra: roots, decision, quantifier elimination, cells, sections")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum total degree of an atom.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Maximum number of atoms in a formula.
    #[arg(long, global = true)]
    max_atoms: Option<usize>,
    /// Maximum case-split depth during elimination.
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Sets are given as a formula in one variable, inline JSON, or `@file`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Isolate the real roots of a polynomial in one variable.
    Roots {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Decide a sentence, or a formula at the values given with --at.
    Decide {
        #[arg(allow_hyphen_values = true)]
        formula: String,
        /// Value of a free variable, as NAME=RATIONAL or NAME={json}.
        #[arg(long = "at", value_name = "NAME=VALUE")]
        at: Vec<String>,
    },
    /// Eliminate quantifiers, or only VAR when given.
    Qe {
        #[arg(allow_hyphen_values = true)]
        formula: String,
        #[arg(long)]
        var: Option<String>,
    },
    /// The set defined by a formula in one variable, in cell form.
    Cells {
        #[arg(allow_hyphen_values = true)]
        formula: String,
    },
    /// Boolean operations and comparisons of sets.
    Setop {
        #[arg(value_enum)]
        op: SetOp,
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: Option<String>,
    },
    /// Closure of a set.
    Closure {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Membership of a point: a real number, {"left_cut": ...},
    /// {"right_cut": ...}, "-inf" or "+inf".
    Contains {
        #[arg(allow_hyphen_values = true)]
        set: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Projection of a set in two variables onto one of them.
    Project {
        #[arg(allow_hyphen_values = true)]
        formula: String,
        /// The variable kept.
        #[arg(long, default_value = "x")]
        onto: String,
        /// The variable projected away; defaults to the other free variable.
        #[arg(long)]
        along: Option<String>,
    },
    /// Operations on sections given as JSON files (or `-` for standard input).
    Section {
        /// Validate every input section again, even those marked as
        /// validated. Unmarked inputs are always validated.
        #[arg(long)]
        revalidate: bool,
        #[command(subcommand)]
        op: SectionOp,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SetOp {
    Union,
    Intersect,
    Difference,
    Complement,
    Subset,
    Equal,
}

#[derive(Subcommand, Debug)]
enum SectionOp {
    /// Decide whether the formula defines one value at every point.
    Validate { section: String },
    /// Value at a closed point of the domain.
    Eval {
        section: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    Add { a: String, b: String },
    Mul { a: String, b: String },
    Neg { a: String },
    Inv { a: String },
    Sqrt { a: String },
    /// Extend by zero to a larger domain.
    Extend {
        section: String,
        #[arg(long)]
        domain: String,
    },
    /// Restrict to the intersection with a set.
    Restrict {
        section: String,
        #[arg(long)]
        domain: String,
    },
    /// Decide whether the section is continuous where its domain allows.
    Compat { section: String },
    /// The section of a polynomial in x, on the whole line by default.
    FromPoly {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        domain: Option<String>,
    },
}

/// What a command produced.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn new(result: Value, text: impl Into<String>) -> Self {
        Outcome {
            result,
            text: text.into(),
            diagnostics: Vec::new(),
        }
    }
}

/// Everything an invocation writes.
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn parse_limits(text: Option<&str>) -> Result<Limits, CliError> {
    let mut lim = Limits::default();
    let Some(text) = text else {
        return Ok(lim);
    };
    let fields: Vec<&str> = text.split(',').map(str::trim).collect();
    if fields.len() != 3 {
        return Err(CliError::Parse(format!(
            "{LIMITS_ENV} must be `degree,atoms,depth`, got `{text}`"
        )));
    }
    let slots = [&mut lim.max_degree, &mut lim.max_atoms, &mut lim.max_depth];
    for (f, slot) in fields.into_iter().zip(slots) {
        if !f.is_empty() {
            *slot = f
                .parse()
                .map_err(|_| CliError::Parse(format!("{LIMITS_ENV}: `{f}` is not a count")))?;
        }
    }
    Ok(lim)
}

/// Runs one invocation. `env_limits` is the value of [`LIMITS_ENV`].
pub fn run<I, T>(args: I, env_limits: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let msg = e.to_string().lines().next().unwrap_or_default().to_string();
            return finish(Format::Json, Err(CliError::Parse(msg)));
        }
    };
    let outcome = parse_limits(env_limits).and_then(|mut lim| {
        if let Some(d) = cli.max_degree {
            lim.max_degree = d;
        }
        if let Some(a) = cli.max_atoms {
            lim.max_atoms = a;
        }
        if let Some(k) = cli.max_depth {
            lim.max_depth = k;
        }
        execute(cli.command, &lim)
    });
    finish(cli.format, outcome)
}

fn finish(format: Format, outcome: Result<Outcome, CliError>) -> Output {
    match (format, outcome) {
        (Format::Json, Ok(o)) => Output {
            code: 0,
            stdout: envelope("ok", o.result, o.diagnostics),
            stderr: String::new(),
        },
        (Format::Json, Err(e)) => Output {
            code: e.exit_code(),
            stdout: envelope("error", json!({ "kind": e.kind(), "message": e.to_string() }), Vec::new()),
            stderr: String::new(),
        },
        (Format::Text, Ok(o)) => Output {
            code: 0,
            stdout: format!("{}\n", o.text),
            stderr: o.diagnostics.iter().map(|d| format!("note: {d}\n")).collect(),
        },
        (Format::Text, Err(e)) => Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error ({}): {e}\n", e.kind()),
        },
    }
}

fn envelope(status: &str, result: Value, diagnostics: Vec<String>) -> String {
    let v = json!({ "status": status, "result": result, "diagnostics": diagnostics });
    format!("{v}\n")
}

fn read_source(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))
    }
}

fn parse_json(text: &str, what: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

/// Inline JSON when it starts with `{`, a JSON file after `@`.
fn json_arg(arg: &str, what: &str) -> Result<Option<Value>, CliError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        parse_json(t, what).map(Some)
    } else if let Some(path) = t.strip_prefix('@') {
        parse_json(&read_source(path)?, what).map(Some)
    } else {
        Ok(None)
    }
}

fn load_set(arg: &str, lim: &Limits) -> Result<CellSet, CliError> {
    if let Some(v) = json_arg(arg, "set")? {
        return cellset_from_json(&v);
    }
    let phi = parse_open(arg)?;
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    let var = match free.as_slice() {
        [] => "x",
        [v] => v.as_str(),
        _ => {
            return Err(CliError::Precondition(format!(
                "a set formula has at most one free variable, found {}",
                free.join(", ")
            )))
        }
    };
    Ok(from_formula(&phi, var, lim)?)
}

fn load_point(arg: &str) -> Result<SperPoint1, CliError> {
    match json_arg(arg, "point")? {
        Some(v) => point_from_json(&v),
        None => point_from_json(&Value::String(arg.trim().to_string())),
    }
}

fn load_section(arg: &str, revalidate: bool, lim: &Limits) -> Result<SectionDesc, CliError> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read_source(arg)? };
    let v = parse_json(&text, "section")?;
    let mut s = section_from_json(&v, !revalidate)?;
    if !s.is_validated() && !s.validate(lim)? {
        return Err(CliError::Precondition(format!("{arg}: formula does not define a section on its domain")));
    }
    Ok(s)
}

fn set_outcome(s: &CellSet) -> Outcome {
    Outcome::new(cellset_to_json(s), s.to_string())
}

fn bool_outcome(b: bool) -> Outcome {
    Outcome::new(json!(b), b.to_string())
}

fn section_outcome(s: &SectionDesc) -> Outcome {
    let v = section_to_json(s);
    let text = serde_json::to_string_pretty(&v).expect("plain JSON");
    Outcome::new(v, text)
}

fn execute(cmd: Command, lim: &Limits) -> Result<Outcome, CliError> {
    match cmd {
        Command::Roots { poly } => {
            let p = parse_upoly(&poly)?;
            let roots = isolate_roots(&p).map_err(|e| CliError::Precondition(e.to_string()))?;
            let text = roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Outcome::new(Value::Array(roots.iter().map(real_to_json).collect()), text))
        }
        Command::Decide { formula, at } => {
            let phi = parse_open(&formula)?;
            if at.is_empty() {
                return Ok(bool_outcome(decide_sentence(&phi, lim)?));
            }
            let mut env = BTreeMap::new();
            for a in &at {
                let (name, value) = a
                    .split_once('=')
                    .ok_or_else(|| CliError::Parse(format!("--at expects NAME=VALUE, got `{a}`")))?;
                let value = match json_arg(value, "value")? {
                    Some(v) => real_from_json(&v)?,
                    None => RealAlg::from_rat(parse_rat(value)?),
                };
                env.insert(name.trim().to_string(), value);
            }
            Ok(bool_outcome(decide_with_params(&phi, &env, lim)?))
        }
        Command::Qe { formula, var } => {
            let phi = parse_open(&formula)?;
            let psi = match var {
                Some(v) => eliminate(&phi, &v, lim)?,
                None => qe(&phi, lim)?,
            };
            let text = psi.to_string();
            Ok(Outcome::new(json!(text), text))
        }
        Command::Cells { formula } => Ok(set_outcome(&load_set(&formula, lim)?)),
        Command::Setop { op, lhs, rhs } => {
            let a = load_set(&lhs, lim)?;
            if op == SetOp::Complement {
                if rhs.is_some() {
                    return Err(CliError::Parse("complement takes one set".into()));
                }
                return Ok(set_outcome(&a.complement()));
            }
            let rhs = rhs.ok_or_else(|| CliError::Parse(format!("{op:?} takes two sets").to_lowercase()))?;
            let b = load_set(&rhs, lim)?;
            Ok(match op {
                SetOp::Union => set_outcome(&a.union(&b)),
                SetOp::Intersect => set_outcome(&a.intersect(&b)),
                SetOp::Difference => set_outcome(&a.difference(&b)),
                SetOp::Subset => bool_outcome(a.is_subset(&b)),
                SetOp::Equal => bool_outcome(a == b),
                SetOp::Complement => unreachable!(),
            })
        }
        Command::Closure { set } => Ok(set_outcome(&load_set(&set, lim)?.closure())),
        Command::Contains { set, point } => {
            let s = load_set(&set, lim)?;
            let p = load_point(&point)?;
            Ok(bool_outcome(s.contains(&p)))
        }
        Command::Project { formula, onto, along } => {
            let phi = parse_open(&formula)?;
            let along = match along {
                Some(a) => a,
                None => other_variable(&phi, &onto)?,
            };
            Ok(set_outcome(&project(&phi, &onto, &along, lim)?))
        }
        Command::Section { revalidate, op } => section(op, revalidate, lim),
    }
}

fn other_variable(phi: &Formula, onto: &str) -> Result<String, CliError> {
    let others: Vec<String> = phi.free_vars().into_iter().filter(|v| v != onto).collect();
    match others.as_slice() {
        [v] => Ok(v.clone()),
        [] => Ok(String::from("_")),
        _ => Err(CliError::Precondition(format!(
            "cannot tell which variable to project away among {}; use --along",
            others.join(", ")
        ))),
    }
}

fn section(op: SectionOp, revalidate: bool, lim: &Limits) -> Result<Outcome, CliError> {
    let load = |arg: &str| load_section(arg, revalidate, lim);
    match op {
        SectionOp::Validate { section } => {
            let text = if section.trim_start().starts_with('{') { section.clone() } else { read_source(&section)? };
            let mut s = section_from_json(&parse_json(&text, "section")?, false)?;
            let ok = s.validate(lim)?;
            let mut o = Outcome::new(json!({ "valid": ok, "section": section_to_json(&s) }), ok.to_string());
            if !ok {
                o.diagnostics
                    .push("some point of the domain has no value or more than one".to_string());
            }
            Ok(o)
        }
        SectionOp::Eval { section, point } => {
            let s = load(&section)?;
            let a = match load_point(&point)? {
                SperPoint1::Closed(a) => a,
                p => return Err(CliError::Precondition(format!("sections are evaluated at closed points, not {p}"))),
            };
            let v = s.eval_at_closed(&a, lim)?;
            Ok(Outcome::new(real_to_json(&v), v.to_string()))
        }
        SectionOp::Add { a, b } => Ok(section_outcome(&sec_add(&load(&a)?, &load(&b)?)?)),
        SectionOp::Mul { a, b } => Ok(section_outcome(&sec_mul(&load(&a)?, &load(&b)?)?)),
        SectionOp::Neg { a } => Ok(section_outcome(&sec_neg(&load(&a)?)?)),
        SectionOp::Inv { a } => Ok(section_outcome(&sec_inv(&load(&a)?, lim)?)),
        SectionOp::Sqrt { a } => Ok(section_outcome(&sec_sqrt(&load(&a)?, lim)?)),
        SectionOp::Extend { section, domain } => {
            let k = load_set(&domain, lim)?;
            Ok(section_outcome(&extend_by_zero(&load(&section)?, &k)?))
        }
        SectionOp::Restrict { section, domain } => {
            let k = load_set(&domain, lim)?;
            Ok(section_outcome(&load(&section)?.restrict(&k)))
        }
        SectionOp::Compat { section } => Ok(bool_outcome(load(&section)?.is_compatible(lim)?)),
        SectionOp::FromPoly { poly, domain } => {
            let p = parse_upoly(&poly)?;
            let k = match domain {
                Some(d) => load_set(&d, lim)?,
                None => CellSet::full(),
            };
            Ok(section_outcome(&section_from_poly(&p, k)))
        }
    }
}
