//! Command-line front end: argument parsing, dispatch and text/JSON rendering.
//!
//! Every subcommand reads one quiver document (see [`crate::input`]). Text
//! output is line oriented and byte stable. JSON output is a single object
//! tagged with [`SCHEMA`] and carries the same numbers, with rationals written
//! as `"p/q"` strings.
//!
//! Exit codes: `0` positive, `1` negative, `2` inconclusive, `3` unreadable or
//! malformed input, `4` a mathematical precondition fails, `5` an internal
//! computation error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::betti::{hochschild_zero, picard_rank, poincare_polynomial};
use crate::bundle::BundleExpression;
use crate::catalog::Instance;
use crate::chow::HrrContext;
use crate::error::Error;
use crate::hn::hn_types;
use crate::input::load_instance;
use crate::quiver::{check_assumptions, fano_index, moduli_dimension, Linearisation, Rational};
use crate::sod::{Answer, Question, QuestionVerdict, SodContext, Status};
use crate::teleman::{TelemanContext, WeightMultiset};

pub const SCHEMA: &str = "quiver-sod/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuestionArg {
    A,
    B,
    C,
}

impl From<QuestionArg> for Question {
    fn from(q: QuestionArg) -> Self {
        match q {
            QuestionArg::A => Question::A,
            QuestionArg::B => Question::B,
            QuestionArg::C => Question::C,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check acyclicity, coprimality and strong ample stability.
    CheckAssumptions,
    /// List the Harder–Narasimhan types of d.
    HnTypes,
    /// Weight table of the nontrivial strata.
    TelemanTable,
    /// Hodge column and HH₀.
    Hodge,
    /// Graded basis sizes of the Chow ring.
    ChowBasis,
    /// Euler characteristic of a bundle expression.
    EulerChar {
        /// e.g. "U1^ * U2 * O(-1H)"
        #[arg(long)]
        expr: String,
    },
    /// Vanishing verdicts and answers to the collection questions.
    VerifySod {
        /// Question whose answer sets the exit code.
        #[arg(long, value_enum, default_value = "a")]
        question: QuestionArg,
        /// Further linearisations to try (`;`-separated lists). The best
        /// answer over all candidates sets the exit code.
        #[arg(long)]
        scan: Option<String>,
    },
    /// `t*` per stratum and the strong exceptionality of the `U`-only collection.
    TheoremD,
}

#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(name = "quiver-sod", version, about = "Vanishing checks on quiver moduli")]
pub struct CommandConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Quiver document (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Overrides the document's linearisation, e.g. `3,-2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub linearisation: Option<String>,
    /// Overrides the document's stability parameter, e.g. `12,-9`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,
}

/// Result of one run: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CommandConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 3 } else { 0 };
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            Outcome { code, stdout, stderr }
        }
    }
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Length { .. } | Error::Expression(_) => 3,
        Error::Assumption(_) | Error::Degenerate(_) | Error::Precondition(_) => 4,
        Error::Presentation(_) | Error::NonIntegral(_) => 5,
    }
}

pub fn run(config: &CommandConfig) -> Outcome {
    match execute(config) {
        Ok((code, text, value)) => {
            let stdout = match config.format {
                Format::Text => text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialise");
                    s.push('\n');
                    s
                }
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: error_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn parse_list(text: &str, field: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(str::trim)
        .map(|t| t.parse::<i64>().map_err(|_| Error::Input(format!("--{field}: cannot parse '{t}' as an integer"))))
        .collect()
}

fn load(config: &CommandConfig) -> Result<Instance, Error> {
    let path = config.input.as_ref().ok_or_else(|| Error::Input("--input is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("--input {}: {e}", path.display())))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let theta = config.theta.as_deref().map(|t| parse_list(t, "theta")).transpose()?;
    let lin = config.linearisation.as_deref().map(|t| parse_list(t, "linearisation")).transpose()?;
    load_instance(&text, &name, theta, lin)
}

type Rendered = (i32, String, Value);

fn execute(config: &CommandConfig) -> Result<Rendered, Error> {
    let inst = load(config)?;
    let (code, text, body) = match &config.command {
        Command::CheckAssumptions => check(&inst)?,
        Command::HnTypes => hn(&inst)?,
        Command::TelemanTable => teleman_table(&inst)?,
        Command::Hodge => hodge(&inst)?,
        Command::ChowBasis => chow_basis(&inst)?,
        Command::EulerChar { expr } => euler_char(&inst, expr)?,
        Command::VerifySod { question, scan } => verify_sod(&inst, (*question).into(), scan.as_deref())?,
        Command::TheoremD => theorem_d(&inst)?,
    };
    let mut value = json!({
        "schema": SCHEMA,
        "instance": {
            "name": inst.name,
            "d": inst.d.entries(),
            "theta": inst.theta.entries(),
            "linearisation": inst.linearisation.entries(),
        },
    });
    if let (Value::Object(out), Value::Object(extra)) = (&mut value, body) {
        out.extend(extra);
    }
    Ok((code, text, value))
}

fn rational(r: &Rational) -> String {
    r.to_string()
}

fn support(w: &WeightMultiset) -> String {
    let parts: Vec<String> = w.support().iter().map(rational).collect();
    format!("{{{}}}", parts.join(", "))
}

fn multiplicities(w: &WeightMultiset) -> Value {
    Value::Array(w.entries().map(|(k, m)| json!([rational(k), m])).collect())
}

fn check(inst: &Instance) -> Result<Rendered, Error> {
    let r = check_assumptions(&inst.quiver, &inst.d, &inst.theta)?;
    let one_based = |v: &[Vec<i64>]| v.iter().map(|w| format!("{w:?}")).collect::<Vec<_>>().join(" ");
    let mut text = String::new();
    let cycle: Vec<usize> = r.witnesses.cycle.iter().map(|v| v + 1).collect();
    writeln!(text, "acyclic: {}{}", r.acyclic, if r.acyclic { String::new() } else { format!(" cycle {cycle:?}") }).unwrap();
    writeln!(text, "coprime: {} {}", r.coprime, one_based(&r.witnesses.coprime)).unwrap();
    writeln!(text, "strongly amply stable: {} {}", r.strongly_amply_stable, one_based(&r.witnesses.strongly_amply_stable))
        .unwrap();
    let text = text.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n";
    let code = if r.all_hold() { 0 } else { 1 };
    Ok((
        code,
        text,
        json!({
            "acyclic": r.acyclic,
            "coprime": r.coprime,
            "strongly_amply_stable": r.strongly_amply_stable,
            "witnesses": { "cycle": cycle, "coprime": r.witnesses.coprime,
                           "strongly_amply_stable": r.witnesses.strongly_amply_stable },
        }),
    ))
}

fn hn(inst: &Instance) -> Result<Rendered, Error> {
    let types = hn_types(&inst.quiver, &inst.d, &inst.theta)?;
    let mut text = String::new();
    for t in &types {
        writeln!(text, "{t}").unwrap();
    }
    Ok((0, text, json!({ "hn_types": types })))
}

fn teleman_table(inst: &Instance) -> Result<Rendered, Error> {
    let ctx = TelemanContext::new(&inst.quiver, &inst.d, &inst.theta)?;
    let rows = ctx.table(&inst.linearisation);
    let mut text = String::new();
    let mut json_rows = Vec::new();
    for row in &rows {
        writeln!(
            text,
            "{} | {} | {} | {} | {}",
            row.hn_type,
            support(&row.hom_weights),
            support(&row.universal_weights),
            rational(&row.h_weight),
            rational(&row.eta)
        )
        .unwrap();
        json_rows.push(json!({
            "hn_type": row.hn_type,
            "c": row.c.to_string(),
            "hom_weights": row.hom_weights.support().iter().map(rational).collect::<Vec<_>>(),
            "universal_weights": row.universal_weights.support().iter().map(rational).collect::<Vec<_>>(),
            "h_weight": rational(&row.h_weight),
            "eta": rational(&row.eta),
            "multiplicities": {
                "hom": multiplicities(&row.hom_weights),
                "universal": multiplicities(&row.universal_weights),
            },
        }));
    }
    Ok((0, text, json!({ "index": ctx.index(), "rows": json_rows })))
}

fn hodge(inst: &Instance) -> Result<Rendered, Error> {
    let p = poincare_polynomial(&inst.quiver, &inst.d, &inst.theta)?;
    let hh0 = hochschild_zero(&inst.quiver, &inst.d, &inst.theta)?;
    let pic = picard_rank(&inst.quiver, &inst.d, &inst.theta)?;
    let column: Vec<String> = p.coefficients().iter().map(u64::to_string).collect();
    let text = format!("{} | HH0 = {hh0}\n", column.join(" "));
    Ok((0, text, json!({ "hodge_column": p.coefficients(), "hh0": hh0, "picard_rank": pic })))
}

fn chow_basis(inst: &Instance) -> Result<Rendered, Error> {
    let ctx = HrrContext::new(&inst.quiver, &inst.d, &inst.theta, &inst.linearisation)?;
    let dims = ctx.graded_dimensions()?;
    let line: Vec<String> = dims.iter().map(usize::to_string).collect();
    let total: usize = dims.iter().sum();
    let backend = format!("{:?}", ctx.backend()).to_lowercase();
    let text = format!("{} | total = {total}\n", line.join(" "));
    Ok((0, text, json!({ "graded_dimensions": dims, "total": total, "backend": backend })))
}

fn euler_char(inst: &Instance, expr: &str) -> Result<Rendered, Error> {
    let f = BundleExpression::parse(expr, inst.quiver.vertex_count())?;
    let ctx = HrrContext::new(&inst.quiver, &inst.d, &inst.theta, &inst.linearisation)?;
    let chi = ctx.euler_characteristic(&f)?;
    Ok((0, format!("chi({f}) = {chi}\n"), json!({ "bundle": f.to_string(), "chi": chi.to_string() })))
}

fn verdict_table(text: &mut String, v: &QuestionVerdict) {
    writeln!(
        text,
        "question {}: {} (collection length {}, HH0 = {}{})",
        v.question,
        v.answer,
        v.predicted_collection_length,
        v.hh0,
        if v.hochschild_obstruction { ", Hochschild obstruction" } else { "" }
    )
    .unwrap();
    if v.by_theorem_d_criterion {
        writeln!(text, "  decided by min t* = r - 1").unwrap();
    }
    for req in &v.requirements {
        let vv = &req.verdict;
        let evidence: Vec<String> = vv.evidence.iter().map(|e| e.to_string()).collect();
        let chi = vv.chi.as_ref().map(|c| format!(" chi = {c}")).unwrap_or_default();
        writeln!(
            text,
            "  {} {}: {} [H^0 {}, mid {}, top {}] {}{}",
            vv.bundle,
            req.range,
            req.status(),
            vv.h0,
            vv.middle,
            vv.top,
            evidence.join(","),
            chi
        )
        .unwrap();
    }
}

fn verdict_json(v: &QuestionVerdict) -> Value {
    let status = |s: Status| s.to_string();
    json!({
        "question": v.question.to_string(),
        "answer": v.answer.to_string(),
        "collection": v.collection,
        "predicted_collection_length": v.predicted_collection_length,
        "hh0": v.hh0,
        "hochschild_obstruction": v.hochschild_obstruction,
        "by_theorem_d_criterion": v.by_theorem_d_criterion,
        "requirements": v.requirements.iter().map(|r| json!({
            "bundle": r.verdict.bundle.to_string(),
            "range": r.range.to_string(),
            "status": status(r.status()),
            "h0": status(r.verdict.h0),
            "middle": status(r.verdict.middle),
            "top": status(r.verdict.top),
            "evidence": r.verdict.evidence.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "chi": r.verdict.chi.as_ref().map(|c| c.to_string()),
        })).collect::<Vec<_>>(),
    })
}

fn rank(a: Answer) -> u8 {
    match a {
        Answer::Positive => 2,
        Answer::Inconclusive => 1,
        Answer::Negative => 0,
    }
}

fn verify_sod(inst: &Instance, question: Question, scan: Option<&str>) -> Result<Rendered, Error> {
    let mut candidates = vec![inst.linearisation.clone()];
    if let Some(list) = scan {
        for item in list.split(';').filter(|s| !s.trim().is_empty()) {
            let a = Linearisation::new(parse_list(item, "scan")?, &inst.d)?;
            if !candidates.contains(&a) {
                candidates.push(a);
            }
        }
    }
    let mut text = String::new();
    let mut runs = Vec::new();
    let mut best: Option<Answer> = None;
    for a in &candidates {
        let mut inst = inst.clone();
        inst.linearisation = a.clone();
        let ctx = SodContext::from_instance(&inst)?;
        writeln!(text, "linearisation {a}, index {}, dimension {}", ctx.index(), ctx.dimension()).unwrap();
        let mut verdicts = Vec::new();
        for q in [Question::A, Question::B, Question::C] {
            let v = ctx.question(q)?;
            verdict_table(&mut text, &v);
            if q == question && best.is_none_or(|b| rank(v.answer) > rank(b)) {
                best = Some(v.answer);
            }
            verdicts.push(verdict_json(&v));
        }
        runs.push(json!({ "linearisation": a.entries(), "index": ctx.index(), "questions": verdicts }));
    }
    let answer = best.expect("at least one candidate");
    writeln!(text, "answer to question {question}: {answer}").unwrap();
    Ok((
        answer.exit_code(),
        text,
        json!({ "question": question.to_string(), "answer": answer.to_string(), "runs": runs }),
    ))
}

fn theorem_d(inst: &Instance) -> Result<Rendered, Error> {
    let ctx = SodContext::from_instance(inst)?;
    let tstar = ctx.teleman().t_star()?;
    let mut text = String::new();
    for (t, value) in &tstar.per_type {
        writeln!(text, "{t} | t* = {value}").unwrap();
    }
    let criterion = tstar.min == ctx.index() - 1;
    writeln!(text, "min t* = {}, r - 1 = {}, criterion {}", tstar.min, ctx.index() - 1, criterion).unwrap();
    let v = ctx.theorem_d()?;
    verdict_table(&mut text, &v);
    let per_type: Vec<Value> = tstar.per_type.iter().map(|(t, s)| json!({ "hn_type": t, "t_star": s })).collect();
    Ok((
        v.answer.exit_code(),
        text,
        json!({
            "index": ctx.index(),
            "dimension": moduli_dimension(&inst.quiver, &inst.d)?,
            "fano_index": fano_index(&inst.quiver, &inst.d)?,
            "t_star": per_type,
            "min_t_star": tstar.min,
            "criterion": criterion,
            "verdict": verdict_json(&v),
        }),
    ))
}
