//! Text formats, reports and the `liking` command line.
//!
//! Digraph files:
//!
//! ```text
//! # comments run to end of line
//! digraph 3
//! 0 1
//! 1 2
//! ```
//!
//! Design files list one block per line after a `design <v> <b>` header.
//! Set-family files (for `sdr`) use a `family <ground> <count>` header and
//! one set per line, `-` for the empty set. Labels are 0-based everywhere.
//!
//! Exit codes: 0 when the property holds or the command succeeded, 1 when
//! it fails (the report carries a witness), 2 for usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::construction::{
    design_to_digraph_with, design_to_digraphs_all_sdrs, digraph_to_design, ConstructOptions, Construction,
};
use crate::design::{complement_design, design_from_difference_set, verify_design, Design};
use crate::digraph::Digraph;
use crate::liking::{
    all_violations, classify_21, counting_identity_check, degree_bounds_check, eulerian_check, is_liking,
    is_two_way_liking, Classification21, LikingError, LikingParams, Verdict,
};
use crate::matching::{block_complement_family, sdr, SdrOutcome, SetFamily};
use crate::search::{
    canonical_form, enumerate_liking, theorem_audit, AuditVerdict, SearchConfig, SearchMode, SearchSpec,
    DEFAULT_AUDIT_MAX_ORDER, DEFAULT_NODE_BUDGET, MAX_ORDER,
};

/// A malformed input file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn parse_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-fatal findings while parsing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

/// Lines with comments stripped, numbered from 1, blank ones dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}")))
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    fields: usize,
) -> Result<Vec<usize>, ParseError> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| parse_err(1, format!("missing `{keyword}` header")))?;
    let mut toks = text.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(parse_err(line, format!("expected `{keyword}` header")));
    }
    let values = toks.map(|t| parse_usize(line, t)).collect::<Result<Vec<_>, _>>()?;
    if values.len() != fields {
        return Err(parse_err(line, format!("`{keyword}` header takes {fields} number(s)")));
    }
    Ok(values)
}

/// Parses a digraph file; duplicate arcs collapse with a warning.
pub fn parse_digraph(text: &str) -> Result<(Digraph, Vec<ParseWarning>), ParseError> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines, "digraph", 1)?[0];
    if n == 0 {
        return Err(parse_err(1, "a digraph needs at least one vertex"));
    }
    let mut seen = std::collections::HashSet::new();
    let mut arcs = Vec::new();
    let mut warnings = Vec::new();
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let [u, v] = toks[..] else {
            return Err(parse_err(line, "expected an arc `u v`"));
        };
        let (u, v) = (parse_usize(line, u)?, parse_usize(line, v)?);
        if u == v {
            return Err(parse_err(line, format!("loop ({u},{u})")));
        }
        if u >= n || v >= n {
            return Err(parse_err(line, format!("label out of range 0..{n} in ({u},{v})")));
        }
        if !seen.insert((u, v)) {
            warnings.push(ParseWarning {
                line,
                message: format!("duplicate arc ({u},{v}) collapsed"),
            });
            continue;
        }
        arcs.push((u, v));
    }
    let d = Digraph::new(n, &arcs).map_err(|e| parse_err(0, e.to_string()))?;
    Ok((d, warnings))
}

/// Canonical text: header then arcs in sorted order.
pub fn serialize_digraph(d: &Digraph) -> String {
    let mut s = format!("digraph {}\n", d.order());
    for (u, v) in d.arcs() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parses a design file. Blocks keep file order; a blank line between
/// blocks is an empty block and is rejected.
pub fn parse_design(text: &str) -> Result<Design, ParseError> {
    let raw: Vec<(usize, &str, bool)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            let body = l.split('#').next().unwrap_or("");
            (i + 1, body.trim(), l.trim_start().starts_with('#'))
        })
        .collect();
    let mut lines = raw.iter().filter(|(_, l, _)| !l.is_empty()).map(|&(n, l, _)| (n, l));
    let header = parse_header(&mut lines, "design", 2)?;
    let (v, b) = (header[0], header[1]);
    let header_line = raw
        .iter()
        .find(|(_, l, _)| !l.is_empty())
        .map(|r| r.0)
        .unwrap_or(1);
    let last_content = raw.iter().rev().find(|(_, l, _)| !l.is_empty()).map(|r| r.0).unwrap_or(0);
    let mut blocks = Vec::new();
    for &(line, text, comment) in raw.iter().filter(|r| r.0 > header_line && r.0 <= last_content) {
        if comment {
            continue;
        }
        if text.is_empty() {
            return Err(parse_err(line, "empty block"));
        }
        let mut block = Vec::new();
        for tok in text.split_whitespace() {
            let x = parse_usize(line, tok)?;
            if x >= v {
                return Err(parse_err(line, format!("variety {x} out of range 0..{v}")));
            }
            block.push(x);
        }
        blocks.push(block);
    }
    if blocks.len() != b {
        return Err(parse_err(header_line, format!("header declares {b} blocks, found {}", blocks.len())));
    }
    Design::new(v, blocks).map_err(|e| parse_err(header_line, e.to_string()))
}

pub fn serialize_design(d: &Design) -> String {
    let mut s = format!("design {} {}\n", d.varieties(), d.blocks().len());
    for block in d.blocks() {
        let labels: Vec<String> = block.iter().map(|x| x.to_string()).collect();
        s.push_str(&labels.join(" "));
        s.push('\n');
    }
    s
}

/// Parses a set-family file for the `sdr` command.
pub fn parse_family(text: &str) -> Result<SetFamily, ParseError> {
    let mut lines = content_lines(text);
    let header = parse_header(&mut lines, "family", 2)?;
    let (ground, count) = (header[0], header[1]);
    let mut sets = Vec::new();
    for (line, text) in lines {
        if text == "-" {
            sets.push(Vec::new());
            continue;
        }
        let set = text
            .split_whitespace()
            .map(|t| parse_usize(line, t))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&x) = set.iter().find(|&&x| x >= ground) {
            return Err(parse_err(line, format!("element {x} out of range 0..{ground}")));
        }
        sets.push(set);
    }
    if sets.len() != count {
        return Err(parse_err(1, format!("header declares {count} sets, found {}", sets.len())));
    }
    SetFamily::new(ground, sets).map_err(|e| parse_err(1, e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportVerdict {
    Ok,
    Fails,
    Error,
}

impl ReportVerdict {
    pub fn exit_code(self) -> i32 {
        match self {
            ReportVerdict::Ok => 0,
            ReportVerdict::Fails => 1,
            ReportVerdict::Error => 2,
        }
    }
}

/// What every subcommand produces, rendered as text or JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: ReportVerdict,
    pub exit_code: i32,
    pub summary: Vec<String>,
    pub witness: Value,
    pub payload: Value,
    /// File-format output (digraph, design or DOT text), if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub artifact: Option<String>,
}

impl Report {
    fn new(command: &str, verdict: ReportVerdict) -> Self {
        Report {
            command: command.to_string(),
            verdict,
            exit_code: verdict.exit_code(),
            summary: Vec::new(),
            witness: Value::Null,
            payload: json!({}),
            artifact: None,
        }
    }

    fn error(command: &str, message: impl std::fmt::Display) -> Self {
        let mut r = Report::new(command, ReportVerdict::Error);
        r.summary.push(format!("error: {message}"));
        r
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut s = String::new();
                for line in &self.summary {
                    s.push_str(line);
                    s.push('\n');
                }
                let verdict = match self.verdict {
                    ReportVerdict::Ok => "ok",
                    ReportVerdict::Fails => "fails",
                    ReportVerdict::Error => "error",
                };
                s.push_str(&format!("verdict: {verdict}\n"));
                if !self.witness.is_null() {
                    s.push_str(&format!("witness: {}\n", self.witness));
                }
                if let Some(a) = &self.artifact {
                    s.push_str(a);
                }
                s
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "liking", about = "Liking digraphs and symmetric block designs")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a property of a digraph file.
    Check(CheckArgs),
    /// Build a two-way (2,λ)-liking digraph from a symmetric design.
    Construct(ConstructArgs),
    /// Turn a diregular (2,λ)-liking digraph into a symmetric design.
    Convert(ConvertArgs),
    /// Generate, complement or verify a block design.
    Design(DesignArgs),
    /// System of distinct representatives or a Hall violator.
    Sdr(SdrArgs),
    /// Enumerate liking digraphs of one order.
    Search(SearchArgs),
    /// Run the theorem audits over a range of orders.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
#[group(id = "property", multiple = false)]
struct PropertyFlags {
    /// Require common in-neighbors too.
    #[arg(long)]
    two_way: bool,
    /// Order, minimum out-degree and common out-neighbor lower bounds.
    #[arg(long)]
    bounds: bool,
    /// d+(v) = d-(v) everywhere.
    #[arg(long)]
    eulerian: bool,
    /// Double-counting audit of the degree equation (λ ≥ t ≥ 2).
    #[arg(long)]
    counting_identity: bool,
    /// Fancy wheel or diregular classification of a (2,1)-liking digraph.
    #[arg(long = "classify-21")]
    classify_21: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    digraph: PathBuf,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    lambda: Option<usize>,
    #[command(flatten)]
    property: PropertyFlags,
    /// Report every violating subset instead of the first.
    #[arg(long)]
    all_violations: bool,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long, required_unless_present = "difference_set")]
    design: Option<PathBuf>,
    /// Inline cyclic design, e.g. `7:1,2,4`.
    #[arg(long, conflicts_with = "design")]
    difference_set: Option<String>,
    /// One digraph per SDR of the block complements (at most 8 blocks).
    #[arg(long)]
    all_sdrs: bool,
    /// Skip the post-construction checks.
    #[arg(long)]
    no_verify: bool,
    /// Print DOT instead of the digraph format.
    #[arg(long)]
    dot: bool,
    /// Write the digraph here (a directory with --all-sdrs).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long)]
    digraph: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DesignArgs {
    /// Cyclic design `v:d1,d2,...`.
    #[arg(long, required_unless_present = "file")]
    difference_set: Option<String>,
    #[arg(long, conflicts_with = "difference_set")]
    file: Option<PathBuf>,
    #[arg(long)]
    complement: bool,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SdrArgs {
    #[arg(long, required_unless_present = "design")]
    family: Option<PathBuf>,
    /// Use the block complements of this symmetric design.
    #[arg(long, conflicts_with = "family")]
    design: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Execution {
    /// Node visit budget.
    #[arg(long, env = "LIKING_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "LIKING_WORKERS", default_value_t = 0)]
    workers: usize,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    lambda: usize,
    #[arg(long)]
    two_way: bool,
    #[arg(long)]
    dedupe: bool,
    #[arg(long)]
    limit: Option<usize>,
    #[command(flatten)]
    exec: Execution,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue after the prefix stored in --checkpoint.
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    /// Print every digraph found.
    #[arg(long)]
    emit: bool,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Comma-separated `t:λ` pairs.
    #[arg(long, default_value = "2:1,3:1,3:2,2:2")]
    params: String,
    /// Raise the order guard (at most 8).
    #[arg(long, default_value_t = DEFAULT_AUDIT_MAX_ORDER)]
    max_order: usize,
    #[command(flatten)]
    exec: Execution,
}

/// Exit code plus the report, already rendered in the requested format.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Report,
    pub rendered: String,
}

/// Parses `argv` (program name first) and runs one subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let format = if args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
    {
        Format::Json
    } else {
        Format::Text
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let mut report = if help {
                Report::new("help", ReportVerdict::Ok)
            } else {
                Report::new("usage", ReportVerdict::Error)
            };
            report.summary = e.to_string().lines().map(str::to_string).collect();
            return finish(report, format);
        }
    };
    let report = match cli.command {
        Command::Check(a) => check(a),
        Command::Construct(a) => construct(a),
        Command::Convert(a) => convert(a),
        Command::Design(a) => design(a),
        Command::Sdr(a) => sdr_cmd(a),
        Command::Search(a) => search(a),
        Command::Audit(a) => audit(a),
    };
    finish(report, cli.format)
}

fn finish(report: Report, format: Format) -> Outcome {
    Outcome {
        exit_code: report.exit_code,
        rendered: report.render(format),
        report,
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_digraph(path: &Path) -> Result<(Digraph, Vec<ParseWarning>), String> {
    parse_digraph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_design(path: &Path) -> Result<Design, String> {
    parse_design(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

/// `v:d1,d2,...` to a cyclic design.
pub fn parse_difference_set(spec: &str) -> Result<Design, String> {
    let (v, rest) = spec
        .split_once(':')
        .ok_or_else(|| format!("expected `v:d1,d2,...`, found {spec:?}"))?;
    let v: usize = v.trim().parse().map_err(|_| format!("bad modulus {v:?}"))?;
    let base = rest
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad element {x:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    design_from_difference_set(v, &base).map_err(|e| e.to_string())
}

fn params_of(t: Option<usize>, lambda: Option<usize>) -> Result<LikingParams, String> {
    match (t, lambda) {
        (Some(t), Some(lambda)) => LikingParams::new(t, lambda).map_err(|e| e.to_string()),
        _ => Err("--t and --lambda are required for this check".into()),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn verdict_report<W: Serialize + std::fmt::Debug>(command: &str, what: &str, v: &Verdict<W>) -> Report {
    match v {
        Verdict::Holds => Report::new(command, ReportVerdict::Ok).line(format!("{what}: holds")),
        Verdict::Fails(w) => {
            let mut r = Report::new(command, ReportVerdict::Fails).line(format!("{what}: fails"));
            r.witness = to_value(w);
            r
        }
    }
}

fn check(a: CheckArgs) -> Report {
    const CMD: &str = "check";
    let (d, warnings) = match load_digraph(&a.digraph) {
        Ok(x) => x,
        Err(e) => return Report::error(CMD, e),
    };
    let flags = &a.property;
    let result: Result<Report, String> = (|| {
        let mut report = if flags.eulerian {
            verdict_report(CMD, "eulerian", &eulerian_check(&d).map_witness(|v| json!({ "vertex": v })))
        } else if flags.classify_21 {
            match classify_21(&d) {
                Ok(Classification21::NotLiking { violation }) => {
                    let mut r = Report::new(CMD, ReportVerdict::Fails).line("classify-21: not (2,1)-liking");
                    r.witness = to_value(&violation);
                    r
                }
                Ok(c) => {
                    let mut r = Report::new(CMD, ReportVerdict::Ok).line(format!("classify-21: {c:?}"));
                    r.payload = json!({ "classification": c });
                    r
                }
                Err(e @ LikingError::Inconsistent(_)) => {
                    let mut r = Report::new(CMD, ReportVerdict::Fails).line("classify-21: inconsistent");
                    r.witness = json!({ "message": e.to_string() });
                    r
                }
                Err(e) => return Err(e.to_string()),
            }
        } else {
            let p = params_of(a.t, a.lambda)?;
            if flags.bounds {
                verdict_report(CMD, &format!("degree bounds {p}"), &degree_bounds_check(&d, p).map_err(|e| e.to_string())?)
            } else if flags.counting_identity {
                verdict_report(
                    CMD,
                    &format!("counting identity {p}"),
                    &counting_identity_check(&d, p).map_err(|e| e.to_string())?,
                )
            } else {
                let two_way = flags.two_way;
                let what = format!("{}{p}-liking", if two_way { "two-way " } else { "" });
                if a.all_violations {
                    let all = all_violations(&d, p, two_way).map_err(|e| e.to_string())?;
                    let mut r = if all.is_empty() {
                        Report::new(CMD, ReportVerdict::Ok).line(format!("{what}: holds"))
                    } else {
                        let mut r = Report::new(CMD, ReportVerdict::Fails)
                            .line(format!("{what}: fails ({} violations)", all.len()));
                        r.witness = to_value(&all[0]);
                        r
                    };
                    r.payload = json!({ "violations": all });
                    r
                } else {
                    let v = if two_way { is_two_way_liking(&d, p) } else { is_liking(&d, p) }
                        .map_err(|e| e.to_string())?;
                    verdict_report(CMD, &what, &v)
                }
            }
        };
        if report.payload.get("order").is_none() {
            report.payload["order"] = json!(d.order());
            report.payload["arcs"] = json!(d.arc_count());
        }
        Ok(report)
    })();
    let mut report = result.unwrap_or_else(|e| Report::error(CMD, e));
    for w in &warnings {
        report.summary.insert(0, format!("warning: line {}: {}", w.line, w.message));
    }
    report.payload["warnings"] = to_value(&warnings);
    report
}

trait MapWitness<W> {
    fn map_witness<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U>;
}

impl<W> MapWitness<W> for Verdict<W> {
    fn map_witness<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

fn construction_json(c: &Construction) -> Value {
    json!({
        "params": c.params,
        "representatives": c.representatives,
        "digraph": c.digraph,
    })
}

fn construct(a: ConstructArgs) -> Report {
    const CMD: &str = "construct";
    let design = match (&a.design, &a.difference_set) {
        (Some(path), _) => load_design(path),
        (None, Some(spec)) => parse_difference_set(spec),
        (None, None) => Err("--design or --difference-set is required".into()),
    };
    let design = match design {
        Ok(d) => d,
        Err(e) => return Report::error(CMD, e),
    };
    let opts = ConstructOptions { verify: !a.no_verify };
    let render = |d: &Digraph| if a.dot { d.to_dot() } else { serialize_digraph(d) };
    if a.all_sdrs {
        let all = match design_to_digraphs_all_sdrs(&design, opts) {
            Ok(all) => all,
            Err(e) => return Report::error(CMD, e),
        };
        let classes: std::collections::BTreeSet<u64> = all
            .iter()
            .filter_map(|c| canonical_form(&c.digraph).ok().map(|f| f.code))
            .collect();
        let mut r = Report::new(CMD, ReportVerdict::Ok)
            .line(format!("{} SDRs, {} isomorphism classes of digraphs", all.len(), classes.len()));
        if let Some(dir) = &a.out {
            if let Err(e) = fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display())) {
                return Report::error(CMD, e);
            }
            for (i, c) in all.iter().enumerate() {
                if let Err(e) = write(&dir.join(format!("sdr-{i:04}.dg")), &render(&c.digraph)) {
                    return Report::error(CMD, e);
                }
            }
        }
        r.payload = json!({
            "count": all.len(),
            "isomorphism_classes": classes.len(),
            "constructions": all.iter().map(construction_json).collect::<Vec<_>>(),
        });
        return r;
    }
    match design_to_digraph_with(&design, opts) {
        Ok(c) => {
            let text = render(&c.digraph);
            if let Some(path) = &a.out {
                if let Err(e) = write(path, &text) {
                    return Report::error(CMD, e);
                }
            }
            let mut r = Report::new(CMD, ReportVerdict::Ok).line(format!(
                "{}-diregular two-way (2,{})-liking digraph of order {} from design {}",
                c.params.k, c.params.lambda, c.params.v, c.params
            ));
            r.payload = construction_json(&c);
            if a.out.is_none() {
                r.artifact = Some(text);
            }
            r
        }
        Err(e) => Report::error(CMD, e),
    }
}

fn convert(a: ConvertArgs) -> Report {
    const CMD: &str = "convert";
    let (d, _) = match load_digraph(&a.digraph) {
        Ok(x) => x,
        Err(e) => return Report::error(CMD, e),
    };
    match digraph_to_design(&d) {
        Ok(design) => {
            let params = verify_design(&design).expect("digraph_to_design verifies its output");
            let text = serialize_design(&design);
            let mut r = Report::new(CMD, ReportVerdict::Ok).line(format!("symmetric design {params}"));
            r.payload = json!({ "params": params, "design": design });
            if let Some(path) = &a.out {
                if let Err(e) = write(path, &text) {
                    return Report::error(CMD, e);
                }
            } else {
                r.artifact = Some(text);
            }
            r
        }
        Err(e) => Report::error(CMD, e),
    }
}

fn design(a: DesignArgs) -> Report {
    const CMD: &str = "design";
    let loaded = match (&a.difference_set, &a.file) {
        (Some(spec), _) => parse_difference_set(spec),
        (None, Some(path)) => load_design(path),
        (None, None) => Err("--difference-set or --file is required".into()),
    };
    let mut d = match loaded {
        Ok(d) => d,
        Err(e) => return Report::error(CMD, e),
    };
    if a.complement {
        d = match complement_design(&d) {
            Ok(c) => c,
            Err(e) => return Report::error(CMD, e),
        };
    }
    let text = serialize_design(&d);
    let mut r = if a.verify {
        match verify_design(&d) {
            Ok(p) => {
                let mut r = Report::new(CMD, ReportVerdict::Ok).line(format!(
                    "(b,v,r,k,λ) = {p}{}{}",
                    if p.is_symmetric() { ", symmetric" } else { "" },
                    if p.is_incomplete() { ", incomplete" } else { "" }
                ));
                r.payload = json!({ "params": p, "symmetric": p.is_symmetric(), "incomplete": p.is_incomplete() });
                r
            }
            Err(v) => {
                let mut r = Report::new(CMD, ReportVerdict::Fails).line(format!("not a BIBD: {v}"));
                r.witness = to_value(&v);
                r
            }
        }
    } else {
        Report::new(CMD, ReportVerdict::Ok).line(format!("{} blocks over {} varieties", d.blocks().len(), d.varieties()))
    };
    r.payload["design"] = to_value(&d);
    match &a.out {
        Some(path) => {
            if let Err(e) = write(path, &text) {
                return Report::error(CMD, e);
            }
        }
        None => r.artifact = Some(text),
    }
    r
}

fn sdr_cmd(a: SdrArgs) -> Report {
    const CMD: &str = "sdr";
    let family = match (&a.family, &a.design) {
        (Some(path), _) => read(path).and_then(|t| parse_family(&t).map_err(|e| format!("{}: {e}", path.display()))),
        (None, Some(path)) => {
            load_design(path).and_then(|d| block_complement_family(&d).map_err(|e| e.to_string()))
        }
        (None, None) => Err("--family or --design is required".into()),
    };
    let family = match family {
        Ok(f) => f,
        Err(e) => return Report::error(CMD, e),
    };
    match sdr(&family) {
        SdrOutcome::Representatives(reps) => {
            let mut r = Report::new(CMD, ReportVerdict::Ok).line(format!("representatives {reps:?}"));
            r.payload = json!({ "representatives": reps });
            r
        }
        SdrOutcome::HallViolator(s) => {
            let union = family.union_size(&s);
            let mut r = Report::new(CMD, ReportVerdict::Fails)
                .line(format!("Hall violator {s:?}: union has {union} < {} elements", s.len()));
            r.witness = json!({ "hall_violator": s, "union_size": union });
            r
        }
    }
}

fn search(a: SearchArgs) -> Report {
    const CMD: &str = "search";
    let p = match LikingParams::new(a.t, a.lambda) {
        Ok(p) => p,
        Err(e) => return Report::error(CMD, e),
    };
    let mode = if a.two_way { SearchMode::TwoWayLiking } else { SearchMode::Liking };
    let spec = SearchSpec {
        n: a.n,
        params: p,
        mode,
        dedupe: a.dedupe,
        limit: a.limit,
    };
    let cfg = SearchConfig {
        node_budget: a.exec.budget,
        workers: a.exec.workers,
        checkpoint: a.checkpoint.clone(),
        resume: a.resume,
        max_order: MAX_ORDER,
    };
    let report = match enumerate_liking(&spec, &cfg) {
        Ok(r) => r,
        Err(e) => return Report::error(CMD, e),
    };
    let verdict = if report.budget_exhausted || report.verdicts.iter().any(|v| v.verdict != AuditVerdict::Pass) {
        ReportVerdict::Fails
    } else {
        ReportVerdict::Ok
    };
    let kind = if a.two_way { "two-way " } else { "" };
    let mut r = Report::new(CMD, verdict).line(format!(
        "{} {kind}{p}-liking digraph(s) of order {}{} ({} nodes)",
        report.found.len(),
        a.n,
        if a.dedupe { " up to isomorphism" } else { "" },
        report.nodes_explored
    ));
    if report.budget_exhausted {
        r.summary.push(format!(
            "node budget exhausted after {} of {} prefixes",
            report.prefixes_completed, report.prefixes_total
        ));
        r.witness = json!({ "budget_exhausted": true, "prefixes_completed": report.prefixes_completed });
    }
    if a.emit {
        r.artifact = Some(report.found.iter().map(serialize_digraph).collect::<Vec<_>>().join("\n"));
    }
    r.payload = to_value(&report);
    r
}

fn parse_params_list(s: &str) -> Result<Vec<LikingParams>, String> {
    s.split(',')
        .map(|pair| {
            let (t, l) = pair
                .split_once(':')
                .ok_or_else(|| format!("expected `t:λ`, found {pair:?}"))?;
            let t = t.trim().parse().map_err(|_| format!("bad t in {pair:?}"))?;
            let l = l.trim().parse().map_err(|_| format!("bad λ in {pair:?}"))?;
            LikingParams::new(t, l).map_err(|e| e.to_string())
        })
        .collect()
}

fn audit(a: AuditArgs) -> Report {
    const CMD: &str = "audit";
    let params = match parse_params_list(&a.params) {
        Ok(p) => p,
        Err(e) => return Report::error(CMD, e),
    };
    let cfg = SearchConfig {
        node_budget: a.exec.budget,
        workers: a.exec.workers,
        max_order: a.max_order,
        ..Default::default()
    };
    let report = match theorem_audit(a.n_max, &params, &cfg) {
        Ok(r) => r,
        Err(e) => return Report::error(CMD, e),
    };
    let verdict = if report.any_fail() { ReportVerdict::Fails } else { ReportVerdict::Ok };
    let mut r = Report::new(CMD, verdict);
    for e in &report.entries {
        let status = match &e.verdict {
            AuditVerdict::Pass => "PASS".to_string(),
            AuditVerdict::Fail { witness } => format!("FAIL {witness}"),
            AuditVerdict::Inconclusive { note } => format!("INCONCLUSIVE {note}"),
        };
        let counts: Vec<String> = e
            .per_order
            .iter()
            .map(|s| format!("n={}:{}/{}", s.n, s.flagged, s.examined))
            .collect();
        r.summary.push(format!(
            "{} {:<30} {status} [{}]",
            e.params,
            serde_json::to_value(e.check).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
            counts.join(" ")
        ));
        if let (AuditVerdict::Fail { witness }, true) = (&e.verdict, r.witness.is_null()) {
            r.witness = json!({ "params": e.params, "check": e.check, "witness": witness });
        }
    }
    r.payload = to_value(&report);
    r
}
