//! Rule-file parsing, report envelopes and the `lim1` command.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use lim1_core::justify::{self, cite};
use lim1_core::verdicts::{
    analyze_endo, analyze_substitution, h1_presentation, h1_presentation_for_endo, projection_check,
    torus_minus_points,
};
use lim1_core::{
    Alphabet, Caps, EndoReport, FreeEndo, H1Presentation, Justification, ProjectionCheck, Substitution,
    Syllable, TilingSpaceReport, TorusCohomology, Word,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = concat!("lim1 ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Invalid(_) => 3,
        }
    }
}

impl From<lim1_core::Error> for CliError {
    fn from(e: lim1_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Substitution,
    Endomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub letter: String,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleFile {
    pub mode: Mode,
    pub rules: Vec<(String, Vec<Token>)>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_token(raw: &str, line: usize) -> Result<Token, CliError> {
    let (name, inverse) = match raw.strip_suffix('\'') {
        Some(name) => (name, true),
        None => (raw, false),
    };
    if !is_identifier(name) {
        return Err(CliError::Parse { line, message: format!("bad token `{raw}`") });
    }
    Ok(Token { letter: name.to_owned(), inverse })
}

/// Parses a rule file. Inverse tokens and empty images are rejected in
/// substitution mode; empty images are rejected in both modes.
pub fn parse_rules(text: &str, mode: Mode) -> Result<RuleFile, CliError> {
    struct Raw<'a> {
        line: usize,
        lhs: &'a str,
        rhs: &'a str,
        compact_shape: bool,
    }
    let mut raws = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = content.split_once("->") else {
            return Err(CliError::Parse { line: line_no, message: "expected `<letter> -> <image>`".into() });
        };
        let lhs = lhs.trim();
        if !is_identifier(lhs) {
            return Err(CliError::Parse { line: line_no, message: format!("bad letter `{lhs}`") });
        }
        if raws.iter().any(|r: &Raw| r.lhs == lhs) {
            return Err(CliError::Parse { line: line_no, message: format!("duplicate rule for `{lhs}`") });
        }
        let compact_shape = !content.contains(char::is_whitespace) && !content.contains('\'');
        raws.push(Raw { line: line_no, lhs, rhs: rhs.trim(), compact_shape });
    }
    if raws.is_empty() {
        return Err(CliError::Invalid("the rule file defines no letters".into()));
    }
    let compact_alphabet =
        raws.iter().all(|r| r.lhs.len() == 1 && r.lhs.chars().all(|c| c.is_ascii_lowercase()));
    let declared = |name: &str| raws.iter().any(|r| r.lhs == name);

    let mut rules = Vec::with_capacity(raws.len());
    for r in &raws {
        let tokens: Vec<Token> = if r.compact_shape && compact_alphabet {
            r.rhs
                .chars()
                .map(|c| {
                    if c.is_ascii_lowercase() {
                        Ok(Token { letter: c.to_string(), inverse: false })
                    } else if c.is_ascii_uppercase() {
                        Ok(Token { letter: c.to_ascii_lowercase().to_string(), inverse: true })
                    } else {
                        Err(CliError::Parse { line: r.line, message: format!("bad character `{c}`") })
                    }
                })
                .collect::<Result<_, _>>()?
        } else {
            r.rhs.split_whitespace().map(|t| parse_token(t, r.line)).collect::<Result<_, _>>()?
        };
        if let Some(t) = tokens.iter().find(|t| !declared(&t.letter)) {
            return Err(CliError::Parse { line: r.line, message: format!("unknown letter `{}`", t.letter) });
        }
        if tokens.is_empty() {
            return Err(CliError::Invalid(format!("line {}: empty image for `{}`", r.line, r.lhs)));
        }
        if mode == Mode::Substitution && tokens.iter().any(|t| t.inverse) {
            return Err(CliError::Invalid(format!(
                "line {}: inverse letter in the image of `{}`; substitutions take positive words",
                r.line, r.lhs
            )));
        }
        rules.push((r.lhs.to_owned(), tokens));
    }
    Ok(RuleFile { mode, rules })
}

impl RuleFile {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.rules.iter().map(|(l, _)| l.clone())).expect("letters validated by the parser")
    }

    pub fn to_endo(&self) -> FreeEndo {
        let alphabet = self.alphabet();
        let images = self
            .rules
            .iter()
            .map(|(_, tokens)| {
                Word::reduce_unchecked(tokens.iter().map(|t| Syllable {
                    letter: alphabet.index_of(&t.letter).expect("declared"),
                    inverse: t.inverse,
                }))
            })
            .collect();
        FreeEndo::new(alphabet, images).expect("one image per letter")
    }

    /// Fails unless there are at least two letters, every image reduces to
    /// a non-empty positive word, and the substitution is primitive.
    pub fn to_substitution(&self) -> Result<Substitution, CliError> {
        let e = self.to_endo();
        if let Some(i) = e.images().iter().position(Word::is_identity) {
            return Err(CliError::Invalid(format!(
                "image of `{}` reduces to the empty word; substitutions need non-empty images",
                e.alphabet().name(i)
            )));
        }
        let s = Substitution::from_endo(&e)?;
        if !s.is_primitive() {
            return Err(CliError::Invalid(
                "substitution is not primitive; the tiling-space verdicts require a primitive substitution".into(),
            ));
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct InputEcho {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdicts {
    TilingSpace(TilingSpaceReport),
    Endomorphism(EndoReport),
    Cohomology(H1Presentation),
    Torus(TorusCohomology),
    Projection(ProjectionCheck),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub input: InputEcho,
    pub verdicts: Verdicts,
    pub justifications: Vec<Justification>,
}

impl ReportEnvelope {
    /// Moves the report's own justification chain to the top level.
    pub fn new(input: InputEcho, mut verdicts: Verdicts, mut extra: Vec<Justification>) -> Self {
        let own = match &mut verdicts {
            Verdicts::TilingSpace(r) => std::mem::take(&mut r.justification),
            Verdicts::Endomorphism(r) => std::mem::take(&mut r.justification),
            Verdicts::Torus(r) => std::mem::take(&mut r.justification),
            Verdicts::Projection(r) => std::mem::take(&mut r.justification),
            Verdicts::Cohomology(_) => Vec::new(),
        };
        let mut justifications = own;
        justifications.append(&mut extra);
        Self { tool_version: TOOL_VERSION.to_owned(), input, verdicts, justifications }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serialises")
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("envelope serialises");
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.tool_version);
        for (section, _) in [("input", ()), ("verdicts", ())] {
            let _ = writeln!(out, "{section}:");
            render(&mut out, &value[section], 1);
        }
        let _ = writeln!(out, "justifications:");
        for (i, j) in self.justifications.iter().enumerate() {
            let _ = writeln!(out, "  {}. {}: {}", i + 1, j.label, j.statement);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(map) if map.len() <= 2 && map.values().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = map.iter().map(|(k, x)| format!("{k}={}", scalar(x).unwrap_or_default())).collect();
            Some(format!("{{{}}}", parts.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lim1", version, about = "Stability and lim1 verdicts for substitutions and free-group endomorphisms")]
pub struct Cli {
    /// Emit a single JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    /// Search depth for neighbour determination.
    #[arg(long, global = true, default_value_t = 8)]
    pub cap_border: usize,
    /// Search depth for proper powers.
    #[arg(long, global = true, default_value_t = 8)]
    pub cap_proper: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full tiling-space report for a primitive substitution.
    Sub { file: PathBuf },
    /// Stability and shape of the inverse limit of an endomorphism.
    Endo { file: PathBuf },
    /// First cohomology presentation.
    Cohomology { file: PathBuf },
    /// Cohomology of a (d+1)-torus with k points removed.
    Torus {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Codimension-one obstruction for a projection tiling.
    Projection {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
}

fn read_rules(path: &PathBuf, mode: Mode) -> Result<(RuleFile, InputEcho), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let rules = parse_rules(&text, mode)?;
    let echo = InputEcho {
        file: Some(path.display().to_string()),
        rules: rules.to_endo().rules(),
        ..InputEcho::default()
    };
    Ok((rules, echo))
}

/// Runs a parsed command line and returns the report.
pub fn execute(cli: &Cli) -> Result<ReportEnvelope, CliError> {
    if cli.cap_border == 0 || cli.cap_proper == 0 {
        return Err(CliError::Invalid("search caps must be at least 1".into()));
    }
    let caps = Caps { border: cli.cap_border, proper: cli.cap_proper };
    let cap_params = || {
        BTreeMap::from([("cap_border".to_owned(), caps.border), ("cap_proper".to_owned(), caps.proper)])
    };
    match &cli.command {
        Command::Sub { file } => {
            let (rules, mut echo) = read_rules(file, Mode::Substitution)?;
            echo.command = "sub".into();
            echo.parameters = cap_params();
            let report = analyze_substitution(&rules.to_substitution()?, caps)?;
            Ok(ReportEnvelope::new(echo, Verdicts::TilingSpace(report), Vec::new()))
        }
        Command::Endo { file } => {
            let (rules, mut echo) = read_rules(file, Mode::Endomorphism)?;
            echo.command = "endo".into();
            let report = analyze_endo(&rules.to_endo());
            Ok(ReportEnvelope::new(echo, Verdicts::Endomorphism(report), Vec::new()))
        }
        Command::Cohomology { file } => {
            let (rules, mut echo) = read_rules(file, Mode::Endomorphism)?;
            echo.command = "cohomology".into();
            echo.parameters = cap_params();
            let e = rules.to_endo();
            let substitution = Substitution::from_endo(&e).ok().filter(Substitution::is_primitive);
            let mut chain = vec![cite(justify::CECH_DIRECT_LIMIT)];
            let h1 = match substitution {
                Some(s) => {
                    let h1 = h1_presentation(&s, caps)?;
                    if h1.validity == lim1_core::Validity::Exact {
                        chain.push(cite(justify::BORDER_FORCED_ROSE_MODEL));
                    }
                    h1
                }
                None => h1_presentation_for_endo(&e),
            };
            Ok(ReportEnvelope::new(echo, Verdicts::Cohomology(h1), chain))
        }
        Command::Torus { d, k } => {
            let report = torus_minus_points(*d, *k)?;
            let echo = InputEcho {
                command: "torus".into(),
                parameters: BTreeMap::from([("d".to_owned(), *d), ("k".to_owned(), *k)]),
                ..InputEcho::default()
            };
            Ok(ReportEnvelope::new(echo, Verdicts::Torus(report), Vec::new()))
        }
        Command::Projection { d, n } => {
            let report = projection_check(*d, *n)?;
            let echo = InputEcho {
                command: "projection".into(),
                parameters: BTreeMap::from([("d".to_owned(), *d), ("n".to_owned(), *n)]),
                ..InputEcho::default()
            };
            Ok(ReportEnvelope::new(echo, Verdicts::Projection(report), Vec::new()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
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
    match execute(&cli) {
        Ok(envelope) => Outcome {
            code: 0,
            stdout: if cli.json { envelope.to_json() + "\n" } else { envelope.to_text() },
            stderr: String::new(),
        },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("lim1: {e}\n") },
    }
}
