//! Command-line front end.
//!
//! Complex files are either plain text (one facet per line, labels separated
//! by whitespace, `#` starts a comment) or JSON of the form
//! `{"facets": [[...], ...]}`. A file whose first non-blank character is `{`
//! is read as JSON.
//!
//! Exit codes: 0 when a decision (or computation) completed, 2 for usage
//! errors, 3 for unreadable or malformed input, 4 when the requested method
//! does not apply to the input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::complex::{ComplexError, Fixture, SimplicialComplex};
use crate::decide::{decide_auto_with, Certificate, DecideOptions, FieldChoice, Method, TightnessReport, Verdict};
use crate::homology::{betti, integral_homology, FieldSpec};
use crate::oracle::{mu0, mu1_with, sigma_mu_report};
use crate::sigma_fpt::sigma0_of_graph;
use crate::treewidth::{decompose, make_nice, validate, Strategy};
use crate::{format_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_NOT_APPLICABLE: i32 = 4;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Parses either file format from a string.
pub fn parse_complex_str(text: &str) -> Result<SimplicialComplex, ParseError> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let labels: Vec<&str> = line.split_whitespace().collect();
        if labels.is_empty() {
            continue;
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ParseError::Line { line: i + 1, reason: format!("vertex {} repeated in a facet", w[0]) });
        }
        facets.push(labels);
    }
    if facets.is_empty() {
        return Err(ParseError::Complex(ComplexError::Empty));
    }
    Ok(SimplicialComplex::from_facets(facets)?)
}

fn parse_json(text: &str) -> Result<SimplicialComplex, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let facets = doc.get("facets").and_then(Value::as_array).ok_or_else(|| ParseError::Json("missing \"facets\" array".into()))?;
    let mut out = Vec::with_capacity(facets.len());
    for (i, f) in facets.iter().enumerate() {
        let f = f.as_array().ok_or_else(|| ParseError::Json(format!("facet {i} is not an array")))?;
        let labels = f
            .iter()
            .map(|l| match l {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(ParseError::Json(format!("facet {i}: labels must be strings or numbers"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(labels);
    }
    Ok(SimplicialComplex::from_facets(out)?)
}

pub fn parse_complex(path: &Path) -> Result<SimplicialComplex, ParseError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.display().to_string(), source })?;
    parse_complex_str(&text)
}

/// Plain-text facet list, one facet per line.
pub fn render_complex(c: &SimplicialComplex) -> String {
    c.facet_labels().iter().map(|f| f.join(" ") + "\n").collect()
}

#[derive(Parser, Debug)]
#[command(name = "tightness", version, about = "Decide tightness of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector, dimension and basic properties
    Info { file: PathBuf },
    /// Betti numbers over a field, optionally integral homology
    Homology {
        file: PathBuf,
        #[arg(long, default_value = "2")]
        field: FieldSpec,
        #[arg(long)]
        integral: bool,
    },
    /// σ-vector (brute force) or σ₀ of the 1-skeleton (treewidth DP)
    Sigma {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SigmaMethod::Brute)]
        method: SigmaMethod,
        #[arg(long, default_value = "2")]
        field: FieldSpec,
    },
    /// μ-vector (brute force) or μ₀, μ₁ with σ₀ of links from the DP
    Mu {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SigmaMethod::Brute)]
        method: SigmaMethod,
        #[arg(long, default_value = "2")]
        field: FieldSpec,
    },
    /// Tree decomposition of the 1-skeleton or the dual graph
    Treewidth {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphKind::Skeleton)]
        graph: GraphKind,
        #[arg(long, default_value = "min_fill")]
        strategy: Strategy,
        /// Include the bags of the decomposition
        #[arg(long)]
        bags: bool,
    },
    /// Decide tightness
    Tight {
        file: PathBuf,
        #[arg(long, default_value = "2")]
        field: FieldChoice,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Print the full certificate in text mode
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
        /// Skip the link checks of the 4-manifold pipeline
        #[arg(long)]
        trusted_links: bool,
        /// Also run brute force on small inputs and report its verdict
        #[arg(long)]
        cross_check: bool,
        /// Add wall-clock timings per stage
        #[arg(long)]
        timings: bool,
    },
    /// Write a named fixture complex
    Gen {
        name: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SigmaMethod {
    Brute,
    Fpt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphKind {
    Skeleton,
    Dual,
}

/// Exit code and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: stderr.into() }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn input_summary(c: &SimplicialComplex) -> Value {
    json!({
        "vertices": c.vertex_count(),
        "dim": c.dim(),
        "f_vector": c.f_vector().0,
        "two_neighbourly": c.is_k_neighbourly(2),
    })
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(e.to_string()),
                _ => Outcome::fail(EXIT_USAGE, e.to_string()),
            };
        }
    };
    let start = Instant::now();
    let load = |p: &Path| parse_complex(p).map_err(|e| Outcome::fail(EXIT_INPUT, format!("error: {e}\n")));
    match cli.command {
        Command::Info { file } => match load(&file) {
            Ok(c) => {
                let mut doc = input_summary(&c);
                doc["pure"] = json!(c.is_pure());
                doc["connected"] = json!(c.is_connected());
                doc["euler_characteristic"] = json!(c.euler_characteristic());
                doc["closed_pseudomanifold"] = json!(c.is_closed_pseudomanifold());
                Outcome::ok(pretty(&doc))
            }
            Err(o) => o,
        },
        Command::Homology { file, field, integral } => match load(&file) {
            Ok(c) => {
                let d = c.dim();
                let mut doc = json!({
                    "field": field.to_string(),
                    "betti": (0..=d).map(|k| betti(&c, k, field)).collect::<Vec<_>>(),
                });
                if integral {
                    doc["integral"] = json!((0..=d).map(|k| integral_homology(&c, k).to_string()).collect::<Vec<_>>());
                }
                Outcome::ok(pretty(&doc))
            }
            Err(o) => o,
        },
        Command::Sigma { file, method, field } => match load(&file) {
            Ok(c) => match method {
                SigmaMethod::Brute => match sigma_mu_report(&c, field) {
                    Ok(r) => Outcome::ok(pretty(&json!({
                        "method": "brute",
                        "field": field.to_string(),
                        "sigma": rationals(&r.sigma),
                        "convention": r.convention,
                    }))),
                    Err(e) => Outcome::fail(EXIT_NOT_APPLICABLE, format!("error: {e}\n")),
                },
                SigmaMethod::Fpt => match sigma0_of_graph(&c.one_skeleton(), Strategy::MinFill) {
                    Ok(s) => Outcome::ok(pretty(&json!({ "method": "fpt", "sigma0": format_rational(&s) }))),
                    Err(e) => Outcome::fail(EXIT_INPUT, format!("error: {e}\n")),
                },
            },
            Err(o) => o,
        },
        Command::Mu { file, method, field } => match load(&file) {
            Ok(c) => match method {
                SigmaMethod::Brute => match sigma_mu_report(&c, field) {
                    Ok(r) => Outcome::ok(pretty(&json!({
                        "method": "brute",
                        "field": field.to_string(),
                        "mu": rationals(&r.mu),
                    }))),
                    Err(e) => Outcome::fail(EXIT_NOT_APPLICABLE, format!("error: {e}\n")),
                },
                SigmaMethod::Fpt => {
                    match mu1_with(&c, |lk| sigma0_of_graph(&lk.one_skeleton(), Strategy::MinFill)) {
                        Ok(mu1) => Outcome::ok(pretty(&json!({
                            "method": "fpt",
                            "mu": [format_rational(&mu0(&c)), format_rational(&mu1)],
                        }))),
                        Err(e) => Outcome::fail(EXIT_INPUT, format!("error: {e}\n")),
                    }
                }
            },
            Err(o) => o,
        },
        Command::Treewidth { file, graph, strategy, bags } => match load(&file) {
            Ok(c) => {
                let g = match graph {
                    GraphKind::Skeleton => c.one_skeleton(),
                    GraphKind::Dual => match c.dual_graph() {
                        Ok(g) => g,
                        Err(e) => return Outcome::fail(EXIT_NOT_APPLICABLE, format!("error: {e}\n")),
                    },
                };
                let t = match decompose(&g, strategy) {
                    Ok(t) => t,
                    Err(e) => return Outcome::fail(EXIT_NOT_APPLICABLE, format!("error: {e}\n")),
                };
                let nice = make_nice(&t, &g).expect("valid decomposition");
                let mut doc = json!({
                    "graph": match graph { GraphKind::Skeleton => "skeleton", GraphKind::Dual => "dual" },
                    "strategy": strategy.to_string(),
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "width": t.width(),
                    "bags": t.bags.len(),
                    "valid": validate(&t, &g).is_ok(),
                    "nice_nodes": nice.len(),
                    "nice_width": nice.width(),
                });
                if bags {
                    doc["decomposition"] = json!({ "bags": t.bags, "edges": t.edges });
                }
                Outcome::ok(pretty(&doc))
            }
            Err(o) => o,
        },
        Command::Tight { file, field, method, certificate, json, trusted_links, cross_check, timings } => {
            let c = match load(&file) {
                Ok(c) => c,
                Err(o) => return o,
            };
            let parsed = start.elapsed();
            let opts = DecideOptions { trusted_links, cross_check };
            let report = decide_auto_with(&c, field, method, opts);
            let decided = start.elapsed();
            let code = if report.verdict == Verdict::NotApplicable { EXIT_NOT_APPLICABLE } else { EXIT_OK };
            let stdout = if json {
                let mut doc = report_document(&c, &report);
                if timings {
                    doc["timings_ms"] = json!({
                        "parse": parsed.as_secs_f64() * 1e3,
                        "decide": (decided - parsed).as_secs_f64() * 1e3,
                    });
                }
                pretty(&doc)
            } else {
                let mut s = render_text(&report, certificate);
                if timings {
                    let _ = writeln!(s, "time: parse {:?}, decide {:?}", parsed, decided - parsed);
                }
                s
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Command::Gen { name, params, output } => {
            let c = match Fixture::parse(&name, &params).and_then(|f| f.build()) {
                Ok(c) => c,
                Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
            };
            let text = render_complex(&c);
            match output {
                Some(p) => match std::fs::write(&p, text) {
                    Ok(()) => Outcome::ok(String::new()),
                    Err(e) => Outcome::fail(EXIT_INPUT, format!("error: {}: {e}\n", p.display())),
                },
                None => Outcome::ok(text),
            }
        }
    }
}

/// The JSON report of `tight --json`.
pub fn report_document(c: &SimplicialComplex, report: &TightnessReport) -> Value {
    let mut doc = json!({ "input": input_summary(c) });
    let body = serde_json::to_value(report).expect("serialisable");
    for (k, v) in body.as_object().expect("struct").iter() {
        doc[k] = v.clone();
    }
    doc
}

fn render_text(r: &TightnessReport, full: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {}", r.verdict);
    if let Some(a) = r.algorithm {
        let _ = writeln!(s, "algorithm: {a}");
    }
    let _ = writeln!(s, "field: {}", r.field);
    if let Some(m) = &r.mu1 {
        let _ = writeln!(s, "mu1: {}", format_rational(m));
    }
    if let Some(b) = r.beta1 {
        let _ = writeln!(s, "beta1: {b}");
    }
    if let Some(n) = &r.note {
        let _ = writeln!(s, "note: {n}");
    }
    match &r.certificate {
        Some(Certificate::Reason { code, detail }) => {
            let _ = writeln!(s, "reason: {code} ({detail})");
        }
        Some(Certificate::Witness { w, k, .. }) => {
            let _ = writeln!(s, "certificate: W = {{{}}}, k = {k}", w.join(", "));
        }
        Some(Certificate::Obstruction { w, j, .. }) => {
            let _ = writeln!(s, "certificate: W = {{{}}}, j = {j}", w.join(", "));
        }
        _ => {}
    }
    if full {
        if let Some(cert) = &r.certificate {
            s.push_str(&pretty(cert));
        }
    }
    s
}
