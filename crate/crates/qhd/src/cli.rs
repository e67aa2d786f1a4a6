//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
//! 3 search budget exhausted.

use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::embed::{self, EmbedError, Verdict, DEFAULT_NODE_BUDGET};
use crate::family::{dual_star, families_containing, generate_family_with, FamilySpec, FamilyTag, VertexBlowupPolicy};
use crate::hj::g_chain;
use crate::plane::{shipped_claims, verify_claims};
use crate::plumbing::PlumbingGraph;
use crate::templates::{parse_templates, recognize_qhd, shipped_templates, QhdTemplate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qhd", about = "Plumbing graphs, dual families and curve configurations")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Definiteness, minimality and star shape of a graph.
    Analyze {
        /// Graph file (text or JSON) or an inline `star(c; [..], ..)`.
        graph: String,
    },
    /// Dual star graph.
    Dual { graph: String },
    /// Enumerate a family up to a vertex bound.
    Generate {
        family: FamilyTag,
        #[arg(long)]
        max_vertices: usize,
        /// Only edge blow-ups.
        #[arg(long)]
        edges_only: bool,
    },
    /// Match a graph against the class templates.
    Recognize {
        graph: String,
        /// Template file; the shipped set is used when omitted.
        #[arg(long)]
        templates: Option<String>,
    },
    /// Chain of the lens space with parameters p, q.
    GChain { p: u64, q: u64 },
    /// Enumerate curve configurations for a proposition and compare.
    VerifyProp {
        id: String,
        #[arg(long, value_parser = parse_k_range)]
        k_range: RangeInclusive<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        max_nodes: u64,
    },
    /// Plane curve claims.
    Curves {
        #[command(subcommand)]
        action: CurvesCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum CurvesCommand {
    /// Check a claim file, or a shipped set by name.
    Verify { claims: String },
}

/// `a..b` (inclusive) or a single `a`.
pub fn parse_k_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a non-negative integer"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            Ok(a..=b)
        }
        None => {
            let a = parse(s)?;
            Ok(a..=a)
        }
    }
}

/// `star(c; [a,b], [c])` with any whitespace.
pub fn parse_star_expr(s: &str) -> Result<PlumbingGraph, String> {
    let bad = || format!("cannot parse `{s}` as star(c; [..], ..)");
    let inner = s.trim().strip_prefix("star(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (center, rest) = inner.split_once(';').ok_or_else(bad)?;
    let center: i64 = center.trim().parse().map_err(|_| bad())?;
    let mut legs = Vec::new();
    for chunk in rest.split(']') {
        let chunk = chunk.trim().trim_start_matches(',').trim();
        if chunk.is_empty() {
            continue;
        }
        let body = chunk.strip_prefix('[').ok_or_else(bad)?;
        let leg: Vec<i64> = body
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if leg.is_empty() {
            return Err(bad());
        }
        legs.push(leg);
    }
    Ok(PlumbingGraph::star(center, &legs))
}

pub fn load_graph(arg: &str) -> Result<PlumbingGraph, String> {
    if arg.trim_start().starts_with("star(") {
        return parse_star_expr(arg);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| format!("cannot read `{arg}`: {e}"))?;
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("`{arg}`: {e}"))?;
        PlumbingGraph::from_json(&v).map_err(|e| format!("`{arg}`: {e}"))
    } else {
        PlumbingGraph::parse_text(&text).map_err(|e| format!("`{arg}`: {e}"))
    }
}

fn load_templates(path: Option<&str>) -> Result<Vec<QhdTemplate>, String> {
    match path {
        None => Ok(shipped_templates()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read `{p}`: {e}"))?;
            parse_templates(&text).map_err(|e| format!("`{p}`: {e}"))
        }
    }
}

fn star_text(g: &PlumbingGraph) -> Option<String> {
    g.star_decomposition().ok().map(|s| s.to_string())
}

fn graph_json(g: &PlumbingGraph) -> Value {
    json!({
        "graph": g.to_json(),
        "star": star_text(g),
        "canonical_form": g.canonical_form().to_string(),
    })
}

struct Output {
    /// Lines for text mode.
    text: String,
    json: Value,
    code: i32,
}

fn analyze(g: &PlumbingGraph) -> Output {
    let shape = g.star_decomposition().ok();
    let nd = g.is_negative_definite();
    let minimal = g.is_minimal();
    let det = crate::plumbing::determinant(&g.intersection_matrix().entries);
    let families: Vec<String> = families_containing(g).iter().map(|t| t.to_string()).collect();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "vertices: {}\nnegative definite: {}\nminimal: {}\ndeterminant: {}\n",
        g.len(),
        yes(nd),
        yes(minimal),
        det
    );
    match &shape {
        Some(s) => text.push_str(&format!("star: {} legs\nshape: {}\n", s.num_legs(), s)),
        None => text.push_str("star: no\n"),
    }
    text.push_str(&format!(
        "families: {}\n",
        if families.is_empty() { "none".to_string() } else { families.join(", ") }
    ));
    let json = json!({
        "vertices": g.len(),
        "negative_definite": nd,
        "minimal": minimal,
        "determinant": det.to_string(),
        "star_shaped": shape.is_some(),
        "legs": shape.as_ref().map(|s| s.num_legs()),
        "shape": shape.as_ref().map(|s| s.to_string()),
        "families": families,
        "canonical_form": g.canonical_form().to_string(),
    });
    Output { text, json, code: EXIT_OK }
}

fn verify_prop(id: &str, ks: RangeInclusive<usize>, max_nodes: u64) -> Result<Output, (i32, String)> {
    let prop = embed::proposition(id).map_err(|e| (EXIT_USAGE, e.to_string()))?;
    if *ks.start() < prop.min_k {
        return Err((EXIT_USAGE, format!("{id} needs k >= {}; got range starting at {}", prop.min_k, ks.start())));
    }
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut overall = Verdict::ExactMatch;
    for k in ks {
        let report = match embed::verify_proposition(id, k, max_nodes) {
            Ok(r) => r,
            Err(EmbedError::BoundsTooLoose(n)) => {
                return Err((
                    EXIT_BUDGET,
                    format!("{id} k={k}: search budget of {n} nodes exhausted; raise --max-nodes"),
                ))
            }
            Err(e) => return Err((EXIT_USAGE, e.to_string())),
        };
        text.push_str(&format!(
            "{} k={}: {:?} (expected {}, found {}, missing {}, extra {}; {} patterns, {} nodes)\n",
            report.proposition,
            k,
            report.verdict,
            report.expected.len(),
            report.found.len(),
            report.missing.len(),
            report.extras.len(),
            report.patterns,
            report.nodes
        ));
        for f in &report.found {
            let tag = if report.extras.contains(f) { "extra" } else { "expected" };
            text.push_str(&format!(
                "  {tag}: framings {:?} incidences {} -> {}{}\n",
                f.framings,
                incidence_text(&f.incidences),
                f.analysis.gamma.as_deref().unwrap_or("-"),
                if f.analysis.tags.is_empty() { String::new() } else { format!(" [{}]", f.analysis.tags.join(", ")) }
            ));
        }
        for m in &report.missing {
            text.push_str(&format!("  missing: framings {:?} incidences {}\n", m.framings, incidence_text(&m.incidences)));
        }
        overall = match (overall, report.verdict) {
            (_, Verdict::Mismatch) | (Verdict::Mismatch, _) => Verdict::Mismatch,
            (_, Verdict::SuperSet) | (Verdict::SuperSet, _) => Verdict::SuperSet,
            _ => Verdict::ExactMatch,
        };
        reports.push(report);
    }
    text.push_str(&format!("verdict: {overall:?}\n"));
    let code = if overall == Verdict::Mismatch { EXIT_MISMATCH } else { EXIT_OK };
    Ok(Output { text, json: json!({ "verdict": overall, "reports": reports }), code })
}

fn incidence_text(inc: &[std::collections::BTreeMap<String, i64>]) -> String {
    let parts: Vec<String> = inc
        .iter()
        .map(|m| {
            let names: Vec<String> =
                m.iter().map(|(n, &c)| if c == 1 { n.clone() } else { format!("{n}x{c}") }).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    parts.join(" ")
}

fn dispatch(cli: Cli) -> Result<Output, (i32, String)> {
    let usage = |e: String| (EXIT_USAGE, e);
    match cli.command {
        Command::Analyze { graph } => Ok(analyze(&load_graph(&graph).map_err(usage)?)),
        Command::Dual { graph } => {
            let g = load_graph(&graph).map_err(usage)?;
            let d = dual_star(&g).map_err(|e| usage(e.to_string()))?;
            let text = format!("{}\n{}", star_text(&d).unwrap_or_default(), d.to_text());
            Ok(Output { text, json: graph_json(&d), code: EXIT_OK })
        }
        Command::Generate { family, max_vertices, edges_only } => {
            let policy = if edges_only { VertexBlowupPolicy::Never } else { VertexBlowupPolicy::StarPreserving };
            let members = generate_family_with(&FamilySpec::new(family), max_vertices, policy);
            let mut text = format!("{} members of family {family} with at most {max_vertices} vertices\n", members.len());
            for g in &members {
                text.push_str(&format!("{}\n", star_text(g).unwrap_or_else(|| g.canonical_form().to_string())));
            }
            let list: Vec<Value> = members.iter().map(graph_json).collect();
            Ok(Output { text, json: json!({ "family": family.to_string(), "members": list }), code: EXIT_OK })
        }
        Command::Recognize { graph, templates } => {
            let g = load_graph(&graph).map_err(usage)?;
            let t = load_templates(templates.as_deref()).map_err(usage)?;
            let report = recognize_qhd(&g, &t);
            let mut text = String::new();
            for w in &report.warnings {
                text.push_str(&format!("warning: {w}\n"));
            }
            if report.matches.is_empty() {
                text.push_str("no match\n");
            }
            for m in &report.matches {
                let params: Vec<String> = m.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
                text.push_str(&format!("match: {} ({})\n", m.label, params.join(", ")));
            }
            let code = if report.is_match() { EXIT_OK } else { EXIT_MISMATCH };
            Ok(Output { text, json: serde_json::to_value(&report).expect("serializable"), code })
        }
        Command::GChain { p, q } => {
            let e = g_chain(p, q).map_err(|e| usage(e.to_string()))?;
            let framings = e.to_framings();
            let parts: Vec<String> = framings.iter().map(|f| f.to_string()).collect();
            Ok(Output {
                text: format!("({})\n", parts.join(", ")),
                json: json!({ "p": p, "q": q, "framings": framings }),
                code: EXIT_OK,
            })
        }
        Command::VerifyProp { id, k_range, max_nodes } => verify_prop(&id, k_range, max_nodes),
        Command::Curves { action: CurvesCommand::Verify { claims } } => {
            let src = match shipped_claims(&claims) {
                Some(s) => s.to_string(),
                None => std::fs::read_to_string(&claims)
                    .map_err(|e| usage(format!("`{claims}` is neither a shipped claim set nor a readable file: {e}")))?,
            };
            let report = verify_claims(&src).map_err(|e| usage(e.to_string()))?;
            let mut text = String::new();
            for r in &report.results {
                let status = if r.informational {
                    "INFO"
                } else if r.passed {
                    "ok"
                } else {
                    "FAIL"
                };
                text.push_str(&format!(
                    "{status:4} {:12} {}: expected {}, computed {}\n",
                    r.kind, r.subject, r.expected, r.computed
                ));
            }
            for b in &report.bezout {
                text.push_str(&format!(
                    "bezout {}.{}: {} of {} over {}\n",
                    b.curves[0],
                    b.curves[1],
                    b.total,
                    b.expected,
                    b.points.join(",")
                ));
            }
            let code = if report.all_passed() { EXIT_OK } else { EXIT_MISMATCH };
            text.push_str(if code == EXIT_OK { "all claims verified\n" } else { "some claims failed\n" });
            Ok(Output { text, json: serde_json::to_value(&report).expect("serializable"), code })
        }
    }
}

/// Run with the given arguments (including the program name).
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(o) => {
            let _ = match format {
                Format::Text => out.write_all(o.text.as_bytes()),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable")),
            };
            o.code
        }
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
