//! `treedegree`: counts, enumerations, bijection codecs and verification
//! sweeps for vertex outdegrees in plane and k-ary trees.
//!
//! Exit status: 0 on success, 1 when a verification sweep finds a mismatch,
//! 2 on usage or validation errors.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use treedegree::exact_math;
use treedegree::guard::GUARD_ENV;
use treedegree::kary_trees;
use treedegree::plane_trees;
use treedegree::verify::{self, Suite, VerifyConfig};
use treedegree::{
    BigCount, Composition, Guards, KaryTree, MarkedKaryTree, MarkedPlaneTree, PlaneTree, SubsetPair,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "treedegree", version, about = "Vertex outdegree counts in plane and k-ary trees")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form count of vertices with a given outdegree.
    Count {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        p: Params,
    },
    /// List every tree with a given number of edges.
    Enumerate {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        p: Params,
    },
    /// Encode a tree (or marked tree, or composition) as a word.
    Encode {
        #[arg(value_enum)]
        codec: Codec,
        #[command(flatten)]
        p: Params,
    },
    /// Decode a word back into a tree (or marked tree, or composition).
    Decode {
        #[arg(value_enum)]
        codec: Codec,
        #[command(flatten)]
        p: Params,
    },
    /// Compare every closed form and bijection against brute force.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        p: Params,
    },
    /// Count matrix indexed by outdegree i and edge count n.
    Table {
        #[arg(value_enum, default_value_t = Family::Plane)]
        family: Family,
        #[command(flatten)]
        p: Params,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Plane,
    Kary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Codec {
    /// Plane tree <-> unit composition of preorder outdegrees.
    Plane,
    /// Marked plane tree <-> n-part composition of n - i.
    PlanePair,
    /// Marked k-ary tree <-> composition over {0, k}.
    KaryPair,
    /// Composition over {0, k} <-> subset pair (X, Y).
    Subsets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Theorem1,
    Theorem2,
    Identity1,
    Fine,
    Lagrange,
    Bijections,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Theorem1 => vec![Suite::PlaneCounts],
            SuiteArg::Theorem2 => vec![Suite::KaryCounts],
            SuiteArg::Identity1 => vec![Suite::SequenceIdentity],
            SuiteArg::Fine => vec![Suite::Fine],
            SuiteArg::Lagrange => vec![Suite::Lagrange],
            SuiteArg::Bijections => vec![Suite::Bijections],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }

    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Args, Debug, Default)]
struct Params {
    /// Number of edges.
    #[arg(short = 'n', long)]
    edges: Option<u64>,
    /// Arity k (for verify: the largest arity swept).
    #[arg(short = 'k', long)]
    arity: Option<usize>,
    /// Outdegree i.
    #[arg(short = 'i', long)]
    outdegree: Option<u64>,
    /// Largest edge count for verify and table.
    #[arg(long)]
    max_edges: Option<u64>,
    /// Composition, e.g. "(3,2,0)".
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// Tree in text form; a marked tree may be given as "<tree>@<mark>".
    #[arg(long, allow_hyphen_values = true)]
    tree: Option<String>,
    /// 1-based preorder position of the marked vertex.
    #[arg(long)]
    mark: Option<usize>,
    /// Subset X, comma separated.
    #[arg(long = "X", allow_hyphen_values = true)]
    x: Option<String>,
    /// Subset Y, comma separated.
    #[arg(long = "Y", allow_hyphen_values = true)]
    y: Option<String>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<treedegree::Error> for Failure {
    fn from(e: treedegree::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::Usage(format!("missing required flag {flag}")))
}

fn required_str<'a>(value: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    value.as_deref().ok_or_else(|| Failure::Usage(format!("missing required flag {flag}")))
}

fn arity(p: &Params) -> CliResult<usize> {
    let k = required(p.arity, "--arity")?;
    if k == 0 {
        return usage("--arity must be at least 1");
    }
    Ok(k)
}

fn word(p: &Params) -> CliResult<Composition> {
    Ok(required_str(&p.word, "--word")?.parse()?)
}

fn subset(s: &str) -> CliResult<Vec<u64>> {
    let inner = s.trim().trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("invalid subset element {t:?}"))))
        .collect()
}

/// Tree text and mark, from `--tree "<t>@<m>"` or `--tree <t> --mark <m>`.
fn marked_parts(p: &Params) -> CliResult<(String, usize)> {
    let tree = required_str(&p.tree, "--tree")?;
    match (tree.rsplit_once('@'), p.mark) {
        (Some(_), Some(_)) => usage("give the mark either in --tree or with --mark, not both"),
        (Some((t, m)), None) => {
            let m = m.trim().parse().map_err(|_| Failure::Usage(format!("invalid mark {m:?}")))?;
            Ok((t.to_string(), m))
        }
        (None, Some(m)) => Ok((tree.to_string(), m)),
        (None, None) => usage("missing mark: use --mark or <tree>@<mark>"),
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

fn to_json(doc: &Value) -> String {
    serde_json::to_string_pretty(doc).expect("JSON values always serialize") + "\n"
}

fn guards() -> CliResult<Guards> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => Guards::parse(&v).map_err(Failure::from),
        Err(_) => Ok(Guards::default()),
    }
}

fn count(format: Format, family: Family, p: &Params) -> CliResult<String> {
    let n = required(p.edges, "--edges")?;
    let i = required(p.outdegree, "--outdegree")?;
    let (k, value) = match family {
        Family::Plane => (None, exact_math::count_plane_outdegree(n, i)),
        Family::Kary => {
            let k = arity(p)?;
            (Some(k), exact_math::count_kary_outdegree(n, k as u64, i))
        }
    };
    let k_str = k.map(|k| k.to_string());
    Ok(match format {
        Format::Text => format!("{value}\n"),
        Format::Csv => format!("n,k,i,count\n{n},{},{i},{value}\n", k_str.unwrap_or_default()),
        Format::Json => to_json(&envelope(
            "count",
            json!({
                "family": family_name(family),
                "n": n.to_string(),
                "k": k_str,
                "i": i.to_string(),
                "count": value.to_string(),
            }),
        )),
    })
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Plane => "plane",
        Family::Kary => "kary",
    }
}

fn enumerate(format: Format, family: Family, p: &Params) -> CliResult<String> {
    let n = required(p.edges, "--edges")?;
    let guards = guards()?;
    let (k, trees): (Option<usize>, Vec<String>) = match family {
        Family::Plane => (
            None,
            plane_trees::enumerate_plane_trees_with_guard(n, &guards)?
                .map(|t| t.to_string())
                .collect(),
        ),
        Family::Kary => {
            let k = arity(p)?;
            (
                Some(k),
                kary_trees::enumerate_kary_trees_with_guard(k, n, &guards)?
                    .map(|t| t.to_string())
                    .collect(),
            )
        }
    };
    Ok(match format {
        Format::Text => trees.iter().map(|t| format!("{t}\n")).collect(),
        Format::Csv => {
            let mut out = String::from("index,tree\n");
            for (idx, t) in trees.iter().enumerate() {
                let _ = writeln!(out, "{},\"{t}\"", idx + 1);
            }
            out
        }
        Format::Json => to_json(&envelope(
            "enumerate",
            json!({
                "family": family_name(family),
                "n": n.to_string(),
                "k": k.map(|k| k.to_string()),
                "count": trees.len().to_string(),
                "trees": trees,
            }),
        )),
    })
}

/// A codec result: the primary text output plus fields for JSON.
struct Coded {
    output: String,
    fields: Value,
}

fn encode(codec: Codec, p: &Params) -> CliResult<Coded> {
    match codec {
        Codec::Plane => {
            let tree: PlaneTree = required_str(&p.tree, "--tree")?.parse()?;
            let w = tree.preorder_outdegrees();
            Ok(Coded {
                output: w.to_string(),
                fields: json!({ "tree": tree.to_string(), "word": w.to_string(),
                                "n": tree.edge_count().to_string() }),
            })
        }
        Codec::PlanePair => {
            let (t, mark) = marked_parts(p)?;
            let m = MarkedPlaneTree::new(t.parse()?, mark)?;
            let w = m.bar_delta_encode();
            Ok(Coded {
                output: w.to_string(),
                fields: json!({
                    "tree": m.to_string(),
                    "word": w.to_string(),
                    "n": m.tree().edge_count().to_string(),
                    "i": m.marked_outdegree().to_string(),
                    "decomposition": w.fundamental_decomposition().to_string(),
                }),
            })
        }
        Codec::KaryPair => {
            let (t, mark) = marked_parts(p)?;
            let tree: KaryTree = t.parse()?;
            if let Some(k) = p.arity {
                if k != tree.arity() {
                    return usage(format!("--arity {k} does not match the tree's arity {}", tree.arity()));
                }
            }
            let m = MarkedKaryTree::new(tree, mark)?;
            let w = m.to_composition();
            Ok(Coded {
                output: w.to_string(),
                fields: json!({
                    "tree": m.to_string(),
                    "word": w.to_string(),
                    "n": m.tree().edge_count().to_string(),
                    "k": m.tree().arity().to_string(),
                    "i": m.marked_outdegree().to_string(),
                    "decomposition": w.fundamental_decomposition().to_string(),
                }),
            })
        }
        Codec::Subsets => {
            let w = word(p)?;
            let k = arity(p)?;
            let n = required(p.edges, "--edges")?;
            let pair = SubsetPair::from_composition(&w, k, n)?;
            Ok(Coded {
                output: pair.to_json(),
                fields: json!({
                    "word": w.to_string(),
                    "n": n.to_string(),
                    "k": k.to_string(),
                    "i": pair.outdegree().to_string(),
                    "X": pair.x(),
                    "Y": pair.y(),
                }),
            })
        }
    }
}

fn decode(codec: Codec, p: &Params) -> CliResult<Coded> {
    match codec {
        Codec::Plane if p.outdegree.is_none() => {
            let w = word(p)?;
            let tree = PlaneTree::from_outdegrees(&w)?;
            Ok(Coded {
                output: tree.to_string(),
                fields: json!({ "word": w.to_string(), "tree": tree.to_string(),
                                "n": tree.edge_count().to_string() }),
            })
        }
        Codec::Plane | Codec::PlanePair => {
            let w = word(p)?;
            let i = required(p.outdegree, "--outdegree")?;
            let m = MarkedPlaneTree::bar_delta_decode(&w, i)?;
            Ok(Coded {
                output: m.to_string(),
                fields: json!({
                    "word": w.to_string(),
                    "tree": m.to_string(),
                    "n": w.len().to_string(),
                    "i": i.to_string(),
                }),
            })
        }
        Codec::KaryPair => {
            let w = word(p)?;
            let k = arity(p)?;
            let n = required(p.edges, "--edges")?;
            let i = match p.outdegree {
                Some(i) => i,
                None => SubsetPair::from_composition(&w, k, n)?.outdegree(),
            };
            let m = MarkedKaryTree::from_composition(&w, k, n, i)?;
            Ok(Coded {
                output: m.to_string(),
                fields: json!({
                    "word": w.to_string(),
                    "tree": m.to_string(),
                    "n": n.to_string(),
                    "k": k.to_string(),
                    "i": i.to_string(),
                }),
            })
        }
        Codec::Subsets => {
            let k = arity(p)?;
            let n = required(p.edges, "--edges")?;
            let x = subset(required_str(&p.x, "--X")?)?;
            let y = subset(required_str(&p.y, "--Y")?)?;
            let pair = SubsetPair::new(k, n, x, y)?;
            let w = pair.to_composition()?;
            Ok(Coded {
                output: w.to_string(),
                fields: json!({
                    "n": n.to_string(),
                    "k": k.to_string(),
                    "i": pair.outdegree().to_string(),
                    "X": pair.x(),
                    "Y": pair.y(),
                    "word": w.to_string(),
                }),
            })
        }
    }
}

fn codec_name(codec: Codec) -> &'static str {
    match codec {
        Codec::Plane => "plane",
        Codec::PlanePair => "plane-pair",
        Codec::KaryPair => "kary-pair",
        Codec::Subsets => "subsets",
    }
}

fn render_codec(format: Format, command: &str, codec: Codec, coded: Coded) -> String {
    match format {
        Format::Text => format!("{}\n", coded.output),
        Format::Csv => format!("output\n\"{}\"\n", coded.output.replace('"', "\"\"")),
        Format::Json => {
            let mut body = json!({ "codec": codec_name(codec), "output": coded.output });
            if let (Value::Object(b), Value::Object(f)) = (&mut body, coded.fields) {
                b.extend(f);
            }
            to_json(&envelope(command, body))
        }
    }
}

fn run_verify(format: Format, suite: SuiteArg, p: &Params) -> CliResult<String> {
    let guards = guards()?;
    let max_n = p.max_edges.or(p.edges).unwrap_or(8);
    let max_k = p.arity.unwrap_or(3);
    if max_n > guards.plane_edges {
        return usage(format!(
            "--max-edges {max_n} exceeds the plane enumeration guard {} (set {GUARD_ENV})",
            guards.plane_edges
        ));
    }
    let report = verify::verify(&suite.suites(), &VerifyConfig::new(max_n, max_k).with_guards(guards));
    let out = match format {
        Format::Text => format!("{report}\n"),
        Format::Csv => {
            let mut out = String::from("check,range,cells,passed,counterexample\n");
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "\"{}\",\"{}\",{},{},\"{}\"",
                    c.name,
                    c.range,
                    c.cells,
                    c.passed,
                    c.counterexample.as_deref().unwrap_or("").replace('"', "\"\"")
                );
            }
            out
        }
        Format::Json => to_json(&envelope(
            "verify",
            json!({
                "suite": suite.name(),
                "max_edges": max_n.to_string(),
                "max_arity": max_k.to_string(),
                "passed": report.passed(),
                "checks": report.checks,
            }),
        )),
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Mismatch(out))
    }
}

fn table(format: Format, family: Family, p: &Params) -> CliResult<String> {
    let max_n = p.max_edges.or(p.edges).unwrap_or(8);
    let k = match family {
        Family::Plane => None,
        Family::Kary => Some(arity(p)?),
    };
    let max_i = match k {
        None => max_n,
        Some(k) => k as u64,
    };
    let cell = |n: u64, i: u64| -> BigCount {
        match k {
            None => exact_math::count_plane_outdegree(n, i),
            Some(k) => exact_math::count_kary_outdegree(n, k as u64, i),
        }
    };
    let rows: Vec<Vec<BigCount>> = (0..=max_i).map(|i| (1..=max_n).map(|n| cell(n, i)).collect()).collect();
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("i");
            for n in 1..=max_n {
                let _ = write!(out, ",{n}");
            }
            out.push('\n');
            for (i, row) in rows.iter().enumerate() {
                out.push_str(&i.to_string());
                for v in row {
                    let _ = write!(out, ",{v}");
                }
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let strings: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
            let width = strings.iter().flatten().map(String::len).max().unwrap_or(1).max(max_n.to_string().len());
            let label = max_i.to_string().len().max(3);
            let mut out = format!("{:>label$}", "i\\n");
            for n in 1..=max_n {
                let _ = write!(out, " {n:>width$}");
            }
            out.push('\n');
            for (i, row) in strings.iter().enumerate() {
                let _ = write!(out, "{i:>label$}");
                for v in row {
                    let _ = write!(out, " {v:>width$}");
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let k_str = k.map(|k| k.to_string());
            let cells: Vec<Value> = (1..=max_n)
                .flat_map(|n| (0..=max_i).map(move |i| (n, i)))
                .map(|(n, i)| {
                    json!({
                        "n": n.to_string(),
                        "k": k_str,
                        "i": i.to_string(),
                        "count": rows[i as usize][n as usize - 1].to_string(),
                    })
                })
                .collect();
            to_json(&envelope(
                "table",
                json!({
                    "family": family_name(family),
                    "k": k.map(|k| k.to_string()),
                    "max_edges": max_n.to_string(),
                    "cells": cells,
                }),
            ))
        }
    })
}

fn run(cli: &Cli) -> CliResult<String> {
    let format = cli.format;
    match &cli.command {
        Command::Count { family, p } => count(format, *family, p),
        Command::Enumerate { family, p } => enumerate(format, *family, p),
        Command::Encode { codec, p } => Ok(render_codec(format, "encode", *codec, encode(*codec, p)?)),
        Command::Decode { codec, p } => Ok(render_codec(format, "decode", *codec, decode(*codec, p)?)),
        Command::Verify { suite, p } => run_verify(format, *suite, p),
        Command::Table { family, p } => table(format, *family, p),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
