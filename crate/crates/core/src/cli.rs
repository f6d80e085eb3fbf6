//! Command-line front end. Exit codes: 0 success or pass, 1 sound negative
//! verdict, 2 usage or input error, 3 inconclusive.

use std::io::{Read as _, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::atlas::{
    connected_graphs, count_summary, generate_twin_free_connected, MAX_GENERATION_ORDER,
};
use crate::bicliques::enumerate_bicliques;
use crate::conditions::{check_theorem1, check_theorem1_traced, Verdict};
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, parse_graph6, to_dot, to_graph6, Graph, MAX_VERTICES};
use crate::kb::biclique_graph;
use crate::lab::{self, LabOptions, LabReport, DEFAULT_PREIMAGE_ORDER};
use crate::removal::{analyze_with, remove_degree2, AnalyzeOptions, BicliqueVerdict};
use crate::twins::twin_reduce;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kbgraph",
    version,
    about = "Bicliques, biclique graphs and degree-2 removal on small graphs",
    after_help = INPUT_NOTE
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const INPUT_NOTE: &str = "Graphs are read as graph6 or as an edge list (first line n, then one \
                          \"u v\" per line) and may have at most 64 vertices.";

#[derive(Subcommand, Debug)]
enum Command {
    /// List every biclique as "left | right".
    Bicliques(GraphArgs),
    /// Biclique graph KB(G) with its vertex-to-biclique map.
    Kb(GraphArgs),
    /// False-twin classes and the reduced graph Tw(G).
    Twins(GraphArgs),
    /// Check that every induced P3 lies in a diamond or a gem (exit 1 on failure).
    CheckP3 {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also list a covering witness for every P3.
        #[arg(long)]
        trace: bool,
    },
    /// Build H' with KB(H') isomorphic to KB(H) - q for a degree-2 KB-vertex q.
    RemoveDeg2 {
        #[command(flatten)]
        graph: GraphArgs,
        /// Index of q in KB(H), as listed by `kb`.
        #[arg(long)]
        kb_vertex: usize,
    },
    /// Strip degree-2 vertices looking for sound (non-)membership certificates.
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = DEFAULT_PREIMAGE_ORDER)]
        max_n: usize,
        /// Explore every removal order instead of one greedy chain.
        #[arg(long)]
        all_orders: bool,
    },
    /// Search small twin-free hosts for H with KB(H) isomorphic to G (exit 3 if none).
    Preimage {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = DEFAULT_PREIMAGE_ORDER)]
        max_n: usize,
    },
    /// Generate connected graphs on n vertices up to isomorphism.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        twin_free: bool,
        /// Print counts instead of graphs.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
    },
    /// Reproduce a computational claim as a JSON report.
    Verify {
        #[command(subcommand)]
        claim: VerifyClaim,
    },
    /// Gather evidence on a conjecture as a JSON report (exit 1 on a counterexample).
    Conjecture {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 9)]
        k_max: usize,
        #[arg(long, default_value_t = DEFAULT_PREIMAGE_ORDER)]
        preimage_max_n: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyClaim {
    /// Degree lemma base cases for n = 6 or 7.
    Lemma1 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// KB(C_k) minus any vertex fails the diamond/gem condition.
    Observation1 {
        /// A single k or a range such as 7..10 (inclusive).
        #[arg(long, default_value = "7..10")]
        k: String,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Input file (graph6 or edge list); "-" reads standard input.
    #[arg(value_name = "FILE", conflicts_with_all = ["input", "g6"])]
    file: Option<PathBuf>,
    #[arg(long = "in", value_name = "FILE", conflicts_with = "g6")]
    input: Option<PathBuf>,
    /// Inline graph6 string.
    #[arg(long)]
    g6: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Graph6,
    Dot,
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Parse `argv` (program name first) and execute. Never panics on bad input.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let to_out = !e.use_stderr();
            let text = e.render().to_string();
            let _ = if to_out {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if to_out { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Bicliques(ga) => {
            let g = ga.load()?;
            let bs = enumerate_bicliques(&g)?;
            match ga.format {
                Format::Json => write_json(out, &bs)?,
                Format::Text => {
                    for b in &bs {
                        writeln!(
                            out,
                            "{} | {}",
                            join(b.left().to_vec()),
                            join(b.right().to_vec())
                        )?;
                    }
                }
                f => return unsupported(f, "bicliques"),
            }
            Ok(EXIT_OK)
        }
        Command::Kb(ga) => {
            let g = ga.load()?;
            let kb = biclique_graph(&g)?;
            match ga.format {
                Format::Text => {
                    writeln!(out, "{}", to_graph6(&kb.graph))?;
                    writeln!(out, "{}", serde_json::to_string(&kb.vertex_map()).unwrap())?;
                }
                Format::Json => write_json(
                    out,
                    &json!({ "graph6": to_graph6(&kb.graph), "host_n": kb.host_n, "vertices": kb.vertex_map() }),
                )?,
                Format::Graph6 => writeln!(out, "{}", to_graph6(&kb.graph))?,
                Format::Dot => write!(out, "{}", to_dot(&kb.graph, "KB"))?,
            }
            Ok(EXIT_OK)
        }
        Command::Twins(ga) => {
            let g = ga.load()?;
            let r = twin_reduce(&g);
            match ga.format {
                Format::Text => {
                    for c in &r.partition.classes {
                        writeln!(out, "{}", join(c.clone()))?;
                    }
                    writeln!(out, "reduced: {}", to_graph6(&r.graph))?;
                }
                Format::Json => write_json(
                    out,
                    &json!({ "classes": r.partition.classes, "reduced": to_graph6(&r.graph),
                             "old_to_new": r.relabeling.old_to_new }),
                )?,
                Format::Graph6 => writeln!(out, "{}", to_graph6(&r.graph))?,
                Format::Dot => write!(out, "{}", to_dot(&r.graph, "Tw"))?,
            }
            Ok(EXIT_OK)
        }
        Command::CheckP3 { graph, trace } => {
            let g = graph.load()?;
            let r = if trace {
                check_theorem1_traced(&g)
            } else {
                check_theorem1(&g)
            };
            match graph.format {
                Format::Json => write_json(out, &r)?,
                Format::Text => match r.witness {
                    None => writeln!(out, "pass")?,
                    Some(p) => writeln!(out, "fail {}-{}-{}", p.x, p.y, p.z)?,
                },
                f => return unsupported(f, "check-p3"),
            }
            if trace && graph.format == Format::Text {
                for (p, c) in &r.containment {
                    writeln!(
                        out,
                        "{}-{}-{}: {}",
                        p.x,
                        p.y,
                        p.z,
                        serde_json::to_string(c).unwrap()
                    )?;
                }
            }
            Ok(if r.verdict == Verdict::Pass {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::RemoveDeg2 { graph, kb_vertex } => {
            let h = graph.load()?;
            let r = remove_degree2(&h, kb_vertex)?;
            match graph.format {
                Format::Json => write_json(out, &r)?,
                Format::Graph6 => writeln!(out, "{}", to_graph6(&r.h_prime))?,
                Format::Dot => write!(out, "{}", to_dot(&r.h_prime, "H"))?,
                Format::Text => {
                    writeln!(out, "h_prime: {}", to_graph6(&r.h_prime))?;
                    writeln!(
                        out,
                        "method: {}",
                        serde_json::to_string(&r.method).unwrap().trim_matches('"')
                    )?;
                    match &r.plan {
                        Some(p) => writeln!(out, "plan: {}", serde_json::to_string(p).unwrap())?,
                        None => writeln!(out, "plan: none (preimage search)")?,
                    }
                    for a in &r.rejected {
                        writeln!(out, "rejected: {}", serde_json::to_string(a).unwrap())?;
                    }
                    writeln!(out, "reduced_host: {}", to_graph6(&r.reduced_host))?;
                    writeln!(out, "isomorphism: {:?}", r.isomorphism)?;
                    writeln!(out, "verified: {}", r.verified)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Analyze {
            graph,
            max_n,
            all_orders,
        } => {
            let g = graph.load()?;
            let a = analyze_with(
                &g,
                max_n,
                AnalyzeOptions {
                    exhaustive_orders: all_orders,
                },
            )?;
            match graph.format {
                Format::Text => {
                    for (i, s) in a.chain.iter().enumerate() {
                        let note = match (&s.violation, &s.preimage) {
                            (Some(p), _) => format!("violation {}-{}-{}", p.x, p.y, p.z),
                            (None, Some(h)) => format!("preimage {}", to_graph6(h)),
                            _ => "-".into(),
                        };
                        writeln!(out, "{i}: {} {note}", to_graph6(&s.graph))?;
                    }
                    writeln!(out, "verdict: {}", verdict_name(a.verdict))?;
                }
                _ => write_json(out, &a)?,
            }
            Ok(match a.verdict {
                BicliqueVerdict::IsBiclique => EXIT_OK,
                BicliqueVerdict::NotBiclique => EXIT_NEGATIVE,
                BicliqueVerdict::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Command::Preimage { graph, max_n } => {
            let g = graph.load()?;
            let found = lab::find_preimage(&g, max_n)?;
            match graph.format {
                Format::Json => write_json(
                    out,
                    &json!({ "max_n": max_n, "preimage": found.as_ref().map(to_graph6) }),
                )?,
                Format::Dot => {
                    if let Some(h) = &found {
                        write!(out, "{}", to_dot(h, "H"))?
                    }
                }
                _ => writeln!(
                    out,
                    "{}",
                    found
                        .as_ref()
                        .map(to_graph6)
                        .unwrap_or_else(|| "unknown".into())
                )?,
            }
            Ok(if found.is_some() {
                EXIT_OK
            } else {
                EXIT_INCONCLUSIVE
            })
        }
        Command::Gen {
            n,
            twin_free,
            count,
            format,
        } => {
            if n == 0 || n > MAX_GENERATION_ORDER {
                return Err(Failure(
                    EXIT_USAGE,
                    format!("--n must be in 1..={MAX_GENERATION_ORDER}"),
                ));
            }
            if count {
                let c = count_summary(n)?;
                match format {
                    Format::Json => write_json(out, &c)?,
                    _ => writeln!(
                        out,
                        "n={} connected={} twin_free={}",
                        c.n, c.connected, c.twin_free
                    )?,
                }
                return Ok(EXIT_OK);
            }
            let graphs = if twin_free {
                generate_twin_free_connected(n)?
            } else {
                connected_graphs(n)?.as_ref().clone()
            };
            match format {
                Format::Graph6 | Format::Text => {
                    for g in &graphs {
                        writeln!(out, "{}", to_graph6(g))?;
                    }
                }
                Format::Json => write_json(out, &graphs.iter().map(to_graph6).collect::<Vec<_>>())?,
                Format::Dot => {
                    for (i, g) in graphs.iter().enumerate() {
                        write!(out, "{}", to_dot(g, &format!("G{i}")))?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { claim } => match claim {
            VerifyClaim::Lemma1 { n, report } => {
                let r = lab::verify_lemma1_base(n, report.options(DEFAULT_PREIMAGE_ORDER))?;
                let holds = n != 7 || r.count("below_three") == 0;
                report.emit(out, &r)?;
                Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
            }
            VerifyClaim::Observation1 { k, report } => {
                let ks = parse_k_range(&k)?;
                let r = lab::verify_observation1(&ks, report.options(DEFAULT_PREIMAGE_ORDER))?;
                report.emit(out, &r)?;
                Ok(if r.count("passing") == 0 {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                })
            }
        },
        Command::Conjecture {
            which,
            max_n,
            k_max,
            preimage_max_n,
            report,
        } => {
            let opts = report.options(preimage_max_n);
            let r = match which {
                1 => lab::test_conjecture1(max_n, opts)?,
                2 => lab::test_conjecture2(k_max, max_n, opts)?,
                _ => lab::test_conjecture3(max_n, opts)?,
            };
            report.emit(out, &r)?;
            Ok(if r.count("counterexamples") == 0 {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

impl GraphArgs {
    fn load(&self) -> std::result::Result<Graph, Failure> {
        let text = match (&self.file, &self.input, &self.g6) {
            (_, _, Some(s)) => s.clone(),
            (Some(p), None, None) | (None, Some(p), None) => read_source(p)?,
            (None, None, None) => {
                return Err(Failure(
                    EXIT_USAGE,
                    "no input graph: give FILE, --in FILE or --g6 STRING".into(),
                ))
            }
            (Some(_), Some(_), None) => unreachable!("clap rejects two sources"),
        };
        Ok(parse_graph_text(&text)?)
    }
}

fn read_source(p: &PathBuf) -> std::result::Result<String, Failure> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(p)
        .map_err(|e| Failure(EXIT_USAGE, format!("cannot read {}: {e}", p.display())))
}

/// graph6 unless the first token is a decimal number, which graph6 never
/// starts with.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::MalformedGraph6("empty input".into()))?;
    let token = first.split_whitespace().next().unwrap_or("");
    if token.bytes().all(|b| b.is_ascii_digit()) {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

fn parse_k_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("bad k range {s:?}; use K or K1..K2"));
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![parse(s)?]),
    }
}

impl ReportArgs {
    fn options(&self, preimage_max_n: usize) -> LabOptions {
        LabOptions {
            jobs: self.jobs,
            preimage_max_n,
        }
    }

    fn emit(&self, out: &mut dyn Write, r: &LabReport) -> std::result::Result<(), Failure> {
        let text = serde_json::to_string_pretty(r).expect("reports serialize");
        if let Some(path) = &self.out {
            std::fs::write(path, format!("{text}\n")).map_err(|e| {
                Failure(EXIT_USAGE, format!("cannot write {}: {e}", path.display()))
            })?;
        }
        writeln!(out, "{text}")?;
        Ok(())
    }
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, v: &T) -> std::io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    )
}

fn unsupported(f: Format, cmd: &str) -> CliResult {
    Err(Failure(
        EXIT_USAGE,
        format!(
            "{cmd} does not support --format {}",
            f.to_possible_value().unwrap().get_name()
        ),
    ))
}

fn verdict_name(v: BicliqueVerdict) -> &'static str {
    match v {
        BicliqueVerdict::NotBiclique => "not-biclique",
        BicliqueVerdict::IsBiclique => "is-biclique",
        BicliqueVerdict::Inconclusive => "inconclusive",
    }
}

fn join(vs: Vec<usize>) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

const _: () = assert!(MAX_VERTICES == 64, "help text states the vertex cap");
