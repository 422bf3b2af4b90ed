//! Command dispatch for the `cleangraph` binary.
//!
//! Exit codes: 0 success (for `iso`: isomorphic), 1 not isomorphic or a
//! failed verification, 2 usage errors or an inconclusive search, 3 ring
//! spec errors (parse or semantic), 4 size-cap violations.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use cleangraph_core::clean::CleanContext;
use cleangraph_core::error::Error as CoreError;
use cleangraph_core::graph::{shuriken, Graph, ShurikenParams};
use cleangraph_core::iso::{is_isomorphic, DEFAULT_ISO_BUDGET};
use cleangraph_core::ring::build_ring;
use cleangraph_core::suite::{claim_ids, run_all, run_claim, SuiteOptions, VerificationReport};
use cleangraph_core::Caps;

use crate::export::{export_dot, export_graph6};
use crate::parse::parse_ring_spec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ISOMORPHIC: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SPEC_ERROR: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser)]
#[command(
    name = "cleangraph",
    version,
    about = "Clean graphs of finite rings: construction, exports, isomorphism checks, and verification runs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Construct a graph from a ring and print it.
    Build {
        /// Ring spec, e.g. "Z12", "Z3 x Z4", "M2(Z3)", "Z2[x]/(x^2)".
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum)]
        graph: GraphKind,
        /// Shuriken clique-copy count (defaults to |U'|).
        #[arg(long)]
        t: Option<usize>,
        /// Shuriken copy count (defaults to |U|).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        format: OutputFormat,
    },
    /// Decide whether two constructed graphs are isomorphic.
    Iso {
        #[arg(long = "ring-a")]
        ring_a: String,
        #[arg(long = "graph-a", value_enum)]
        graph_a: GraphKind,
        #[arg(long = "ring-b")]
        ring_b: String,
        #[arg(long = "graph-b", value_enum)]
        graph_b: GraphKind,
        /// Search-node budget (default 10^7).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the verification suite and report per-claim results.
    Verify {
        /// Check a single claim id (see `verify --list`-like output on error).
        #[arg(long)]
        claim: Option<String>,
        /// Prime-power bound for the criterion sweep (default 200).
        #[arg(long)]
        bound: Option<u64>,
        /// Write the structured reports to this path as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the element counts of a ring.
    Info {
        #[arg(long)]
        ring: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Cl,
    Cl1,
    Cl2,
    Idem,
    Shuriken,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Dot,
    Graph6,
    Stats,
}

fn core_exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::InvalidSpec(_) | CoreError::Domain(_) | CoreError::OutOfScope(_) => {
            EXIT_SPEC_ERROR
        }
        CoreError::CapExceeded { .. } => EXIT_BUDGET,
        CoreError::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

/// Reads the optional cap override; both the ring-order and vertex caps
/// take the same value.
fn caps_from_env() -> Result<Caps, String> {
    match std::env::var("CLEANGRAPH_CAP") {
        Ok(text) => text
            .trim()
            .parse::<usize>()
            .map(Caps::uniform)
            .map_err(|_| format!("CLEANGRAPH_CAP must be a positive integer, got {text:?}")),
        Err(_) => Ok(Caps::default()),
    }
}

fn build_graph(
    spec_text: &str,
    kind: GraphKind,
    t: Option<usize>,
    n: Option<usize>,
    caps: &Caps,
) -> Result<Graph, (i32, String)> {
    let spec =
        parse_ring_spec(spec_text).map_err(|e| (EXIT_SPEC_ERROR, e.to_string()))?;
    let fail = |e: CoreError| (core_exit_code(&e), e.to_string());
    let ring = build_ring(&spec, caps).map_err(fail)?;
    let ctx = CleanContext::new(&ring, caps).map_err(fail)?;
    match kind {
        GraphKind::Cl => ctx.clean_graph().map_err(fail),
        GraphKind::Cl1 => ctx.cl1().map_err(fail),
        GraphKind::Cl2 => ctx.cl2().map_err(fail),
        GraphKind::Idem => Ok(ctx.idempotent_graph()),
        GraphKind::Shuriken => {
            let params = ShurikenParams {
                t: t.unwrap_or_else(|| ctx.unit_table().involution_count()),
                n: n.unwrap_or_else(|| ctx.unit_table().len()),
                base: ctx.idempotent_graph(),
            };
            let g = shuriken(&params).map_err(fail)?;
            if g.order() > caps.max_vertices {
                let e = CoreError::CapExceeded {
                    what: "vertex count",
                    value: g.order(),
                    cap: caps.max_vertices,
                };
                return Err((core_exit_code(&e), e.to_string()));
            }
            Ok(g)
        }
    }
}

fn print_stats(g: &Graph, out: &mut impl Write) -> std::io::Result<()> {
    let degrees = g.degree_sequence();
    writeln!(out, "vertices: {}", g.order())?;
    writeln!(out, "edges: {}", g.size())?;
    writeln!(out, "min-degree: {}", degrees.first().copied().unwrap_or(0))?;
    writeln!(out, "max-degree: {}", degrees.last().copied().unwrap_or(0))?;
    writeln!(out, "components: {}", g.components().len())
}

fn report_lines(report: &VerificationReport, out: &mut impl Write) -> std::io::Result<()> {
    let millis: u64 = report.instances.iter().map(|i| i.millis).sum();
    writeln!(
        out,
        "{}: {} ({} instances, {} ms)",
        report.claim_id,
        report.suite_verdict,
        report.instances.len(),
        millis
    )?;
    for inst in &report.instances {
        if inst.verdict != cleangraph_core::suite::Verdict::Pass {
            writeln!(out, "  {}: {}", inst.key, inst.verdict)?;
            if let Some(counterexample) = &inst.counterexample {
                writeln!(out, "    counterexample: {counterexample}")?;
            }
        }
    }
    Ok(())
}

pub fn run(args: Vec<String>, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let mut argv = vec!["cleangraph".to_string()];
    argv.extend(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage text; route it to the right
            // stream and keep its exit semantics (0 for --help/--version).
            let rendered = e.render().to_string();
            if e.exit_code() == 0 {
                let _ = write!(out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_USAGE;
        }
    };
    let caps = match caps_from_env() {
        Ok(caps) => caps,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_SPEC_ERROR;
        }
    };

    match cli.command {
        Command::Build {
            ring,
            graph,
            t,
            n,
            format,
        } => {
            let g = match build_graph(&ring, graph, t, n, &caps) {
                Ok(g) => g,
                Err((code, message)) => {
                    let _ = writeln!(err, "error: {message}");
                    return code;
                }
            };
            let result = match format {
                OutputFormat::Dot => write!(out, "{}", export_dot(&g)),
                OutputFormat::Graph6 => writeln!(out, "{}", export_graph6(&g)),
                OutputFormat::Stats => print_stats(&g, out),
            };
            if result.is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Command::Iso {
            ring_a,
            graph_a,
            ring_b,
            graph_b,
            budget,
        } => {
            let a = match build_graph(&ring_a, graph_a, None, None, &caps) {
                Ok(g) => g,
                Err((code, message)) => {
                    let _ = writeln!(err, "error: {message}");
                    return code;
                }
            };
            let b = match build_graph(&ring_b, graph_b, None, None, &caps) {
                Ok(g) => g,
                Err((code, message)) => {
                    let _ = writeln!(err, "error: {message}");
                    return code;
                }
            };
            match is_isomorphic(&a, &b, budget.unwrap_or(DEFAULT_ISO_BUDGET)) {
                Ok(r) if r.isomorphic => {
                    let _ = writeln!(out, "isomorphic (search nodes: {})", r.search_nodes);
                    EXIT_OK
                }
                Ok(r) => {
                    match r.screened_by {
                        Some(screen) => {
                            let _ = writeln!(out, "not isomorphic (screened by {screen})");
                        }
                        None => {
                            let _ = writeln!(
                                out,
                                "not isomorphic (search exhausted, nodes: {})",
                                r.search_nodes
                            );
                        }
                    }
                    EXIT_NOT_ISOMORPHIC
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    core_exit_code(&e)
                }
            }
        }
        Command::Verify { claim, bound, json } => {
            let mut options = SuiteOptions::default();
            options.catalog.caps = caps;
            if let Some(bound) = bound {
                options.prime_power_bound = bound;
            }
            let reports = match claim {
                Some(id) => match run_claim(&id, &options) {
                    Ok(report) => vec![report],
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        let _ = writeln!(err, "known claims: {}", claim_ids().join(", "));
                        return core_exit_code(&e);
                    }
                },
                None => match run_all(&options) {
                    Ok(reports) => reports,
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        return core_exit_code(&e);
                    }
                },
            };
            for report in &reports {
                if report_lines(report, out).is_err() {
                    return EXIT_USAGE;
                }
            }
            let all_pass = reports.iter().all(VerificationReport::passed);
            let _ = writeln!(out, "verdict: {}", if all_pass { "pass" } else { "fail" });
            if let Some(path) = json {
                let payload = match serde_json::to_string_pretty(&reports) {
                    Ok(payload) => payload,
                    Err(e) => {
                        let _ = writeln!(err, "error: failed to serialize reports: {e}");
                        return EXIT_USAGE;
                    }
                };
                if let Err(e) = std::fs::write(&path, payload) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            if all_pass {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Command::Info { ring } => {
            let spec = match parse_ring_spec(&ring) {
                Ok(spec) => spec,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_SPEC_ERROR;
                }
            };
            let built = build_ring(&spec, &caps).and_then(|ring| {
                let ctx = CleanContext::new(&ring, &caps)?;
                Ok((ring, ctx))
            });
            let (ring, ctx) = match built {
                Ok(pair) => pair,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return core_exit_code(&e);
                }
            };
            let idems = ctx.idempotent_table();
            let units = ctx.unit_table();
            let _ = writeln!(out, "ring: {ring}");
            let _ = writeln!(out, "|R|: {}", ring.order());
            let _ = writeln!(out, "|Id|: {}", idems.all().len());
            let _ = writeln!(out, "|U|: {}", units.len());
            let _ = writeln!(out, "|U'|: {}", units.involution_count());
            let o_list: Vec<String> = idems
                .nonzero()
                .iter()
                .map(|&e| format!("{}->{}", e.index(), idems.ortho_count(e).unwrap()))
                .collect();
            let _ = writeln!(out, "O_e: {}", o_list.join(", "));
            EXIT_OK
        }
    }
}
