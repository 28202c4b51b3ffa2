//! Batch front door. Exit codes: 0 yes/success, 1 no, 2 unknown,
//! 3 input error, 4 internal budget fault.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use raag::certificates::{Certificate, ValidationReport};
use raag::certio::{parse_certificate, serialize_certificate};
use raag::classify::{
    degree_classes, linear_forest, tree_measures, LinearForestOutcome,
};
use raag::constructions::{
    counterexample, double, flatten_tree, pm_construction, subdivide, CounterexampleError, Sign,
};
use raag::decision::{
    decide, decide_path_cycle, kr2_mcg_embeds, Budgets, Decision, Evidence, Kind, Obstruction,
    Verdict,
};
use raag::graph::{find_full_embedding, Graph, Search, DEFAULT_SOLVER_BUDGET};
use raag::textio::{is_builder_spec, parse_graph, parse_spec, serialize_graph, GraphDocument};

#[derive(Parser)]
#[command(name = "raag", version, about = "Exact embeddability engine for graph-defined groups")]
struct Cli {
    #[arg(long, global = true, default_value_t = DEFAULT_SOLVER_BUDGET)]
    solver_budget: u64,
    #[arg(long, global = true, default_value_t = 8)]
    forest_cap: usize,
    #[arg(long, global = true, default_value_t = 4)]
    double_depth: usize,
    #[arg(long, global = true, default_value_t = 64)]
    vertex_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the emitted certificate, if any, to this file.
    #[arg(long, global = true)]
    cert_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Path,
    Cycle,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the group of the first graph embeds in the second.
    Decide { lhs: String, rhs: String },
    /// Closed-form answer for path/cycle defined groups.
    Table {
        lhs_kind: KindArg,
        m: usize,
        rhs_kind: KindArg,
        n: usize,
    },
    /// For a graph that is not a linear forest, build a host whose group
    /// contains it while the graph itself is not a full subgraph.
    Counterexample { g: String },
    /// Rewrite a tree to max degree <= 3 with a group embedding certificate.
    Flatten { tree: String },
    /// Subdivide the edge {u, w}.
    Subdivide { g: String, u: usize, w: usize },
    /// Double along the star of v.
    Double { g: String, v: usize },
    /// Apply a (+) or (-) construction at u with link vertices w1, w2.
    Pm {
        g: String,
        sign: SignArg,
        u: usize,
        w1: usize,
        w2: usize,
    },
    /// Print the complement.
    Complement { g: String },
    /// Exact full-subgraph search.
    Embed { pattern: String, host: String },
    /// Linear-forest structure, degree classes, tree measures.
    Classify { g: String },
    /// Check a certificate file.
    Verify { certificate_file: PathBuf },
    /// Whether the group of the complete r-partite graph with parts of
    /// size 2 embeds in the mapping class group of the genus-g surface
    /// with n punctures.
    Mcg { g: usize, n: usize, r: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_BUDGET_FAULT: u8 = 4;

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn load_graph(spec: &str) -> Result<Graph, String> {
    if is_builder_spec(spec) {
        return parse_spec(spec).map_err(|e| e.to_string());
    }
    let text = fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    let doc = parse_graph(&text).map_err(|e| format!("{spec}: {e}"))?;
    doc.to_graph().map_err(|e| format!("{spec}: {e}"))
}

fn graph_block(label: &str, g: &Graph) -> String {
    format!(
        "begin {label}\n{}end {label}\n",
        serialize_graph(&GraphDocument::from_graph(label, g))
    )
}

fn write_cert_out(path: &Option<PathBuf>, cert: Option<&Certificate>) -> Result<(), ExitCode> {
    if let Some(path) = path {
        match cert {
            Some(cert) => fs::write(path, serialize_certificate(cert))
                .map_err(|e| input_error(format!("{}: {e}", path.display())))?,
            None => {
                return Err(input_error("no certificate was emitted for --cert-out"));
            }
        }
    }
    Ok(())
}

fn verdict_exit(v: Verdict) -> ExitCode {
    ExitCode::from(match v {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::Unknown => EXIT_UNKNOWN,
    })
}

fn render_decision(d: &Decision, format: Format) -> String {
    let verdict = match d.verdict {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    };
    match format {
        Format::Text => {
            let mut out = format!("verdict: {verdict}\nprovenance: {}\n", d.provenance.as_str());
            if let Some(c) = &d.citation {
                out.push_str(&format!("citation: {c}\n"));
            }
            match &d.evidence {
                Evidence::Certificate(cert) => {
                    out.push_str(&format!("certificate: {} step(s)\n", cert.steps.len()));
                }
                Evidence::Obstruction(Obstruction::LinearForest {
                    forest,
                    nonembed_in_rhs,
                    ..
                }) => {
                    out.push_str(&format!(
                        "obstruction: induced linear forest on {} vertex/vertices absent from \
                         the target ({} search nodes, exhaustive)\n",
                        forest.order(),
                        nonembed_in_rhs.search_nodes
                    ));
                }
                Evidence::Obstruction(Obstruction::TableEntry { clause, .. }) => {
                    out.push_str(&format!("obstruction: table clause {clause}\n"));
                }
                Evidence::Budget(b) => {
                    out.push_str(&format!(
                        "budgets: solver {} forest-cap {} double-depth {} vertex-cap {}\n",
                        b.solver_budget, b.forest_cap, b.double_depth, b.vertex_cap
                    ));
                }
                Evidence::Citation(c) => {
                    out.push_str(&format!("evidence: literature, {c}\n"));
                }
            }
            out
        }
        Format::Structured => {
            let mut out = format!("verdict {verdict}\nprovenance {}\n", d.provenance.as_str());
            if let Some(c) = &d.citation {
                out.push_str(&format!("citation {c}\n"));
            }
            match &d.evidence {
                Evidence::Certificate(cert) => {
                    out.push_str("begin certificate-payload\n");
                    out.push_str(&serialize_certificate(cert));
                    out.push_str("end certificate-payload\n");
                }
                Evidence::Obstruction(Obstruction::LinearForest {
                    forest,
                    witness_in_lhs,
                    nonembed_in_rhs,
                }) => {
                    out.push_str("begin obstruction\nkind linear-forest\n");
                    out.push_str(&graph_block("forest", forest));
                    for (i, j) in witness_in_lhs.map.iter().enumerate() {
                        out.push_str(&format!("m {i} {j}\n"));
                    }
                    out.push_str(&format!(
                        "search-nodes {}\nexhaustive {}\nend obstruction\n",
                        nonembed_in_rhs.search_nodes, nonembed_in_rhs.exhaustive
                    ));
                }
                Evidence::Obstruction(Obstruction::TableEntry {
                    lhs_kind,
                    m,
                    rhs_kind,
                    n,
                    clause,
                }) => {
                    out.push_str(&format!(
                        "begin obstruction\nkind table-entry\nlhs {} {m}\nrhs {} {n}\n\
                         clause {clause}\nend obstruction\n",
                        lhs_kind.as_str(),
                        rhs_kind.as_str()
                    ));
                }
                Evidence::Budget(b) => {
                    out.push_str(&format!(
                        "begin budgets\nsolver-budget {}\nforest-cap {}\ndouble-depth {}\n\
                         vertex-cap {}\nend budgets\n",
                        b.solver_budget, b.forest_cap, b.double_depth, b.vertex_cap
                    ));
                }
                Evidence::Citation(c) => {
                    out.push_str(&format!("evidence-citation {c}\n"));
                }
            }
            out
        }
    }
}

fn decision_certificate(d: &Decision) -> Option<&Certificate> {
    match &d.evidence {
        Evidence::Certificate(c) => Some(c),
        _ => None,
    }
}

fn emit_graph(name: &str, g: &Graph, format: Format) -> String {
    match format {
        Format::Text => serialize_graph(&GraphDocument::from_graph(name, g)),
        Format::Structured => graph_block(name, g),
    }
}

fn run() -> Result<ExitCode, ExitCode> {
    let cli = Cli::try_parse().map_err(|e| {
        use clap::error::ErrorKind;
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_YES,
            _ => EXIT_INPUT,
        };
        let _ = e.print();
        ExitCode::from(code)
    })?;
    let budgets = Budgets {
        solver_budget: cli.solver_budget,
        forest_cap: cli.forest_cap,
        double_depth: cli.double_depth,
        vertex_cap: cli.vertex_cap,
    };
    let format = cli.format;
    let load = |spec: &str| load_graph(spec).map_err(input_error);

    match &cli.command {
        Command::Decide { lhs, rhs } => {
            let d = decide(&load(lhs)?, &load(rhs)?, &budgets);
            print!("{}", render_decision(&d, format));
            write_cert_out(&cli.cert_out, decision_certificate(&d))?;
            Ok(verdict_exit(d.verdict))
        }
        Command::Table {
            lhs_kind,
            m,
            rhs_kind,
            n,
        } => {
            let to_kind = |k: &KindArg| match k {
                KindArg::Path => Kind::Path,
                KindArg::Cycle => Kind::Cycle,
            };
            let d = decide_path_cycle(to_kind(lhs_kind), *m, to_kind(rhs_kind), *n)
                .map_err(input_error)?;
            print!("{}", render_decision(&d, format));
            write_cert_out(&cli.cert_out, decision_certificate(&d))?;
            Ok(verdict_exit(d.verdict))
        }
        Command::Counterexample { g } => {
            let g = load(g)?;
            let result = counterexample(&g, budgets.solver_budget).map_err(|e| match e {
                CounterexampleError::InputIsLinearForest => input_error(e),
                _ => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_BUDGET_FAULT)
                }
            })?;
            print!("{}", emit_graph("host", &result.gamma, format));
            if format == Format::Structured {
                print!(
                    "search-nodes {}\nexhaustive {}\n",
                    result.report.search_nodes, result.report.exhaustive
                );
                print!("begin certificate-payload\n{}end certificate-payload\n",
                    serialize_certificate(&result.certificate));
            } else {
                println!(
                    "not a full subgraph: confirmed exhaustively in {} search nodes; \
                     group embedding certified in {} step(s)",
                    result.report.search_nodes,
                    result.certificate.steps.len()
                );
            }
            write_cert_out(&cli.cert_out, Some(&result.certificate))?;
            Ok(ExitCode::from(EXIT_YES))
        }
        Command::Flatten { tree } => {
            let t = load(tree)?;
            let (flat, cert) = flatten_tree(&t).map_err(input_error)?;
            print!("{}", emit_graph("flattened", &flat, format));
            if format == Format::Structured {
                print!("begin certificate-payload\n{}end certificate-payload\n",
                    serialize_certificate(&cert));
            } else {
                println!(
                    "max degree {} -> {}; order {} -> {}; certified in {} step(s)",
                    t.max_degree(),
                    flat.max_degree(),
                    t.order(),
                    flat.order(),
                    cert.steps.len()
                );
            }
            write_cert_out(&cli.cert_out, Some(&cert))?;
            Ok(ExitCode::from(EXIT_YES))
        }
        Command::Subdivide { g, u, w } => {
            let g = load(g)?;
            let (sub, fresh) = subdivide(&g, *u, *w).map_err(input_error)?;
            print!("{}", emit_graph("subdivided", &sub, format));
            if format == Format::Structured {
                println!("fresh-vertex {fresh}");
            } else {
                println!("fresh vertex: {fresh}");
            }
            write_cert_out(&cli.cert_out, None)?;
            Ok(ExitCode::from(EXIT_YES))
        }
        Command::Double { g, v } => {
            let g = load(g)?;
            let d = double(&g, *v).map_err(input_error)?;
            print!("{}", emit_graph("double", &d.graph, format));
            let copies: Vec<String> = d
                .off_star
                .iter()
                .zip(d.off_star.iter().map(|&x| d.copy_injection[x]))
                .map(|(&x, y)| format!("{x}->{y}"))
                .collect();
            if format == Format::Structured {
                println!("copies {}", copies.join(" "));
            } else {
                println!("copied vertices: {}", copies.join(" "));
            }
            write_cert_out(&cli.cert_out, None)?;
            Ok(ExitCode::from(EXIT_YES))
        }
        Command::Pm { g, sign, u, w1, w2 } => {
            let g = load(g)?;
            let sign = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            let result = pm_construction(&g, *u, *w1, *w2, sign).map_err(input_error)?;
            print!("{}", emit_graph("result", &result.graph, format));
            if format == Format::Structured {
                println!("new-vertex {}", result.new_vertex);
            } else {
                println!("new vertex: {}", result.new_vertex);
            }
            write_cert_out(&cli.cert_out, None)?;
            Ok(ExitCode::from(EXIT_YES))
        }
        Command::Complement { g } => {
            let g = load(g)?;
            print!("{}", emit_graph("complement", &g.complement(), format));
            write_cert_out(&cli.cert_out, None)?;
            Ok(ExitCode::from(EXIT_YES))
        }
        Command::Embed { pattern, host } => {
            let pattern = load(pattern)?;
            let host = load(host)?;
            match find_full_embedding(&pattern, &host, budgets.solver_budget) {
                Search::Found(w) => {
                    if format == Format::Structured {
                        println!("found true");
                        for (i, j) in w.map.iter().enumerate() {
                            println!("m {i} {j}");
                        }
                    } else {
                        let pairs: Vec<String> = w
                            .map
                            .iter()
                            .enumerate()
                            .map(|(i, j)| format!("{i}->{j}"))
                            .collect();
                        println!("full embedding: {}", pairs.join(" "));
                    }
                    Ok(ExitCode::from(EXIT_YES))
                }
                Search::Absent { nodes } => {
                    if format == Format::Structured {
                        println!("found false\nsearch-nodes {nodes}\nexhaustive true");
                    } else {
                        println!("no full embedding (exhaustive, {nodes} search nodes)");
                    }
                    Ok(ExitCode::from(EXIT_NO))
                }
                Search::OutOfBudget { nodes } => {
                    if format == Format::Structured {
                        println!("found unknown\nsearch-nodes {nodes}\nexhaustive false");
                    } else {
                        println!("search budget exhausted after {nodes} nodes");
                    }
                    Ok(ExitCode::from(EXIT_UNKNOWN))
                }
            }
        }
        Command::Classify { g } => {
            let g = load(g)?;
            let mut out = String::new();
            match linear_forest(&g) {
                LinearForestOutcome::Forest(d) => {
                    let lens: Vec<String> =
                        d.path_lengths.iter().map(|l| l.to_string()).collect();
                    if format == Format::Structured {
                        out.push_str(&format!(
                            "linear-forest true\npath-lengths {}\n",
                            lens.join(" ")
                        ));
                    } else {
                        out.push_str(&format!(
                            "linear forest: yes (path orders {})\n",
                            lens.join(" ")
                        ));
                    }
                }
                LinearForestOutcome::Refusal(r) => {
                    if format == Format::Structured {
                        out.push_str(&format!("linear-forest false\nrefusal {r:?}\n"));
                    } else {
                        out.push_str(&format!("linear forest: no ({r:?})\n"));
                    }
                }
            }
            let dc = degree_classes(&g);
            let tm = tree_measures(&g);
            if format == Format::Structured {
                out.push_str(&format!(
                    "max-degree {}\nv3-edgeless {}\nv3-complete {}\nv3-star {}\n\
                     tree {}\nm {}\ncondition-c {}\n",
                    g.max_degree(),
                    dc.v3_edgeless.len(),
                    dc.v3_complete.len(),
                    dc.v3_star.len(),
                    tm.is_tree,
                    tm.m,
                    tm.condition_c
                ));
            } else {
                out.push_str(&format!(
                    "max degree: {}\ndegree-3 vertices with edgeless link: {}, complete link: \
                     {}, star link: {}\ntree: {} (m = {}, condition C: {})\n",
                    g.max_degree(),
                    dc.v3_edgeless.len(),
                    dc.v3_complete.len(),
                    dc.v3_star.len(),
                    tm.is_tree,
                    tm.m,
                    tm.condition_c
                ));
            }
            print!("{out}");
            write_cert_out(&cli.cert_out, None)?;
            Ok(ExitCode::from(EXIT_YES))
        }
        Command::Verify { certificate_file } => {
            let text = fs::read_to_string(certificate_file)
                .map_err(|e| input_error(format!("{}: {e}", certificate_file.display())))?;
            let cert = parse_certificate(&text).map_err(input_error)?;
            match cert.validate() {
                ValidationReport::Ok => {
                    if format == Format::Structured {
                        println!("valid true");
                    } else {
                        println!("certificate is valid");
                    }
                    Ok(ExitCode::from(EXIT_YES))
                }
                ValidationReport::Failed { step, reason } => {
                    if format == Format::Structured {
                        println!("valid false\nfailed-step {step}\nreason {reason}");
                    } else {
                        println!("certificate is invalid at step {step}: {reason}");
                    }
                    Ok(ExitCode::from(EXIT_NO))
                }
            }
        }
        Command::Mcg { g, n, r } => {
            let (yes, graph) = kr2_mcg_embeds(*g, *n, *r).map_err(input_error)?;
            print!("{}", emit_graph("pattern", &graph, format));
            if format == Format::Structured {
                println!("embeds {yes}");
            } else {
                println!("embeds: {yes}");
            }
            write_cert_out(&cli.cert_out, None)?;
            Ok(ExitCode::from(if yes { EXIT_YES } else { EXIT_NO }))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(code) => code,
    }
}
