//! `circflow`: constructions, solvers and certificate checks from the command line.
//!
//! Exit codes: 0 verified, 1 refuted, 2 inconclusive or budget exhausted,
//! 3 usage or input error.

mod demo;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use circflow::certificates::{reverify, Certificate, Verdict};
use circflow::colorings::{
    chromatic_index, class_property, flower_plus_m_coloring, mp_prime_coloring, mp_tilde_coloring, verify_coloring,
    write_coloring, Budget, ClassWhich,
};
use circflow::families::{
    blanusa_chain, complete_bipartite, complete_graph, flower_snark, mp_graph, petersen, prism, MpStage,
};
use circflow::flows::{
    bipartite_regular_flow, build_blanusa_chain_flow, build_flower_flow, check_flow, circular_flow_number, parse_flow,
    write_flow, FlowError, PhiOptions, DEFAULT_EDGE_CAP,
};
use circflow::graph::{
    from_graph6, parse_graph, parse_matching_file, write_graph, write_matching, Matching, Multigraph,
};
use circflow::rational::{format_rational, parse_rational};
use circflow::valuations::{asymptotic_bound, check_balanced, parse_valuation};

type Error = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    name = "circflow",
    version,
    about = "Circular flows and edge-colorings of regular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Petersen,
    Complete,
    CompleteBipartite,
    Prism,
    Flower,
    BlanusaChain,
    Mp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Base,
    Prime,
    Tilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlowFamily {
    Flower,
    BlanusaChain,
    Bipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    MpPrime,
    MpTilde,
    FlowerPlusM,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Class1,
    Class2,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member in the graph text format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Order parameter: `m` of K_m, K_{m,m} and prisms.
        #[arg(long)]
        m: Option<usize>,
        /// Index of J_{2n+1} or of the chain G_n.
        #[arg(long)]
        n: Option<usize>,
        /// Odd p >= 3 for M_p.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, value_enum, default_value = "base")]
        stage: Stage,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the family's perfect matching.
        #[arg(long)]
        matching_out: Option<PathBuf>,
    },
    /// Exact circular flow number by orientation enumeration.
    FlowNumber {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        cap: usize,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check a flow file against a graph.
    VerifyFlow {
        graph: PathBuf,
        flow: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Build the explicit flow of a construction.
    BuildFlow {
        #[arg(long, value_enum)]
        family: FlowFamily,
        #[arg(long)]
        n: Option<usize>,
        /// Bipartite input graph, (2t+1)-regular.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Exact chromatic index with refutations below it.
    ChromaticIndex {
        graph: PathBuf,
        /// Search budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Build and verify the coloring of a construction.
    Color {
        #[arg(long, value_enum)]
        construction: Construction,
        /// `t` with p = 2t + 1 for the M_p colorings.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Perfect matching of J_{2n+1}.
        #[arg(long)]
        matching: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Decide the M-class-1 or M-class-2 property at the given t values.
    ClassProperty {
        graph: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        t: Vec<usize>,
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check that a valuation is balanced.
    CheckBalanced {
        graph: PathBuf,
        valuation: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// `2 + 2(r-2)/(r + (2t-3)(r-2))` exactly.
    AsymptoticBound {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: String,
    },
    /// Regenerate every artifact and print the claim report.
    PaperDemo {
        #[arg(long, value_enum, default_value = "all")]
        scope: demo::Scope,
        #[arg(long, default_value = "demo-out")]
        out_dir: PathBuf,
        /// Budget in seconds for each exhaustive search.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Re-check a certificate against its graph.
    Reverify { cert: PathBuf, graph: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 3 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(v) => ExitCode::from(v.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn budget(seconds: Option<f64>) -> Budget {
    seconds.map_or_else(Budget::unlimited, Budget::seconds)
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// Graph text format, or graph6 when the header is absent.
pub fn read_graph(path: &Path) -> Result<Multigraph, Error> {
    let text = read(path)?;
    if text.trim_start().starts_with("circflow-graph") {
        Ok(parse_graph(&text)?)
    } else {
        Ok(from_graph6(text.trim())?)
    }
}

fn read_matching(path: &Path) -> Result<Matching, Error> {
    Ok(parse_matching_file(&read(path)?)?)
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_cert(path: Option<&Path>, cert: &Certificate) -> Result<(), Error> {
    if let Some(p) = path {
        fs::write(p, cert.to_json()).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Error> {
    v.ok_or_else(|| format!("missing --{flag}").into())
}

fn run(command: Command) -> Result<Verdict, Error> {
    match command {
        Command::Construct {
            family,
            m,
            n,
            p,
            stage,
            out,
            matching_out,
        } => {
            let (g, matching) = match family {
                Family::Petersen => (petersen(), None),
                Family::Complete => (complete_graph(need(m, "m")?)?, None),
                Family::CompleteBipartite => (complete_bipartite(need(m, "m")?)?, None),
                Family::Prism => (prism(need(m, "m")?)?, None),
                Family::Flower => {
                    let n = need(n, "n")?;
                    let ff = build_flower_flow(n)?;
                    (flower_snark(n)?.graph, Some(ff.matching))
                }
                Family::BlanusaChain => {
                    let c = blanusa_chain(need(n, "n")?)?;
                    (c.graph, Some(c.matching))
                }
                Family::Mp => {
                    let stage = match stage {
                        Stage::Base => MpStage::Base,
                        Stage::Prime => MpStage::Prime,
                        Stage::Tilde => MpStage::Tilde,
                    };
                    (mp_graph(need(p, "p")?, stage)?.graph, None)
                }
            };
            emit(out.as_deref(), &write_graph(&g))?;
            if let Some(path) = matching_out {
                let m = matching.ok_or("this family has no distinguished perfect matching")?;
                emit(Some(&path), &write_matching(&m))?;
            }
            Ok(Verdict::Verified)
        }
        Command::FlowNumber { graph, cap, cert } => {
            let g = read_graph(&graph)?;
            match circular_flow_number(&g, PhiOptions { edge_cap: cap }) {
                Ok(fnum) => {
                    println!("phi_c = {}", format_rational(&fnum.value));
                    write_cert(cert.as_deref(), &Certificate::phi_c_value(&g, &fnum))?;
                    Ok(Verdict::Verified)
                }
                Err(e @ (FlowError::CapExceeded { .. } | FlowError::TooManyVertices(_))) => {
                    println!("inconclusive: {e}");
                    Ok(Verdict::Inconclusive)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::VerifyFlow { graph, flow, cert } => {
            let g = read_graph(&graph)?;
            let f = parse_flow(&g, &read(&flow)?)?;
            let violation = check_flow(&g, &f)?;
            let c = Certificate::flow_valid(&g, &f, violation.as_ref());
            match &violation {
                None => println!("valid {}-flow", format_rational(&f.r)),
                Some(v) => println!("invalid: {v}"),
            }
            write_cert(cert.as_deref(), &c)?;
            Ok(c.verdict)
        }
        Command::BuildFlow {
            family,
            n,
            graph,
            t,
            out,
            graph_out,
            cert,
        } => {
            let (g, f) = match family {
                FlowFamily::Flower => {
                    let ff = build_flower_flow(need(n, "n")?)?;
                    (ff.flower.graph, ff.flow)
                }
                FlowFamily::BlanusaChain => {
                    let bf = build_blanusa_chain_flow(need(n, "n")?)?;
                    (bf.chain.graph, bf.flow)
                }
                FlowFamily::Bipartite => {
                    let g = read_graph(&need(graph, "graph")?)?;
                    let f = bipartite_regular_flow(&g, need(t, "t")?)?;
                    (g, f)
                }
            };
            let violation = check_flow(&g, &f)?;
            let c = Certificate::flow_valid(&g, &f, violation.as_ref());
            emit(out.as_deref(), &write_flow(&g, &f))?;
            if let Some(p) = graph_out {
                emit(Some(&p), &write_graph(&g))?;
            }
            write_cert(cert.as_deref(), &c)?;
            Ok(c.verdict)
        }
        Command::ChromaticIndex { graph, budget: b, cert } => {
            let g = read_graph(&graph)?;
            let ci = chromatic_index(&g, &budget(b))?;
            match ci.exact() {
                Some(k) => println!("chromatic index = {k}"),
                None => println!("chromatic index in [{}, {}]", ci.lower, ci.upper),
            }
            let c = Certificate::chromatic_index(&g, &ci);
            write_cert(cert.as_deref(), &c)?;
            Ok(c.verdict)
        }
        Command::Color {
            construction,
            t,
            n,
            matching,
            out,
            graph_out,
            cert,
        } => {
            let (g, c) = match construction {
                Construction::MpPrime => {
                    let mc = mp_prime_coloring(need(t, "t")?)?;
                    (mc.graph, mc.coloring)
                }
                Construction::MpTilde => mp_tilde_coloring(need(t, "t")?)?,
                Construction::FlowerPlusM => {
                    let m = read_matching(&need(matching, "matching")?)?;
                    flower_plus_m_coloring(need(n, "n")?, &m)?
                }
            };
            let violation = verify_coloring(&g, &c)?;
            let certificate = Certificate::coloring_valid(&g, &c, violation.as_ref());
            match &violation {
                None => eprintln!("verified {} {}-coloring", c.mode.as_str(), c.palette),
                Some(v) => eprintln!("invalid: {v}"),
            }
            emit(out.as_deref(), &write_coloring(&g, &c))?;
            if let Some(p) = graph_out {
                emit(Some(&p), &write_graph(&g))?;
            }
            write_cert(cert.as_deref(), &certificate)?;
            Ok(certificate.verdict)
        }
        Command::ClassProperty {
            graph,
            matching,
            which,
            t,
            budget: b,
            cert,
        } => {
            let g = read_graph(&graph)?;
            let m = read_matching(&matching)?;
            let which = match which {
                Which::Class1 => ClassWhich::Class1,
                Which::Class2 => ClassWhich::Class2,
            };
            let c = class_property(&g, &m, which, &t, &budget(b))?;
            println!("{}: {}", c.get("results").unwrap_or(""), c.verdict);
            write_cert(cert.as_deref(), &c)?;
            Ok(c.verdict)
        }
        Command::CheckBalanced { graph, valuation, cert } => {
            let g = read_graph(&graph)?;
            let omega = parse_valuation(&g, &read(&valuation)?)?;
            let outcome = check_balanced(&g, &omega)?;
            let c = Certificate::balanced(&g, &omega, &outcome);
            println!(
                "{}",
                if outcome.is_balanced() {
                    "balanced"
                } else {
                    "not balanced"
                }
            );
            for n in &c.notes {
                println!("{n}");
            }
            write_cert(cert.as_deref(), &c)?;
            Ok(c.verdict)
        }
        Command::AsymptoticBound { t, r } => {
            let r = parse_rational(&r).ok_or_else(|| format!("bad rational `{r}`"))?;
            println!("{}", format_rational(&asymptotic_bound(r, t)?));
            Ok(Verdict::Verified)
        }
        Command::PaperDemo {
            scope,
            out_dir,
            budget: b,
        } => demo::run(scope, &out_dir, &budget(b)),
        Command::Reverify { cert, graph } => {
            let c = Certificate::from_json(&read(&cert)?)?;
            let g = read_graph(&graph)?;
            let rv = reverify(&c, &g)?;
            println!("{}: {} ({})", if rv.ok { "ok" } else { "FAILED" }, c.verdict, rv.detail);
            Ok(if rv.ok { c.verdict } else { Verdict::Refuted })
        }
    }
}
