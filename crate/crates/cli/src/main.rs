//! Command-line front end: insertion algorithms, equivalence moves and
//! closures, canonical bases, W-graphs with molecule/cell reports, and the
//! exhaustive verification suites.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when a verification
//! suite reports failures.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gelfand_core::coxeter::{CoxType, Model, SignedPerm};
use gelfand_core::equivalence::{
    admissible_closure, admissible_moves, plactic_closure, plactic_move_candidates,
};
use gelfand_core::hecke::{ChoicePolicy, GelfandModule};
use gelfand_core::insertion::{bitableau_correspondence, bitableau_prime, domino_correspondence};
use gelfand_core::verify::run_suite;
use gelfand_core::wgraph::build_graph;

#[derive(Parser)]
#[command(
    name = "gelfand",
    about = "Signed-permutation insertion algorithms, Gelfand Hecke modules and their W-graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Domino,
    Bitableau,
    BitableauPrime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    B,
    D,
}

impl From<TypeArg> for CoxType {
    fn from(t: TypeArg) -> CoxType {
        match t {
            TypeArg::B => CoxType::B,
            TypeArg::D => CoxType::D,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Row,
    Col,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Row => Model::M,
            ModelArg::Col => Model::N,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Relation {
    Plactic,
    Admissible,
}

#[derive(Args)]
struct GraphArgs {
    /// Coxeter type of the acting group.
    #[arg(long = "type", value_enum, ignore_case = true)]
    cox_type: TypeArg,
    /// Rank n of the acting group (vertices live at rank 2n).
    #[arg(long)]
    rank: usize,
    /// Which Gelfand model: row (ascending embedding) or col (descending).
    #[arg(long, value_enum, default_value = "row", ignore_case = true)]
    model: ModelArg,
}

#[derive(Subcommand)]
enum Command {
    /// Run an insertion algorithm on a signed permutation.
    Insert {
        /// One-line notation ("-3,4,-1,2") or cycles ("(1,3)(2,5)").
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Staircase core rank for domino insertion.
        #[arg(long, default_value = "0")]
        core: usize,
        #[arg(long, value_enum, default_value = "domino")]
        algo: Algo,
        /// Output format; defaults to $GELFAND_FORMAT or ascii.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// List the applicable equivalence moves of a word.
    Moves {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "0")]
        core: usize,
        #[arg(long, value_enum, default_value = "plactic")]
        relation: Relation,
    },
    /// Emit the full equivalence class of a word as JSON.
    Closure {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "0")]
        core: usize,
        #[arg(long, value_enum, default_value = "plactic")]
        relation: Relation,
    },
    /// Dump the canonical-basis columns of a Gelfand module as JSON.
    Basis(GraphArgs),
    /// Emit a Gelfand W-graph in DOT or JSON form.
    Wgraph {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "dot")]
        out: WgraphOut,
    },
    /// Partition the W-graph vertices into molecules.
    Molecules(GraphArgs),
    /// Partition the W-graph vertices into cells.
    Cells(GraphArgs),
    /// Run a verification suite and report violations as JSON.
    Verify {
        /// One of: descents, bijection, plactic, vogan, recording,
        /// admissible, bitableau-prime, module-axioms, basis, edges,
        /// length, all.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "0")]
        core: usize,
        /// Thread count for the exhaustive scans.
        #[arg(long)]
        jobs: Option<usize>,
        /// Allow group-wide scans above rank 5.
        #[arg(long, default_value = "false")]
        allow_large: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WgraphOut {
    Dot,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, anything else is a
            // usage error.
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> gelfand_core::Result<ExitCode> {
    match cli.command {
        Command::Insert {
            word,
            core,
            algo,
            format,
        } => {
            let w = SignedPerm::parse(&word, None)?;
            let format = format.unwrap_or_else(default_format);
            match algo {
                Algo::Domino => {
                    let (p, q) = domino_correspondence(&w, core);
                    match format {
                        Format::Ascii => {
                            println!("P:\n{p}");
                            println!("Q:\n{q}");
                        }
                        Format::Json => print_json(&json!({
                            "algo": "domino",
                            "word": w.to_string(),
                            "core": core,
                            "p": p,
                            "q": q,
                        })),
                    }
                }
                Algo::Bitableau => {
                    let (p, q) = bitableau_correspondence(&w);
                    match format {
                        Format::Ascii => {
                            println!("P:\n{p}");
                            println!("Q:\n{q}");
                        }
                        Format::Json => print_json(&json!({
                            "algo": "bitableau",
                            "word": w.to_string(),
                            "p": {"plus": p.plus, "minus": p.minus},
                            "q": {"plus": q.plus, "minus": q.minus},
                        })),
                    }
                }
                Algo::BitableauPrime => {
                    let (p, q) = bitableau_prime(&w)?;
                    match format {
                        Format::Ascii => {
                            println!("P:\n{p}");
                            println!("Q:\n{q}");
                        }
                        Format::Json => print_json(&json!({
                            "algo": "bitableau-prime",
                            "word": w.to_string(),
                            "p": {"plus": p.plus, "minus": p.minus},
                            "q": {"plus": q.plus, "minus": q.minus},
                        })),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Moves {
            word,
            core,
            relation,
        } => {
            let w = SignedPerm::parse(&word, None)?;
            let (moves, rejected) = match relation {
                Relation::Plactic => plactic_move_candidates(&w, core),
                Relation::Admissible => (admissible_moves(&w), vec![]),
            };
            let as_json = |list: &[(gelfand_core::equivalence::MoveLabel, SignedPerm)]| {
                list.iter()
                    .map(|(l, v)| json!({"label": l.to_string(), "to": v.to_string()}))
                    .collect::<Vec<_>>()
            };
            print_json(&json!({
                "word": w.to_string(),
                "core": core,
                "moves": as_json(&moves),
                "rejected": as_json(&rejected),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Closure {
            word,
            core,
            relation,
        } => {
            let w = SignedPerm::parse(&word, None)?;
            let class: Vec<String> = match relation {
                Relation::Plactic => plactic_closure(&w, core),
                Relation::Admissible => admissible_closure(&w),
            }
            .into_iter()
            .map(|v| v.to_string())
            .collect();
            print_json(&json!({
                "word": w.to_string(),
                "core": core,
                "size": class.len(),
                "class": class,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis(args) => {
            let module = GelfandModule::new(args.rank, args.cox_type.into(), args.model.into())?;
            let cb = module.canonical_basis(ChoicePolicy::SmallestDescent)?;
            let vertices: Vec<String> = cb.vertices().iter().map(|z| z.to_string()).collect();
            let mut columns = BTreeMap::new();
            for (zi, z) in cb.vertices().iter().enumerate() {
                let mut col = BTreeMap::new();
                for (yi, y) in cb.vertices().iter().enumerate() {
                    let entry = cb.entry(yi, zi);
                    if !entry.is_zero() {
                        col.insert(y.to_string(), entry.to_string());
                    }
                }
                columns.insert(z.to_string(), col);
            }
            print_json(&json!({
                "type": format!("{:?}", CoxType::from(args.cox_type)),
                "rank": args.rank,
                "model": Model::from(args.model).to_string(),
                "vertices": vertices,
                "columns": columns,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Wgraph { graph, out } => {
            let g = build_graph(graph.rank, graph.cox_type.into(), graph.model.into())?;
            match out {
                WgraphOut::Dot => print!("{}", g.to_dot()),
                WgraphOut::Json => print_json(&serde_json::to_value(g.to_dto()).unwrap()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Molecules(args) => {
            print_partition(&args, true)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cells(args) => {
            print_partition(&args, false)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            rank,
            core,
            jobs,
            allow_large,
        } => {
            if rank > 5 && !allow_large {
                return Err(gelfand_core::Error::Domain(format!(
                    "rank {rank} exceeds the desk-scale cap of 5; pass --allow-large to override"
                )));
            }
            if let Some(k) = jobs {
                // Scans assemble their results deterministically, so the
                // thread count only affects wall time.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
            let reports = run_suite(&suite, rank, core)?;
            let all_pass = reports.iter().all(|r| r.passed());
            print_json(&serde_json::to_value(&reports).unwrap());
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}

fn default_format() -> Format {
    match std::env::var("GELFAND_FORMAT").as_deref() {
        Ok("json") => Format::Json,
        _ => Format::Ascii,
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_partition(args: &GraphArgs, molecules: bool) -> gelfand_core::Result<()> {
    let g = build_graph(args.rank, args.cox_type.into(), args.model.into())?;
    let parts = if molecules { g.molecules() } else { g.cells() };
    let named: Vec<Vec<String>> = parts
        .iter()
        .map(|p| p.iter().map(|&i| g.vertices[i].to_string()).collect())
        .collect();
    print_json(&json!({
        "type": format!("{:?}", g.cox),
        "rank": g.rank,
        "model": g.model.to_string(),
        "kind": if molecules { "molecules" } else { "cells" },
        "count": named.len(),
        "partition": named,
    }));
    Ok(())
}
