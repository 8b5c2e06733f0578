use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stratikit::commands::{self, Outcome};
use stratikit::corpus;
use stratikit::homset::{FiniteCategory, SetFunctor, Side, StSide};
use stratikit::io::{
    digest, parse_value, typed, ArrangementInput, CategoryInput, DecompositionInput, FunctorInput, InputError,
    PreorderInput, ProductInput, TopologyInput,
};
use stratikit::order::Poset;
use stratikit::report::{Check, RunReport};

#[derive(Parser)]
#[command(name = "stratikit", version, about = "Finite spaces, decompositions, arrangements and hom-set stratifications")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// JSON input file; standard input when absent
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the command's order as Graphviz DOT to this path
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Emit every strict pair in DOT output instead of covering pairs
    #[arg(long, global = true)]
    full_relation: bool,
    /// Read orders and open families with the down-set convention
    #[arg(long, global = true)]
    dual: bool,
    /// Seed for property suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random cases for property suites
    #[arg(long, global = true, default_value_t = 200)]
    cases: usize,
}

#[derive(Subcommand)]
enum Group {
    /// Finite topologies and specialization preorders
    #[command(subcommand)]
    Topology(TopologyCmd),
    /// Decompositions of finite spaces
    #[command(subcommand)]
    Decomp(DecompCmd),
    /// Rational hyperplane arrangements
    #[command(subcommand)]
    Arrangement(ArrangementCmd),
    /// Hom-set preorders of finite categories
    #[command(subcommand)]
    Homset(HomsetCmd),
    /// Order complexes and Betti numbers
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Built-in golden examples
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand)]
enum TopologyCmd {
    Check,
    ToPreorder,
    FromPreorder,
    Closure {
        /// Comma-separated point labels
        #[arg(long, default_value = "")]
        subset: String,
    },
    Suite,
}

#[derive(Subcommand)]
enum DecompCmd {
    Analyze,
    Quotient,
    Validate,
    Product,
    Suite,
}

#[derive(Subcommand)]
enum ArrangementCmd {
    Faces,
    Poset,
    CheckOb,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    R,
    L,
    Lr,
}

#[derive(Clone, Copy, ValueEnum)]
enum StSideArg {
    RCovariant,
    LContravariant,
}

#[derive(Subcommand)]
enum HomsetCmd {
    Preorder {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "lr")]
        side: SideArg,
    },
    Stratify {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "lr")]
        side: SideArg,
    },
    FunctorCheck {
        #[arg(long)]
        anchor: String,
        #[arg(long, value_enum, default_value = "r-covariant")]
        side: StSideArg,
    },
    Yoneda {
        #[arg(long)]
        anchor: String,
        /// Contravariant functor JSON; the representable functor of the anchor when absent
        #[arg(long)]
        functor: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HomologyCmd {
    OrderComplex,
    Betti {
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    Run { name: String },
    RunAll,
}

fn read_json(path: Option<&Path>) -> Result<Value, InputError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| InputError::new("$", format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| InputError::new("$", e))?;
            s
        }
    };
    parse_value(&text)
}

fn command_error(e: commands::CommandError) -> InputError {
    InputError::new("$", e)
}

fn object(c: &FiniteCategory, name: &str, flag: &str) -> Result<usize, InputError> {
    c.object_index(name).map_err(|e| InputError::new(flag, e))
}

struct Run {
    command: String,
    inputs: Value,
    outcome: Outcome,
}

fn dispatch(cli: &Cli) -> Result<Run, InputError> {
    let common = &cli.common;
    let input = || read_json(common.input.as_deref());
    let suite_inputs = json!({ "seed": common.seed, "cases": common.cases });
    let (command, inputs, outcome) = match &cli.group {
        Group::Topology(cmd) => match cmd {
            TopologyCmd::Suite => ("topology suite", suite_inputs, commands::topology_suite(common.seed, common.cases)),
            TopologyCmd::FromPreorder => {
                let v = input()?;
                let p = typed::<PreorderInput>(&v)?.build("", common.dual)?;
                ("topology from-preorder", v, commands::topology_from_preorder(&p))
            }
            _ => {
                let v = input()?;
                let t = typed::<TopologyInput>(&v)?.build("", common.dual)?;
                match cmd {
                    TopologyCmd::Check => ("topology check", v, commands::topology_check(&t)),
                    TopologyCmd::ToPreorder => ("topology to-preorder", v, commands::topology_to_preorder(&t)),
                    TopologyCmd::Closure { subset } => {
                        let members: Vec<&str> = subset.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                        let s = t.subset(&members).map_err(|e| InputError::new("--subset", e))?;
                        ("topology closure", v, commands::topology_closure(&t, &s))
                    }
                    _ => unreachable!("handled above"),
                }
            }
        },
        Group::Decomp(cmd) => match cmd {
            DecompCmd::Suite => {
                ("decomp suite", suite_inputs, commands::decomp_suite(common.seed, common.cases).map_err(command_error)?)
            }
            DecompCmd::Product => {
                let v = input()?;
                let p: ProductInput = typed(&v)?;
                let factors = p
                    .factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.build(&format!("factors[{i}]"), common.dual))
                    .collect::<Result<Vec<_>, _>>()?;
                ("decomp product", v, commands::decomp_product(&factors).map_err(command_error)?)
            }
            _ => {
                let v = input()?;
                let d = typed::<DecompositionInput>(&v)?.build("", common.dual)?;
                let (name, o) = match cmd {
                    DecompCmd::Analyze => ("decomp analyze", commands::decomp_analyze(&d)),
                    DecompCmd::Quotient => ("decomp quotient", commands::decomp_quotient(&d)),
                    DecompCmd::Validate => ("decomp validate", commands::decomp_validate(&d)),
                    _ => unreachable!("handled above"),
                };
                (name, v, o.map_err(command_error)?)
            }
        },
        Group::Arrangement(cmd) => {
            let v = input()?;
            let a = typed::<ArrangementInput>(&v)?.build()?;
            let (name, o) = match cmd {
                ArrangementCmd::Faces => ("arrangement faces", commands::arrangement_faces(&a)),
                ArrangementCmd::Poset => ("arrangement poset", commands::arrangement_poset(&a)),
                ArrangementCmd::CheckOb => ("arrangement check-ob", commands::arrangement_check_ob(&a)),
            };
            let mut o = o.map_err(command_error)?;
            if common.dual {
                o.dot = o.dot.map(|p| p.dual());
            }
            (name, v, o)
        }
        Group::Homset(cmd) => {
            let v = input()?;
            let c = typed::<CategoryInput>(&v)?.build("")?;
            let side = |s: SideArg| match s {
                SideArg::R => Side::R,
                SideArg::L => Side::L,
                SideArg::Lr => Side::LR,
            };
            match cmd {
                HomsetCmd::Preorder { source, target, side: s } => {
                    let (x, y) = (object(&c, source, "--source")?, object(&c, target, "--target")?);
                    ("homset preorder", v, commands::homset_preorder(&c, x, y, side(*s)).map_err(command_error)?)
                }
                HomsetCmd::Stratify { source, target, side: s } => {
                    let (x, y) = (object(&c, source, "--source")?, object(&c, target, "--target")?);
                    ("homset stratify", v, commands::homset_stratify(&c, x, y, side(*s)).map_err(command_error)?)
                }
                HomsetCmd::FunctorCheck { anchor, side: s } => {
                    let a = object(&c, anchor, "--anchor")?;
                    let s = match s {
                        StSideArg::RCovariant => StSide::RCovariant,
                        StSideArg::LContravariant => StSide::LContravariant,
                    };
                    ("homset functor-check", v, commands::homset_functor_check(&c, a, s).map_err(command_error)?)
                }
                HomsetCmd::Yoneda { anchor, functor } => {
                    let a = object(&c, anchor, "--anchor")?;
                    let (f, fv) = match functor {
                        Some(path) => {
                            let fv = read_json(Some(path))?;
                            (typed::<FunctorInput>(&fv)?.build(&c, "")?, fv)
                        }
                        None => (SetFunctor::representable(&c, a), Value::Null),
                    };
                    let inputs = json!({ "category": v, "functor": fv });
                    ("homset yoneda", inputs, commands::homset_yoneda(&c, &f, a).map_err(command_error)?)
                }
            }
        }
        Group::Homology(cmd) => {
            let v = input()?;
            let p = typed::<PreorderInput>(&v)?.build("", common.dual)?;
            let p = Poset::try_from(p).map_err(|e| InputError::new("pairs", e))?;
            let (name, max_dim) = match cmd {
                HomologyCmd::OrderComplex => ("homology order-complex", None),
                HomologyCmd::Betti { max_dim } => ("homology betti", *max_dim),
            };
            (name, v, commands::homology_report(&p, max_dim).map_err(command_error)?)
        }
        Group::Corpus(cmd) => {
            let corpus_err = |e: corpus::CorpusError| InputError::new("$", e);
            match cmd {
                CorpusCmd::List => {
                    let cases = corpus::cases().map_err(corpus_err)?;
                    let list: Vec<Value> = cases
                        .iter()
                        .map(|c| json!({ "name": c.name, "kind": c.kind, "provenance": c.provenance, "note": c.note }))
                        .collect();
                    ("corpus list", Value::Null, Outcome { results: json!(list), checks: Vec::new(), dot: None })
                }
                CorpusCmd::Run { name } => {
                    let case = corpus::case(name).map_err(|e| InputError::new("NAME", e))?;
                    let o = corpus::run(&case).map_err(corpus_err)?;
                    let results = json!({ "provenance": o.provenance, "note": o.note, "results": o.results });
                    let inputs = json!({ "input": case.input, "expected": case.expected });
                    ("corpus run", inputs, Outcome { results, checks: o.checks, dot: None })
                }
                CorpusCmd::RunAll => {
                    let mut results = Vec::new();
                    let mut checks = Vec::new();
                    for case in corpus::cases().map_err(corpus_err)? {
                        let o = corpus::run(&case).map_err(corpus_err)?;
                        results.push(json!({ "name": o.name, "provenance": o.provenance, "pass": o.all_pass() }));
                        checks.extend(
                            o.checks.into_iter().map(|c| Check { name: format!("{}: {}", o.name, c.name), ..c }),
                        );
                    }
                    ("corpus run-all", Value::Null, Outcome { results: json!(results), checks, dot: None })
                }
            }
        }
    };
    Ok(Run { command: command.to_owned(), inputs, outcome })
}

fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match dispatch(&cli) {
        Ok(run) => run,
        Err(e) => {
            let body = json!({ "error": e.message, "schema_path": e.schema_path });
            emit(&body);
            return ExitCode::from(2);
        }
    };
    if let (Some(path), Some(p)) = (&cli.common.dot, &run.outcome.dot) {
        let name = run.command.replace([' ', '-'], "_");
        if let Err(e) = std::fs::write(path, p.to_dot(&name, cli.common.full_relation)) {
            let body = json!({ "error": format!("{}: {e}", path.display()), "schema_path": "--dot" });
            emit(&body);
            return ExitCode::from(2);
        }
    }
    let report = RunReport {
        command: run.command,
        inputs: digest(&run.inputs),
        results: run.outcome.results,
        checks: run.outcome.checks,
    };
    emit(&serde_json::to_value(&report).expect("serializable"));
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
