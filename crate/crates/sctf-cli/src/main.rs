use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sctf::error::{Error, Result};
use sctf::graph::{subgraph_complement, Graph, VertexSet};
use sctf::hardness::{hardness_verdict, Verdict};
use sctf::io::{parse_graph, write_graph};
use sctf::iso::contains_induced;
use sctf::modular::{maximal_strong_modules, quotient_of};
use sctf::reductions::{
    attach_leaf_complements, bistar_to_tristar_instance, blowup_independent, build_5conn_instance,
    build_c124_instance, build_p6_instance, build_tree_ksat_instance, default_5conn_special, forward_solution,
    instance_blowup_rkr, star_to_bistar_instance, star_to_tristar_instance, Construction, GadgetInstance,
};
use sctf::sat::{brute_sat, lift_3sat_to_4satge2, lift_4satge2_to_ksatge2, parse_dimacs, CnfFormula, Mode, MAX_BRUTE_VARS};
use sctf::solvers::{
    brute_force_solve_with, format_result, paw_solve_with, BruteOracle, PartitionMode, PawOptions, DEFAULT_BUDGET,
};
use sctf::trees::{build_tree, leaves, parse_pattern, parse_tree_spec, TreeSpec};
use sctf::verify::{catalog_suite, dup_equiv_suite, forward_suite, paw_diff_suite, ForwardTarget, SuiteReport, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "sctf", version, about = "Subgraph complementation to H-free graphs")]
struct Cli {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Return the canonical-first witness regardless of scheduling.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Compile a construction into PREFIX.graph and PREFIX.roles.
    Gen {
        #[arg(long)]
        construction: String,
        /// DIMACS source formula.
        #[arg(long)]
        cnf: Option<String>,
        /// Source graph.
        #[arg(long)]
        graph: Option<String>,
        /// Target tree spec.
        #[arg(long, conflicts_with = "target")]
        tree: Option<String>,
        /// Target graph as @file.
        #[arg(long)]
        target: Option<String>,
        /// Clique size for the blowup construction.
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Read the formula under at-least-two semantics.
        #[arg(long)]
        ge2: bool,
        #[arg(long)]
        out: String,
    },
    /// Decide whether some S makes G ⊕ S free of the forbidden graph.
    Solve {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        graph: String,
        /// Tree spec, `paw`, `K<n>` or @file.
        #[arg(long)]
        forbidden: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Partition enumeration for the paw method.
        #[arg(long, value_enum, default_value_t = Partitions::Exhaustive)]
        mode: Partitions,
    },
    /// Hardness verdict and certificate chain for a tree.
    Classify {
        #[arg(long)]
        tree: String,
    },
    /// Look for an induced copy of a pattern, optionally after flipping a solution set.
    Check {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        pattern: String,
        /// File with an `S:` line to complement first.
        #[arg(long)]
        flip: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Random cases (paw-diff) or instances per target (forward).
        #[arg(long)]
        count: Option<usize>,
        /// Largest tree order for the catalog suite.
        #[arg(long, default_value_t = 13)]
        max_n: usize,
    },
    /// Maximal strong modules and the quotient graph.
    Modules {
        #[arg(long)]
        graph: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Paw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Partitions {
    Exhaustive,
    Polynomial,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Catalog,
    PawDiff,
    DupEquiv,
    Forward,
}

/// Failure kinds that choose the exit code.
enum Fail {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type Outcome = std::result::Result<u8, Fail>;

fn read(path: &str) -> std::result::Result<String, Fail> {
    let path = path.strip_prefix('@').unwrap_or(path);
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {path}: {e}")))
}

fn load_graph(path: &str) -> std::result::Result<Graph, Fail> {
    Ok(parse_graph(&read(path)?)?)
}

fn write(path: &str, text: &str) -> std::result::Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail::Usage(format!("cannot write {path}: {e}")))
}

/// Bring a formula to width `k` under at-least-two semantics, lifting 3-CNF as needed.
fn to_ksat_ge2(phi: CnfFormula, k: usize) -> Result<CnfFormula> {
    let phi = if phi.mode() == Mode::AtLeast1 && phi.width() == Some(3) { lift_3sat_to_4satge2(&phi)? } else { phi };
    if k > 4 && phi.width() == Some(4) {
        lift_4satge2_to_ksatge2(&phi, k)
    } else {
        Ok(phi)
    }
}

fn target_graph(tree: &Option<String>, target: &Option<String>) -> std::result::Result<Option<Graph>, Fail> {
    match (tree, target) {
        (Some(t), _) => Ok(Some(build_tree(&parse_tree_spec(t)?)?)),
        (None, Some(t)) => Ok(Some(parse_pattern(&format!("@{}", t.trim_start_matches('@')))?)),
        (None, None) => Ok(None),
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    construction: &str,
    cnf: &Option<String>,
    graph: &Option<String>,
    tree: &Option<String>,
    target: &Option<String>,
    r: usize,
    ge2: bool,
    out: &str,
) -> Outcome {
    let c = Construction::from_name(construction)
        .ok_or_else(|| Fail::Usage(format!("unknown construction {construction:?}")))?;
    let formula = match cnf {
        Some(p) => {
            let phi = parse_dimacs(&read(p)?)?;
            Some(if ge2 { phi.with_mode(Mode::AtLeast2)? } else { phi })
        }
        None => None,
    };
    let need = |what: &str| Fail::Usage(format!("{} needs --{what}", c.name()));
    let phi = || formula.clone().ok_or_else(|| need("cnf"));
    let gp = || -> std::result::Result<Graph, Fail> { load_graph(graph.as_deref().ok_or_else(|| need("graph"))?) };
    let h = target_graph(tree, target)?;
    let spec = || -> std::result::Result<TreeSpec, Fail> {
        Ok(parse_tree_spec(tree.as_deref().ok_or_else(|| need("tree"))?)?)
    };

    let inst: GadgetInstance = match c {
        Construction::Blowup => instance_blowup_rkr(&gp()?, r)?,
        Construction::FiveConn => {
            let h = h.clone().ok_or_else(|| need("target"))?;
            let special = default_5conn_special(&h)?;
            build_5conn_instance(&to_ksat_ge2(phi()?, 4)?, &h, &special)?
        }
        Construction::LeafAttach => attach_leaf_complements(&gp()?, &h.clone().ok_or_else(|| need("tree"))?)?,
        Construction::TreeKsat => {
            let t = h.clone().ok_or_else(|| need("tree"))?;
            let k = leaves(&t).len();
            build_tree_ksat_instance(&to_ksat_ge2(phi()?, k)?, &t, None)?
        }
        Construction::Bistar => match spec()? {
            TreeSpec::Bistar(x, y) => star_to_bistar_instance(&gp()?, x, y)?,
            s => return Err(Fail::Usage(format!("bistar needs a T<x>,<y> tree, got {s}"))),
        },
        Construction::TristarFromBistar => match spec()? {
            TreeSpec::Tristar(1, y, z) => bistar_to_tristar_instance(&gp()?, y, z)?,
            s => return Err(Fail::Usage(format!("tristar-b needs a T1,<y>,<z> tree, got {s}"))),
        },
        Construction::TristarFromStar => match spec()? {
            TreeSpec::Tristar(x, y, z) => star_to_tristar_instance(&gp()?, x, y, z)?,
            s => return Err(Fail::Usage(format!("tristar-s needs a T<x>,<y>,<z> tree, got {s}"))),
        },
        Construction::P6 => build_p6_instance(&phi()?)?,
        Construction::C124 => build_c124_instance(&to_ksat_ge2(phi()?, 4)?)?,
    };

    write(&format!("{out}.graph"), &write_graph(&inst.graph))?;
    write(&format!("{out}.roles"), &inst.roles_text())?;
    println!("construction: {}", c.name());
    println!("vertices: {}", inst.graph.n());
    println!("edges: {}", inst.graph.m());
    println!("wrote {out}.graph {out}.roles");

    if c == Construction::Blowup {
        if let Some(h) = h {
            let profile = vec![r; h.n()];
            write(&format!("{out}.target.graph"), &write_graph(&blowup_independent(&h, &profile)?))?;
            println!("wrote {out}.target.graph");
        }
    }
    if let Some(phi) = inst.formula.as_ref().filter(|p| p.num_vars() <= MAX_BRUTE_VARS) {
        match brute_sat(phi)? {
            Some(a) => {
                let s = forward_solution(&inst, &a)?;
                write(&format!("{out}.solution"), &format!("verdict: yes\nS: {}\n", s.members))?;
                println!("wrote {out}.solution");
            }
            None => println!("source formula is unsatisfiable"),
        }
    }
    Ok(0)
}

fn solve(method: Method, graph: &str, forbidden: &str, budget: u128, mode: Partitions, deterministic: bool) -> Outcome {
    let g = load_graph(graph)?;
    let result = match method {
        Method::Brute => {
            let h = parse_pattern(forbidden)?;
            brute_force_solve_with(&g, &h, budget, deterministic)
        }
        Method::Paw => {
            if forbidden.trim() != "paw" {
                return Err(Fail::Usage("--method paw requires --forbidden paw".into()));
            }
            let mode = match mode {
                Partitions::Exhaustive => PartitionMode::Exhaustive,
                Partitions::Polynomial => PartitionMode::Polynomial,
            };
            let opts = PawOptions { mode, ..PawOptions::default() };
            paw_solve_with(&g, &BruteOracle { budget }, &opts).map(|r| {
                eprintln!("step: {:?}, shrunk to {} vertices", r.step, r.shrunk_order);
                r.solution
            })
        }
    };
    print!("{}", format_result(&result));
    match result {
        Ok(Some(_)) => Ok(0),
        Ok(None) => Ok(1),
        Err(Error::BudgetExceeded { .. }) => Ok(2),
        Err(e) => Err(e.into()),
    }
}

fn classify(tree: &str) -> Outcome {
    let t = build_tree(&parse_tree_spec(tree)?)?;
    let cert = hardness_verdict(&t)?;
    println!("{}", cert.summary());
    print!("{}", cert.serialize());
    Ok(if cert.verdict == Verdict::Unresolved { 1 } else { 0 })
}

/// The members listed on the first `S:` line.
fn parse_solution(text: &str) -> std::result::Result<VertexSet, Fail> {
    let line = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("S:"))
        .ok_or_else(|| Fail::Usage("solution file has no `S:` line".into()))?;
    let members = line
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Fail::Usage(format!("bad vertex {t:?} in solution file"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(VertexSet::from(members))
}

fn check(graph: &str, pattern: &str, flip: &Option<String>) -> Outcome {
    let mut g = load_graph(graph)?;
    if let Some(f) = flip {
        g = subgraph_complement(&g, &parse_solution(&read(f)?)?)?;
    }
    let h = parse_pattern(pattern)?;
    match contains_induced(&g, &h) {
        None => {
            println!("free");
            Ok(0)
        }
        Some(w) => {
            println!("induced copy: {w}");
            Ok(1)
        }
    }
}

fn show(r: &SuiteReport) -> bool {
    print!("{r}");
    r.passed
}

fn verify(suite: Suite, count: Option<usize>, max_n: usize, seed: u64) -> Outcome {
    let ok = match suite {
        Suite::Catalog => show(&catalog_suite(max_n).0),
        Suite::PawDiff => show(&paw_diff_suite(seed, count.unwrap_or(500))),
        Suite::DupEquiv => show(&dup_equiv_suite()),
        Suite::Forward => [ForwardTarget::P6, ForwardTarget::Spider, ForwardTarget::C124]
            .into_iter()
            .map(|t| show(&forward_suite(t, seed, count.unwrap_or(20))))
            .fold(true, |a, b| a & b),
    };
    Ok(if ok { 0 } else { 1 })
}

fn modules(graph: &str) -> Outcome {
    let g = load_graph(graph)?;
    let part = match maximal_strong_modules(&g) {
        Ok(p) => p,
        Err(e @ Error::ModulesUndefined(_)) => {
            eprintln!("error: {e}");
            return Ok(2);
        }
        Err(e) => return Err(e.into()),
    };
    print!("{part}");
    println!("quotient:");
    print!("{}", write_graph(&quotient_of(&part)));
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| Fail::Usage(format!("cannot set up {} workers: {e}", cli.jobs)))?;
    }
    match &cli.verb {
        Verb::Gen { construction, cnf, graph, tree, target, r, ge2, out } => {
            gen(construction, cnf, graph, tree, target, *r, *ge2, out)
        }
        Verb::Solve { method, graph, forbidden, budget, mode } => {
            solve(*method, graph, forbidden, *budget, *mode, cli.deterministic)
        }
        Verb::Classify { tree } => classify(tree),
        Verb::Check { graph, pattern, flip } => check(graph, pattern, flip),
        Verb::Verify { suite, count, max_n } => verify(*suite, *count, *max_n, cli.seed),
        Verb::Modules { graph } => modules(graph),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
