//! Differential and count-based verification suites shared by the command
//! line tool and the acceptance tests.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{flip_bits, subgraph_complement, Graph, VertexSet};
use crate::hardness::{hardness_verdict, verify_chain, Verdict};
use crate::iso::is_free_of;
use crate::reductions::{
    blowup_independent, build_c124_instance, build_p6_instance, build_tree_ksat_instance, check_structure,
    forward_solution, instance_blowup_rkr, map_solution_duplication_backward, map_solution_duplication_forward,
    GadgetInstance,
};
use crate::sat::{brute_sat, CnfFormula, Literal, Mode};
use crate::solvers::{brute_force_solve, is_paw_free_scan, paw_solve, BruteOracle, DEFAULT_BUDGET};
use crate::trees::enumerate_free_trees;

pub const DEFAULT_SEED: u64 = 0x5C7F_2024;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    /// First few failures, one line each.
    pub failures: Vec<String>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary)?;
        for line in &self.failures {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

const MAX_LISTED: usize = 20;

fn report(name: &'static str, summary: String, failures: Vec<String>, extra_ok: bool) -> SuiteReport {
    let passed = failures.is_empty() && extra_ok;
    SuiteReport { name, passed, summary, failures: failures.into_iter().take(MAX_LISTED).collect() }
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Labelled graph on `n` vertices whose edge `i` (lexicographic pair order) is bit `i` of `mask`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CatalogCounts {
    pub trees: usize,
    pub catalog: usize,
    pub hard: usize,
    pub unresolved: usize,
}

/// Classify every tree on at most `max_n` vertices; Hard chains are re-verified.
pub fn catalog_suite(max_n: usize) -> (SuiteReport, CatalogCounts) {
    let trees = enumerate_free_trees(max_n);
    let results: Vec<(Verdict, Option<String>)> = trees
        .par_iter()
        .map(|t| match hardness_verdict(t) {
            Ok(c) => {
                let problem = match c.verdict {
                    Verdict::Hard => verify_chain(&c.chain).err().map(|e| format!("{}: chain rejected: {e}", c.shape)),
                    Verdict::Unresolved => Some(format!("{}: unresolved ({})", c.shape, c.note.as_deref().unwrap_or("no rule applies"))),
                    _ => None,
                };
                (c.verdict, problem)
            }
            Err(e) => (Verdict::Unresolved, Some(format!("classification error: {e}"))),
        })
        .collect();
    let mut counts = CatalogCounts { trees: trees.len(), ..Default::default() };
    let mut failures = Vec::new();
    for (v, problem) in results {
        match v {
            Verdict::Catalog | Verdict::PolyKnown => counts.catalog += 1,
            Verdict::Hard => counts.hard += 1,
            Verdict::Unresolved => counts.unresolved += 1,
        }
        failures.extend(problem);
    }
    let summary = format!(
        "{}/40 catalog members among {} trees ≤ {max_n} vertices; {} hard, {} unresolved",
        counts.catalog, counts.trees, counts.hard, counts.unresolved
    );
    (report("catalog", summary, failures, counts.catalog == 40), counts)
}

fn paw_case(g: &Graph, label: String) -> Option<String> {
    let paw = Graph::paw();
    let brute = match brute_force_solve(g, &paw, DEFAULT_BUDGET) {
        Ok(r) => r,
        Err(e) => return Some(format!("{label}: brute force failed: {e}")),
    };
    let fast = match paw_solve(g, &BruteOracle::default()) {
        Ok(r) => r,
        Err(e) => return Some(format!("{label}: paw algorithm failed: {e}")),
    };
    if brute.is_some() != fast.is_some() {
        return Some(format!(
            "{label}: brute says {}, paw algorithm says {}",
            yes_no(brute.is_some()),
            yes_no(fast.is_some())
        ));
    }
    for (who, s) in [("brute", &brute), ("paw", &fast)] {
        if let Some(s) = s {
            if !is_paw_free_scan(&flip_bits(g, &s.members.to_bits(g.n()))) {
                return Some(format!("{label}: {who} witness {} is not a solution", s.members));
            }
        }
    }
    None
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Paw algorithm against brute force on every labelled 6-vertex graph and on
/// `random` seeded graphs with 7 to 11 vertices and edge probability 1/2.
pub fn paw_diff_suite(seed: u64, random: usize) -> SuiteReport {
    let exhaustive: Vec<String> = (0u64..1 << 15)
        .into_par_iter()
        .filter_map(|mask| paw_case(&graph_from_mask(6, mask), format!("n=6 mask={mask}")))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled: Vec<Graph> = (0..random)
        .map(|_| {
            let n = rng.gen_range(7..=11);
            random_graph(n, 0.5, &mut rng)
        })
        .collect();
    let random_fail: Vec<String> = sampled
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| paw_case(g, format!("random #{i} (n={}, edges {:?})", g.n(), g.edges())))
        .collect();
    let failures: Vec<String> = exhaustive.iter().chain(&random_fail).cloned().collect();
    let summary = format!(
        "paw algorithm vs brute force: {}/32768 six-vertex graphs agree, {}/{random} random graphs agree (seed {seed})",
        32768 - exhaustive.len(),
        random - random_fail.len()
    );
    report("paw-diff", summary, failures, true)
}

/// Blow-up equivalence on every labelled 4-vertex graph with target P4 and r = 2.
pub fn dup_equiv_suite() -> SuiteReport {
    let p4 = Graph::path(4);
    let h = blowup_independent(&p4, &[2, 2, 2, 2]).expect("positive profile");
    let failures: Vec<String> = (0u64..64)
        .into_par_iter()
        .filter_map(|mask| {
            let gp = graph_from_mask(4, mask);
            let run = || -> Result<Option<String>> {
                let inst = instance_blowup_rkr(&gp, 2)?;
                let small = brute_force_solve(&gp, &p4, DEFAULT_BUDGET)?;
                let big = brute_force_solve(&inst.graph, &h, DEFAULT_BUDGET)?;
                if small.is_some() != big.is_some() {
                    return Ok(Some(format!(
                        "G' mask {mask}: source {}, blow-up {}",
                        yes_no(small.is_some()),
                        yes_no(big.is_some())
                    )));
                }
                if let Some(s) = &small {
                    let fwd = map_solution_duplication_forward(&s.members, &inst)?;
                    if !is_free_of(&subgraph_complement(&inst.graph, &fwd.members)?, &h) {
                        return Ok(Some(format!("G' mask {mask}: forward image of {} fails", s.members)));
                    }
                }
                if let Some(s) = &big {
                    let back = map_solution_duplication_backward(&s.members, &inst)?;
                    if !is_free_of(&subgraph_complement(&gp, &back)?, &p4) {
                        return Ok(Some(format!("G' mask {mask}: backward image of {} fails", s.members)));
                    }
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(format!("G' mask {mask}: {e}")))
        })
        .collect();
    let summary = format!("blow-up equivalence: {}/64 four-vertex graphs agree", 64 - failures.len());
    report("dup-equiv", summary, failures, true)
}

fn random_clause(rng: &mut impl Rng, n: usize, width: usize) -> Vec<Literal> {
    let mut vars: Vec<usize> = (1..=n).collect();
    for i in 0..width {
        let j = rng.gen_range(i..n);
        vars.swap(i, j);
    }
    vars[..width]
        .iter()
        .map(|&v| if rng.gen_bool(0.5) { v as Literal } else { -(v as Literal) })
        .collect()
}

/// Seeded satisfiable formulas; unsatisfiable draws are skipped.
pub fn random_satisfiable(
    rng: &mut impl Rng,
    count: usize,
    vars: std::ops::RangeInclusive<usize>,
    clauses: std::ops::RangeInclusive<usize>,
    width: usize,
    mode: Mode,
) -> Vec<CnfFormula> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(vars.clone());
        let m = rng.gen_range(clauses.clone());
        let cls = (0..m).map(|_| random_clause(rng, n, width)).collect();
        let phi = CnfFormula::new(n, cls, mode).expect("well-formed random formula");
        if brute_sat(&phi).expect("small formula").is_some() {
            out.push(phi);
        }
    }
    out
}

/// Structure check, then: the assignment-derived `S` leaves the gadget free of its target.
pub fn forward_case(inst: &GadgetInstance) -> Result<Option<String>> {
    if let Err(e) = check_structure(inst) {
        return Ok(Some(format!("{}: structure: {e}", inst.source)));
    }
    let phi = inst.formula.as_ref().expect("formula gadget");
    let a = brute_sat(phi)?.expect("satisfiable input");
    let s = forward_solution(inst, &a)?;
    let flipped = subgraph_complement(&inst.graph, &s.members)?;
    let target = inst.target.as_ref().expect("target recorded");
    if !is_free_of(&flipped, target) {
        return Ok(Some(format!("{}: forward S = {} leaves an induced target", inst.source, s.members)));
    }
    Ok(None)
}

/// Which constructions the forward suite exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForwardTarget {
    P6,
    C124,
    Spider,
}

pub fn forward_instances(which: ForwardTarget, seed: u64, count: usize) -> Vec<GadgetInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match which {
        ForwardTarget::P6 => random_satisfiable(&mut rng, count, 3..=4, 1..=3, 3, Mode::AtLeast1)
            .iter()
            .map(|phi| build_p6_instance(phi).expect("3-CNF"))
            .collect(),
        ForwardTarget::C124 => random_satisfiable(&mut rng, count, 4..=4, 1..=1, 4, Mode::AtLeast2)
            .iter()
            .map(|phi| build_c124_instance(phi).expect("4-CNF"))
            .collect(),
        ForwardTarget::Spider => {
            let t = seven_vertex_spider();
            random_satisfiable(&mut rng, count, 4..=4, 1..=1, 4, Mode::AtLeast2)
                .iter()
                .map(|phi| build_tree_ksat_instance(phi, &t, None).expect("spider meets the conditions"))
                .collect()
        }
    }
}

/// Root 0 with children 1 and 2; leaves 3, 4 on 1 and 5, 6 on 2.
pub fn seven_vertex_spider() -> Graph {
    Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).expect("valid edges")
}

pub fn forward_suite(which: ForwardTarget, seed: u64, count: usize) -> SuiteReport {
    let insts = forward_instances(which, seed, count);
    let failures: Vec<String> = insts
        .par_iter()
        .filter_map(|inst| forward_case(inst).unwrap_or_else(|e| Some(format!("{}: {e}", inst.source))))
        .collect();
    let label = match which {
        ForwardTarget::P6 => "P6 gadget",
        ForwardTarget::C124 => "C1,2,4 gadget",
        ForwardTarget::Spider => "7-vertex tree gadget",
    };
    let summary = format!(
        "{label}: {}/{} satisfiable instances become target-free under the assignment-derived S",
        insts.len() - failures.len(),
        insts.len()
    );
    report("forward", summary, failures, !insts.is_empty())
}

/// Does `s` solve `(g, h)`? Used to re-check witnesses from outside the solvers.
pub fn is_solution(g: &Graph, h: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(is_free_of(&subgraph_complement(g, s)?, h))
}
