//! Exact solvers for "is there `S` with `G ⊕ S` free of `H`": exhaustive
//! subset search, and the dedicated algorithm for paw-free targets.

mod paw;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

pub use paw::{
    enumerate_component_partitions, enumerate_split_partitions, is_paw_free, is_paw_free_scan,
    paw_solve, paw_solve_with, shrink_paw_instance, shrink_paw_instance_traced, single_component_brute_oracle,
    BruteOracle, ComponentPartition, ComponentPattern, PartitionMode, PawOptions, PawReport, PawStep,
    ShrunkInstance, SingleComponentOracle, SplitPartition,
};

use crate::error::{Error, Result};
use crate::graph::{flip_bits, Graph, VertexSet};
use crate::iso::is_free_of;
use crate::reductions::{Provenance, SolutionSet};

/// Default subset budget: every graph on up to 24 vertices.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Below this order the search runs sequentially; thread overhead dominates otherwise.
const PARALLEL_FROM: usize = 14;

fn binomials(n: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
        }
    }
    c
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
fn unrank(c: &[Vec<u64>], n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for remaining in (1..=k).rev() {
        loop {
            let with_next = c[n - next - 1][remaining - 1];
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

pub(crate) fn check_budget(n: usize, budget: u128) -> Result<()> {
    if n >= 127 || (1u128 << n) > budget {
        let needed = if n >= 127 { u128::MAX } else { 1u128 << n };
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// First `S` in canonical order (by size, then lexicographic) such that
/// `free(G ⊕ S)` holds, or `None` when no subset works.
pub fn brute_force_search(g: &Graph, budget: u128, free: impl Fn(&Graph) -> bool + Sync) -> Result<Option<VertexSet>> {
    search(g, budget, true, free)
}

/// With `deterministic` off, parallel workers may return any smallest witness.
fn search(
    g: &Graph,
    budget: u128,
    deterministic: bool,
    free: impl Fn(&Graph) -> bool + Sync,
) -> Result<Option<VertexSet>> {
    let n = g.n();
    check_budget(n, budget)?;
    let c = binomials(n);
    let test = |rank: u64, k: usize| {
        let s = unrank(&c, n, k, rank);
        let mut bits = FixedBitSet::with_capacity(n);
        for &v in &s {
            bits.insert(v);
        }
        free(&flip_bits(g, &bits)).then_some(s)
    };
    for k in 0..=n {
        let total = c[n][k];
        let hit = if n < PARALLEL_FROM {
            (0..total).find_map(|r| test(r, k))
        } else if deterministic {
            (0..total).into_par_iter().find_map_first(|r| test(r, k))
        } else {
            (0..total).into_par_iter().find_map_any(|r| test(r, k))
        };
        if let Some(s) = hit {
            return Ok(Some(VertexSet::from(s)));
        }
    }
    Ok(None)
}

/// Exhaustive search over all subsets; the oracle every other solver is checked against.
pub fn brute_force_solve(g: &Graph, h: &Graph, budget: u128) -> Result<Option<SolutionSet>> {
    brute_force_solve_with(g, h, budget, true)
}

/// As [`brute_force_solve`]; with `deterministic` off the witness is a smallest
/// one but not necessarily the lexicographically first.
pub fn brute_force_solve_with(g: &Graph, h: &Graph, budget: u128, deterministic: bool) -> Result<Option<SolutionSet>> {
    Ok(search(g, budget, deterministic, |x| is_free_of(x, h))?
        .map(|members| SolutionSet { members, provenance: Provenance::Search }))
}

/// Outcome of a solver run in the textual `verdict:` / `S:` form.
pub fn format_result(result: &Result<Option<SolutionSet>>) -> String {
    match result {
        Ok(Some(s)) if s.members.is_empty() => "verdict: yes\nS:\n".to_string(),
        Ok(Some(s)) => format!("verdict: yes\nS: {}\n", s.members),
        Ok(None) => "verdict: no\n".to_string(),
        Err(Error::BudgetExceeded { .. }) => "verdict: budget\n".to_string(),
        Err(e) => format!("error: {e}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unrank_is_lexicographic() {
        let c = binomials(5);
        let all: Vec<Vec<usize>> = (0..c[5][2]).map(|r| unrank(&c, 5, 2, r)).collect();
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[3], vec![0, 4]);
        assert_eq!(all[4], vec![1, 2]);
        assert_eq!(all[9], vec![3, 4]);
        assert_eq!(unrank(&c, 5, 0, 0), Vec::<usize>::new());
    }

    #[test]
    fn brute_examples() {
        let paw = Graph::paw();
        let s = brute_force_solve(&paw, &paw, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(s.members.len(), 2);
        let c5 = Graph::cycle(5);
        // no flip of C5 is a disjoint union of cliques
        assert!(brute_force_solve(&c5, &Graph::path(3), DEFAULT_BUDGET).unwrap().is_none());
        let free = brute_force_solve(&c5, &paw, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(free.members.is_empty());
        assert!(matches!(
            brute_force_solve(&Graph::empty(30), &paw, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
