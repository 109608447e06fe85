//! Subgraph complementation to paw-free graphs.
//!
//! After shrinking (paw-free components dropped, twin classes cut to three
//! vertices), candidates are tried in five steps: `S = ∅`, the two
//! single-component oracles, triangle neighbourhoods, and neighbourhood
//! partitions around every ordered edge. Every accepted candidate is checked,
//! so a YES always carries a witness.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{flip_bits, Graph, VertexSet};
use crate::modular::{false_twin_classes, true_twin_classes};
use crate::reductions::{Provenance, SolutionSet};

use super::{brute_force_search, DEFAULT_BUDGET};

/// Triangle plus a vertex seeing exactly one of its corners.
pub fn is_paw_free(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in g.neighbor_iter(a).filter(|&b| b > a) {
            let mut common = g.neighbors(a).clone();
            common.intersect_with(g.neighbors(b));
            for c in common.ones().filter(|&c| c > b) {
                let (na, nb, nc) = (g.neighbors(a), g.neighbors(b), g.neighbors(c));
                let mut odd = na.clone();
                odd.symmetric_difference_with(nb);
                odd.symmetric_difference_with(nc);
                let mut all = na.clone();
                all.intersect_with(nb);
                all.intersect_with(nc);
                odd.difference_with(&all);
                odd.set(a, false);
                odd.set(b, false);
                odd.set(c, false);
                if !odd.is_clear() {
                    return false;
                }
            }
        }
    }
    true
}

/// Looks at every 4-subset: a paw is the only 4-edge graph on four vertices with a vertex of degree 3.
pub fn is_paw_free_scan(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let mut deg = [0usize; 4];
                    let mut m = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if g.has_edge(q[i], q[j]) {
                                deg[i] += 1;
                                deg[j] += 1;
                                m += 1;
                            }
                        }
                    }
                    if m == 4 && deg.contains(&3) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
struct CutClass {
    kept: Vec<usize>,
    full: Vec<usize>,
    clique: bool,
}

#[derive(Clone, Debug)]
struct ShrinkStep {
    /// Previous-level ids of the vertices kept, in new-id order.
    kept: Vec<usize>,
    /// Shrunk twin classes, previous-level ids.
    classes: Vec<CutClass>,
}

/// Result of shrinking, with enough history to lift solutions back.
#[derive(Clone, Debug)]
pub struct ShrunkInstance {
    pub graph: Graph,
    steps: Vec<ShrinkStep>,
}

impl ShrunkInstance {
    /// Map a solution of the shrunk graph to one of the original graph.
    ///
    /// In `G ⊕ S` the part of an independent module inside `S` becomes a
    /// clique and the rest stays independent; a paw meets them in at most two
    /// and one vertices, so the count inside `S` carries over up to 2 and the
    /// count outside up to 1. For a clique module the roles swap.
    pub fn lift(&self, s: &VertexSet) -> VertexSet {
        let mut cur: Vec<usize> = s.iter().collect();
        for step in self.steps.iter().rev() {
            let mut prev: VertexSet = cur.iter().map(|&v| step.kept[v]).collect();
            for class in &step.classes {
                let inside = class.kept.iter().filter(|&&v| prev.contains(v)).count();
                let grow = inside == 3 || (class.clique && inside == 2);
                if grow {
                    let left_out: Vec<usize> = class.kept.iter().copied().filter(|&v| !prev.contains(v)).collect();
                    for &v in &class.full {
                        if !left_out.contains(&v) {
                            prev.insert(v);
                        }
                    }
                }
            }
            cur = prev.into_vec();
        }
        VertexSet::from(cur)
    }

    /// Original id of every vertex of the shrunk graph.
    pub fn origin(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.graph.n()).collect();
        for step in self.steps.iter().rev() {
            ids = ids.into_iter().map(|v| step.kept[v]).collect();
        }
        ids
    }
}

fn shrink_once(g: &Graph) -> Option<ShrinkStep> {
    let n = g.n();
    let mut drop = FixedBitSet::with_capacity(n);
    for comp in g.components() {
        if is_paw_free(&g.induced_subgraph(&comp)) {
            for v in comp {
                drop.insert(v);
            }
        }
    }
    let mut classes = Vec::new();
    if drop.is_clear() {
        let false_twins = false_twin_classes(g).into_iter().map(|c| (c, false));
        let true_twins = true_twin_classes(g).into_iter().map(|c| (c, true));
        for (class, clique) in false_twins.chain(true_twins) {
            if class.len() >= 4 {
                for &v in &class[3..] {
                    drop.insert(v);
                }
                classes.push(CutClass { kept: class[..3].to_vec(), full: class, clique });
            }
        }
    }
    if drop.is_clear() {
        return None;
    }
    let kept: Vec<usize> = (0..n).filter(|&v| !drop.contains(v)).collect();
    Some(ShrinkStep { kept, classes })
}

/// Drop paw-free components and cut independent or clique modules of size at
/// least four down to three vertices, until nothing changes.
pub fn shrink_paw_instance_traced(g: &Graph) -> ShrunkInstance {
    let mut graph = g.clone();
    let mut steps = Vec::new();
    while let Some(step) = shrink_once(&graph) {
        graph = graph.induced_subgraph(&step.kept);
        steps.push(step);
    }
    ShrunkInstance { graph, steps }
}

pub fn shrink_paw_instance(g: &Graph) -> Graph {
    shrink_paw_instance_traced(g).graph
}

/// `P` independent, `Q` without an independent set of size 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitPartition {
    pub p_side: VertexSet,
    pub q_side: VertexSet,
}

/// `X` induces a connected subgraph, or an independent set of at most three vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentPartition {
    pub x_side: VertexSet,
    pub y_side: VertexSet,
}

fn check_host(g: &Graph, host: &VertexSet, cap: usize) -> Result<()> {
    host.check_range(g.n())?;
    if host.len() > cap {
        return Err(Error::SizeCap { size: host.len(), cap });
    }
    Ok(())
}

fn forms_independent_triple(g: &Graph, q: &[usize], x: usize) -> bool {
    let far: Vec<usize> = q.iter().copied().filter(|&y| !g.has_edge(x, y)).collect();
    far.iter()
        .enumerate()
        .any(|(i, &y)| far[i + 1..].iter().any(|&z| !g.has_edge(y, z)))
}

/// All (1,2)-split partitions of `G[host]`, by pruned exhaustive search.
pub fn enumerate_split_partitions(g: &Graph, host: &VertexSet, cap: usize) -> Result<Vec<SplitPartition>> {
    check_host(g, host, cap)?;
    let hs = host.as_slice();
    let mut out = Vec::new();
    let mut p: Vec<usize> = Vec::new();
    let mut q: Vec<usize> = Vec::new();
    fn rec(g: &Graph, hs: &[usize], i: usize, p: &mut Vec<usize>, q: &mut Vec<usize>, out: &mut Vec<SplitPartition>) {
        if i == hs.len() {
            out.push(SplitPartition { p_side: p.clone().into(), q_side: q.clone().into() });
            return;
        }
        let x = hs[i];
        if p.iter().all(|&y| !g.has_edge(x, y)) {
            p.push(x);
            rec(g, hs, i + 1, p, q, out);
            p.pop();
        }
        if !forms_independent_triple(g, q, x) {
            q.push(x);
            rec(g, hs, i + 1, p, q, out);
            q.pop();
        }
    }
    rec(g, hs, 0, &mut p, &mut q, &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionMode {
    /// Every subset of the host is screened.
    Exhaustive,
    /// X-sides limited to the empty set, components of `G[host]` and independent sets of size at most 3.
    Polynomial,
}

fn bits_of(n: usize, vs: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &v in vs {
        b.insert(v);
    }
    b
}

fn split_by(host: &[usize], x: Vec<usize>) -> ComponentPartition {
    let y: Vec<usize> = host.iter().copied().filter(|v| !x.contains(v)).collect();
    ComponentPartition { x_side: x.into(), y_side: y.into() }
}

/// Component partitions of `host`; all qualifying X-sides in `Exhaustive` mode.
pub fn enumerate_component_partitions(
    g: &Graph,
    host: &VertexSet,
    cap: usize,
    mode: PartitionMode,
) -> Result<Vec<ComponentPartition>> {
    check_host(g, host, cap)?;
    let hs = host.as_slice();
    let h = hs.len();
    let n = g.n();
    let mut out = Vec::new();
    match mode {
        PartitionMode::Exhaustive => {
            for mask in 0u64..(1u64 << h) {
                let x: Vec<usize> = (0..h).filter(|&i| mask >> i & 1 == 1).map(|i| hs[i]).collect();
                let bits = bits_of(n, &x);
                let ok = x.is_empty()
                    || g.is_connected_within(&bits)
                    || (x.len() <= 3 && g.is_independent(&bits));
                if ok {
                    out.push(split_by(hs, x));
                }
            }
        }
        PartitionMode::Polynomial => {
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut xs: Vec<Vec<usize>> = vec![Vec::new()];
            for comp in g.components_within(&bits_of(n, hs)) {
                xs.push(comp.ones().collect());
            }
            for a in 0..h {
                xs.push(vec![hs[a]]);
                for b in a + 1..h {
                    if g.has_edge(hs[a], hs[b]) {
                        continue;
                    }
                    xs.push(vec![hs[a], hs[b]]);
                    for c in b + 1..h {
                        if !g.has_edge(hs[a], hs[c]) && !g.has_edge(hs[b], hs[c]) {
                            xs.push(vec![hs[a], hs[b], hs[c]]);
                        }
                    }
                }
            }
            for x in xs {
                if seen.insert(x.clone()) {
                    out.push(split_by(hs, x));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentPattern {
    K3,
    K2PlusK1,
}

impl ComponentPattern {
    pub fn graph(self) -> Graph {
        match self {
            ComponentPattern::K3 => Graph::complete(3),
            ComponentPattern::K2PlusK1 => Graph::k2_plus_k1(),
        }
    }
}

/// Solver for the two single-component cases, pluggable so that a faster method can stand in.
pub trait SingleComponentOracle: Sync {
    fn solve(&self, g: &Graph, pattern: ComponentPattern) -> Result<Option<SolutionSet>>;
}

fn is_triangle_free(g: &Graph) -> bool {
    (0..g.n()).all(|a| {
        g.neighbor_iter(a)
            .filter(|&b| b > a)
            .all(|b| g.neighbors(a).intersection_count(g.neighbors(b)) == 0)
    })
}

/// Free of K2+K1 iff every vertex misses an independent set of vertices,
/// i.e. non-adjacency is transitive.
fn is_k2k1_free(g: &Graph) -> bool {
    let n = g.n();
    (0..n).all(|v| {
        let mut far = FixedBitSet::with_capacity(n);
        far.insert_range(..);
        far.difference_with(g.neighbors(v));
        far.set(v, false);
        g.is_independent(&far)
    })
}

/// Exact answer by subset enumeration.
pub fn single_component_brute_oracle(g: &Graph, pattern: ComponentPattern, budget: u128) -> Result<Option<SolutionSet>> {
    let found = match pattern {
        ComponentPattern::K3 => brute_force_search(g, budget, is_triangle_free)?,
        ComponentPattern::K2PlusK1 => brute_force_search(g, budget, is_k2k1_free)?,
    };
    Ok(found.map(|members| SolutionSet { members, provenance: Provenance::Search }))
}

#[derive(Clone, Copy, Debug)]
pub struct BruteOracle {
    pub budget: u128,
}

impl Default for BruteOracle {
    fn default() -> Self {
        BruteOracle { budget: DEFAULT_BUDGET }
    }
}

impl SingleComponentOracle for BruteOracle {
    fn solve(&self, g: &Graph, pattern: ComponentPattern) -> Result<Option<SolutionSet>> {
        single_component_brute_oracle(g, pattern, self.budget)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PawOptions {
    pub mode: PartitionMode,
    /// Largest neighbourhood the partition enumerators accept.
    pub cap: usize,
}

impl Default for PawOptions {
    fn default() -> Self {
        PawOptions { mode: PartitionMode::Exhaustive, cap: 18 }
    }
}

/// Where a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PawStep {
    AlreadyFree,
    SingleComponent(ComponentPattern),
    Triangle,
    SplitPair,
    ComponentPair,
    MixedPair,
    No,
}

#[derive(Clone, Debug)]
pub struct PawReport {
    /// Witness on the input graph, when the answer is YES.
    pub solution: Option<SolutionSet>,
    pub step: PawStep,
    pub shrunk_order: usize,
}

struct Candidates<'a> {
    g: &'a Graph,
    tried: HashSet<FixedBitSet>,
}

impl Candidates<'_> {
    fn accepts(&mut self, s: FixedBitSet) -> Option<FixedBitSet> {
        if !self.tried.insert(s.clone()) {
            return None;
        }
        is_paw_free(&flip_bits(self.g, &s)).then_some(s)
    }
}

fn union(a: &VertexSet, b: &VertexSet, n: usize) -> FixedBitSet {
    let mut s = a.to_bits(n);
    for v in b.iter() {
        s.insert(v);
    }
    s
}

fn run_steps(g: &Graph, oracle: &dyn SingleComponentOracle, opts: &PawOptions) -> Result<(Option<FixedBitSet>, PawStep)> {
    let n = g.n();
    if is_paw_free(g) {
        return Ok((Some(FixedBitSet::with_capacity(n)), PawStep::AlreadyFree));
    }
    for pattern in [ComponentPattern::K3, ComponentPattern::K2PlusK1] {
        if let Some(s) = oracle.solve(g, pattern)? {
            return Ok((Some(s.members.to_bits(n)), PawStep::SingleComponent(pattern)));
        }
    }
    let mut cand = Candidates { g, tried: HashSet::new() };
    let common = |a: usize, b: usize| {
        let mut x = g.neighbors(a).clone();
        x.intersect_with(g.neighbors(b));
        x
    };

    for u in 0..n {
        for v in g.neighbor_iter(u).filter(|&v| v > u) {
            for w in common(u, v).ones().filter(|&w| w > v) {
                let mut s = common(u, v);
                s.union_with(&common(u, w));
                s.union_with(&common(v, w));
                if let Some(s) = cand.accepts(s) {
                    return Ok((Some(s), PawStep::Triangle));
                }
            }
        }
    }

    let nbhd: Vec<VertexSet> = (0..n).map(|v| VertexSet::from_bits(g.neighbors(v))).collect();
    let mut splits: Vec<Option<Vec<SplitPartition>>> = vec![None; n];
    let mut comps: Vec<Option<Vec<ComponentPartition>>> = vec![None; n];
    for u in 0..n {
        for v in g.neighbor_iter(u) {
            for x in [u, v] {
                if splits[x].is_none() {
                    splits[x] = Some(enumerate_split_partitions(g, &nbhd[x], opts.cap)?);
                    comps[x] = Some(enumerate_component_partitions(g, &nbhd[x], opts.cap, opts.mode)?);
                }
            }
            let (lu, lv) = (splits[u].as_ref().unwrap(), splits[v].as_ref().unwrap());
            for pu in lu {
                for pv in lv {
                    if let Some(s) = cand.accepts(union(&pu.q_side, &pv.q_side, n)) {
                        return Ok((Some(s), PawStep::SplitPair));
                    }
                }
            }
            let (ru, rv) = (comps[u].as_ref().unwrap(), comps[v].as_ref().unwrap());
            for cu in ru {
                for cv in rv {
                    if let Some(s) = cand.accepts(union(&cu.y_side, &cv.y_side, n)) {
                        return Ok((Some(s), PawStep::ComponentPair));
                    }
                }
            }
            // isolated vertices of G[N(u)] and the rest of N(u)
            let nu = g.neighbors(u);
            let (isolated, rest): (Vec<usize>, Vec<usize>) =
                nu.ones().partition(|&a| g.neighbors(a).intersection_count(nu) == 0);
            for cv in rv {
                let mut z = bits_of(n, &rest);
                z.insert(v);
                let xv = cv.x_side.to_bits(n);
                for &i in &isolated {
                    if g.neighbors(i).intersection_count(&xv) > 0 {
                        z.insert(i);
                    }
                }
                let y = cv.y_side.as_slice();
                let mut try_with = |drop: &[usize]| {
                    let mut s = z.clone();
                    for &a in y {
                        if !drop.contains(&a) {
                            s.insert(a);
                        }
                    }
                    cand.accepts(s)
                };
                if let Some(s) = try_with(&[]) {
                    return Ok((Some(s), PawStep::MixedPair));
                }
                for i in 0..y.len() {
                    if let Some(s) = try_with(&[y[i]]) {
                        return Ok((Some(s), PawStep::MixedPair));
                    }
                    for j in i + 1..y.len() {
                        if let Some(s) = try_with(&[y[i], y[j]]) {
                            return Ok((Some(s), PawStep::MixedPair));
                        }
                    }
                }
            }
        }
    }
    Ok((None, PawStep::No))
}

/// Run the algorithm and report the deciding step along with the witness.
pub fn paw_solve_with(g: &Graph, oracle: &dyn SingleComponentOracle, opts: &PawOptions) -> Result<PawReport> {
    let shrunk = shrink_paw_instance_traced(g);
    let (found, step) = run_steps(&shrunk.graph, oracle, opts)?;
    let solution = match found {
        None => None,
        Some(bits) => {
            let members = shrunk.lift(&VertexSet::from_bits(&bits));
            if !is_paw_free_scan(&flip_bits(g, &members.to_bits(g.n()))) {
                return Err(Error::Internal(format!("lifted witness {members} is not a solution")));
            }
            Some(SolutionSet { members, provenance: Provenance::Search })
        }
    };
    Ok(PawReport { solution, step, shrunk_order: shrunk.graph.n() })
}

pub fn paw_solve(g: &Graph, oracle: &dyn SingleComponentOracle) -> Result<Option<SolutionSet>> {
    Ok(paw_solve_with(g, oracle, &PawOptions::default())?.solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paw_checks_agree_on_small_graphs() {
        for mask in 0u32..(1 << 10) {
            let mut g = Graph::empty(5);
            let mut bit = 0;
            for a in 0..5 {
                for b in a + 1..5 {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(a, b);
                    }
                    bit += 1;
                }
            }
            assert_eq!(is_paw_free(&g), is_paw_free_scan(&g));
        }
    }

    #[test]
    fn partition_counts() {
        let k3 = Graph::complete(3);
        let all = VertexSet::full(3);
        assert_eq!(enumerate_split_partitions(&k3, &all, 18).unwrap().len(), 4);
        let e3 = Graph::empty(3);
        assert_eq!(enumerate_split_partitions(&e3, &all, 18).unwrap().len(), 7);
        assert_eq!(enumerate_component_partitions(&k3, &all, 18, PartitionMode::Exhaustive).unwrap().len(), 8);
        assert_eq!(enumerate_component_partitions(&e3, &all, 18, PartitionMode::Exhaustive).unwrap().len(), 8);
        let none = enumerate_split_partitions(&k3, &VertexSet::new(), 18).unwrap();
        assert_eq!(none, vec![SplitPartition { p_side: VertexSet::new(), q_side: VertexSet::new() }]);
        assert!(enumerate_split_partitions(&Graph::empty(20), &VertexSet::full(20), 18).is_err());
    }

    #[test]
    fn shrink_examples() {
        assert_eq!(shrink_paw_instance(&Graph::cycle(5)).n(), 0);
        // K7 with a pendant vertex on vertex 0: the six others are true twins
        let mut g = Graph::complete(8);
        for v in 1..7 {
            g.remove_edge(v, 7);
        }
        let s = shrink_paw_instance_traced(&g);
        assert_eq!(s.graph.n(), 5);
        assert_eq!(s.lift(&VertexSet::from([1, 2, 3])).len(), 6);
        assert_eq!(s.lift(&VertexSet::from([1])).as_slice(), &[1]);
        // two of the kept clique members in S: all but the third follow
        assert_eq!(s.lift(&VertexSet::from([0, 1, 2])).as_slice(), &[0, 1, 2, 4, 5, 6]);
    }

    #[test]
    fn paw_examples() {
        let o = BruteOracle::default();
        let r = paw_solve_with(&Graph::cycle(5), &o, &PawOptions::default()).unwrap();
        assert_eq!(r.step, PawStep::AlreadyFree);
        assert!(r.solution.unwrap().members.is_empty());
        assert!(paw_solve(&Graph::paw(), &o).unwrap().is_some());
    }
}
