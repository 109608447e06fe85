//! Gadgets built from CNF formulas: literal singletons per variable, padded
//! with complement copies of the target so that one vertex per set induces it.

use crate::error::{Error, Result};
use crate::graph::{complement, substitute, Graph};
use crate::hardness::{check_five_conn, i4l4_conditions};
use crate::modular::maximal_strong_modules;
use crate::sat::{CnfFormula, Literal, Mode};
use crate::trees::{build_tree, internal_vertices, leaves, TreeSpec};

use super::{range_vec, Builder, Construction, GadgetInstance, Role};

/// Positions of the target's vertices that the gadgets treat specially:
/// `v1`, `v2` become the two literal singletons of each variable gadget and
/// `vprime` (a K4 or 4K1) hosts the four literal vertices of each clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiveConnSpecial {
    pub v1: usize,
    pub v2: usize,
    pub vprime: [usize; 4],
}

fn four_subsets(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n).flat_map(move |a| {
        (a + 1..n).flat_map(move |b| {
            (b + 1..n).flat_map(move |c| (c + 1..n).map(move |d| [a, b, c, d]))
        })
    })
}

fn kind_of(h: &Graph, vp: &[usize; 4]) -> Option<bool> {
    let pairs = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)));
    let edges = pairs.filter(|&(i, j)| h.has_edge(vp[i], vp[j])).count();
    match edges {
        6 => Some(true),
        0 => Some(false),
        _ => None,
    }
}

/// First 4-set (lexicographic) inducing K4 or 4K1, then the first pair with
/// the opposite adjacency: non-adjacent for a clique, adjacent for an independent set.
pub fn default_5conn_special(h: &Graph) -> Result<FiveConnSpecial> {
    let n = h.n();
    let vprime = four_subsets(n)
        .find(|vp| kind_of(h, vp).is_some())
        .ok_or_else(|| Error::Precondition("target has no K4 and no independent 4-set".into()))?;
    let clique = kind_of(h, &vprime) == Some(true);
    for v1 in 0..n {
        for v2 in v1 + 1..n {
            if h.has_edge(v1, v2) != clique {
                return Ok(FiveConnSpecial { v1, v2, vprime });
            }
        }
    }
    Err(Error::Precondition("no vertex pair with the required adjacency".into()))
}

fn check_special(h: &Graph, s: &FiveConnSpecial) -> Result<bool> {
    let n = h.n();
    let all = [s.v1, s.v2, s.vprime[0], s.vprime[1], s.vprime[2], s.vprime[3]];
    if let Some(&v) = all.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let mut vp = s.vprime;
    vp.sort_unstable();
    if s.v1 == s.v2 || vp.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("special vertices must be distinct".into()));
    }
    let clique = kind_of(h, &s.vprime)
        .ok_or_else(|| Error::Precondition("V' induces neither K4 nor 4K1".into()))?;
    if h.has_edge(s.v1, s.v2) == clique {
        return Err(Error::Precondition(if clique {
            "V' is a clique, so v1 and v2 must be non-adjacent".into()
        } else {
            "V' is independent, so v1 and v2 must be adjacent".into()
        }));
    }
    Ok(clique)
}

fn lit_index(lits: &[[usize; 2]], l: Literal) -> usize {
    lits[l.unsigned_abs() as usize][usize::from(l < 0)]
}

fn foreign_literals(lits: &[[usize; 2]], clause: &[Literal]) -> Vec<usize> {
    let own: Vec<usize> = clause.iter().map(|&l| lit_index(lits, l)).collect();
    lits.iter()
        .skip(1)
        .flatten()
        .copied()
        .filter(|v| !own.contains(v))
        .collect()
}

/// Variable gadgets wired by `adj` over set positions; sets 1 and 2 are the
/// literal singletons, sets `3..=sets` copies of `pad`.
fn variable_gadgets(
    b: &mut Builder,
    n: usize,
    sets: usize,
    pad: &Graph,
    adj: impl Fn(usize, usize) -> bool,
) -> (Vec<[usize; 2]>, Vec<Vec<usize>>) {
    let mut lits = vec![[usize::MAX; 2]; n + 1];
    let mut padding = vec![Vec::new(); n + 1];
    for i in 1..=n {
        let mut groups = vec![
            vec![b.vertex(Role::Literal { var: i, positive: true })],
            vec![b.vertex(Role::Literal { var: i, positive: false })],
        ];
        for j in 3..=sets {
            groups.push(range_vec(b.block(pad, |k| Role::VarSet { var: i, set: j, index: k })));
        }
        for a in 0..sets {
            for c in a + 1..sets {
                if adj(a + 1, c + 1) {
                    b.join(&groups[a], &groups[c]);
                }
            }
        }
        lits[i] = [groups[0][0], groups[1][0]];
        padding[i] = groups[2..].concat();
    }
    (lits, padding)
}

/// Join each variable's padding to every vertex outside its gadget.
fn padding_to_outside(b: &mut Builder, lits: &[[usize; 2]], padding: &[Vec<usize>]) {
    let total = b.len();
    for i in 1..lits.len() {
        let own: Vec<usize> = padding[i].iter().copied().chain(lits[i]).collect();
        let lo = own.iter().min().copied().unwrap_or(0);
        let hi = own.iter().max().copied().unwrap_or(0);
        let outside: Vec<usize> = (0..total).filter(|&v| v < lo || v > hi).collect();
        b.join(&padding[i], &outside);
    }
}

fn describe(phi: &CnfFormula) -> String {
    format!("{} variables, {} clauses: {phi}", phi.num_vars(), phi.clauses().len())
}

/// Reduction from 4-SAT with at least two true literals per clause to freeness of
/// a 5-connected prime target `h`.
pub fn build_5conn_instance(phi: &CnfFormula, h: &Graph, special: &FiveConnSpecial) -> Result<GadgetInstance> {
    phi.require_shape(4, Mode::AtLeast2)?;
    check_five_conn(h)?;
    let clique = check_special(h, special)?;
    let t = h.n();
    let mut order = vec![special.v1, special.v2];
    order.extend((0..t).filter(|&v| v != special.v1 && v != special.v2));
    let hbar = complement(h);
    let n = phi.num_vars();

    let mut b = Builder::new();
    let (lits, _) = variable_gadgets(&mut b, n, t, &hbar, |a, c| h.has_edge(order[a - 1], order[c - 1]));
    let all_lits: Vec<usize> = lits.iter().skip(1).flatten().copied().collect();
    let mut removed = Vec::new();
    if clique {
        b.join(&all_lits, &all_lits);
    } else {
        removed.extend(lits.iter().skip(1).map(|p| (p[0], p[1])));
    }

    let others: Vec<usize> = (0..t).filter(|v| !special.vprime.contains(v)).collect();
    for (ci, clause) in phi.clauses().iter().enumerate() {
        let ys: Vec<usize> = clause.iter().map(|&l| lit_index(&lits, l)).collect();
        let sets: Vec<Vec<usize>> = (1..=others.len())
            .map(|j| range_vec(b.block(&hbar, |k| Role::ClauseSet { clause: ci + 1, set: j, index: k })))
            .collect();
        for a in 0..sets.len() {
            for c in a + 1..sets.len() {
                if h.has_edge(others[a], others[c]) {
                    b.join(&sets[a], &sets[c]);
                }
            }
            for (l, &y) in ys.iter().enumerate() {
                if h.has_edge(others[a], special.vprime[l]) {
                    b.join(&sets[a], &[y]);
                }
            }
        }
    }
    Ok(b.finish(Construction::FiveConn, describe(phi), Some(phi.clone()), None, Some(h.clone()), &removed))
}

/// Lexicographically first edge of `t` whose ends are both internal.
pub fn default_tree_pair(t: &Graph) -> Option<(usize, usize)> {
    t.edges()
        .into_iter()
        .find(|&(u, v)| t.degree(u) >= 2 && t.degree(v) >= 2)
}

/// Reduction from k-SAT with at least two true literals per clause to freeness
/// of a tree with `k` leaves. `pair` fixes the adjacent internal vertices that
/// play the two literal singletons; by default the first such edge is used.
pub fn build_tree_ksat_instance(
    phi: &CnfFormula,
    t: &Graph,
    pair: Option<(usize, usize)>,
) -> Result<GadgetInstance> {
    i4l4_conditions(t)?;
    let leaf_list = leaves(t);
    let k = leaf_list.len();
    phi.require_shape(k, Mode::AtLeast2)?;
    let (v1, v2) = match pair {
        Some(p) => p,
        None => default_tree_pair(t).ok_or_else(|| Error::Internal("no internal edge".into()))?,
    };
    if v1 >= t.n() || v2 >= t.n() || !t.has_edge(v1, v2) || t.degree(v1) < 2 || t.degree(v2) < 2 {
        return Err(Error::InvalidParameter(format!("{v1},{v2} is not an internal edge")));
    }

    let part = maximal_strong_modules(t)?;
    let mut inner = vec![v1, v2];
    inner.extend(internal_vertices(t).into_iter().filter(|&v| v != v1 && v != v2));
    for &v in &inner {
        if part.parts.iter().any(|p| p.contains(v) && p.len() > 1) {
            return Err(Error::Precondition(format!("internal vertex {v} is not a singleton module")));
        }
    }
    let mut reps: Vec<usize> = inner.clone();
    reps.extend(
        part.parts
            .iter()
            .map(|p| p.as_slice()[0])
            .filter(|v| !inner.contains(v)),
    );
    let tq = reps.len();
    let mut q = Graph::empty(tq);
    for a in 0..tq {
        for c in a + 1..tq {
            if t.has_edge(reps[a], reps[c]) {
                q.add_edge(a, c);
            }
        }
    }
    let r = part.sizes().into_iter().max().unwrap_or(1);
    let rkr = substitute(&Graph::empty(r), &Graph::complete(r));
    let big_r = substitute(&complement(&q), &rkr);
    let tbar = complement(t);
    let n = phi.num_vars();

    let mut b = Builder::new();
    let (lits, padding) = variable_gadgets(&mut b, n, tq, &big_r, |a, c| q.has_edge(a - 1, c - 1));
    let removed: Vec<(usize, usize)> = lits.iter().skip(1).map(|p| (p[0], p[1])).collect();

    let mut clause_blocks: Vec<Vec<usize>> = Vec::new();
    for (ci, clause) in phi.clauses().iter().enumerate() {
        let ys: Vec<usize> = clause.iter().map(|&l| lit_index(&lits, l)).collect();
        let sets: Vec<Vec<usize>> = (1..=inner.len())
            .map(|j| range_vec(b.block(&tbar, |idx| Role::ClauseSet { clause: ci + 1, set: j, index: idx })))
            .collect();
        for a in 0..sets.len() {
            for c in a + 1..sets.len() {
                if t.has_edge(inner[a], inner[c]) {
                    b.join(&sets[a], &sets[c]);
                }
            }
            for (l, &y) in ys.iter().enumerate() {
                if t.has_edge(leaf_list[l], inner[a]) {
                    b.join(&sets[a], &[y]);
                }
            }
        }
        let all: Vec<usize> = sets.concat();
        b.join(&all, &foreign_literals(&lits, clause));
        for prev in &clause_blocks {
            b.join(&all, prev);
        }
        clause_blocks.push(all);
    }
    padding_to_outside(&mut b, &lits, &padding);
    Ok(b.finish(Construction::TreeKsat, describe(phi), Some(phi.clone()), None, Some(t.clone()), &removed))
}

/// Reduction from 3-SAT to P6-freeness.
pub fn build_p6_instance(phi: &CnfFormula) -> Result<GadgetInstance> {
    phi.require_shape(3, Mode::AtLeast1)?;
    let p6 = Graph::path(6);
    let pbar = complement(&p6);
    let n = phi.num_vars();
    let mut b = Builder::new();
    let chain = [(1, 3), (3, 5), (2, 4), (4, 6)];
    let (lits, padding) = variable_gadgets(&mut b, n, 6, &pbar, |a, c| chain.contains(&(a, c)));

    let mut clause_blocks: Vec<(Vec<usize>, usize)> = Vec::new();
    for (ci, clause) in phi.clauses().iter().enumerate() {
        let i = ci + 1;
        let ys: Vec<usize> = clause.iter().map(|&l| lit_index(&lits, l)).collect();
        let c1 = range_vec(b.block(&pbar, |k| Role::ClauseSet { clause: i, set: 1, index: k }));
        let c2 = b.vertex(Role::ClauseSet { clause: i, set: 2, index: 0 });
        let c3 = range_vec(b.block(&pbar, |k| Role::ClauseSet { clause: i, set: 3, index: k }));
        b.join(&c1, &[c2]);
        b.join(&c1, &[ys[0]]);
        b.join(&[c2], &[ys[1]]);
        b.join(&c3, &[ys[1], ys[2]]);
        let foreign = foreign_literals(&lits, clause);
        b.join(&c1, &foreign);
        b.join(&c3, &foreign);
        let outer: Vec<usize> = c1.iter().copied().chain(c3.iter().copied()).collect();
        for (prev_outer, prev_c2) in &clause_blocks {
            b.join(&outer, prev_outer);
            b.join(&outer, &[*prev_c2]);
            b.join(&[c2], prev_outer);
        }
        clause_blocks.push((outer, c2));
    }
    padding_to_outside(&mut b, &lits, &padding);
    Ok(b.finish(Construction::P6, describe(phi), Some(phi.clone()), None, Some(p6), &[]))
}

/// Reduction from 4-SAT with at least two true literals per clause to C_{1,2,4}-freeness.
pub fn build_c124_instance(phi: &CnfFormula) -> Result<GadgetInstance> {
    phi.require_shape(4, Mode::AtLeast2)?;
    let target = build_tree(&TreeSpec::claw(1, 2, 4))?;
    let tbar = complement(&target);
    let n = phi.num_vars();
    let mut b = Builder::new();
    let (lits, padding) =
        variable_gadgets(&mut b, n, 8, &tbar, |a, c| (c == a + 2 && a <= 5) || (a, c) == (2, 8));

    // literal position -> clause sets adjacent to it
    let wiring: [&[usize]; 4] = [&[0, 1], &[1, 2], &[2, 3], &[2]];
    let mut clause_blocks: Vec<Vec<usize>> = Vec::new();
    for (ci, clause) in phi.clauses().iter().enumerate() {
        let ys: Vec<usize> = clause.iter().map(|&l| lit_index(&lits, l)).collect();
        let sets: Vec<Vec<usize>> = (1..=4)
            .map(|j| range_vec(b.block(&tbar, |k| Role::ClauseSet { clause: ci + 1, set: j, index: k })))
            .collect();
        for (l, targets) in wiring.iter().enumerate() {
            for &s in targets.iter() {
                b.join(&sets[s], &[ys[l]]);
            }
        }
        let all = sets.concat();
        b.join(&all, &foreign_literals(&lits, clause));
        for prev in &clause_blocks {
            b.join(&all, prev);
        }
        clause_blocks.push(all);
    }
    padding_to_outside(&mut b, &lits, &padding);
    Ok(b.finish(Construction::C124, describe(phi), Some(phi.clone()), None, Some(target), &[]))
}
