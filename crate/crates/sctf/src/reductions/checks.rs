//! Structural re-verification of compiled gadgets against their stated shape.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{complement, substitute, Graph, VertexSet};
use crate::iso::is_isomorphic;
use crate::modular::quotient_graph;
use crate::trees::{build_tree, TreeSpec};

use super::{Construction, GadgetInstance, Role};

fn bad(msg: String) -> Error {
    Error::Internal(msg)
}

fn full(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&u| b.iter().all(|&v| u == v || g.has_edge(u, v)))
}

fn none(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&u| b.iter().all(|&v| !g.has_edge(u, v)))
}

/// Sets of the variable gadgets, keyed (var, set), and of the clause gadgets, keyed (clause, set).
type Sets = BTreeMap<(usize, usize), Vec<usize>>;

fn collect_sets(inst: &GadgetInstance) -> (Sets, Sets) {
    let mut vars = Sets::new();
    let mut clauses = Sets::new();
    for (v, r) in inst.roles.iter().enumerate() {
        match r {
            Role::Literal { var, positive } => vars.entry((*var, if *positive { 1 } else { 2 })).or_default().push(v),
            Role::VarSet { var, set, .. } => vars.entry((*var, *set)).or_default().push(v),
            Role::ClauseSet { clause, set, .. } => clauses.entry((*clause, *set)).or_default().push(v),
            Role::Attachment { .. } => {}
        }
    }
    (vars, clauses)
}

/// One representative per set of group `i`, in set order.
fn representatives(sets: &Sets, i: usize) -> Vec<usize> {
    sets.range((i, 0)..(i, usize::MAX)).map(|(_, vs)| vs[0]).collect()
}

fn group(sets: &Sets, i: usize) -> Vec<usize> {
    sets.range((i, 0)..(i, usize::MAX)).flat_map(|(_, vs)| vs.iter().copied()).collect()
}

/// Every stated property of a formula-based gadget: block shapes, the
/// literal set, one-vertex-per-set copies of the target, padding and clause
/// cross adjacency, and foreign-literal adjacency.
fn check_sat_gadget(inst: &GadgetInstance) -> Result<()> {
    let g = &inst.graph;
    let phi = inst.formula.as_ref().ok_or_else(|| bad("missing formula".into()))?;
    let target = inst.target.as_ref().ok_or_else(|| bad("missing target".into()))?;
    let n = phi.num_vars();
    let (vars, clauses) = collect_sets(inst);
    let c124 = build_tree(&TreeSpec::claw(1, 2, 4))?;

    let (var_pad, clause_pad, var_shape) = match inst.construction {
        Construction::FiveConn => (complement(target), complement(target), target.clone()),
        Construction::TreeKsat => {
            let padded = vars.iter().find(|((_, s), _)| *s >= 3).map_or(0, |(_, vs)| vs.len());
            let q = quotient_graph(target)?;
            let r = (1..=padded).find(|r| r * r * q.n() == padded).unwrap_or(1);
            let rkr = substitute(&Graph::empty(r), &Graph::complete(r));
            (substitute(&complement(&q), &rkr), complement(target), q)
        }
        Construction::P6 => (complement(target), complement(target), Graph::path(6)),
        Construction::C124 => (complement(&c124), complement(&c124), c124.clone()),
        _ => return Err(bad("not a formula gadget".into())),
    };

    for (&(i, j), vs) in &vars {
        if j >= 3 && !is_isomorphic(&g.induced_subgraph(vs), &var_pad) {
            return Err(bad(format!("variable {i} set {j} is not the stated padding graph")));
        }
    }
    for (&(i, j), vs) in &clauses {
        let single = inst.construction == Construction::P6 && j == 2;
        let ok = if single { vs.len() == 1 } else { is_isomorphic(&g.induced_subgraph(vs), &clause_pad) };
        if !ok {
            return Err(bad(format!("clause {i} set {j} has the wrong shape")));
        }
    }

    let lits: Vec<usize> = inst.literal_vertices();
    if lits.len() != 2 * n {
        return Err(bad(format!("{} literal vertices for {n} variables", lits.len())));
    }
    let lbits = VertexSet::from(lits.clone()).to_bits(g.n());
    let l_ok = match inst.construction {
        Construction::FiveConn => g.is_clique(&lbits) || g.is_independent(&lbits),
        _ => g.is_independent(&lbits),
    };
    if !l_ok {
        return Err(bad("literal vertices have the wrong shape".into()));
    }

    for i in 1..=n {
        let reps = representatives(&vars, i);
        let mut h = g.induced_subgraph(&reps);
        h.toggle_edge(0, 1);
        if !is_isomorphic(&h, &var_shape) {
            return Err(bad(format!("variable gadget {i} does not carry the target shape")));
        }
        if inst.construction != Construction::FiveConn {
            let own = group(&vars, i);
            let pad: Vec<usize> = own.iter().copied().filter(|v| !lits.contains(v)).collect();
            let outside: Vec<usize> = (0..g.n()).filter(|v| !own.contains(v)).collect();
            if !full(g, &pad, &outside) {
                return Err(bad(format!("padding of variable {i} misses an outside vertex")));
            }
        }
    }

    let m = phi.clauses().len();
    for (ci, clause) in phi.clauses().iter().enumerate() {
        let i = ci + 1;
        let ys: Vec<usize> = clause
            .iter()
            .map(|&l| inst.literal_vertex(l.unsigned_abs() as usize, l > 0).unwrap())
            .collect();
        let mut picked = representatives(&clauses, i);
        picked.extend(&ys);
        if !is_isomorphic(&g.induced_subgraph(&picked), target) {
            return Err(bad(format!("clause gadget {i} with its literals does not induce the target")));
        }
        let foreign: Vec<usize> = lits.iter().copied().filter(|v| !ys.contains(v)).collect();
        for (&(_, j), vs) in clauses.range((i, 0)..(i, usize::MAX)) {
            let expect_full = match inst.construction {
                Construction::FiveConn => None,
                Construction::P6 if j == 2 => Some(false),
                _ => Some(true),
            };
            let ok = match expect_full {
                Some(true) => full(g, vs, &foreign),
                Some(false) | None => none(g, vs, &foreign),
            };
            if !ok {
                return Err(bad(format!("clause {i} set {j} has wrong foreign-literal adjacency")));
            }
        }
        for k in i + 1..=m {
            for (&(_, a), va) in clauses.range((i, 0)..(i, usize::MAX)) {
                for (&(_, b), vb) in clauses.range((k, 0)..(k, usize::MAX)) {
                    let ok = match inst.construction {
                        Construction::FiveConn => none(g, va, vb),
                        Construction::P6 if a == 2 && b == 2 => none(g, va, vb),
                        _ => full(g, va, vb),
                    };
                    if !ok {
                        return Err(bad(format!("clauses {i} and {k} have wrong cross adjacency")));
                    }
                }
            }
        }
    }
    Ok(())
}

fn clique_block(c: Construction, name: &str) -> bool {
    match c {
        Construction::Blowup => true,
        Construction::Bistar => name.starts_with('Y'),
        Construction::TristarFromBistar => name == "K",
        Construction::TristarFromStar => name == "P1" || name == "P2",
        _ => false,
    }
}

fn check_attachment_gadget(inst: &GadgetInstance) -> Result<()> {
    let g = &inst.graph;
    let gp = inst.source_graph.as_ref().ok_or_else(|| bad("missing source graph".into()))?;
    let mut blocks: BTreeMap<(usize, String), Vec<usize>> = BTreeMap::new();
    let mut owner = vec![usize::MAX; g.n()];
    for (v, r) in inst.roles.iter().enumerate() {
        match r {
            Role::Attachment { source, name, .. } => {
                owner[v] = *source;
                if name != "G" {
                    blocks.entry((*source, name.clone())).or_default().push(v);
                }
            }
            _ => return Err(bad("non-attachment role in a graph gadget".into())),
        }
    }
    let tbar = inst.target.as_ref().map(complement);
    for ((u, name), vs) in &blocks {
        let h = g.induced_subgraph(vs);
        let ok = if clique_block(inst.construction, name) {
            h == Graph::complete(vs.len())
        } else {
            tbar.as_ref().is_some_and(|tb| is_isomorphic(&h, tb))
        };
        if !ok {
            return Err(bad(format!("block {name} of vertex {u} has the wrong shape")));
        }
    }
    let keeps_source = inst.construction != Construction::Blowup;
    for (a, b) in g.edges() {
        let (ua, ub) = (owner[a], owner[b]);
        if ua == ub {
            continue;
        }
        let ok = if keeps_source {
            a < gp.n() && b < gp.n() && gp.has_edge(a, b)
        } else {
            gp.has_edge(ua, ub)
        };
        if !ok {
            return Err(bad(format!("edge {a}-{b} joins the gadgets of {ua} and {ub}")));
        }
    }
    if !keeps_source {
        for (u, v) in gp.edges() {
            let wu: Vec<usize> = (0..g.n()).filter(|&x| owner[x] == u).collect();
            let wv: Vec<usize> = (0..g.n()).filter(|&x| owner[x] == v).collect();
            if !full(g, &wu, &wv) {
                return Err(bad(format!("blocks of {u} and {v} are not fully adjacent")));
            }
        }
    } else if &g.induced_subgraph(&(0..gp.n()).collect::<Vec<_>>()) != gp {
        return Err(bad("source graph is not preserved".into()));
    }
    Ok(())
}

/// Re-derive every structural property the construction promises; errors name the first violation.
pub fn check_structure(inst: &GadgetInstance) -> Result<()> {
    if inst.roles.len() != inst.graph.n() {
        return Err(bad("role count differs from vertex count".into()));
    }
    match inst.construction {
        Construction::FiveConn | Construction::TreeKsat | Construction::P6 | Construction::C124 => {
            check_sat_gadget(inst)
        }
        _ => check_attachment_gadget(inst),
    }
}
