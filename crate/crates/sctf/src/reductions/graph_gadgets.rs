//! Gadgets built from a smaller graph instance: blow-ups and per-vertex attachments.

use crate::error::{Error, Result};
use crate::graph::{complement, substitute_each, Graph};
use crate::modular::is_prime;
use crate::trees::{build_tree, is_tree, TreeSpec};

use super::{range_vec, Builder, Construction, GadgetInstance, Role};

/// Replace vertex `i` of `hq` by an independent set of size `profile[i]`.
pub fn blowup_independent(hq: &Graph, profile: &[usize]) -> Result<Graph> {
    if profile.len() != hq.n() {
        return Err(Error::InvalidParameter(format!(
            "profile has {} entries for {} vertices",
            profile.len(),
            hq.n()
        )));
    }
    if profile.contains(&0) {
        return Err(Error::InvalidParameter("profile sizes must be positive".into()));
    }
    let parts: Vec<Graph> = profile.iter().map(|&r| Graph::empty(r)).collect();
    Ok(substitute_each(hq, &parts))
}

/// Each vertex `u` becomes `W_u`, r disjoint copies of `K_r` (named `K0`, `K1`, ...);
/// `W_u` and `W_v` are fully adjacent iff `uv` is an edge.
pub fn instance_blowup_rkr(gp: &Graph, r: usize) -> Result<GadgetInstance> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let kr = Graph::complete(r);
    let mut b = Builder::new();
    let mut blocks = Vec::with_capacity(gp.n());
    for u in 0..gp.n() {
        let mut w = Vec::with_capacity(r * r);
        for c in 0..r {
            let name = format!("K{c}");
            w.extend(b.block(&kr, |k| Role::Attachment { source: u, name: name.clone(), index: k }));
        }
        blocks.push(w);
    }
    for (u, v) in gp.edges() {
        b.join(&blocks[u], &blocks[v]);
    }
    let source = format!("graph on {} vertices, r={r}", gp.n());
    Ok(b.finish(Construction::Blowup, source, None, Some(gp.clone()), None, &[]))
}

/// Source vertices first (ids `0..n`, role `att:u/G/0`), with their original edges.
fn start_from_source(gp: &Graph) -> Builder {
    let mut b = Builder::new();
    for u in 0..gp.n() {
        b.vertex(Role::Attachment { source: u, name: "G".into(), index: 0 });
    }
    for (u, v) in gp.edges() {
        b.edge(u, v);
    }
    b
}

fn copy(b: &mut Builder, g: &Graph, u: usize, name: &str) -> Vec<usize> {
    range_vec(b.block(g, |k| Role::Attachment { source: u, name: name.to_string(), index: k }))
}

/// Every vertex `u` gets a copy `W_u` of the complement of `t`, fully adjacent to `u`.
pub fn attach_leaf_complements(gp: &Graph, t: &Graph) -> Result<GadgetInstance> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    if !is_prime(t) {
        return Err(Error::Precondition("the attached tree must be prime".into()));
    }
    let tbar = complement(t);
    let mut b = start_from_source(gp);
    for u in 0..gp.n() {
        let w = copy(&mut b, &tbar, u, "W");
        b.join(&[u], &w);
    }
    let source = format!("graph on {} vertices, tree on {} vertices", gp.n(), t.n());
    Ok(b.finish(Construction::LeafAttach, source, None, Some(gp.clone()), Some(t.clone()), &[]))
}

/// Star-to-bistar attachment. Per vertex `u`: cliques `Y1..Y{x+1}` (each `K_y`),
/// with `Y{x+1}` adjacent to `u` and to every other `Yi`; for `i <= x` a family
/// `Ui` of complement copies shaped as `b`, `a` and `x` leaves of `a`, its
/// `b`-copy adjacent to `Yi`; and a family `U{x+1}` of an `a`-copy adjacent
/// to `Yx` with `x` leaf copies. `Ux` is fully adjacent to `U{x+1}`.
pub fn star_to_bistar_instance(gp: &Graph, x: usize, y: usize) -> Result<GadgetInstance> {
    if x < 1 || x > y || y < 3 {
        return Err(Error::InvalidParameter(format!("need 1 <= x <= y and y >= 3, got x={x}, y={y}")));
    }
    let target = build_tree(&TreeSpec::bistar(x, y))?;
    let tbar = complement(&target);
    let ky = Graph::complete(y);
    let mut b = start_from_source(gp);
    for u in 0..gp.n() {
        let ys: Vec<Vec<usize>> = (1..=x + 1).map(|i| copy(&mut b, &ky, u, &format!("Y{i}"))).collect();
        b.join(&[u], &ys[x]);
        for yi in &ys[..x] {
            b.join(&ys[x], yi);
        }
        let mut families: Vec<Vec<usize>> = Vec::new();
        for i in 1..=x {
            let bc = copy(&mut b, &tbar, u, &format!("U{i}.b"));
            let ac = copy(&mut b, &tbar, u, &format!("U{i}.a"));
            b.join(&bc, &ys[i - 1]);
            b.join(&ac, &bc);
            let mut fam = [bc, ac.clone()].concat();
            for j in 1..=x {
                let l = copy(&mut b, &tbar, u, &format!("U{i}.l{j}"));
                b.join(&l, &ac);
                fam.extend(l);
            }
            families.push(fam);
        }
        let last_a = copy(&mut b, &tbar, u, &format!("U{}.a", x + 1));
        b.join(&last_a, &ys[x - 1]);
        let mut last = last_a.clone();
        for j in 1..=x {
            let l = copy(&mut b, &tbar, u, &format!("U{}.l{j}", x + 1));
            b.join(&l, &last_a);
            last.extend(l);
        }
        b.join(&families[x - 1], &last);
    }
    let source = format!("graph on {} vertices, x={x}, y={y}", gp.n());
    Ok(b.finish(Construction::Bistar, source, None, Some(gp.clone()), Some(target), &[]))
}

/// Bistar-to-tristar attachment for `T_{1,y,z}`. Per vertex `u`: a clique `K`
/// of size `z` adjacent to `u`, then complement copies shaped as the tree
/// without the `z` leaves of `c`: `c` adjacent to `K`, `c-b`, `b-a`, `y` leaf
/// copies on `b` and one on `a`.
pub fn bistar_to_tristar_instance(gp: &Graph, y: usize, z: usize) -> Result<GadgetInstance> {
    if y < 1 || z < 3 {
        return Err(Error::InvalidParameter(format!("need y >= 1 and z >= 3, got y={y}, z={z}")));
    }
    let target = build_tree(&TreeSpec::tristar(1, y, z))?;
    let tbar = complement(&target);
    let kz = Graph::complete(z);
    let mut b = start_from_source(gp);
    for u in 0..gp.n() {
        let k = copy(&mut b, &kz, u, "K");
        b.join(&[u], &k);
        let c = copy(&mut b, &tbar, u, "c");
        let bb = copy(&mut b, &tbar, u, "b");
        let a = copy(&mut b, &tbar, u, "a");
        b.join(&c, &k);
        b.join(&c, &bb);
        b.join(&bb, &a);
        for j in 1..=y {
            let l = copy(&mut b, &tbar, u, &format!("bl{j}"));
            b.join(&l, &bb);
        }
        let al = copy(&mut b, &tbar, u, "al");
        b.join(&al, &a);
    }
    let source = format!("graph on {} vertices, y={y}, z={z}", gp.n());
    Ok(b.finish(Construction::TristarFromBistar, source, None, Some(gp.clone()), Some(target), &[]))
}

/// Guard family shaped as `T_{x,y,z}` without the `y` leaves of `b`; returns (all, b-copy).
fn tristar_guard(b: &mut Builder, tbar: &Graph, u: usize, tag: &str, x: usize, z: usize) -> (Vec<usize>, Vec<usize>) {
    let a = copy(b, tbar, u, &format!("{tag}.a"));
    let bb = copy(b, tbar, u, &format!("{tag}.b"));
    let c = copy(b, tbar, u, &format!("{tag}.c"));
    b.join(&a, &bb);
    b.join(&bb, &c);
    let mut all = [a.clone(), bb.clone(), c.clone()].concat();
    for j in 1..=x {
        let l = copy(b, tbar, u, &format!("{tag}.al{j}"));
        b.join(&l, &a);
        all.extend(l);
    }
    for j in 1..=z {
        let l = copy(b, tbar, u, &format!("{tag}.cl{j}"));
        b.join(&l, &c);
        all.extend(l);
    }
    (all, bb)
}

/// Star-to-tristar attachment. Per vertex `u`: cliques `P1`, `P2` (each `K_y`)
/// adjacent to `u`; `x` complement copies `X1..` adjacent to `P1` and `z`
/// copies `Z1..` adjacent to `P2`; guard families `X'` (on `P1`) and `Z'` (on
/// `P2`) fully adjacent to the `X` and `Z` copies respectively.
pub fn star_to_tristar_instance(gp: &Graph, x: usize, y: usize, z: usize) -> Result<GadgetInstance> {
    if x < 1 || x > z || y < 3 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= x <= z and y >= 3, got x={x}, y={y}, z={z}"
        )));
    }
    let target = build_tree(&TreeSpec::tristar(x, y, z))?;
    let tbar = complement(&target);
    let ky = Graph::complete(y);
    let mut b = start_from_source(gp);
    for u in 0..gp.n() {
        let p1 = copy(&mut b, &ky, u, "P1");
        let p2 = copy(&mut b, &ky, u, "P2");
        b.join(&[u], &p1);
        b.join(&[u], &p2);
        let xs: Vec<usize> = (1..=x).flat_map(|j| copy(&mut b, &tbar, u, &format!("X{j}"))).collect();
        let zs: Vec<usize> = (1..=z).flat_map(|j| copy(&mut b, &tbar, u, &format!("Z{j}"))).collect();
        b.join(&xs, &p1);
        b.join(&zs, &p2);
        let (xg, xb) = tristar_guard(&mut b, &tbar, u, "X'", x, z);
        let (zg, zb) = tristar_guard(&mut b, &tbar, u, "Z'", x, z);
        b.join(&xb, &p1);
        b.join(&zb, &p2);
        b.join(&xs, &xg);
        b.join(&zs, &zg);
    }
    let source = format!("graph on {} vertices, x={x}, y={y}, z={z}", gp.n());
    Ok(b.finish(Construction::TristarFromStar, source, None, Some(gp.clone()), Some(target), &[]))
}
