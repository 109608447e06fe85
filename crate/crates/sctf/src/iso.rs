//! Induced-subgraph search and isomorphism by backtracking over bit rows.

use std::collections::BTreeMap;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::graph::{complement, disjoint_union, Graph, VertexSet};

/// Order pattern vertices so that each one has as many earlier neighbours as possible.
fn pattern_order(h: &Graph) -> Vec<usize> {
    let k = h.n();
    let mut placed = vec![false; k];
    let mut links = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best = usize::MAX;
        for v in 0..k {
            if placed[v] {
                continue;
            }
            if best == usize::MAX
                || (links[v], h.degree(v)) > (links[best], h.degree(best))
            {
                best = v;
            }
        }
        placed[best] = true;
        order.push(best);
        for w in h.neighbor_iter(best) {
            links[w] += 1;
        }
    }
    order
}

/// Core matcher: maps pattern vertex `p` to a host vertex so that adjacency
/// and non-adjacency are both preserved. `allowed[p]` restricts the images.
fn embed(g: &Graph, h: &Graph, allowed: &[FixedBitSet]) -> Option<Vec<usize>> {
    let k = h.n();
    let n = g.n();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > n {
        return None;
    }
    let order = pattern_order(h);
    let mut adj_prev: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut non_prev: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in 0..i {
            if h.has_edge(order[i], order[j]) {
                adj_prev[i].push(j);
            } else {
                non_prev[i].push(j);
            }
        }
    }

    let mut map = vec![usize::MAX; k];
    let mut used = FixedBitSet::with_capacity(n);
    let mut cands: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut cursor = vec![0usize; k];
    let mut scratch = FixedBitSet::with_capacity(n);

    let fill = |depth: usize,
                map: &[usize],
                used: &FixedBitSet,
                scratch: &mut FixedBitSet,
                out: &mut Vec<usize>| {
        scratch.clone_from(&allowed[order[depth]]);
        for &j in &adj_prev[depth] {
            scratch.intersect_with(g.neighbors(map[j]));
        }
        for &j in &non_prev[depth] {
            scratch.difference_with(g.neighbors(map[j]));
        }
        scratch.difference_with(used);
        out.clear();
        out.extend(scratch.ones());
    };

    fill(0, &map, &used, &mut scratch, &mut cands[0]);
    let mut depth = 0;
    loop {
        if cursor[depth] < cands[depth].len() {
            let v = cands[depth][cursor[depth]];
            cursor[depth] += 1;
            if map[depth] != usize::MAX {
                used.set(map[depth], false);
            }
            map[depth] = v;
            used.insert(v);
            if depth + 1 == k {
                let mut image = vec![0; k];
                for i in 0..k {
                    image[order[i]] = map[i];
                }
                return Some(image);
            }
            depth += 1;
            fill(depth, &map, &used, &mut scratch, &mut cands[depth]);
            cursor[depth] = 0;
            map[depth] = usize::MAX;
        } else {
            if map[depth] != usize::MAX {
                used.set(map[depth], false);
                map[depth] = usize::MAX;
            }
            if depth == 0 {
                return None;
            }
            depth -= 1;
        }
    }
}

/// Forward-checking matcher for induced copies: every unmapped pattern vertex keeps
/// its set of still-possible images, and the next vertex mapped is the one with the
/// fewest. A mapping step that empties any set is undone at once.
fn embed_forward(g: &Graph, h: &Graph, allowed: &[FixedBitSet]) -> Option<Vec<usize>> {
    let k = h.n();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > g.n() || allowed.iter().any(|d| d.is_clear()) {
        return None;
    }
    let mut levels = vec![allowed.to_vec(); k];
    let mut map = vec![usize::MAX; k];
    extend(g, h, &mut levels, &mut map, 0).then_some(map)
}

fn extend(g: &Graph, h: &Graph, levels: &mut [Vec<FixedBitSet>], map: &mut [usize], depth: usize) -> bool {
    let k = h.n();
    let p = (0..k)
        .filter(|&q| map[q] == usize::MAX)
        .min_by_key(|&q| levels[depth][q].count_ones(..))
        .expect("an unmapped pattern vertex");
    let cands: Vec<usize> = levels[depth][p].ones().collect();
    if depth + 1 == k {
        return match cands.first() {
            Some(&v) => {
                map[p] = v;
                true
            }
            None => false,
        };
    }
    for v in cands {
        let (cur, rest) = levels.split_at_mut(depth + 1);
        let (doms, next) = (&cur[depth], &mut rest[0]);
        let mut ok = true;
        for q in 0..k {
            if q == p || map[q] != usize::MAX {
                continue;
            }
            next[q].clone_from(&doms[q]);
            if h.has_edge(p, q) {
                next[q].intersect_with(g.neighbors(v));
            } else {
                next[q].difference_with(g.neighbors(v));
            }
            next[q].set(v, false);
            if next[q].is_clear() {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        map[p] = v;
        if extend(g, h, levels, map, depth + 1) {
            return true;
        }
        map[p] = usize::MAX;
    }
    false
}

fn degree_filter(g: &Graph, h: &Graph) -> Vec<FixedBitSet> {
    let n = g.n();
    let k = h.n();
    (0..k)
        .map(|p| {
            let dp = h.degree(p);
            let cp = k - 1 - dp;
            let mut b = FixedBitSet::with_capacity(n);
            for v in 0..n {
                let dv = g.degree(v);
                if dv >= dp && n - 1 - dv >= cp {
                    b.insert(v);
                }
            }
            b
        })
        .collect()
}

/// Injective map `V(h) -> V(g)` whose image induces a copy of `h`, if any.
pub fn find_induced_embedding(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if h.n() > g.n() {
        return None;
    }
    embed_forward(g, h, &degree_filter(g, h))
}

/// A vertex set `A` with `g[A]` isomorphic to `h`, or `None` when `g` is `h`-free.
pub fn contains_induced(g: &Graph, h: &Graph) -> Option<VertexSet> {
    find_induced_embedding(g, h).map(VertexSet::from)
}

pub fn is_free_of(g: &Graph, h: &Graph) -> bool {
    find_induced_embedding(g, h).is_none()
}

/// Stable colour refinement. Colour ids are assigned from sorted signatures, so they
/// are invariant under relabelling.
pub fn refine_colors(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut colors: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut classes = {
        let mut c = colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbor_iter(v).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut ids: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in &sigs {
            ids.insert(s, 0);
        }
        for (i, val) in ids.values_mut().enumerate() {
            *val = i as u32;
        }
        let next: Vec<u32> = sigs.iter().map(|s| ids[s]).collect();
        let count = ids.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

/// Hash of isomorphism invariants (size, edge count, refined colour histogram).
pub fn invariant_hash(g: &Graph) -> u64 {
    let mut hist = refine_colors(g);
    hist.sort_unstable();
    let mut hasher = DefaultHasher::new();
    (g.n(), g.m(), hist).hash(&mut hasher);
    hasher.finish()
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Bijection `V(h) -> V(g)` preserving adjacency, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n != h.n() || g.m() != h.m() {
        return None;
    }
    let mut dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    // refine on the disjoint union so the two colourings share ids
    let colors = refine_colors(&disjoint_union(g, h));
    let (cg, ch) = colors.split_at(n);
    let mut hg = cg.to_vec();
    let mut hh = ch.to_vec();
    hg.sort_unstable();
    hh.sort_unstable();
    if hg != hh {
        return None;
    }
    let allowed: Vec<FixedBitSet> = (0..n)
        .map(|p| {
            let mut b = FixedBitSet::with_capacity(n);
            for v in 0..n {
                if cg[v] == ch[p] {
                    b.insert(v);
                }
            }
            b
        })
        .collect();
    embed(g, h, &allowed)
}

pub fn is_self_complementary(g: &Graph) -> bool {
    let n = g.n();
    if 4 * g.m() != n * n.saturating_sub(1) {
        return false;
    }
    is_isomorphic(g, &complement(g))
}
