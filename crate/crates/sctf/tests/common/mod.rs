//! Naive reference implementations shared by the integration tests. Each is a
//! direct transcription of a definition, kept independent of the library code paths.
#![allow(dead_code)]

use rand::Rng;
use sctf::graph::Graph;

/// Graph on `n` vertices whose edge `k` (pairs in lexicographic order) is bit `k` of `mask`.
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> k & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
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

/// Adjacency matrix, for comparisons that must not go through `Graph` methods.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| u != v && g.has_edge(u, v)).collect()).collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All subsets of `0..n` as sorted vectors.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n).map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect()
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n).into_iter().filter(|s| s.len() == k).collect()
}

/// `g ⊕ s` straight from the definition.
pub fn flip(g: &Graph, s: &[usize]) -> Graph {
    let a = matrix(g);
    let mut out = Graph::empty(g.n());
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let toggled = s.contains(&u) && s.contains(&v);
            if a[u][v] != toggled {
                out.add_edge(u, v);
            }
        }
    }
    out
}

pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() {
        return false;
    }
    let (a, b) = (matrix(g), matrix(h));
    permutations(g.n())
        .iter()
        .any(|p| (0..g.n()).all(|u| (0..g.n()).all(|v| a[u][v] == b[p[u]][p[v]])))
}

/// Brute-force induced-copy test: every ordered choice of `h.n()` vertices.
pub fn has_induced(g: &Graph, h: &Graph) -> bool {
    let k = h.n();
    if k > g.n() {
        return false;
    }
    let (a, b) = (matrix(g), matrix(h));
    let perms = permutations(k);
    k_subsets(g.n(), k).iter().any(|s| {
        perms
            .iter()
            .any(|p| (0..k).all(|i| (0..k).all(|j| b[i][j] == a[s[p[i]]][s[p[j]]])))
    })
}

pub fn connected(g: &Graph, keep: &[usize]) -> bool {
    if keep.is_empty() {
        return true;
    }
    let a = matrix(g);
    let mut seen = vec![keep[0]];
    let mut i = 0;
    while i < seen.len() {
        let u = seen[i];
        for &v in keep {
            if a[u][v] && !seen.contains(&v) {
                seen.push(v);
            }
        }
        i += 1;
    }
    seen.len() == keep.len()
}

/// Smallest number of deleted vertices that disconnects `g` or leaves one vertex.
pub fn connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    for k in 0..n - 1 {
        for cut in k_subsets(n, k) {
            let rest: Vec<usize> = (0..n).filter(|v| !cut.contains(v)).collect();
            if !connected(g, &rest) {
                return k;
            }
        }
    }
    n - 1
}

/// `x` is a module: every outside vertex sees all of `x` or none of it.
pub fn is_module(g: &Graph, x: &[usize]) -> bool {
    let a = matrix(g);
    (0..g.n())
        .filter(|v| !x.contains(v))
        .all(|v| x.iter().all(|&u| a[v][u]) || x.iter().all(|&u| !a[v][u]))
}

pub fn all_modules(g: &Graph) -> Vec<Vec<usize>> {
    subsets(g.n()).into_iter().filter(|s| !s.is_empty() && is_module(g, s)).collect()
}

fn overlap(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|v| b.contains(v)) && a.iter().any(|v| !b.contains(v)) && b.iter().any(|v| !a.contains(v))
}

/// Maximal proper strong modules, sorted by smallest member.
pub fn maximal_strong(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mods = all_modules(g);
    let strong: Vec<&Vec<usize>> =
        mods.iter().filter(|m| m.len() < n && !mods.iter().any(|o| overlap(m, o))).collect();
    let mut out: Vec<Vec<usize>> = strong
        .iter()
        .filter(|m| !strong.iter().any(|o| o.len() > m.len() && m.iter().all(|v| o.contains(v))))
        .map(|m| m.to_vec())
        .collect();
    out.sort();
    out
}

pub fn prime(g: &Graph) -> bool {
    g.n() >= 3 && all_modules(g).iter().all(|m| m.len() == 1 || m.len() == g.n())
}

pub fn paw_free(g: &Graph) -> bool {
    !has_induced(g, &Graph::paw())
}

/// Satisfiability by scanning all `2^n` assignments; `threshold` true literals needed per clause.
pub fn satisfiable(n: usize, clauses: &[Vec<i32>], threshold: usize) -> bool {
    (0u64..1 << n).any(|m| {
        clauses.iter().all(|c| {
            let t = c.iter().filter(|&&l| (m >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)).count();
            t >= threshold
        })
    })
}

/// Every clause over variables `1..=n` using exactly `width` distinct variables, in a fixed order.
pub fn all_clauses(n: usize, width: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for vars in k_subsets(n, width) {
        for signs in 0u32..1 << width {
            out.push(
                vars.iter()
                    .enumerate()
                    .map(|(i, &v)| if signs >> i & 1 == 1 { -(v as i32 + 1) } else { v as i32 + 1 })
                    .collect(),
            );
        }
    }
    out
}

/// All clause sequences of length `0..=max_m` drawn from `pool`.
pub fn all_formulas(pool: &[Vec<i32>], max_m: usize) -> Vec<Vec<Vec<i32>>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Vec<i32>>> = vec![Vec::new()];
    for _ in 0..max_m {
        layer = layer
            .iter()
            .flat_map(|f| {
                pool.iter().map(move |c| {
                    let mut g = f.clone();
                    g.push(c.clone());
                    g
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
