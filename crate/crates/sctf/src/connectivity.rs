//! Vertex connectivity via unit-capacity max flow on the split graph.

use std::collections::VecDeque;

use crate::graph::Graph;

/// Maximum number of internally vertex-disjoint s-t paths, for non-adjacent `s != t`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.n();
    // v_in = 2v, v_out = 2v+1
    let nodes = 2 * n;
    let big = n as i32 + 1;
    let mut cap = vec![0i32; nodes * nodes];
    let idx = |a: usize, b: usize| a * nodes + b;
    for v in 0..n {
        cap[idx(2 * v, 2 * v + 1)] = if v == s || v == t { big } else { 1 };
    }
    for (u, v) in g.edges() {
        cap[idx(2 * u + 1, 2 * v)] = big;
        cap[idx(2 * v + 1, 2 * u)] = big;
    }
    let src = 2 * s + 1;
    let dst = 2 * t;
    let mut flow = 0;
    let mut parent = vec![usize::MAX; nodes];
    loop {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        parent[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            if a == dst {
                break;
            }
            for b in 0..nodes {
                if parent[b] == usize::MAX && cap[idx(a, b)] > 0 {
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if parent[dst] == usize::MAX {
            return flow;
        }
        let mut b = dst;
        while b != src {
            let a = parent[b];
            cap[idx(a, b)] -= 1;
            cap[idx(b, a)] += 1;
            b = a;
        }
        flow += 1;
    }
}

/// Minimum number of vertices whose removal disconnects `g` or leaves one vertex.
/// Complete graphs give `n - 1`; graphs with at most one vertex give 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let mut best = n - 1;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_connectivity(g, i, j));
            }
        }
        i += 1;
    }
    best
}

pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    g.n() > k && vertex_connectivity(g) >= k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(vertex_connectivity(&Graph::cycle(5)), 2);
        assert_eq!(vertex_connectivity(&Graph::complete(5)), 4);
        assert_eq!(vertex_connectivity(&Graph::path(5)), 1);
        assert_eq!(vertex_connectivity(&Graph::empty(1)), 0);
        assert_eq!(vertex_connectivity(&Graph::empty(0)), 0);
        assert_eq!(vertex_connectivity(&Graph::empty(3)), 0);
    }
}
