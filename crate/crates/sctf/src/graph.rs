//! Simple undirected graphs over dense ids `0..n` and the elementary operations on them.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Undirected simple graph. Adjacency is stored as one bit row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A set of vertex ids, kept sorted and duplicate free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    /// Errors if some member is not below `n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    pub fn to_bits(&self, n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &v in &self.0 {
            b.insert(v);
        }
        b
    }

    pub fn from_bits(b: &FixedBitSet) -> Self {
        VertexSet(b.ones().collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    /// Triangle 0-1-2 with pendant vertex 3 on 0.
    pub fn paw() -> Self {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    /// K2 + K1: edge 0-1 and an isolated vertex 2.
    pub fn k2_plus_k1() -> Self {
        Graph::from_edges(3, &[(0, 1)]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Panics on out-of-range ids or `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        self.adj[u].toggle(v);
        self.adj[v].toggle(u);
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced by `vs`, relabelled so that `vs[i]` becomes `i`.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::empty(vs.len());
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.has_edge(vs[i], vs[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.adj[u].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Components of the subgraph induced by `within`.
    pub fn components_within(&self, within: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut left = within.clone();
        let mut comps = Vec::new();
        while let Some(s) = left.minimum() {
            let mut comp = FixedBitSet::with_capacity(self.n);
            comp.insert(s);
            left.set(s, false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let mut next = self.adj[u].clone();
                next.intersect_with(&left);
                for w in next.ones() {
                    left.set(w, false);
                    comp.insert(w);
                    stack.push(w);
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected_within(&self, within: &FixedBitSet) -> bool {
        self.components_within(within).len() <= 1
    }

    pub fn is_independent(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|v| self.adj[v].is_disjoint(set))
    }

    pub fn is_clique(&self, set: &FixedBitSet) -> bool {
        let k = set.count_ones(..);
        set.ones().all(|v| self.adj[v].intersection_count(set) + 1 == k)
    }

    /// Vertex `u` becomes `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

/// Every pair present in `g` is absent in the result and vice versa.
pub fn complement(g: &Graph) -> Graph {
    let mut out = Graph::empty(g.n);
    for u in 0..g.n {
        let mut row = g.adj[u].clone();
        row.toggle_range(..);
        row.set(u, false);
        out.adj[u] = row;
    }
    out
}

/// G ⊕ S: flip every pair with both endpoints in `s`.
pub fn subgraph_complement(g: &Graph, s: &VertexSet) -> Result<Graph> {
    s.check_range(g.n)?;
    let bits = s.to_bits(g.n);
    let mut out = g.clone();
    for u in s.iter() {
        out.adj[u].symmetric_difference_with(&bits);
        out.adj[u].set(u, false);
    }
    Ok(out)
}

/// `g ⊕ s` for a bitset `s`, with no range check.
pub fn flip_bits(g: &Graph, s: &FixedBitSet) -> Graph {
    let mut out = g.clone();
    for u in s.ones() {
        out.adj[u].symmetric_difference_with(s);
        out.adj[u].set(u, false);
    }
    out
}

/// Vertices of `g` come first, then those of `h` shifted by `n(g)`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let n = g.n + h.n;
    let mut out = Graph::empty(n);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(g.n + u, g.n + v);
    }
    out
}

/// Disjoint union plus every pair between `g` and `h`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    for u in 0..g.n {
        for v in 0..h.n {
            out.add_edge(u, g.n + v);
        }
    }
    out
}

/// G[H]: vertex `(u, a)` gets id `u * n(h) + a`.
pub fn substitute(g: &Graph, h: &Graph) -> Graph {
    let k = h.n;
    let mut out = Graph::empty(g.n * k);
    for u in 0..g.n {
        for (a, b) in h.edges() {
            out.add_edge(u * k + a, u * k + b);
        }
    }
    for (u, v) in g.edges() {
        for a in 0..k {
            for b in 0..k {
                out.add_edge(u * k + a, v * k + b);
            }
        }
    }
    out
}

/// Replace vertex `i` of `g` by the graph `parts[i]`; ids are assigned block by block.
pub fn substitute_each(g: &Graph, parts: &[Graph]) -> Graph {
    assert_eq!(parts.len(), g.n);
    let mut offset = Vec::with_capacity(g.n + 1);
    offset.push(0);
    for p in parts {
        offset.push(offset.last().unwrap() + p.n);
    }
    let mut out = Graph::empty(offset[g.n]);
    for (i, p) in parts.iter().enumerate() {
        for (a, b) in p.edges() {
            out.add_edge(offset[i] + a, offset[i] + b);
        }
    }
    for (u, v) in g.edges() {
        for a in offset[u]..offset[u + 1] {
            for b in offset[v]..offset[v + 1] {
                out.add_edge(a, b);
            }
        }
    }
    out
}
