//! Modules, the maximal strong module partition and quotient graphs.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{complement, Graph, VertexSet};

/// Partition of the vertex set into maximal strong modules, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePartition {
    pub parts: Vec<VertexSet>,
    pub host: Graph,
}

impl ModulePartition {
    /// Index of the part containing each vertex.
    pub fn part_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.host.n()];
        for (i, p) in self.parts.iter().enumerate() {
            for v in p.iter() {
                out[v] = i;
            }
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }
}

impl fmt::Display for ModulePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            writeln!(f, "{i}: {p}")?;
        }
        Ok(())
    }
}

pub fn is_module_bits(g: &Graph, x: &FixedBitSet) -> bool {
    let size = x.count_ones(..);
    if size <= 1 {
        return true;
    }
    (0..g.n())
        .filter(|&w| !x.contains(w))
        .all(|w| {
            let c = g.neighbors(w).intersection_count(x);
            c == 0 || c == size
        })
}

/// True iff every outside vertex sees all of `x` or none of it.
pub fn is_module(g: &Graph, x: &VertexSet) -> bool {
    is_module_bits(g, &x.to_bits(g.n()))
}

/// Smallest module containing `seed`.
pub fn module_closure(g: &Graph, seed: &FixedBitSet) -> FixedBitSet {
    let mut m = seed.clone();
    loop {
        let size = m.count_ones(..);
        let splitter = (0..g.n()).find(|&w| {
            if m.contains(w) {
                return false;
            }
            let c = g.neighbors(w).intersection_count(&m);
            c != 0 && c != size
        });
        match splitter {
            Some(w) => m.insert(w),
            None => return m,
        }
    }
}

fn pair_closure(g: &Graph, u: usize, v: usize) -> FixedBitSet {
    let mut seed = FixedBitSet::with_capacity(g.n());
    seed.insert(u);
    seed.insert(v);
    module_closure(g, &seed)
}

/// At least three vertices and no module besides singletons and the whole set.
pub fn is_prime(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            if pair_closure(g, u, v).count_ones(..) != n {
                return false;
            }
        }
    }
    true
}

/// Defined when `g` is prime, or when both `g` and its complement are connected.
pub fn maximal_strong_modules(g: &Graph) -> Result<ModulePartition> {
    let n = g.n();
    if is_prime(g) {
        return Ok(ModulePartition {
            parts: (0..n).map(|v| VertexSet::from([v])).collect(),
            host: g.clone(),
        });
    }
    if n < 2 || !g.is_connected() {
        return Err(Error::ModulesUndefined("graph is disconnected or trivial".into()));
    }
    if !complement(g).is_connected() {
        return Err(Error::ModulesUndefined("complement is disconnected".into()));
    }
    let mut assigned = vec![false; n];
    let mut parts = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let mut part = vec![v];
        assigned[v] = true;
        for w in v + 1..n {
            if !assigned[w] && pair_closure(g, v, w).count_ones(..) != n {
                part.push(w);
                assigned[w] = true;
            }
        }
        parts.push(VertexSet::from(part));
    }
    Ok(ModulePartition { parts, host: g.clone() })
}

/// One vertex per part, adjacent iff the parts are adjacent in the host.
pub fn quotient_of(partition: &ModulePartition) -> Graph {
    let k = partition.parts.len();
    let reps: Vec<usize> = partition.parts.iter().map(|p| p.as_slice()[0]).collect();
    let mut q = Graph::empty(k);
    for i in 0..k {
        for j in i + 1..k {
            if partition.host.has_edge(reps[i], reps[j]) {
                q.add_edge(i, j);
            }
        }
    }
    q
}

pub fn quotient_graph(g: &Graph) -> Result<Graph> {
    Ok(quotient_of(&maximal_strong_modules(g)?))
}

/// Classes of vertices with equal open neighbourhoods (false twins), sorted.
pub fn false_twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    twin_classes(g, false)
}

/// Classes of vertices with equal closed neighbourhoods (true twins), sorted.
pub fn true_twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    twin_classes(g, true)
}

fn twin_classes(g: &Graph, closed: bool) -> Vec<Vec<usize>> {
    let n = g.n();
    let key = |v: usize| {
        let mut r = g.neighbors(v).clone();
        if closed {
            r.insert(v);
        }
        r
    };
    let mut done = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if done[v] {
            continue;
        }
        let kv = key(v);
        let mut class = vec![v];
        done[v] = true;
        for w in v + 1..n {
            if !done[w] && key(w) == kv {
                class.push(w);
                done[w] = true;
            }
        }
        out.push(class);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_examples() {
        let claw = Graph::star(3);
        assert!(is_module(&claw, &VertexSet::from([1, 2, 3])));
        assert!(!is_module(&Graph::path(4), &VertexSet::from([1, 2])));
        assert!(is_module(&Graph::path(4), &VertexSet::from([2])));
    }

    #[test]
    fn primality() {
        assert!(is_prime(&Graph::path(4)));
        assert!(!is_prime(&Graph::star(3)));
        assert!(!is_prime(&Graph::path(2)));
        assert!(!is_prime(&Graph::path(3)));
        assert!(is_prime(&Graph::cycle(5)));
    }

    #[test]
    fn rejects_disconnected() {
        assert!(maximal_strong_modules(&Graph::empty(3)).is_err());
        assert!(maximal_strong_modules(&Graph::complete(3)).is_err());
    }

    #[test]
    fn prime_gives_singletons() {
        let p = maximal_strong_modules(&Graph::path(4)).unwrap();
        assert_eq!(p.parts.len(), 4);
        assert_eq!(p.to_string(), "0: 0\n1: 1\n2: 2\n3: 3\n");
    }
}
