//! Tree families, shape recognition, AHU canonical forms and free-tree enumeration.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::parse_graph;

/// A tree given by family and parameters, or explicitly.
///
/// Canonical parameter order: `x <= y` for bistars, `x <= z` for tristars and
/// `x <= y <= z` for claw subdivisions. The constructors below normalise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSpec {
    Path(usize),
    Star(usize),
    Bistar(usize, usize),
    Tristar(usize, usize, usize),
    ClawSubdivision(usize, usize, usize),
    Explicit(Graph),
}

impl TreeSpec {
    pub fn bistar(x: usize, y: usize) -> Self {
        TreeSpec::Bistar(x.min(y), x.max(y))
    }

    pub fn tristar(x: usize, y: usize, z: usize) -> Self {
        TreeSpec::Tristar(x.min(z), y, x.max(z))
    }

    pub fn claw(x: usize, y: usize, z: usize) -> Self {
        let mut v = [x, y, z];
        v.sort_unstable();
        TreeSpec::ClawSubdivision(v[0], v[1], v[2])
    }

    /// The family tag `classify_shape` reports for the built tree.
    pub fn canonical(&self) -> Result<TreeSpec> {
        classify_shape(&build_tree(self)?)
    }
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeSpec::Path(n) => write!(f, "P{n}"),
            TreeSpec::Star(x) => write!(f, "K1,{x}"),
            TreeSpec::Bistar(x, y) => write!(f, "T{x},{y}"),
            TreeSpec::Tristar(x, y, z) => write!(f, "T{x},{y},{z}"),
            TreeSpec::ClawSubdivision(x, y, z) => write!(f, "C{x},{y},{z}"),
            TreeSpec::Explicit(g) => write!(f, "tree(n={}, edges={:?})", g.n(), g.edges()),
        }
    }
}

pub fn is_tree(g: &Graph) -> bool {
    g.n() >= 1 && g.m() == g.n() - 1 && g.is_connected()
}

fn invalid(msg: &str) -> Error {
    Error::InvalidParameter(msg.to_string())
}

/// Labelled representative of a family.
///
/// Layouts: paths `0-1-..-(n-1)`; stars centre 0; bistars centres `a=0, b=1`
/// then a's leaves then b's; tristars `a=0, b=1, c=2` (b in the middle) then the
/// leaves of a, b, c; claw subdivisions centre 0 then each leg from the centre outwards.
pub fn build_tree(spec: &TreeSpec) -> Result<Graph> {
    match *spec {
        TreeSpec::Path(n) => {
            if n == 0 {
                return Err(invalid("path needs at least one vertex"));
            }
            Ok(Graph::path(n))
        }
        TreeSpec::Star(x) => {
            if x == 0 {
                return Err(invalid("star needs at least one leaf"));
            }
            Ok(Graph::star(x))
        }
        TreeSpec::Bistar(x, y) => {
            if x == 0 || y == 0 {
                return Err(invalid("bistar needs x, y >= 1"));
            }
            let mut g = Graph::empty(x + y + 2);
            g.add_edge(0, 1);
            for i in 0..x {
                g.add_edge(0, 2 + i);
            }
            for i in 0..y {
                g.add_edge(1, 2 + x + i);
            }
            Ok(g)
        }
        TreeSpec::Tristar(x, y, z) => {
            if x == 0 || z == 0 {
                return Err(invalid("tristar needs x, z >= 1"));
            }
            let mut g = Graph::empty(x + y + z + 3);
            g.add_edge(0, 1);
            g.add_edge(1, 2);
            let mut next = 3;
            for (centre, count) in [(0, x), (1, y), (2, z)] {
                for _ in 0..count {
                    g.add_edge(centre, next);
                    next += 1;
                }
            }
            Ok(g)
        }
        TreeSpec::ClawSubdivision(x, y, z) => {
            if x == 0 || y == 0 || z == 0 {
                return Err(invalid("claw subdivision needs x, y, z >= 1"));
            }
            Ok(spider(&[x, y, z]))
        }
        TreeSpec::Explicit(ref g) => {
            if !is_tree(g) {
                return Err(Error::NotATree);
            }
            Ok(g.clone())
        }
    }
}

/// Centre 0 with one path per entry of `legs`, each listed from the centre outwards.
pub fn spider(legs: &[usize]) -> Graph {
    let n = 1 + legs.iter().sum::<usize>();
    let mut g = Graph::empty(n);
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            g.add_edge(prev, next);
            prev = next;
            next += 1;
        }
    }
    g
}

pub fn leaves(t: &Graph) -> Vec<usize> {
    (0..t.n()).filter(|&v| t.degree(v) == 1).collect()
}

pub fn internal_vertices(t: &Graph) -> Vec<usize> {
    (0..t.n()).filter(|&v| t.degree(v) >= 2).collect()
}

/// The tree left after deleting every leaf; vertex `i` is the i-th internal vertex.
pub fn internal_tree(t: &Graph) -> Result<Graph> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    let inner = internal_vertices(t);
    if inner.is_empty() {
        return Err(invalid("tree has no internal vertex"));
    }
    Ok(t.induced_subgraph(&inner))
}

/// Number of leaf neighbours of `v`.
pub fn leaf_count(t: &Graph, v: usize) -> usize {
    t.neighbor_iter(v).filter(|&w| t.degree(w) == 1).count()
}

pub fn classify_shape(t: &Graph) -> Result<TreeSpec> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    let n = t.n();
    let inner = internal_vertices(t);
    let nleaves = n - inner.len();
    if n <= 2 || nleaves == 2 {
        return Ok(TreeSpec::Path(n));
    }
    match inner.len() {
        1 => return Ok(TreeSpec::Star(n - 1)),
        2 => {
            return Ok(TreeSpec::bistar(leaf_count(t, inner[0]), leaf_count(t, inner[1])));
        }
        3 => {
            let mid = *inner
                .iter()
                .find(|&&v| t.neighbor_iter(v).filter(|&w| t.degree(w) >= 2).count() == 2)
                .expect("internal P3 has a middle vertex");
            let ends: Vec<usize> = inner.iter().copied().filter(|&v| v != mid).collect();
            return Ok(TreeSpec::tristar(
                leaf_count(t, ends[0]),
                leaf_count(t, mid),
                leaf_count(t, ends[1]),
            ));
        }
        _ => {}
    }
    if nleaves == 3 {
        let centre = (0..n).find(|&v| t.degree(v) == 3).expect("three leaves force a branch vertex");
        let mut legs = Vec::new();
        for start in t.neighbor_iter(centre) {
            let (mut prev, mut cur, mut len) = (centre, start, 1);
            while t.degree(cur) == 2 {
                let nxt = t.neighbor_iter(cur).find(|&w| w != prev).unwrap();
                prev = cur;
                cur = nxt;
                len += 1;
            }
            legs.push(len);
        }
        return Ok(TreeSpec::claw(legs[0], legs[1], legs[2]));
    }
    Ok(TreeSpec::Explicit(t.clone()))
}

/// Vertices remaining after repeatedly peeling leaves: one or two centres.
pub fn centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for w in t.neighbor_iter(v) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    let mut c = layer;
    c.sort_unstable();
    c
}

fn rooted_code(t: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t
        .neighbor_iter(v)
        .filter(|&w| w != parent)
        .map(|w| rooted_code(t, w, v))
        .collect();
    kids.sort_unstable();
    let mut s = String::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
    s.push('(');
    for k in kids {
        s.push_str(&k);
    }
    s.push(')');
    s
}

/// AHU code of a free tree, rooted at its centre (or centre edge).
pub fn canonical_code(t: &Graph) -> String {
    let c = centers(t);
    match c.as_slice() {
        [] => String::new(),
        [r] => format!("V{}", rooted_code(t, *r, usize::MAX)),
        [a, b] => {
            let ca = rooted_code(t, *a, *b);
            let cb = rooted_code(t, *b, *a);
            if ca <= cb {
                format!("E{ca}{cb}")
            } else {
                format!("E{cb}{ca}")
            }
        }
        _ => unreachable!("a tree has at most two centres"),
    }
}

pub fn trees_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && canonical_code(a) == canonical_code(b)
}

/// All free trees with `1..=max_n` vertices, one per isomorphism class,
/// grouped by order and sorted by canonical code within an order.
pub fn enumerate_free_trees(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    if max_n == 0 {
        return out;
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)];
    out.extend(level.iter().cloned());
    for _ in 2..=max_n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for t in &level {
            let n = t.n();
            for v in 0..n {
                let mut g = Graph::empty(n + 1);
                for (a, b) in t.edges() {
                    g.add_edge(a, b);
                }
                g.add_edge(v, n);
                next.entry(canonical_code(&g)).or_insert(g);
            }
        }
        level = next.into_values().collect();
        out.extend(level.iter().cloned());
    }
    out
}

fn parse_num(s: &str, whole: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(invalid(&format!("bad tree spec {whole:?}")));
    }
    s.parse().map_err(|_| invalid(&format!("bad tree spec {whole:?}")))
}

fn parse_list(s: &str, whole: &str) -> Result<Vec<usize>> {
    s.split(',').map(|p| parse_num(p, whole)).collect()
}

/// Parse `P<n>`, `K1,<x>`, `T<x>,<y>`, `T<x>,<y>,<z>`, `C<x>,<y>,<z>` or `@<path>`.
pub fn parse_tree_spec(s: &str) -> Result<TreeSpec> {
    let s = s.trim();
    if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(&format!("cannot read {path}: {e}")))?;
        let g = parse_graph(&text)?;
        if !is_tree(&g) {
            return Err(Error::NotATree);
        }
        return Ok(TreeSpec::Explicit(g));
    }
    let (head, rest) = s.split_at(s.chars().next().map_or(0, |c| c.len_utf8()));
    let spec = match head {
        "P" => TreeSpec::Path(parse_num(rest, s)?),
        "K" => match parse_list(rest, s)?.as_slice() {
            [1, x] => TreeSpec::Star(*x),
            _ => return Err(invalid(&format!("bad star spec {s:?}, expected K1,<x>"))),
        },
        "T" => match parse_list(rest, s)?.as_slice() {
            [x, y] => TreeSpec::bistar(*x, *y),
            [x, y, z] => TreeSpec::tristar(*x, *y, *z),
            _ => return Err(invalid(&format!("bad T spec {s:?}"))),
        },
        "C" => match parse_list(rest, s)?.as_slice() {
            [x, y, z] => TreeSpec::claw(*x, *y, *z),
            _ => return Err(invalid(&format!("bad claw spec {s:?}"))),
        },
        _ => return Err(invalid(&format!("unknown tree spec {s:?}"))),
    };
    build_tree(&spec)?;
    Ok(spec)
}

/// Tree specs plus the keywords `paw` and `K<n>` (clique), for pattern arguments.
pub fn parse_pattern(s: &str) -> Result<Graph> {
    let t = s.trim();
    if t == "paw" {
        return Ok(Graph::paw());
    }
    if let Some(rest) = t.strip_prefix('K') {
        if !rest.contains(',') {
            return Ok(Graph::complete(parse_num(rest, t)?));
        }
    }
    if let Some(path) = t.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(&format!("cannot read {path}: {e}")))?;
        return parse_graph(&text);
    }
    build_tree(&parse_tree_spec(t)?)
}
