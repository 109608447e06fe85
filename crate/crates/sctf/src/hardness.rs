//! The tree catalog and certificate chains of reduction rules proving hardness.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{complement, Graph};
use crate::iso::{contains_induced, is_isomorphic, is_self_complementary};
use crate::modular::{is_prime, maximal_strong_modules, quotient_of};
use crate::trees::{
    build_tree, canonical_code, classify_shape, internal_tree, internal_vertices, is_tree,
    leaf_count, leaves, spider, trees_isomorphic, TreeSpec,
};

/// Ramsey number R(4,4): every graph on this many vertices has a K4 or an independent 4-set.
pub const RAMSEY_R44: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Star,
    Path,
    P6,
    C124,
    FiveConn,
    Bistar,
    Tristar,
    Subclaw,
    I4l4,
    Duplication,
    LeafRemoval,
    Complement,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Star => "RULE_STAR",
            Rule::Path => "RULE_PATH",
            Rule::P6 => "RULE_P6",
            Rule::C124 => "RULE_C124",
            Rule::FiveConn => "RULE_5CONN",
            Rule::Bistar => "RULE_BISTAR",
            Rule::Tristar => "RULE_TRISTAR",
            Rule::Subclaw => "RULE_SUBCLAW",
            Rule::I4l4 => "RULE_I4L4",
            Rule::Duplication => "RULE_DUPLICATION",
            Rule::LeafRemoval => "RULE_LEAF_REMOVAL",
            Rule::Complement => "RULE_COMPLEMENT",
        }
    }

    /// Base rules prove hardness outright; the others transfer it from the next link.
    pub fn is_base(self) -> bool {
        !matches!(self, Rule::Duplication | Rule::LeafRemoval | Rule::Complement)
    }

    pub fn from_id(id: &str) -> Option<Rule> {
        [
            Rule::Star,
            Rule::Path,
            Rule::P6,
            Rule::C124,
            Rule::FiveConn,
            Rule::Bistar,
            Rule::Tristar,
            Rule::Subclaw,
            Rule::I4l4,
            Rule::Duplication,
            Rule::LeafRemoval,
            Rule::Complement,
        ]
        .into_iter()
        .find(|r| r.id() == id)
    }
}

/// One step of a certificate: `rule` establishes hardness for `subject`,
/// either directly (base rules) or from the subject of the following link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub rule: Rule,
    pub params: String,
    pub citation: String,
    pub subject: Graph,
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}) [{}]", self.rule.id(), self.params, self.citation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Hard,
    Catalog,
    PolyKnown,
    /// No rule of the cascade applies; the chain holds the attempted step, if any.
    Unresolved,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Hard => "HARD",
            Verdict::Catalog => "CATALOG",
            Verdict::PolyKnown => "POLY-KNOWN",
            Verdict::Unresolved => "UNRESOLVED",
        }
    }

    pub fn is_catalog(self) -> bool {
        matches!(self, Verdict::Catalog | Verdict::PolyKnown)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessCertificate {
    pub verdict: Verdict,
    pub chain: Vec<Link>,
    pub subject: Graph,
    pub shape: TreeSpec,
    pub note: Option<String>,
}

impl HardnessCertificate {
    /// `HARD; chain: RULE_X(..) [..] -> ...` or the bare verdict label.
    pub fn summary(&self) -> String {
        let mut s = self.verdict.label().to_string();
        if !self.chain.is_empty() {
            let links: Vec<String> = self.chain.iter().map(|l| l.to_string()).collect();
            s.push_str("; chain: ");
            s.push_str(&links.join(" -> "));
        }
        if let Some(note) = &self.note {
            s.push_str("; ");
            s.push_str(note);
        }
        s
    }

    /// One `rule-id | params | citation` line per link.
    pub fn serialize(&self) -> String {
        self.chain
            .iter()
            .map(|l| format!("{} | {} | {}\n", l.rule.id(), l.params, l.citation))
            .collect()
    }
}

/// Parse serialised certificate lines back into `(rule, params, citation)` triples.
pub fn parse_certificate_lines(text: &str) -> Result<Vec<(Rule, String, String)>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let parts: Vec<&str> = line.split(" | ").collect();
            if parts.len() != 3 {
                return Err(Error::Parse { line: i + 1, msg: "expected `rule | params | citation`".into() });
            }
            let rule = Rule::from_id(parts[0])
                .ok_or_else(|| Error::Parse { line: i + 1, msg: format!("unknown rule {}", parts[0]) })?;
            Ok((rule, parts[1].to_string(), parts[2].to_string()))
        })
        .collect()
}

fn catalog_specs() -> Vec<TreeSpec> {
    let mut specs = Vec::new();
    for n in 1..=5 {
        specs.push(TreeSpec::Path(n));
    }
    for x in 1..=4 {
        specs.push(TreeSpec::Star(x));
    }
    for x in 1..=4 {
        for y in x..=4 {
            specs.push(TreeSpec::Bistar(x, y));
        }
    }
    specs.push(TreeSpec::Tristar(1, 0, 1));
    specs.push(TreeSpec::Tristar(1, 0, 2));
    for y in 1..=4 {
        for z in 1..=5 {
            specs.push(TreeSpec::Tristar(1, y, z));
        }
    }
    for (x, y, z) in [(1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3), (2, 2, 2), (2, 2, 3)] {
        specs.push(TreeSpec::ClawSubdivision(x, y, z));
    }
    specs
}

struct Catalog {
    members: Vec<Graph>,
    codes: HashSet<String>,
}

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| {
        let mut members = Vec::new();
        let mut codes = HashSet::new();
        for spec in catalog_specs() {
            let g = build_tree(&spec).expect("catalog parameters are valid");
            if codes.insert(canonical_code(&g)) {
                members.push(g);
            }
        }
        Catalog { members, codes }
    })
}

/// The pairwise non-isomorphic trees for which no hardness rule applies.
pub fn catalog_members() -> Vec<Graph> {
    catalog().members.clone()
}

pub fn is_catalog_member(t: &Graph) -> bool {
    is_tree(t) && catalog().codes.contains(&canonical_code(t))
}

fn shape_of(g: &Graph) -> TreeSpec {
    if is_tree(g) {
        classify_shape(g).unwrap_or_else(|_| TreeSpec::Explicit(g.clone()))
    } else {
        TreeSpec::Explicit(g.clone())
    }
}

fn describe(g: &Graph) -> String {
    match shape_of(g) {
        TreeSpec::Explicit(_) if is_tree(g) => format!("tree on {} vertices", g.n()),
        TreeSpec::Explicit(_) => format!("graph on {} vertices, {} edges", g.n(), g.m()),
        s => s.to_string(),
    }
}

fn fail(rule: Rule, why: impl Into<String>) -> Error {
    Error::Precondition(format!("{}: {}", rule.id(), why.into()))
}

fn has_k4_or_4k1(h: &Graph) -> Option<&'static str> {
    if contains_induced(h, &Graph::complete(4)).is_some() {
        Some("K4")
    } else if contains_induced(h, &Graph::empty(4)).is_some() {
        Some("4K1")
    } else {
        None
    }
}

fn has_independent_4(g: &Graph) -> bool {
    contains_induced(g, &Graph::empty(4)).is_some()
}

/// Conditions on `h` under which the 5-connected gadget reduction applies.
pub(crate) fn check_five_conn(h: &Graph) -> Result<String> {
    let r = Rule::FiveConn;
    let k = vertex_connectivity(h);
    if k < 5 {
        return Err(fail(r, format!("connectivity {k} < 5")));
    }
    if !is_prime(h) {
        return Err(fail(r, "not prime"));
    }
    if is_self_complementary(h) {
        return Err(fail(r, "self-complementary"));
    }
    match has_k4_or_4k1(h) {
        Some(kind) => Ok(format!("t={}, kappa={k}, {kind}", h.n())),
        None if h.n() >= RAMSEY_R44 => Ok(format!("t={}, kappa={k}, n>=R(4,4)", h.n())),
        None => Err(fail(r, "no K4 and no independent set of size 4")),
    }
}

/// `h` arises from prime `hp` by replacing vertices with independent sets.
fn check_duplication(h: &Graph, hp: &Graph) -> Result<()> {
    let r = Rule::Duplication;
    if !is_prime(hp) {
        return Err(fail(r, "source is not prime"));
    }
    let part = maximal_strong_modules(h).map_err(|e| fail(r, e.to_string()))?;
    for p in &part.parts {
        let bits = p.to_bits(h.n());
        if !h.is_independent(&bits) {
            return Err(fail(r, "a module is not an independent set"));
        }
    }
    if !is_isomorphic(&quotient_of(&part), hp) {
        return Err(fail(r, "quotient differs from the source"));
    }
    Ok(())
}

/// Hypotheses of the four-leaves hardness rule.
pub fn i4l4_conditions(t: &Graph) -> Result<()> {
    let r = Rule::I4l4;
    if !is_tree(t) {
        return Err(fail(r, "not a tree"));
    }
    let nl = leaves(t).len();
    let inner = internal_vertices(t);
    if nl < 4 {
        return Err(fail(r, format!("{nl} leaves < 4")));
    }
    if inner.len() < 3 {
        return Err(fail(r, format!("{} internal vertices < 3", inner.len())));
    }
    let tp = t.induced_subgraph(&inner);
    // (ii)
    for (u, v) in t.edges() {
        if t.degree(u) == 2 && t.degree(v) == 2 && leaf_count(t, u) == 0 && leaf_count(t, v) == 0 {
            return Err(fail(r, format!("adjacent degree-2 vertices {u},{v} without leaves")));
        }
    }
    // (i)
    if let TreeSpec::Star(_) | TreeSpec::Path(2) | TreeSpec::Path(3) = shape_of(&tp) {
        let centre_local = (0..tp.n()).max_by_key(|&v| tp.degree(v)).unwrap();
        let centre = inner[centre_local];
        let star_leaves: Vec<usize> =
            inner.iter().copied().filter(|&v| v != centre).collect();
        let a = star_leaves.iter().all(|&v| leaf_count(t, v) >= 2);
        let b = leaf_count(t, centre) == 0;
        let c = trees_isomorphic(t, &spider(&[1, 2, 2, 2]))
            || trees_isomorphic(t, &spider(&[1, 2, 2, 2, 2]));
        if !(a || b || c) {
            return Err(fail(r, "internal tree is a star but none of (a), (b), (c) holds"));
        }
    }
    Ok(())
}

/// Re-check the hypotheses of `link`; `next` is the subject of the following link.
pub fn check_link(link: &Link, next: Option<&Graph>) -> Result<()> {
    let g = &link.subject;
    let r = link.rule;
    if r.is_base() != next.is_none() {
        return Err(fail(r, "base rules must end the chain and transfer rules must not"));
    }
    let shape = shape_of(g);
    let tree = is_tree(g);
    match r {
        Rule::Star => match shape {
            TreeSpec::Star(x) if x >= 5 => Ok(()),
            _ => Err(fail(r, "needs a star on at least 6 vertices")),
        },
        Rule::Path => match shape {
            TreeSpec::Path(n) if n >= 7 => Ok(()),
            _ => Err(fail(r, "needs a path on at least 7 vertices")),
        },
        Rule::P6 => match shape {
            TreeSpec::Path(6) => Ok(()),
            _ => Err(fail(r, "needs P6")),
        },
        Rule::C124 => match shape {
            TreeSpec::ClawSubdivision(1, 2, 4) => Ok(()),
            _ => Err(fail(r, "needs C1,2,4")),
        },
        Rule::Bistar => match shape {
            TreeSpec::Bistar(x, y) if 1 <= x && x <= y && y >= 5 => Ok(()),
            _ => Err(fail(r, "needs a bistar with y >= 5")),
        },
        Rule::Tristar => match shape {
            TreeSpec::Tristar(x, y, z) if 1 <= x && x <= z && (y >= 5 || z >= 6) => Ok(()),
            _ => Err(fail(r, "needs a tristar with y >= 5 or z >= 6")),
        },
        Rule::Subclaw => match shape {
            TreeSpec::ClawSubdivision(x, y, z) if x + y + z >= 8 && y > 1 => {
                if !has_independent_4(g) {
                    return Err(fail(r, "no independent set of size 4"));
                }
                check_five_conn(&complement(g)).map(|_| ())
            }
            _ => Err(fail(r, "needs a claw subdivision with x+y+z >= 8 and y >= 2")),
        },
        Rule::I4l4 => i4l4_conditions(g),
        Rule::FiveConn => check_five_conn(g).map(|_| ()),
        Rule::Complement => {
            let src = next.unwrap();
            if is_isomorphic(&complement(g), src) {
                Ok(())
            } else {
                Err(fail(r, "source is not the complement of the subject"))
            }
        }
        Rule::Duplication => check_duplication(g, next.unwrap()),
        Rule::LeafRemoval => {
            let src = next.unwrap();
            if !tree || !is_prime(g) {
                return Err(fail(r, "subject must be a prime tree"));
            }
            let tp = internal_tree(g)?;
            if !trees_isomorphic(&tp, src) {
                return Err(fail(r, "source is not the internal tree of the subject"));
            }
            Ok(())
        }
    }
}

/// Check every link of a chain in order.
pub fn verify_chain(chain: &[Link]) -> Result<()> {
    if chain.is_empty() {
        return Err(Error::Precondition("empty chain".into()));
    }
    for (i, link) in chain.iter().enumerate() {
        check_link(link, chain.get(i + 1).map(|l| &l.subject))?;
    }
    Ok(())
}

struct ChainBuilder {
    links: Vec<Link>,
}

impl ChainBuilder {
    fn new() -> Self {
        ChainBuilder { links: Vec::new() }
    }

    fn push(&mut self, rule: Rule, params: String, citation: &str, subject: &Graph) -> &mut Self {
        self.links.push(Link { rule, params, citation: citation.to_string(), subject: subject.clone() });
        self
    }
}

/// `RULE_P6` or `RULE_PATH` for a path on `n >= 6` vertices.
fn path_link(b: &mut ChainBuilder, g: &Graph) {
    if g.n() == 6 {
        b.push(Rule::P6, String::new(), "Thm p6", g);
    } else {
        b.push(Rule::Path, format!("n={}", g.n()), "Prop path", g);
    }
}

/// Two adjacent internal vertices, neither adjacent to a leaf.
fn has_bare_internal_edge(t: &Graph) -> bool {
    t.edges().into_iter().any(|(u, v)| {
        t.degree(u) >= 2 && t.degree(v) >= 2 && leaf_count(t, u) == 0 && leaf_count(t, v) == 0
    })
}

fn five_conn_link(b: &mut ChainBuilder, h: &Graph) -> Result<()> {
    let params = check_five_conn(h)?;
    let citation = if has_k4_or_4k1(h).is_some() { "Thm 5-conn" } else { "Cor 5-connected" };
    b.push(Rule::FiveConn, params, citation, h);
    Ok(())
}

/// Hard certificate when `h` meets the 5-connected rule, else `None`.
pub fn five_connected_verdict(h: &Graph) -> Option<HardnessCertificate> {
    let mut b = ChainBuilder::new();
    five_conn_link(&mut b, h).ok()?;
    Some(HardnessCertificate {
        verdict: Verdict::Hard,
        chain: b.links,
        subject: h.clone(),
        shape: shape_of(h),
        note: None,
    })
}

fn cascade(t: &Graph, b: &mut ChainBuilder) -> Result<()> {
    let shape = classify_shape(t)?;
    let p = internal_vertices(t).len();
    let nleaves = t.n() - p;
    match shape {
        TreeSpec::Star(x) if p == 1 => {
            b.push(Rule::Star, format!("x={x}"), "Prop star", t);
            return Ok(());
        }
        TreeSpec::Bistar(x, y) => {
            b.push(Rule::Bistar, format!("{x},{y}"), "Thm bistar", t);
            return Ok(());
        }
        TreeSpec::Tristar(x, y, z) => {
            if y >= 5 || z >= 6 {
                b.push(Rule::Tristar, format!("{x},{y},{z}"), "Thm tristar", t);
            } else if x >= 2 || (x == 1 && y == 0 && z >= 3) {
                b.push(Rule::I4l4, format!("T{x},{y},{z}"), "Cor tristar-special", t);
            }
            return Ok(());
        }
        _ => {}
    }
    if p < 4 {
        return Ok(());
    }
    if nleaves == 2 {
        path_link(b, t);
        return Ok(());
    }
    if nleaves == 3 {
        if let TreeSpec::ClawSubdivision(x, y, z) = shape {
            if (x, y, z) == (1, 2, 4) {
                b.push(Rule::C124, String::new(), "Thm c124", t);
            } else if x == 1 && y == 1 && z >= 4 {
                let q = Graph::path(z + 2);
                b.push(Rule::Duplication, format!("from P{}", z + 2), "Obs path-claw", t);
                path_link(b, &q);
            } else if x + y + z >= 8 {
                b.push(Rule::Subclaw, format!("{x},{y},{z}"), "Thm subclaw", t);
            }
        }
        return Ok(());
    }

    // at least four leaves
    let part = maximal_strong_modules(t)?;
    let q = quotient_of(&part);
    let dup = |b: &mut ChainBuilder| {
        if q.n() != t.n() {
            b.push(Rule::Duplication, format!("from {}", describe(&q)), "Cor tree-duplication", t);
        }
    };
    if has_bare_internal_edge(&q) {
        let qc = complement(&q);
        if has_independent_4(&q) && vertex_connectivity(&qc) >= 5 {
            dup(b);
            b.push(Rule::Complement, String::new(), "Prop complement", &q);
            return five_conn_link(b, &qc);
        }
        match shape_of(&q) {
            TreeSpec::Path(6) | TreeSpec::Path(7) => {
                dup(b);
                path_link(b, &q);
                return Ok(());
            }
            TreeSpec::ClawSubdivision(1, 2, 4) => {
                dup(b);
                b.push(Rule::C124, String::new(), "Thm c124", &q);
                return Ok(());
            }
            // neither outcome holds when a bare vertex has degree >= 3; try the later branches
            _ => {}
        }
    }
    let tp = internal_tree(t)?;
    let tp_is_star = matches!(shape_of(&tp), TreeSpec::Star(_) | TreeSpec::Path(1..=3));
    if !tp_is_star || i4l4_conditions(t).is_ok() {
        b.push(Rule::I4l4, describe(t), "Thm i4l4", t);
        return Ok(());
    }
    match p {
        4 | 5 => {
            dup(b);
            b.push(Rule::I4l4, describe(&q), "Thm i4l4", &q);
        }
        _ => {
            let a = tp.n() - 1;
            dup(b);
            b.push(Rule::LeafRemoval, format!("from K1,{a}"), "Lemma leaf-removal", &q);
            b.push(Rule::Star, format!("x={a}"), "Prop star", &Graph::star(a));
        }
    }
    Ok(())
}

/// Replay the case analysis for trees: catalog membership or a checked chain.
pub fn hardness_verdict(t: &Graph) -> Result<HardnessCertificate> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    let shape = classify_shape(t)?;
    if is_catalog_member(t) {
        let verdict = match shape {
            TreeSpec::Path(n) if n <= 4 => Verdict::PolyKnown,
            _ => Verdict::Catalog,
        };
        return Ok(HardnessCertificate { verdict, chain: Vec::new(), subject: t.clone(), shape, note: None });
    }
    let mut b = ChainBuilder::new();
    let mut note = None;
    if let Err(e) = cascade(t, &mut b) {
        note = Some(e.to_string());
    }
    let chain = b.links;
    let verdict = if chain.last().is_some_and(|l| l.rule.is_base()) {
        match verify_chain(&chain) {
            Ok(()) => Verdict::Hard,
            Err(e) => {
                note = Some(e.to_string());
                Verdict::Unresolved
            }
        }
    } else {
        note.get_or_insert_with(|| "no rule of the case analysis applies".to_string());
        Verdict::Unresolved
    };
    Ok(HardnessCertificate { verdict, chain, subject: t.clone(), shape, note })
}
