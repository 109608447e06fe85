//! Gadget constructions from SAT variants and from smaller targets, with role
//! annotations per vertex and the solution maps between source and gadget.
//!
//! Id layout: for formula sources, variable gadgets come first (variable by
//! variable, sets in construction order, members ascending), then clause
//! gadgets. For graph sources, the source vertices keep ids `0..n` and the
//! attached blocks follow vertex by vertex. Variables, clauses and sets are
//! numbered from 1; member indices from 0.

mod checks;
mod graph_gadgets;
mod sat_gadgets;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

pub use checks::check_structure;
pub use graph_gadgets::{
    attach_leaf_complements, bistar_to_tristar_instance, blowup_independent, instance_blowup_rkr,
    star_to_bistar_instance, star_to_tristar_instance,
};
pub use sat_gadgets::{
    build_5conn_instance, build_c124_instance, build_p6_instance, build_tree_ksat_instance,
    default_5conn_special, default_tree_pair, FiveConnSpecial,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::sat::{evaluate, Assignment, CnfFormula};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Literal { var: usize, positive: bool },
    VarSet { var: usize, set: usize, index: usize },
    ClauseSet { clause: usize, set: usize, index: usize },
    Attachment { source: usize, name: String, index: usize },
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Literal { var, positive } => write!(f, "lit:{}{var}", if *positive { '+' } else { '-' }),
            Role::VarSet { var, set, index } => write!(f, "var:{var}/set:{set}/idx:{index}"),
            Role::ClauseSet { clause, set, index } => write!(f, "cls:{clause}/set:{set}/idx:{index}"),
            Role::Attachment { source, name, index } => write!(f, "att:{source}/{name}/{index}"),
        }
    }
}

fn bad_role(s: &str) -> Error {
    Error::Parse { line: 0, msg: format!("bad role string {s:?}") }
}

fn tagged(part: &str, tag: &str, whole: &str) -> Result<usize> {
    part.strip_prefix(tag)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| bad_role(whole))
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Role> {
        if let Some(rest) = s.strip_prefix("lit:") {
            let positive = match rest.chars().next() {
                Some('+') => true,
                Some('-') => false,
                _ => return Err(bad_role(s)),
            };
            let var = rest[1..].parse().map_err(|_| bad_role(s))?;
            return Ok(Role::Literal { var, positive });
        }
        let parts: Vec<&str> = s.split('/').collect();
        if parts.len() != 3 {
            return Err(bad_role(s));
        }
        if parts[0].starts_with("var:") {
            return Ok(Role::VarSet {
                var: tagged(parts[0], "var:", s)?,
                set: tagged(parts[1], "set:", s)?,
                index: tagged(parts[2], "idx:", s)?,
            });
        }
        if parts[0].starts_with("cls:") {
            return Ok(Role::ClauseSet {
                clause: tagged(parts[0], "cls:", s)?,
                set: tagged(parts[1], "set:", s)?,
                index: tagged(parts[2], "idx:", s)?,
            });
        }
        if parts[0].starts_with("att:") {
            if parts[1].is_empty() || parts[1].contains(char::is_whitespace) {
                return Err(bad_role(s));
            }
            return Ok(Role::Attachment {
                source: tagged(parts[0], "att:", s)?,
                name: parts[1].to_string(),
                index: parts[2].parse().map_err(|_| bad_role(s))?,
            });
        }
        Err(bad_role(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Blowup,
    FiveConn,
    LeafAttach,
    TreeKsat,
    Bistar,
    TristarFromBistar,
    TristarFromStar,
    P6,
    C124,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Blowup => "blowup",
            Construction::FiveConn => "5conn",
            Construction::LeafAttach => "leafattach",
            Construction::TreeKsat => "treeksat",
            Construction::Bistar => "bistar",
            Construction::TristarFromBistar => "tristar-b",
            Construction::TristarFromStar => "tristar-s",
            Construction::P6 => "p6",
            Construction::C124 => "c124",
        }
    }

    pub fn from_name(s: &str) -> Option<Construction> {
        use Construction::*;
        [Blowup, FiveConn, LeafAttach, TreeKsat, Bistar, TristarFromBistar, TristarFromStar, P6, C124]
            .into_iter()
            .find(|c| c.name() == s)
    }
}

/// A compiled gadget graph with one role per vertex.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub construction: Construction,
    /// Human-readable description of the input instance.
    pub source: String,
    pub formula: Option<CnfFormula>,
    pub source_graph: Option<Graph>,
    /// The forbidden graph the instance is built for, when it is determined by the inputs.
    pub target: Option<Graph>,
}

impl GadgetInstance {
    /// Vertices whose role satisfies `pred`, ascending.
    pub fn vertices_where(&self, pred: impl Fn(&Role) -> bool) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| pred(&self.roles[v])).collect()
    }

    pub fn literal_vertex(&self, var: usize, positive: bool) -> Option<usize> {
        self.roles
            .iter()
            .position(|r| *r == Role::Literal { var, positive })
    }

    pub fn var_set(&self, var: usize, set: usize) -> Vec<usize> {
        self.vertices_where(|r| match r {
            Role::Literal { var: v, positive } => *v == var && set == if *positive { 1 } else { 2 },
            Role::VarSet { var: v, set: s, .. } => *v == var && *s == set,
            _ => false,
        })
    }

    pub fn clause_set(&self, clause: usize, set: usize) -> Vec<usize> {
        self.vertices_where(|r| matches!(r, Role::ClauseSet { clause: c, set: s, .. } if *c == clause && *s == set))
    }

    pub fn attachment(&self, source: usize, name: &str) -> Vec<usize> {
        self.vertices_where(|r| matches!(r, Role::Attachment { source: u, name: nm, .. } if *u == source && nm == name))
    }

    pub fn literal_vertices(&self) -> Vec<usize> {
        self.vertices_where(|r| matches!(r, Role::Literal { .. }))
    }

    /// One `<vertex-id> <role-string>` line per vertex.
    pub fn roles_text(&self) -> String {
        self.roles
            .iter()
            .enumerate()
            .map(|(v, r)| format!("{v} {r}\n"))
            .collect()
    }
}

pub fn parse_roles(text: &str) -> Result<Vec<Role>> {
    let mut roles = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let (id, role) = line
            .split_once(' ')
            .ok_or(Error::Parse { line: i + 1, msg: "expected `<vertex-id> <role>`".into() })?;
        let v: usize = id
            .parse()
            .map_err(|_| Error::Parse { line: i + 1, msg: format!("bad vertex id {id:?}") })?;
        if v != roles.len() {
            return Err(Error::Parse { line: i + 1, msg: format!("expected vertex {} next", roles.len()) });
        }
        roles.push(role.parse().map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
            other => other,
        })?);
    }
    Ok(roles)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    AssignmentDerived,
    MappedFromSource,
    Search,
}

/// A vertex set `S` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub members: VertexSet,
    pub provenance: Provenance,
}

/// Accumulates blocks of vertices with roles, and edges between them.
pub(crate) struct Builder {
    roles: Vec<Role>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    pub(crate) fn new() -> Self {
        Builder { roles: Vec::new(), edges: Vec::new() }
    }

    pub(crate) fn len(&self) -> usize {
        self.roles.len()
    }

    pub(crate) fn vertex(&mut self, role: Role) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    /// Append a copy of `inside`, member `k` getting `role(k)`.
    pub(crate) fn block(&mut self, inside: &Graph, role: impl Fn(usize) -> Role) -> Range<usize> {
        let start = self.roles.len();
        for k in 0..inside.n() {
            self.roles.push(role(k));
        }
        for (a, b) in inside.edges() {
            self.edges.push((start + a, start + b));
        }
        start..self.roles.len()
    }

    pub(crate) fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u.min(v), u.max(v)));
    }

    pub(crate) fn join(&mut self, a: &[usize], b: &[usize]) {
        for &u in a {
            for &v in b {
                if u != v {
                    self.edge(u, v);
                }
            }
        }
    }

    pub(crate) fn finish(
        self,
        construction: Construction,
        source: String,
        formula: Option<CnfFormula>,
        source_graph: Option<Graph>,
        target: Option<Graph>,
        removed: &[(usize, usize)],
    ) -> GadgetInstance {
        let n = self.roles.len();
        let mut g = Graph::from_edges(n, &self.edges).expect("builder edges are in range");
        for &(u, v) in removed {
            g.remove_edge(u, v);
        }
        GadgetInstance { graph: g, roles: self.roles, construction, source, formula, source_graph, target }
    }
}

pub(crate) fn range_vec(r: Range<usize>) -> Vec<usize> {
    r.collect()
}

/// Assignment-derived solution: the vertices of true literals, plus every
/// `c_{i2}` vertex for the P6 construction.
pub fn forward_solution(inst: &GadgetInstance, a: &Assignment) -> Result<SolutionSet> {
    let phi = inst
        .formula
        .as_ref()
        .ok_or_else(|| Error::RoleMismatch(format!("{} instances have no source formula", inst.construction.name())))?;
    if !evaluate(phi, a)? {
        return Err(Error::Unsatisfying);
    }
    let mut members: VertexSet = inst
        .vertices_where(|r| matches!(r, Role::Literal { var, positive } if a.0[*var - 1] == *positive))
        .into();
    if inst.construction == Construction::P6 {
        for v in inst.vertices_where(|r| matches!(r, Role::ClauseSet { set: 2, .. })) {
            members.insert(v);
        }
    }
    Ok(SolutionSet { members, provenance: Provenance::AssignmentDerived })
}

/// Read an assignment off the literal vertices in `s`: variable `i` is true iff `x_i` is in `s`.
/// No completeness claim is attached to the result.
pub fn extract_assignment(inst: &GadgetInstance, s: &VertexSet) -> Result<Assignment> {
    let phi = inst
        .formula
        .as_ref()
        .ok_or_else(|| Error::RoleMismatch("instance has no source formula".into()))?;
    let mut values = vec![false; phi.num_vars()];
    for v in s.iter() {
        if let Some(Role::Literal { var, positive: true }) = inst.roles.get(v) {
            values[var - 1] = true;
        }
    }
    Ok(Assignment(values))
}

fn require_blowup(inst: &GadgetInstance) -> Result<usize> {
    match (inst.construction, &inst.source_graph) {
        (Construction::Blowup, Some(gp)) => Ok(gp.n()),
        _ => Err(Error::RoleMismatch("expected an instance of the blow-up construction".into())),
    }
}

/// `S'` of the source graph to the union of the blocks `W_u`, `u in S'`.
pub fn map_solution_duplication_forward(s_src: &VertexSet, inst: &GadgetInstance) -> Result<SolutionSet> {
    let n = require_blowup(inst)?;
    s_src.check_range(n)?;
    let members = inst
        .vertices_where(|r| matches!(r, Role::Attachment { source, .. } if s_src.contains(*source)))
        .into();
    Ok(SolutionSet { members, provenance: Provenance::MappedFromSource })
}

/// `u` is kept iff some complete copy `K_r` inside `W_u` lies entirely in `s`.
pub fn map_solution_duplication_backward(s: &VertexSet, inst: &GadgetInstance) -> Result<VertexSet> {
    let n = require_blowup(inst)?;
    s.check_range(inst.graph.n())?;
    let mut out = VertexSet::new();
    for u in 0..n {
        let mut names: Vec<&str> = inst
            .roles
            .iter()
            .filter_map(|r| match r {
                Role::Attachment { source, name, .. } if *source == u => Some(name.as_str()),
                _ => None,
            })
            .collect();
        names.dedup();
        if names.iter().any(|nm| {
            let block = inst.attachment(u, nm);
            !block.is_empty() && block.iter().all(|&v| s.contains(v))
        }) {
            out.insert(u);
        }
    }
    Ok(out)
}

/// `S ∩ V(G')` for the attachment constructions, whose source vertices keep ids `0..n(G')`.
pub fn map_solution_attachment_backward(s: &VertexSet, inst: &GadgetInstance) -> Result<VertexSet> {
    match (inst.construction, &inst.source_graph) {
        (
            Construction::LeafAttach
            | Construction::Bistar
            | Construction::TristarFromBistar
            | Construction::TristarFromStar,
            Some(gp),
        ) => Ok(s.iter().filter(|&v| v < gp.n()).collect()),
        _ => Err(Error::RoleMismatch("expected an attachment-style instance".into())),
    }
}
