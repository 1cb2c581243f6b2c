//! Graphs of groups with cyclic edge groups.

mod collapse;
mod json;
mod presentation;
mod twist;

pub use json::{EdgeJson, GraphJson, VertexJson};
pub use presentation::{Elimination, Presentation};
pub use twist::{dehn_twist, TwistEndo, TwistProvenance};

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::words::{Alphabet, Word, WordError};

#[derive(Debug, Error)]
pub enum GogError {
    #[error("invalid graph of groups: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("subgraph is not connected")]
    SubgraphNotConnected,
    #[error("edge `{0}` has an endpoint outside the subgraph")]
    NotASubgraph(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A violated invariant reported by [`GoGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Diagnostic {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` ends at unknown vertex `{vertex}`")]
    UnknownTerminal { edge: String, vertex: String },
    #[error("edge `{0}` has no valid reversal partner")]
    BadReversal(String),
    #[error("edge `{0}`: trivial boundary injection")]
    TrivialBoundary(String),
    #[error("edge `{0}`: boundary word is not over its terminal vertex alphabet")]
    BoundaryAlphabet(String),
    #[error("generator label `{0}` is used twice")]
    DuplicateLabel(String),
    #[error("not connected")]
    NotConnected,
    #[error("spanning tree: {0}")]
    SpanningTree(String),
    #[error("graph has no vertices")]
    Empty,
}

/// Vertex data: a free basis, or a presentation after collapsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexGroup {
    Free(Arc<Alphabet>),
    Presented(Presentation),
}

impl VertexGroup {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        match self {
            VertexGroup::Free(a) => a,
            VertexGroup::Presented(p) => p.alphabet(),
        }
    }

    pub fn relators(&self) -> &[Word] {
        match self {
            VertexGroup::Free(_) => &[],
            VertexGroup::Presented(p) => p.relators(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub group: VertexGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub reverse: String,
    pub terminal: String,
    /// Image of the edge generator `c` in the terminal vertex group.
    pub boundary: Word,
    /// Stable-letter label when this edge is the positive orientation of
    /// a non-tree orbit; defaults to `t_<id>`.
    pub stable: Option<String>,
}

/// A graph of groups whose edge groups are all infinite cyclic.
///
/// Each edge orbit `{e, ē}` has a positive orientation: whichever of the
/// two appears first in `edges`. Tree membership is recorded per orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    tree: BTreeSet<String>,
}

/// A directed step along an orbit: `edge` is the edge traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Step {
    pub edge: usize,
    pub positive: bool,
}

impl GoGraph {
    /// Builds and validates. `tree` lists edge ids; either orientation
    /// marks the orbit.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        tree: impl IntoIterator<Item = String>,
    ) -> Result<Self, GogError> {
        let g = Self::from_parts(vertices, edges, tree);
        let diags = g.validate();
        if diags.is_empty() {
            Ok(g)
        } else {
            Err(GogError::Invalid(diags))
        }
    }

    /// Builds without validation; see [`Self::validate`].
    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>, tree: impl IntoIterator<Item = String>) -> Self {
        Self {
            vertices,
            edges,
            tree: tree.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub(crate) fn reverse_index(&self, e: usize) -> usize {
        self.edge_index(&self.edges[e].reverse).expect("validated reversal")
    }

    pub fn origin(&self, e: usize) -> &str {
        &self.edges[self.reverse_index(e)].terminal
    }

    pub fn is_positive(&self, e: usize) -> bool {
        e < self.reverse_index(e)
    }

    /// Positive edge indices, one per orbit, in edge order.
    pub fn orbits(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.is_positive(e)).collect()
    }

    pub fn in_tree(&self, e: usize) -> bool {
        self.tree.contains(&self.edges[e].id) || self.tree.contains(&self.edges[e].reverse)
    }

    /// Positive ids of tree orbits.
    pub fn tree_orbits(&self) -> Vec<String> {
        self.orbits()
            .into_iter()
            .filter(|&e| self.in_tree(e))
            .map(|e| self.edges[e].id.clone())
            .collect()
    }

    pub fn stable_label(&self, e: usize) -> String {
        let pos = if self.is_positive(e) { e } else { self.reverse_index(e) };
        let edge = &self.edges[pos];
        edge.stable.clone().unwrap_or_else(|| format!("t_{}", edge.id))
    }

    /// Checks every structural invariant and reports all violations.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push(Diagnostic::Empty);
            return out;
        }
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id.as_str()) {
                out.push(Diagnostic::DuplicateVertex(v.id.clone()));
            }
        }
        let mut seen = HashSet::new();
        for e in &self.edges {
            if !seen.insert(e.id.as_str()) {
                out.push(Diagnostic::DuplicateEdge(e.id.clone()));
            }
        }
        let by_id: HashMap<&str, &Edge> = self.edges.iter().map(|e| (e.id.as_str(), e)).collect();
        let mut structural_ok = out.is_empty();
        for e in &self.edges {
            match self.vertex(&e.terminal) {
                None => {
                    structural_ok = false;
                    out.push(Diagnostic::UnknownTerminal {
                        edge: e.id.clone(),
                        vertex: e.terminal.clone(),
                    })
                }
                Some(v) => {
                    if !e.boundary.alphabet().same_as(v.group.alphabet()) {
                        out.push(Diagnostic::BoundaryAlphabet(e.id.clone()));
                    }
                }
            }
            let ok = e.reverse != e.id && by_id.get(e.reverse.as_str()).is_some_and(|r| r.reverse == e.id);
            if !ok {
                structural_ok = false;
                out.push(Diagnostic::BadReversal(e.id.clone()));
            }
            if e.boundary.is_identity() {
                out.push(Diagnostic::TrivialBoundary(e.id.clone()));
            }
        }
        if !structural_ok {
            return out;
        }
        let mut labels = HashSet::new();
        let mut dup = BTreeSet::new();
        for v in &self.vertices {
            for n in v.group.alphabet().names() {
                if !labels.insert(n.clone()) {
                    dup.insert(n.clone());
                }
            }
        }
        for e in self.orbits() {
            if !self.in_tree(e) && !labels.insert(self.stable_label(e)) {
                dup.insert(self.stable_label(e));
            }
        }
        out.extend(dup.into_iter().map(Diagnostic::DuplicateLabel));

        if self.components(|_| true) > 1 {
            out.push(Diagnostic::NotConnected);
        }
        for id in &self.tree {
            if !by_id.contains_key(id.as_str()) {
                out.push(Diagnostic::SpanningTree(format!("unknown edge `{id}`")));
            }
        }
        let tree_orbits = self.orbits().into_iter().filter(|&e| self.in_tree(e)).count();
        if tree_orbits + 1 != self.vertices.len() || self.components(|e| self.in_tree(e)) != 1 {
            out.push(Diagnostic::SpanningTree(
                "tree edges do not form a spanning tree".into(),
            ));
        }
        out
    }

    fn components(&self, keep: impl Fn(usize) -> bool) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertices.len();
        for e in self.orbits() {
            if !keep(e) {
                continue;
            }
            let a = self.vertex_index(&self.edges[e].terminal).unwrap();
            let b = self.vertex_index(self.origin(e)).unwrap();
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    fn ensure_valid(&self) -> Result<(), GogError> {
        let d = self.validate();
        if d.is_empty() {
            Ok(())
        } else {
            Err(GogError::Invalid(d))
        }
    }

    /// Alphabet of the fundamental group: vertex generators in vertex
    /// order, then one stable letter per non-tree orbit.
    pub fn global_alphabet(&self) -> Arc<Alphabet> {
        let mut names: Vec<String> = self
            .vertices
            .iter()
            .flat_map(|v| v.group.alphabet().names().iter().cloned())
            .collect();
        for e in self.orbits() {
            if !self.in_tree(e) {
                names.push(self.stable_label(e));
            }
        }
        Alphabet::new(names).expect("validated labels")
    }

    /// The presentation of `π₁` relative to the spanning tree.
    pub fn fundamental_presentation(&self) -> Result<Presentation, GogError> {
        self.ensure_valid()?;
        let alpha = self.global_alphabet();
        let mut relators = Vec::new();
        for v in &self.vertices {
            for r in v.group.relators() {
                relators.push(r.translate(&alpha)?);
            }
        }
        for e in self.orbits() {
            let fe = self.edges[e].boundary.translate(&alpha)?;
            let fbar = self.edges[self.reverse_index(e)].boundary.translate(&alpha)?;
            let rel = if self.in_tree(e) {
                fbar.concat(&fe.inverse())
            } else {
                let t = alpha.generator_by_name(&self.stable_label(e))?;
                fe.conjugated_by(&t).concat(&fbar.inverse())
            };
            relators.push(rel);
        }
        Ok(Presentation::new(&alpha, relators)?)
    }

    /// Tree paths from `base`: for each vertex, the sequence of steps.
    pub(crate) fn tree_paths(&self, base: usize) -> Vec<Vec<Step>> {
        let mut paths: Vec<Option<Vec<Step>>> = vec![None; self.vertices.len()];
        paths[base] = Some(Vec::new());
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            let here = paths[v].clone().unwrap();
            for e in 0..self.edges.len() {
                if !self.in_tree(e) || self.origin(e) != self.vertices[v].id {
                    continue;
                }
                let w = self.vertex_index(&self.edges[e].terminal).unwrap();
                if paths[w].is_none() {
                    let mut p = here.clone();
                    p.push(Step {
                        edge: e,
                        positive: self.is_positive(e),
                    });
                    paths[w] = Some(p);
                    queue.push_back(w);
                }
            }
        }
        paths.into_iter().map(|p| p.expect("spanning tree")).collect()
    }

    /// Rewrites the group of one vertex by Tietze elimination, carrying
    /// boundary words along.
    pub fn simplify_vertex(&self, id: &str) -> Result<(GoGraph, Vec<Elimination>), GogError> {
        let vi = self
            .vertex_index(id)
            .ok_or_else(|| GogError::UnknownVertex(id.into()))?;
        let pres = match &self.vertices[vi].group {
            VertexGroup::Free(_) => return Ok((self.clone(), Vec::new())),
            VertexGroup::Presented(p) => p.clone(),
        };
        let (simple, log, map) = pres.simplify();
        let mut g = self.clone();
        g.vertices[vi].group = if simple.is_free() {
            VertexGroup::Free(Arc::clone(simple.alphabet()))
        } else {
            VertexGroup::Presented(simple)
        };
        for e in g.edges.iter_mut() {
            if e.terminal == id {
                e.boundary = map.apply(&e.boundary)?;
            }
        }
        g.ensure_valid()?;
        Ok((g, log))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::words::parse_word;

    pub fn free_vertex(id: &str, gens: &[&str]) -> Vertex {
        Vertex {
            id: id.into(),
            group: VertexGroup::Free(Alphabet::new(gens.iter().copied()).unwrap()),
        }
    }

    pub fn edge_pair(g_vertices: &[Vertex], id: &str, from: &str, to: &str, w_from: &str, w_to: &str) -> [Edge; 2] {
        let alpha = |v: &str| Arc::clone(g_vertices.iter().find(|x| x.id == v).unwrap().group.alphabet());
        let rev = format!("{id}_bar");
        [
            Edge {
                id: id.into(),
                reverse: rev.clone(),
                terminal: to.into(),
                boundary: parse_word(&alpha(to), w_to).unwrap(),
                stable: None,
            },
            Edge {
                id: rev,
                reverse: id.into(),
                terminal: from.into(),
                boundary: parse_word(&alpha(from), w_from).unwrap(),
                stable: None,
            },
        ]
    }

    /// The triangle with vertices A, B, C, tree edges α (A→B) and β (B→C),
    /// and γ (C→A) outside the tree.
    pub fn triangle() -> GoGraph {
        let vs = vec![
            free_vertex("A", &["a1", "a2"]),
            free_vertex("B", &["b1", "b2"]),
            free_vertex("C", &["c1", "c2"]),
        ];
        let mut es = Vec::new();
        es.extend(edge_pair(&vs, "alpha", "A", "B", "a1", "b1^2"));
        es.extend(edge_pair(&vs, "beta", "B", "C", "b2", "c1 c2"));
        es.extend(edge_pair(&vs, "gamma", "C", "A", "c2^3", "a2 a1"));
        GoGraph::new(vs, es, ["alpha".to_string(), "beta".to_string()]).unwrap()
    }
}
