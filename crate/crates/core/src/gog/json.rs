use serde::{Deserialize, Serialize};

use super::{Edge, GoGraph, GogError, Presentation, Vertex, VertexGroup};
use crate::words::{parse_pairs, Alphabet};

pub type Pairs = Vec<(String, i64)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relators: Vec<Pairs>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub reverse: String,
    pub terminal: String,
    pub boundary: Pairs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable: Option<String>,
}

/// Wire form of a [`GoGraph`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub tree: Vec<String>,
}

impl From<&GoGraph> for GraphJson {
    fn from(g: &GoGraph) -> Self {
        GraphJson {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    generators: v.group.alphabet().names().to_vec(),
                    relators: v.group.relators().iter().map(|r| r.to_pairs()).collect(),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    reverse: e.reverse.clone(),
                    terminal: e.terminal.clone(),
                    boundary: e.boundary.to_pairs(),
                    stable: e.stable.clone(),
                })
                .collect(),
            tree: g.tree_orbits(),
        }
    }
}

impl GraphJson {
    pub fn into_graph(self) -> Result<GoGraph, GogError> {
        let mut vertices = Vec::new();
        for v in self.vertices {
            let alpha = Alphabet::new(v.generators)?;
            let group = if v.relators.is_empty() {
                VertexGroup::Free(alpha)
            } else {
                let rels = v
                    .relators
                    .iter()
                    .map(|r| parse_pairs(&alpha, r))
                    .collect::<Result<Vec<_>, _>>()?;
                VertexGroup::Presented(Presentation::new(&alpha, rels)?)
            };
            vertices.push(Vertex { id: v.id, group });
        }
        let mut edges = Vec::new();
        for e in self.edges {
            let alpha = vertices
                .iter()
                .find(|v| v.id == e.terminal)
                .map(|v| v.group.alphabet().clone())
                .ok_or_else(|| GogError::UnknownVertex(e.terminal.clone()))?;
            edges.push(Edge {
                boundary: parse_pairs(&alpha, &e.boundary)?,
                id: e.id,
                reverse: e.reverse,
                terminal: e.terminal,
                stable: e.stable,
            });
        }
        GoGraph::new(vertices, edges, self.tree)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::triangle;
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = triangle();
        let text = serde_json::to_string(&GraphJson::from(&g)).unwrap();
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_graph().unwrap(), g);
        let collapsed = g.collapse_edges(&["alpha"]).unwrap();
        let j = GraphJson::from(&collapsed);
        assert_eq!(j.clone().into_graph().unwrap(), collapsed);
    }
}
