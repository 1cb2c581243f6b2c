use std::collections::{BTreeSet, HashSet};

use super::{Edge, GoGraph, GogError, Vertex, VertexGroup};

impl GoGraph {
    /// Collapses the connected subgraph spanned by `edge_ids` (either
    /// orientation of each orbit) and `vertex_ids` into a single vertex
    /// whose group is the fundamental group of the subgraph.
    pub fn collapse_subgraph(&self, vertex_ids: &[&str], edge_ids: &[&str]) -> Result<GoGraph, GogError> {
        self.ensure_valid()?;
        let mut in_sub_v: BTreeSet<usize> = BTreeSet::new();
        for id in vertex_ids {
            in_sub_v.insert(
                self.vertex_index(id)
                    .ok_or_else(|| GogError::UnknownVertex(id.to_string()))?,
            );
        }
        let mut sub_orbits: BTreeSet<usize> = BTreeSet::new();
        for id in edge_ids {
            let e = self
                .edge_index(id)
                .ok_or_else(|| GogError::UnknownEdge(id.to_string()))?;
            let pos = if self.is_positive(e) { e } else { self.reverse_index(e) };
            sub_orbits.insert(pos);
            in_sub_v.insert(self.vertex_index(&self.edges[pos].terminal).unwrap());
            in_sub_v.insert(self.vertex_index(self.origin(pos)).unwrap());
            let inside = |v: &str| vertex_ids.is_empty() || vertex_ids.contains(&v);
            if !inside(&self.edges[pos].terminal) || !inside(self.origin(pos)) {
                return Err(GogError::NotASubgraph(id.to_string()));
            }
        }
        if in_sub_v.is_empty() {
            return Err(GogError::SubgraphNotConnected);
        }
        let sub_vertices: Vec<Vertex> = in_sub_v.iter().map(|&v| self.vertices[v].clone()).collect();
        let sub_edge_idx: Vec<usize> = (0..self.edges.len())
            .filter(|&e| {
                let pos = if self.is_positive(e) { e } else { self.reverse_index(e) };
                sub_orbits.contains(&pos)
            })
            .collect();
        let sub_edges: Vec<Edge> = sub_edge_idx.iter().map(|&e| self.edges[e].clone()).collect();
        let preferred: Vec<String> = sub_orbits
            .iter()
            .filter(|&&e| self.in_tree(e))
            .map(|&e| self.edges[e].id.clone())
            .collect();
        let sub_tree = kruskal(&sub_vertices, &sub_edges, &preferred);
        let sub = GoGraph::from_parts(sub_vertices, sub_edges, sub_tree);
        if sub.components(|_| true) != 1 {
            return Err(GogError::SubgraphNotConnected);
        }
        let pres = sub.fundamental_presentation()?;

        let new_id = in_sub_v
            .iter()
            .map(|&v| self.vertices[v].id.as_str())
            .collect::<Vec<_>>()
            .join("+");
        let group = if pres.is_free() {
            VertexGroup::Free(pres.alphabet().clone())
        } else {
            VertexGroup::Presented(pres)
        };
        let first = *in_sub_v.iter().next().unwrap();
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if i == first {
                vertices.push(Vertex {
                    id: new_id.clone(),
                    group: group.clone(),
                });
            } else if !in_sub_v.contains(&i) {
                vertices.push(v.clone());
            }
        }
        let sub_set: HashSet<usize> = sub_edge_idx.into_iter().collect();
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if sub_set.contains(&i) {
                continue;
            }
            let vi = self.vertex_index(&e.terminal).unwrap();
            let mut e = e.clone();
            if in_sub_v.contains(&vi) {
                e.terminal = new_id.clone();
                e.boundary = e.boundary.translate(group.alphabet())?;
            }
            edges.push(e);
        }
        let preferred: Vec<String> = self
            .orbits()
            .into_iter()
            .filter(|&e| self.in_tree(e) && !sub_orbits.contains(&e))
            .map(|e| self.edges[e].id.clone())
            .collect();
        let tree = kruskal(&vertices, &edges, &preferred);
        GoGraph::new(vertices, edges, tree)
    }

    /// Collapses the subgraph spanned by the given edges.
    pub fn collapse_edges(&self, edge_ids: &[&str]) -> Result<GoGraph, GogError> {
        self.collapse_subgraph(&[], edge_ids)
    }
}

/// Spanning forest by union-find, trying `preferred` orbits first and
/// then the remaining orbits in edge order.
fn kruskal(vertices: &[Vertex], edges: &[Edge], preferred: &[String]) -> Vec<String> {
    let vidx = |id: &str| vertices.iter().position(|v| v.id == id);
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let positive: Vec<&Edge> = edges
        .iter()
        .enumerate()
        .filter(|(i, e)| edges.iter().position(|f| f.id == e.reverse).is_some_and(|r| *i < r))
        .map(|(_, e)| e)
        .collect();
    let mut order: Vec<&Edge> = positive.iter().copied().filter(|e| preferred.contains(&e.id)).collect();
    order.extend(positive.iter().copied().filter(|e| !preferred.contains(&e.id)));
    let mut tree = Vec::new();
    for e in order {
        let origin = edges.iter().find(|f| f.id == e.reverse).map(|f| f.terminal.as_str());
        let (Some(a), Some(b)) = (vidx(&e.terminal), origin.and_then(vidx)) else {
            continue;
        };
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            tree.push(e.id.clone());
        }
    }
    tree
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn collapse_single_vertex_is_identity() {
        let g = triangle();
        let h = g.collapse_subgraph(&["B"], &[]).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn triangle_collapse_sequence() {
        let g = triangle();
        let ab = g.collapse_edges(&["alpha"]).unwrap();
        assert_eq!(ab.vertices().len(), 2);
        assert_eq!(ab.vertices()[0].id, "A+B");
        let VertexGroup::Presented(p) = &ab.vertices()[0].group else {
            panic!("collapsed vertex should carry a presentation")
        };
        assert_eq!(p.relators()[0].to_string(), "a1 b1^-2");
        let abc = ab.collapse_edges(&["beta"]).unwrap();
        assert_eq!(abc.vertices().len(), 1);
        assert_eq!(abc.edges().len(), 2);
        assert_eq!(abc.edges()[0].terminal, "A+B+C");
        let p1 = g.fundamental_presentation().unwrap();
        let p2 = abc.fundamental_presentation().unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn collapse_whole_graph() {
        let g = triangle();
        let all = g.collapse_edges(&["alpha", "beta", "gamma"]).unwrap();
        assert!(all.edges().is_empty());
        let VertexGroup::Presented(p) = &all.vertices()[0].group else {
            panic!()
        };
        assert_eq!(*p, g.fundamental_presentation().unwrap());
    }

    #[test]
    fn rejects_disconnected_subgraph() {
        let g = triangle();
        assert!(matches!(
            g.collapse_subgraph(&["A", "C"], &[]),
            Err(GogError::SubgraphNotConnected)
        ));
        assert!(matches!(
            g.collapse_subgraph(&["A"], &["beta"]),
            Err(GogError::NotASubgraph(_))
        ));
    }
}
