use std::sync::Arc;

use super::splits::{amalg_left, right_word};
use super::{commutator_product, CatalogError, DemuskinParams};
use crate::gog::{Edge, GoGraph, Vertex, VertexGroup};
use crate::normal_forms::{Splitting, SplittingKind};
use crate::words::Alphabet;

/// Label of the edge-group generator shared by the two refinement edges.
pub const Z: &str = "z";

/// A two-edge tree refining both `split_amalg(n1)` and `split_amalg(n2)`
/// for `n1 < n2`:
///
/// `V1 = ⟨x1 … y_{n1}⟩ --e1-- V2 = ⟨z, x_{n1+1} … y_{n2}⟩ --e2-- V3 = ⟨x_{n2+1} … y_d⟩`
///
/// with `e1` gluing `x1^q [x1,y1] … [x_{n1},y_{n1}]` to `z` and `e2` gluing
/// `z [x_{n1+1},y_{n1+1}] … [x_{n2},y_{n2}]` to the right-hand word of
/// `split_amalg(n2)`. Collapsing `e2` (resp. `e1`) and eliminating `z`
/// gives `split_amalg(n1)` (resp. `n2`).
pub fn amalg_refinement(params: &DemuskinParams, n1: usize, n2: usize) -> Result<GoGraph, CatalogError> {
    params.check()?;
    if !(1 <= n1 && n1 < n2 && n2 < params.d) {
        return Err(CatalogError::InvalidParams(format!(
            "need 1 ≤ n1 < n2 < d, got n1={n1} n2={n2} d={}",
            params.d
        )));
    }
    let names = |from: usize, to: usize| (from..=to).flat_map(|i| [format!("x{i}"), format!("y{i}")]);
    let v1 = Alphabet::new(names(1, n1))?;
    let v2 = Alphabet::new(std::iter::once(Z.to_string()).chain(names(n1 + 1, n2)))?;
    let v3 = Alphabet::new(names(n2 + 1, params.d))?;
    let z = v2.generator_by_name(Z)?;
    let edge = |id: &str, rev: &str, terminal: &str, boundary| Edge {
        id: id.into(),
        reverse: rev.into(),
        terminal: terminal.into(),
        boundary,
        stable: None,
    };
    let vertex = |id: &str, a: &Arc<Alphabet>| Vertex {
        id: id.into(),
        group: VertexGroup::Free(Arc::clone(a)),
    };
    let edges = vec![
        edge("e1", "e1_bar", "V2", z.clone()),
        edge("e1_bar", "e1", "V1", amalg_left(params, n1)?.translate(&v1)?),
        edge("e2", "e2_bar", "V3", right_word(params, &v3, n2)?),
        edge("e2_bar", "e2", "V2", z.concat(&commutator_product(&v2, n1 + 1, n2))),
    ];
    Ok(GoGraph::new(
        vec![vertex("V1", &v1), vertex("V2", &v2), vertex("V3", &v3)],
        edges,
        ["e1".to_string(), "e2".to_string()],
    )?)
}

/// True when a two-vertex, one-orbit graph carries exactly the vertex
/// bases and boundary words of the amalgam `s`.
pub fn compare_with_splitting(g: &GoGraph, s: &Splitting) -> bool {
    let SplittingKind::Amalgam { a, b, u_a, u_b } = s.kind() else {
        return false;
    };
    if g.vertices().len() != 2 || g.edges().len() != 2 {
        return false;
    }
    let find = |alpha: &Arc<Alphabet>| g.vertices().iter().find(|v| v.group.alphabet().same_as(alpha));
    let (Some(va), Some(vb)) = (find(a), find(b)) else {
        return false;
    };
    if !matches!(va.group, VertexGroup::Free(_)) || !matches!(vb.group, VertexGroup::Free(_)) {
        return false;
    }
    let boundary_at = |v: &Vertex| g.edges().iter().find(|e| e.terminal == v.id).map(|e| &e.boundary);
    boundary_at(va) == Some(u_a) && boundary_at(vb) == Some(u_b)
}

#[cfg(test)]
mod tests {
    use super::super::{split_amalg, Level};
    use super::*;

    #[test]
    fn collapses_recover_both_amalgams() {
        for rp in [Level::Finite(2), Level::Finite(3), Level::Infinite] {
            let params = DemuskinParams::new(3, 3, Level::Finite(2), rp).unwrap();
            let g = amalg_refinement(&params, 1, 2).unwrap();
            let (h1, log1) = g.collapse_edges(&["e2"]).unwrap().simplify_vertex("V2+V3").unwrap();
            assert_eq!(log1.len(), 1);
            assert_eq!(log1[0].generator, Z);
            assert!(compare_with_splitting(&h1, &split_amalg(&params, 1).unwrap()));
            let (h2, log2) = g.collapse_edges(&["e1"]).unwrap().simplify_vertex("V1+V2").unwrap();
            assert_eq!(log2[0].generator, Z);
            assert!(compare_with_splitting(&h2, &split_amalg(&params, 2).unwrap()));
            assert!(!compare_with_splitting(&h2, &split_amalg(&params, 1).unwrap()));
        }
    }
}
