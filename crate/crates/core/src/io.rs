//! Versioned JSON envelopes and DOT rendering.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::CurveComplexSlice;
use crate::gog::GoGraph;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("unsupported schema_version {found} (expected {SCHEMA_VERSION})")]
    SchemaVersion { found: u32 },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// `{"schema_version": 1, …payload fields…}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versioned<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Versioned<T> {
    pub fn new(body: T) -> Self {
        Versioned {
            schema_version: SCHEMA_VERSION,
            body,
        }
    }
}

pub fn to_json<T: Serialize>(body: &T) -> Result<String, IoError> {
    let mut s = serde_json::to_string_pretty(&Versioned::new(body))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    let v: Versioned<T> = serde_json::from_str(text)?;
    if v.schema_version != SCHEMA_VERSION {
        return Err(IoError::SchemaVersion {
            found: v.schema_version,
        });
    }
    Ok(v.body)
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// One node per vertex and one arrow per edge orbit, drawn in its
/// positive orientation. Non-tree edges are dashed.
pub fn graph_to_dot(g: &GoGraph, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for v in g.vertices() {
        let gens = v.group.alphabet().names().join(", ");
        let mut label = format!("{}\n<{gens}>", v.id);
        for r in v.group.relators() {
            label.push_str(&format!("\n{r} = 1"));
        }
        out.push_str(&format!("  {} [label={}];\n", quote(&v.id), quote(&label)));
    }
    for e in g.orbits() {
        let edge = &g.edges()[e];
        let rev = &g.edges()[g.edge_index(&edge.reverse).expect("validated")];
        let mut attrs = format!(
            "label={}",
            quote(&format!("{}: {} ~ {}", edge.id, rev.boundary, edge.boundary))
        );
        if !g.in_tree(e) {
            attrs.push_str(&format!(", style=dashed, xlabel={}", quote(&g.stable_label(e))));
        }
        out.push_str(&format!(
            "  {} -> {} [{attrs}];\n",
            quote(g.origin(e)),
            quote(&edge.terminal)
        ));
    }
    out.push_str("}\n");
    out
}

/// Vertices are splitting classes; solid edges join compatible pairs.
pub fn slice_to_dot(s: &CurveComplexSlice) -> String {
    let mut out = String::from("graph \"curve_complex\" {\n");
    for v in &s.vertices {
        out.push_str(&format!("  {} [label={}];\n", quote(&v.id), quote(&v.label)));
    }
    for e in &s.edges {
        out.push_str(&format!("  {} -- {};\n", quote(&e.0), quote(&e.1)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::fixtures::triangle;

    #[test]
    fn triangle_dot() {
        let dot = graph_to_dot(&triangle(), "triangle");
        assert!(dot.starts_with("digraph \"triangle\" {"));
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert!(dot.contains("\"A\" -> \"B\""));
        assert!(dot.contains("\"B\" -> \"C\""));
        assert!(dot.contains("\"C\" -> \"A\""));
    }

    #[test]
    fn versioned_round_trip() {
        #[derive(Debug, PartialEq, Serialize, Deserialize)]
        struct Body {
            x: u32,
        }
        let text = to_json(&Body { x: 7 }).unwrap();
        assert!(text.contains("\"schema_version\": 1"));
        assert_eq!(from_json::<Body>(&text).unwrap(), Body { x: 7 });
        let bad = text.replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(matches!(
            from_json::<Body>(&bad),
            Err(IoError::SchemaVersion { found: 9 })
        ));
    }
}
