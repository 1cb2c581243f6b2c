//! A finite slice of the curve complex: catalog splitting classes over a
//! range of levels, with an intersection verdict for every pair.

use serde::{Deserialize, Serialize};

use crate::catalog::{
    amalg_refinement, compare_with_splitting, descriptor_splitting, CatalogError, DemuskinParams, Level,
    SplitDescriptor, SplitKind,
};
use crate::gog::GraphJson;
use crate::normal_forms::{splittings_intersect, Direction, IntersectionVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceVertex {
    pub id: String,
    pub label: String,
    pub descriptor: SplitDescriptor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "provenance", rename_all = "snake_case")]
pub enum Provenance {
    /// A two-edge graph collapsing onto both splittings.
    Refinement {
        graph: GraphJson,
    },
    /// An edge word acting hyperbolically on the other tree.
    Hyperbolicity {
        witness: String,
        second_in_first: bool,
        translation_length: u64,
    },
    Inconclusive,
    /// The splittings belong to different groups `𝒢_{r'}`.
    DistinctGroups,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlicePair {
    pub a: String,
    pub b: String,
    pub compatible: Option<bool>,
    #[serde(flatten)]
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveComplexSlice {
    pub p: u64,
    pub d: usize,
    pub r: Level,
    pub rprime_max: u32,
    pub vertices: Vec<SliceVertex>,
    /// Compatible pairs.
    pub edges: Vec<(String, String)>,
    pub pairs: Vec<SlicePair>,
}

/// One HNN class (on `𝒢_∞`) and one amalgam class for each
/// `1 ≤ n < d` and `r ≤ r' ≤ rprime_max`.
pub fn curve_complex_slice(p: u64, d: usize, r: Level, rprime_max: u32) -> Result<CurveComplexSlice, CatalogError> {
    let r_min = r
        .finite()
        .ok_or_else(|| CatalogError::InvalidParams("the slice needs a finite r".into()))?;
    if rprime_max < r_min {
        return Err(CatalogError::InvalidParams(format!(
            "rprime-max {rprime_max} < r {r_min}"
        )));
    }
    let mut vertices = Vec::new();
    if d >= 2 {
        let params = DemuskinParams::new(p, d, r, Level::Infinite)?;
        vertices.push(SliceVertex {
            id: "hnn".into(),
            label: "HNN (r'=inf)".into(),
            descriptor: SplitDescriptor {
                params,
                kind: SplitKind::Hnn,
            },
        });
    }
    for rp in r_min..=rprime_max {
        let params = DemuskinParams::new(p, d, r, Level::Finite(rp))?;
        for n in 1..d {
            vertices.push(SliceVertex {
                id: format!("amalg_n{n}_r{rp}"),
                label: format!("amalg n={n} r'={rp}"),
                descriptor: SplitDescriptor {
                    params,
                    kind: SplitKind::Amalg(n),
                },
            });
        }
    }
    let mut pairs = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            pairs.push(examine(&vertices[i], &vertices[j])?);
        }
    }
    let edges = pairs
        .iter()
        .filter(|pr| pr.compatible == Some(true))
        .map(|pr| (pr.a.clone(), pr.b.clone()))
        .collect();
    Ok(CurveComplexSlice {
        p,
        d,
        r,
        rprime_max,
        vertices,
        edges,
        pairs,
    })
}

/// Intersection verdict for two catalog splittings, refinement witness
/// included when one is known.
pub fn compare_descriptors(a: &SplitDescriptor, b: &SplitDescriptor) -> Result<SlicePair, CatalogError> {
    let vertex = |d: &SplitDescriptor| SliceVertex {
        id: format!("{} {}", d.params, d.kind),
        label: d.kind.to_string(),
        descriptor: *d,
    };
    examine(&vertex(a), &vertex(b))
}

fn examine(va: &SliceVertex, vb: &SliceVertex) -> Result<SlicePair, CatalogError> {
    let (da, db) = (&va.descriptor, &vb.descriptor);
    let pair = |compatible, provenance| SlicePair {
        a: va.id.clone(),
        b: vb.id.clone(),
        compatible,
        provenance,
    };
    if da.params != db.params {
        return Ok(pair(None, Provenance::DistinctGroups));
    }
    let (s1, s2) = (descriptor_splitting(da)?, descriptor_splitting(db)?);
    let refinement = match (da.kind, db.kind) {
        (SplitKind::Amalg(n1), SplitKind::Amalg(n2)) if n1 != n2 => {
            let (lo, hi) = (n1.min(n2), n1.max(n2));
            let g = amalg_refinement(&da.params, lo, hi)?;
            let (h_lo, _) = g.collapse_edges(&["e2"])?.simplify_vertex("V2+V3")?;
            let (h_hi, _) = g.collapse_edges(&["e1"])?.simplify_vertex("V1+V2")?;
            let lo_split = descriptor_splitting(&SplitDescriptor {
                params: da.params,
                kind: SplitKind::Amalg(lo),
            })?;
            let hi_split = descriptor_splitting(&SplitDescriptor {
                params: da.params,
                kind: SplitKind::Amalg(hi),
            })?;
            (compare_with_splitting(&h_lo, &lo_split) && compare_with_splitting(&h_hi, &hi_split)).then_some(g)
        }
        _ => None,
    };
    let (compatible, provenance) = verdict_provenance(splittings_intersect(&s1, &s2, refinement.as_ref())?);
    Ok(pair(compatible, provenance))
}

/// `Some(true)` for a refinement, `Some(false)` for a hyperbolic witness.
pub fn verdict_provenance(v: IntersectionVerdict) -> (Option<bool>, Provenance) {
    match v {
        IntersectionVerdict::Intersecting {
            witness,
            direction,
            translation_length,
        } => (
            Some(false),
            Provenance::Hyperbolicity {
                witness: witness.to_string(),
                second_in_first: direction == Direction::SecondInFirst,
                translation_length,
            },
        ),
        IntersectionVerdict::CompatibleWitness(g) => (
            Some(true),
            Provenance::Refinement {
                graph: GraphJson::from(&g),
            },
        ),
        IntersectionVerdict::Inconclusive => (None, Provenance::Inconclusive),
    }
}
