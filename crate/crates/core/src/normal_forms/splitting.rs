use std::sync::Arc;

use super::NormalFormError;
use crate::gog::{dehn_twist, Edge, GoGraph, TwistEndo, Vertex, VertexGroup};
use crate::words::{Alphabet, FreeEndo, Word};

pub const VERTEX_A: &str = "A";
pub const VERTEX_B: &str = "B";
pub const EDGE: &str = "e";
pub const EDGE_BAR: &str = "e_bar";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplittingKind {
    /// `A *_{u_A = u_B} B`
    Amalgam {
        a: Arc<Alphabet>,
        b: Arc<Alphabet>,
        u_a: Word,
        u_b: Word,
    },
    /// `⟨A, t | t u t⁻¹ = v⟩`
    Hnn {
        base: Arc<Alphabet>,
        u: Word,
        v: Word,
        stable: String,
    },
}

/// A one-edge cyclic splitting of a group given over `ambient`, with the
/// Tietze dictionary in both directions.
///
/// `to_coords` sends each ambient generator to a word over the
/// coordinate alphabet (`A ⊔ B`, or the base plus the stable letter);
/// `to_ambient` goes back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    kind: SplittingKind,
    ambient: Arc<Alphabet>,
    coords: Arc<Alphabet>,
    to_coords: FreeEndo,
    to_ambient: FreeEndo,
}

impl Splitting {
    /// Any generator not named in an override maps to the generator with
    /// the same label on the other side.
    pub fn new(
        kind: SplittingKind,
        ambient: &Arc<Alphabet>,
        to_coords: &[(&str, &str)],
        to_ambient: &[(&str, &str)],
    ) -> Result<Self, NormalFormError> {
        let coord_names: Vec<String> = match &kind {
            SplittingKind::Amalgam { a, b, u_a, u_b } => {
                check_nontrivial(u_a, "u_A")?;
                check_nontrivial(u_b, "u_B")?;
                check_alpha(u_a, a)?;
                check_alpha(u_b, b)?;
                a.names().iter().chain(b.names()).cloned().collect()
            }
            SplittingKind::Hnn { base, u, v, stable } => {
                check_nontrivial(u, "u")?;
                check_nontrivial(v, "v")?;
                check_alpha(u, base)?;
                check_alpha(v, base)?;
                base.names().iter().cloned().chain([stable.clone()]).collect()
            }
        };
        let coords = Alphabet::new(coord_names)?;
        let to_coords = dictionary(ambient, &coords, to_coords)?;
        let to_ambient = dictionary(&coords, ambient, to_ambient)?;
        Ok(Self {
            kind,
            ambient: Arc::clone(ambient),
            coords,
            to_coords,
            to_ambient,
        })
    }

    pub fn kind(&self) -> &SplittingKind {
        &self.kind
    }

    pub fn is_hnn(&self) -> bool {
        matches!(self.kind, SplittingKind::Hnn { .. })
    }

    pub fn ambient(&self) -> &Arc<Alphabet> {
        &self.ambient
    }

    pub fn coords(&self) -> &Arc<Alphabet> {
        &self.coords
    }

    pub fn to_coords(&self) -> &FreeEndo {
        &self.to_coords
    }

    pub fn to_ambient(&self) -> &FreeEndo {
        &self.to_ambient
    }

    /// The defining relator over the coordinate alphabet.
    pub fn relator_coords(&self) -> Word {
        let tr = |w: &Word| w.translate(&self.coords).expect("vertex labels are coordinates");
        match &self.kind {
            SplittingKind::Amalgam { u_a, u_b, .. } => tr(u_a).concat(&tr(u_b).inverse()),
            SplittingKind::Hnn { u, v, stable, .. } => {
                let t = self.coords.generator_by_name(stable).expect("stable letter");
                tr(u).conjugated_by(&t).concat(&tr(v).inverse())
            }
        }
    }

    /// The edge generator `c` over the coordinate alphabet: `u_A` or `u`.
    pub fn edge_word_coords(&self) -> Word {
        let w = match &self.kind {
            SplittingKind::Amalgam { u_a, .. } => u_a,
            SplittingKind::Hnn { u, .. } => u,
        };
        w.translate(&self.coords).expect("vertex labels are coordinates")
    }

    /// The edge generator as an ambient word.
    pub fn edge_word(&self) -> Word {
        self.to_ambient
            .apply(&self.edge_word_coords())
            .expect("dictionary covers coordinates")
    }

    /// The one-edge graph of groups; the positive edge runs from the
    /// base vertex `A`.
    pub fn to_graph(&self) -> GoGraph {
        let (vertices, edges, tree) = match &self.kind {
            SplittingKind::Amalgam { a, b, u_a, u_b } => (
                vec![
                    Vertex {
                        id: VERTEX_A.into(),
                        group: VertexGroup::Free(Arc::clone(a)),
                    },
                    Vertex {
                        id: VERTEX_B.into(),
                        group: VertexGroup::Free(Arc::clone(b)),
                    },
                ],
                vec![
                    Edge {
                        id: EDGE.into(),
                        reverse: EDGE_BAR.into(),
                        terminal: VERTEX_B.into(),
                        boundary: u_b.clone(),
                        stable: None,
                    },
                    Edge {
                        id: EDGE_BAR.into(),
                        reverse: EDGE.into(),
                        terminal: VERTEX_A.into(),
                        boundary: u_a.clone(),
                        stable: None,
                    },
                ],
                vec![EDGE.to_string()],
            ),
            SplittingKind::Hnn { base, u, v, stable } => (
                vec![Vertex {
                    id: VERTEX_A.into(),
                    group: VertexGroup::Free(Arc::clone(base)),
                }],
                vec![
                    Edge {
                        id: EDGE.into(),
                        reverse: EDGE_BAR.into(),
                        terminal: VERTEX_A.into(),
                        boundary: u.clone(),
                        stable: Some(stable.clone()),
                    },
                    Edge {
                        id: EDGE_BAR.into(),
                        reverse: EDGE.into(),
                        terminal: VERTEX_A.into(),
                        boundary: v.clone(),
                        stable: None,
                    },
                ],
                Vec::new(),
            ),
        };
        GoGraph::new(vertices, edges, tree).expect("one-edge splitting graph is valid")
    }

    /// The `k`-th power of the Dehn twist based at `A`, over coordinates.
    pub fn dehn_twist(&self, k: i64) -> TwistEndo {
        let g = self.to_graph();
        dehn_twist(&g, &[(EDGE, 1)], VERTEX_A, k).expect("valid graph")
    }

    /// The same twist as an endomorphism of the ambient free group.
    pub fn ambient_twist(&self, k: i64) -> FreeEndo {
        let t = self.dehn_twist(k);
        self.to_ambient
            .after(&t.endo)
            .and_then(|x| x.after(&self.to_coords))
            .expect("dictionary alphabets line up")
    }

    /// The image `φ(α)` of this splitting under an ambient automorphism
    /// `φ` with inverse `φ⁻¹`: same coordinates, dictionaries composed.
    pub fn transport(&self, phi: &FreeEndo, phi_inv: &FreeEndo) -> Result<Splitting, NormalFormError> {
        let id = FreeEndo::identity(&self.ambient);
        if phi.after(phi_inv)? != id || phi_inv.after(phi)? != id {
            return Err(NormalFormError::DictionaryMismatch(
                "transport needs mutually inverse automorphisms".into(),
            ));
        }
        Ok(Splitting {
            kind: self.kind.clone(),
            ambient: Arc::clone(&self.ambient),
            coords: Arc::clone(&self.coords),
            to_coords: self.to_coords.after(phi_inv)?,
            to_ambient: phi.after(&self.to_ambient)?,
        })
    }

    /// Alphabet of the vertex group that owns a coordinate generator.
    pub(crate) fn vertex_alphabets(&self) -> (Arc<Alphabet>, Option<Arc<Alphabet>>) {
        match &self.kind {
            SplittingKind::Amalgam { a, b, .. } => (Arc::clone(a), Some(Arc::clone(b))),
            SplittingKind::Hnn { base, .. } => (Arc::clone(base), None),
        }
    }
}

fn check_nontrivial(w: &Word, what: &str) -> Result<(), NormalFormError> {
    if w.is_identity() {
        Err(NormalFormError::TrivialEdgeWord(what.into()))
    } else {
        Ok(())
    }
}

fn check_alpha(w: &Word, a: &Arc<Alphabet>) -> Result<(), NormalFormError> {
    w.check_alphabet(&a.identity())?;
    Ok(())
}

fn dictionary(
    from: &Arc<Alphabet>,
    to: &Arc<Alphabet>,
    overrides: &[(&str, &str)],
) -> Result<FreeEndo, NormalFormError> {
    let mut images = Vec::with_capacity(from.rank());
    for name in from.names() {
        let img = match overrides.iter().find(|(n, _)| n == name) {
            Some((_, text)) => crate::words::parse_word(to, text)?,
            None => to
                .generator_by_name(name)
                .map_err(|_| NormalFormError::DictionaryMismatch(name.clone()))?,
        };
        images.push(img);
    }
    Ok(FreeEndo::new(from, to, images)?)
}
