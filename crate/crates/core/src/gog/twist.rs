use std::collections::HashMap;

use serde::Serialize;

use super::{GoGraph, GogError};
use crate::words::{FreeEndo, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistProvenance {
    pub base: String,
    /// `(positive edge id, m)` per orbit; `γ_e = c^m` and `γ_ē = γ_e⁻¹`.
    pub exponents: Vec<(String, i64)>,
    pub k: i64,
}

/// A Dehn-twist endomorphism of the fundamental presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistEndo {
    pub endo: FreeEndo,
    pub provenance: TwistProvenance,
}

impl TwistEndo {
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        self.endo.apply(w)
    }
}

/// The `k`-th power of the twist with `γ_e = c^{m_e}` based at `base`.
///
/// Tree steps `o → t` along an edge `f` contribute `φ_f̄(c)^{±k m}` (the
/// edge generator seen from the origin side) to the path conjugator `Γ`.
/// Vertex generators map to `Γ_v g Γ_v⁻¹`; a non-tree stable letter maps to
/// `Γ_{o(e)} φ_ē(c)^{k m} t_e Γ_{t(e)}⁻¹`, which preserves its relator.
pub fn dehn_twist(g: &GoGraph, gammas: &[(&str, i64)], base: &str, k: i64) -> Result<TwistEndo, GogError> {
    g.ensure_valid()?;
    let base_idx = g
        .vertex_index(base)
        .ok_or_else(|| GogError::UnknownVertex(base.into()))?;
    let mut m: HashMap<usize, i64> = HashMap::new();
    for &(id, exp) in gammas {
        let e = g.edge_index(id).ok_or_else(|| GogError::UnknownEdge(id.into()))?;
        if g.is_positive(e) {
            *m.entry(e).or_default() += exp;
        } else {
            *m.entry(g.reverse_index(e)).or_default() -= exp;
        }
    }
    let alpha = g.global_alphabet();
    let signed = |e: usize| -> i64 {
        if g.is_positive(e) {
            m.get(&e).copied().unwrap_or(0)
        } else {
            -m.get(&g.reverse_index(e)).copied().unwrap_or(0)
        }
    };
    let origin_boundary =
        |e: usize| -> Result<Word, WordError> { g.edges[g.reverse_index(e)].boundary.translate(&alpha) };

    let paths = g.tree_paths(base_idx);
    let mut conj: Vec<Word> = Vec::with_capacity(paths.len());
    for path in &paths {
        let mut acc = alpha.identity();
        for step in path {
            let f = origin_boundary(step.edge)?;
            acc = acc.concat(&f.pow(k * signed(step.edge)));
        }
        conj.push(acc);
    }

    let mut images = vec![alpha.identity(); alpha.rank()];
    for (vi, v) in g.vertices.iter().enumerate() {
        for name in v.group.alphabet().names() {
            let i = alpha.index_of(name).expect("global alphabet");
            images[i] = alpha.generator(i).conjugated_by(&conj[vi]);
        }
    }
    let mut exponents = Vec::new();
    for e in g.orbits() {
        exponents.push((g.edges[e].id.clone(), signed(e)));
        if g.in_tree(e) {
            continue;
        }
        let i = alpha.index_of(&g.stable_label(e)).expect("global alphabet");
        let o = g.vertex_index(g.origin(e)).unwrap();
        let t = g.vertex_index(&g.edges[e].terminal).unwrap();
        let gamma = origin_boundary(e)?.pow(k * signed(e));
        images[i] = conj[o]
            .concat(&gamma)
            .concat(&alpha.generator(i))
            .concat(&conj[t].inverse());
    }
    Ok(TwistEndo {
        endo: FreeEndo::new(&alpha, &alpha, images)?,
        provenance: TwistProvenance {
            base: base.to_string(),
            exponents,
            k,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::words::{conjugate_in_free, parse_word};

    fn amalgam() -> GoGraph {
        let vs = vec![free_vertex("A", &["a1", "a2"]), free_vertex("B", &["b1", "b2"])];
        let es = edge_pair(&vs, "e", "A", "B", "a1 a2", "b1^2").to_vec();
        GoGraph::new(vs, es, ["e".to_string()]).unwrap()
    }

    #[test]
    fn zero_exponents_give_identity() {
        let g = triangle();
        let t = dehn_twist(&g, &[], "A", 3).unwrap();
        assert_eq!(t.endo, FreeEndo::identity(&g.global_alphabet()));
    }

    #[test]
    fn amalgam_twist_conjugates_far_side() {
        let g = amalgam();
        let t = dehn_twist(&g, &[("e", 1)], "A", 1).unwrap();
        let a = g.global_alphabet();
        assert_eq!(t.endo.image_of("a1").unwrap(), &parse_word(&a, "a1").unwrap());
        assert_eq!(
            t.endo.image_of("b2").unwrap(),
            &parse_word(&a, "a1 a2 b2 a2^-1 a1^-1").unwrap()
        );
    }

    #[test]
    fn hnn_twist_multiplies_stable_letter() {
        let vs = vec![free_vertex("A", &["a", "b"])];
        let es = edge_pair(&vs, "e", "A", "A", "b a", "a").to_vec();
        let g = GoGraph::new(vs, es, Vec::<String>::new()).unwrap();
        let a = g.global_alphabet();
        let t = dehn_twist(&g, &[("e", 1)], "A", 1).unwrap();
        assert_eq!(t.endo.image_of("t_e").unwrap(), &parse_word(&a, "b a t_e").unwrap());
        let t2 = dehn_twist(&g, &[("e", 1)], "A", 2).unwrap();
        let te = a.generator_by_name("t_e").unwrap();
        assert_eq!(t.apply(&t.apply(&te).unwrap()).unwrap(), t2.apply(&te).unwrap());
    }

    #[test]
    fn triangle_twists_preserve_relators_and_power_law() {
        let g = triangle();
        let p = g.fundamental_presentation().unwrap();
        for base in ["A", "B", "C"] {
            let gam = [("alpha", 1), ("beta_bar", 2), ("gamma", -1)];
            let t1 = dehn_twist(&g, &gam, base, 1).unwrap();
            let t3 = dehn_twist(&g, &gam, base, 3).unwrap();
            assert_eq!(t1.endo.pow(3).unwrap(), t3.endo);
            for r in p.relators() {
                assert!(conjugate_in_free(&t3.apply(r).unwrap(), r), "{base}: {r}");
            }
            let v = g.vertex(base).unwrap();
            for n in v.group.alphabet().names() {
                let w = p.alphabet().generator_by_name(n).unwrap();
                assert_eq!(t3.apply(&w).unwrap(), w);
            }
        }
    }

    #[test]
    fn unknown_base() {
        assert!(matches!(
            dehn_twist(&triangle(), &[], "Z", 1),
            Err(GogError::UnknownVertex(_))
        ));
    }
}
