use std::sync::Arc;

use proptest::prelude::*;

use demuskin::catalog::{
    amalg_refinement, descriptor_splitting, whitehead_minimal, whitehead_minimize, DemuskinParams, Level,
    SplitDescriptor, SplitKind, WhiteheadMove,
};
use demuskin::gog::GraphJson;
use demuskin::normal_forms::{Splitting, SplittingJson};
use demuskin::pquot::{heisenberg_case_hom, Group, TargetDesc};
use demuskin::words::{abelianize_mod_l, conjugate_in_free, Alphabet, FreeEndo, Letter, Word};

fn alphabet(rank: usize) -> Arc<Alphabet> {
    Alphabet::new((0..rank).map(|i| format!("g{i}"))).unwrap()
}

fn word_over(a: Arc<Alphabet>, max_len: usize) -> impl Strategy<Value = Word> {
    let rank = a.rank();
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len).prop_map(move |raw| {
        let letters: Vec<Letter> = raw.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect();
        Word::reduce(&a, &letters).unwrap()
    })
}

fn d2_params(rp: Level) -> DemuskinParams {
    DemuskinParams::new(3, 2, Level::Finite(1), rp).unwrap()
}

/// HNN-def and amalgam at level `rp`, plus the HNN form over `𝒢_∞`.
fn catalog(rp: u32) -> Vec<(DemuskinParams, Splitting)> {
    let pr = d2_params(Level::Finite(rp));
    [
        (pr, SplitKind::HnnDef),
        (pr, SplitKind::Amalg(1)),
        (d2_params(Level::Infinite), SplitKind::Hnn),
    ]
    .into_iter()
    .map(|(params, kind)| (params, descriptor_splitting(&SplitDescriptor { params, kind }).unwrap()))
    .collect()
}

fn ambient_word(max_len: usize) -> impl Strategy<Value = Word> {
    word_over(d2_params(Level::Infinite).alphabet(), max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_cancels(w in word_over(alphabet(3), 30)) {
        prop_assert!(w.concat(&w.inverse()).is_identity());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn cyclic_reduction_conjugates(w in word_over(alphabet(3), 30)) {
        let (core, conj) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(conj.concat(&core).concat(&conj.inverse()), w.clone());
        prop_assert!(conjugate_in_free(&w, &core));
    }

    #[test]
    fn conjugates_are_detected(w in word_over(alphabet(3), 20), g in word_over(alphabet(3), 10), k in 0usize..20) {
        let c = w.conjugated_by(&g);
        prop_assert!(conjugate_in_free(&w, &c));
        let (core, _) = w.cyclic_reduce();
        prop_assert!(conjugate_in_free(&core, &core.rotate(k % core.len().max(1))));
    }

    #[test]
    fn primitive_root_recovers_word(w in word_over(alphabet(2), 8), e in 1i64..5) {
        let p = w.pow(e);
        let (root, k) = p.primitive_root();
        prop_assert_eq!(root.pow(k), p.clone());
        if !w.is_identity() {
            prop_assert_eq!(k % e, 0);
        }
    }

    #[test]
    fn abelianization_is_additive(u in word_over(alphabet(4), 20), v in word_over(alphabet(4), 20)) {
        let (a, b, c) = (
            abelianize_mod_l(&u, 0).unwrap(),
            abelianize_mod_l(&v, 0).unwrap(),
            abelianize_mod_l(&u.concat(&v), 0).unwrap(),
        );
        let sum: Vec<i64> = a.sums.iter().zip(&b.sums).map(|(x, y)| x + y).collect();
        prop_assert_eq!(c.sums, sum);
    }

    #[test]
    fn whitehead_moves_invert(i in 0usize..512, w in word_over(alphabet(4), 16)) {
        let a = alphabet(4);
        let m = &WhiteheadMove::all(4)[i];
        let round = m.inverse().endo(&a).after(&m.endo(&a)).unwrap();
        prop_assert_eq!(round.apply(&w).unwrap(), w);
    }

    #[test]
    fn whitehead_minimize_reaches_a_minimum(w in word_over(alphabet(3), 14)) {
        let (min, moves) = whitehead_minimize(&w);
        prop_assert!(min.cyclic_len() <= w.cyclic_len());
        prop_assert!(whitehead_minimal(&min).minimal);
        let a = w.alphabet();
        let replay = moves.iter().try_fold(w.clone(), |acc, m| m.endo(a).apply(&acc)).unwrap();
        prop_assert_eq!(replay.cyclic_len(), min.cyclic_len());
    }

    #[test]
    fn normal_form_round_trip(w in ambient_word(24), rp in 1u32..=3) {
        for (pr, s) in catalog(rp) {
            let f = s.to_syllables(&w).unwrap();
            prop_assert_eq!(s.flatten(&f), w.clone());
            // Reduction pinches through the edge group, so the flattened
            // word only agrees with `w` modulo the relator.
            let reduced = s.flatten(&s.syllable_reduce(&f).unwrap());
            let diff = w.inverse().concat(&reduced);
            for sq in [1, 2] {
                for kind in [SplitKind::Hnn, SplitKind::HnnDef, SplitKind::Amalg(1)] {
                    if let Ok((hom, _)) = heisenberg_case_hom(&pr, sq, kind) {
                        prop_assert_eq!(hom.eval(&diff).unwrap(), hom.group().identity());
                    }
                }
            }
        }
    }

    #[test]
    fn translation_length_scales(w in ambient_word(16), k in 1i64..4, rp in 1u32..=2) {
        for (_, s) in catalog(rp) {
            let m = s.word_metrics(&w).unwrap();
            let mk = s.word_metrics(&w.pow(k)).unwrap();
            prop_assert_eq!(mk.elliptic, m.elliptic);
            prop_assert_eq!(mk.translation_length, k as u64 * m.translation_length);
            let g = d2_params(Level::Infinite).alphabet().generator(1);
            prop_assert_eq!(s.word_metrics(&w.conjugated_by(&g)).unwrap(), m);
        }
    }

    #[test]
    fn twist_powers_compose(a in -3i64..=3, b in -3i64..=3, rp in 1u32..=2) {
        for (_, s) in catalog(rp) {
            let lhs = s.ambient_twist(a).after(&s.ambient_twist(b)).unwrap();
            prop_assert_eq!(lhs, s.ambient_twist(a + b));
        }
    }

    #[test]
    fn heisenberg_laws(x in prop::collection::vec(0i64..27, 3), y in prop::collection::vec(0i64..27, 3), z in prop::collection::vec(0i64..27, 3)) {
        let g = Group::from_desc(&TargetDesc::Heisenberg { p: 3, s: 3 }, 1 << 20).unwrap();
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        prop_assert_eq!(g.mul(&g.inv(&x), &x), g.identity());
    }

    #[test]
    fn quotient_evaluation_is_multiplicative(u in ambient_word(20), v in ambient_word(20), s in 1u32..=2) {
        let pr = d2_params(Level::Infinite);
        let (hom, _) = heisenberg_case_hom(&pr, s, SplitKind::Hnn).unwrap();
        let g = hom.group();
        prop_assert_eq!(hom.eval(&u.concat(&v)).unwrap(), g.mul(&hom.eval(&u).unwrap(), &hom.eval(&v).unwrap()));
        prop_assert_eq!(hom.eval(&u.inverse()).unwrap(), g.inv(&hom.eval(&u).unwrap()));
    }
}

#[test]
fn splitting_json_round_trips() {
    for rp in 1..=3 {
        for (_, s) in catalog(rp) {
            let text = serde_json::to_string(&SplittingJson::from(&s)).unwrap();
            let back: SplittingJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.into_splitting().unwrap(), s);
        }
    }
}

#[test]
fn graph_json_round_trips() {
    let pr = DemuskinParams::new(3, 3, Level::Finite(1), Level::Finite(2)).unwrap();
    let g = amalg_refinement(&pr, 1, 2).unwrap();
    let text = serde_json::to_string(&GraphJson::from(&g)).unwrap();
    let back: GraphJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.into_graph().unwrap(), g);
}

#[test]
fn twist_identity_at_zero() {
    for (_, s) in catalog(1) {
        assert_eq!(s.ambient_twist(0), FreeEndo::identity(s.ambient()));
    }
}
