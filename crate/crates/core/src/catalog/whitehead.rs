use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CatalogError, DemuskinParams, Level};
use crate::words::{abelianize_mod_l, conjugate_in_free, is_prime, Alphabet, FreeEndo, Letter, Word};

/// A type-II Whitehead automorphism `(S, a)`: `a ∈ S`, `a⁻¹ ∉ S`, and for
/// every other basis letter `x`, `x ↦ a^{-[x⁻¹ ∈ S]} · x · a^{[x ∈ S]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhiteheadMove {
    pub multiplier: Letter,
    /// Letters of `S` other than the multiplier.
    pub set: Vec<Letter>,
}

fn letter_text(a: &Alphabet, l: Letter) -> String {
    if l.is_inverse() {
        format!("{}^-1", a.name(l.index()))
    } else {
        a.name(l.index()).to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveJson {
    pub multiplier: String,
    pub set: Vec<String>,
}

impl WhiteheadMove {
    /// All `2m · 2^{2m−2}` moves at rank `m`, in a fixed order.
    pub fn all(rank: usize) -> Vec<WhiteheadMove> {
        let letters: Vec<Letter> = (0..rank)
            .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
            .collect();
        let mut out = Vec::new();
        for &a in &letters {
            let others: Vec<Letter> = letters.iter().copied().filter(|l| l.index() != a.index()).collect();
            for mask in 0u64..(1u64 << others.len()) {
                let set = others
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect();
                out.push(WhiteheadMove { multiplier: a, set });
            }
        }
        out
    }

    /// `(S − a + a⁻¹, a⁻¹)`.
    pub fn inverse(&self) -> WhiteheadMove {
        WhiteheadMove {
            multiplier: self.multiplier.inverse(),
            set: self.set.clone(),
        }
    }

    /// Acts trivially on every generator.
    pub fn is_trivial(&self) -> bool {
        self.set.is_empty()
    }

    /// Conjugation by the multiplier.
    pub fn is_inner(&self, rank: usize) -> bool {
        self.set.len() == 2 * rank - 2
    }

    pub fn endo(&self, a: &Arc<Alphabet>) -> FreeEndo {
        let m = Word::reduce(a, &[self.multiplier]).expect("letter in range");
        let images = (0..a.rank())
            .map(|i| {
                let x = a.generator(i);
                if i == self.multiplier.index() {
                    return x;
                }
                let right = self.set.contains(&Letter::new(i, false));
                let left = self.set.contains(&Letter::new(i, true));
                let mut w = x;
                if right {
                    w = w.concat(&m);
                }
                if left {
                    w = m.inverse().concat(&w);
                }
                w
            })
            .collect();
        FreeEndo::new(a, a, images).expect("rank matches")
    }

    pub fn to_json(&self, a: &Alphabet) -> MoveJson {
        MoveJson {
            multiplier: letter_text(a, self.multiplier),
            set: self.set.iter().map(|&l| letter_text(a, l)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhiteheadReport {
    /// Cyclic core of the input.
    pub word: String,
    pub length: usize,
    pub minimal: bool,
    pub reducing_move: Option<MoveJson>,
    pub reduced_length: Option<usize>,
    pub moves_checked: usize,
}

/// Exhaustive search for a type-II move shortening the cyclic word.
/// Permutations and inversions of the basis never change cyclic length
/// and are omitted.
pub fn whitehead_minimal(w: &Word) -> WhiteheadReport {
    let (core, _) = w.cyclic_reduce();
    let moves = WhiteheadMove::all(w.alphabet().rank());
    let n = core.len();
    let mut checked = 0;
    for mv in &moves {
        checked += 1;
        if mv.is_trivial() {
            continue;
        }
        let img = mv.endo(w.alphabet()).apply(&core).expect("same alphabet");
        let len = img.cyclic_len();
        if len < n {
            return WhiteheadReport {
                word: core.to_string(),
                length: n,
                minimal: false,
                reducing_move: Some(mv.to_json(w.alphabet())),
                reduced_length: Some(len),
                moves_checked: checked,
            };
        }
    }
    WhiteheadReport {
        word: core.to_string(),
        length: n,
        minimal: true,
        reducing_move: None,
        reduced_length: None,
        moves_checked: checked,
    }
}

/// Applies shortening moves until none is left.
pub fn whitehead_minimize(w: &Word) -> (Word, Vec<WhiteheadMove>) {
    let moves = WhiteheadMove::all(w.alphabet().rank());
    let mut cur = w.cyclic_reduce().0;
    let mut used = Vec::new();
    'outer: loop {
        for mv in moves.iter().filter(|m| !m.is_trivial()) {
            let img = mv
                .endo(w.alphabet())
                .apply(&cur)
                .expect("same alphabet")
                .cyclic_reduce()
                .0;
            if img.len() < cur.len() {
                cur = img;
                used.push(mv.clone());
                continue 'outer;
            }
        }
        return (cur, used);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NielsenEntry {
    pub rprime: Level,
    pub minimal_length: usize,
    pub input_was_minimal: bool,
    /// `(l, primitive mod l)` for every requested prime.
    pub primitive: Vec<(u64, bool)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairVerdict {
    /// Minimal cyclic lengths differ, so the relators are not Nielsen equivalent.
    Distinct,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NielsenPair {
    pub a: Level,
    pub b: Level,
    pub verdict: PairVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NielsenReport {
    pub entries: Vec<NielsenEntry>,
    pub pairs: Vec<NielsenPair>,
}

/// Compares `w_{r'}` across the given levels by Whitehead-minimal length,
/// and reports mod-`l` primitivity for each prime `l ≠ p`.
pub fn nielsen_separation(
    params: &DemuskinParams,
    rprimes: &[Level],
    primes: &[u64],
) -> Result<NielsenReport, CatalogError> {
    if rprimes.is_empty() {
        return Err(CatalogError::InvalidParams("empty list of r' values".into()));
    }
    for &l in primes {
        if !is_prime(l) || l == params.p {
            return Err(CatalogError::InvalidParams(format!(
                "l = {l} must be a prime different from p"
            )));
        }
    }
    let mut entries = Vec::new();
    for &rp in rprimes {
        let w = params.with_rprime(rp).relator()?;
        let (min, used) = whitehead_minimize(&w);
        let primitive = primes
            .iter()
            .map(|&l| Ok((l, abelianize_mod_l(&w, l)?.primitive)))
            .collect::<Result<Vec<_>, CatalogError>>()?;
        entries.push(NielsenEntry {
            rprime: rp,
            minimal_length: min.len(),
            input_was_minimal: used.is_empty(),
            primitive,
        });
    }
    let mut pairs = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let verdict = if entries[i].minimal_length != entries[j].minimal_length {
                PairVerdict::Distinct
            } else {
                PairVerdict::Inconclusive
            };
            pairs.push(NielsenPair {
                a: entries[i].rprime,
                b: entries[j].rprime,
                verdict,
            });
        }
    }
    Ok(NielsenReport { entries, pairs })
}

/// Non-trivial, non-inner moves sending `w` to a free conjugate of `w^{±1}`.
pub fn relator_stabilizer(w: &Word) -> Vec<WhiteheadMove> {
    let a = w.alphabet();
    let winv = w.inverse();
    WhiteheadMove::all(a.rank())
        .into_iter()
        .filter(|m| !m.is_trivial() && !m.is_inner(a.rank()))
        .filter(|m| {
            let img = m.endo(a).apply(w).expect("same alphabet");
            conjugate_in_free(&img, w) || conjugate_in_free(&img, &winv)
        })
        .collect()
}

/// A product of stabilizer moves together with its inverse.
#[derive(Debug, Clone)]
pub struct StabilizerSample {
    pub moves: Vec<WhiteheadMove>,
    pub forward: FreeEndo,
    pub inverse: FreeEndo,
}

/// `count` seeded products of one to three moves from [`relator_stabilizer`].
pub fn sample_stabilizer_automorphisms(w: &Word, count: usize, seed: u64) -> Vec<StabilizerSample> {
    let pool = relator_stabilizer(w);
    if pool.is_empty() {
        return Vec::new();
    }
    let a = w.alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            let moves: Vec<WhiteheadMove> = (0..len).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
            let mut forward = FreeEndo::identity(a);
            let mut inverse = FreeEndo::identity(a);
            for m in &moves {
                forward = m.endo(a).after(&forward).expect("same alphabet");
                inverse = inverse.after(&m.inverse().endo(a)).expect("same alphabet");
            }
            StabilizerSample {
                moves,
                forward,
                inverse,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn move_count_and_inverse() {
        let a = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        let all = WhiteheadMove::all(4);
        assert_eq!(all.len(), 512);
        for m in all.iter().step_by(7) {
            let comp = m.inverse().endo(&a).after(&m.endo(&a)).unwrap();
            assert_eq!(comp, FreeEndo::identity(&a));
        }
    }

    #[test]
    fn small_examples() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let r = whitehead_minimal(&parse_word(&a, "x").unwrap());
        assert!(r.minimal);
        assert_eq!(r.length, 1);
        let r = whitehead_minimal(&parse_word(&a, "x y x^-1").unwrap());
        assert!(r.minimal);
        assert_eq!(r.word, "y");
        let r = whitehead_minimal(&parse_word(&a, "x y x y").unwrap());
        assert!(!r.minimal);
        assert_eq!(r.reduced_length, Some(2));
    }

    #[test]
    fn demuskin_lengths() {
        let base = DemuskinParams::new(3, 2, Level::Finite(1), Level::Finite(1)).unwrap();
        let rps = [Level::Finite(1), Level::Finite(2), Level::Finite(3)];
        let rep = nielsen_separation(&base, &rps, &[2, 5]).unwrap();
        let lens: Vec<usize> = rep.entries.iter().map(|e| e.minimal_length).collect();
        assert_eq!(lens, vec![14, 20, 38]);
        assert!(rep.entries.iter().all(|e| e.input_was_minimal));
        assert!(rep.pairs.iter().all(|p| p.verdict == PairVerdict::Distinct));
        let rep = nielsen_separation(&base, &[Level::Finite(2), Level::Finite(2)], &[]).unwrap();
        assert_eq!(rep.pairs[0].verdict, PairVerdict::Inconclusive);
        assert!(nielsen_separation(&base, &[], &[]).is_err());
        assert!(nielsen_separation(&base, &rps, &[3]).is_err());
    }

    #[test]
    fn stabilizer_is_nonempty_and_preserves_relator() {
        let params = DemuskinParams::new(3, 2, Level::Finite(1), Level::Finite(1)).unwrap();
        let w = params.relator().unwrap();
        let samples = sample_stabilizer_automorphisms(&w, 5, 7);
        assert_eq!(samples.len(), 5);
        for s in samples {
            let img = s.forward.apply(&w).unwrap();
            assert!(conjugate_in_free(&img, &w) || conjugate_in_free(&img, &w.inverse()));
            assert_eq!(s.inverse.after(&s.forward).unwrap(), FreeEndo::identity(w.alphabet()));
        }
    }
}
