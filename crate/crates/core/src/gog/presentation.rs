use std::sync::Arc;

use crate::words::{Alphabet, FreeEndo, Word, WordError};

/// A finite presentation `⟨alphabet | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    relators: Vec<Word>,
}

/// One Tietze elimination: `generator` was solved as `value` over the
/// remaining generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub generator: String,
    pub value: Word,
}

impl Presentation {
    /// Relators are translated into `alphabet` by label; trivial relators
    /// are dropped.
    pub fn new(alphabet: &Arc<Alphabet>, relators: Vec<Word>) -> Result<Self, WordError> {
        let relators = relators
            .into_iter()
            .map(|r| r.translate(alphabet))
            .filter(|r| !matches!(r, Ok(w) if w.is_identity()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            alphabet: Arc::clone(alphabet),
            relators,
        })
    }

    pub fn free(alphabet: &Arc<Alphabet>) -> Self {
        Self {
            alphabet: Arc::clone(alphabet),
            relators: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Finds the first generator (alphabet order) occurring exactly once
    /// in some relator and eliminates it. Returns the new presentation,
    /// the elimination, and the rewriting map from the old alphabet.
    pub fn eliminate_once(&self) -> Option<(Presentation, Elimination, FreeEndo)> {
        if self.alphabet.rank() < 2 {
            return None;
        }
        for g in 0..self.alphabet.rank() {
            for (ri, r) in self.relators.iter().enumerate() {
                let hits: Vec<usize> = r
                    .letters()
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| l.index() == g)
                    .map(|(i, _)| i)
                    .collect();
                if hits.len() != 1 {
                    continue;
                }
                return Some(self.eliminate_at(g, ri, hits[0]));
            }
        }
        None
    }

    fn eliminate_at(&self, g: usize, ri: usize, pos: usize) -> (Presentation, Elimination, FreeEndo) {
        let r = &self.relators[ri];
        let letters = r.letters();
        let prefix = Word::reduce(&self.alphabet, &letters[..pos]).expect("valid letters");
        let suffix = Word::reduce(&self.alphabet, &letters[pos + 1..]).expect("valid letters");
        // P g S = 1 gives g = P⁻¹ S⁻¹; P g⁻¹ S = 1 gives g = S P.
        let value_old = if letters[pos].is_inverse() {
            suffix.concat(&prefix)
        } else {
            prefix.inverse().concat(&suffix.inverse())
        };
        let name = self.alphabet.name(g).to_string();
        let rest: Vec<String> = self.alphabet.names().iter().filter(|n| **n != name).cloned().collect();
        let reduced_alpha = Alphabet::new(rest).expect("rank ≥ 1 and labels unique");
        let value = value_old
            .translate(&reduced_alpha)
            .expect("eliminated generator does not occur in its value");
        let images = (0..self.alphabet.rank())
            .map(|i| {
                if i == g {
                    value.clone()
                } else {
                    reduced_alpha
                        .generator_by_name(self.alphabet.name(i))
                        .expect("label kept")
                }
            })
            .collect();
        let map = FreeEndo::new(&self.alphabet, &reduced_alpha, images).expect("rank matches");
        let relators = self
            .relators
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != ri)
            .map(|(_, w)| map.apply(w).expect("domain alphabet"))
            .filter(|w| !w.is_identity())
            .collect();
        (
            Presentation {
                alphabet: reduced_alpha,
                relators,
            },
            Elimination { generator: name, value },
            map,
        )
    }

    /// Repeats [`Self::eliminate_once`] until no generator can be removed.
    /// The returned map rewrites words of the original alphabet.
    pub fn simplify(&self) -> (Presentation, Vec<Elimination>, FreeEndo) {
        let mut cur = self.clone();
        let mut map = FreeEndo::identity(&self.alphabet);
        let mut log = Vec::new();
        while let Some((next, elim, step)) = cur.eliminate_once() {
            map = step.after(&map).expect("composable");
            log.push(elim);
            cur = next;
        }
        (cur, log, map)
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "< {} | {} >", self.alphabet, rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn eliminates_generator_occurring_once() {
        let a = Alphabet::new(["z", "x", "y"]).unwrap();
        let r = parse_word(&a, "z x y x^-1 y^-1").unwrap();
        let p = Presentation::new(&a, vec![r]).unwrap();
        let (q, log, map) = p.simplify();
        assert!(q.is_free());
        assert_eq!(q.alphabet().names(), &["x", "y"]);
        assert_eq!(log[0].generator, "z");
        assert_eq!(log[0].value.to_string(), "y x y^-1 x^-1");
        let z = a.generator(0);
        assert_eq!(map.apply(&z).unwrap(), log[0].value);
    }

    #[test]
    fn inverse_occurrence() {
        let a = Alphabet::new(["t", "u", "v"]).unwrap();
        let r = parse_word(&a, "u t^-1 v").unwrap();
        let p = Presentation::new(&a, vec![r.clone()]).unwrap();
        let (_, elim, map) = p.eliminate_once().unwrap();
        assert_eq!(elim.value.to_string(), "v u");
        // substituting back kills the relator
        assert!(map.apply(&r).unwrap().is_identity());
    }
}
