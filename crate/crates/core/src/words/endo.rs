use std::sync::Arc;

use super::{Alphabet, Word, WordError};

/// A homomorphism between free groups given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeEndo {
    domain: Arc<Alphabet>,
    codomain: Arc<Alphabet>,
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn new(domain: &Arc<Alphabet>, codomain: &Arc<Alphabet>, images: Vec<Word>) -> Result<Self, WordError> {
        if images.len() != domain.rank() {
            let missing = domain.name(images.len().min(domain.rank() - 1));
            return Err(WordError::UnmappedGenerator(missing.to_string()));
        }
        let images = images
            .into_iter()
            .map(|w| w.translate(codomain))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            images,
        })
    }

    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        let images = (0..alphabet.rank()).map(|i| alphabet.generator(i)).collect();
        Self {
            domain: Arc::clone(alphabet),
            codomain: Arc::clone(alphabet),
            images,
        }
    }

    /// Starts from the identity on `alphabet` and overrides the named images.
    pub fn with_overrides(alphabet: &Arc<Alphabet>, overrides: &[(&str, Word)]) -> Result<Self, WordError> {
        let mut e = Self::identity(alphabet);
        for (name, img) in overrides {
            let i = alphabet
                .index_of(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            e.images[i] = img.translate(alphabet)?;
        }
        Ok(e)
    }

    pub fn domain(&self) -> &Arc<Alphabet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Alphabet> {
        &self.codomain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Option<&Word> {
        self.domain.index_of(name).map(|i| &self.images[i])
    }

    /// Applies the map to a word. Words over a different alphabet are
    /// translated by label first.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let w = if w.alphabet().same_as(&self.domain) {
            w.clone()
        } else {
            w.translate(&self.domain).map_err(|e| match e {
                WordError::UnknownGenerator(n) => WordError::UnmappedGenerator(n),
                other => other,
            })?
        };
        let inverses: Vec<Word> = self.images.iter().map(Word::inverse).collect();
        let mut out = self.codomain.identity();
        for l in w.letters() {
            let img = if l.is_inverse() {
                &inverses[l.index()]
            } else {
                &self.images[l.index()]
            };
            out = out.concat(img);
        }
        Ok(out)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &FreeEndo) -> Result<FreeEndo, WordError> {
        let images = first
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        FreeEndo::new(&first.domain, &self.codomain, images)
    }

    pub fn pow(&self, k: u32) -> Result<FreeEndo, WordError> {
        let mut acc = FreeEndo::identity(&self.domain);
        for _ in 0..k {
            acc = self.after(&acc)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn compose_and_apply() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let f = FreeEndo::with_overrides(&a, &[("y", parse_word(&a, "y x").unwrap())]).unwrap();
        let g = f.pow(3).unwrap();
        assert_eq!(g.image_of("y").unwrap(), &parse_word(&a, "y x^3").unwrap());
        let w = parse_word(&a, "x y^-1").unwrap();
        assert_eq!(f.apply(&w).unwrap(), parse_word(&a, "y^-1").unwrap());
        let other = Alphabet::new(["z"]).unwrap();
        assert!(matches!(
            f.apply(&other.generator(0)),
            Err(WordError::UnmappedGenerator(_))
        ));
    }
}
