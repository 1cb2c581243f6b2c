use serde::Serialize;

use super::{NormalFormError, Splitting};
use crate::gog::GoGraph;
use crate::words::Word;

/// Which splitting's Bass-Serre tree the witness acts hyperbolically on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// The edge word of the second splitting, measured in the first.
    SecondInFirst,
    /// The edge word of the first splitting, measured in the second.
    FirstInSecond,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IntersectionVerdict {
    Intersecting {
        witness: Word,
        direction: Direction,
        translation_length: u64,
    },
    CompatibleWitness(GoGraph),
    Inconclusive,
}

/// Sound-but-incomplete intersection test. A hyperbolic edge word proves
/// the splittings intersect; a refinement proves they do not.
pub fn splittings_intersect(
    s1: &Splitting,
    s2: &Splitting,
    refinement: Option<&GoGraph>,
) -> Result<IntersectionVerdict, NormalFormError> {
    if !s1.ambient().same_as(s2.ambient()) {
        return Err(NormalFormError::DictionaryMismatch(format!(
            "[{}] vs [{}]",
            s1.ambient(),
            s2.ambient()
        )));
    }
    let checks = [
        (s1, s2.edge_word(), Direction::SecondInFirst),
        (s2, s1.edge_word(), Direction::FirstInSecond),
    ];
    for (tree, word, direction) in checks {
        let m = tree.word_metrics(&word)?;
        if !m.elliptic {
            return Ok(IntersectionVerdict::Intersecting {
                witness: word,
                direction,
                translation_length: m.translation_length,
            });
        }
    }
    if let Some(g) = refinement {
        let diags = g.validate();
        if !diags.is_empty() {
            return Err(NormalFormError::Gog(crate::gog::GogError::Invalid(diags)));
        }
        return Ok(IntersectionVerdict::CompatibleWitness(g.clone()));
    }
    if s1 == s2 {
        return Ok(IntersectionVerdict::CompatibleWitness(s1.to_graph()));
    }
    Ok(IntersectionVerdict::Inconclusive)
}
