use std::sync::Arc;

use super::{Alphabet, Word, WordError};

/// Parses `x1^3 y1^-1 x1` style text; `1` or the empty string is the
/// identity. Tokens may also be separated by `*`.
pub fn parse_word(alphabet: &Arc<Alphabet>, text: &str) -> Result<Word, WordError> {
    let mut powers = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == '*') {
        if tok.is_empty() || tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse()
                    .map_err(|_| WordError::MalformedToken(tok.to_string()))?;
                (n, e)
            }
            None => (tok, 1),
        };
        let g = alphabet
            .index_of(name)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
        powers.push((g, exp));
    }
    Word::from_powers(alphabet, &powers)
}

/// Parses the JSON pair form `[["x1", 3], ["y1", -1]]`.
pub fn parse_pairs(alphabet: &Arc<Alphabet>, pairs: &[(String, i64)]) -> Result<Word, WordError> {
    let named: Vec<(&str, i64)> = pairs.iter().map(|(n, e)| (n.as_str(), *e)).collect();
    Word::from_named(alphabet, &named)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_text_and_pairs() {
        let a = Alphabet::new(["x1", "y1", "x2", "y2"]).unwrap();
        let w = parse_word(&a, "x1^3 x1 y1 x1^-1 y1^-1 * y2^-9").unwrap();
        assert_eq!(parse_word(&a, &w.to_string()).unwrap(), w);
        assert_eq!(parse_pairs(&a, &w.to_pairs()).unwrap(), w);
        assert!(parse_word(&a, "1").unwrap().is_identity());
        assert!(parse_word(&a, "").unwrap().is_identity());
    }

    #[test]
    fn rejects_bad_tokens() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        assert!(matches!(parse_word(&a, "z"), Err(WordError::UnknownGenerator(_))));
        assert!(matches!(parse_word(&a, "x^a"), Err(WordError::MalformedToken(_))));
        assert!(Alphabet::new(["x", "x"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }
}
