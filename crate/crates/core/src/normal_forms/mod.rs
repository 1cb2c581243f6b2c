//! One-edge splittings in Bass-Serre coordinates.

mod intersect;
mod json;
mod splitting;
mod syllable;

pub use intersect::{splittings_intersect, Direction, IntersectionVerdict};
pub use json::SplittingJson;
pub use splitting::{Splitting, SplittingKind, EDGE, EDGE_BAR, VERTEX_A, VERTEX_B};
pub use syllable::{Side, SyllableForm, TreeMetrics};

use thiserror::Error;

use crate::gog::GogError;
use crate::words::WordError;

#[derive(Debug, Error)]
pub enum NormalFormError {
    #[error("dictionary mismatch: {0}")]
    DictionaryMismatch(String),
    #[error("edge word {0} is trivial")]
    TrivialEdgeWord(String),
    #[error("syllable form kind does not match the splitting")]
    FormKindMismatch,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Gog(#[from] GogError),
}
