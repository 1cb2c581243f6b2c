//! The Demuskin-type one-relator groups and their distinguished splittings.

mod neukirch;
mod refinement;
mod splits;
mod whitehead;

pub use neukirch::{neukirch_endo, neukirch_example, neukirch_matches_twist, GeneratorMatch};
pub use refinement::{amalg_refinement, compare_with_splitting};
pub use splits::{
    descriptor_splitting, split_amalg, split_hnn, split_hnn_def, theorem_beta, validate_splitting, SplittingReport,
};
pub use whitehead::{
    nielsen_separation, relator_stabilizer, sample_stabilizer_automorphisms, whitehead_minimal, whitehead_minimize,
    MoveJson, NielsenEntry, NielsenPair, NielsenReport, PairVerdict, WhiteheadMove, WhiteheadReport,
};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::normal_forms::NormalFormError;
use crate::words::{is_prime, Alphabet, Word, WordError};

/// Largest `p^r` or `p^{r'}` materialized as a word exponent.
pub const MAX_EXPONENT: u64 = 1 << 20;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("n = {n} out of range 1..{d}")]
    NOutOfRange { n: usize, d: usize },
    #[error("exponent {0} too large to materialize")]
    ExponentTooLarge(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error(transparent)]
    Gog(#[from] crate::gog::GogError),
}

/// A finite level or `∞`; serialized as an integer or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl Level {
    pub fn finite(self) -> Option<u32> {
        match self {
            Level::Finite(v) => Some(v),
            Level::Infinite => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(v) => write!(f, "{v}"),
            Level::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Level::Infinite),
            _ => s
                .parse::<u32>()
                .map(Level::Finite)
                .map_err(|_| format!("expected a non-negative integer or `inf`, got `{s}`")),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Level::Finite(v) => s.serialize_u32(*v),
            Level::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Level::Finite(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DemuskinParams {
    pub p: u64,
    pub d: usize,
    pub r: Level,
    pub rprime: Level,
}

impl DemuskinParams {
    pub fn new(p: u64, d: usize, r: Level, rprime: Level) -> Result<Self, CatalogError> {
        let params = Self { p, d, r, rprime };
        params.check()?;
        Ok(params)
    }

    pub fn check(&self) -> Result<(), CatalogError> {
        if self.p < 3 || !is_prime(self.p) {
            return Err(CatalogError::InvalidParams(format!(
                "p = {} must be an odd prime",
                self.p
            )));
        }
        if self.d < 1 {
            return Err(CatalogError::InvalidParams("d must be at least 1".into()));
        }
        if self.r == Level::Finite(0) {
            return Err(CatalogError::InvalidParams("r must be positive".into()));
        }
        if self.rprime < self.r {
            return Err(CatalogError::InvalidParams(format!(
                "r' = {} must be at least r = {}",
                self.rprime, self.r
            )));
        }
        self.q()?;
        self.p_rprime()?;
        Ok(())
    }

    fn power(&self, e: Level, what: &str) -> Result<Option<i64>, CatalogError> {
        match e {
            Level::Infinite => Ok(None),
            Level::Finite(e) => self
                .p
                .checked_pow(e)
                .filter(|&v| v <= MAX_EXPONENT)
                .map(|v| Some(v as i64))
                .ok_or_else(|| CatalogError::ExponentTooLarge(format!("{what} = {}^{e}", self.p))),
        }
    }

    /// `q = p^r`, or `None` for `r = ∞`.
    pub fn q(&self) -> Result<Option<i64>, CatalogError> {
        self.power(self.r, "q")
    }

    /// `p^{r'}`, or `None` for `r' = ∞`.
    pub fn p_rprime(&self) -> Result<Option<i64>, CatalogError> {
        self.power(self.rprime, "p^r'")
    }

    pub fn with_rprime(&self, rprime: Level) -> Self {
        Self { rprime, ..*self }
    }

    /// `x1, y1, …, xd, yd`.
    pub fn alphabet(&self) -> Arc<Alphabet> {
        Alphabet::new((1..=self.d).flat_map(|i| [format!("x{i}"), format!("y{i}")])).expect("d ≥ 1")
    }

    /// `w_{r'} = x1^q [x1,y1] … [xd,yd] y_d^{-p^{r'}}`.
    pub fn relator(&self) -> Result<Word, CatalogError> {
        self.check()?;
        let a = self.alphabet();
        let mut w = a.identity();
        if let Some(q) = self.q()? {
            w = w.concat(&a.generator(0).pow(q));
        }
        w = w.concat(&commutator_product(&a, 1, self.d));
        if let Some(e) = self.p_rprime()? {
            w = w.concat(&a.generator(2 * self.d - 1).pow(-e));
        }
        Ok(w)
    }
}

impl fmt::Display for DemuskinParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} d={} r={} r'={}", self.p, self.d, self.r, self.rprime)
    }
}

/// `[x_from, y_from] … [x_to, y_to]` over an alphabet containing those labels.
pub(crate) fn commutator_product(a: &Arc<Alphabet>, from: usize, to: usize) -> Word {
    let mut w = a.identity();
    for i in from..=to {
        let x = a.generator_by_name(&format!("x{i}")).expect("x_i present");
        let y = a.generator_by_name(&format!("y{i}")).expect("y_i present");
        w = w.concat(&x.commutator(&y));
    }
    w
}

/// The presentation `⟨x1, …, yd | w_{r'}⟩`.
pub fn demuskin_presentation(params: &DemuskinParams) -> Result<crate::gog::Presentation, CatalogError> {
    let w = params.relator()?;
    Ok(crate::gog::Presentation::new(&params.alphabet(), vec![w])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    /// `F_{2n} *_ℤ F_{2d−2n}`.
    Amalg(usize),
    /// Stable letter `y_d`, base containing `x_d`; needs `r' = ∞`.
    Hnn,
    /// Stable letter `x_d`, base containing `y_d`; any `r'`.
    #[serde(rename = "hnn-def")]
    HnnDef,
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitKind::Amalg(n) => write!(f, "amalg({n})"),
            SplitKind::Hnn => write!(f, "hnn"),
            SplitKind::HnnDef => write!(f, "hnn-def"),
        }
    }
}

/// `{"p":3,"d":2,"r":1,"rprime":2,"kind":{"amalg":1}}`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitDescriptor {
    #[serde(flatten)]
    pub params: DemuskinParams,
    pub kind: SplitKind,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn params(d: usize, r: Level, rp: Level) -> DemuskinParams {
        DemuskinParams::new(3, d, r, rp).unwrap()
    }

    #[test]
    fn relator_examples() {
        let p = params(2, Level::Finite(1), Level::Infinite);
        let a = p.alphabet();
        let expected = parse_word(&a, "x1^3 x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1").unwrap();
        assert_eq!(p.relator().unwrap(), expected);

        let surf = params(2, Level::Infinite, Level::Infinite);
        assert_eq!(
            surf.relator().unwrap(),
            parse_word(&a, "x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1").unwrap()
        );
        let p2 = params(2, Level::Finite(1), Level::Finite(2));
        assert_eq!(p2.relator().unwrap().len(), 20);
    }

    #[test]
    fn params_validation() {
        assert!(DemuskinParams::new(2, 2, Level::Finite(1), Level::Finite(1)).is_err());
        assert!(DemuskinParams::new(9, 2, Level::Finite(1), Level::Finite(1)).is_err());
        assert!(DemuskinParams::new(3, 2, Level::Finite(2), Level::Finite(1)).is_err());
        assert!(DemuskinParams::new(3, 2, Level::Finite(1), Level::Finite(40)).is_err());
    }

    #[test]
    fn descriptor_json() {
        let text = r#"{"p":3,"d":2,"r":1,"rprime":2,"kind":{"amalg":1}}"#;
        let d: SplitDescriptor = serde_json::from_str(text).unwrap();
        assert_eq!(d.kind, SplitKind::Amalg(1));
        assert_eq!(d.params.rprime, Level::Finite(2));
        assert_eq!(serde_json::to_string(&d).unwrap(), text);
        let h: SplitDescriptor = serde_json::from_str(r#"{"p":3,"d":2,"r":1,"rprime":"inf","kind":"hnn"}"#).unwrap();
        assert_eq!(h.kind, SplitKind::Hnn);
        assert_eq!(h.params.rprime, Level::Infinite);
    }
}
