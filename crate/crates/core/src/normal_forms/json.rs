use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{NormalFormError, Splitting, SplittingKind};
use crate::words::{parse_pairs, Alphabet, Word};

type Pairs = Vec<(String, i64)>;

/// Wire form of a [`Splitting`], dictionary included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SplittingJson {
    Amalgam {
        ambient: Vec<String>,
        a: Vec<String>,
        b: Vec<String>,
        u_a: Pairs,
        u_b: Pairs,
        to_coords: BTreeMap<String, Pairs>,
        to_ambient: BTreeMap<String, Pairs>,
    },
    Hnn {
        ambient: Vec<String>,
        base: Vec<String>,
        u: Pairs,
        v: Pairs,
        stable: String,
        to_coords: BTreeMap<String, Pairs>,
        to_ambient: BTreeMap<String, Pairs>,
    },
}

fn dict(images: &crate::words::FreeEndo) -> BTreeMap<String, Pairs> {
    images
        .domain()
        .names()
        .iter()
        .zip(images.images())
        .map(|(n, w)| (n.clone(), w.to_pairs()))
        .collect()
}

impl From<&Splitting> for SplittingJson {
    fn from(s: &Splitting) -> Self {
        let ambient = s.ambient().names().to_vec();
        let to_coords = dict(s.to_coords());
        let to_ambient = dict(s.to_ambient());
        match s.kind() {
            SplittingKind::Amalgam { a, b, u_a, u_b } => SplittingJson::Amalgam {
                ambient,
                a: a.names().to_vec(),
                b: b.names().to_vec(),
                u_a: u_a.to_pairs(),
                u_b: u_b.to_pairs(),
                to_coords,
                to_ambient,
            },
            SplittingKind::Hnn { base, u, v, stable } => SplittingJson::Hnn {
                ambient,
                base: base.names().to_vec(),
                u: u.to_pairs(),
                v: v.to_pairs(),
                stable: stable.clone(),
                to_coords,
                to_ambient,
            },
        }
    }
}

fn text(w: &Word) -> String {
    w.to_string()
}

impl SplittingJson {
    pub fn into_splitting(self) -> Result<Splitting, NormalFormError> {
        let (kind, ambient, to_coords, to_ambient) = match self {
            SplittingJson::Amalgam {
                ambient,
                a,
                b,
                u_a,
                u_b,
                to_coords,
                to_ambient,
            } => {
                let a = Alphabet::new(a)?;
                let b = Alphabet::new(b)?;
                let kind = SplittingKind::Amalgam {
                    u_a: parse_pairs(&a, &u_a)?,
                    u_b: parse_pairs(&b, &u_b)?,
                    a,
                    b,
                };
                (kind, ambient, to_coords, to_ambient)
            }
            SplittingJson::Hnn {
                ambient,
                base,
                u,
                v,
                stable,
                to_coords,
                to_ambient,
            } => {
                let base = Alphabet::new(base)?;
                let kind = SplittingKind::Hnn {
                    u: parse_pairs(&base, &u)?,
                    v: parse_pairs(&base, &v)?,
                    base,
                    stable,
                };
                (kind, ambient, to_coords, to_ambient)
            }
        };
        let ambient = Alphabet::new(ambient)?;
        let coord_names: Vec<String> = match &kind {
            SplittingKind::Amalgam { a, b, .. } => a.names().iter().chain(b.names()).cloned().collect(),
            SplittingKind::Hnn { base, stable, .. } => base.names().iter().cloned().chain([stable.clone()]).collect(),
        };
        let coords = Alphabet::new(coord_names)?;
        let render = |m: &BTreeMap<String, Pairs>, target: &std::sync::Arc<Alphabet>| {
            m.iter()
                .map(|(k, v)| Ok((k.clone(), text(&parse_pairs(target, v)?))))
                .collect::<Result<Vec<(String, String)>, NormalFormError>>()
        };
        let tc = render(&to_coords, &coords)?;
        let ta = render(&to_ambient, &ambient)?;
        let tc_ref: Vec<(&str, &str)> = tc.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let ta_ref: Vec<(&str, &str)> = ta.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Splitting::new(kind, &ambient, &tc_ref, &ta_ref)
    }
}
