use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{NormalFormError, Splitting, SplittingKind};
use crate::words::{Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// An element in Bass-Serre coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyllableForm {
    /// Syllables over the vertex alphabets, sides not necessarily
    /// alternating until reduced.
    Amalgam(Vec<(Side, Word)>),
    /// `a₀ t^{ε₁} a₁ … t^{εₙ} aₙ`; `vertex.len() == stable.len() + 1`.
    Hnn { vertex: Vec<Word>, stable: Vec<i32> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeMetrics {
    pub elliptic: bool,
    pub translation_length: u64,
}

impl SyllableForm {
    /// Number of syllables (amalgam) or stable letters (HNN).
    pub fn length(&self) -> usize {
        match self {
            SyllableForm::Amalgam(s) => s.len(),
            SyllableForm::Hnn { stable, .. } => stable.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            SyllableForm::Amalgam(s) => s.iter().all(|(_, w)| w.is_identity()),
            SyllableForm::Hnn { vertex, stable } => stable.is_empty() && vertex.iter().all(Word::is_identity),
        }
    }
}

impl fmt::Display for SyllableForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyllableForm::Amalgam(s) if s.is_empty() => write!(f, "1"),
            SyllableForm::Amalgam(s) => {
                let parts: Vec<String> = s.iter().map(|(side, w)| format!("{side:?}({w})")).collect();
                write!(f, "{}", parts.join(" · "))
            }
            SyllableForm::Hnn { vertex, stable } => {
                write!(f, "({})", vertex[0])?;
                for (e, a) in stable.iter().zip(&vertex[1..]) {
                    write!(f, " t^{e} ({a})")?;
                }
                Ok(())
            }
        }
    }
}

impl Splitting {
    /// Rewrites an ambient word into coordinates by the dictionary, then
    /// cuts it into syllables. No reduction beyond free reduction.
    pub fn to_syllables(&self, w: &Word) -> Result<SyllableForm, NormalFormError> {
        if !w.alphabet().same_as(self.ambient()) {
            return Err(NormalFormError::DictionaryMismatch(w.alphabet().to_string()));
        }
        let c = self.to_coords().apply(w)?;
        Ok(self.coords_to_syllables(&c))
    }

    pub(crate) fn coords_to_syllables(&self, c: &Word) -> SyllableForm {
        let (a, b) = self.vertex_alphabets();
        let coords = self.coords();
        match self.kind() {
            SplittingKind::Amalgam { .. } => {
                let b = b.expect("amalgam has two vertices");
                let mut out: Vec<(Side, Vec<Letter>)> = Vec::new();
                for l in c.letters() {
                    let name = coords.name(l.index());
                    let side = if a.contains(name) { Side::A } else { Side::B };
                    match out.last_mut() {
                        Some((s, v)) if *s == side => v.push(*l),
                        _ => out.push((side, vec![*l])),
                    }
                }
                SyllableForm::Amalgam(
                    out.into_iter()
                        .map(|(side, v)| {
                            let target = if side == Side::A { &a } else { &b };
                            (side, sub_word(coords, target, &v))
                        })
                        .collect(),
                )
            }
            SplittingKind::Hnn { stable: t, .. } => {
                let ti = coords.index_of(t).expect("stable letter");
                let mut vertex = vec![Vec::new()];
                let mut stable = Vec::new();
                for l in c.letters() {
                    if l.index() == ti {
                        stable.push(if l.is_inverse() { -1 } else { 1 });
                        vertex.push(Vec::new());
                    } else {
                        vertex.last_mut().unwrap().push(*l);
                    }
                }
                SyllableForm::Hnn {
                    vertex: vertex.iter().map(|v| sub_word(coords, &a, v)).collect(),
                    stable,
                }
            }
        }
    }

    /// Multiplies the form back out over the coordinate alphabet.
    pub fn flatten_coords(&self, f: &SyllableForm) -> Word {
        let coords = self.coords();
        let tr = |w: &Word| w.translate(coords).expect("vertex labels are coordinates");
        let mut out = coords.identity();
        match f {
            SyllableForm::Amalgam(s) => {
                for (_, w) in s {
                    out = out.concat(&tr(w));
                }
            }
            SyllableForm::Hnn { vertex, stable } => {
                let SplittingKind::Hnn { stable: t, .. } = self.kind() else {
                    unreachable!("form kind matches splitting")
                };
                let t = coords.generator_by_name(t).expect("stable letter");
                out = tr(&vertex[0]);
                for (e, a) in stable.iter().zip(&vertex[1..]) {
                    out = out.concat(&t.pow(*e as i64)).concat(&tr(a));
                }
            }
        }
        out
    }

    /// Multiplies the form back out as an ambient word.
    pub fn flatten(&self, f: &SyllableForm) -> Word {
        self.to_ambient()
            .apply(&self.flatten_coords(f))
            .expect("dictionary covers coordinates")
    }

    /// Amalgam normal form or Britton reduction.
    pub fn syllable_reduce(&self, f: &SyllableForm) -> Result<SyllableForm, NormalFormError> {
        match (self.kind(), f) {
            (SplittingKind::Amalgam { u_a, u_b, .. }, SyllableForm::Amalgam(s)) => {
                Ok(SyllableForm::Amalgam(reduce_amalgam(s.clone(), u_a, u_b)))
            }
            (SplittingKind::Hnn { u, v, .. }, SyllableForm::Hnn { vertex, stable }) => {
                let (vertex, stable) = britton(vertex, stable, u, v);
                Ok(SyllableForm::Hnn { vertex, stable })
            }
            _ => Err(NormalFormError::FormKindMismatch),
        }
    }

    /// Ellipticity and translation length in the Bass-Serre tree.
    pub fn tree_metrics(&self, f: &SyllableForm) -> Result<TreeMetrics, NormalFormError> {
        let mut cur = self.syllable_reduce(f)?;
        let cap = f.length() + 2;
        for _ in 0..cap {
            match self.cyclic_step(&cur) {
                Some(next) => cur = self.syllable_reduce(&next)?,
                None => break,
            }
        }
        let elliptic = match &cur {
            SyllableForm::Amalgam(s) => s.len() <= 1,
            SyllableForm::Hnn { stable, .. } => stable.is_empty(),
        };
        Ok(TreeMetrics {
            elliptic,
            translation_length: if elliptic { 0 } else { cur.length() as u64 },
        })
    }

    /// Metrics of an ambient word.
    pub fn word_metrics(&self, w: &Word) -> Result<TreeMetrics, NormalFormError> {
        self.tree_metrics(&self.to_syllables(w)?)
    }

    /// One conjugation that shortens a reduced form cyclically, if any.
    fn cyclic_step(&self, f: &SyllableForm) -> Option<SyllableForm> {
        match f {
            SyllableForm::Amalgam(s) => {
                if s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
                    let (side, last) = s.last().cloned().unwrap();
                    let mut rest = s[..s.len() - 1].to_vec();
                    rest[0] = (side, last.concat(&rest[0].1));
                    Some(SyllableForm::Amalgam(rest))
                } else {
                    None
                }
            }
            SyllableForm::Hnn { vertex, stable } => {
                let n = stable.len();
                if n == 0 {
                    return None;
                }
                let wrap = vertex[n].concat(&vertex[0]);
                if stable[0] != -stable[n - 1] || !self.is_pinch(stable[n - 1], &wrap) {
                    return None;
                }
                let mut new_stable = stable[1..].to_vec();
                new_stable.push(stable[0]);
                Some(SyllableForm::Hnn {
                    // a₁ t^{ε₂} … t^{εₙ} (aₙa₀) t^{ε₁}, conjugate by a₀ t^{ε₁}
                    vertex: vertex[1..n]
                        .iter()
                        .cloned()
                        .chain([wrap, vertex[0].alphabet().identity()])
                        .collect(),
                    stable: new_stable,
                })
            }
        }
    }

    /// `t^{first} · a · t^{-first}` collapses into the base.
    fn is_pinch(&self, first: i32, a: &Word) -> bool {
        let SplittingKind::Hnn { u, v, .. } = self.kind() else {
            return false;
        };
        pinch(first, a, u, v).is_some()
    }
}

fn sub_word(from: &Arc<Alphabet>, to: &Arc<Alphabet>, letters: &[Letter]) -> Word {
    Word::reduce(from, letters)
        .and_then(|w| w.translate(to))
        .expect("vertex generators")
}

/// With `t u t⁻¹ = v`: `t u^k t⁻¹ = v^k` and `t⁻¹ v^k t = u^k`.
fn pinch(first: i32, a: &Word, u: &Word, v: &Word) -> Option<Word> {
    if first > 0 {
        a.power_of(u).map(|k| v.pow(k))
    } else {
        a.power_of(v).map(|k| u.pow(k))
    }
}

fn britton(vertex: &[Word], stable: &[i32], u: &Word, v: &Word) -> (Vec<Word>, Vec<i32>) {
    let mut out_v: Vec<Word> = vec![vertex[0].clone()];
    let mut out_s: Vec<i32> = Vec::new();
    for (&e, a) in stable.iter().zip(&vertex[1..]) {
        if let Some(&prev) = out_s.last() {
            if prev == -e {
                if let Some(rep) = pinch(prev, out_v.last().unwrap(), u, v) {
                    out_s.pop();
                    out_v.pop();
                    let top = out_v.last_mut().unwrap();
                    *top = top.concat(&rep).concat(a);
                    continue;
                }
            }
        }
        out_s.push(e);
        out_v.push(a.clone());
    }
    (out_v, out_s)
}

fn reduce_amalgam(mut s: Vec<(Side, Word)>, u_a: &Word, u_b: &Word) -> Vec<(Side, Word)> {
    loop {
        let mut merged: Vec<(Side, Word)> = Vec::with_capacity(s.len());
        for (side, w) in s.drain(..) {
            if w.is_identity() {
                continue;
            }
            match merged.last_mut() {
                Some((ls, lw)) if *ls == side => *lw = lw.concat(&w),
                _ => merged.push((side, w)),
            }
        }
        merged.retain(|(_, w)| !w.is_identity());
        if merged.len() <= 1 {
            return merged;
        }
        // push the first edge-subgroup syllable across
        let hit = merged.iter().position(|(side, w)| {
            let edge = if *side == Side::A { u_a } else { u_b };
            w.power_of(edge).is_some()
        });
        match hit {
            None => {
                if merged.windows(2).all(|p| p[0].0 != p[1].0) {
                    return merged;
                }
                s = merged;
            }
            Some(i) => {
                let (side, w) = merged[i].clone();
                let (from, to) = if side == Side::A { (u_a, u_b) } else { (u_b, u_a) };
                let k = w.power_of(from).expect("checked membership");
                merged[i] = (side.other(), to.pow(k));
                s = merged;
            }
        }
    }
}
