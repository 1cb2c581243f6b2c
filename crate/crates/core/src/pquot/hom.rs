use std::sync::Arc;

use serde::Serialize;

use super::group::{Elem, Group, TargetDesc};
use super::{max_order, PquotError};
use crate::catalog::{descriptor_splitting, DemuskinParams, Level, SplitDescriptor, SplitKind};
use crate::words::{Alphabet, Word};

/// A homomorphism from a free group (or a one-relator quotient of it)
/// to a finite target, given by generator images. Relators passed at
/// construction are checked to vanish.
#[derive(Debug, Clone)]
pub struct FiniteHom {
    desc: TargetDesc,
    group: Group,
    alphabet: Arc<Alphabet>,
    images: Vec<Elem>,
    relator_images: Vec<Elem>,
}

impl FiniteHom {
    pub fn new(
        desc: TargetDesc,
        alphabet: &Arc<Alphabet>,
        images: Vec<Elem>,
        relators: &[Word],
    ) -> Result<FiniteHom, PquotError> {
        let group = Group::from_desc(&desc, max_order())?;
        Self::with_group(desc, group, alphabet, images, relators)
    }

    pub(crate) fn with_group(
        desc: TargetDesc,
        group: Group,
        alphabet: &Arc<Alphabet>,
        images: Vec<Elem>,
        relators: &[Word],
    ) -> Result<FiniteHom, PquotError> {
        if images.len() != alphabet.rank() {
            return Err(PquotError::Precondition(format!(
                "{} images for {} generators",
                images.len(),
                alphabet.rank()
            )));
        }
        for im in &images {
            group.check_elem(im)?;
        }
        let mut hom = FiniteHom {
            desc,
            group,
            alphabet: Arc::clone(alphabet),
            images,
            relator_images: Vec::new(),
        };
        let id = hom.group.identity();
        for r in relators {
            let im = hom.eval(r)?;
            if im != id {
                return Err(PquotError::RelatorNotKilled(r.to_string()));
            }
            hom.relator_images.push(im);
        }
        Ok(hom)
    }

    pub fn desc(&self) -> &TargetDesc {
        &self.desc
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn relator_images(&self) -> &[Elem] {
        &self.relator_images
    }

    pub fn image_of(&self, name: &str) -> Option<&Elem> {
        self.alphabet.index_of(name).map(|i| &self.images[i])
    }

    /// Evaluates a word, translating by generator names if needed.
    pub fn eval(&self, w: &Word) -> Result<Elem, PquotError> {
        let w = if w.alphabet().same_as(&self.alphabet) {
            w.clone()
        } else {
            w.translate(&self.alphabet)?
        };
        let inverses: Vec<Elem> = self.images.iter().map(|g| self.group.inv(g)).collect();
        Ok(w.letters().iter().fold(self.group.identity(), |acc, l| {
            let g = if l.is_inverse() {
                &inverses[l.index()]
            } else {
                &self.images[l.index()]
            };
            self.group.mul(&acc, g)
        }))
    }

    pub fn image_subgroup(&self, bound: u128) -> Result<Vec<Elem>, PquotError> {
        self.group.subgroup(&self.images, bound)
    }

    /// Composition with the projection onto the quotient by the normal
    /// closure of the relator images.
    pub fn modulo(&self, relators: &[Word], bound: u128) -> Result<FiniteHom, PquotError> {
        let normal_generators = relators.iter().map(|r| self.eval(r)).collect::<Result<Vec<_>, _>>()?;
        let desc = TargetDesc::Quotient {
            base: Box::new(self.desc.clone()),
            normal_generators,
        };
        let group = Group::from_desc(&desc, bound)?;
        let images = self.images.iter().map(|g| group.canonical(g.clone())).collect();
        Self::with_group(desc, group, &self.alphabet, images, relators)
    }

    /// The diagonal map into the direct product.
    pub fn product(&self, other: &FiniteHom) -> Result<FiniteHom, PquotError> {
        if !self.alphabet.same_as(&other.alphabet) {
            return Err(PquotError::Precondition(
                "product of homs on different alphabets".into(),
            ));
        }
        let desc = TargetDesc::Product {
            factors: vec![self.desc.clone(), other.desc.clone()],
        };
        let group = Group::Product(vec![self.group.clone(), other.group.clone()]);
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        let mut hom = Self::with_group(desc, group, &self.alphabet, images, &[])?;
        hom.relator_images = self
            .relator_images
            .iter()
            .zip(&other.relator_images)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        Ok(hom)
    }
}

/// Which construction [`heisenberg_case_hom`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionCase {
    /// HNN edge generator sent to `1 ∈ ℤ/p^s`.
    Hnn,
    /// `r, r′ ≥ s`: Heisenberg mod `p^s`.
    Case1,
    /// `r < s ≤ r′`: Heisenberg mod `p^{r+s}`.
    Case2,
    /// `r′ < s`: cyclic of order `p^{r′+s}`.
    Case3,
}

fn at_least(level: Level, s: u32) -> bool {
    match level {
        Level::Infinite => true,
        Level::Finite(v) => v >= s,
    }
}

/// A p-group quotient of the one-relator group in which the edge word of
/// the catalog splitting `kind` has order exactly `p^s`.
pub fn heisenberg_case_hom(
    params: &DemuskinParams,
    s: u32,
    kind: SplitKind,
) -> Result<(FiniteHom, TorsionCase), PquotError> {
    params.check()?;
    if s == 0 {
        return Err(PquotError::CaseMismatch("s must be at least 1".into()));
    }
    let p = params.p;
    let pp = |e: u32| -> Result<i64, PquotError> {
        p.checked_pow(e)
            .filter(|&v| v < 1 << 40)
            .map(|v| v as i64)
            .ok_or_else(|| PquotError::Resource(format!("{p}^{e} too large")))
    };
    let alpha = params.alphabet();
    let d = params.d;
    let mut images = vec![Vec::new(); alpha.rank()];
    let mut set = |name: String, e: Elem| {
        let i = alpha.index_of(&name).expect("generator present");
        images[i] = e;
    };
    let (desc, case) = match kind {
        SplitKind::Hnn | SplitKind::HnnDef => {
            if kind == SplitKind::Hnn && d < 2 {
                return Err(PquotError::CaseMismatch("the x_d-edge HNN quotient needs d ≥ 2".into()));
            }
            for i in 1..=d {
                set(format!("x{i}"), vec![0]);
                set(format!("y{i}"), vec![0]);
            }
            if kind == SplitKind::Hnn {
                set(format!("x{d}"), vec![1]);
            } else {
                if let (Level::Finite(r), Level::Finite(rp)) = (params.r, params.rprime) {
                    set("x1".into(), vec![pp(rp - r)? % pp(s)?]);
                }
                set(format!("y{d}"), vec![1]);
            }
            (TargetDesc::Cyclic { p, m: s }, TorsionCase::Hnn)
        }
        SplitKind::Amalg(n) => {
            if n < 1 || n >= d {
                return Err(PquotError::CaseMismatch(format!("n = {n} outside 1..{d}")));
            }
            let zero3 = vec![0, 0, 0];
            if at_least(params.r, s) {
                let m = pp(s)?;
                for i in 1..=d {
                    set(format!("x{i}"), zero3.clone());
                    set(format!("y{i}"), zero3.clone());
                }
                set("x1".into(), vec![1, 0, 0]);
                set("y1".into(), vec![0, 1, 0]);
                set(format!("x{}", n + 1), vec![m - 1, 0, 0]);
                set(format!("y{}", n + 1), vec![0, 1, 0]);
                (TargetDesc::Heisenberg { p, s }, TorsionCase::Case1)
            } else if at_least(params.rprime, s) {
                let r = params.r.finite().expect("r < s is finite");
                let m = pp(r + s)?;
                for i in 1..=d {
                    set(format!("x{i}"), zero3.clone());
                    set(format!("y{i}"), zero3.clone());
                }
                set("x1".into(), vec![0, 0, 1]);
                let b = match params.rprime {
                    Level::Finite(rp) if d == n + 1 && rp < r + s => pp(r + s - rp)?,
                    _ => 1,
                };
                let a = pp(r)? / b;
                set(format!("x{}", n + 1), vec![(m - a) % m, 0, 0]);
                set(format!("y{}", n + 1), vec![0, b % m, 0]);
                (TargetDesc::Heisenberg { p, s: r + s }, TorsionCase::Case2)
            } else {
                let r = params.r.finite().expect("finite");
                let rp = params.rprime.finite().expect("r' < s is finite");
                for i in 1..=d {
                    set(format!("x{i}"), vec![0]);
                    set(format!("y{i}"), vec![0]);
                }
                set("x1".into(), vec![pp(rp - r)?]);
                set(format!("y{d}"), vec![1]);
                (TargetDesc::Cyclic { p, m: rp + s }, TorsionCase::Case3)
            }
        }
    };
    let hom = FiniteHom::new(desc, &alpha, images, &[params.relator()?])?;
    let c = descriptor_splitting(&SplitDescriptor { params: *params, kind })?.edge_word();
    let got = hom.group().elem_order(&hom.eval(&c)?);
    let expected = pp(s)? as u64;
    if got != expected {
        return Err(PquotError::OrderMismatch { expected, got });
    }
    Ok((hom, case))
}

/// The canonical surjection of the free group on `alphabet` onto the
/// free class-2 nilpotent group mod `p^s`.
pub fn class2_quotient_hom(alphabet: &Arc<Alphabet>, p: u64, s: u32) -> Result<FiniteHom, PquotError> {
    let desc = TargetDesc::Class2 {
        p,
        s,
        rank: alphabet.rank(),
    };
    let group = Group::from_desc(&desc, u128::MAX)?;
    let images = group.generators();
    FiniteHom::with_group(desc, group, alphabet, images, &[])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyVerdict {
    pub conjugate: bool,
    /// `x` with `x·φ(g)·x⁻¹ = φ(h)`.
    pub conjugator: Option<Elem>,
    /// Order of the enumerated subgroup.
    pub searched: usize,
}

pub(crate) fn conjugacy_in(
    group: &Group,
    gens: &[Elem],
    a: &[i64],
    b: &[i64],
    bound: u128,
) -> Result<ConjugacyVerdict, PquotError> {
    let sub = group.subgroup(gens, bound)?;
    let searched = sub.len();
    let conjugator = sub.into_iter().find(|x| group.conj(x, a) == b);
    Ok(ConjugacyVerdict {
        conjugate: conjugator.is_some(),
        conjugator,
        searched,
    })
}

/// Decides whether the images of `g` and `h` are conjugate by an element
/// of the image subgroup, enumerating at most [`max_order`] elements.
pub fn finite_conjugacy(hom: &FiniteHom, g: &Word, h: &Word) -> Result<ConjugacyVerdict, PquotError> {
    finite_conjugacy_bounded(hom, g, h, max_order())
}

pub fn finite_conjugacy_bounded(
    hom: &FiniteHom,
    g: &Word,
    h: &Word,
    bound: u128,
) -> Result<ConjugacyVerdict, PquotError> {
    let (a, b) = (hom.eval(g)?, hom.eval(h)?);
    conjugacy_in(hom.group(), hom.images(), &a, &b, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::split_amalg;
    use crate::words::parse_word;

    fn params(d: usize, r: u32, rp: u32) -> DemuskinParams {
        DemuskinParams::new(3, d, Level::Finite(r), Level::Finite(rp)).unwrap()
    }

    #[test]
    fn case_one_example() {
        let pr = params(2, 1, 1);
        let (hom, case) = heisenberg_case_hom(&pr, 1, SplitKind::Amalg(1)).unwrap();
        assert_eq!(case, TorsionCase::Case1);
        let c = split_amalg(&pr, 1).unwrap().edge_word();
        let img = hom.eval(&c).unwrap();
        assert_eq!(img, vec![0, 0, 1]);
        assert_eq!(hom.group().elem_order(&img), 3);
    }

    #[test]
    fn case_three_example() {
        let pr = params(2, 1, 1);
        let (hom, case) = heisenberg_case_hom(&pr, 2, SplitKind::Amalg(1)).unwrap();
        assert_eq!(case, TorsionCase::Case3);
        assert_eq!(hom.desc(), &TargetDesc::Cyclic { p: 3, m: 3 });
        let c = split_amalg(&pr, 1).unwrap().edge_word();
        assert_eq!(hom.eval(&c).unwrap(), vec![3]);
    }

    #[test]
    fn all_cases_order_law() {
        for d in [2, 3] {
            for r in [1, 2] {
                for rp in r..=3 {
                    for s in [1, 2] {
                        let pr = params(d, r, rp);
                        for n in 1..d {
                            let (_, case) = heisenberg_case_hom(&pr, s, SplitKind::Amalg(n)).unwrap();
                            let expect = if s <= r {
                                TorsionCase::Case1
                            } else if s <= rp {
                                TorsionCase::Case2
                            } else {
                                TorsionCase::Case3
                            };
                            assert_eq!(case, expect);
                        }
                        heisenberg_case_hom(&pr, s, SplitKind::HnnDef).unwrap();
                        heisenberg_case_hom(&pr.with_rprime(Level::Infinite), s, SplitKind::Hnn).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn wrong_images_rejected() {
        let pr = params(2, 1, 1);
        let a = pr.alphabet();
        let images = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 0], vec![0, 1, 0]];
        let err = FiniteHom::new(
            TargetDesc::Heisenberg { p: 3, s: 1 },
            &a,
            images,
            &[pr.relator().unwrap()],
        );
        assert!(matches!(err, Err(PquotError::RelatorNotKilled(_))));
        assert!(heisenberg_case_hom(&pr, 0, SplitKind::Amalg(1)).is_err());
        assert!(heisenberg_case_hom(&pr, 1, SplitKind::Amalg(2)).is_err());
    }

    #[test]
    fn class2_examples() {
        let a = Alphabet::new(["x", "y", "z"]).unwrap();
        let hom = class2_quotient_hom(&a, 3, 2).unwrap();
        let comm = hom.eval(&parse_word(&a, "x y x^-1 y^-1").unwrap()).unwrap();
        assert_eq!(comm, vec![0, 0, 0, 1, 0, 0]);
        let pw = hom.eval(&parse_word(&a, "x^9").unwrap()).unwrap();
        assert!(pw[..3].iter().all(|&v| v == 0));
        // Abelianization: the image group modulo its commutator coordinates.
        let all = hom.image_subgroup(u128::MAX).unwrap();
        let lin: std::collections::HashSet<_> = all.iter().map(|e| e[..3].to_vec()).collect();
        assert_eq!(lin.len(), 729);
    }

    #[test]
    fn conjugacy_examples() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let hom = FiniteHom::new(
            TargetDesc::Heisenberg { p: 3, s: 1 },
            &a,
            vec![vec![1, 0, 0], vec![0, 1, 0]],
            &[],
        )
        .unwrap();
        let w = |t: &str| parse_word(&a, t).unwrap();
        let v = finite_conjugacy(&hom, &w("x y"), &w("x y")).unwrap();
        assert!(v.conjugate);
        assert_eq!(v.conjugator, Some(vec![0, 0, 0]));
        let v = finite_conjugacy(&hom, &w("x y x^-1 y^-1"), &w("x")).unwrap();
        assert!(!v.conjugate);
        assert_eq!(v.searched, 27);
        let v = finite_conjugacy(&hom, &w("x"), &w("y x y^-1")).unwrap();
        assert!(v.conjugate);
        let c = v.conjugator.unwrap();
        assert_eq!(hom.group().conj(&c, &[1, 0, 0]), hom.eval(&w("y x y^-1")).unwrap());
        let err = finite_conjugacy_bounded(&hom, &w("x"), &w("y"), 10).unwrap_err();
        assert!(err.is_resource());
    }

    /// Conjugacy classes of the 27-element Heisenberg group by orbit refinement.
    #[test]
    fn agrees_with_class_partition() {
        let g = Group::Heisenberg { modulus: 3 };
        let all = g.subgroup(&g.generators(), u128::MAX).unwrap();
        let mut class_of = std::collections::HashMap::new();
        let mut classes = 0;
        for x in &all {
            if class_of.contains_key(x) {
                continue;
            }
            let mut orbit = vec![x.clone()];
            let mut i = 0;
            while i < orbit.len() {
                for gen in g.generators() {
                    let y = g.conj(&gen, &orbit[i]);
                    if !orbit.contains(&y) {
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            for y in orbit {
                class_of.insert(y, classes);
            }
            classes += 1;
        }
        assert_eq!(classes, 11);
        for a in &all {
            for b in all.iter().step_by(2) {
                let v = conjugacy_in(&g, &g.generators(), a, b, 100).unwrap();
                assert_eq!(v.conjugate, class_of[a] == class_of[b]);
            }
        }
    }
}
