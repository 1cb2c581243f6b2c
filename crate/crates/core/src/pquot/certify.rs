use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{Elem, Group, TargetDesc};
use super::hom::{class2_quotient_hom, conjugacy_in, heisenberg_case_hom, ConjugacyVerdict, FiniteHom};
use super::{max_order, PquotError};
use crate::catalog::{descriptor_splitting, theorem_beta, DemuskinParams, SplitDescriptor, SplitKind};
use crate::normal_forms::SplittingKind;
use crate::words::{Alphabet, Word};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

/// Largest `s` tried for the Heisenberg and class-2 family members.
const MAX_S: u32 = 3;

/// Cap on homomorphism assignments per side in the wreath search.
const WREATH_SIDE_CAP: u128 = 1 << 20;

/// One entry of the deterministic quotient family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "member", rename_all = "snake_case")]
pub enum FamilyMember {
    Heisenberg {
        s: u32,
    },
    Class2 {
        s: u32,
    },
    Product {
        left: Box<FamilyMember>,
        right: Box<FamilyMember>,
    },
    /// Search over homomorphisms to `C_p ≀ C_p` (amalgam descriptors only).
    Wreath,
}

impl FamilyMember {
    /// Heisenberg homs by increasing `s`, class-2 quotients by increasing
    /// `s`, their pairwise products, then the wreath search.
    pub fn family() -> Vec<FamilyMember> {
        let mut base: Vec<FamilyMember> = (1..=MAX_S).map(|s| FamilyMember::Heisenberg { s }).collect();
        base.extend((1..=MAX_S).map(|s| FamilyMember::Class2 { s }));
        let mut out = base.clone();
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                out.push(FamilyMember::Product {
                    left: Box::new(base[i].clone()),
                    right: Box::new(base[j].clone()),
                });
            }
        }
        out.push(FamilyMember::Wreath);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertImages {
    pub c: Elem,
    pub twisted: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Position of the successful member in [`FamilyMember::family`].
    pub member_index: usize,
    pub member: FamilyMember,
    pub family_size: usize,
    /// Homomorphisms examined inside the successful member.
    pub homs_tried: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuternessCertificate {
    pub schema_version: u32,
    pub params: DemuskinParams,
    pub splitting: SplitKind,
    pub k: i64,
    pub quotient: TargetDesc,
    pub generators: Vec<String>,
    pub generator_images: Vec<Elem>,
    /// Edge word `c` of the paired splitting, over the ambient generators.
    pub edge_word: String,
    /// `T^k(c)`.
    pub twisted_word: String,
    pub images: CertImages,
    pub nonconjugate: bool,
    /// Order of the image subgroup searched for a conjugator.
    pub searched: usize,
    pub stats: SearchStats,
}

struct Context {
    params: DemuskinParams,
    kind: SplitKind,
    relator: Word,
    c: Word,
    tc: Word,
    bound: u128,
}

impl Context {
    fn new(params: &DemuskinParams, kind: SplitKind, k: i64, bound: u128) -> Result<Context, PquotError> {
        let alpha = descriptor_splitting(&SplitDescriptor { params: *params, kind })?;
        let c = theorem_beta(params, kind)?.edge_word();
        let tc = alpha.ambient_twist(k).apply(&c)?;
        Ok(Context {
            params: *params,
            kind,
            relator: params.relator()?,
            c,
            tc,
            bound,
        })
    }

    fn separates(&self, hom: &FiniteHom) -> Result<Option<ConjugacyVerdict>, PquotError> {
        let (a, b) = (hom.eval(&self.c)?, hom.eval(&self.tc)?);
        if a == b {
            return Ok(None);
        }
        let v = conjugacy_in(hom.group(), hom.images(), &a, &b, self.bound)?;
        Ok((!v.conjugate).then_some(v))
    }

    fn member_hom(&self, m: &FamilyMember) -> Result<FiniteHom, PquotError> {
        match m {
            FamilyMember::Heisenberg { s } => Ok(heisenberg_case_hom(&self.params, *s, self.kind)?.0),
            FamilyMember::Class2 { s } => class2_quotient_hom(&self.params.alphabet(), self.params.p, *s)?
                .modulo(std::slice::from_ref(&self.relator), self.bound),
            FamilyMember::Product { left, right } => {
                let (l, r) = (self.member_hom(left)?, self.member_hom(right)?);
                if l.group().order().saturating_mul(r.group().order()) > self.bound {
                    return Err(PquotError::Resource("product exceeds bound".into()));
                }
                l.product(&r)
            }
            FamilyMember::Wreath => Err(PquotError::Precondition("wreath member is a search".into())),
        }
    }

    fn try_member(&self, m: &FamilyMember) -> Result<Option<(FiniteHom, ConjugacyVerdict, usize)>, PquotError> {
        if let FamilyMember::Wreath = m {
            return self.wreath_search();
        }
        let hom = self.member_hom(m)?;
        Ok(self.separates(&hom)?.map(|v| (hom, v, 1)))
    }

    /// Meet-in-the-middle over assignments of the two free factors whose
    /// edge-word images agree.
    fn wreath_search(&self) -> Result<Option<(FiniteHom, ConjugacyVerdict, usize)>, PquotError> {
        let SplitKind::Amalg(n) = self.kind else {
            return Ok(None);
        };
        let alpha = crate::catalog::split_amalg(&self.params, n)?;
        let SplittingKind::Amalgam { a, b, u_a, u_b } = alpha.kind() else {
            return Err(PquotError::Bug("split_amalg is not an amalgam".into()));
        };
        let desc = TargetDesc::Wreath { p: self.params.p };
        let group = Group::from_desc(&desc, self.bound)?;
        if group.order() > self.bound {
            return Err(PquotError::Resource("wreath product exceeds bound".into()));
        }
        let elems = group.subgroup(&group.generators(), self.bound)?;
        let side_count = |alpha: &Alphabet| (elems.len() as u128).checked_pow(alpha.rank() as u32);
        let (Some(na), Some(nb)) = (side_count(a), side_count(b)) else {
            return Err(PquotError::Resource("wreath search space too large".into()));
        };
        if na > WREATH_SIDE_CAP || nb > WREATH_SIDE_CAP {
            return Err(PquotError::Resource("wreath search space too large".into()));
        }
        let assignment = |idx: u128, rank: usize| -> Vec<Elem> {
            let mut idx = idx;
            (0..rank)
                .map(|_| {
                    let e = elems[(idx % elems.len() as u128) as usize].clone();
                    idx /= elems.len() as u128;
                    e
                })
                .collect()
        };
        let eval = |w: &Word, imgs: &[Elem]| -> Elem {
            w.letters().iter().fold(group.identity(), |acc, l| {
                let g = &imgs[l.index()];
                let g = if l.is_inverse() { group.inv(g) } else { g.clone() };
                group.mul(&acc, &g)
            })
        };
        let mut by_image: HashMap<Elem, Vec<u128>> = HashMap::new();
        for j in 0..nb {
            by_image.entry(eval(u_b, &assignment(j, b.rank()))).or_default().push(j);
        }
        let ambient = self.params.alphabet();
        let mut tried = 0;
        for i in 0..na {
            let ia = assignment(i, a.rank());
            let Some(matches) = by_image.get(&eval(u_a, &ia)) else {
                continue;
            };
            for &j in matches {
                tried += 1;
                let ib = assignment(j, b.rank());
                let images = ambient
                    .names()
                    .iter()
                    .map(|name| match a.index_of(name) {
                        Some(x) => ia[x].clone(),
                        None => ib[b.index_of(name).expect("generator on one side")].clone(),
                    })
                    .collect();
                let hom = FiniteHom::with_group(
                    desc.clone(),
                    group.clone(),
                    &ambient,
                    images,
                    std::slice::from_ref(&self.relator),
                )?;
                if let Some(v) = self.separates(&hom)? {
                    return Ok(Some((hom, v, tried)));
                }
            }
        }
        Ok(None)
    }

    fn certificate(
        &self,
        k: i64,
        hom: &FiniteHom,
        verdict: &ConjugacyVerdict,
        stats: SearchStats,
    ) -> Result<OuternessCertificate, PquotError> {
        Ok(OuternessCertificate {
            schema_version: CERTIFICATE_SCHEMA_VERSION,
            params: self.params,
            splitting: self.kind,
            k,
            quotient: hom.desc().clone(),
            generators: hom.alphabet().names().to_vec(),
            generator_images: hom.images().to_vec(),
            edge_word: self.c.to_string(),
            twisted_word: self.tc.to_string(),
            images: CertImages {
                c: hom.eval(&self.c)?,
                twisted: hom.eval(&self.tc)?,
            },
            nonconjugate: !verdict.conjugate,
            searched: verdict.searched,
            stats,
        })
    }
}

/// Searches the quotient family for a finite p-group in which the edge
/// word of the paired splitting and its image under the `k`-th twist are
/// not conjugate. Members are evaluated in parallel; the first success in
/// family order wins.
pub fn certify_outer(params: &DemuskinParams, kind: SplitKind, k: i64) -> Result<OuternessCertificate, PquotError> {
    certify_outer_bounded(params, kind, k, max_order())
}

pub fn certify_outer_bounded(
    params: &DemuskinParams,
    kind: SplitKind,
    k: i64,
    bound: u128,
) -> Result<OuternessCertificate, PquotError> {
    if k == 0 {
        return Err(PquotError::Precondition("k = 0 gives the identity twist".into()));
    }
    let ctx = Context::new(params, kind, k, bound)?;
    let family = FamilyMember::family();
    let truncated = AtomicBool::new(false);
    let found = family
        .par_iter()
        .enumerate()
        .find_map_first(|(i, m)| match ctx.try_member(m) {
            Ok(Some(hit)) => Some((i, hit)),
            Ok(None) => None,
            Err(e) => {
                if e.is_resource() {
                    truncated.store(true, Ordering::Relaxed);
                }
                None
            }
        });
    let Some((index, (hom, verdict, tried))) = found else {
        let msg = format!("{} members, bound {bound}", family.len());
        // A miss is only conclusive if no member was cut short by the bound.
        return Err(if truncated.into_inner() {
            PquotError::Resource(format!("no certificate within the order bound ({msg})"))
        } else {
            PquotError::NotFound(msg)
        });
    };
    let stats = SearchStats {
        member_index: index,
        member: family[index].clone(),
        family_size: family.len(),
        homs_tried: tried,
    };
    ctx.certificate(k, &hom, &verdict, stats)
}

/// Recomputes every derived field from the certificate's inputs and
/// returns the rebuilt certificate, which must equal the input.
pub fn verify_certificate(cert: &OuternessCertificate) -> Result<OuternessCertificate, PquotError> {
    if cert.schema_version != CERTIFICATE_SCHEMA_VERSION {
        return Err(PquotError::Mismatch(format!("schema version {}", cert.schema_version)));
    }
    let bound = max_order();
    let ctx = Context::new(&cert.params, cert.splitting, cert.k, bound)?;
    let ambient = cert.params.alphabet();
    if cert.generators != ambient.names() {
        return Err(PquotError::Mismatch("generator list".into()));
    }
    let hom = FiniteHom::new(
        cert.quotient.clone(),
        &ambient,
        cert.generator_images.clone(),
        std::slice::from_ref(&ctx.relator),
    )?;
    let (a, b) = (hom.eval(&ctx.c)?, hom.eval(&ctx.tc)?);
    let verdict = conjugacy_in(hom.group(), hom.images(), &a, &b, bound)?;
    let rebuilt = ctx.certificate(cert.k, &hom, &verdict, cert.stats.clone())?;
    if &rebuilt != cert {
        return Err(PquotError::Mismatch("recomputed fields differ".into()));
    }
    if !rebuilt.nonconjugate {
        return Err(PquotError::Mismatch("images are conjugate".into()));
    }
    Ok(rebuilt)
}

/// Parses and re-verifies a serialized certificate.
pub fn load_certificate(text: &str) -> Result<OuternessCertificate, PquotError> {
    let cert: OuternessCertificate = serde_json::from_str(text)?;
    verify_certificate(&cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Level;

    #[test]
    fn hnn_certificate_is_cyclic() {
        let pr = DemuskinParams::new(3, 2, Level::Finite(1), Level::Infinite).unwrap();
        let cert = certify_outer(&pr, SplitKind::Hnn, 1).unwrap();
        assert_eq!(cert.stats.member, FamilyMember::Heisenberg { s: 1 });
        assert_eq!(cert.quotient, TargetDesc::Cyclic { p: 3, m: 1 });
        assert!(cert.nonconjugate);
        let text = serde_json::to_string_pretty(&cert).unwrap();
        let again = load_certificate(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&again).unwrap(), text);
    }

    #[test]
    fn zero_twist_rejected() {
        let pr = DemuskinParams::new(3, 2, Level::Finite(1), Level::Infinite).unwrap();
        assert!(matches!(
            certify_outer(&pr, SplitKind::Hnn, 0),
            Err(PquotError::Precondition(_))
        ));
    }

    #[test]
    fn tampered_certificate_fails() {
        let pr = DemuskinParams::new(3, 2, Level::Finite(1), Level::Infinite).unwrap();
        let mut cert = certify_outer(&pr, SplitKind::Hnn, 1).unwrap();
        cert.images.twisted = vec![0];
        assert!(verify_certificate(&cert).is_err());
    }
}
