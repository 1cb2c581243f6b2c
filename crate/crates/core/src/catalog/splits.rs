use std::sync::Arc;

use serde::Serialize;

use super::{commutator_product, CatalogError, DemuskinParams, Level, SplitDescriptor, SplitKind};
use crate::normal_forms::{Splitting, SplittingKind};
use crate::words::{conjugate_in_free, Alphabet, FreeEndo, Word};

fn sub_alphabet(names: Vec<String>) -> Arc<Alphabet> {
    Alphabet::new(names).expect("distinct labels")
}

fn pair_names(from: usize, to: usize) -> Vec<String> {
    (from..=to).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect()
}

fn gen(a: &Arc<Alphabet>, name: &str) -> Word {
    a.generator_by_name(name).expect("label present")
}

fn check_n(params: &DemuskinParams, n: usize) -> Result<(), CatalogError> {
    if n == 0 || n >= params.d {
        Err(CatalogError::NOutOfRange { n, d: params.d })
    } else {
        Ok(())
    }
}

/// `x1^q [x1,y1] … [xn,yn]` over `a`.
fn left_word(params: &DemuskinParams, a: &Arc<Alphabet>, n: usize) -> Result<Word, CatalogError> {
    let mut w = a.identity();
    if let Some(q) = params.q()? {
        w = gen(a, "x1").pow(q);
    }
    Ok(w.concat(&commutator_product(a, 1, n)))
}

/// `y_d^{p^{r'}} [y_d,x_d] … [y_{n+1},x_{n+1}]` over `b`.
pub(crate) fn right_word(params: &DemuskinParams, b: &Arc<Alphabet>, n: usize) -> Result<Word, CatalogError> {
    let d = params.d;
    let mut w = b.identity();
    if let Some(e) = params.p_rprime()? {
        w = gen(b, &format!("y{d}")).pow(e);
    }
    for i in (n + 1..=d).rev() {
        let y = gen(b, &format!("y{i}"));
        let x = gen(b, &format!("x{i}"));
        w = w.concat(&y.commutator(&x));
    }
    Ok(w)
}

pub(crate) fn amalg_left(params: &DemuskinParams, n: usize) -> Result<Word, CatalogError> {
    let a = sub_alphabet(pair_names(1, n));
    left_word(params, &a, n)
}

/// `A = ⟨x1, …, yn⟩`, `B = ⟨x_{n+1}, …, y_d⟩`, `u_A = x1^q [x1,y1]…[xn,yn]`,
/// `u_B = y_d^{p^{r'}} [y_d,x_d] … [y_{n+1},x_{n+1}]`.
pub fn split_amalg(params: &DemuskinParams, n: usize) -> Result<Splitting, CatalogError> {
    params.check()?;
    check_n(params, n)?;
    let a = sub_alphabet(pair_names(1, n));
    let b = sub_alphabet(pair_names(n + 1, params.d));
    let kind = SplittingKind::Amalgam {
        u_a: left_word(params, &a, n)?,
        u_b: right_word(params, &b, n)?,
        a,
        b,
    };
    Ok(Splitting::new(kind, &params.alphabet(), &[], &[])?)
}

/// Stable letter `y_d`, `u = x_d`, `v = x1^q [x1,y1] … [x_{d−1},y_{d−1}] x_d`.
/// Only the `r' = ∞` member splits this way.
pub fn split_hnn(params: &DemuskinParams) -> Result<Splitting, CatalogError> {
    params.check()?;
    if params.rprime != Level::Infinite {
        return Err(CatalogError::Unsupported(
            "this HNN splitting needs r' = inf; use the hnn-def form for finite r'".into(),
        ));
    }
    let d = params.d;
    let mut names = pair_names(1, d - 1);
    names.push(format!("x{d}"));
    let base = sub_alphabet(names);
    let xd = gen(&base, &format!("x{d}"));
    let v = left_word(params, &base, d - 1)?.concat(&xd);
    let kind = SplittingKind::Hnn {
        u: xd,
        v,
        base,
        stable: format!("y{d}"),
    };
    Ok(Splitting::new(kind, &params.alphabet(), &[], &[])?)
}

/// Stable letter `x_d`, `u = y_d`, `v = P⁻¹ y_d^{1+p^{r'}}` with
/// `P = x1^q [x1,y1] … [x_{d−1},y_{d−1}]` (`v = P⁻¹ y_d` for `r' = ∞`).
pub fn split_hnn_def(params: &DemuskinParams) -> Result<Splitting, CatalogError> {
    params.check()?;
    let d = params.d;
    let mut names = pair_names(1, d - 1);
    names.push(format!("y{d}"));
    let base = sub_alphabet(names);
    let yd = gen(&base, &format!("y{d}"));
    let power = 1 + params.p_rprime()?.unwrap_or(0);
    let v = left_word(params, &base, d - 1)?.inverse().concat(&yd.pow(power));
    let kind = SplittingKind::Hnn {
        u: yd,
        v,
        base,
        stable: format!("x{d}"),
    };
    Ok(Splitting::new(kind, &params.alphabet(), &[], &[])?)
}

/// The companion splitting used to show intersection.
///
/// For the HNN case this is [`split_hnn_def`]. For `Amalg(n)` it is the
/// HNN splitting with stable letter `x_{n+1}` over the base obtained by
/// replacing `y_n, x_{n+1}` with `b = y_n⁻¹ x_{n+1}`:
/// `u = b⁻¹ x_n⁻¹ b y_{n+1}` and `v = x_n⁻¹ L⁻¹ R⁻¹ y_{n+1}` where
/// `L = x1^q [x1,y1] … [x_{n−1},y_{n−1}]` and
/// `R = [x_{n+2},y_{n+2}] … [x_d,y_d] y_d^{−p^{r'}}`.
pub fn theorem_beta(params: &DemuskinParams, which: SplitKind) -> Result<Splitting, CatalogError> {
    match which {
        SplitKind::Hnn | SplitKind::HnnDef => split_hnn_def(params),
        SplitKind::Amalg(n) => {
            params.check()?;
            check_n(params, n)?;
            let d = params.d;
            let mut names = pair_names(1, n - 1);
            names.push(format!("x{n}"));
            names.push("b".into());
            names.push(format!("y{}", n + 1));
            names.extend(pair_names(n + 2, d));
            let base = sub_alphabet(names);
            let b = gen(&base, "b");
            let xn = gen(&base, &format!("x{n}"));
            let yn1 = gen(&base, &format!("y{}", n + 1));
            let mut l = base.identity();
            if let Some(q) = params.q()? {
                l = gen(&base, "x1").pow(q);
            }
            l = l.concat(&commutator_product(&base, 1, n - 1));
            let mut r = commutator_product(&base, n + 2, d);
            if let Some(e) = params.p_rprime()? {
                r = r.concat(&gen(&base, &format!("y{d}")).pow(-e));
            }
            let u = b.inverse().concat(&xn.inverse()).concat(&b).concat(&yn1);
            let v = xn.inverse().concat(&l.inverse()).concat(&r.inverse()).concat(&yn1);
            let t = format!("x{}", n + 1);
            let yn = format!("y{n}");
            let to_coords_yn = format!("{t} b^-1");
            let to_ambient_b = format!("{yn}^-1 {t}");
            let kind = SplittingKind::Hnn { u, v, base, stable: t };
            Ok(Splitting::new(
                kind,
                &params.alphabet(),
                &[(yn.as_str(), to_coords_yn.as_str())],
                &[("b", to_ambient_b.as_str())],
            )?)
        }
    }
}

/// The splitting named by a descriptor.
pub fn descriptor_splitting(desc: &SplitDescriptor) -> Result<Splitting, CatalogError> {
    match desc.kind {
        SplitKind::Amalg(n) => split_amalg(&desc.params, n),
        SplitKind::Hnn => split_hnn(&desc.params),
        SplitKind::HnnDef => split_hnn_def(&desc.params),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    /// Both dictionaries compose to the identity on generators.
    pub inverse_dictionaries: bool,
    /// The relator read back in ambient letters is a free conjugate of `w^{±1}`.
    pub relator_conjugate: bool,
    /// ... and in fact literally equal to `w^{±1}`.
    pub relator_exact: bool,
}

impl SplittingReport {
    pub fn valid(&self) -> bool {
        self.inverse_dictionaries && self.relator_conjugate
    }
}

fn is_identity_on_generators(e: &FreeEndo) -> bool {
    e.domain()
        .names()
        .iter()
        .zip(e.images())
        .all(|(n, w)| w.len() == 1 && w.alphabet().name(w.letters()[0].index()) == n && !w.letters()[0].is_inverse())
}

/// Checks that the splitting presents the group of `params`: the Tietze
/// dictionaries are mutually inverse and the splitting relator becomes
/// `w_{r'}^{±1}` up to conjugacy.
pub fn validate_splitting(s: &Splitting, params: &DemuskinParams) -> Result<SplittingReport, CatalogError> {
    let w = params.relator()?;
    if !s.ambient().same_as(w.alphabet()) {
        return Ok(SplittingReport {
            inverse_dictionaries: false,
            relator_conjugate: false,
            relator_exact: false,
        });
    }
    let there_and_back = s.to_ambient().after(s.to_coords())?;
    let back_and_there = s.to_coords().after(s.to_ambient())?;
    let inverse_dictionaries = is_identity_on_generators(&there_and_back) && is_identity_on_generators(&back_and_there);
    let rel = s.to_ambient().apply(&s.relator_coords())?;
    let winv = w.inverse();
    Ok(SplittingReport {
        inverse_dictionaries,
        relator_conjugate: conjugate_in_free(&rel, &w) || conjugate_in_free(&rel, &winv),
        relator_exact: rel == w || rel == winv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn p(d: usize, r: u32, rp: Level) -> DemuskinParams {
        DemuskinParams::new(3, d, Level::Finite(r), rp).unwrap()
    }

    #[test]
    fn amalg_example() {
        let params = p(2, 1, Level::Finite(1));
        let s = split_amalg(&params, 1).unwrap();
        let SplittingKind::Amalgam { u_a, u_b, .. } = s.kind() else {
            panic!()
        };
        assert_eq!(u_a.to_string(), "x1^4 y1 x1^-1 y1^-1");
        assert_eq!(u_b.to_string(), "y2^4 x2 y2^-1 x2^-1");
        let rep = validate_splitting(&s, &params).unwrap();
        assert!(rep.valid() && rep.relator_exact);
        assert!(matches!(split_amalg(&params, 2), Err(CatalogError::NOutOfRange { .. })));
    }

    #[test]
    fn hnn_forms_validate() {
        let params = p(2, 1, Level::Infinite);
        let s = split_hnn(&params).unwrap();
        let SplittingKind::Hnn { u, v, stable, base } = s.kind() else {
            panic!()
        };
        assert_eq!(stable, "y2");
        assert_eq!(base.names(), &["x1", "y1", "x2"]);
        assert_eq!(u.to_string(), "x2");
        assert_eq!(v.to_string(), "x1^4 y1 x1^-1 y1^-1 x2");
        assert!(validate_splitting(&s, &params).unwrap().valid());
        assert!(split_hnn(&p(2, 1, Level::Finite(2))).is_err());

        for rp in [Level::Finite(1), Level::Finite(3), Level::Infinite] {
            let params = p(2, 1, rp);
            let s = split_hnn_def(&params).unwrap();
            assert!(validate_splitting(&s, &params).unwrap().valid(), "{rp}");
        }
    }

    #[test]
    fn beta_validates() {
        for d in [2, 3] {
            for rp in [Level::Finite(1), Level::Finite(2), Level::Infinite] {
                let params = p(d, 1, rp);
                for n in 1..d {
                    let s = theorem_beta(&params, SplitKind::Amalg(n)).unwrap();
                    let rep = validate_splitting(&s, &params).unwrap();
                    assert!(rep.valid(), "d={d} n={n} r'={rp}: {rep:?}");
                }
            }
        }
        let params = p(2, 1, Level::Infinite);
        let s = theorem_beta(&params, SplitKind::Hnn).unwrap();
        let SplittingKind::Hnn { base, stable, .. } = s.kind() else {
            panic!()
        };
        assert_eq!(base.names(), &["x1", "y1", "y2"]);
        assert_eq!(stable, "x2");
    }

    #[test]
    fn corrupted_splitting_fails() {
        let params = p(2, 1, Level::Finite(1));
        let good = split_amalg(&params, 1).unwrap();
        let SplittingKind::Amalgam { a, b, u_a, .. } = good.kind().clone() else {
            panic!()
        };
        let bad_ub = parse_word(&b, "y2^3 y2 x2 y2^-1").unwrap();
        let kind = SplittingKind::Amalgam { a, b, u_a, u_b: bad_ub };
        let bad = Splitting::new(kind, &params.alphabet(), &[], &[]).unwrap();
        assert!(!validate_splitting(&bad, &params).unwrap().valid());
    }
}
