use serde::Serialize;

use super::CatalogError;
use crate::normal_forms::{Splitting, SplittingKind};
use crate::words::{conjugate_in_free, Alphabet, FreeEndo, Word};

/// `ψ`: the identity except `x_N ↦ x_N x_{N−1}`, over `x0, …, xN`
/// (preceded by `sigma, tau` when requested).
pub fn neukirch_endo(n: usize, sigma_tau: bool) -> Result<FreeEndo, CatalogError> {
    if n < 2 {
        return Err(CatalogError::InvalidParams(format!("N = {n} must be at least 2")));
    }
    let mut names: Vec<String> = Vec::new();
    if sigma_tau {
        names.extend(["sigma".to_string(), "tau".to_string()]);
    }
    names.extend((0..=n).map(|i| format!("x{i}")));
    let a = Alphabet::new(names)?;
    let xn = a.generator_by_name(&format!("x{n}"))?;
    let xm = a.generator_by_name(&format!("x{}", n - 1))?;
    Ok(FreeEndo::with_overrides(&a, &[(&format!("x{n}"), xn.concat(&xm))])?)
}

/// The group `⟨x1, …, xn | x1^p [x1,x2] … [x_{n−1},x_n]⟩` (`n` even) with its
/// HNN splitting: base `x1, …, x_{n−1}`, stable letter `x_n`,
/// `x_n x_{n−1} x_n⁻¹ = x1^p [x1,x2] … [x_{n−3},x_{n−2}] x_{n−1}`.
pub fn neukirch_example(p: u64, n: usize) -> Result<(Word, Splitting), CatalogError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(CatalogError::InvalidParams(format!(
            "n = {n} must be even and at least 2"
        )));
    }
    let ambient = Alphabet::new((1..=n).map(|i| format!("x{i}")))?;
    let g = |i: usize| ambient.generator(i - 1);
    let mut prefix = g(1).pow(p as i64);
    for i in (1..n - 1).step_by(2) {
        prefix = prefix.concat(&g(i).commutator(&g(i + 1)));
    }
    let relator = prefix.concat(&g(n - 1).commutator(&g(n)));
    let base = Alphabet::new((1..n).map(|i| format!("x{i}")))?;
    let u = base.generator(n - 2);
    let v = prefix.translate(&base)?.concat(&u);
    let kind = SplittingKind::Hnn {
        u,
        v,
        base,
        stable: format!("x{n}"),
    };
    Ok((relator, Splitting::new(kind, &ambient, &[], &[])?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GeneratorMatch {
    /// Images agree letter for letter.
    Literal,
    /// `ψ(g) · T(g)⁻¹` is a free conjugate of the relator or its inverse.
    ModuloRelator,
    Differs,
}

/// Compares `ψ` with the `k = 1` twist of [`neukirch_example`] generator by
/// generator.
pub fn neukirch_matches_twist(p: u64, n: usize) -> Result<Vec<(String, GeneratorMatch)>, CatalogError> {
    let (w, s) = neukirch_example(p, n)?;
    let twist = s.ambient_twist(1);
    let psi = FreeEndo::with_overrides(
        s.ambient(),
        &[(
            &format!("x{n}"),
            s.ambient().generator(n - 1).concat(&s.ambient().generator(n - 2)),
        )],
    )?;
    let winv = w.inverse();
    Ok(s.ambient()
        .names()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let a = &psi.images()[i];
            let b = &twist.images()[i];
            let verdict = if a == b {
                GeneratorMatch::Literal
            } else {
                let q = a.concat(&b.inverse());
                if conjugate_in_free(&q, &w) || conjugate_in_free(&q, &winv) {
                    GeneratorMatch::ModuloRelator
                } else {
                    GeneratorMatch::Differs
                }
            };
            (name.clone(), verdict)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn commutator_identity() {
        for n in [2, 4, 6] {
            let psi = neukirch_endo(n, true).unwrap();
            let a = psi.domain();
            let xm = a.generator_by_name(&format!("x{}", n - 1)).unwrap();
            let xn = a.generator_by_name(&format!("x{n}")).unwrap();
            let lhs = psi.apply(&xm.commutator(&xn)).unwrap();
            assert_eq!(lhs, xm.commutator(&xn.concat(&xm)));
            assert_eq!(psi.apply(&xm).unwrap(), xm);
        }
        assert!(neukirch_endo(1, false).is_err());
    }

    #[test]
    fn agrees_with_hnn_twist() {
        for n in [2, 4, 6] {
            let (w, s) = neukirch_example(3, n).unwrap();
            assert!(conjugate_in_free(
                &s.to_ambient().apply(&s.relator_coords()).unwrap(),
                &w.inverse()
            ));
            let m = neukirch_matches_twist(3, n).unwrap();
            for (name, verdict) in &m {
                let expected = if *name == format!("x{n}") {
                    GeneratorMatch::ModuloRelator
                } else {
                    GeneratorMatch::Literal
                };
                assert_eq!(*verdict, expected, "n={n} {name}");
            }
        }
        let (w, _) = neukirch_example(3, 4).unwrap();
        assert_eq!(
            w,
            parse_word(w.alphabet(), "x1^3 x1 x2 x1^-1 x2^-1 x3 x4 x3^-1 x4^-1").unwrap()
        );
    }
}
