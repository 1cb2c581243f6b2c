use serde::Serialize;

use super::{Word, WordError};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianReport {
    /// Integer exponent sums in alphabet order.
    pub sums: Vec<i64>,
    pub modulus: u64,
    /// `sums` reduced into `[0, modulus)`; equal to `sums` when the modulus is 0.
    pub reduced: Vec<i64>,
    /// The image vector extends to a basis of `(Z/l)^n` (`Z^n` for `l = 0`).
    pub primitive: bool,
}

/// Image of `w` in `Z^n` or `(Z/l)^n` for prime `l`.
pub fn abelianize_mod_l(w: &Word, l: u64) -> Result<AbelianReport, WordError> {
    if l != 0 && !is_prime(l) {
        return Err(WordError::NotPrime(l));
    }
    let sums: Vec<i64> = (0..w.alphabet().rank()).map(|i| w.exponent_sum(i)).collect();
    let (reduced, primitive) = if l == 0 {
        let g = sums.iter().fold(0, |g, &s| gcd(g, s));
        (sums.clone(), g == 1)
    } else {
        let m = l as i64;
        let r: Vec<i64> = sums.iter().map(|s| s.rem_euclid(m)).collect();
        let nonzero = r.iter().any(|&x| x != 0);
        (r, nonzero)
    };
    Ok(AbelianReport {
        sums,
        modulus: l,
        reduced,
        primitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_word, Alphabet};

    #[test]
    fn exponent_sums_and_primitivity() {
        let a = Alphabet::new(["x1", "y1", "x2", "y2"]).unwrap();
        let w = parse_word(&a, "x1^3 x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1 y2^-9").unwrap();
        let r = abelianize_mod_l(&w, 0).unwrap();
        assert_eq!(r.sums, vec![3, 0, 0, -9]);
        assert!(!r.primitive);
        assert!(!abelianize_mod_l(&w, 3).unwrap().primitive);
        let r5 = abelianize_mod_l(&w, 5).unwrap();
        assert_eq!(r5.reduced, vec![3, 0, 0, 1]);
        assert!(r5.primitive);
        assert!(matches!(abelianize_mod_l(&w, 4), Err(WordError::NotPrime(4))));
    }
}
