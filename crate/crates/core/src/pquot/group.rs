use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::PquotError;

/// Elements are coordinate vectors with entries reduced to `0..modulus`.
pub type Elem = Vec<i64>;

/// Serializable description of a finite target; enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TargetDesc {
    Cyclic {
        p: u64,
        m: u32,
    },
    Heisenberg {
        p: u64,
        s: u32,
    },
    Class2 {
        p: u64,
        s: u32,
        rank: usize,
    },
    Wreath {
        p: u64,
    },
    Product {
        factors: Vec<TargetDesc>,
    },
    /// `base` modulo the normal closure of `normal_generators`.
    Quotient {
        base: Box<TargetDesc>,
        normal_generators: Vec<Elem>,
    },
}

/// A concrete finite p-group with tuple arithmetic.
#[derive(Debug, Clone)]
pub enum Group {
    /// `ℤ/modulus`.
    Cyclic {
        modulus: i64,
    },
    /// `(a,b,c)·(a′,b′,c′) = (a+a′, b+b′, c+c′+a·b′)`.
    Heisenberg {
        modulus: i64,
    },
    /// Free class-2 nilpotent of the given rank mod `modulus`: a linear part
    /// and one commutator coordinate per pair `i < j`, with cocycle
    /// `κ_ij += ℓ_i ℓ′_j`.
    Class2 {
        modulus: i64,
        rank: usize,
    },
    /// `C_p ≀ C_p` as `(v_0, …, v_{p−1}, σ)`.
    Wreath {
        p: i64,
    },
    Product(Vec<Group>),
    Quotient {
        base: Box<Group>,
        kernel: Arc<Vec<Elem>>,
    },
}

fn pow_checked(p: u64, e: u32) -> Result<i64, PquotError> {
    p.checked_pow(e)
        .filter(|&v| v <= i64::MAX as u64 / 4)
        .map(|v| v as i64)
        .ok_or_else(|| PquotError::Resource(format!("modulus {p}^{e} too large")))
}

impl Group {
    pub fn from_desc(desc: &TargetDesc, bound: u128) -> Result<Group, PquotError> {
        Ok(match desc {
            TargetDesc::Cyclic { p, m } => Group::Cyclic {
                modulus: pow_checked(*p, *m)?,
            },
            TargetDesc::Heisenberg { p, s } => Group::Heisenberg {
                modulus: pow_checked(*p, *s)?,
            },
            TargetDesc::Class2 { p, s, rank } => Group::Class2 {
                modulus: pow_checked(*p, *s)?,
                rank: *rank,
            },
            TargetDesc::Wreath { p } => Group::Wreath { p: pow_checked(*p, 1)? },
            TargetDesc::Product { factors } => Group::Product(
                factors
                    .iter()
                    .map(|f| Group::from_desc(f, bound))
                    .collect::<Result<_, _>>()?,
            ),
            TargetDesc::Quotient {
                base,
                normal_generators,
            } => {
                let base = Group::from_desc(base, u128::MAX)?;
                for g in normal_generators {
                    base.check_elem(g)?;
                }
                let kernel = base.normal_closure(normal_generators, bound)?;
                Group::Quotient {
                    base: Box::new(base),
                    kernel: Arc::new(kernel),
                }
            }
        })
    }

    pub fn elem_len(&self) -> usize {
        match self {
            Group::Cyclic { .. } => 1,
            Group::Heisenberg { .. } => 3,
            Group::Class2 { rank, .. } => rank + rank * (rank.saturating_sub(1)) / 2,
            Group::Wreath { p } => *p as usize + 1,
            Group::Product(fs) => fs.iter().map(Group::elem_len).sum(),
            Group::Quotient { base, .. } => base.elem_len(),
        }
    }

    /// Exact order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        let pw = |m: i64, e: usize| (m as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
        match self {
            Group::Cyclic { modulus } => *modulus as u128,
            Group::Heisenberg { modulus } => pw(*modulus, 3),
            Group::Class2 { modulus, .. } => pw(*modulus, self.elem_len()),
            Group::Wreath { p } => pw(*p, *p as usize + 1),
            Group::Product(fs) => fs.iter().fold(1u128, |acc, f| acc.saturating_mul(f.order())),
            Group::Quotient { base, kernel } => base.order() / kernel.len() as u128,
        }
    }

    pub fn identity(&self) -> Elem {
        vec![0; self.elem_len()]
    }

    fn moduli(&self) -> Vec<i64> {
        match self {
            Group::Cyclic { modulus } | Group::Heisenberg { modulus } | Group::Class2 { modulus, .. } => {
                vec![*modulus; self.elem_len()]
            }
            Group::Wreath { p } => vec![*p; self.elem_len()],
            Group::Product(fs) => fs.iter().flat_map(Group::moduli).collect(),
            Group::Quotient { base, .. } => base.moduli(),
        }
    }

    /// Range check plus canonical coset representative for quotients.
    pub fn check_elem(&self, e: &[i64]) -> Result<(), PquotError> {
        let moduli = self.moduli();
        if e.len() != moduli.len() || e.iter().zip(&moduli).any(|(&x, &m)| x < 0 || x >= m) {
            return Err(PquotError::BadElement(format!("{e:?}")));
        }
        if let Group::Quotient { .. } = self {
            if self.canonical(e.to_vec()) != e {
                return Err(PquotError::BadElement(format!(
                    "{e:?} is not a canonical coset representative"
                )));
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Elem {
        match self {
            Group::Cyclic { modulus } => vec![(a[0] + b[0]).rem_euclid(*modulus)],
            Group::Heisenberg { modulus } => {
                let m = *modulus;
                vec![
                    (a[0] + b[0]).rem_euclid(m),
                    (a[1] + b[1]).rem_euclid(m),
                    (a[2] + b[2] + a[0] * b[1]).rem_euclid(m),
                ]
            }
            Group::Class2 { modulus, rank } => {
                let m = *modulus;
                let mut out: Elem = a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(m)).collect();
                let mut k = *rank;
                for i in 0..*rank {
                    for j in i + 1..*rank {
                        out[k] = (out[k] + a[i] * b[j]).rem_euclid(m);
                        k += 1;
                    }
                }
                out
            }
            Group::Wreath { p } => {
                let n = *p as usize;
                let sigma = a[n];
                let mut out = Vec::with_capacity(n + 1);
                for i in 0..n {
                    let src = (i as i64 - sigma).rem_euclid(*p) as usize;
                    out.push((a[i] + b[src]).rem_euclid(*p));
                }
                out.push((sigma + b[n]).rem_euclid(*p));
                out
            }
            Group::Product(fs) => {
                let mut out = Vec::with_capacity(a.len());
                let mut off = 0;
                for f in fs {
                    let l = f.elem_len();
                    out.extend(f.mul(&a[off..off + l], &b[off..off + l]));
                    off += l;
                }
                out
            }
            Group::Quotient { base, .. } => self.canonical(base.mul(a, b)),
        }
    }

    pub fn inv(&self, a: &[i64]) -> Elem {
        match self {
            Group::Cyclic { modulus } => vec![(-a[0]).rem_euclid(*modulus)],
            Group::Heisenberg { modulus } => {
                let m = *modulus;
                vec![
                    (-a[0]).rem_euclid(m),
                    (-a[1]).rem_euclid(m),
                    (a[0] * a[1] - a[2]).rem_euclid(m),
                ]
            }
            Group::Class2 { modulus, rank } => {
                let m = *modulus;
                let mut out: Elem = a.iter().map(|x| (-x).rem_euclid(m)).collect();
                let mut k = *rank;
                for i in 0..*rank {
                    for j in i + 1..*rank {
                        out[k] = (out[k] + a[i] * a[j]).rem_euclid(m);
                        k += 1;
                    }
                }
                out
            }
            Group::Wreath { p } => {
                let n = *p as usize;
                let sigma = a[n];
                let mut out = Vec::with_capacity(n + 1);
                for i in 0..n {
                    let src = (i as i64 + sigma).rem_euclid(*p) as usize;
                    out.push((-a[src]).rem_euclid(*p));
                }
                out.push((-sigma).rem_euclid(*p));
                out
            }
            Group::Product(fs) => {
                let mut out = Vec::with_capacity(a.len());
                let mut off = 0;
                for f in fs {
                    let l = f.elem_len();
                    out.extend(f.inv(&a[off..off + l]));
                    off += l;
                }
                out
            }
            Group::Quotient { base, .. } => self.canonical(base.inv(a)),
        }
    }

    pub fn pow(&self, a: &[i64], k: i64) -> Elem {
        let mut base = if k < 0 { self.inv(a) } else { a.to_vec() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn conj(&self, x: &[i64], a: &[i64]) -> Elem {
        self.mul(&self.mul(x, a), &self.inv(x))
    }

    /// Smallest `n ≥ 1` with `a^n = 1`.
    pub fn elem_order(&self, a: &[i64]) -> u64 {
        let id = self.identity();
        let mut cur = a.to_vec();
        let mut n = 1;
        while cur != id {
            cur = self.mul(&cur, a);
            n += 1;
        }
        n
    }

    /// Lexicographically least element of the coset `e·N`.
    pub fn canonical(&self, e: Elem) -> Elem {
        match self {
            Group::Quotient { base, kernel } => kernel
                .iter()
                .map(|n| base.mul(&e, n))
                .min()
                .expect("kernel contains the identity"),
            _ => e,
        }
    }

    /// A generating set.
    pub fn generators(&self) -> Vec<Elem> {
        let unit = |len: usize, i: usize| {
            let mut v = vec![0; len];
            v[i] = 1;
            v
        };
        match self {
            Group::Cyclic { .. } => vec![vec![1]],
            Group::Heisenberg { .. } => vec![vec![1, 0, 0], vec![0, 1, 0]],
            Group::Class2 { rank, .. } => (0..*rank).map(|i| unit(self.elem_len(), i)).collect(),
            Group::Wreath { p } => {
                let n = *p as usize + 1;
                vec![unit(n, 0), unit(n, n - 1)]
            }
            Group::Product(fs) => {
                let total = self.elem_len();
                let mut out = Vec::new();
                let mut off = 0;
                for f in fs {
                    for g in f.generators() {
                        let mut v = vec![0; total];
                        v[off..off + g.len()].copy_from_slice(&g);
                        out.push(v);
                    }
                    off += f.elem_len();
                }
                out
            }
            Group::Quotient { base, .. } => base.generators().into_iter().map(|g| self.canonical(g)).collect(),
        }
    }

    /// BFS enumeration of `⟨gens⟩`, failing once it exceeds `bound`.
    pub fn subgroup(&self, gens: &[Elem], bound: u128) -> Result<Vec<Elem>, PquotError> {
        let id = self.identity();
        let mut seen: HashSet<Elem> = HashSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() as u128 > bound {
                        return Err(PquotError::Resource(format!("subgroup order exceeds bound {bound}")));
                    }
                    order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(order)
    }

    /// Sorted elements of the normal closure of `gens`.
    pub fn normal_closure(&self, gens: &[Elem], bound: u128) -> Result<Vec<Elem>, PquotError> {
        let conjugators = self.generators();
        let mut normal_gens: Vec<Elem> = gens.to_vec();
        loop {
            let sub = self.subgroup(&normal_gens, bound)?;
            let members: HashSet<&Elem> = sub.iter().collect();
            let extra: Vec<Elem> = normal_gens
                .iter()
                .flat_map(|n| conjugators.iter().map(move |g| (g, n)))
                .map(|(g, n)| self.conj(g, n))
                .filter(|c| !members.contains(c))
                .collect();
            if extra.is_empty() {
                let mut sub = sub;
                sub.sort();
                return Ok(sub);
            }
            normal_gens.extend(extra);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_elements(g: &Group) -> Vec<Elem> {
        g.subgroup(&g.generators(), u128::MAX).unwrap()
    }

    fn check_axioms(g: &Group) {
        let els = all_elements(g);
        assert_eq!(els.len() as u128, g.order());
        let id = g.identity();
        for a in els.iter().step_by(3) {
            assert_eq!(g.mul(a, &g.inv(a)), id);
            assert_eq!(g.mul(&g.inv(a), a), id);
            for b in els.iter().step_by(5) {
                for c in els.iter().step_by(7) {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn group_laws() {
        check_axioms(&Group::Cyclic { modulus: 9 });
        check_axioms(&Group::Heisenberg { modulus: 3 });
        check_axioms(&Group::Heisenberg { modulus: 9 });
        check_axioms(&Group::Class2 { modulus: 3, rank: 3 });
        check_axioms(&Group::Wreath { p: 3 });
        check_axioms(&Group::Product(vec![
            Group::Cyclic { modulus: 3 },
            Group::Heisenberg { modulus: 3 },
        ]));
    }

    #[test]
    fn heisenberg_commutator_and_center() {
        let h = Group::Heisenberg { modulus: 3 };
        let (x, y) = (vec![1, 0, 0], vec![0, 1, 0]);
        let comm = h.mul(&h.mul(&x, &y), &h.mul(&h.inv(&x), &h.inv(&y)));
        assert_eq!(comm, vec![0, 0, 1]);
        let els = all_elements(&h);
        let center: Vec<_> = els
            .iter()
            .filter(|a| els.iter().all(|b| h.mul(a, b) == h.mul(b, a)))
            .collect();
        assert_eq!(center.len(), 3);
        assert!(center.iter().all(|c| c[0] == 0 && c[1] == 0));
    }

    #[test]
    fn class2_commutators_are_units() {
        let g = Group::Class2 { modulus: 9, rank: 4 };
        let gens = g.generators();
        let mut k = 4;
        for i in 0..4 {
            for j in i + 1..4 {
                let (a, b) = (&gens[i], &gens[j]);
                let comm = g.mul(&g.mul(a, b), &g.mul(&g.inv(a), &g.inv(b)));
                let mut expect = vec![0; 10];
                expect[k] = 1;
                assert_eq!(comm, expect);
                k += 1;
            }
        }
        assert!(g.pow(&gens[0], 9).iter().take(4).all(|&x| x == 0));
    }

    #[test]
    fn quotient_by_center() {
        let h = Group::Heisenberg { modulus: 3 };
        let desc = TargetDesc::Quotient {
            base: Box::new(TargetDesc::Heisenberg { p: 3, s: 1 }),
            normal_generators: vec![vec![0, 0, 1]],
        };
        let q = Group::from_desc(&desc, 1000).unwrap();
        assert_eq!(q.order(), 9);
        let els = all_elements(&q);
        assert_eq!(els.len(), 9);
        for a in &els {
            for b in &els {
                assert_eq!(q.mul(a, b), q.mul(b, a));
            }
        }
        let n = h.normal_closure(&[vec![1, 0, 0]], 1000).unwrap();
        assert_eq!(n.len(), 9);
    }

    #[test]
    fn wreath_is_nonabelian_of_class_three() {
        let w = Group::Wreath { p: 3 };
        assert_eq!(w.order(), 81);
        let gens = w.generators();
        let comm = |a: &Elem, b: &Elem| w.mul(&w.mul(a, b), &w.mul(&w.inv(a), &w.inv(b)));
        let c2 = comm(&gens[0], &gens[1]);
        let c3 = comm(&c2, &gens[1]);
        assert_ne!(c3, w.identity());
        assert_eq!(comm(&c3, &gens[1]), w.identity());
    }
}
