use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::group::{Elem, Group};
use super::PquotError;

/// Size limit for multiplication tables (`3^6`).
pub const TABLE_MAX_ORDER: usize = 729;

type Subgroup = Vec<usize>;

/// A finite group `⟨gens⟩ ≤ group` with a full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    group: Group,
    elems: Vec<Elem>,
    index: HashMap<Elem, usize>,
    gens: Vec<usize>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    p: u64,
}

impl FiniteGroupTable {
    pub fn new(group: Group, gens: &[Elem]) -> Result<Self, PquotError> {
        for g in gens {
            group.check_elem(g)?;
        }
        let elems = group.subgroup(gens, TABLE_MAX_ORDER as u128)?;
        let n = elems.len();
        let p = (2..=n as u64).find(|d| (n as u64).is_multiple_of(*d)).unwrap_or(1);
        let mut m = n;
        while m > 1 {
            if !(m as u64).is_multiple_of(p) {
                return Err(PquotError::Precondition(format!("order {n} is not a prime power")));
            }
            m /= p as usize;
        }
        let index: HashMap<Elem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut mul = vec![0u16; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * n + j] = index[&group.mul(a, b)] as u16;
            }
        }
        let inv = elems.iter().map(|a| index[&group.inv(a)] as u16).collect();
        let gens = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroupTable {
            group,
            elems,
            index,
            gens,
            mul,
            inv,
            p,
        })
    }

    /// The whole of `group`.
    pub fn full(group: Group) -> Result<Self, PquotError> {
        let gens = group.generators();
        Self::new(group, &gens)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn index_of(&self, e: &[i64]) -> Option<usize> {
        self.index.get(e).copied()
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elems.len() + b] as usize
    }

    fn i(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    fn comm(&self, a: usize, b: usize) -> usize {
        self.m(self.m(a, b), self.m(self.i(a), self.i(b)))
    }

    fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.m(acc, a))
    }

    fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.m(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    fn lookup(&self, es: &[Elem], what: &str) -> Result<Vec<usize>, PquotError> {
        es.iter()
            .map(|e| {
                self.index_of(e)
                    .ok_or_else(|| PquotError::Precondition(format!("{what} element {e:?} not in the group")))
            })
            .collect()
    }

    /// Elements `z ∉ N` with `z^p ∈ N` and `[z, g] ∈ N` for all generators:
    /// each gives a normal subgroup `⟨N, z⟩` of index `p` over `N`.
    fn central_steps(&self, n: &[usize]) -> Vec<usize> {
        let member: HashSet<usize> = n.iter().copied().collect();
        (0..self.order())
            .filter(|z| !member.contains(z))
            .filter(|&z| member.contains(&self.pow(z, self.p)))
            .filter(|&z| self.gens.iter().all(|&g| member.contains(&self.comm(z, g))))
            .collect()
    }

    fn extend(&self, n: &[usize], z: usize) -> Subgroup {
        let mut gens = n.to_vec();
        gens.push(z);
        self.closure(&gens)
    }

    /// A chief series built upward through central steps, trying the
    /// `prefer` elements first.
    fn chief_series(&self, prefer: &[usize]) -> Result<ChiefSeries, PquotError> {
        let mut n: Subgroup = vec![0];
        let mut steps = Vec::new();
        let mut orders = vec![1];
        while n.len() < self.order() {
            let cands = self.central_steps(&n);
            let z = prefer
                .iter()
                .copied()
                .find(|z| cands.contains(z))
                .or_else(|| cands.first().copied())
                .ok_or_else(|| PquotError::Bug("p-group quotient with trivial center".into()))?;
            n = self.extend(&n, z);
            steps.push(self.elems[z].clone());
            orders.push(n.len());
        }
        Ok(ChiefSeries { steps, orders })
    }

    fn series_subgroups(&self, s: &ChiefSeries) -> Result<Vec<Subgroup>, PquotError> {
        let steps = self.lookup(&s.steps, "series")?;
        let mut out = vec![vec![0]];
        for i in 0..steps.len() {
            out.push(self.closure(&steps[..=i]));
        }
        Ok(out)
    }
}

/// A chief series `1 = N_0 < N_1 < … < N_m = P`, with
/// `N_i = ⟨steps[0..i]⟩` and `|N_i| = orders[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiefSeries {
    pub steps: Vec<Elem>,
    pub orders: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HigmanWitness {
    pub series_a: ChiefSeries,
    pub series_b: ChiefSeries,
    /// Distinct orders of `U ∩ A_i`; equal to those of `U ∩ B_i`.
    pub u_filtration: Vec<usize>,
}

/// Chief series of `A` and `B` inducing the same filtration on the
/// cyclic common subgroup `U = ⟨u_a⟩ = ⟨u_b⟩`, where `u_a^k ↔ u_b^k`.
pub fn higman_witness(
    a: &FiniteGroupTable,
    b: &FiniteGroupTable,
    u_a: &[i64],
    u_b: &[i64],
) -> Result<HigmanWitness, PquotError> {
    if a.prime() != b.prime() && a.order() > 1 && b.order() > 1 {
        return Err(PquotError::Precondition("groups for different primes".into()));
    }
    let ia = a
        .index_of(u_a)
        .ok_or_else(|| PquotError::Precondition("U is not embedded in A".into()))?;
    let ib = b
        .index_of(u_b)
        .ok_or_else(|| PquotError::Precondition("U is not embedded in B".into()))?;
    let ua = a.closure(&[ia]);
    let ub = b.closure(&[ib]);
    if ua.len() != ub.len() {
        return Err(PquotError::Precondition(format!(
            "generator orders differ: {} vs {}",
            ua.len(),
            ub.len()
        )));
    }
    let filtration = |t: &FiniteGroupTable, u: usize, s: &ChiefSeries| -> Result<BTreeSet<usize>, PquotError> {
        let powers: Vec<usize> = (0..ua.len() as u64).map(|k| t.pow(u, k)).collect();
        Ok(t.series_subgroups(s)?
            .iter()
            .map(|n| powers.iter().filter(|x| n.binary_search(x).is_ok()).count())
            .collect())
    };
    let series_a = a.chief_series(&ua)?;
    let series_b = b.chief_series(&ub)?;
    let fa = filtration(a, ia, &series_a)?;
    let fb = filtration(b, ib, &series_b)?;
    if fa != fb {
        return Err(PquotError::Bug(format!("U-filtrations differ: {fa:?} vs {fb:?}")));
    }
    Ok(HigmanWitness {
        series_a,
        series_b,
        u_filtration: fa.into_iter().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChatzidakisVerdict {
    pub holds: bool,
    pub series: Option<ChiefSeries>,
    /// Distinct normal subgroups visited.
    pub explored: usize,
}

/// Exhaustive search for a chief series `{P_i}` with `f(A ∩ P_i) = B ∩ P_i`
/// and `f(a) ≡ a mod P_{i+1}` for `a ∈ A ∩ P_i`, where `f: A → B` sends
/// `a_gens[i]` to `f_images[i]`.
pub fn chatzidakis_hypothesis_check(
    p: &FiniteGroupTable,
    a_gens: &[Elem],
    b_gens: &[Elem],
    f_images: &[Elem],
) -> Result<ChatzidakisVerdict, PquotError> {
    if a_gens.len() != f_images.len() {
        return Err(PquotError::Precondition("f needs one image per generator of A".into()));
    }
    let ag = p.lookup(a_gens, "A")?;
    let bg = p.lookup(b_gens, "B")?;
    let fg = p.lookup(f_images, "f")?;
    let a = p.closure(&ag);
    let b = p.closure(&bg);
    let mut f: HashMap<usize, usize> = HashMap::from([(0, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &fgi) in ag.iter().zip(&fg) {
            let (y, fy) = (p.m(x, g), p.m(f[&x], fgi));
            match f.get(&y) {
                Some(&prev) if prev != fy => {
                    return Err(PquotError::Precondition("f does not extend to a homomorphism".into()))
                }
                Some(_) => {}
                None => {
                    f.insert(y, fy);
                    queue.push_back(y);
                }
            }
        }
    }
    let image: BTreeSet<usize> = f.values().copied().collect();
    if image.len() != a.len() || image.into_iter().collect::<Vec<_>>() != b {
        return Err(PquotError::Precondition("f is not an isomorphism A → B".into()));
    }
    let intersect =
        |s: &[usize], n: &[usize]| -> Vec<usize> { s.iter().copied().filter(|x| n.binary_search(x).is_ok()).collect() };
    // Level check for the step lower ⊂ upper.
    let step_ok = |lower: &[usize], upper: &[usize]| -> bool {
        let au = intersect(&a, upper);
        let mut fau: Vec<usize> = au.iter().map(|x| f[x]).collect();
        fau.sort_unstable();
        fau == intersect(&b, upper) && au.iter().all(|&x| lower.binary_search(&p.m(f[&x], p.i(x))).is_ok())
    };
    let mut dead: HashSet<Subgroup> = HashSet::new();
    let mut path: Vec<usize> = Vec::new();
    fn dfs(
        p: &FiniteGroupTable,
        n: &Subgroup,
        path: &mut Vec<usize>,
        dead: &mut HashSet<Subgroup>,
        step_ok: &dyn Fn(&[usize], &[usize]) -> bool,
    ) -> bool {
        if n.len() == p.order() {
            return true;
        }
        if dead.contains(n) {
            return false;
        }
        let mut tried: HashSet<Subgroup> = HashSet::new();
        for z in p.central_steps(n) {
            let next = p.extend(n, z);
            if !tried.insert(next.clone()) || !step_ok(n, &next) {
                continue;
            }
            path.push(z);
            if dfs(p, &next, path, dead, step_ok) {
                return true;
            }
            path.pop();
        }
        dead.insert(n.clone());
        false
    }
    let holds = dfs(p, &vec![0], &mut path, &mut dead, &step_ok);
    let series = holds.then(|| {
        let mut orders = vec![1];
        for i in 0..path.len() {
            orders.push(p.closure(&path[..=i]).len());
        }
        ChiefSeries {
            steps: path.iter().map(|&z| p.elems[z].clone()).collect(),
            orders,
        }
    });
    Ok(ChatzidakisVerdict {
        holds,
        series,
        explored: dead.len() + usize::from(holds),
    })
}
