//! Free-group words over named alphabets.
//!
//! Every [`Word`] is kept freely reduced, so structural equality is group
//! equality in the free group.

mod abelian;
mod endo;
mod parse;

pub use abelian::{abelianize_mod_l, is_prime, AbelianReport};
pub use endo::FreeEndo;
pub use parse::{parse_pairs, parse_word};

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index {index} out of range for alphabet of rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("alphabet mismatch: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("alphabet must have at least one generator")]
    EmptyAlphabet,
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("{0} is neither 0 nor a prime")]
    NotPrime(u64),
    #[error("generator `{0}` has no image")]
    UnmappedGenerator(String),
}

/// An ordered list of distinct generator labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(char::is_whitespace) || n.contains('^') {
                return Err(WordError::MalformedToken(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(WordError::DuplicateLabel(n.clone()));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Single generator as a word.
    pub fn generator(self: &Arc<Self>, index: usize) -> Word {
        assert!(index < self.rank(), "generator index out of range");
        Word {
            alphabet: Arc::clone(self),
            letters: vec![Letter::new(index, false)],
        }
    }

    pub fn generator_by_name(self: &Arc<Self>, name: &str) -> Result<Word, WordError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
        Ok(self.generator(i))
    }

    pub fn identity(self: &Arc<Self>) -> Word {
        Word {
            alphabet: Arc::clone(self),
            letters: Vec::new(),
        }
    }

    pub fn same_as(&self, other: &Alphabet) -> bool {
        std::ptr::eq(self, other) || self.names == other.names
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

/// A generator or its inverse, packed as `±(index + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        let v = index as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn index(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn sign(self) -> i64 {
        if self.0 < 0 {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

/// A freely reduced word.
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

/// The four binary operations exposed by [`word_algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOp {
    Multiply,
    /// Inverts the first operand; the second is only checked for alphabet.
    Invert,
    /// `v · u · v⁻¹`
    Conjugate,
    /// `u · v · u⁻¹ · v⁻¹`
    Commutator,
}

pub fn word_algebra(op: WordOp, u: &Word, v: &Word) -> Result<Word, WordError> {
    u.check_alphabet(v)?;
    Ok(match op {
        WordOp::Multiply => u.concat(v),
        WordOp::Invert => u.inverse(),
        WordOp::Conjugate => u.conjugated_by(v),
        WordOp::Commutator => u.commutator(v),
    })
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Word {
    /// Freely reduces a raw letter sequence.
    pub fn reduce(alphabet: &Arc<Alphabet>, raw: &[Letter]) -> Result<Self, WordError> {
        let rank = alphabet.rank();
        let mut letters = Vec::with_capacity(raw.len());
        for &l in raw {
            if l.0 == 0 || l.index() >= rank {
                return Err(WordError::IndexOutOfRange {
                    index: if l.0 == 0 { usize::MAX } else { l.index() },
                    rank,
                });
            }
            push_reduced(&mut letters, l);
        }
        Ok(Self {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    /// Builds a word from `(generator index, exponent)` pairs.
    pub fn from_powers(alphabet: &Arc<Alphabet>, powers: &[(usize, i64)]) -> Result<Self, WordError> {
        let mut raw = Vec::new();
        for &(g, e) in powers {
            let l = Letter::new(g, e < 0);
            raw.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        Self::reduce(alphabet, &raw)
    }

    /// Builds a word from `(label, exponent)` pairs.
    pub fn from_named(alphabet: &Arc<Alphabet>, powers: &[(&str, i64)]) -> Result<Self, WordError> {
        let idx = powers
            .iter()
            .map(|&(n, e)| {
                alphabet
                    .index_of(n)
                    .map(|i| (i, e))
                    .ok_or_else(|| WordError::UnknownGenerator(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_powers(alphabet, &idx)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn check_alphabet(&self, other: &Word) -> Result<(), WordError> {
        if self.alphabet.same_as(&other.alphabet) {
            Ok(())
        } else {
            Err(WordError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            })
        }
    }

    fn assert_same(&self, other: &Word) {
        assert!(
            self.alphabet.same_as(&other.alphabet),
            "word alphabets differ: [{}] vs [{}]",
            self.alphabet,
            other.alphabet
        );
    }

    /// Product `self · other`. Panics on alphabet mismatch; use
    /// [`word_algebra`] for a checked version.
    pub fn concat(&self, other: &Word) -> Word {
        self.assert_same(other);
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            alphabet: Arc::clone(&self.alphabet),
            letters,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `by · self · by⁻¹`
    pub fn conjugated_by(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.inverse())
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`
    pub fn commutator(&self, other: &Word) -> Word {
        self.concat(other).concat(&self.inverse()).concat(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let (core, conj) = base.cyclic_reduce();
        let mut letters = Vec::with_capacity(core.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&core.letters);
        }
        let core_pow = Word {
            alphabet: Arc::clone(&self.alphabet),
            letters,
        };
        core_pow.conjugated_by(&conj)
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut i = 0;
        while 2 * i + 1 < n && self.letters[i] == self.letters[n - 1 - i].inverse() {
            i += 1;
        }
        let core = Word {
            alphabet: Arc::clone(&self.alphabet),
            letters: self.letters[i..n - i].to_vec(),
        };
        let conj = Word {
            alphabet: Arc::clone(&self.alphabet),
            letters: self.letters[..i].to_vec(),
        };
        (core, conj)
    }

    pub fn cyclic_len(&self) -> usize {
        self.cyclic_reduce().0.len()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) => self.letters.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    /// Cyclic rotation by `k` letters to the left. Only meaningful on
    /// cyclically reduced words, where the result stays reduced.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word::reduce(&self.alphabet, &letters).expect("letters already valid")
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, index: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.index() == index)
            .map(|l| l.sign())
            .sum()
    }

    /// Rewrites the word into another alphabet, matching generators by label.
    pub fn translate(&self, target: &Arc<Alphabet>) -> Result<Word, WordError> {
        if self.alphabet.same_as(target) {
            return Ok(Word {
                alphabet: Arc::clone(target),
                letters: self.letters.clone(),
            });
        }
        let map = self
            .alphabet
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect::<Vec<_>>();
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let j = map[l.index()].ok_or_else(|| WordError::UnknownGenerator(self.alphabet.name(l.index()).into()))?;
            letters.push(Letter::new(j, l.is_inverse()));
        }
        Ok(Word {
            alphabet: Arc::clone(target),
            letters,
        })
    }

    /// Run-length form `(generator index, exponent)`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.index() && (*e > 0) == !l.is_inverse() => *e += l.sign(),
                _ => out.push((l.index(), l.sign())),
            }
        }
        out
    }

    /// Run-length form with labels, the JSON wire representation.
    pub fn to_pairs(&self) -> Vec<(String, i64)> {
        self.syllables()
            .into_iter()
            .map(|(g, e)| (self.alphabet.name(g).to_string(), e))
            .collect()
    }

    pub fn generators_used(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.letters.iter().map(|l| l.index()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `Some(k)` iff `self = u^k`.
    pub fn power_of(&self, u: &Word) -> Option<i64> {
        self.assert_same(u);
        if self.is_identity() {
            return Some(0);
        }
        if u.is_identity() {
            return None;
        }
        let (core, conj) = u.cyclic_reduce();
        let outer = 2 * conj.len();
        if self.len() <= outer {
            return None;
        }
        let inner = self.len() - outer;
        if !inner.is_multiple_of(core.len()) {
            return None;
        }
        let k = (inner / core.len()) as i64;
        [k, -k].into_iter().find(|&k| u.pow(k) == *self)
    }

    /// Shortest `v` and largest `m ≥ 1` with `self = v^m`. The identity
    /// returns `(identity, 1)`.
    pub fn primitive_root(&self) -> (Word, i64) {
        if self.is_identity() {
            return (self.clone(), 1);
        }
        let (core, conj) = self.cyclic_reduce();
        let n = core.len();
        for period in 1..=n {
            if n % period != 0 {
                continue;
            }
            let repeats = core.letters.chunks(period).all(|c| c == &core.letters[..period]);
            if repeats {
                let root = Word {
                    alphabet: Arc::clone(&self.alphabet),
                    letters: core.letters[..period].to_vec(),
                };
                return (root.conjugated_by(&conj), (n / period) as i64);
            }
        }
        unreachable!("period n always matches")
    }
}

/// Conjugacy in the free group: cyclic cores are rotations of each other.
pub fn conjugate_in_free(u: &Word, v: &Word) -> bool {
    u.assert_same(v);
    let (cu, _) = u.cyclic_reduce();
    let (cv, _) = v.cyclic_reduce();
    if cu.len() != cv.len() {
        return false;
    }
    if cu.is_identity() {
        return true;
    }
    let doubled: Vec<Letter> = cu.letters.iter().chain(cu.letters.iter()).copied().collect();
    doubled.windows(cv.len()).any(|w| w == cv.letters.as_slice())
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && self.alphabet.same_as(&other.alphabet)
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.syllables().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.alphabet.name(g);
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}
