//! Finite words, lasso words `u·v^ω` and block-pattern words `A·B₁·A·B₂·A·…`.
//!
//! Positions are 1-based throughout: `letter_at(w, 1)` is the first letter.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::grid::GridWord;

pub type Letter = char;

/// The separator letter of the block-pattern words.
pub const SEP: Letter = 'A';

/// An ordered set of single-character letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Self> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter '{c}'")));
            }
        }
        Ok(Self { letters })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    /// `{0, 1}`
    pub fn binary() -> Self {
        Self { letters: vec!['0', '1'] }
    }

    /// `{0, 1, A}`
    pub fn gamma() -> Self {
        Self { letters: vec!['0', '1', SEP] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn contains(&self, c: Letter) -> bool {
        self.letters.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|c| !self.contains(**c)) {
            Some(c) => Err(Error::ForeignLetter { letter: *c, alphabet: self.to_string() }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A finite word; the empty word is λ.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord(pub Vec<Letter>);

impl FiniteWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&str> for FiniteWord {
    fn from(s: &str) -> Self {
        Self(s.chars().collect())
    }
}

impl From<Vec<Letter>> for FiniteWord {
    fn from(v: Vec<Letter>) -> Self {
        Self(v)
    }
}

impl std::ops::Deref for FiniteWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    prefix: Vec<Letter>,
    period: Vec<Letter>,
}

impl LassoWord {
    pub fn new(prefix: impl Into<FiniteWord>, period: impl Into<FiniteWord>) -> Result<Self> {
        let period = period.into().0;
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self { prefix: prefix.into().0, period })
    }

    /// Parses the `prefix|period` syntax, checking letters against `alphabet`.
    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<Self> {
        let (prefix, period) = s
            .split_once('|')
            .ok_or_else(|| Error::LassoSyntax(format!("missing '|' in {s:?}")))?;
        if period.contains('|') {
            return Err(Error::LassoSyntax(format!("more than one '|' in {s:?}")));
        }
        let w = Self::new(prefix, period).map_err(|_| Error::LassoSyntax(format!("empty period in {s:?}")))?;
        alphabet.check_word(&w.prefix)?;
        alphabet.check_word(&w.period)?;
        Ok(w)
    }

    /// The constant word `c^ω`.
    pub fn constant(c: Letter) -> Self {
        Self { prefix: Vec::new(), period: vec![c] }
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    pub fn letter_at(&self, n: usize) -> Letter {
        assert!(n >= 1, "positions are 1-based");
        let i = n - 1;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn prefix_of(&self, n: usize) -> FiniteWord {
        FiniteWord((1..=n).map(|i| self.letter_at(i)).collect())
    }

    /// Minimal period (primitive root), then minimal prefix by rotating the
    /// period backwards over trailing prefix letters.
    pub fn normalize(&self) -> Self {
        let period = primitive_root(&self.period).to_vec();
        let mut prefix = self.prefix.clone();
        let mut period = period;
        while let (Some(&p), Some(&q)) = (prefix.last(), period.last()) {
            if p != q {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Self { prefix, period }
    }

    pub fn is_normal(&self) -> bool {
        *self == self.normalize()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.prefix.iter().chain(self.period.iter().cycle()).copied()
    }

    pub fn contains_letter(&self, c: Letter) -> bool {
        self.prefix.contains(&c) || self.period.contains(&c)
    }

    /// First 1-based index where the two words differ, if they differ.
    pub fn first_difference(&self, other: &LassoWord) -> Option<usize> {
        let bound = self.prefix.len().max(other.prefix.len()) + lcm(self.period.len(), other.period.len());
        self.letters()
            .zip(other.letters())
            .take(bound)
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.prefix {
            write!(f, "{c}")?;
        }
        write!(f, "|")?;
        self.period.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// Same ω-word, compared through normal forms.
pub fn lasso_equal(a: &LassoWord, b: &LassoWord) -> bool {
    a.normalize() == b.normalize()
}

fn primitive_root(w: &[Letter]) -> &[Letter] {
    let n = w.len();
    (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (d..n).all(|i| w[i] == w[i - d]))
        .map(|d| &w[..d])
        .unwrap_or(w)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// What a block word is known to be. Decision procedures that need the
/// global structure of a block word (the complement conditions, membership
/// in the Π₃⁰-complete set) dispatch on this tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockShape {
    /// `A·0·A·0²·A·0³·…`
    Alpha,
    /// The antidiagonal coding of a grid word.
    HImage(GridWord),
    Custom(String),
}

type BlockFn = dyn Fn(usize) -> FiniteWord + Send + Sync;
type BlockLenFn = dyn Fn(usize) -> usize + Send + Sync;

/// The word `A·B₁·A·B₂·A·…` for a computable block function `n ↦ Bₙ`.
#[derive(Clone)]
pub struct BlockWord {
    shape: BlockShape,
    block_fn: Arc<BlockFn>,
    block_len_fn: Arc<BlockLenFn>,
    // starts[n - 1] = 1-based position of the separator preceding block n
    starts: Arc<RwLock<Vec<usize>>>,
}

impl BlockWord {
    pub fn new<F, L>(shape: BlockShape, block_fn: F, block_len_fn: L) -> Self
    where
        F: Fn(usize) -> FiniteWord + Send + Sync + 'static,
        L: Fn(usize) -> usize + Send + Sync + 'static,
    {
        Self {
            shape,
            block_fn: Arc::new(block_fn),
            block_len_fn: Arc::new(block_len_fn),
            starts: Arc::new(RwLock::new(vec![1])),
        }
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn block(&self, n: usize) -> FiniteWord {
        assert!(n >= 1, "blocks are numbered from 1");
        (self.block_fn)(n)
    }

    pub fn block_len(&self, n: usize) -> usize {
        assert!(n >= 1, "blocks are numbered from 1");
        (self.block_len_fn)(n)
    }

    /// Position of the separator that opens block `n`.
    pub fn block_start(&self, n: usize) -> usize {
        {
            let starts = self.starts.read().expect("offset cache poisoned");
            if let Some(&s) = starts.get(n - 1) {
                return s;
            }
        }
        let mut starts = self.starts.write().expect("offset cache poisoned");
        while starts.len() < n {
            let k = starts.len();
            let next = starts[k - 1] + 1 + self.block_len(k);
            starts.push(next);
        }
        starts[n - 1]
    }

    /// Block index `n` whose separator-plus-block span contains position `pos`.
    fn locate(&self, pos: usize) -> usize {
        // Grow the cache until it covers pos, then binary search.
        let mut hi = 1;
        while self.block_start(hi) <= pos {
            hi *= 2;
        }
        let starts = self.starts.read().expect("offset cache poisoned");
        starts[..hi].partition_point(|&s| s <= pos)
    }

    pub fn letter_at(&self, n: usize) -> Letter {
        assert!(n >= 1, "positions are 1-based");
        let b = self.locate(n);
        let offset = n - self.block_start(b);
        if offset == 0 {
            SEP
        } else {
            self.block(b)[offset - 1]
        }
    }

    pub fn prefix_of(&self, n: usize) -> FiniteWord {
        let mut out = Vec::with_capacity(n);
        let mut b = 1;
        while out.len() < n {
            out.push(SEP);
            out.extend(self.block(b).iter().take(n - out.len()));
            b += 1;
        }
        FiniteWord(out)
    }
}

impl fmt::Debug for BlockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlockWord").field("shape", &self.shape).finish_non_exhaustive()
    }
}

/// A finitely described infinite word.
#[derive(Debug, Clone)]
pub enum OmegaWord {
    Lasso(LassoWord),
    Block(BlockWord),
}

impl OmegaWord {
    pub fn letter_at(&self, n: usize) -> Letter {
        match self {
            OmegaWord::Lasso(w) => w.letter_at(n),
            OmegaWord::Block(w) => w.letter_at(n),
        }
    }

    pub fn prefix_of(&self, n: usize) -> FiniteWord {
        match self {
            OmegaWord::Lasso(w) => w.prefix_of(n),
            OmegaWord::Block(w) => w.prefix_of(n),
        }
    }

    pub fn as_lasso(&self) -> Option<&LassoWord> {
        match self {
            OmegaWord::Lasso(w) => Some(w),
            OmegaWord::Block(_) => None,
        }
    }
}

impl From<LassoWord> for OmegaWord {
    fn from(w: LassoWord) -> Self {
        OmegaWord::Lasso(w)
    }
}

impl From<BlockWord> for OmegaWord {
    fn from(w: BlockWord) -> Self {
        OmegaWord::Block(w)
    }
}

/// Letter cache over an [`OmegaWord`], extended on demand. Searches over
/// absolute positions read through this instead of re-deriving block
/// offsets for every step.
pub(crate) struct Tape<'a> {
    word: &'a OmegaWord,
    cache: Vec<Letter>,
}

impl<'a> Tape<'a> {
    pub(crate) fn new(word: &'a OmegaWord) -> Self {
        Self { word, cache: Vec::new() }
    }

    /// Letter at 0-based position `i`.
    pub(crate) fn at(&mut self, i: usize) -> Letter {
        if i >= self.cache.len() {
            let want = (i + 1).max(self.cache.len() * 2).max(64);
            self.cache = self.word.prefix_of(want).0;
        }
        self.cache[i]
    }

    /// Whether `label` occurs at 0-based position `i`.
    pub(crate) fn matches(&mut self, i: usize, label: &[Letter]) -> bool {
        label.iter().enumerate().all(|(k, &c)| self.at(i + k) == c)
    }
}

/// Finite position space of a normalized lasso: positions `0..len` where
/// the prefix positions are absolute and the rest are period phases.
pub(crate) struct Track {
    letters: Vec<Letter>,
    loop_start: usize,
}

impl Track {
    pub(crate) fn new(w: &LassoWord) -> Self {
        let w = w.normalize();
        let loop_start = w.prefix.len();
        let mut letters = w.prefix;
        letters.extend(w.period);
        Self { letters, loop_start }
    }

    pub(crate) fn len(&self) -> usize {
        self.letters.len()
    }

    pub(crate) fn letter(&self, p: usize) -> Letter {
        self.letters[p]
    }

    pub(crate) fn next(&self, p: usize) -> usize {
        if p + 1 < self.letters.len() {
            p + 1
        } else {
            self.loop_start
        }
    }

    /// Position after reading `label` from `p`, if it matches.
    pub(crate) fn advance(&self, mut p: usize, label: &[Letter]) -> Option<usize> {
        for &c in label {
            if self.letters[p] != c {
                return None;
            }
            p = self.next(p);
        }
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lasso(s: &str) -> LassoWord {
        LassoWord::parse(s, &Alphabet::gamma()).unwrap()
    }

    fn staircase() -> BlockWord {
        BlockWord::new(
            BlockShape::Custom("staircase".into()),
            |n| FiniteWord(vec!['0'; n]),
            |n| n,
        )
    }

    #[test]
    fn letter_at_examples() {
        assert_eq!(lasso("A|0A").letter_at(1), 'A');
        assert_eq!(lasso("A|0A").letter_at(4), '0');
        let a = staircase();
        assert_eq!(a.letter_at(6), 'A');
        assert_eq!(a.letter_at(1), 'A');
        assert_eq!(a.letter_at(3), 'A');
        assert_eq!(a.letter_at(5), '0');
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(staircase().prefix_of(8).to_string(), "A0A00A00");
        assert_eq!(lasso("|01").prefix_of(5).to_string(), "01010");
        assert!(lasso("|01").prefix_of(0).is_empty());
        assert!(staircase().prefix_of(0).is_empty());
    }

    #[test]
    fn lasso_equal_examples() {
        assert!(lasso_equal(&lasso("|0"), &lasso("|00")));
        assert!(lasso_equal(&lasso("|01"), &lasso("0|10")));
        assert!(!lasso_equal(&lasso("|01"), &lasso("|0")));
    }

    #[test]
    fn normal_form() {
        assert_eq!(lasso("0101|01").normalize(), lasso("|01"));
        assert_eq!(lasso("A0A0|A0").normalize(), lasso("|A0"));
        assert!(lasso("A0A0|0A").is_normal());
        assert_eq!(lasso("1|0000").normalize(), lasso("1|0"));
    }

    #[test]
    fn parse_errors() {
        let g = Alphabet::gamma();
        assert!(matches!(LassoWord::parse("01", &g), Err(Error::LassoSyntax(_))));
        assert!(matches!(LassoWord::parse("01|", &g), Err(Error::LassoSyntax(_))));
        assert!(matches!(LassoWord::parse("0|1|0", &g), Err(Error::LassoSyntax(_))));
        assert!(matches!(LassoWord::parse("|2", &g), Err(Error::ForeignLetter { .. })));
    }

    #[test]
    fn alphabet_invariants() {
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("0A0").is_err());
        assert_eq!(Alphabet::parse("01A").unwrap(), Alphabet::gamma());
    }

    #[test]
    fn block_letter_access_matches_prefix() {
        let w = staircase();
        let p = w.prefix_of(2000);
        // query out of order to exercise the cache
        for n in [1999, 3, 1000, 1, 57, 2000] {
            assert_eq!(w.letter_at(n), p[n - 1], "position {n}");
        }
    }

    fn lasso_strategy() -> impl Strategy<Value = LassoWord> {
        let letter = prop_oneof![Just('0'), Just('1'), Just('A')];
        (
            proptest::collection::vec(letter.clone(), 0..5),
            proptest::collection::vec(letter, 1..5),
        )
            .prop_map(|(u, v)| LassoWord::new(u, v).unwrap())
    }

    proptest! {
        #[test]
        fn periodic_after_prefix(w in lasso_strategy(), n in 1usize..40) {
            let nf = w.normalize();
            if n > nf.prefix().len() {
                prop_assert_eq!(w.letter_at(n), w.letter_at(n + nf.period().len()));
            }
        }

        #[test]
        fn prefix_extends_by_one_letter(w in lasso_strategy(), n in 0usize..40) {
            let mut p = w.prefix_of(n).0;
            p.push(w.letter_at(n + 1));
            prop_assert_eq!(p, w.prefix_of(n + 1).0);
        }

        #[test]
        fn equality_matches_bounded_prefix(a in lasso_strategy(), b in lasso_strategy()) {
            let n = a.prefix().len() + b.prefix().len() + 2 * lcm(a.period().len(), b.period().len());
            prop_assert_eq!(lasso_equal(&a, &b), a.prefix_of(n) == b.prefix_of(n));
        }

        #[test]
        fn rotation_is_absorbed(w in lasso_strategy()) {
            // u·v^ω = (u·v₁)·(v₂…v_k·v₁)^ω
            let mut prefix = w.prefix().to_vec();
            prefix.push(w.period()[0]);
            let mut period = w.period().to_vec();
            period.rotate_left(1);
            let rotated = LassoWord::new(prefix, period).unwrap();
            prop_assert!(lasso_equal(&w, &rotated));
            prop_assert_eq!(w.normalize(), rotated.normalize());
        }

        #[test]
        fn first_difference_is_exact(a in lasso_strategy(), b in lasso_strategy()) {
            let n = a.prefix().len() + b.prefix().len() + 2 * lcm(a.period().len(), b.period().len());
            let brute = (1..=n).find(|&i| a.letter_at(i) != b.letter_at(i));
            prop_assert_eq!(a.first_difference(&b), brute);
        }
    }
}
