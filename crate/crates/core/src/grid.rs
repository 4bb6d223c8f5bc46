//! ω²-words over {0,1} described column-wise, the set P of grids whose
//! columns each carry finitely many 1s, and the antidiagonal coding h.
//!
//! A [`GridWord`] has a default column and finitely many overridden columns,
//! every column being a lasso. Entry `(m, n)` is row `n` of column `m`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, BlockShape, BlockWord, FiniteWord, LassoWord, Letter, OmegaWord, SEP};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridWord {
    default: LassoWord,
    overrides: BTreeMap<usize, LassoWord>,
}

/// Where the 1s of a column stop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastOne {
    Never,
    /// 1-based row of the last 1.
    Row(usize),
    Infinite,
}

impl GridWord {
    /// Columns are stored in normal form; overrides equal to the default are
    /// dropped, so derived equality is equality of ω²-words.
    pub fn new(default: LassoWord, overrides: BTreeMap<usize, LassoWord>) -> Result<Self> {
        let bin = Alphabet::binary();
        let check = |w: &LassoWord, what: &str| {
            bin.check_word(w.prefix())
                .and_then(|_| bin.check_word(w.period()))
                .map_err(|e| Error::InvalidGrid(format!("{what}: {e}")))
        };
        check(&default, "default column")?;
        let default = default.normalize();
        let mut cols = BTreeMap::new();
        for (m, w) in overrides {
            if m == 0 {
                return Err(Error::InvalidGrid("column indices start at 1".into()));
            }
            check(&w, &format!("column {m}"))?;
            let w = w.normalize();
            if w != default {
                cols.insert(m, w);
            }
        }
        Ok(Self { default, overrides: cols })
    }

    pub fn zero() -> Self {
        Self { default: LassoWord::constant('0'), overrides: BTreeMap::new() }
    }

    pub fn with_column(mut self, m: usize, column: LassoWord) -> Result<Self> {
        let mut overrides = std::mem::take(&mut self.overrides);
        overrides.insert(m, column);
        Self::new(self.default, overrides)
    }

    pub fn default_column(&self) -> &LassoWord {
        &self.default
    }

    pub fn overrides(&self) -> &BTreeMap<usize, LassoWord> {
        &self.overrides
    }

    /// Largest overridden column index, 0 when there is none.
    pub fn max_override(&self) -> usize {
        self.overrides.keys().next_back().copied().unwrap_or(0)
    }

    pub fn column(&self, m: usize) -> &LassoWord {
        assert!(m >= 1, "columns are 1-based");
        self.overrides.get(&m).unwrap_or(&self.default)
    }

    pub fn entry(&self, m: usize, n: usize) -> Letter {
        self.column(m).letter_at(n)
    }

    /// Every column has finitely many 1s.
    pub fn in_p(&self) -> bool {
        std::iter::once(&self.default)
            .chain(self.overrides.values())
            .all(|c| !c.period().contains(&'1'))
    }

    pub fn last_one(&self, m: usize) -> LastOne {
        let c = self.column(m);
        if c.period().contains(&'1') {
            LastOne::Infinite
        } else {
            match c.prefix().iter().rposition(|&l| l == '1') {
                Some(i) => LastOne::Row(i + 1),
                None => LastOne::Never,
            }
        }
    }

    /// `U_q = x(q−1,1)·x(q−2,2)·…·x(1,q−1)`, of length `q − 1`.
    pub fn antidiagonal(&self, q: usize) -> FiniteWord {
        assert!(q >= 2, "antidiagonals start at q = 2");
        FiniteWord((1..q).map(|n| self.entry(q - n, n)).collect())
    }

    /// `h(x) = A·U₂·A·U₃·A·…`; block `n` is `U_{n+1}`.
    pub fn encode_h(&self) -> OmegaWord {
        let x = self.clone();
        OmegaWord::Block(BlockWord::new(
            BlockShape::HImage(self.clone()),
            move |n| x.antidiagonal(n + 1),
            |n| n,
        ))
    }

    /// The exponent `p` of `d(x, y) = 2^{−p}`: the least `i + j` with
    /// `x(i, j) ≠ y(i, j)`. Absent when the grids are equal.
    pub fn distance_exponent(&self, other: &GridWord) -> Option<usize> {
        let last = self.max_override().max(other.max_override());
        let mut best: Option<usize> = None;
        let mut consider = |p: usize| best = Some(best.map_or(p, |b| b.min(p)));
        for m in 1..=last {
            if let Some(row) = self.column(m).first_difference(other.column(m)) {
                consider(m + row);
            }
        }
        // Every column past `last` is a default column on both sides.
        if let Some(row) = self.default.first_difference(&other.default) {
            consider(last + 1 + row);
        }
        best
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: GridJson = serde_json::from_str(s)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GridJson::from(self)).expect("grid json is always serializable")
    }
}

impl fmt::Display for GridWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "default {}", self.default)?;
        for (m, c) in &self.overrides {
            write!(f, ", col {m} = {c}")?;
        }
        Ok(())
    }
}

/// The on-disk grid format: `{"default": "<lasso>", "columns": {"<m>": "<lasso>"}}`.
#[derive(Debug, Serialize, Deserialize)]
struct GridJson {
    default: String,
    #[serde(default)]
    columns: BTreeMap<String, String>,
}

impl TryFrom<GridJson> for GridWord {
    type Error = Error;

    fn try_from(raw: GridJson) -> Result<Self> {
        let bin = Alphabet::binary();
        let default = LassoWord::parse(&raw.default, &bin)?;
        let mut overrides = BTreeMap::new();
        for (k, v) in raw.columns {
            let m: usize = k
                .parse()
                .map_err(|_| Error::InvalidGrid(format!("column key {k:?} is not a positive integer")))?;
            if overrides.insert(m, LassoWord::parse(&v, &bin)?).is_some() {
                return Err(Error::InvalidGrid(format!("column {m} given twice")));
            }
        }
        GridWord::new(default, overrides)
    }
}

impl From<&GridWord> for GridJson {
    fn from(x: &GridWord) -> Self {
        GridJson {
            default: x.default.to_string(),
            columns: x.overrides.iter().map(|(m, c)| (m.to_string(), c.to_string())).collect(),
        }
    }
}

/// Entries recovered from a finite prefix of an h-image.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialGrid(pub BTreeMap<(usize, usize), Letter>);

impl PartialGrid {
    pub fn get(&self, m: usize, n: usize) -> Option<Letter> {
        self.0.get(&(m, n)).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Letters on which `h(x)` and `h(y)` agree when `d(x, y) = 2^{−p}`: the
/// blocks `U₂ … U_{p−1}` with their separators and the separator opening `U_p`.
pub fn agreement_bound(p: usize) -> usize {
    (p - 1) * p / 2
}

/// `h(x)` and `h(y)` differ within this many letters when `d(x, y) = 2^{−p}`;
/// the block `U_p` ends at `(p − 1)p/2 + p − 1`.
pub fn separation_bound(p: usize) -> usize {
    p * (p + 1) / 2
}

/// Reads the complete blocks of a prefix of `A·U₂·A·U₃·A·…` back into grid
/// entries. The trailing incomplete block is checked for length but not read.
pub fn decode_h_prefix(w: &[Letter]) -> Result<PartialGrid> {
    let mut grid = PartialGrid::default();
    if w.is_empty() {
        return Ok(grid);
    }
    if w[0] != SEP {
        return Err(Error::MalformedPrefix(format!("must start with {SEP}, found '{}'", w[0])));
    }
    let mut blocks = w[1..].split(|&c| c == SEP).peekable();
    let mut n = 1;
    while let Some(block) = blocks.next() {
        let complete = blocks.peek().is_some();
        if let Some(c) = block.iter().find(|c| **c != '0' && **c != '1') {
            return Err(Error::MalformedPrefix(format!("letter '{c}' in block {n}")));
        }
        if block.len() > n || (complete && block.len() != n) {
            return Err(Error::MalformedPrefix(format!("block {n} has length {}", block.len())));
        }
        if complete {
            // block n = U_{n+1}: its i-th letter is x(n + 1 − i, i)
            for (i, &c) in block.iter().enumerate() {
                grid.0.insert((n - i, i + 1), c);
            }
        }
        n += 1;
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lasso(s: &str) -> LassoWord {
        LassoWord::parse(s, &Alphabet::binary()).unwrap()
    }

    fn col2(s: &str) -> GridWord {
        GridWord::zero().with_column(2, lasso(s)).unwrap()
    }

    #[test]
    fn entry_examples() {
        assert_eq!(GridWord::zero().entry(3, 1), '0');
        assert_eq!(col2("|1").entry(2, 5), '1');
        assert_eq!(col2("11|0").entry(2, 3), '0');
        assert_eq!(col2("11|0").entry(2, 2), '1');
    }

    #[test]
    fn column_examples() {
        assert_eq!(GridWord::zero().column(7), &lasso("|0"));
        assert_eq!(col2("11|0").column(2), &lasso("11|0"));
    }

    #[test]
    fn in_p_examples() {
        assert!(GridWord::zero().in_p());
        assert!(!col2("|1").in_p());
        assert!(col2("11|0").in_p());
        let all_ones = GridWord::new(lasso("|1"), BTreeMap::new()).unwrap();
        assert!(!all_ones.in_p());
        let fixed = all_ones.with_column(1, lasso("|0")).unwrap();
        assert!(!fixed.in_p());
    }

    #[test]
    fn last_one_rows() {
        let x = col2("0110|0").with_column(3, lasso("0|01")).unwrap();
        assert_eq!(x.last_one(1), LastOne::Never);
        assert_eq!(x.last_one(2), LastOne::Row(3));
        assert_eq!(x.last_one(3), LastOne::Infinite);
    }

    #[test]
    fn antidiagonal_examples() {
        assert_eq!(GridWord::zero().antidiagonal(4).to_string(), "000");
        let x = GridWord::zero().with_column(1, lasso("01|0")).unwrap();
        assert_eq!(x.antidiagonal(3).to_string(), "01");
        for q in 2..50 {
            assert_eq!(x.antidiagonal(q).len(), q - 1);
        }
    }

    #[test]
    fn encode_examples() {
        assert_eq!(GridWord::zero().encode_h().prefix_of(10).to_string(), "A0A00A000A");
        let x = GridWord::zero().with_column(1, lasso("1|0")).unwrap();
        assert!(x.encode_h().prefix_of(3).to_string().starts_with("A1A"));
        if let OmegaWord::Block(b) = x.encode_h() {
            for n in 1..30 {
                assert_eq!(b.block_len(n), n);
                assert_eq!(b.block(n).len(), n);
            }
        } else {
            panic!("h-image must be a block word");
        }
    }

    #[test]
    fn decode_examples() {
        let g = decode_h_prefix(&"A0A01A".chars().collect::<Vec<_>>()).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.get(1, 1), Some('0'));
        assert_eq!(g.get(2, 1), Some('0'));
        assert_eq!(g.get(1, 2), Some('1'));
        assert!(decode_h_prefix(&['A']).unwrap().is_empty());
        assert!(matches!(decode_h_prefix(&['A', '0', '0']), Err(Error::MalformedPrefix(_))));
        assert!(matches!(decode_h_prefix(&['0']), Err(Error::MalformedPrefix(_))));
        assert!(matches!(decode_h_prefix(&"A0A0A".chars().collect::<Vec<_>>()), Err(Error::MalformedPrefix(_))));
    }

    #[test]
    fn distance_examples() {
        let x = GridWord::zero();
        assert_eq!(x.distance_exponent(&x), None);
        let y = GridWord::zero().with_column(1, lasso("1|0")).unwrap();
        assert_eq!(x.distance_exponent(&y), Some(2));
        let z = GridWord::zero()
            .with_column(2, lasso("001|0"))
            .unwrap()
            .with_column(4, lasso("1|0"))
            .unwrap();
        assert_eq!(x.distance_exponent(&z), Some(5));
    }

    #[test]
    fn distance_with_different_defaults() {
        let x = GridWord::zero().with_column(1, lasso("|1")).unwrap();
        let y = GridWord::new(lasso("000|1"), BTreeMap::new()).unwrap().with_column(1, lasso("|1")).unwrap();
        // columns ≥ 2 differ first at row 4
        assert_eq!(x.distance_exponent(&y), Some(6));
    }

    #[test]
    fn redundant_overrides_are_dropped() {
        let a = GridWord::zero().with_column(3, lasso("00|00")).unwrap();
        assert_eq!(a, GridWord::zero());
    }

    #[test]
    fn json_format() {
        let x = GridWord::from_json(r#"{"default": "|0", "columns": {"2": "11|0"}}"#).unwrap();
        assert_eq!(x, col2("11|0"));
        assert_eq!(GridWord::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(GridWord::from_json(r#"{"default": "|0"}"#).unwrap(), GridWord::zero());
        assert!(GridWord::from_json(r#"{"default": "|A"}"#).is_err());
        assert!(GridWord::from_json(r#"{"default": "|0", "columns": {"0": "|1"}}"#).is_err());
        assert!(GridWord::from_json(r#"{"default": "|0", "columns": {"x": "|1"}}"#).is_err());
    }

    fn first_difference(a: &[Letter], b: &[Letter]) -> Option<usize> {
        a.iter().zip(b).position(|(x, y)| x != y).map(|i| i + 1)
    }

    #[test]
    fn bounds_are_tight_on_a_single_entry() {
        // x(1, 1) differs: p = 2, U₂ is the first block
        let x = GridWord::zero().with_column(1, lasso("1|0")).unwrap();
        let p = x.distance_exponent(&GridWord::zero()).unwrap();
        assert_eq!(p, 2);
        let (a, b) = (x.encode_h().prefix_of(10), GridWord::zero().encode_h().prefix_of(10));
        assert_eq!(first_difference(&a, &b), Some(2));
        assert_eq!(agreement_bound(p), 1);
        assert!(first_difference(&a, &b).unwrap() <= separation_bound(p));
    }

    proptest::proptest! {
        #[test]
        fn h_is_continuous_and_injective(seed in 0u64..400) {
            let mut rng = crate::sample::rng(seed);
            let (x, y) = (crate::sample::grid(&mut rng), crate::sample::grid(&mut rng));
            if let Some(p) = x.distance_exponent(&y) {
                let n = separation_bound(p);
                let (a, b) = (x.encode_h().prefix_of(n), y.encode_h().prefix_of(n));
                let d = first_difference(&a, &b);
                proptest::prop_assert!(d.is_some());
                proptest::prop_assert!(d.unwrap() > agreement_bound(p));
            } else {
                proptest::prop_assert_eq!(x.encode_h().prefix_of(300), y.encode_h().prefix_of(300));
            }
        }

        #[test]
        fn decode_inverts_encode(seed in 0u64..200, n in 0usize..600) {
            let mut rng = crate::sample::rng(seed);
            let x = crate::sample::grid(&mut rng);
            let part = decode_h_prefix(&x.encode_h().prefix_of(n)).unwrap();
            for (&(m, r), &c) in &part.0 {
                proptest::prop_assert_eq!(x.entry(m, r), c);
            }
        }

        #[test]
        fn in_p_matches_example_automaton(seed in 0u64..300) {
            let mut rng = crate::sample::rng(seed);
            let x = crate::sample::grid(&mut rng);
            let a = crate::buchi::build_a_automaton(false);
            let columns = std::iter::once(x.default_column()).chain(x.overrides().values());
            let by_automaton = columns.into_iter().all(|c| !crate::buchi::buchi_accepts_lasso(&a, c));
            proptest::prop_assert_eq!(x.in_p(), by_automaton);
        }
    }
}
