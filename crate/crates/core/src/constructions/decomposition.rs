//! Block ledgers witnessing `(h(x), α) ∈ R₁`.
//!
//! With `y₁ = h(x)` and `y₂ = α`, a ledger is fixed by `k` and the split
//! sequence `sₙ = |uₙ|`: pair block `n` is block `m = k + n − 1` of both
//! words, `|vₙ| = |wₙ| = m − sₙ`, `|zₙ| = sₙ`, and `sₙ₊₁ ∈ {sₙ, sₙ + 1}`.
//! The only constraint the grid imposes is `vₙ ∈ 0*`, i.e.
//! `x(c, m + 1 − c) = 0` for `c ≤ |vₙ|`.

use serde::Serialize;

use crate::grid::{GridWord, LastOne};
use crate::parallel::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub k: usize,
    /// `s₁, s₂, …`
    pub splits: Vec<usize>,
}

impl Decomposition {
    pub fn depth(&self) -> usize {
        self.splits.len()
    }

    /// Block index `k + n − 1` shared by pair block `n` on both tapes.
    pub fn block(&self, n: usize) -> usize {
        self.k + n - 1
    }

    pub fn s(&self, n: usize) -> usize {
        self.splits[n - 1]
    }

    pub fn v_len(&self, n: usize) -> usize {
        self.block(n) - self.s(n)
    }

    /// Indices `n < depth` with `sₙ₊₁ = sₙ`.
    pub fn growth_steps(&self) -> usize {
        self.splits.windows(2).filter(|w| w[0] == w[1]).count()
    }

    /// Checks the walk laws and `vₙ ∈ 0*` against `x` (not extendability).
    pub fn check(&self, x: &GridWord) -> Result<(), String> {
        if self.k == 0 {
            return Err("k must be at least 1".into());
        }
        for n in 1..=self.depth() {
            let m = self.block(n);
            if self.s(n) > m {
                return Err(format!("s{n} = {} exceeds block length {m}", self.s(n)));
            }
            if n > 1 && !(self.s(n) == self.s(n - 1) || self.s(n) == self.s(n - 1) + 1) {
                return Err(format!("s{n} = {} does not follow s{} = {}", self.s(n), n - 1, self.s(n - 1)));
            }
            if !zero_tail(x, m, self.v_len(n)) {
                return Err(format!("v{n} is not all zeros"));
            }
        }
        Ok(())
    }

    /// Whether the ledger extends to an infinite one (never growing again).
    pub fn extendable(&self, x: &GridWord) -> bool {
        let n = self.depth();
        n == 0 || clear_from(x, self.block(n), self.v_len(n))
    }
}

/// The last `v` letters of block `m` of `h(x)` are 0.
pub(crate) fn zero_tail(x: &GridWord, m: usize, v: usize) -> bool {
    (1..=v).all(|c| x.entry(c, m + 1 - c) == '0')
}

/// Columns `1..=v` are 0 from row `m + 1 − c` on, so `|v| = v` can be kept
/// at every block from `m` on.
pub(crate) fn clear_from(x: &GridWord, m: usize, v: usize) -> bool {
    (1..=v).all(|c| match x.last_one(c) {
        LastOne::Never => true,
        LastOne::Row(r) => r + c <= m,
        LastOne::Infinite => false,
    })
}

/// Statistics over the extendable ledgers with a given `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KStats {
    pub k: usize,
    pub branches: u64,
    pub min_growth: usize,
    pub max_growth: usize,
    /// Largest `|v_N|`.
    pub max_v_last: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub depth: usize,
    pub per_k: Vec<KStats>,
}

impl DecompositionReport {
    pub fn branches(&self) -> u64 {
        self.per_k.iter().fold(0u64, |a, s| a.saturating_add(s.branches))
    }

    fn live(&self) -> impl Iterator<Item = &KStats> {
        self.per_k.iter().filter(|s| s.branches > 0)
    }

    pub fn max_growth(&self) -> Option<usize> {
        self.live().map(|s| s.max_growth).max()
    }

    pub fn min_growth(&self) -> Option<usize> {
        self.live().map(|s| s.min_growth).min()
    }

    pub fn max_v_last(&self) -> Option<usize> {
        self.live().map(|s| s.max_v_last).max()
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    count: u64,
    min_g: usize,
    max_g: usize,
}

impl Cell {
    fn merge(slot: &mut Option<Cell>, c: Cell) {
        *slot = Some(match *slot {
            None => c,
            Some(o) => Cell {
                count: o.count.saturating_add(c.count),
                min_g: o.min_g.min(c.min_g),
                max_g: o.max_g.max(c.max_g),
            },
        });
    }
}

fn stats_for_k(x: &GridWord, depth: usize, k: usize) -> KStats {
    // layer[s] summarizes all valid prefixes ending with sₙ = s
    let mut layer: Vec<Option<Cell>> =
        (0..=k).map(|s| zero_tail(x, k, k - s).then_some(Cell { count: 1, min_g: 0, max_g: 0 })).collect();
    for n in 2..=depth {
        let m = k + n - 1;
        let mut next: Vec<Option<Cell>> = vec![None; m + 1];
        for (s, cell) in layer.iter().enumerate() {
            let Some(c) = *cell else { continue };
            if zero_tail(x, m, m - s) {
                Cell::merge(&mut next[s], Cell { min_g: c.min_g + 1, max_g: c.max_g + 1, ..c });
            }
            if zero_tail(x, m, m - s - 1) {
                Cell::merge(&mut next[s + 1], c);
            }
        }
        layer = next;
    }
    let m = k + depth - 1;
    let mut out = KStats { k, branches: 0, min_growth: usize::MAX, max_growth: 0, max_v_last: 0 };
    for (s, cell) in layer.iter().enumerate() {
        let Some(c) = *cell else { continue };
        if !clear_from(x, m, m - s) {
            continue;
        }
        out.branches = out.branches.saturating_add(c.count);
        out.min_growth = out.min_growth.min(c.min_g);
        out.max_growth = out.max_growth.max(c.max_g);
        out.max_v_last = out.max_v_last.max(m - s);
    }
    if out.branches == 0 {
        out.min_growth = 0;
    }
    out
}

/// Summarizes every extendable ledger prefix of depth `depth` with
/// `k ≤ k_max`, one layered count per `k`.
pub fn build_decompositions(x: &GridWord, depth: usize, k_max: usize) -> DecompositionReport {
    build_decompositions_with(x, depth, k_max, Exec::default())
}

pub fn build_decompositions_with(x: &GridWord, depth: usize, k_max: usize, exec: Exec) -> DecompositionReport {
    assert!(depth >= 1 && k_max >= 1, "depth and k_max start at 1");
    let ks: Vec<usize> = (1..=k_max).collect();
    DecompositionReport { depth, per_k: exec.map(&ks, |&k| stats_for_k(x, depth, k)) }
}

/// Lists the extendable ledger prefixes explicitly. Exponential in `depth`.
pub fn enumerate_decompositions(x: &GridWord, depth: usize, k_max: usize) -> Vec<Decomposition> {
    fn go(x: &GridWord, d: &mut Decomposition, depth: usize, out: &mut Vec<Decomposition>) {
        let n = d.depth();
        if n == depth {
            if d.extendable(x) {
                out.push(d.clone());
            }
            return;
        }
        let m = d.k + n;
        let choices = match d.splits.last() {
            None => (0..=m).collect::<Vec<_>>(),
            Some(&s) => vec![s, s + 1],
        };
        for s in choices {
            if zero_tail(x, m, m - s) {
                d.splits.push(s);
                go(x, d, depth, out);
                d.splits.pop();
            }
        }
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        go(x, &mut Decomposition { k, splits: Vec::new() }, depth, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridWord;
    use crate::sample;
    use crate::word::{Alphabet, LassoWord};
    use proptest::prelude::*;

    fn col1(s: &str) -> GridWord {
        GridWord::zero().with_column(1, LassoWord::parse(s, &Alphabet::binary()).unwrap()).unwrap()
    }

    /// Reads the ledger off the words themselves: cuts each A-terminated
    /// chunk of both prefixes at the split and checks the R₁ shape, then
    /// looks `ahead` more blocks down the non-growing continuation.
    fn literal_ok(x: &GridWord, d: &Decomposition, ahead: usize) -> bool {
        let blocks = d.k + d.depth() + ahead;
        let len = blocks * (blocks + 1) / 2 + blocks + 2;
        let y1 = x.encode_h().prefix_of(len);
        let y2 = crate::constructions::alpha().prefix_of(len);
        let chunks = |w: &[char]| -> Vec<Vec<char>> {
            w.split(|&c| c == 'A').map(|c| c.to_vec()).collect::<Vec<_>>()
        };
        let (c1, c2) = (chunks(&y1), chunks(&y2));
        // chunk 0 is before the first A; U_k/V_k are chunks 0..k
        let mut splits = d.splits.clone();
        while splits.len() < d.depth() + ahead {
            splits.push(splits.last().unwrap() + 1);
        }
        let mut prev_z: Option<usize> = None;
        for (i, &s) in splits.iter().enumerate() {
            let (a, b) = (&c1[d.k + i], &c2[d.k + i]);
            if s > a.len() || a.len() != b.len() {
                return false;
            }
            let (u, v) = a.split_at(s);
            let (w, z) = b.split_at(v.len());
            let zeros = |t: &[char]| t.iter().all(|&c| c == '0');
            if !(zeros(v) && zeros(w) && zeros(z) && u.iter().all(|&c| c != 'A')) {
                return false;
            }
            if let Some(pz) = prev_z {
                if u.len() != pz && u.len() != pz + 1 {
                    return false;
                }
            }
            prev_z = Some(z.len());
        }
        true
    }

    #[test]
    fn all_zero_has_full_growth_branch() {
        let r = build_decompositions(&GridWord::zero(), 10, 3);
        assert!(r.branches() > 0);
        assert_eq!(r.max_growth(), Some(9));
        let d = Decomposition { k: 1, splits: vec![0; 10] };
        assert_eq!(d.growth_steps(), 9);
        assert!(d.check(&GridWord::zero()).is_ok());
    }

    #[test]
    fn recurrent_column_one_blocks_growth() {
        for s in ["|1", "|10", "0|01", "11|100"] {
            let x = col1(s);
            let all = enumerate_decompositions(&x, 12, 3);
            assert!(!all.is_empty(), "{s}");
            for d in &all {
                assert!((1..=12).all(|n| d.v_len(n) == 0), "{s}: {d:?}");
                assert_eq!(d.growth_steps(), 0);
            }
            let r = build_decompositions(&x, 20, 4);
            assert_eq!(r.max_growth(), Some(0), "{s}");
            assert_eq!(r.max_v_last(), Some(0));
        }
    }

    #[test]
    fn blocking_law_general_form() {
        // a 1 at (j, r) caps |vₙ| below j at the block where k + n − 1 = j + r − 1
        let x = GridWord::zero().with_column(2, LassoWord::parse("001|0", &Alphabet::binary()).unwrap()).unwrap();
        let (j, r) = (2, 3);
        for d in enumerate_decompositions(&x, 8, 3) {
            for n in 1..=8 {
                if d.block(n) == j + r - 1 {
                    assert!(d.v_len(n) < j, "{d:?}");
                }
            }
        }
    }

    #[test]
    fn report_matches_enumeration() {
        let mut rng = sample::rng(11);
        for _ in 0..30 {
            let x = sample::grid(&mut rng);
            for exec in [Exec::Sequential, Exec::Parallel] {
                let r = build_decompositions_with(&x, 7, 3, exec);
                let all = enumerate_decompositions(&x, 7, 3);
                assert_eq!(r.branches(), all.len() as u64, "{x}");
                assert_eq!(r.max_growth(), all.iter().map(|d| d.growth_steps()).max());
                assert_eq!(r.min_growth(), all.iter().map(|d| d.growth_steps()).min());
                assert_eq!(r.max_v_last(), all.iter().map(|d| d.v_len(7)).max());
            }
        }
    }

    #[test]
    fn enumeration_matches_literal_reading() {
        let mut rng = sample::rng(12);
        for _ in 0..15 {
            let x = sample::grid_in_p(&mut rng);
            let all = enumerate_decompositions(&x, 5, 2);
            for d in &all {
                assert!(d.check(&x).is_ok());
                assert!(literal_ok(&x, d, 12), "{x} {d:?}");
            }
            // every literal ledger with extendable lookahead is enumerated
            for k in 1..=2 {
                let mut cands: Vec<Vec<usize>> = (0..=k).map(|s| vec![s]).collect();
                for _ in 1..5 {
                    cands = cands
                        .into_iter()
                        .flat_map(|c| {
                            let s = *c.last().unwrap();
                            [s, s + 1].map(|t| [c.as_slice(), &[t]].concat())
                        })
                        .collect();
                }
                for splits in cands {
                    let d = Decomposition { k, splits };
                    if literal_ok(&x, &d, 12) {
                        assert!(all.contains(&d), "{x} {d:?}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn walk_laws(seed in 0u64..500) {
            let mut rng = sample::rng(seed);
            let x = sample::grid(&mut rng);
            for d in enumerate_decompositions(&x, 6, 2) {
                prop_assert!(d.check(&x).is_ok());
                for n in 1..=6 {
                    prop_assert_eq!(d.s(n) + d.v_len(n), d.k + n - 1);
                    if n > 1 {
                        prop_assert!(d.v_len(n) >= d.v_len(n - 1));
                        prop_assert!(d.v_len(n) <= d.v_len(n - 1) + 1);
                    }
                }
            }
        }
    }
}
