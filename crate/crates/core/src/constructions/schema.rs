//! Runs of 𝒯 over `(h(x), α)` built from block ledgers.

use std::collections::HashMap;

use serde::Serialize;

use super::decomposition::{clear_from, Decomposition};
use super::t::automaton_t;
use crate::error::{Error, Result};
use crate::grid::{GridWord, LastOne};
use crate::two_tape::{RunPrefix, TwoTapeAutomaton};
use crate::word::Letter;

/// The greedy ledger for a grid in P: `k = 1`, and `|vₙ|` grows by one at
/// the first block where the next column is clear from then on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunSchema {
    #[serde(skip)]
    x: GridWord,
}

impl RunSchema {
    pub fn grid(&self) -> &GridWord {
        &self.x
    }

    pub fn k(&self) -> usize {
        1
    }

    /// `|v₁|, …, |v_n|`.
    pub fn v_lens(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(n);
        let mut v = 0;
        for i in 1..=n {
            let m = self.k() + i - 1;
            if v < m && clear_from(&self.x, m, v + 1) {
                v += 1;
            }
            out.push(v);
        }
        out
    }

    /// The ledger prefix `s₁, …, s_n`.
    pub fn decomposition(&self, n: usize) -> Decomposition {
        let splits = self.v_lens(n).iter().enumerate().map(|(i, v)| self.k() + i - v).collect();
        Decomposition { k: self.k(), splits }
    }

    /// Growth steps among the first `n` pair blocks.
    pub fn growth_steps(&self, n: usize) -> usize {
        self.decomposition(n + 1).growth_steps()
    }
}

pub fn build_run_schema(x: &GridWord) -> Result<RunSchema> {
    if !x.in_p() {
        let column = (1..=x.max_override() + 1)
            .find(|&m| x.last_one(m) == LastOne::Infinite)
            .map(|m| if m > x.max_override() { format!("{m} and beyond") } else { m.to_string() })
            .unwrap_or_default();
        return Err(Error::NotInP { column });
    }
    Ok(RunSchema { x: x.clone() })
}

/// The run of 𝒯 through the first `blocks` pair blocks of the schema.
pub fn schema_to_run(schema: &RunSchema, blocks: usize) -> RunPrefix {
    decomposition_run(&automaton_t(), &schema.x, &schema.decomposition(blocks + 1), blocks)
        .expect("schema ledgers only use transitions of the table")
}

/// Spells out the run of an automaton with 𝒯's state names that follows
/// `d` over `(h(x), α)` for `blocks` pair blocks. Needs `s₁ … s_{blocks+1}`.
/// The letters are taken from `h(x)` whether or not `d` respects `vₙ ∈ 0*`,
/// so this also replays ledgers that break the grid constraint.
pub fn decomposition_run(
    aut: &TwoTapeAutomaton,
    x: &GridWord,
    d: &Decomposition,
    blocks: usize,
) -> Result<RunPrefix> {
    if blocks > 0 && d.depth() < blocks + 1 {
        return Err(Error::SchemaReplay(format!("need {} splits, have {}", blocks + 1, d.depth())));
    }
    let index: HashMap<(usize, String, String, usize), usize> = aut
        .transitions
        .iter()
        .enumerate()
        .map(|(i, t)| ((t.from, t.tape1.to_string(), t.tape2.to_string(), t.to), i))
        .collect();
    let state = |name: &str| aut.state_index(name).ok_or_else(|| Error::SchemaReplay(format!("no state {name}")));
    let q: Vec<usize> = ["q0", "q1", "q2", "q3", "q4", "q5"].iter().map(|s| state(s)).collect::<Result<_>>()?;
    let mut run = Vec::new();
    let mut step = |from: usize, a: Option<Letter>, b: Option<Letter>, to: usize| -> Result<()> {
        let key = (q[from], a.map(String::from).unwrap_or_default(), b.map(String::from).unwrap_or_default(), q[to]);
        let i = index.get(&key).ok_or_else(|| {
            Error::SchemaReplay(format!("no transition (q{from}, {:?}, {:?}, q{to})", key.1, key.2))
        })?;
        run.push(*i);
        Ok(())
    };
    let block = |b: usize| -> Vec<Letter> { if b == 0 { Vec::new() } else { x.antidiagonal(b + 1).0 } };

    for b in 0..d.k {
        for c in block(b) {
            step(0, Some(c), None, 0)?;
        }
        for _ in 0..b {
            step(0, None, Some('0'), 0)?;
        }
        step(0, Some('A'), Some('A'), if b + 1 == d.k { 1 } else { 0 })?;
    }
    if blocks == 0 {
        return Ok(RunPrefix::new(run));
    }
    let first = block(d.k);
    for &c in &first[..d.s(1)] {
        step(1, Some(c), None, 1)?;
    }
    step(1, None, None, 2)?;
    let mut cur = first;
    for n in 1..=blocks {
        let (s, next_s) = (d.s(n), d.s(n + 1));
        for &c in &cur[s..] {
            step(2, Some(c), Some('0'), 2)?;
        }
        step(2, Some('A'), None, 3)?;
        let next = block(d.block(n + 1));
        for &c in &next[..s] {
            step(3, Some(c), Some('0'), 3)?;
        }
        if next_s == s {
            step(3, None, None, 4)?;
            step(4, None, Some('A'), 2)?;
        } else {
            step(3, Some(next[s]), None, 5)?;
            step(5, None, Some('A'), 2)?;
        }
        cur = next;
    }
    Ok(RunPrefix::new(run))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alpha, automaton_t_strict};
    use crate::sample;
    use crate::two_tape::run_prefix_valid;
    use crate::word::{Alphabet, LassoWord};

    fn replay(x: &GridWord, run: &RunPrefix) -> crate::two_tape::RunReport {
        run_prefix_valid(&automaton_t(), run, &x.encode_h(), &alpha())
    }

    #[test]
    fn all_zero_schema_grows_every_block() {
        let s = build_run_schema(&GridWord::zero()).unwrap();
        assert_eq!(s.decomposition(6).splits, vec![0; 6]);
        let run = schema_to_run(&s, 5);
        let r = replay(&GridWord::zero(), &run);
        assert!(r.is_valid());
        assert_eq!(r.accepting_visits, 5);
    }

    #[test]
    fn early_one_delays_growth() {
        let x = GridWord::zero().with_column(1, LassoWord::parse("1|0", &Alphabet::binary()).unwrap()).unwrap();
        let s = build_run_schema(&x).unwrap();
        assert_eq!(s.v_lens(4), vec![0, 1, 2, 3]);
        assert_eq!(s.decomposition(3).splits, vec![1, 1, 1]);
    }

    #[test]
    fn zero_blocks_is_the_prefix_phase() {
        let s = build_run_schema(&GridWord::zero()).unwrap();
        let run = schema_to_run(&s, 0);
        let t = automaton_t();
        assert_eq!(run.describe(&t), vec![["q0", "A", "A", "q1"].map(String::from)]);
        assert!(replay(&GridWord::zero(), &run).is_valid());
    }

    #[test]
    fn not_in_p_is_refused() {
        let x = GridWord::zero().with_column(2, LassoWord::parse("|1", &Alphabet::binary()).unwrap()).unwrap();
        assert!(matches!(build_run_schema(&x), Err(Error::NotInP { column }) if column == "2"));
    }

    #[test]
    fn long_truncations_replay() {
        let x = GridWord::zero().with_column(2, LassoWord::parse("1111|0", &Alphabet::binary()).unwrap()).unwrap();
        let s = build_run_schema(&x).unwrap();
        for n in [50, 100] {
            let r = replay(&x, &schema_to_run(&s, n));
            assert!(r.is_valid(), "{r:?}");
            assert_eq!(r.accepting_visits, s.growth_steps(n));
            assert!(s.growth_steps(n) > n / 2);
        }
    }

    #[test]
    fn random_grids_in_p_replay() {
        let mut rng = sample::rng(5);
        for _ in 0..40 {
            let x = sample::grid_in_p(&mut rng);
            let s = build_run_schema(&x).unwrap();
            assert!(s.decomposition(41).check(&x).is_ok());
            let r = replay(&x, &schema_to_run(&s, 40));
            assert!(r.is_valid(), "{x}");
            assert_eq!(r.accepting_visits, s.growth_steps(40));
        }
    }

    #[test]
    fn literal_table_accepts_ones_in_v() {
        // column 1 all ones: x ∉ P, yet the ledger s ≡ 0 copies those ones
        // through (q2, 1, 0, q2)
        let x = GridWord::zero().with_column(1, LassoWord::parse("|1", &Alphabet::binary()).unwrap()).unwrap();
        let d = Decomposition { k: 1, splits: vec![0; 31] };
        assert!(d.check(&x).is_err());
        let run = decomposition_run(&automaton_t(), &x, &d, 30).unwrap();
        let r = replay(&x, &run);
        assert!(r.is_valid());
        assert_eq!(r.accepting_visits, 30);
        assert!(matches!(
            decomposition_run(&automaton_t_strict(), &x, &d, 30),
            Err(Error::SchemaReplay(_))
        ));
    }
}
