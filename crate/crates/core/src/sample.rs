//! Seeded random instances for property checks and benchmarks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::grid::GridWord;
use crate::two_tape::{Transition, TwoTapeAutomaton};
use crate::word::{Alphabet, FiniteWord, LassoWord, Letter};

pub type Rng64 = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn word<R: Rng>(rng: &mut R, alphabet: &Alphabet, len: usize) -> Vec<Letter> {
    (0..len).map(|_| *alphabet.letters().choose(rng).expect("nonempty alphabet")).collect()
}

pub fn lasso<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_prefix: usize, max_period: usize) -> LassoWord {
    let u = rng.gen_range(0..=max_prefix);
    let v = rng.gen_range(1..=max_period.max(1));
    LassoWord::new(word(rng, alphabet, u), word(rng, alphabet, v)).expect("period is nonempty")
}

/// A grid in P: all-zero except a few columns carrying 1s in a finite prefix.
pub fn grid_in_p<R: Rng>(rng: &mut R) -> GridWord {
    let mut cols = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=4) {
        let m = rng.gen_range(1..=6);
        let len = rng.gen_range(1..=6);
        let prefix = word(rng, &Alphabet::binary(), len);
        cols.insert(m, LassoWord::new(prefix, "0").expect("period is nonempty"));
    }
    GridWord::new(LassoWord::constant('0'), cols).expect("binary columns")
}

/// Any grid: random default and overrides, periods may carry 1s.
pub fn grid<R: Rng>(rng: &mut R) -> GridWord {
    let bin = Alphabet::binary();
    let default = if rng.gen_bool(0.6) { LassoWord::constant('0') } else { lasso(rng, &bin, 3, 3) };
    let mut cols = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=4) {
        cols.insert(rng.gen_range(1..=6), lasso(rng, &bin, 4, 3));
    }
    GridWord::new(default, cols).expect("binary columns")
}

/// A grid whose first column has a 1 in its normalized period.
pub fn grid_column1_recurrent<R: Rng>(rng: &mut R) -> GridWord {
    let bin = Alphabet::binary();
    let mut column = lasso(rng, &bin, 4, 4);
    while !column.normalize().period().contains(&'1') {
        column = lasso(rng, &bin, 4, 4);
    }
    let base = if rng.gen_bool(0.5) { grid(rng) } else { grid_in_p(rng) };
    base.with_column(1, column).expect("binary column")
}

/// A random automaton over the given alphabets; labels have length at most
/// `max_label` on each tape.
pub fn automaton<R: Rng>(
    rng: &mut R,
    sigma1: &Alphabet,
    sigma2: &Alphabet,
    states: usize,
    transitions: usize,
    max_label: usize,
) -> TwoTapeAutomaton {
    let transitions = (0..transitions)
        .map(|_| {
            let from = rng.gen_range(0..states);
            let (l1, l2) = (rng.gen_range(0..=max_label), rng.gen_range(0..=max_label));
            let tape1 = FiniteWord(word(rng, sigma1, l1));
            let tape2 = FiniteWord(word(rng, sigma2, l2));
            Transition { from, tape1, tape2, to: rng.gen_range(0..states) }
        })
        .collect();
    TwoTapeAutomaton {
        states: (0..states).map(|i| format!("q{i}")).collect(),
        sigma1: sigma1.clone(),
        sigma2: sigma2.clone(),
        transitions,
        initial: 0,
        accepting: (0..states).filter(|_| rng.gen_bool(0.4)).collect(),
    }
}
