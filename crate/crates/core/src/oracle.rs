//! Brute-force reference procedures, written independently of the decision
//! procedures they check: no lasso normalization, no component analysis,
//! only forward simulation and explicit recurrence search.

use std::collections::{HashSet, VecDeque};

use crate::buchi::BuchiAutomaton;
use crate::two_tape::TwoTapeAutomaton;
use crate::word::{LassoWord, Letter};

/// Position arithmetic on the lasso exactly as written (not normalized).
struct Raw<'a> {
    w: &'a LassoWord,
}

impl Raw<'_> {
    fn fold(&self, i: usize) -> usize {
        let (u, v) = (self.w.prefix().len(), self.w.period().len());
        if i < u {
            i
        } else {
            u + (i - u) % v
        }
    }

    fn letter(&self, i: usize) -> Letter {
        self.w.letter_at(i + 1)
    }

    fn read(&self, mut i: usize, label: &[Letter]) -> Option<usize> {
        for &c in label {
            if self.letter(i) != c {
                return None;
            }
            i = self.fold(i + 1);
        }
        Some(i)
    }
}

/// Simulates all runs for `|u| + 2·|Q|·|v|` letters and looks for an
/// accepting (state, position) pair that recurs at a later position of the
/// same period phase.
pub fn buchi_accepts_naive(aut: &BuchiAutomaton, w: &LassoWord) -> bool {
    let (u, v, nq) = (w.prefix().len(), w.period().len(), aut.states.len());
    let step = |set: &HashSet<usize>, i: usize| -> HashSet<usize> {
        let c = w.letter_at(i + 1);
        aut.transitions
            .iter()
            .filter(|&&(p, l, _)| l == c && set.contains(&p))
            .map(|&(_, _, q)| q)
            .collect()
    };
    // layers[i] = states reachable after reading i letters
    let horizon = u + nq * v;
    let mut layers = vec![HashSet::from([aut.initial])];
    for i in 0..horizon {
        let next = step(&layers[i], i);
        layers.push(next);
    }
    for i in u..horizon {
        for &q in layers[i].iter().filter(|q| aut.accepting.contains(q)) {
            let mut cur = HashSet::from([q]);
            for j in i..i + nq * v {
                cur = step(&cur, j);
                if (j + 1 - i) % v == 0 && cur.contains(&q) {
                    return true;
                }
            }
        }
    }
    false
}

/// Breadth-first enumeration of configurations, then for every reachable
/// accepting configuration a search for a walk back to itself that reads
/// both tapes.
pub fn lasso_pair_accepts_naive(aut: &TwoTapeAutomaton, w1: &LassoWord, w2: &LassoWord) -> bool {
    let (r1, r2) = (Raw { w: w1 }, Raw { w: w2 });
    let succ = |(q, i, j): (usize, usize, usize)| -> Vec<((usize, usize, usize), bool, bool)> {
        aut.transitions
            .iter()
            .filter(|t| t.from == q)
            .filter_map(|t| {
                let a = r1.read(i, &t.tape1)?;
                let b = r2.read(j, &t.tape2)?;
                Some(((t.to, a, b), !t.tape1.is_empty(), !t.tape2.is_empty()))
            })
            .collect()
    };

    let start = (aut.initial, 0, 0);
    let mut reachable = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for (d, _, _) in succ(c) {
            if reachable.insert(d) {
                queue.push_back(d);
            }
        }
    }

    let mut candidates: Vec<_> = reachable.iter().filter(|c| aut.accepting.contains(&c.0)).copied().collect();
    candidates.sort_unstable();
    candidates.into_iter().any(|c| {
        let mut seen = HashSet::new();
        let mut queue: VecDeque<_> = succ(c).into_iter().collect();
        while let Some((d, a, b)) = queue.pop_front() {
            if d == c && a && b {
                return true;
            }
            if !seen.insert((d, a, b)) {
                continue;
            }
            for (e, x, y) in succ(d) {
                queue.push_back((e, a || x, b || y));
            }
        }
        false
    })
}
