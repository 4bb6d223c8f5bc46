//! Bounded exploration of runs over arbitrary (possibly non-periodic) words.
//!
//! Configurations `(state, pos₁, pos₂)` use absolute positions and are
//! expanded in order of total letters consumed, ties broken by discovery
//! order, so a larger budget always continues the exact exploration of a
//! smaller one.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::lasso::{accepts_lasso_pair, SearchOutcome, SearchStats};
use super::run::RunPrefix;
use super::TwoTapeAutomaton;
use crate::error::Result;
use crate::word::{OmegaWord, Tape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Label {
    visits: usize,
    // positions at the last counted visit
    last: Option<(usize, usize)>,
}

impl Label {
    fn rank(&self) -> (usize, Reverse<usize>) {
        (self.visits, Reverse(self.last.map_or(0, |(a, b)| a + b)))
    }

    fn step(self, accepting: bool, p1: usize, p2: usize) -> Label {
        let progressed = self.last.map_or(true, |(a, b)| p1 > a && p2 > b);
        if accepting && progressed {
            Label { visits: self.visits + 1, last: Some((p1, p2)) }
        } else {
            self
        }
    }
}

/// Explores at most `budget` configurations. Never rejects; returns
/// `Accepted` only when both words are lassos and the exact lasso decision
/// produces a certificate.
pub fn bounded_run_search(
    aut: &TwoTapeAutomaton,
    w1: &OmegaWord,
    w2: &OmegaWord,
    budget: usize,
) -> Result<SearchOutcome> {
    aut.validate()?;
    if let (Some(l1), Some(l2)) = (w1.as_lasso(), w2.as_lasso()) {
        let outcome = accepts_lasso_pair(aut, l1, l2)?;
        if outcome.is_accepted() {
            return Ok(outcome);
        }
    }

    let outgoing = aut.outgoing();
    let (mut tape1, mut tape2) = (Tape::new(w1), Tape::new(w2));
    let mut configs: Vec<(usize, usize, usize)> = Vec::new();
    let mut labels: Vec<Label> = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = Vec::new();
    let mut version: Vec<u32> = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(usize, u64, usize, u32)>> = BinaryHeap::new();
    let mut seq = 0u64;

    let start = Label { visits: 0, last: None }.step(aut.is_accepting(aut.initial), 0, 0);
    configs.push((aut.initial, 0, 0));
    labels.push(start);
    parent.push(None);
    version.push(0);
    index.insert((aut.initial, 0, 0), 0);
    heap.push(Reverse((0, seq, 0, 0)));

    let mut best = 0usize;
    let mut deepest = 0usize;
    let mut expansions = 0usize;
    while expansions < budget {
        let Some(Reverse((_, _, c, ver))) = heap.pop() else { break };
        if ver != version[c] {
            continue;
        }
        expansions += 1;
        let (q, p1, p2) = configs[c];
        deepest = deepest.max(p1.min(p2));
        for &ti in &outgoing[q] {
            let t = &aut.transitions[ti];
            if !tape1.matches(p1, &t.tape1) || !tape2.matches(p2, &t.tape2) {
                continue;
            }
            let next = (t.to, p1 + t.tape1.len(), p2 + t.tape2.len());
            let label = labels[c].step(aut.is_accepting(t.to), next.1, next.2);
            let target = match index.get(&next) {
                Some(&d) => {
                    if label.rank() <= labels[d].rank() {
                        continue;
                    }
                    labels[d] = label;
                    parent[d] = Some((c, ti));
                    version[d] += 1;
                    d
                }
                None => {
                    let d = configs.len();
                    configs.push(next);
                    labels.push(label);
                    parent.push(Some((c, ti)));
                    version.push(0);
                    index.insert(next, d);
                    d
                }
            };
            if labels[target].rank() > labels[best].rank() {
                best = target;
            }
            seq += 1;
            heap.push(Reverse((next.1 + next.2, seq, target, version[target])));
        }
    }

    let mut witness = Vec::new();
    let mut cur = best;
    while let Some((prev, ti)) = parent[cur] {
        witness.push(ti);
        cur = prev;
        if witness.len() > configs.len() {
            break;
        }
    }
    witness.reverse();
    let frontier = heap.iter().filter(|Reverse((_, _, c, ver))| *ver == version[*c]).count();
    Ok(SearchOutcome::Inconclusive(SearchStats {
        fair_visits: labels[best].visits,
        witness: RunPrefix::new(witness),
        deepest,
        expansions,
        frontier,
        exhausted: frontier == 0,
    }))
}
