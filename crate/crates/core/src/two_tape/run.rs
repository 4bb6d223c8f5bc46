use serde::Serialize;

use super::TwoTapeAutomaton;
use crate::word::{OmegaWord, Tape};

/// A finite run: transition indices into the automaton's table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunPrefix {
    pub transitions: Vec<usize>,
}

impl RunPrefix {
    pub fn new(transitions: Vec<usize>) -> Self {
        Self { transitions }
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn then(&self, other: &RunPrefix) -> RunPrefix {
        RunPrefix { transitions: [self.transitions.as_slice(), &other.transitions].concat() }
    }

    /// `[from, tape1, tape2, to]` rows with state names, λ as the empty string.
    pub fn describe(&self, aut: &TwoTapeAutomaton) -> Vec<[String; 4]> {
        self.transitions
            .iter()
            .map(|&i| {
                let t = &aut.transitions[i];
                [aut.states[t.from].clone(), t.tape1.to_string(), t.tape2.to_string(), aut.states[t.to].clone()]
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub chaining_ok: bool,
    /// Index of the first transition that does not continue the run.
    pub broken_at: Option<usize>,
    pub tape1_ok: bool,
    pub tape2_ok: bool,
    pub consumed: (usize, usize),
    /// Occurrences of accepting states in `q₀, q₁, …, q_k`.
    pub accepting_visits: usize,
}

impl RunReport {
    pub fn is_valid(&self) -> bool {
        self.chaining_ok && self.tape1_ok && self.tape2_ok
    }
}

/// Replays `run` from the initial state: states must chain and the
/// concatenated labels must be prefixes of `w1` and `w2`.
pub fn run_prefix_valid(aut: &TwoTapeAutomaton, run: &RunPrefix, w1: &OmegaWord, w2: &OmegaWord) -> RunReport {
    let mut state = aut.initial;
    let mut broken_at = None;
    let mut visits = usize::from(aut.is_accepting(state));
    let (mut tape1, mut tape2) = (Tape::new(w1), Tape::new(w2));
    let (mut p1, mut p2) = (0, 0);
    let (mut ok1, mut ok2) = (true, true);
    for (k, &i) in run.transitions.iter().enumerate() {
        let Some(t) = aut.transitions.get(i) else {
            broken_at.get_or_insert(k);
            break;
        };
        if t.from != state {
            broken_at.get_or_insert(k);
        }
        ok1 &= tape1.matches(p1, &t.tape1);
        ok2 &= tape2.matches(p2, &t.tape2);
        p1 += t.tape1.len();
        p2 += t.tape2.len();
        state = t.to;
        if aut.is_accepting(state) {
            visits += 1;
        }
    }
    RunReport {
        chaining_ok: broken_at.is_none(),
        broken_at,
        tape1_ok: ok1,
        tape2_ok: ok2,
        consumed: (p1, p2),
        accepting_visits: visits,
    }
}
