//! One-tape Büchi automata with letter labels, and membership of lasso words.

use crate::error::{Error, Result};
use crate::graph::tarjan;
use crate::word::{Alphabet, LassoWord, Letter, Track};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiAutomaton {
    pub states: Vec<String>,
    pub alphabet: Alphabet,
    pub transitions: Vec<(usize, Letter, usize)>,
    pub initial: usize,
    pub accepting: Vec<usize>,
}

impl BuchiAutomaton {
    pub fn validate(&self) -> Result<()> {
        let n = self.states.len();
        let mut problems = Vec::new();
        if self.initial >= n {
            problems.push(format!("initial state {} out of range", self.initial));
        }
        for &f in &self.accepting {
            if f >= n {
                problems.push(format!("accepting state {f} out of range"));
            }
        }
        for (i, &(p, c, q)) in self.transitions.iter().enumerate() {
            if p >= n || q >= n {
                problems.push(format!("transition {i} has an endpoint out of range"));
            }
            if !self.alphabet.contains(c) {
                problems.push(format!("transition {i} reads foreign letter '{c}'"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidAutomaton(problems))
        }
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn to_json(&self) -> String {
        let name = |q: usize| self.states[q].clone();
        let value = serde_json::json!({
            "states": self.states,
            "alphabet": self.alphabet.to_string(),
            "transitions": self.transitions.iter().map(|&(p, c, q)| [name(p), c.to_string(), name(q)]).collect::<Vec<_>>(),
            "initial": name(self.initial),
            "accepting": self.accepting.iter().map(|&q| name(q)).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&value).expect("json values always serialize")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n  rankdir=LR;\n  __start [shape=point];\n");
        for (q, name) in self.states.iter().enumerate() {
            let shape = if self.is_accepting(q) { "doublecircle" } else { "circle" };
            out.push_str(&format!("  \"{name}\" [shape={shape}];\n"));
        }
        out.push_str(&format!("  __start -> \"{}\";\n", self.states[self.initial]));
        for &(p, c, q) in &self.transitions {
            out.push_str(&format!("  \"{}\" -> \"{}\" [label=\"{c}\"];\n", self.states[p], self.states[q]));
        }
        out.push_str("}\n");
        out
    }
}

/// The automaton for `(0*·1)^ω` (infinitely many 1s), or for its complement
/// (finitely many 1s) when `complement` is set.
pub fn build_a_automaton(complement: bool) -> BuchiAutomaton {
    if complement {
        // guess the position after the last 1, then read only 0s
        BuchiAutomaton {
            states: vec!["s".into(), "t".into()],
            alphabet: Alphabet::binary(),
            transitions: vec![(0, '0', 0), (0, '1', 0), (0, '0', 1), (1, '0', 1)],
            initial: 0,
            accepting: vec![1],
        }
    } else {
        BuchiAutomaton {
            states: vec!["q0".into(), "q1".into()],
            alphabet: Alphabet::binary(),
            transitions: vec![(0, '0', 0), (0, '1', 1), (1, '0', 0), (1, '1', 1)],
            initial: 0,
            accepting: vec![1],
        }
    }
}

/// Whether some run on `w` visits an accepting state infinitely often.
///
/// Works on the product of states with the normalized position space of the
/// lasso; every edge consumes a letter, so any cycle lies in the periodic
/// region and the word is accepted iff a reachable nontrivial component
/// holds an accepting state.
pub fn buchi_accepts_lasso(aut: &BuchiAutomaton, w: &LassoWord) -> bool {
    let track = Track::new(w);
    let len = track.len();
    let id = |q: usize, p: usize| q * len + p;
    let mut adj: Vec<Vec<(usize, ())>> = vec![Vec::new(); aut.states.len() * len];
    for q in 0..aut.states.len() {
        for p in 0..len {
            for &(from, c, to) in &aut.transitions {
                if from == q && track.letter(p) == c {
                    adj[id(q, p)].push((id(to, track.next(p)), ()));
                }
            }
        }
    }
    let sccs = tarjan(&adj, &[id(aut.initial, 0)]);
    let mut nontrivial = vec![false; sccs.count];
    for (v, edges) in adj.iter().enumerate() {
        let c = sccs.comp[v];
        if c != usize::MAX && edges.iter().any(|&(t, _)| sccs.comp[t] == c) {
            nontrivial[c] = true;
        }
    }
    (0..adj.len()).any(|v| {
        let c = sccs.comp[v];
        c != usize::MAX && nontrivial[c] && aut.is_accepting(v / len)
    })
}
