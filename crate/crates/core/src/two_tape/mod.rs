//! 2-tape Büchi automata: transitions carry a finite word for each tape.
//!
//! A run reads both ω-words completely; it is successful when some accepting
//! state occurs infinitely often. Transitions labelled `(λ, λ)` are allowed.

mod lasso;
mod run;
mod search;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, FiniteWord};

pub use lasso::{accepts_lasso_pair, LassoCertificate, SearchOutcome, SearchStats, Verdict};
pub use run::{run_prefix_valid, RunPrefix, RunReport};
pub use search::bounded_run_search;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub tape1: FiniteWord,
    pub tape2: FiniteWord,
    pub to: usize,
}

impl Transition {
    pub fn is_silent(&self) -> bool {
        self.tape1.is_empty() && self.tape2.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTapeAutomaton {
    pub states: Vec<String>,
    pub sigma1: Alphabet,
    pub sigma2: Alphabet,
    pub transitions: Vec<Transition>,
    pub initial: usize,
    pub accepting: Vec<usize>,
}

/// Informational findings of [`TwoTapeAutomaton::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub states: usize,
    pub transitions: usize,
    pub unreachable: Vec<String>,
    pub cannot_reach_accepting: Vec<String>,
}

impl TwoTapeAutomaton {
    /// Checks every structural invariant; on success reports unreachable
    /// states and states with no path to an accepting state.
    pub fn validate(&self) -> Result<Diagnostics> {
        let n = self.states.len();
        let mut problems = Vec::new();
        if n == 0 {
            problems.push("no states".to_string());
        }
        let mut seen = BTreeSet::new();
        for s in &self.states {
            if !seen.insert(s) {
                problems.push(format!("duplicate state name {s:?}"));
            }
        }
        if self.initial >= n {
            problems.push(format!("initial state index {} is not a state", self.initial));
        }
        for &f in &self.accepting {
            if f >= n {
                problems.push(format!("accepting state index {f} is not a state"));
            }
        }
        for (i, t) in self.transitions.iter().enumerate() {
            if t.from >= n || t.to >= n {
                problems.push(format!("transition {i} has an endpoint that is not a state"));
            }
            for (tape, alphabet, label) in [(1, &self.sigma1, &t.tape1), (2, &self.sigma2, &t.tape2)] {
                if let Err(e) = alphabet.check_word(label) {
                    problems.push(format!("transition {i}, tape {tape}: {e}"));
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidAutomaton(problems));
        }

        let forward = self.reach(&[self.initial], false);
        let backward = self.reach(&self.accepting, true);
        let names = |keep: &dyn Fn(usize) -> bool| -> Vec<String> {
            (0..n).filter(|&q| keep(q)).map(|q| self.states[q].clone()).collect()
        };
        Ok(Diagnostics {
            states: n,
            transitions: self.transitions.len(),
            unreachable: names(&|q| !forward[q]),
            cannot_reach_accepting: names(&|q| !backward[q]),
        })
    }

    fn reach(&self, from: &[usize], reverse: bool) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut queue: VecDeque<usize> = from.iter().copied().collect();
        for &q in from {
            seen[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for t in &self.transitions {
                let (a, b) = if reverse { (t.to, t.from) } else { (t.from, t.to) };
                if a == q && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    /// Transition indices leaving each state, in table order.
    pub(crate) fn outgoing(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for (i, t) in self.transitions.iter().enumerate() {
            out[t.from].push(i);
        }
        out
    }

    /// Looks up a transition by state names and labels.
    pub fn find(&self, from: &str, tape1: &str, tape2: &str, to: &str) -> Option<usize> {
        let (from, to) = (self.state_index(from)?, self.state_index(to)?);
        let (u, v) = (FiniteWord::from(tape1), FiniteWord::from(tape2));
        self.transitions
            .iter()
            .position(|t| t.from == from && t.to == to && t.tape1 == u && t.tape2 == v)
    }

    pub fn silent_transitions(&self) -> usize {
        self.transitions.iter().filter(|t| t.is_silent()).count()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: AutomatonJson = serde_json::from_str(s)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AutomatonJson::from(self)).expect("automaton json is always serializable")
    }

    /// Graphviz rendering; λ is shown as ε.
    pub fn to_dot(&self) -> String {
        let show = |w: &FiniteWord| if w.is_empty() { "ε".to_string() } else { w.to_string() };
        let mut out = String::from("digraph {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  __start [shape=point];\n");
        for (q, name) in self.states.iter().enumerate() {
            let shape = if self.is_accepting(q) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  \"{name}\" [shape={shape}];");
        }
        let _ = writeln!(out, "  __start -> \"{}\";", self.states[self.initial]);
        for t in &self.transitions {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{} / {}\"];",
                self.states[t.from],
                self.states[t.to],
                show(&t.tape1),
                show(&t.tape2)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Builds automata by state name; states are created on first mention.
#[derive(Debug)]
pub struct Builder {
    aut: TwoTapeAutomaton,
    index: HashMap<String, usize>,
}

impl Builder {
    pub fn new(sigma1: Alphabet, sigma2: Alphabet, initial: &str) -> Self {
        let mut b = Self {
            aut: TwoTapeAutomaton {
                states: Vec::new(),
                sigma1,
                sigma2,
                transitions: Vec::new(),
                initial: 0,
                accepting: Vec::new(),
            },
            index: HashMap::new(),
        };
        b.aut.initial = b.state(initial);
        b
    }

    pub fn state(&mut self, name: &str) -> usize {
        if let Some(&q) = self.index.get(name) {
            return q;
        }
        self.aut.states.push(name.to_string());
        self.index.insert(name.to_string(), self.aut.states.len() - 1);
        self.aut.states.len() - 1
    }

    pub fn accepting(&mut self, name: &str) -> &mut Self {
        let q = self.state(name);
        if !self.aut.accepting.contains(&q) {
            self.aut.accepting.push(q);
        }
        self
    }

    pub fn add(&mut self, from: &str, tape1: &str, tape2: &str, to: &str) -> &mut Self {
        let (from, to) = (self.state(from), self.state(to));
        let t = Transition { from, tape1: tape1.into(), tape2: tape2.into(), to };
        if !self.aut.transitions.contains(&t) {
            self.aut.transitions.push(t);
        }
        self
    }

    pub fn build(&mut self) -> TwoTapeAutomaton {
        let mut aut = self.aut.clone();
        aut.accepting.sort_unstable();
        aut
    }
}

fn same_letters(a: &Alphabet, b: &Alphabet) -> bool {
    a.letters().iter().collect::<BTreeSet<_>>() == b.letters().iter().collect::<BTreeSet<_>>()
}

/// Recognizes `R(a) ∪ R(b)`. Both automata are copied side by side and a
/// fresh initial state gets a copy of every transition leaving either
/// original initial state, so no `(λ, λ)` bridge is introduced.
pub fn union(a: &TwoTapeAutomaton, b: &TwoTapeAutomaton) -> Result<TwoTapeAutomaton> {
    if !same_letters(&a.sigma1, &b.sigma1) || !same_letters(&a.sigma2, &b.sigma2) {
        return Err(Error::AlphabetMismatch(format!(
            "({}, {}) vs ({}, {})",
            a.sigma1, a.sigma2, b.sigma1, b.sigma2
        )));
    }
    let clash = a.states.iter().any(|s| b.states.contains(s));
    let rename = |side: &str, s: &String| if clash { format!("{side}.{s}") } else { s.clone() };
    let mut states: Vec<String> = a.states.iter().map(|s| rename("a", s)).collect();
    states.extend(b.states.iter().map(|s| rename("b", s)));
    let mut fresh = String::from("init");
    while states.contains(&fresh) {
        fresh.push('\'');
    }
    let start = states.len();
    states.push(fresh);

    let off = a.states.len();
    let shift = |t: &Transition, by: usize| Transition {
        from: t.from + by,
        tape1: t.tape1.clone(),
        tape2: t.tape2.clone(),
        to: t.to + by,
    };
    let mut transitions: Vec<Transition> = a.transitions.iter().map(|t| shift(t, 0)).collect();
    transitions.extend(b.transitions.iter().map(|t| shift(t, off)));
    for (aut, by) in [(a, 0), (b, off)] {
        for t in aut.transitions.iter().filter(|t| t.from == aut.initial) {
            transitions.push(Transition { from: start, ..shift(t, by) });
        }
    }
    let mut accepting: Vec<usize> = a.accepting.clone();
    accepting.extend(b.accepting.iter().map(|q| q + off));
    Ok(TwoTapeAutomaton {
        states,
        sigma1: a.sigma1.clone(),
        sigma2: a.sigma2.clone(),
        transitions,
        initial: start,
        accepting,
    })
}

/// Removes every `(λ, λ)` transition.
///
/// Each letter-consuming transition `r → q` is copied to every state `p`
/// whose silent closure contains `r`. When the silent path from `p` to `r`
/// passes through an accepting state, the copy targets an accepting twin
/// `q*` of `q` that has the same outgoing transitions, so accepting visits
/// made on silent paths are kept. Silent cycles disappear; a run trapped in
/// one never reads its input and is not a run.
pub fn epsilon_normalize(aut: &TwoTapeAutomaton) -> TwoTapeAutomaton {
    if aut.silent_transitions() == 0 {
        return aut.clone();
    }
    let n = aut.states.len();
    // closure[p] = (r, passed_accepting) pairs, the flag being the best over all silent paths
    let mut closure: Vec<Vec<(usize, bool)>> = Vec::with_capacity(n);
    for p in 0..n {
        let mut best: Vec<Option<bool>> = vec![None; n];
        best[p] = Some(false);
        let mut queue = VecDeque::from([(p, false)]);
        while let Some((r, flag)) = queue.pop_front() {
            for t in aut.transitions.iter().filter(|t| t.from == r && t.is_silent()) {
                let f = flag || aut.is_accepting(t.to);
                match best[t.to] {
                    Some(old) if old || !f => {}
                    _ => {
                        best[t.to] = Some(f);
                        queue.push_back((t.to, f));
                    }
                }
            }
        }
        closure.push(best.iter().enumerate().filter_map(|(r, f)| f.map(|f| (r, f))).collect());
    }

    let mut states = aut.states.clone();
    let mut twin: Vec<Option<usize>> = vec![None; n];
    let mut accepting = aut.accepting.clone();
    let mut proto = Vec::new();
    for p in 0..n {
        for &(r, flag) in &closure[p] {
            for t in aut.transitions.iter().filter(|t| t.from == r && !t.is_silent()) {
                let marked = flag && !aut.is_accepting(t.to);
                proto.push((p, t.tape1.clone(), t.tape2.clone(), t.to, marked));
            }
        }
    }
    for &(_, _, _, q, marked) in &proto {
        if marked && twin[q].is_none() {
            let mut name = format!("{}*", aut.states[q]);
            while states.contains(&name) {
                name.push('*');
            }
            states.push(name);
            twin[q] = Some(states.len() - 1);
            accepting.push(states.len() - 1);
        }
    }
    let mut transitions: Vec<Transition> = Vec::new();
    let mut push = |t: Transition| {
        if !transitions.contains(&t) {
            transitions.push(t);
        }
    };
    for (p, u, v, q, marked) in proto {
        let to = if marked { twin[q].expect("twin allocated") } else { q };
        push(Transition { from: p, tape1: u.clone(), tape2: v.clone(), to });
        if let Some(tp) = twin[p] {
            push(Transition { from: tp, tape1: u, tape2: v, to });
        }
    }
    TwoTapeAutomaton {
        states,
        sigma1: aut.sigma1.clone(),
        sigma2: aut.sigma2.clone(),
        transitions,
        initial: aut.initial,
        accepting,
    }
}

/// `{"states": [...], "sigma1": "...", "sigma2": "...", "transitions":
/// [["q0","A","A","q1"], ...], "initial": "q0", "accepting": ["q4"]}`
#[derive(Debug, Serialize, Deserialize)]
struct AutomatonJson {
    states: Vec<String>,
    sigma1: String,
    sigma2: String,
    transitions: Vec<[String; 4]>,
    initial: String,
    accepting: Vec<String>,
}

impl TryFrom<AutomatonJson> for TwoTapeAutomaton {
    type Error = Error;

    fn try_from(raw: AutomatonJson) -> Result<Self> {
        let mut problems = Vec::new();
        let lookup = |name: &str, problems: &mut Vec<String>| match raw.states.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                problems.push(format!("unknown state {name:?}"));
                usize::MAX
            }
        };
        let initial = lookup(&raw.initial, &mut problems);
        let accepting = raw.accepting.iter().map(|s| lookup(s, &mut problems)).collect();
        let transitions = raw
            .transitions
            .iter()
            .map(|[p, u, v, q]| Transition {
                from: lookup(p, &mut problems),
                tape1: u.as_str().into(),
                tape2: v.as_str().into(),
                to: lookup(q, &mut problems),
            })
            .collect();
        let alphabet = |s: &str, problems: &mut Vec<String>| {
            Alphabet::parse(s).unwrap_or_else(|e| {
                problems.push(e.to_string());
                Alphabet::binary()
            })
        };
        let sigma1 = alphabet(&raw.sigma1, &mut problems);
        let sigma2 = alphabet(&raw.sigma2, &mut problems);
        if !problems.is_empty() {
            return Err(Error::InvalidAutomaton(problems));
        }
        let aut = TwoTapeAutomaton { states: raw.states, sigma1, sigma2, transitions, initial, accepting };
        aut.validate()?;
        Ok(aut)
    }
}

impl From<&TwoTapeAutomaton> for AutomatonJson {
    fn from(a: &TwoTapeAutomaton) -> Self {
        AutomatonJson {
            states: a.states.clone(),
            sigma1: a.sigma1.to_string(),
            sigma2: a.sigma2.to_string(),
            transitions: a
                .transitions
                .iter()
                .map(|t| {
                    [a.states[t.from].clone(), t.tape1.to_string(), t.tape2.to_string(), a.states[t.to].clone()]
                })
                .collect(),
            initial: a.states[a.initial].clone(),
            accepting: a.accepting.iter().map(|&q| a.states[q].clone()).collect(),
        }
    }
}
