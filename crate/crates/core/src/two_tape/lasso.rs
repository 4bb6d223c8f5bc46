//! Exact acceptance of a pair of lasso words.
//!
//! A configuration is `(state, pos₁, pos₂)` where each position ranges over
//! the finite position space of its (normalized) lasso. The pair is accepted
//! iff a reachable strongly connected component of the configuration graph
//! contains an accepting configuration, an internal edge that reads tape 1,
//! and an internal edge that reads tape 2. Any closed walk then stitched
//! through these three is a cycle of a successful computation; conversely
//! an accepting run eventually stays inside one such component.

use std::collections::VecDeque;

use serde::Serialize;

use super::run::RunPrefix;
use super::TwoTapeAutomaton;
use crate::error::{Error, Result};
use crate::graph::tarjan;
use crate::word::{LassoWord, Track};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Accepted,
    Rejected,
    Inconclusive,
}

/// A successful computation `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LassoCertificate {
    pub stem: RunPrefix,
    pub cycle: RunPrefix,
}

/// Evidence gathered by a bounded search that found no certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Largest number of accepting visits on one explored path, counting a
    /// visit only when both tapes advanced since the previous counted one.
    pub fair_visits: usize,
    /// A path realizing `fair_visits`.
    pub witness: RunPrefix,
    /// Largest `min(pos₁, pos₂)` over explored configurations.
    pub deepest: usize,
    pub expansions: usize,
    pub frontier: usize,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    Accepted(LassoCertificate),
    Rejected,
    Inconclusive(SearchStats),
}

impl SearchOutcome {
    pub fn verdict(&self) -> Verdict {
        match self {
            SearchOutcome::Accepted(_) => Verdict::Accepted,
            SearchOutcome::Rejected => Verdict::Rejected,
            SearchOutcome::Inconclusive(_) => Verdict::Inconclusive,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, SearchOutcome::Accepted(_))
    }

    pub fn certificate(&self) -> Option<&LassoCertificate> {
        match self {
            SearchOutcome::Accepted(c) => Some(c),
            _ => None,
        }
    }

    pub fn stats(&self) -> Option<&SearchStats> {
        match self {
            SearchOutcome::Inconclusive(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    to: usize,
    transition: usize,
    reads1: bool,
    reads2: bool,
}

struct ConfigGraph {
    // discovery (BFS) order
    configs: Vec<(usize, usize, usize)>,
    adj: Vec<Vec<(usize, Edge)>>,
    parent: Vec<Option<(usize, usize)>>,
}

fn explore(aut: &TwoTapeAutomaton, t1: &Track, t2: &Track) -> ConfigGraph {
    let (l1, l2) = (t1.len(), t2.len());
    let key = |q: usize, p1: usize, p2: usize| (q * l1 + p1) * l2 + p2;
    let mut id = vec![usize::MAX; aut.states.len() * l1 * l2];
    let outgoing = aut.outgoing();
    let mut g = ConfigGraph { configs: Vec::new(), adj: Vec::new(), parent: Vec::new() };

    id[key(aut.initial, 0, 0)] = 0;
    g.configs.push((aut.initial, 0, 0));
    g.adj.push(Vec::new());
    g.parent.push(None);
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let (q, p1, p2) = g.configs[c];
        for &ti in &outgoing[q] {
            let t = &aut.transitions[ti];
            let (Some(n1), Some(n2)) = (t1.advance(p1, &t.tape1), t2.advance(p2, &t.tape2)) else {
                continue;
            };
            let k = key(t.to, n1, n2);
            if id[k] == usize::MAX {
                id[k] = g.configs.len();
                g.configs.push((t.to, n1, n2));
                g.adj.push(Vec::new());
                g.parent.push(Some((c, ti)));
                queue.push_back(id[k]);
            }
            let edge = Edge { to: id[k], transition: ti, reads1: !t.tape1.is_empty(), reads2: !t.tape2.is_empty() };
            g.adj[c].push((id[k], edge));
        }
    }
    g
}

/// Shortest path inside `allowed` from `from` to any vertex satisfying
/// `stop`, as a list of edges.
fn path_within(g: &ConfigGraph, allowed: &dyn Fn(usize) -> bool, from: usize, stop: &dyn Fn(usize) -> bool) -> Vec<Edge> {
    if stop(from) {
        return Vec::new();
    }
    let mut back: Vec<Option<(usize, Edge)>> = vec![None; g.configs.len()];
    let mut seen = vec![false; g.configs.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &g.adj[v] {
            if seen[w] || !allowed(w) {
                continue;
            }
            seen[w] = true;
            back[w] = Some((v, e));
            if stop(w) {
                let mut path = Vec::new();
                let mut cur = w;
                while let Some((prev, e)) = back[cur] {
                    path.push(e);
                    cur = prev;
                }
                path.reverse();
                return path;
            }
            queue.push_back(w);
        }
    }
    unreachable!("target lies in the same strongly connected component")
}

/// Decides whether `(w1, w2)` is accepted, with a stem-and-cycle certificate
/// on acceptance.
pub fn accepts_lasso_pair(aut: &TwoTapeAutomaton, w1: &LassoWord, w2: &LassoWord) -> Result<SearchOutcome> {
    aut.validate()?;
    for (tape, alphabet, w) in [(1, &aut.sigma1, w1), (2, &aut.sigma2, w2)] {
        alphabet
            .check_word(w.prefix())
            .and_then(|_| alphabet.check_word(w.period()))
            .map_err(|e| Error::AlphabetMismatch(format!("tape {tape} word {w}: {e}")))?;
    }
    let (t1, t2) = (Track::new(w1), Track::new(w2));
    let g = explore(aut, &t1, &t2);
    let sccs = tarjan(&g.adj, &[0]);

    // per component: first internal edge reading tape 1 / tape 2 (source, edge)
    let mut reads1: Vec<Option<(usize, Edge)>> = vec![None; sccs.count];
    let mut reads2: Vec<Option<(usize, Edge)>> = vec![None; sccs.count];
    for (v, edges) in g.adj.iter().enumerate() {
        let c = sccs.comp[v];
        for &(w, e) in edges {
            if sccs.comp[w] != c {
                continue;
            }
            if e.reads1 && reads1[c].is_none() {
                reads1[c] = Some((v, e));
            }
            if e.reads2 && reads2[c].is_none() {
                reads2[c] = Some((v, e));
            }
        }
    }

    let anchor = (0..g.configs.len()).find(|&v| {
        let c = sccs.comp[v];
        aut.is_accepting(g.configs[v].0) && reads1[c].is_some() && reads2[c].is_some()
    });
    let Some(anchor) = anchor else {
        return Ok(SearchOutcome::Rejected);
    };

    let mut stem = Vec::new();
    let mut cur = anchor;
    while let Some((prev, ti)) = g.parent[cur] {
        stem.push(ti);
        cur = prev;
    }
    stem.reverse();

    let c = sccs.comp[anchor];
    let inside = |v: usize| sccs.comp[v] == c;
    let (s1, e1) = reads1[c].expect("checked above");
    let (s2, e2) = reads2[c].expect("checked above");
    let mut cycle: Vec<Edge> = Vec::new();
    let mut at = anchor;
    let mut hops = vec![(s1, e1)];
    if !e1.reads2 {
        hops.push((s2, e2));
    }
    for (src, e) in hops {
        cycle.extend(path_within(&g, &inside, at, &|v| v == src));
        cycle.push(e);
        at = e.to;
    }
    cycle.extend(path_within(&g, &inside, at, &|v| v == anchor));

    Ok(SearchOutcome::Accepted(LassoCertificate {
        stem: RunPrefix::new(stem),
        cycle: RunPrefix::new(cycle.iter().map(|e| e.transition).collect()),
    }))
}
