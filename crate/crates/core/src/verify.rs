//! Named property checks over the whole library, runnable as one suite.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::buchi::{build_a_automaton, buchi_accepts_lasso};
use crate::constructions::{
    alpha, automaton_t, build_decompositions_with, build_run_schema, c_condition_holds, g_reduce, in_r1_encoded,
    in_script_p, r2_automaton, r_automaton, schema_to_run, section_member,
};
use crate::grid::{agreement_bound, decode_h_prefix, separation_bound, GridWord};
use crate::oracle::{buchi_accepts_naive, lasso_pair_accepts_naive};
use crate::parallel::Exec;
use crate::sample;
use crate::two_tape::{accepts_lasso_pair, epsilon_normalize, run_prefix_valid, union, TwoTapeAutomaton};
use crate::word::{lasso_equal, Alphabet, LassoWord, OmegaWord};

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub seed: u64,
    /// Random instances per check.
    pub trials: usize,
    pub exec: Exec,
}

impl Default for Config {
    fn default() -> Self {
        Self { seed: 1, trials: 50, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub millis: u128,
}

type Check = fn(&Config) -> (usize, usize);

const CHECKS: &[(&str, Check)] = &[
    ("lasso-equality-bound", lasso_equality_bound),
    ("coding-identity", coding_identity),
    ("h-continuity-injectivity", h_bounds),
    ("decode-inverts-encode", decode_round_trip),
    ("in-p-vs-example-automaton", in_p_vs_buchi),
    ("buchi-vs-oracle", buchi_vs_oracle),
    ("two-tape-vs-oracle", two_tape_vs_oracle),
    ("union-is-disjunction", union_is_disjunction),
    ("epsilon-normalize-preserves", epsilon_preserves),
    ("schema-replays-through-T", schema_replays),
    ("recurrent-column-blocks-growth", recurrent_column_blocks),
    ("r1-encoded-is-p", r1_encoded_is_p),
    ("r2-matches-conditions", r2_matches_conditions),
    ("g-images-avoid-complement", g_images_avoid_complement),
    ("sections-are-full", sections_are_full),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(cfg: &Config) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, check)| {
            let start = Instant::now();
            let (cases, failures) = check(cfg);
            CheckResult { name, passed: failures == 0, cases, failures, millis: start.elapsed().as_millis() }
        })
        .collect()
}

/// Seeds one RNG per case so results do not depend on the execution mode.
fn cases<T: Send>(cfg: &Config, salt: u64, n: usize, make: impl Fn(&mut sample::Rng64) -> T + Sync + Send) -> Vec<T> {
    let seeds: Vec<u64> = (0..n as u64).map(|i| cfg.seed.wrapping_mul(1_000_003).wrapping_add(salt << 32 | i)).collect();
    cfg.exec.map(&seeds, |&s| make(&mut sample::rng(s)))
}

fn count(oks: Vec<bool>) -> (usize, usize) {
    (oks.len(), oks.iter().filter(|ok| !**ok).count())
}

fn lasso_equality_bound(cfg: &Config) -> (usize, usize) {
    count(cases(cfg, 1, cfg.trials * 4, |rng| {
        let a = sample::lasso(rng, &Alphabet::binary(), 3, 3);
        let b = if rng.gen_bool(0.5) { sample::lasso(rng, &Alphabet::binary(), 3, 3) } else { a.normalize() };
        let n = a.prefix().len() + b.prefix().len() + 2 * crate::word::lcm(a.period().len(), b.period().len());
        lasso_equal(&a, &b) == (a.prefix_of(n) == b.prefix_of(n))
    }))
}

fn coding_identity(_: &Config) -> (usize, usize) {
    count(vec![GridWord::zero().encode_h().prefix_of(100_000) == alpha().prefix_of(100_000)])
}

fn h_bounds(cfg: &Config) -> (usize, usize) {
    count(cases(cfg, 2, cfg.trials, |rng| {
        let (x, y) = (sample::grid(rng), sample::grid(rng));
        let Some(p) = x.distance_exponent(&y) else { return true };
        let n = separation_bound(p);
        let (a, b) = (x.encode_h().prefix_of(n), y.encode_h().prefix_of(n));
        let k = agreement_bound(p);
        a[..k] == b[..k] && a != b
    }))
}

fn decode_round_trip(cfg: &Config) -> (usize, usize) {
    count(cases(cfg, 3, cfg.trials, |rng| {
        let x = sample::grid(rng);
        let n = rng.gen_range(0..2000);
        match decode_h_prefix(&x.encode_h().prefix_of(n)) {
            Ok(part) => part.0.iter().all(|(&(m, r), &c)| x.entry(m, r) == c),
            Err(_) => false,
        }
    }))
}

fn in_p_vs_buchi(cfg: &Config) -> (usize, usize) {
    let a = build_a_automaton(false);
    count(cases(cfg, 4, cfg.trials, |rng| {
        let x = sample::grid(rng);
        let mut columns = std::iter::once(x.default_column()).chain(x.overrides().values());
        x.in_p() == columns.all(|c| !buchi_accepts_lasso(&a, c))
    }))
}

fn buchi_vs_oracle(cfg: &Config) -> (usize, usize) {
    let bin = Alphabet::binary();
    let (a, ac) = (build_a_automaton(false), build_a_automaton(true));
    count(cases(cfg, 5, cfg.trials * 4, |rng| {
        let w = sample::lasso(rng, &bin, 3, 3);
        let ones = w.normalize().period().contains(&'1');
        buchi_accepts_lasso(&a, &w) == ones
            && buchi_accepts_lasso(&ac, &w) == !ones
            && buchi_accepts_naive(&a, &w) == ones
            && buchi_accepts_naive(&ac, &w) == !ones
    }))
}

fn two_tape_vs_oracle(cfg: &Config) -> (usize, usize) {
    let bin = Alphabet::binary();
    count(cases(cfg, 6, cfg.trials * 4, |rng| {
        let states = rng.gen_range(1..=4);
        let transitions = rng.gen_range(1..=8);
        let aut = sample::automaton(rng, &bin, &bin, states, transitions, 2);
        let (w1, w2) = (sample::lasso(rng, &bin, 2, 3), sample::lasso(rng, &bin, 2, 3));
        match accepts_lasso_pair(&aut, &w1, &w2) {
            Ok(out) => out.is_accepted() == lasso_pair_accepts_naive(&aut, &w1, &w2),
            Err(_) => false,
        }
    }))
}

fn random_pair(rng: &mut sample::Rng64) -> (LassoWord, LassoWord) {
    let g = Alphabet::gamma();
    (sample::lasso(rng, &g, 3, 3), sample::lasso(rng, &g, 3, 3))
}

fn accepts(aut: &TwoTapeAutomaton, w1: &LassoWord, w2: &LassoWord) -> bool {
    accepts_lasso_pair(aut, w1, w2).map(|o| o.is_accepted()).unwrap_or(false)
}

fn union_is_disjunction(cfg: &Config) -> (usize, usize) {
    let g = Alphabet::gamma();
    count(cases(cfg, 7, cfg.trials, |rng| {
        let a = sample::automaton(rng, &g, &g, 3, 6, 1);
        let b = sample::automaton(rng, &g, &g, 3, 6, 1);
        let (w1, w2) = random_pair(rng);
        let Ok(u) = union(&a, &b) else { return false };
        accepts(&u, &w1, &w2) == (accepts(&a, &w1, &w2) || accepts(&b, &w1, &w2))
    }))
}

fn epsilon_preserves(cfg: &Config) -> (usize, usize) {
    let g = Alphabet::gamma();
    count(cases(cfg, 8, cfg.trials, |rng| {
        let a = sample::automaton(rng, &g, &g, 4, 9, 1);
        let (w1, w2) = random_pair(rng);
        accepts(&a, &w1, &w2) == accepts(&epsilon_normalize(&a), &w1, &w2)
    }))
}

fn schema_replays(cfg: &Config) -> (usize, usize) {
    let t = automaton_t();
    count(cases(cfg, 9, cfg.trials, |rng| {
        let x = sample::grid_in_p(rng);
        let Ok(schema) = build_run_schema(&x) else { return false };
        let (h, a) = g_reduce(&x);
        let r = run_prefix_valid(&t, &schema_to_run(&schema, 100), &h, &a);
        r.is_valid() && r.accepting_visits == schema.growth_steps(100)
    }))
}

fn recurrent_column_blocks(cfg: &Config) -> (usize, usize) {
    count(cases(cfg, 10, cfg.trials.min(50), |rng| {
        let x = sample::grid_column1_recurrent(rng);
        let r = build_decompositions_with(&x, 20, 3, Exec::Sequential);
        r.branches() > 0 && r.max_growth() == Some(0)
    }))
}

fn r1_encoded_is_p(cfg: &Config) -> (usize, usize) {
    count(cases(cfg, 11, cfg.trials.min(50), |rng| {
        let x = if rng.gen_bool(0.5) { sample::grid_in_p(rng) } else { sample::grid(rng) };
        matches!(in_r1_encoded(&x), Ok(v) if v == x.in_p())
    }))
}

fn r2_matches_conditions(cfg: &Config) -> (usize, usize) {
    let r2 = r2_automaton();
    count(cases(cfg, 12, cfg.trials, |rng| {
        let (w1, w2) = random_pair(rng);
        let (o1, o2) = (OmegaWord::from(w1.clone()), OmegaWord::from(w2.clone()));
        let any = (1..=5).any(|j| c_condition_holds(j, &o1, &o2).unwrap_or(false));
        // every lasso pair lies in the complement
        any && accepts(&r2, &w1, &w2)
    }))
}

fn g_images_avoid_complement(cfg: &Config) -> (usize, usize) {
    count(cases(cfg, 13, cfg.trials.min(50), |rng| {
        let x = sample::grid(rng);
        let (h, a) = g_reduce(&x);
        (1..=5).all(|j| matches!(c_condition_holds(j, &h, &a), Ok(false)))
            && matches!(in_script_p(&h), Ok(v) if v == x.in_p())
    }))
}

fn sections_are_full(cfg: &Config) -> (usize, usize) {
    let r = r_automaton();
    count(cases(cfg, 14, cfg.trials, |rng| {
        let (s, u) = random_pair(rng);
        matches!(section_member(&s, &u), Ok(true)) && accepts(&r, &s, &u)
    }))
}
