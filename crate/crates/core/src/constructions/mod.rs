//! The relation `R = R₁ ∪ R₂` whose section at α is the Π₃⁰-complete set
//! `𝒫 = h(P) ∪ (h(Σ^{ω²}))⁻`, with every other section equal to `Γ^ω`.

mod complement;
mod decomposition;
mod schema;
mod t;

pub use complement::{c_automaton, c_condition_holds, r2_automaton};
pub use decomposition::{
    build_decompositions, build_decompositions_with, enumerate_decompositions, Decomposition, DecompositionReport,
    KStats,
};
pub use schema::{build_run_schema, decomposition_run, schema_to_run, RunSchema};
pub use t::{automaton_t, automaton_t_strict};

use crate::error::{Error, Result};
use crate::grid::GridWord;
use crate::two_tape::{run_prefix_valid, union, TwoTapeAutomaton};
use crate::word::{Alphabet, BlockShape, BlockWord, FiniteWord, LassoWord, OmegaWord};

/// `α = A·0·A·0²·A·0³·…`
pub fn alpha() -> OmegaWord {
    OmegaWord::Block(BlockWord::new(BlockShape::Alpha, |n| FiniteWord(vec!['0'; n]), |n| n))
}

pub fn r_automaton() -> TwoTapeAutomaton {
    union(&automaton_t(), &r2_automaton()).expect("both are over Γ × Γ")
}

/// `g(x) = (h(x), α)`.
pub fn g_reduce(x: &GridWord) -> (OmegaWord, OmegaWord) {
    (x.encode_h(), alpha())
}

/// Membership in `𝒫`. A lasso is never an h-image (h-image blocks grow),
/// α is the image of the all-zero grid, and `h(x) ∈ 𝒫` iff `x ∈ P`.
pub fn in_script_p(w: &OmegaWord) -> Result<bool> {
    match w {
        OmegaWord::Lasso(_) => Ok(true),
        OmegaWord::Block(b) => match b.shape() {
            BlockShape::Alpha => Ok(true),
            BlockShape::HImage(x) => Ok(x.in_p()),
            BlockShape::Custom(name) => Err(Error::UnknownShape(name.clone())),
        },
    }
}

/// Whether `(h(x), α) ∈ R₁`, i.e. `x ∈ P`. For `x ∈ P` the greedy run
/// schema is also built and replayed through 𝒯 for 100 blocks.
pub fn in_r1_encoded(x: &GridWord) -> Result<bool> {
    if !x.in_p() {
        return Ok(false);
    }
    const DEPTH: usize = 100;
    let schema = build_run_schema(x)?;
    let run = schema_to_run(&schema, DEPTH);
    let (h, a) = g_reduce(x);
    let report = run_prefix_valid(&automaton_t(), &run, &h, &a);
    let growth = schema.growth_steps(DEPTH);
    if !report.is_valid() || report.accepting_visits != growth {
        return Err(Error::SchemaReplay(format!("{report:?}, expected {growth} accepting visits")));
    }
    Ok(true)
}

/// `σ ∈ R_u`. A lasso `u` is never α, so the section is all of `Γ^ω`.
pub fn section_member(sigma: &LassoWord, u: &LassoWord) -> Result<bool> {
    let gamma = Alphabet::gamma();
    for w in [sigma, u] {
        gamma.check_word(w.prefix())?;
        gamma.check_word(w.period())?;
    }
    Ok(true)
}
