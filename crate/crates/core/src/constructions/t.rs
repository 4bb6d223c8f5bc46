//! The automaton 𝒯 for R₁.

use crate::two_tape::{Builder, TwoTapeAutomaton};
use crate::word::Alphabet;

const SIGMA: [&str; 2] = ["0", "1"];

fn build(strict: bool) -> TwoTapeAutomaton {
    let mut b = Builder::new(Alphabet::gamma(), Alphabet::gamma(), "q0");
    for a in SIGMA {
        b.add("q0", a, "", "q0");
    }
    for a in SIGMA {
        b.add("q0", "", a, "q0");
    }
    b.add("q0", "A", "A", "q0").add("q0", "A", "A", "q1");
    for a in SIGMA {
        b.add("q1", a, "", "q1");
    }
    b.add("q1", "", "", "q2");
    if strict {
        b.add("q2", "0", "0", "q2");
    } else {
        for a in SIGMA {
            b.add("q2", a, "0", "q2");
        }
    }
    b.add("q2", "A", "", "q3");
    for a in SIGMA {
        b.add("q3", a, "0", "q3");
    }
    b.add("q3", "", "", "q4");
    for a in SIGMA {
        b.add("q3", a, "", "q5");
    }
    b.add("q4", "", "A", "q2").add("q5", "", "A", "q2");
    b.accepting("q4");
    b.build()
}

/// 𝒯 exactly as tabulated: 6 states, 19 ground transitions, accepting q4.
///
/// The table lets `q2` copy any letter of tape 1 against a 0, so the vₙ
/// segments are not forced into 0*; see [`automaton_t_strict`].
pub fn automaton_t() -> TwoTapeAutomaton {
    build(false)
}

/// 𝒯 with the `q2` loop restricted to `(0, 0)`, which is what vₙ ∈ 0*
/// requires. 18 transitions.
pub fn automaton_t_strict() -> TwoTapeAutomaton {
    build(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        let t = automaton_t();
        assert_eq!(t.states, ["q0", "q1", "q2", "q3", "q4", "q5"]);
        assert_eq!(t.transitions.len(), 19);
        assert_eq!(t.initial, 0);
        assert_eq!(t.accepting, vec![4]);
        assert!(t.find("q2", "A", "", "q3").is_some());
        assert!(t.find("q4", "", "A", "q2").is_some());
        assert!(t.find("q2", "1", "0", "q2").is_some());
        assert_eq!(t.silent_transitions(), 2);
        let d = t.validate().unwrap();
        assert!(d.unreachable.is_empty() && d.cannot_reach_accepting.is_empty());
    }

    #[test]
    fn strict_variant_drops_one_transition() {
        let s = automaton_t_strict();
        assert_eq!(s.transitions.len(), 18);
        assert!(s.find("q2", "1", "0", "q2").is_none());
        assert!(s.find("q2", "0", "0", "q2").is_some());
    }
}
