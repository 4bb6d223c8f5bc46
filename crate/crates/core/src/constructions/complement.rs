//! The five relations whose union is `Γ^ω × Γ^ω − h(Σ^{ω²}) × {α}`.

use crate::error::{Error, Result};
use crate::two_tape::{union, Builder, TwoTapeAutomaton};
use crate::word::{Alphabet, BlockShape, LassoWord, OmegaWord};

const SIGMA: [&str; 2] = ["0", "1"];
const GAMMA: [&str; 3] = ["0", "1", "A"];

/// Accepting state that reads both tapes in lockstep forever.
fn sink(b: &mut Builder, name: &str) {
    for a in GAMMA {
        for c in GAMMA {
            b.add(name, a, c, name);
        }
    }
    b.accepting(name);
}

fn builder(j: usize) -> Builder {
    Builder::new(Alphabet::gamma(), Alphabet::gamma(), &format!("c{j}_start"))
}

/// One tape eventually has no more A: guess the point, then read that tape
/// over Σ only, in lockstep with the other.
fn c1() -> TwoTapeAutomaton {
    let mut b = builder(1);
    let (start, post1, post2) = ("c1_start", "c1_post1", "c1_post2");
    for a in GAMMA {
        for c in GAMMA {
            b.add(start, a, c, start);
        }
    }
    for a in SIGMA {
        for c in GAMMA {
            for from in [start, post1] {
                b.add(from, a, c, post1);
            }
            for from in [start, post2] {
                b.add(from, c, a, post2);
            }
        }
    }
    b.accepting(post1).accepting(post2);
    b.build()
}

/// One tape does not start with a word of `A·Σ·A·Σ²·A`.
fn c2() -> TwoTapeAutomaton {
    let mut b = builder(2);
    let pattern = ["A", "S", "A", "S", "S", "A"];
    for tape in [1, 2] {
        let at = |i: usize| if i == 0 { "c2_start".to_string() } else { format!("c2_t{tape}_{i}") };
        for (i, want) in pattern.iter().enumerate() {
            for c in GAMMA {
                let fits = if *want == "S" { c != "A" } else { c == *want };
                let to = if !fits {
                    "c2_sink".to_string()
                } else if i + 1 < pattern.len() {
                    at(i + 1)
                } else {
                    continue;
                };
                let (u, v) = if tape == 1 { (c, "") } else { ("", c) };
                b.add(&at(i), u, v, &to);
            }
        }
    }
    sink(&mut b, "c2_sink");
    b.build()
}

/// Tape 2 carries a 1.
fn c3() -> TwoTapeAutomaton {
    let mut b = builder(3);
    for a in GAMMA {
        for c in ["0", "A"] {
            b.add("c3_start", a, c, "c3_start");
        }
        b.add("c3_start", a, "1", "c3_sink");
    }
    sink(&mut b, "c3_sink");
    b.build()
}

/// Shared prefix of C₄ and C₅: `A` on both tapes, then `n ≥ 1` rounds of
/// one Σ*-block plus A on each tape. Ends at `{prefix}_cnt`, having read
/// the A that closes the n-th block on tape 2.
fn count_blocks(b: &mut Builder, j: usize) -> String {
    let (start, blk1, blk2, done) =
        (format!("c{j}_start"), format!("c{j}_blk1"), format!("c{j}_blk2"), format!("c{j}_cnt"));
    b.add(&start, "A", "A", &blk1);
    for a in SIGMA {
        b.add(&blk1, a, "", &blk1);
        b.add(&blk2, "", a, &blk2);
    }
    b.add(&blk1, "A", "", &blk2);
    b.add(&blk2, "", "A", &blk1);
    b.add(&blk2, "", "A", &done);
    done
}

/// From `cmp`, finishing tape 2's block (tape 1's block already closed)
/// or tape 1's block, then the sink.
fn finish(b: &mut Builder, j: usize) {
    let (rest1, rest2, sink_name) = (format!("c{j}_rest1"), format!("c{j}_rest2"), format!("c{j}_sink"));
    for a in SIGMA {
        b.add(&rest1, a, "", &rest1);
        b.add(&rest2, "", a, &rest2);
    }
    b.add(&rest1, "A", "", &sink_name);
    b.add(&rest2, "", "A", &sink_name);
    sink(b, &sink_name);
}

/// Block n + 1 has different lengths on the two tapes.
fn c4() -> TwoTapeAutomaton {
    let mut b = builder(4);
    let cmp = count_blocks(&mut b, 4);
    for a in SIGMA {
        for c in SIGMA {
            b.add(&cmp, a, c, &cmp);
        }
        b.add(&cmp, "A", a, "c4_rest2");
        b.add(&cmp, a, "A", "c4_rest1");
    }
    finish(&mut b, 4);
    b.build()
}

/// Block n + 2 of tape 1 is not one longer than block n + 1 of tape 2.
fn c5() -> TwoTapeAutomaton {
    let mut b = builder(5);
    let skip = count_blocks(&mut b, 5);
    for a in SIGMA {
        b.add(&skip, a, "", &skip);
    }
    b.add(&skip, "A", "", "c5_cmp");
    for a in SIGMA {
        for c in SIGMA {
            b.add("c5_cmp", a, c, "c5_cmp");
        }
        b.add("c5_cmp", "A", a, "c5_rest2");
        // tape 1 is ahead by one; it must be ahead by at least two
        b.add("c5_cmp", a, "A", "c5_ahead");
        b.add("c5_ahead", a, "", "c5_rest1");
    }
    b.add("c5_cmp", "A", "A", "c5_sink");
    finish(&mut b, 5);
    b.build()
}

pub fn c_automaton(j: usize) -> TwoTapeAutomaton {
    match j {
        1 => c1(),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(),
        _ => panic!("complement parts are numbered 1 to 5, got {j}"),
    }
}

/// `C₁ ∪ … ∪ C₅`.
pub fn r2_automaton() -> TwoTapeAutomaton {
    (2..=5).fold(c_automaton(1), |acc, j| union(&acc, &c_automaton(j)).expect("all parts are over Γ × Γ"))
}

/// What the block conditions need to know about a word: the lengths of its
/// A-delimited blocks, when it starts with A.
enum Profile<'a> {
    Lasso(&'a LassoWord),
    /// Block `n` has length `n`: α and every h-image.
    Growing,
}

fn profile<'a>(w: &'a OmegaWord, j: usize) -> Result<Profile<'a>> {
    match w {
        OmegaWord::Lasso(l) => Ok(Profile::Lasso(l)),
        OmegaWord::Block(b) => match b.shape() {
            BlockShape::Alpha | BlockShape::HImage(_) => Ok(Profile::Growing),
            BlockShape::Custom(name) => Err(Error::Undecidable(format!("C{j} on block word {name:?}"))),
        },
    }
}

impl Profile<'_> {
    /// Lengths of blocks `1..=count`; `None` from the first block that is
    /// never closed by an A. `Err(())` when the word does not start with A.
    fn blocks(&self, count: usize) -> std::result::Result<Vec<Option<usize>>, ()> {
        match self {
            Profile::Growing => Ok((1..=count).map(Some).collect()),
            Profile::Lasso(w) => {
                if w.letter_at(1) != 'A' {
                    return Err(());
                }
                let mut out = Vec::with_capacity(count);
                let closes = w.period().contains(&'A');
                let limit = w.prefix().len() + w.period().len() + 1;
                let mut pos = 2;
                let mut len = 0;
                while out.len() < count {
                    if !closes && pos > limit {
                        out.resize(count, None);
                        break;
                    }
                    if w.letter_at(pos) == 'A' {
                        out.push(Some(len));
                        len = 0;
                    } else {
                        len += 1;
                    }
                    pos += 1;
                }
                Ok(out)
            }
        }
    }

    /// Every block index past this bound repeats the block pattern of an
    /// earlier one (lassos), or is longer than any block of a lasso partner.
    fn size(&self) -> (usize, usize) {
        match self {
            Profile::Growing => (0, 1),
            Profile::Lasso(w) => {
                let a = w.period().iter().filter(|&&c| c == 'A').count().max(1);
                (w.prefix().len() + w.period().len(), a)
            }
        }
    }
}

fn has_a_prefix_in_pattern(w: &OmegaWord) -> bool {
    let p = w.prefix_of(6);
    p[0] == 'A' && p[2] == 'A' && p[5] == 'A' && [1, 3, 4].iter().all(|&i| p[i] != 'A')
}

/// Evaluates the defining condition of `C_j` on the words themselves.
pub fn c_condition_holds(j: usize, w1: &OmegaWord, w2: &OmegaWord) -> Result<bool> {
    let finitely_many_a = |w: &OmegaWord| match w {
        OmegaWord::Lasso(l) => !l.period().contains(&'A'),
        OmegaWord::Block(_) => false,
    };
    match j {
        1 => Ok(finitely_many_a(w1) || finitely_many_a(w2)),
        2 => Ok(!has_a_prefix_in_pattern(w1) || !has_a_prefix_in_pattern(w2)),
        3 => match w2 {
            OmegaWord::Lasso(l) => Ok(l.contains_letter('1')),
            OmegaWord::Block(b) => match b.shape() {
                BlockShape::Alpha => Ok(false),
                BlockShape::HImage(x) => {
                    Ok(std::iter::once(x.default_column()).chain(x.overrides().values()).any(|c| c.contains_letter('1')))
                }
                BlockShape::Custom(name) => Err(Error::Undecidable(format!("C3 on block word {name:?}"))),
            },
        },
        4 | 5 => {
            let (p1, p2) = (profile(w1, j)?, profile(w2, j)?);
            let ((s1, a1), (s2, a2)) = (p1.size(), p2.size());
            let bound = s1 + s2 + 4 + a1 * a2;
            let (Ok(b1), Ok(b2)) = (p1.blocks(bound + 2), p2.blocks(bound + 2)) else {
                return Ok(false);
            };
            // n counts the blocks before the compared ones; n ≥ 1
            let closed = |b: &[Option<usize>], upto: usize| b[..upto].iter().all(Option::is_some);
            Ok((1..=bound).any(|n| {
                if j == 4 {
                    closed(&b1, n + 1) && closed(&b2, n + 1) && b1[n] != b2[n]
                } else {
                    closed(&b1, n + 2) && closed(&b2, n + 1) && b1[n + 1] != b2[n].map(|l| l + 1)
                }
            }))
        }
        _ => panic!("complement parts are numbered 1 to 5, got {j}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alpha, g_reduce};
    use crate::grid::GridWord;
    use crate::oracle::lasso_pair_accepts_naive;
    use crate::sample;
    use crate::two_tape::accepts_lasso_pair;

    fn lasso(s: &str) -> LassoWord {
        LassoWord::parse(s, &Alphabet::gamma()).unwrap()
    }

    fn accepts(aut: &TwoTapeAutomaton, a: &str, b: &str) -> bool {
        accepts_lasso_pair(aut, &lasso(a), &lasso(b)).unwrap().is_accepted()
    }

    fn holds(j: usize, a: &str, b: &str) -> bool {
        c_condition_holds(j, &lasso(a).into(), &lasso(b).into()).unwrap()
    }

    #[test]
    fn parts_are_valid_and_small() {
        for j in 1..=5 {
            let c = c_automaton(j);
            let d = c.validate().unwrap();
            assert!(d.unreachable.is_empty(), "C{j}: {:?}", d.unreachable);
            assert_eq!(c.silent_transitions(), 0);
            assert!(c.states.len() <= 12, "C{j}");
        }
        let r2 = r2_automaton();
        assert_eq!(r2.states.len(), (1..=5).map(|j| c_automaton(j).states.len()).sum::<usize>() + 4);
    }

    #[test]
    fn examples() {
        assert!(accepts(&c_automaton(1), "|0", "|0"));
        assert!(holds(1, "|0", "|0"));
        assert!(accepts(&c_automaton(3), "|A", "|1"));
        assert!(accepts(&c_automaton(3), "0|1A", "A|01"));
        assert!(accepts(&c_automaton(4), "A0A|0A", "A0A00|00A"));
        assert!(holds(4, "A0A|0A", "A0A00|00A"));
        assert!(accepts(&r2_automaton(), "A0A|0A", "A0A00|00A"));
    }

    #[test]
    fn c2_reads_the_pattern_literally() {
        assert!(!holds(2, "A0A01|A", "A1A10|A"));
        assert!(holds(2, "A0A0A|A", "A1A10|A"));
        assert!(holds(2, "A0A01|A", "0|A"));
        assert!(!accepts(&c_automaton(2), "A0A01|A", "A1A10|A"));
        assert!(accepts(&c_automaton(2), "A0A01|A", "AA|0"));
    }

    #[test]
    fn c5_needs_a_surplus_other_than_one() {
        // tape 1 blocks 1, 2, 2, …; tape 2 blocks 1, 1, …
        assert!(!holds(5, "A0A|00A", "A|0A"));
        assert!(!accepts(&c_automaton(5), "A0A|00A", "A|0A"));
        // tape 1 blocks 1, 2, 1, 1, …
        assert!(holds(5, "A0A00A|0A", "A|0A"));
        assert!(accepts(&c_automaton(5), "A0A00A|0A", "A|0A"));
        assert!(holds(5, "A0A|0A", "A|0A"));
    }

    #[test]
    fn h_images_against_alpha_satisfy_no_part() {
        let mut rng = sample::rng(3);
        for _ in 0..20 {
            let (h, a) = g_reduce(&sample::grid(&mut rng));
            for j in 1..=5 {
                assert!(!c_condition_holds(j, &h, &a).unwrap(), "C{j}");
            }
        }
        let zero = GridWord::zero().encode_h();
        for j in [1, 2, 4, 5] {
            assert!(!c_condition_holds(j, &zero, &alpha()).unwrap());
        }
    }

    #[test]
    fn block_conditions_against_tagged_words() {
        let a = alpha();
        // a lasso with bounded blocks differs from α's blocks eventually
        assert!(c_condition_holds(4, &lasso("A|0A").into(), &a).unwrap());
        assert!(c_condition_holds(5, &a, &lasso("A|0A").into()).unwrap());
        // no A after the start: no closed block to compare
        assert!(!c_condition_holds(4, &lasso("A|0").into(), &a).unwrap());
        let custom = OmegaWord::Block(crate::word::BlockWord::new(
            BlockShape::Custom("odd".into()),
            |n| vec!['0'; 2 * n].into(),
            |n| 2 * n,
        ));
        assert!(matches!(c_condition_holds(4, &custom, &a), Err(Error::Undecidable(_))));
        assert!(c_condition_holds(2, &custom, &a).is_ok());
    }

    #[test]
    fn automata_match_conditions_on_random_lassos() {
        let mut rng = sample::rng(21);
        let gamma = Alphabet::gamma();
        for _ in 0..150 {
            let (w1, w2) = (sample::lasso(&mut rng, &gamma, 5, 4), sample::lasso(&mut rng, &gamma, 5, 4));
            for j in 1..=5 {
                let aut = c_automaton(j);
                let got = accepts_lasso_pair(&aut, &w1, &w2).unwrap().is_accepted();
                let want = c_condition_holds(j, &w1.clone().into(), &w2.clone().into()).unwrap();
                assert_eq!(got, want, "C{j} on ({w1}, {w2})");
                assert_eq!(got, lasso_pair_accepts_naive(&aut, &w1, &w2), "C{j} oracle on ({w1}, {w2})");
            }
        }
    }

    #[test]
    fn block_shaped_lassos_exercise_c4_c5() {
        // words that do start with A·Σ·A·Σ²·A, so C₂ is out of the way
        let mut rng = sample::rng(22);
        let bin = Alphabet::binary();
        let mut hits = [0usize; 2];
        for _ in 0..150 {
            let mk = |rng: &mut sample::Rng64| {
                let mut p = String::from("A");
                for _ in 0..rand::Rng::gen_range(rng, 2..5) {
                    let n = rand::Rng::gen_range(rng, 0..4);
                    p.extend(sample::word(rng, &bin, n));
                    p.push('A');
                }
                let n = rand::Rng::gen_range(rng, 0..3);
                let per: String = sample::word(rng, &bin, n).into_iter().chain(['A']).collect();
                lasso(&format!("{p}|{per}"))
            };
            let (w1, w2) = (mk(&mut rng), mk(&mut rng));
            for (i, j) in [4, 5].into_iter().enumerate() {
                let got = accepts_lasso_pair(&c_automaton(j), &w1, &w2).unwrap().is_accepted();
                let want = c_condition_holds(j, &w1.clone().into(), &w2.clone().into()).unwrap();
                assert_eq!(got, want, "C{j} on ({w1}, {w2})");
                hits[i] += usize::from(got);
            }
        }
        assert!(hits[0] > 10 && hits[1] > 10, "{hits:?}");
    }
}
