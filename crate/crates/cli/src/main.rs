use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use infinitary::buchi::{build_a_automaton, buchi_accepts_lasso, BuchiAutomaton};
use infinitary::constructions::{
    alpha, automaton_t, c_automaton, g_reduce, r2_automaton, r_automaton, section_member,
};
use infinitary::grid::decode_h_prefix;
use infinitary::two_tape::{accepts_lasso_pair, bounded_run_search, SearchOutcome};
use infinitary::verify::{run_suite, Config};
use infinitary::{Alphabet, Error, Exec, GridWord, LassoWord, TwoTapeAutomaton};
use serde_json::json;

/// Infinitary rational relations over {0, 1, A}: membership, coding and
/// verification.
#[derive(Parser)]
#[command(name = "infinitary", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of α = A·0·A·00·A·000·…
    Alpha {
        #[arg(long)]
        prefix: usize,
    },
    /// Print a prefix of h(x) for a grid word.
    Encode {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        prefix: usize,
    },
    /// Read grid entries back from a prefix of an h-image.
    Decode {
        #[arg(long)]
        word: String,
    },
    /// Decide membership of a lasso pair (or a lasso word, for A and Acomp).
    Member {
        #[command(flatten)]
        aut: AutArg,
        #[arg(long, num_args = 2, value_names = ["LASSO1", "LASSO2"])]
        pair: Option<Vec<String>>,
        /// Input word for the one-tape automata A and Acomp.
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Bounded run search on (h(x), α).
    Search {
        #[command(flatten)]
        aut: AutArg,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Whether every column of a grid word has finitely many 1s.
    #[command(name = "inP")]
    InP {
        #[arg(long)]
        grid: PathBuf,
    },
    /// Whether σ belongs to the section of R at u.
    Sections {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        u: String,
    },
    /// Print a built-in automaton.
    Export {
        #[arg(long)]
        aut: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Run the property suite.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct AutArg {
    /// T, C1..C5, R2, R, A or Acomp
    #[arg(long)]
    aut: Option<String>,
    #[arg(long)]
    aut_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

enum Builtin {
    TwoTape(TwoTapeAutomaton),
    OneTape(BuchiAutomaton),
}

const NAMES: &str = "T, C1, C2, C3, C4, C5, R2, R, A, Acomp";

fn builtin(name: &str) -> Result<Builtin, String> {
    Ok(match name {
        "T" => Builtin::TwoTape(automaton_t()),
        "C1" | "C2" | "C3" | "C4" | "C5" => Builtin::TwoTape(c_automaton(name[1..].parse().expect("digit"))),
        "R2" => Builtin::TwoTape(r2_automaton()),
        "R" => Builtin::TwoTape(r_automaton()),
        "A" => Builtin::OneTape(build_a_automaton(false)),
        "Acomp" => Builtin::OneTape(build_a_automaton(true)),
        _ => return Err(format!("unknown automaton {name:?}; built-in names are {NAMES}")),
    })
}

fn load(arg: &AutArg) -> Result<Builtin, String> {
    match (&arg.aut, &arg.aut_file) {
        (Some(name), _) => builtin(name),
        (None, Some(path)) => {
            let text = read(path)?;
            TwoTapeAutomaton::from_json(&text).map(Builtin::TwoTape).map_err(|e| format!("{}: {e}", path.display()))
        }
        (None, None) => Err("one of --aut or --aut-file is required".into()),
    }
}

fn two_tape(arg: &AutArg) -> Result<TwoTapeAutomaton, String> {
    match load(arg)? {
        Builtin::TwoTape(a) => Ok(a),
        Builtin::OneTape(_) => Err("A and Acomp read one tape; use --word".into()),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn grid(path: &Path) -> Result<GridWord, String> {
    GridWord::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn lasso(s: &str, alphabet: &Alphabet) -> Result<LassoWord, String> {
    LassoWord::parse(s, alphabet).map_err(|e| format!("{s:?}: {e}"))
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Exit statuses: 0 accepted or true, 1 rejected or false, 3 inconclusive.
fn verdict_code(outcome: &SearchOutcome) -> u8 {
    match outcome {
        SearchOutcome::Accepted(_) => 0,
        SearchOutcome::Rejected => 1,
        SearchOutcome::Inconclusive(_) => 3,
    }
}

fn truth(b: bool) -> u8 {
    if b {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Alpha { prefix } => {
            println!("{}", alpha().prefix_of(prefix));
            Ok(0)
        }
        Command::Encode { grid: path, prefix } => {
            println!("{}", grid(&path)?.encode_h().prefix_of(prefix));
            Ok(0)
        }
        Command::Decode { word } => {
            let letters: Vec<char> = word.chars().collect();
            let part = decode_h_prefix(&letters).map_err(err)?;
            for ((m, n), c) in &part.0 {
                println!("x({m},{n}) = {c}");
            }
            Ok(0)
        }
        Command::Member { aut, pair, word, json } => match load(&aut)? {
            Builtin::OneTape(a) => {
                let w = word.ok_or("A and Acomp read one tape; use --word")?;
                let accepted = buchi_accepts_lasso(&a, &lasso(&w, &a.alphabet)?);
                if json {
                    println!("{}", json!({ "accepted": accepted }));
                } else {
                    println!("{}", if accepted { "accepted" } else { "rejected" });
                }
                Ok(truth(accepted))
            }
            Builtin::TwoTape(a) => {
                let pair = pair.ok_or("--pair LASSO LASSO is required")?;
                let (w1, w2) = (lasso(&pair[0], &a.sigma1)?, lasso(&pair[1], &a.sigma2)?);
                let outcome = accepts_lasso_pair(&a, &w1, &w2).map_err(err)?;
                if json {
                    let cert = outcome.certificate().map(|c| {
                        json!({ "stem": c.stem.describe(&a), "cycle": c.cycle.describe(&a) })
                    });
                    println!("{}", json!({ "verdict": outcome.verdict(), "certificate": cert }));
                } else {
                    match outcome.certificate() {
                        Some(c) => {
                            println!("accepted");
                            for (label, part) in [("stem", &c.stem), ("cycle", &c.cycle)] {
                                println!("{label}:");
                                for [p, u, v, q] in part.describe(&a) {
                                    println!("  ({p}, {}, {}, {q})", show(&u), show(&v));
                                }
                            }
                        }
                        None => println!("rejected"),
                    }
                }
                Ok(verdict_code(&outcome))
            }
        },
        Command::Search { aut, grid: path, budget, json } => {
            let a = two_tape(&aut)?;
            let (h, al) = g_reduce(&grid(&path)?);
            let outcome = bounded_run_search(&a, &h, &al, budget).map_err(err)?;
            let stats = outcome.stats().expect("h-images are not lassos");
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": outcome.verdict(),
                        "fair_visits": stats.fair_visits,
                        "deepest": stats.deepest,
                        "expansions": stats.expansions,
                        "frontier": stats.frontier,
                        "exhausted": stats.exhausted,
                        "witness": stats.witness.describe(&a),
                    })
                );
            } else {
                println!("inconclusive");
                println!("fair accepting visits: {}", stats.fair_visits);
                println!("deepest position on both tapes: {}", stats.deepest);
                println!("expansions: {}, frontier: {}, exhausted: {}", stats.expansions, stats.frontier, stats.exhausted);
                println!("witness length: {}", stats.witness.len());
            }
            Ok(verdict_code(&outcome))
        }
        Command::InP { grid: path } => {
            let inside = grid(&path)?.in_p();
            println!("{inside}");
            Ok(truth(inside))
        }
        Command::Sections { sigma, u } => {
            let g = Alphabet::gamma();
            let member = section_member(&lasso(&sigma, &g)?, &lasso(&u, &g)?).map_err(err)?;
            println!("{member}");
            Ok(truth(member))
        }
        Command::Export { aut, format } => {
            let text = match (builtin(&aut)?, format) {
                (Builtin::TwoTape(a), Format::Dot) => a.to_dot(),
                (Builtin::TwoTape(a), Format::Json) => a.to_json() + "\n",
                (Builtin::OneTape(a), Format::Dot) => a.to_dot(),
                (Builtin::OneTape(a), Format::Json) => a.to_json() + "\n",
            };
            print!("{text}");
            Ok(0)
        }
        Command::Verify { seed, trials, sequential, json } => {
            let exec = if sequential { Exec::Sequential } else { Exec::default() };
            let results = run_suite(&Config { seed, trials, exec });
            let ok = results.iter().all(|r| r.passed);
            if json {
                println!("{}", serde_json::to_string_pretty(&results).expect("results serialize"));
            } else {
                for r in &results {
                    println!(
                        "{} {:<32} {:>5} cases {:>3} failures",
                        if r.passed { "ok  " } else { "FAIL" },
                        r.name,
                        r.cases,
                        r.failures
                    );
                }
            }
            Ok(truth(ok))
        }
    }
}

fn show(s: &str) -> &str {
    if s.is_empty() {
        "λ"
    } else {
        s
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
