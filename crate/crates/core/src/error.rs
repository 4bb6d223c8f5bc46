use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("letter '{letter}' is not in alphabet {{{alphabet}}}")]
    ForeignLetter { letter: char, alphabet: String },
    #[error("lasso period must be nonempty")]
    EmptyPeriod,
    #[error("malformed lasso: {0}")]
    LassoSyntax(String),
    #[error("invalid grid word: {0}")]
    InvalidGrid(String),
    #[error("malformed prefix: {0}")]
    MalformedPrefix(String),
    #[error("invalid automaton: {}", .0.join("; "))]
    InvalidAutomaton(Vec<String>),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("grid word is not in P: column {column} has infinitely many 1s")]
    NotInP { column: String },
    #[error("unknown word shape: {0}")]
    UnknownShape(String),
    #[error("condition undecidable for this input: {0}")]
    Undecidable(String),
    #[error("run schema failed replay: {0}")]
    SchemaReplay(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
