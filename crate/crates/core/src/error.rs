use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("chip {chip} is outside 0..{m}")]
    ChipOutOfRange { chip: usize, m: usize },

    #[error("question budget exhausted: step {step} of {n}")]
    BudgetExhausted { step: usize, n: usize },

    #[error("script has {len} steps but the game allows only {n}")]
    ScriptTooLong { len: usize, n: usize },

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("duplicate codeword {0:#b}")]
    DuplicateCodeword(u64),

    #[error("codeword {word:#b} does not fit in {n} bits")]
    CodewordTooWide { word: u64, n: u32 },

    #[error("no feasible length found for m={m}, t={t} up to n={limit}")]
    SearchLimit { m: u64, t: u64, limit: u64 },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
