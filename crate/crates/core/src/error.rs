use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ruleset: {0}")]
    InvalidRuleset(String),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("position has {found} piles, expected {expected}")]
    Arity { expected: usize, found: usize },

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("invalid predicate: {0}")]
    InvalidPredicate(String),

    /// A dense table would not fit the configured entry budget.
    #[error("table needs {required} entries but the budget allows {available}")]
    Capacity { required: u128, available: u128 },

    /// The ruleset has no closed form and the position is too large for the oracle.
    #[error("budget exceeded, unsolved ruleset {ruleset}: oracle needs {required} entries, budget allows {available}")]
    UnsolvedBudget {
        ruleset: String,
        required: u128,
        available: u128,
    },

    #[error("table dump: {0}")]
    Dump(String),

    #[error("classification fixture: {0}")]
    Fixture(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    /// True for the two resource errors (table capacity and oracle budget).
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::UnsolvedBudget { .. })
    }
}
