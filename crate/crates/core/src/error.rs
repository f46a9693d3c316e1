use thiserror::Error;

use crate::position::Position;

pub type Result<T, E = ChompError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChompError {
    #[error("position parts must be weakly decreasing, got {0:?}")]
    NotMonotone(Vec<u32>),
    #[error("malformed position `{0}`")]
    PositionSyntax(String),
    #[error("cell ({row},{col}) is not part of position {position}")]
    InvalidCell { position: Position, row: u32, col: u32 },
    #[error("the empty position has no shape class")]
    EmptyPosition,
    #[error("a rule needs at least one score")]
    EmptyRule,
    #[error("duplicate score {0} in rule")]
    DuplicateScore(f64),
    #[error("score {0} is not finite")]
    NonFiniteScore(f64),
    #[error("malformed rule `{0}`")]
    RuleSyntax(String),
    #[error("{0} is not a permutation of 0..{1}")]
    NotPermutation(String, usize),
    #[error("player count {0} is out of range (1..={1})")]
    PlayerCount(usize, usize),
    #[error("table for frontier {frontier} has no entry for {position}")]
    TableGap { position: Position, frontier: u32 },
    #[error("table frontier {frontier} is below the requested volume {needed}")]
    FrontierTooSmall { needed: u32, frontier: u32 },
    #[error("budget exceeded: {limit} positions allowed, complete only up to volume {volume_reached}")]
    BudgetExceeded { limit: usize, volume_reached: u32 },
    #[error("scores at indices {i} and {j} differ by {gap}, not 1")]
    ScoreGap { i: usize, j: usize, gap: i64 },
    #[error("index {0} is outside the rule (1..={1})")]
    RuleIndex(usize, usize),
    #[error("table import failed: {0}")]
    Import(String),
    #[error("input ended before the game finished")]
    InputClosed,
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for ChompError {
    fn from(e: std::io::Error) -> Self {
        ChompError::Io(e.to_string())
    }
}
