//! Exact analysis of multiplayer Chomp under score-sequence rules.
//!
//! The crate covers positions and the move relation ([`position`]), rules and
//! their normalization ([`rule`]), exact ordinal tables ([`solver`]),
//! volume-bounded rule isomorphism ([`isomorphism`], [`classifier`]),
//! executable property checks ([`verify`]) and played-out games ([`play`]).

pub mod classifier;
pub mod error;
pub mod isomorphism;
pub mod play;
pub mod position;
pub mod report;
pub mod rule;
pub mod solver;
pub mod universe;
pub mod verify;

pub use classifier::{classify_rules, classify_up_to, enumerate_rules, ClassReport, RuleClass};
pub use error::{ChompError, Result};
pub use isomorphism::{
    d1_iso, exchange_swap, is_standard, iso_check, max_ordinal_witness, reduce_rule, signature,
    v_n_estimate, ExchangeReport, IsoVerdict, ReduceStatus, StandardVerdict, VnReport,
};
pub use play::{play_session, GameSession, GameTranscript, Seat};
pub use position::{enumerate_positions, Cell, Position, ShapeClass, ShapeTag};
pub use rule::{NormalizedRule, Rule};
pub use solver::{ordinal_table, OrdinalTable, SolutionChain};
pub use universe::{Budget, Universe};
