//! Serializable single-position reports, shared by the CLI and the service.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::position::{Cell, Position};
use crate::rule::NormalizedRule;
use crate::solver::OrdinalTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoveInfo {
    pub cell: Cell,
    pub position: Position,
    pub ordinal: u8,
    pub solution: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveReport {
    pub rule: NormalizedRule,
    pub position: Position,
    pub ordinal: u8,
    /// Normalized score the mover secures; absent for the empty position.
    pub score: Option<u8>,
    pub solutions: Vec<Position>,
    pub chain: Vec<Position>,
    /// Every move from the position, row-major by cell.
    pub moves: Vec<MoveInfo>,
}

pub fn solve(rule: &NormalizedRule, position: &Position) -> Result<SolveReport> {
    let table = OrdinalTable::compute(rule, position.volume())?;
    solve_with(&table, position)
}

/// Report for `position` from a table that reaches its volume.
pub fn solve_with(table: &OrdinalTable, position: &Position) -> Result<SolveReport> {
    let ordinal = table.ordinal(position)?;
    let solutions = table.solutions(position)?;
    let chain = table.solution_chain(position)?.positions;
    let mut moves = Vec::new();
    for cell in position.cells() {
        let q = position.chomp_at(cell)?;
        let o = table.ordinal(&q)?;
        moves.push(MoveInfo { cell, solution: solutions.contains(&q), position: q, ordinal: o });
    }
    Ok(SolveReport {
        rule: table.rule().clone(),
        position: position.clone(),
        ordinal,
        score: (ordinal > 0).then(|| table.rule().score(ordinal)),
        solutions,
        chain,
        moves,
    })
}

impl SolveReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rule      {}", self.rule);
        let _ = writeln!(out, "position  {}", self.position);
        let _ = writeln!(out, "ordinal   {}", self.ordinal);
        if let Some(s) = self.score {
            let _ = writeln!(out, "score     {s}");
        }
        let sols: Vec<String> = self.solutions.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "solutions {}", sols.join(" | "));
        let chain: Vec<String> = self.chain.iter().map(|p| format!("({p})")).collect();
        let _ = writeln!(out, "chain     {}", chain.join(" -> "));
        out
    }
}
