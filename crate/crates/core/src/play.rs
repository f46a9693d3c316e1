//! Played-out games with engine and human seats.
//!
//! Seats are numbered from 1 and move in turn, seat 1 first. When the bar is
//! gone the seat that took the last bite receives `a1`, the seat before it
//! `a2`, and so on around all seats, so every seat is scored even in games
//! shorter than one round.

use std::io::{BufRead, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{ChompError, Result};
use crate::position::{Cell, Position};
use crate::rule::NormalizedRule;
use crate::solver::OrdinalTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Seat {
    Engine,
    Human,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub seat: usize,
    pub cell: Cell,
    pub result: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameTranscript {
    pub rule: NormalizedRule,
    pub seats: Vec<Seat>,
    pub start: Position,
    pub moves: Vec<MoveRecord>,
    /// Score of each seat, index 0 for seat 1; empty until the game ends.
    pub final_scores: Vec<u8>,
}

/// Scores per seat when `last_biter` (1-based) took the final piece.
pub fn seat_scores(rule: &NormalizedRule, last_biter: usize) -> Vec<u8> {
    let n = rule.players();
    let mut scores = vec![0; n];
    for t in 0..n {
        // Seat `t` places before the last biter, cyclically.
        let seat = (last_biter - 1 + n - t % n) % n;
        scores[seat] = rule.perm()[t];
    }
    scores
}

#[derive(Debug, Clone)]
pub struct GameSession {
    table: Arc<OrdinalTable>,
    seats: Vec<Seat>,
    start: Position,
    current: Position,
    moves: Vec<MoveRecord>,
}

impl GameSession {
    /// `table` must reach the volume of `start`; `human_seats` are 1-based.
    pub fn new(table: Arc<OrdinalTable>, start: Position, human_seats: &[usize]) -> Result<Self> {
        if start.is_empty() {
            return Err(ChompError::EmptyPosition);
        }
        if start.volume() > table.frontier() {
            return Err(ChompError::FrontierTooSmall { needed: start.volume(), frontier: table.frontier() });
        }
        let n = table.rule().players();
        let mut seats = vec![Seat::Engine; n];
        for &s in human_seats {
            if s == 0 || s > n {
                return Err(ChompError::RuleIndex(s, n));
            }
            seats[s - 1] = Seat::Human;
        }
        Ok(GameSession { table, seats, current: start.clone(), start, moves: Vec::new() })
    }

    pub fn rule(&self) -> &NormalizedRule {
        self.table.rule()
    }

    pub fn table(&self) -> &OrdinalTable {
        &self.table
    }

    pub fn seats(&self) -> &[Seat] {
        &self.seats
    }

    pub fn position(&self) -> &Position {
        &self.current
    }

    pub fn moves(&self) -> &[MoveRecord] {
        &self.moves
    }

    pub fn is_finished(&self) -> bool {
        self.current.is_empty()
    }

    /// Seat due to move next (1-based).
    pub fn to_move(&self) -> usize {
        self.moves.len() % self.seats.len() + 1
    }

    pub fn awaiting_human(&self) -> bool {
        !self.is_finished() && self.seats[self.to_move() - 1] == Seat::Human
    }

    /// Chomps at `cell` for the seat to move. An invalid cell leaves the
    /// session untouched.
    pub fn apply(&mut self, cell: Cell) -> Result<&MoveRecord> {
        let result = self.current.chomp_at(cell)?;
        let seat = self.to_move();
        self.current = result.clone();
        self.moves.push(MoveRecord { seat, cell, result });
        Ok(self.moves.last().expect("just pushed"))
    }

    /// Plays the engine's move for the seat to move.
    pub fn engine_step(&mut self) -> Result<Option<&MoveRecord>> {
        let Some(target) = self.table.engine_move(&self.current)? else {
            return Ok(None);
        };
        let cell = self.current.cell_to(&target).expect("solutions are moves");
        self.apply(cell).map(Some)
    }

    /// Lets engine seats move until a human is due or the game ends.
    pub fn run_engines(&mut self) -> Result<()> {
        while !self.is_finished() && !self.awaiting_human() {
            self.engine_step()?;
        }
        Ok(())
    }

    pub fn final_scores(&self) -> Option<Vec<u8>> {
        let last = self.moves.last().filter(|_| self.is_finished())?;
        Some(seat_scores(self.rule(), last.seat))
    }

    pub fn transcript(&self) -> GameTranscript {
        GameTranscript {
            rule: self.rule().clone(),
            seats: self.seats.clone(),
            start: self.start.clone(),
            moves: self.moves.clone(),
            final_scores: self.final_scores().unwrap_or_default(),
        }
    }
}

/// Bar drawn row by row, `x` per piece.
pub fn render_grid(p: &Position) -> String {
    if p.is_empty() {
        return "(empty)\n".to_string();
    }
    let mut out = String::new();
    for &len in p.parts() {
        let row: Vec<&str> = (0..len).map(|_| "x").collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_cell(line: &str) -> Option<Cell> {
    let mut it = line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty());
    let row = it.next()?.parse().ok()?;
    let col = it.next()?.parse().ok()?;
    it.next().is_none().then_some(Cell::new(row, col))
}

/// Text-mode game. Human seats read `row col` lines from `input`; illegal
/// cells are reported and re-prompted.
pub fn play_session<R: BufRead, W: Write>(
    rule: &NormalizedRule,
    start: &Position,
    human_seats: &[usize],
    mut input: R,
    mut output: W,
) -> Result<GameTranscript> {
    let table = Arc::new(OrdinalTable::compute(rule, start.volume())?);
    let mut session = GameSession::new(table, start.clone(), human_seats)?;
    writeln!(output, "rule {rule}, {} seats; seat 1 moves first", rule.players())?;
    while !session.is_finished() {
        let seat = session.to_move();
        if session.awaiting_human() {
            write!(output, "{}seat {seat}, enter `row col`: ", render_grid(session.position()))?;
            output.flush()?;
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                return Err(ChompError::InputClosed);
            }
            let Some(cell) = parse_cell(&line) else {
                writeln!(output, "expected two numbers, e.g. `2 3`")?;
                continue;
            };
            match session.apply(cell) {
                Ok(m) => writeln!(output, "seat {seat} chomps {} -> {}", m.cell, m.result)?,
                Err(e) => writeln!(output, "illegal move: {e}")?,
            }
        } else {
            let m = session.engine_step()?.expect("nonempty position has a solution");
            writeln!(output, "seat {seat} (engine) chomps {} -> {}", m.cell, m.result)?;
        }
    }
    let transcript = session.transcript();
    for (i, s) in transcript.final_scores.iter().enumerate() {
        writeln!(output, "seat {} scores {s}", i + 1)?;
    }
    Ok(transcript)
}
