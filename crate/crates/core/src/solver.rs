//! Exact ordinals by backward induction over volume layers.
//!
//! The mover at `P` picks a move `Q` whose own ordinal is not `n`; the next
//! player then secures `a(ord Q)`, which leaves the mover with
//! `a(ord Q + 1)`. The ordinal of `P` is the index of the best such score.
//! Moving to the empty position always yields `a(1)`, so the candidate set is
//! never empty.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ChompError, Result};
use crate::position::Position;
use crate::rule::NormalizedRule;
use crate::universe::{Budget, Universe};

/// Complete ordinal map of one rule over every position up to a frontier.
#[derive(Debug, Clone)]
pub struct OrdinalTable {
    rule: NormalizedRule,
    universe: Arc<Universe>,
    ordinals: Vec<u8>,
}

/// A sequence of solution moves ending at the empty position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionChain {
    pub positions: Vec<Position>,
}

impl SolutionChain {
    /// Number of moves in the chain.
    pub fn len(&self) -> usize {
        self.positions.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Best reachable ordinal given the ordinals of all moves, or `None` when no
/// move qualifies (only for the empty position).
fn best_ordinal(rule: &NormalizedRule, move_ordinals: impl Iterator<Item = u8>) -> Option<u8> {
    let n = rule.players() as u8;
    let perm = rule.perm();
    let mut best: Option<(u8, u8)> = None;
    for o in move_ordinals {
        if o == n {
            continue;
        }
        let score = perm[o as usize];
        if best.is_none_or(|(s, _)| score > s) {
            best = Some((score, o + 1));
        }
    }
    best.map(|(_, ord)| ord)
}

pub fn ordinal_table(rule: &NormalizedRule, bound: u32) -> Result<OrdinalTable> {
    OrdinalTable::compute(rule, bound)
}

impl OrdinalTable {
    pub fn compute(rule: &NormalizedRule, bound: u32) -> Result<Self> {
        Self::compute_with_budget(rule, bound, Budget::default())
    }

    pub fn compute_with_budget(rule: &NormalizedRule, bound: u32, budget: Budget) -> Result<Self> {
        let universe = Arc::new(Universe::build_with_budget(bound, budget)?);
        Ok(Self::over(rule, universe))
    }

    /// Solves `rule` over an existing universe.
    pub fn over(rule: &NormalizedRule, universe: Arc<Universe>) -> Self {
        let mut ordinals = vec![0u8; universe.len()];
        for v in 1..=universe.bound() {
            let range = universe.layer(v);
            let start = range.start;
            let (lower, layer) = ordinals.split_at_mut(start);
            let layer = &mut layer[..range.len()];
            let lower: &[u8] = lower;
            layer.par_iter_mut().enumerate().for_each(|(offset, slot)| {
                let moves = universe.moves_of(start + offset);
                *slot = best_ordinal(rule, moves.iter().map(|&t| lower[t as usize]))
                    .expect("the empty position is always a move");
            });
        }
        OrdinalTable { rule: rule.clone(), universe, ordinals }
    }

    pub fn rule(&self) -> &NormalizedRule {
        &self.rule
    }

    pub fn frontier(&self) -> u32 {
        self.universe.bound()
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Stored ordinal, if `p` lies within the frontier.
    pub fn get(&self, p: &Position) -> Option<u8> {
        self.universe.index_of(p).map(|i| self.ordinals[i])
    }

    /// Ordinals over the canonical enumeration, empty position first.
    pub fn signature(&self) -> &[u8] {
        &self.ordinals
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Position, u8)> + '_ {
        self.universe.positions().iter().zip(self.ordinals.iter().copied())
    }

    fn lookup(&self, p: &Position) -> Result<u8> {
        self.get(p).ok_or_else(|| ChompError::TableGap {
            position: p.clone(),
            frontier: self.frontier(),
        })
    }

    fn move_ordinals(&self, p: &Position) -> Result<Vec<(Position, u8)>> {
        p.moves()
            .into_iter()
            .map(|q| {
                let o = self.lookup(&q)?;
                Ok((q, o))
            })
            .collect()
    }

    /// Ordinal of `p` by the recurrence over its moves. Works one volume past
    /// the frontier as well, since only smaller volumes are consulted.
    pub fn ordinal(&self, p: &Position) -> Result<u8> {
        if p.is_empty() {
            return Ok(0);
        }
        let moves = self.move_ordinals(p)?;
        Ok(best_ordinal(&self.rule, moves.iter().map(|(_, o)| *o))
            .expect("the empty position is always a move"))
    }

    /// Score-maximizing moves from `p`, canonical order. If chomping to the
    /// empty position is among them it is the only solution.
    pub fn solutions(&self, p: &Position) -> Result<Vec<Position>> {
        if p.is_empty() {
            return Ok(Vec::new());
        }
        let n = self.rule.players() as u8;
        let moves = self.move_ordinals(p)?;
        let scored = moves
            .into_iter()
            .filter(|(_, o)| *o != n)
            .map(|(q, o)| (q, self.rule.perm()[o as usize]));
        let mut best: Option<u8> = None;
        let mut out = Vec::new();
        for (q, score) in scored {
            match best {
                Some(s) if score < s => {}
                Some(s) if score == s => out.push(q),
                _ => {
                    best = Some(score);
                    out.clear();
                    out.push(q);
                }
            }
        }
        if out.iter().any(Position::is_empty) {
            return Ok(vec![Position::empty()]);
        }
        Ok(out)
    }

    /// Moves of `p` landing on ordinal `i - 1`.
    pub fn resolvent(&self, p: &Position, i: u8) -> Result<Vec<Position>> {
        let target = i.saturating_sub(1);
        if i == 0 {
            return Ok(Vec::new());
        }
        Ok(self
            .move_ordinals(p)?
            .into_iter()
            .filter(|(_, o)| *o == target)
            .map(|(q, _)| q)
            .collect())
    }

    /// Deterministic representative of the solutions: the smallest in
    /// canonical order (least volume first).
    pub fn engine_move(&self, p: &Position) -> Result<Option<Position>> {
        Ok(self.solutions(p)?.into_iter().min())
    }

    /// Greedy chain of engine moves from `p` down to the empty position.
    pub fn solution_chain(&self, p: &Position) -> Result<SolutionChain> {
        let mut positions = vec![p.clone()];
        let mut current = p.clone();
        while let Some(next) = self.engine_move(&current)? {
            positions.push(next.clone());
            current = next;
        }
        Ok(SolutionChain { positions })
    }

    /// Positions of volume at most `bound` that have `p` among their solutions.
    pub fn reverse_solutions_within(&self, p: &Position, bound: u32) -> Result<Vec<Position>> {
        if bound > self.frontier() {
            return Err(ChompError::FrontierTooSmall { needed: bound, frontier: self.frontier() });
        }
        let own = p.volume();
        let mut out = Vec::new();
        for v in own + 1..=bound {
            for q in &self.universe.positions()[self.universe.layer(v)] {
                if q.chomps_to(p) && self.solutions(q)?.contains(p) {
                    out.push(q.clone());
                }
            }
        }
        Ok(out)
    }

    /// Largest ordinal in the table and the first position attaining it.
    pub fn max_ordinal(&self) -> (u8, Position) {
        let (idx, &max) = self
            .ordinals
            .iter()
            .enumerate()
            .fold((0, &0u8), |acc, (i, o)| if *o > *acc.1 { (i, o) } else { acc });
        (max, self.universe.position(idx).clone())
    }

    pub fn to_export(&self) -> TableExport {
        TableExport {
            rule: self.rule.perm().to_vec(),
            frontier: self.frontier(),
            entries: self
                .entries()
                .map(|(p, o)| TableEntry { position: p.clone(), ordinal: o })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_export()).expect("table export is plain data")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(Vec::new());
        w.write_record(["position", "ordinal"]).expect("in-memory write");
        for (p, o) in self.entries() {
            w.write_record([p.to_string(), o.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    /// Rebuilds a table from its export. Entries must cover the frontier in
    /// canonical order; ordinals are taken as given.
    pub fn from_export(export: TableExport) -> Result<Self> {
        let rule = NormalizedRule::from_permutation(export.rule)
            .map_err(|e| ChompError::Import(e.to_string()))?;
        let universe = Arc::new(Universe::build(export.frontier)?);
        if export.entries.len() != universe.len() {
            return Err(ChompError::Import(format!(
                "expected {} entries for frontier {}, found {}",
                universe.len(),
                export.frontier,
                export.entries.len()
            )));
        }
        let n = rule.players() as u8;
        let mut ordinals = Vec::with_capacity(universe.len());
        for (entry, expected) in export.entries.iter().zip(universe.positions()) {
            if &entry.position != expected {
                return Err(ChompError::Import(format!(
                    "entry {} out of canonical order (expected {})",
                    entry.position, expected
                )));
            }
            if entry.ordinal > n || (entry.ordinal == 0) != entry.position.is_empty() {
                return Err(ChompError::Import(format!(
                    "ordinal {} out of range at {}",
                    entry.ordinal, entry.position
                )));
            }
            ordinals.push(entry.ordinal);
        }
        Ok(OrdinalTable { rule, universe, ordinals })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let export: TableExport =
            serde_json::from_str(text).map_err(|e| ChompError::Import(e.to_string()))?;
        Self::from_export(export)
    }

    /// CSV carries no rule or frontier, so both are supplied by the caller.
    pub fn from_csv(rule: &NormalizedRule, text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().delimiter(b';').from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for record in r.records() {
            let record = record.map_err(|e| ChompError::Import(e.to_string()))?;
            let (Some(pos), Some(ord)) = (record.get(0), record.get(1)) else {
                return Err(ChompError::Import("short record".into()));
            };
            let position: Position = pos.parse()?;
            let ordinal = ord
                .trim()
                .parse()
                .map_err(|_| ChompError::Import(format!("bad ordinal `{ord}`")))?;
            entries.push(TableEntry { position, ordinal });
        }
        let frontier = entries.last().map_or(0, |e| e.position.volume());
        Self::from_export(TableExport { rule: rule.perm().to_vec(), frontier, entries })
    }
}

impl PartialEq for OrdinalTable {
    fn eq(&self, other: &Self) -> bool {
        self.rule == other.rule
            && self.frontier() == other.frontier()
            && self.ordinals == other.ordinals
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableExport {
    pub rule: Vec<u8>,
    pub frontier: u32,
    pub entries: Vec<TableEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub position: Position,
    pub ordinal: u8,
}
