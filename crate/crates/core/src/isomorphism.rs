//! Volume-bounded rule isomorphism.
//!
//! Two rules are isomorphic when every position has the same ordinal under
//! both. Only finitely many positions can ever be checked, so every verdict
//! here carries the volume bound it was established at: a counterexample is a
//! proof of non-isomorphism, agreement is evidence only.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::enumerate_rules;
use crate::error::{ChompError, Result};
use crate::position::Position;
use crate::rule::NormalizedRule;
use crate::solver::OrdinalTable;
use crate::universe::Universe;

/// Ordinal fingerprint of `rule` over every position up to `bound`.
pub fn signature(rule: &NormalizedRule, bound: u32) -> Result<Vec<u8>> {
    Ok(OrdinalTable::compute(rule, bound)?.signature().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoOutcome {
    AgreesUpTo,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IsoWitness {
    pub position: Position,
    pub ordinal_f: u8,
    pub ordinal_g: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IsoVerdict {
    pub outcome: IsoOutcome,
    pub witness: Option<IsoWitness>,
    pub min_volume: Option<u32>,
    pub bound: u32,
}

impl IsoVerdict {
    pub fn agrees(&self) -> bool {
        self.outcome == IsoOutcome::AgreesUpTo
    }

    /// Compares two signatures taken over the same universe.
    pub fn from_signatures(universe: &Universe, f: &[u8], g: &[u8]) -> Self {
        let bound = universe.bound();
        match f.iter().zip(g).position(|(a, b)| a != b) {
            None => IsoVerdict { outcome: IsoOutcome::AgreesUpTo, witness: None, min_volume: None, bound },
            Some(i) => {
                let position = universe.position(i).clone();
                IsoVerdict {
                    outcome: IsoOutcome::Counterexample,
                    min_volume: Some(position.volume()),
                    witness: Some(IsoWitness { position, ordinal_f: f[i], ordinal_g: g[i] }),
                    bound,
                }
            }
        }
    }

    pub fn from_tables(f: &OrdinalTable, g: &OrdinalTable) -> Self {
        assert_eq!(f.frontier(), g.frontier(), "tables must share a frontier");
        Self::from_signatures(f.universe(), f.signature(), g.signature())
    }
}

/// First position (in canonical order, hence of least volume) where the two
/// rules disagree, searched up to `bound`. The rules may seat different
/// numbers of players.
pub fn iso_check(f: &NormalizedRule, g: &NormalizedRule, bound: u32) -> Result<IsoVerdict> {
    let universe = Arc::new(Universe::build(bound)?);
    let (tf, tg) = rayon::join(
        || OrdinalTable::over(f, universe.clone()),
        || OrdinalTable::over(g, universe.clone()),
    );
    Ok(IsoVerdict::from_tables(&tf, &tg))
}

/// Exact isomorphism on lines and columns: both rules share a descent index.
pub fn d1_iso(f: &NormalizedRule, g: &NormalizedRule) -> bool {
    f.descent_index() == g.descent_index()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxOrdinal {
    pub max: u8,
    /// First position attaining `max`; absent only for a zero bound.
    pub witness: Option<Position>,
    pub bound: u32,
}

impl MaxOrdinal {
    /// A witness with ordinal equal to the player count proves simplicity.
    pub fn proves_simple(&self, rule: &NormalizedRule) -> bool {
        self.max as usize == rule.players()
    }
}

pub fn max_ordinal_witness(rule: &NormalizedRule, bound: u32) -> Result<MaxOrdinal> {
    Ok(max_ordinal_of(&OrdinalTable::compute(rule, bound)?))
}

fn max_ordinal_of(table: &OrdinalTable) -> MaxOrdinal {
    let (max, at) = table.max_ordinal();
    MaxOrdinal { max, witness: (max > 0).then_some(at), bound: table.frontier() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReduceStatus {
    /// An ordinal-n position exists; the rule is its own reduction.
    Simple { witness: Position },
    /// No ordinal-n position up to `bound`; truncated to the observed maximum.
    ReducedUpTo { bound: u32, max_ordinal: u8 },
}

/// Drops every score that no position up to `bound` can secure.
pub fn reduce_rule(rule: &NormalizedRule, bound: u32) -> Result<(NormalizedRule, ReduceStatus)> {
    let table = OrdinalTable::compute(rule, bound)?;
    Ok(reduce_with_table(&table))
}

pub(crate) fn reduce_with_table(table: &OrdinalTable) -> (NormalizedRule, ReduceStatus) {
    let rule = table.rule();
    let max = max_ordinal_of(table);
    match max.witness {
        Some(w) if max.proves_simple(rule) => (rule.clone(), ReduceStatus::Simple { witness: w }),
        _ => (
            rule.truncate(max.max as usize),
            ReduceStatus::ReducedUpTo { bound: table.frontier(), max_ordinal: max.max },
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Standardness {
    Standard,
    NonStandard,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StandardVerdict {
    pub verdict: Standardness,
    /// The only possible standard isomorph, `s_k` with `k` the descent index.
    pub candidate: NormalizedRule,
    pub iso: IsoVerdict,
    /// A position other than `(1)` with ordinal 1, if one exists up to the bound.
    pub ordinal_one_witness: Option<Position>,
    pub bound: u32,
}

/// Tests whether `rule` is isomorphic to a simple standard rule.
///
/// Combines the comparison against `s_k` with the search for a second
/// ordinal-1 position; standard rules always have one, non-standard rules
/// never do.
pub fn is_standard(rule: &NormalizedRule, bound: u32) -> Result<StandardVerdict> {
    let candidate = NormalizedRule::standard(rule.descent_index() as usize)?;
    let universe = Arc::new(Universe::build(bound)?);
    let table = OrdinalTable::over(rule, universe.clone());
    let reference = OrdinalTable::over(&candidate, universe);
    let iso = IsoVerdict::from_tables(&table, &reference);
    let ordinal_one_witness = ordinal_one_beyond_point(&table);
    let verdict = if *rule == candidate {
        Standardness::Standard
    } else if !iso.agrees() {
        Standardness::NonStandard
    } else if ordinal_one_witness.is_some() {
        Standardness::Standard
    } else {
        Standardness::Inconclusive
    };
    Ok(StandardVerdict { verdict, candidate, iso, ordinal_one_witness, bound })
}

pub(crate) fn ordinal_one_beyond_point(table: &OrdinalTable) -> Option<Position> {
    table
        .entries()
        .find(|(p, o)| *o == 1 && p.volume() > 1)
        .map(|(p, _)| p.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExchangePrecondition {
    VerifiedUpTo { bound: u32 },
    /// `position` moves to `into_i` (ordinal i-1) and to `into_j` (ordinal j-1).
    Violated { position: Position, into_i: Position, into_j: Position },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExchangeReport {
    pub rule: NormalizedRule,
    pub i: usize,
    pub j: usize,
    pub swapped_rule: NormalizedRule,
    pub precondition: ExchangePrecondition,
    /// Bounded comparison of the original and the swapped rule.
    pub iso: IsoVerdict,
}

impl ExchangeReport {
    pub fn witness(&self) -> Option<&Position> {
        match &self.precondition {
            ExchangePrecondition::Violated { position, .. } => Some(position),
            ExchangePrecondition::VerifiedUpTo { .. } => None,
        }
    }
}

/// Swaps two scores that differ by exactly one and checks the exchange
/// precondition: no position up to `bound` may move both into the ordinal
/// `i-1` class and into the ordinal `j-1` class.
pub fn exchange_swap(rule: &NormalizedRule, i: usize, j: usize, bound: u32) -> Result<ExchangeReport> {
    let n = rule.players();
    for idx in [i, j] {
        if idx == 0 || idx > n {
            return Err(ChompError::RuleIndex(idx, n));
        }
    }
    let gap = i64::from(rule.perm()[i - 1]) - i64::from(rule.perm()[j - 1]);
    if gap.abs() != 1 {
        return Err(ChompError::ScoreGap { i, j, gap: gap.abs() });
    }
    let swapped_rule = rule.swapped(i, j);
    let universe = Arc::new(Universe::build(bound)?);
    let table = OrdinalTable::over(rule, universe.clone());
    let swapped = OrdinalTable::over(&swapped_rule, universe.clone());

    let class_i = (i - 1) as u8;
    let class_j = (j - 1) as u8;
    let sig = table.signature();
    let violation = (0..universe.len()).find_map(|idx| {
        let moves = universe.moves_of(idx);
        let into_i = moves.iter().find(|&&t| sig[t as usize] == class_i)?;
        let into_j = moves.iter().find(|&&t| sig[t as usize] == class_j)?;
        Some(ExchangePrecondition::Violated {
            position: universe.position(idx).clone(),
            into_i: universe.position(*into_i as usize).clone(),
            into_j: universe.position(*into_j as usize).clone(),
        })
    });
    Ok(ExchangeReport {
        rule: rule.clone(),
        i,
        j,
        swapped_rule,
        precondition: violation.unwrap_or(ExchangePrecondition::VerifiedUpTo { bound }),
        iso: IsoVerdict::from_tables(&table, &swapped),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DistinguishedPair {
    pub f: NormalizedRule,
    pub g: NormalizedRule,
    pub min_volume: u32,
    pub witness: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VnReport {
    pub players: usize,
    pub cap: u32,
    /// Largest minimal distinguishing volume found; a lower bound for V_n.
    pub lower_bound: Option<u32>,
    pub pairs: Vec<DistinguishedPair>,
    /// Groups of distinct simple rules that no position up to `cap` separates.
    pub undistinguished: Vec<Vec<NormalizedRule>>,
}

/// Minimal distinguishing volumes between simple rules with 2..=`players`
/// seats, searched up to `cap`. Non-simple rules are skipped since each is
/// isomorphic to a smaller simple rule.
pub fn v_n_estimate(players: usize, cap: u32) -> Result<VnReport> {
    if players < 2 {
        return Err(ChompError::PlayerCount(players, crate::classifier::MAX_CLASSIFY_PLAYERS));
    }
    let universe = Arc::new(Universe::build(cap)?);
    let mut rules = Vec::new();
    for n in 2..=players {
        rules.extend(enumerate_rules(n)?);
    }
    let tables: Vec<OrdinalTable> = rules
        .par_iter()
        .map(|r| OrdinalTable::over(r, universe.clone()))
        .collect();

    let mut groups: BTreeMap<&[u8], Vec<&OrdinalTable>> = BTreeMap::new();
    for t in tables.iter().filter(|t| max_ordinal_of(t).proves_simple(t.rule())) {
        groups.entry(t.signature()).or_default().push(t);
    }
    let mut reps: Vec<&OrdinalTable> = groups.values().map(|g| g[0]).collect();
    reps.sort_by(|a, b| a.rule().cmp(b.rule()));

    let mut pairs = Vec::new();
    for (a, ta) in reps.iter().enumerate() {
        for tb in &reps[a + 1..] {
            let verdict = IsoVerdict::from_tables(ta, tb);
            let w = verdict.witness.expect("distinct signatures differ somewhere");
            pairs.push(DistinguishedPair {
                f: ta.rule().clone(),
                g: tb.rule().clone(),
                min_volume: w.position.volume(),
                witness: w.position,
            });
        }
    }
    let mut undistinguished: Vec<Vec<NormalizedRule>> = groups
        .values()
        .filter(|g| g.len() > 1)
        .map(|g| g.iter().map(|t| t.rule().clone()).collect())
        .collect();
    undistinguished.sort();
    Ok(VnReport {
        players,
        cap,
        lower_bound: pairs.iter().map(|p| p.min_volume).max(),
        pairs,
        undistinguished,
    })
}
