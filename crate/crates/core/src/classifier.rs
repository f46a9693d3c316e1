//! Grouping every normalized rule into bounded isomorphism classes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ChompError, Result};
use crate::isomorphism::{reduce_with_table, IsoVerdict, ReduceStatus};
use crate::position::Position;
use crate::rule::NormalizedRule;
use crate::solver::OrdinalTable;
use crate::universe::Universe;

/// `n!` tables are built per classification, so the player count is capped.
pub const MAX_CLASSIFY_PLAYERS: usize = 7;

/// All permutations of `0..n` in lexicographic order.
pub fn enumerate_rules(players: usize) -> Result<Vec<NormalizedRule>> {
    if players == 0 || players > MAX_CLASSIFY_PLAYERS {
        return Err(ChompError::PlayerCount(players, MAX_CLASSIFY_PLAYERS));
    }
    let mut perm: Vec<u8> = (0..players as u8).collect();
    let mut out = Vec::new();
    loop {
        out.push(NormalizedRule::from_permutation(perm.clone())?);
        // Next permutation in lexicographic order.
        let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
            break;
        };
        let j = perm.iter().rposition(|&x| x > perm[i]).expect("pivot has a larger suffix element");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RuleClass {
    /// Lexicographically smallest member.
    pub representative: NormalizedRule,
    pub members: Vec<NormalizedRule>,
    /// Simple rule with fewer players sharing the signature, when the
    /// representative never reaches its own player count.
    pub reduced_to: Option<NormalizedRule>,
    /// Largest ordinal seen within the bound.
    pub max_ordinal: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Separation {
    pub f: NormalizedRule,
    pub g: NormalizedRule,
    pub witness: Position,
    pub ordinal_f: u8,
    pub ordinal_g: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassReport {
    /// Largest player count included.
    pub players: usize,
    pub bound: u32,
    pub classes: Vec<RuleClass>,
    /// One concrete distinguishing position per pair of class representatives.
    pub separations: Vec<Separation>,
}

impl ClassReport {
    pub fn class_of(&self, rule: &NormalizedRule) -> Option<&RuleClass> {
        self.classes.iter().find(|c| c.members.contains(rule))
    }

    pub fn representatives(&self) -> Vec<&NormalizedRule> {
        self.classes.iter().map(|c| &c.representative).collect()
    }

    /// Plain-text listing grouped by player count of the representative.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} classes of rules with at most {} players (signatures up to volume {})",
            self.classes.len(),
            self.players,
            self.bound
        );
        let mut by_players: BTreeMap<usize, Vec<&RuleClass>> = BTreeMap::new();
        for c in &self.classes {
            by_players.entry(c.representative.players()).or_default().push(c);
        }
        for (n, classes) in by_players {
            let _ = writeln!(out, "{n}-player:");
            for c in classes {
                let others: Vec<String> = c
                    .members
                    .iter()
                    .filter(|m| **m != c.representative)
                    .map(|m| m.to_string())
                    .collect();
                let _ = write!(out, "  {}", c.representative);
                if !others.is_empty() {
                    let _ = write!(out, " ~ {}", others.join(" ~ "));
                }
                if let Some(r) = &c.reduced_to {
                    let _ = write!(out, "  reduces to {r}");
                }
                let _ = writeln!(out, "  [max ordinal {}]", c.max_ordinal);
            }
        }
        out
    }
}

/// Classes among the `players`-seat rules only.
pub fn classify_rules(players: usize, bound: u32) -> Result<ClassReport> {
    classify(enumerate_rules(players)?, players, bound)
}

/// Classes across every rule with 1..=`max_players` seats; rules of
/// different sizes meet when their signatures coincide.
pub fn classify_up_to(max_players: usize, bound: u32) -> Result<ClassReport> {
    let mut rules = Vec::new();
    for n in 1..=max_players {
        rules.extend(enumerate_rules(n)?);
    }
    classify(rules, max_players, bound)
}

fn classify(mut rules: Vec<NormalizedRule>, players: usize, bound: u32) -> Result<ClassReport> {
    rules.sort();
    let universe = Arc::new(Universe::build(bound)?);
    let tables: Vec<OrdinalTable> = rules
        .par_iter()
        .map(|r| OrdinalTable::over(r, universe.clone()))
        .collect();

    // Keyed by signature; insertion follows sorted rules so the first member
    // of each group is its smallest.
    let mut groups: BTreeMap<&[u8], Vec<&OrdinalTable>> = BTreeMap::new();
    for t in &tables {
        groups.entry(t.signature()).or_default().push(t);
    }
    let mut grouped: Vec<Vec<&OrdinalTable>> = groups.into_values().collect();
    grouped.sort_by(|a, b| a[0].rule().cmp(b[0].rule()));

    let classes: Vec<RuleClass> = grouped
        .iter()
        .map(|group| {
            let rep = group[0];
            let (reduced, status) = reduce_with_table(rep);
            let max_ordinal = match status {
                ReduceStatus::Simple { .. } => rep.rule().players() as u8,
                ReduceStatus::ReducedUpTo { max_ordinal, .. } => max_ordinal,
            };
            RuleClass {
                representative: rep.rule().clone(),
                members: group.iter().map(|t| t.rule().clone()).collect(),
                reduced_to: (reduced != *rep.rule()).then_some(reduced),
                max_ordinal,
            }
        })
        .collect();

    let mut separations = Vec::new();
    for (a, ga) in grouped.iter().enumerate() {
        for gb in &grouped[a + 1..] {
            let v = IsoVerdict::from_tables(ga[0], gb[0]);
            let w = v.witness.expect("different signatures differ somewhere");
            separations.push(Separation {
                f: ga[0].rule().clone(),
                g: gb[0].rule().clone(),
                witness: w.position,
                ordinal_f: w.ordinal_f,
                ordinal_g: w.ordinal_g,
            });
        }
    }

    Ok(ClassReport { players, bound, classes, separations })
}
