//! Score-sequence rules.
//!
//! A rule `(a1 .. an)` pays `a1` to the player taking the last bite, `a2` to
//! the player who moved before that, and so on cyclically. Only the relative
//! order of the scores matters, so every analysis runs on the rank-normalized
//! permutation of `0..n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ChompError, Result};

/// Ordinals are stored in a byte, so a rule can seat at most this many players.
pub const MAX_PLAYERS: usize = 255;

/// A rule with arbitrary distinct real scores.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rule {
    scores: Vec<f64>,
}

impl Rule {
    pub fn new(scores: Vec<f64>) -> Result<Self> {
        if scores.is_empty() {
            return Err(ChompError::EmptyRule);
        }
        if scores.len() > MAX_PLAYERS {
            return Err(ChompError::PlayerCount(scores.len(), MAX_PLAYERS));
        }
        if let Some(&bad) = scores.iter().find(|s| !s.is_finite()) {
            return Err(ChompError::NonFiniteScore(bad));
        }
        for (i, a) in scores.iter().enumerate() {
            if scores[..i].contains(a) {
                return Err(ChompError::DuplicateScore(*a));
            }
        }
        Ok(Rule { scores })
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn players(&self) -> usize {
        self.scores.len()
    }

    /// Rank transform: each score becomes the number of strictly smaller scores.
    pub fn normalize(&self) -> NormalizedRule {
        let perm = self
            .scores
            .iter()
            .map(|a| self.scores.iter().filter(|b| *b < a).count() as u8)
            .collect();
        NormalizedRule::from_valid(perm)
    }
}

impl FromStr for Rule {
    type Err = ChompError;

    /// Comma-separated scores, e.g. `2.5,-1,0`. The compact digit form
    /// `(0132)` is accepted too.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let scores = if body.starts_with('(') && !body.contains(',') {
            let digits = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| ChompError::RuleSyntax(s.to_string()))?;
            digits
                .chars()
                .map(|c| c.to_digit(10).map(f64::from))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| ChompError::RuleSyntax(s.to_string()))?
        } else {
            let body = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .unwrap_or(body);
            if body.trim().is_empty() {
                return Err(ChompError::EmptyRule);
            }
            body.split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| ChompError::RuleSyntax(s.to_string()))?
        };
        Rule::new(scores)
    }
}

/// Rule whose scores are a permutation of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct NormalizedRule {
    perm: Vec<u8>,
    descent: u8,
}

impl NormalizedRule {
    /// Checks that `perm` is a permutation of `0..perm.len()`.
    pub fn from_permutation(perm: Vec<u8>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(ChompError::EmptyRule);
        }
        if n > MAX_PLAYERS {
            return Err(ChompError::PlayerCount(n, MAX_PLAYERS));
        }
        let mut seen = vec![false; n];
        for &v in &perm {
            let v = v as usize;
            if v >= n || seen[v] {
                return Err(ChompError::NotPermutation(format!("{perm:?}"), n));
            }
            seen[v] = true;
        }
        Ok(Self::from_valid(perm))
    }

    fn from_valid(perm: Vec<u8>) -> Self {
        let descent = compute_descent(&perm);
        NormalizedRule { perm, descent }
    }

    /// The simple standard rule `(0 1 .. n-1)`.
    pub fn standard(players: usize) -> Result<Self> {
        if players == 0 || players > MAX_PLAYERS {
            return Err(ChompError::PlayerCount(players, MAX_PLAYERS));
        }
        Ok(Self::from_valid((0..players as u8).collect()))
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn players(&self) -> usize {
        self.perm.len()
    }

    /// Score paid to the holder of ordinal `ord` (1-based); zero ordinal
    /// has no score.
    pub fn score(&self, ord: u8) -> u8 {
        self.perm[ord as usize - 1]
    }

    /// First cyclic descent `min{ i : a(i+1) < a(i) }` with `a(n+1) = a(1)`.
    /// A one-player rule has no descent and reports 1.
    pub fn descent_index(&self) -> u8 {
        self.descent
    }

    /// Ordinal of the line `(k)`, equal to `min(k, descent_index)`.
    pub fn line_ordinal(&self, k: u32) -> u8 {
        k.min(self.descent as u32) as u8
    }

    /// First `m` scores, rank-normalized again.
    pub fn truncate(&self, m: usize) -> NormalizedRule {
        let m = m.clamp(1, self.players());
        let head = &self.perm[..m];
        let perm = head
            .iter()
            .map(|a| head.iter().filter(|b| *b < a).count() as u8)
            .collect();
        Self::from_valid(perm)
    }

    /// Swaps the scores at 1-based indices `i` and `j`.
    pub fn swapped(&self, i: usize, j: usize) -> NormalizedRule {
        let mut perm = self.perm.clone();
        perm.swap(i - 1, j - 1);
        Self::from_valid(perm)
    }

    /// Digit form like `(0132)`; only defined up to ten players.
    pub fn compact(&self) -> Option<String> {
        if self.players() > 10 {
            return None;
        }
        let digits: String = self.perm.iter().map(|d| char::from(b'0' + d)).collect();
        Some(format!("({digits})"))
    }
}

fn compute_descent(perm: &[u8]) -> u8 {
    let n = perm.len();
    if n == 1 {
        return 1;
    }
    (1..=n)
        .find(|&i| perm[i % n] < perm[i - 1])
        .expect("a cyclic sequence of distinct values has a descent") as u8
}

impl fmt::Display for NormalizedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.compact() {
            Some(c) => f.write_str(&c),
            None => {
                let body: Vec<String> = self.perm.iter().map(u8::to_string).collect();
                write!(f, "({})", body.join(","))
            }
        }
    }
}

impl fmt::Debug for NormalizedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for NormalizedRule {
    type Err = ChompError;

    /// Parses any rule text and normalizes it.
    fn from_str(s: &str) -> Result<Self> {
        Ok(s.parse::<Rule>()?.normalize())
    }
}

impl TryFrom<Vec<u8>> for NormalizedRule {
    type Error = ChompError;

    fn try_from(perm: Vec<u8>) -> Result<Self> {
        NormalizedRule::from_permutation(perm)
    }
}

impl From<NormalizedRule> for Vec<u8> {
    fn from(r: NormalizedRule) -> Self {
        r.perm
    }
}

/// Comma-separated text form of a normalized rule, e.g. `0,1,3,2`.
pub fn rule_text(rule: &NormalizedRule) -> String {
    rule.perm().iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(scores: &[f64]) -> Vec<u8> {
        Rule::new(scores.to_vec()).unwrap().normalize().perm().to_vec()
    }

    fn rule(perm: &[u8]) -> NormalizedRule {
        NormalizedRule::from_permutation(perm.to_vec()).unwrap()
    }

    #[test]
    fn make_rule_cases() {
        assert_eq!(Rule::new(vec![0.0, 1.0]).unwrap().players(), 2);
        assert_eq!(Rule::new(vec![0.0]).unwrap().players(), 1);
        assert_eq!(Rule::new(vec![3.0, 3.0]), Err(ChompError::DuplicateScore(3.0)));
        assert_eq!(Rule::new(vec![]), Err(ChompError::EmptyRule));
        assert!(matches!(Rule::new(vec![1.0, f64::NAN]), Err(ChompError::NonFiniteScore(_))));
        assert!(Rule::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn normalize_cases() {
        assert_eq!(norm(&[0.0, 1.0, 3.0, 2.0]), vec![0, 1, 3, 2]);
        assert_eq!(norm(&[2.5, -1.0, 0.0]), vec![2, 0, 1]);
        assert_eq!(norm(&[10.0, 20.0]), vec![0, 1]);
        assert_eq!(norm(&[6.0, 8.0, 7.0, 3.0, 5.0, 1.0, 0.0, 2.0, 4.0]), vec![6, 8, 7, 3, 5, 1, 0, 2, 4]);
    }

    #[test]
    fn descent_cases() {
        assert_eq!(rule(&[0, 1, 2, 4, 3]).descent_index(), 4);
        assert_eq!(rule(&[0, 1, 3, 2, 4, 5]).descent_index(), 3);
        for n in 1..9 {
            assert_eq!(NormalizedRule::standard(n).unwrap().descent_index() as usize, n);
        }
        assert_eq!(rule(&[1, 0]).descent_index(), 1);
        assert_eq!(rule(&[0, 3, 2, 1]).descent_index(), 2);
    }

    #[test]
    fn standard_rules() {
        assert_eq!(NormalizedRule::standard(2).unwrap().perm(), &[0, 1]);
        assert_eq!(NormalizedRule::standard(4).unwrap().perm(), &[0, 1, 2, 3]);
        assert_eq!(NormalizedRule::standard(1).unwrap().perm(), &[0]);
        assert!(NormalizedRule::standard(0).is_err());
    }

    #[test]
    fn line_ordinals() {
        assert_eq!(rule(&[0, 1, 2, 4, 3]).line_ordinal(6), 4);
        assert_eq!(rule(&[0, 1, 2, 4, 3]).line_ordinal(5), 4);
        assert_eq!(rule(&[0, 1, 3, 2, 4, 5]).line_ordinal(5), 3);
        assert_eq!(rule(&[0, 1, 3, 2, 4, 5]).line_ordinal(4), 3);
        assert_eq!(rule(&[2, 0, 1]).line_ordinal(1), 1);
    }

    #[test]
    fn truncation_renormalizes() {
        let r = rule(&[6, 8, 7, 3, 5, 1, 0, 2, 4]);
        assert_eq!(r.truncate(3).perm(), &[0, 2, 1]);
        assert_eq!(rule(&[0, 3, 2, 1]).truncate(3).perm(), &[0, 2, 1]);
    }

    #[test]
    fn text_forms() {
        assert_eq!(rule(&[0, 1, 3, 2]).to_string(), "(0132)");
        assert_eq!("0,1,3,2".parse::<NormalizedRule>().unwrap(), rule(&[0, 1, 3, 2]));
        assert_eq!("(0132)".parse::<NormalizedRule>().unwrap(), rule(&[0, 1, 3, 2]));
        assert_eq!("10,20".parse::<NormalizedRule>().unwrap(), rule(&[0, 1]));
        let big = NormalizedRule::standard(11).unwrap();
        assert!(big.compact().is_none());
        assert_eq!(big.to_string(), "(0,1,2,3,4,5,6,7,8,9,10)");
        assert!("0,x".parse::<Rule>().is_err());
        assert!("".parse::<Rule>().is_err());
        assert!(NormalizedRule::from_permutation(vec![0, 2]).is_err());
    }
}
