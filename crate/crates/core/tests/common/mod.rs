//! Reference implementations shared by the integration tests. Nothing here
//! calls into the solver; positions are plain row-length vectors.

#![allow(dead_code)]

use std::collections::HashMap;

/// Every chomp of `rows`, one per cell, in row-major cell order.
pub fn chomps(rows: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len {
            let mut next: Vec<u32> = rows.iter().enumerate().map(|(i, &l)| if i >= r { l.min(c) } else { l }).collect();
            while next.last() == Some(&0) {
                next.pop();
            }
            out.push(next);
        }
    }
    out
}

/// Partitions of `n` with parts at most `max`.
fn partitions_into(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=max.min(n)).rev() {
        prefix.push(part);
        partitions_into(n - part, part, prefix, out);
        prefix.pop();
    }
}

pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    partitions_into(n, n, &mut Vec::new(), &mut out);
    out
}

/// All positions with volume at most `bound`.
pub fn positions_up_to(bound: u32) -> Vec<Vec<u32>> {
    (0..=bound).flat_map(partitions).collect()
}

pub fn conjugate(rows: &[u32]) -> Vec<u32> {
    let width = rows.first().copied().unwrap_or(0);
    (1..=width).map(|c| rows.iter().filter(|&&l| l >= c).count() as u32).collect()
}

/// Memoized backward induction straight from the recurrence, with the
/// rule given as raw real scores (no normalization).
pub struct Oracle {
    scores: Vec<f64>,
    memo: HashMap<Vec<u32>, usize>,
}

impl Oracle {
    pub fn new(scores: &[f64]) -> Self {
        Oracle { scores: scores.to_vec(), memo: HashMap::new() }
    }

    pub fn from_perm(perm: &[u8]) -> Self {
        Self::new(&perm.iter().map(|&a| a as f64).collect::<Vec<_>>())
    }

    pub fn ordinal(&mut self, rows: &[u32]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        if let Some(&o) = self.memo.get(rows) {
            return o;
        }
        let n = self.scores.len();
        let mut best: Option<usize> = None;
        for q in chomps(rows) {
            let oq = self.ordinal(&q);
            if oq == n {
                continue;
            }
            let cand = oq + 1;
            if best.is_none_or(|b| self.scores[cand - 1] > self.scores[b - 1]) {
                best = Some(cand);
            }
        }
        let o = best.expect("the empty position is always a move");
        self.memo.insert(rows.to_vec(), o);
        o
    }

    /// Solution set with the player's preference for ending the game.
    pub fn solutions(&mut self, rows: &[u32]) -> Vec<Vec<u32>> {
        let o = self.ordinal(rows);
        let mut sols: Vec<Vec<u32>> = chomps(rows).into_iter().filter(|q| self.ordinal(q) + 1 == o).collect();
        sols.sort();
        sols.dedup();
        if sols.iter().any(|q| q.is_empty()) {
            return vec![Vec::new()];
        }
        sols
    }
}

/// First cyclic descent of a score sequence; 1 for a single player.
pub fn first_cyclic_descent(perm: &[u8]) -> u32 {
    let n = perm.len();
    (0..n).find(|&i| perm[(i + 1) % n] < perm[i]).map_or(1, |i| i as u32 + 1)
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, (n - 1) as u8);
            out.push(q);
        }
    }
    out
}
