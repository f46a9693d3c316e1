//! Indexed universe of all positions up to a volume frontier, with the move
//! relation precomputed as index lists. Ordinal tables for any number of
//! rules can share one universe.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{ChompError, Result};
use crate::position::{chomp_into, enumerate_positions, partition_counts, Position};

/// Limit on the number of positions a universe may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_positions: usize,
}

impl Default for Budget {
    fn default() -> Self {
        // Roughly volume 55; a few hundred MB of move lists.
        Budget { max_positions: 2_000_000 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_positions: usize::MAX }
    }

    /// Fails unless every position of volume at most `bound` fits.
    pub fn check(&self, bound: u32) -> Result<usize> {
        let mut total: u64 = 0;
        for (volume, count) in partition_counts(bound).into_iter().enumerate() {
            let next = total.saturating_add(count);
            if next > self.max_positions as u64 {
                return Err(ChompError::BudgetExceeded {
                    limit: self.max_positions,
                    volume_reached: volume.saturating_sub(1) as u32,
                });
            }
            total = next;
        }
        Ok(total as usize)
    }
}

#[derive(Debug)]
pub struct Universe {
    bound: u32,
    positions: Vec<Position>,
    index: FxHashMap<Box<[u32]>, u32>,
    /// `layer_starts[v]` is the index of the first position of volume `v`;
    /// one extra trailing entry closes the last layer.
    layer_starts: Vec<usize>,
    move_offsets: Vec<usize>,
    move_targets: Vec<u32>,
}

impl Universe {
    pub fn build(bound: u32) -> Result<Self> {
        Self::build_with_budget(bound, Budget::default())
    }

    pub fn build_with_budget(bound: u32, budget: Budget) -> Result<Self> {
        let total = budget.check(bound)?;
        let mut positions = Vec::with_capacity(total);
        let mut layer_starts = Vec::with_capacity(bound as usize + 2);
        let mut index = FxHashMap::default();
        index.reserve(total);
        for p in enumerate_positions(bound) {
            let v = p.volume() as usize;
            while layer_starts.len() <= v {
                layer_starts.push(positions.len());
            }
            index.insert(p.parts().to_vec().into_boxed_slice(), positions.len() as u32);
            positions.push(p);
        }
        layer_starts.push(positions.len());

        let lists: Vec<Vec<u32>> = positions
            .par_iter()
            .map_init(Vec::new, |buf, p| {
                p.cells()
                    .map(|cell| {
                        chomp_into(p.parts(), cell, buf);
                        index[&buf[..]]
                    })
                    .collect()
            })
            .collect();
        let mut move_offsets = Vec::with_capacity(positions.len() + 1);
        let mut move_targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        move_offsets.push(0);
        for list in lists {
            move_targets.extend_from_slice(&list);
            move_offsets.push(move_targets.len());
        }

        Ok(Universe { bound, positions, index, layer_starts, move_offsets, move_targets })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Positions in canonical enumeration order.
    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn position(&self, idx: usize) -> &Position {
        &self.positions[idx]
    }

    pub fn index_of(&self, p: &Position) -> Option<usize> {
        self.index_of_parts(p.parts())
    }

    pub fn index_of_parts(&self, parts: &[u32]) -> Option<usize> {
        self.index.get(parts).map(|&i| i as usize)
    }

    /// Index range of the positions with exactly volume `v`.
    pub fn layer(&self, v: u32) -> std::ops::Range<usize> {
        let v = v as usize;
        self.layer_starts[v]..self.layer_starts[v + 1]
    }

    /// Indices of the positions reachable from position `idx`.
    pub fn moves_of(&self, idx: usize) -> &[u32] {
        &self.move_targets[self.move_offsets[idx]..self.move_offsets[idx + 1]]
    }
}
