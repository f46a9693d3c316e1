//! Chomp positions as Young diagrams.
//!
//! A [`Position`] stores the row lengths of the remaining chocolate, weakly
//! decreasing, with zero rows never stored. Row 1 is the row holding the
//! poisoned corner; a chomp at `(row, col)` removes that cell together with
//! every cell at or below `row` and at or right of `col`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ChompError, Result};

/// Canonical Chomp position.
///
/// Ordering is the canonical enumeration order: ascending volume, then
/// descending lexicographic order of the parts within one volume.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Position {
    parts: Vec<u32>,
}

/// A cell of the bar, both indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeTag {
    /// The single piece `(1)`.
    L0,
    /// A line `(a)` or a column `(1,..,1)` with at least two pieces.
    L1,
    /// Everything else that is nonempty.
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeClass {
    pub tag: ShapeTag,
    /// `min(first row length, number of rows)`.
    pub d_index: u32,
}

impl Position {
    pub fn empty() -> Self {
        Position { parts: Vec::new() }
    }

    /// Builds a position from weakly decreasing parts, dropping trailing zeros.
    pub fn canonicalize(parts: &[u32]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ChompError::NotMonotone(parts.to_vec()));
        }
        let len = parts.iter().rposition(|&a| a > 0).map_or(0, |i| i + 1);
        Ok(Position { parts: parts[..len].to_vec() })
    }

    /// Line `(k)`; empty when `k == 0`.
    pub fn line(k: u32) -> Self {
        if k == 0 {
            Position::empty()
        } else {
            Position { parts: vec![k] }
        }
    }

    /// Column of `k` single pieces.
    pub fn column(k: u32) -> Self {
        Position { parts: vec![1; k as usize] }
    }

    /// `rows` rows of length `cols`.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if rows == 0 || cols == 0 {
            return Position::empty();
        }
        Position { parts: vec![cols; rows as usize] }
    }

    /// Caller guarantees `parts` is weakly decreasing with no zeros.
    pub(crate) fn from_canonical(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last().is_none_or(|&a| a > 0));
        Position { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn rows(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn volume(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Row length at 1-based `row`, zero past the last row.
    pub fn row_len(&self, row: u32) -> u32 {
        if row == 0 {
            return 0;
        }
        self.parts.get(row as usize - 1).copied().unwrap_or(0)
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    /// Every cell of the bar, row-major.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| Cell::new(r as u32 + 1, c)))
    }

    /// Removes `cell` and everything below-right of it.
    pub fn chomp_at(&self, cell: Cell) -> Result<Position> {
        if !self.contains_cell(cell) {
            return Err(ChompError::InvalidCell {
                position: self.clone(),
                row: cell.row,
                col: cell.col,
            });
        }
        let mut out = Vec::with_capacity(self.parts.len());
        chomp_into(&self.parts, cell, &mut out);
        Ok(Position { parts: out })
    }

    /// All positions reachable in one chomp, in canonical order.
    ///
    /// Distinct cells always give distinct results, so the count equals the
    /// volume. The empty position has no moves.
    pub fn moves(&self) -> Vec<Position> {
        let mut out: Vec<Position> = self
            .cells()
            .map(|cell| {
                let mut buf = Vec::with_capacity(self.parts.len());
                chomp_into(&self.parts, cell, &mut buf);
                Position { parts: buf }
            })
            .collect();
        out.sort();
        out
    }

    /// The cell whose chomp turns `self` into `target`, if any.
    pub fn cell_to(&self, target: &Position) -> Option<Cell> {
        let row = first_difference(&self.parts, &target.parts)?;
        let height = target.row_len(row);
        let cell = Cell::new(row, height + 1);
        (self.chomps_to(target)).then_some(cell)
    }

    /// Whether `target` is reachable from `self` in exactly one chomp.
    pub fn chomps_to(&self, target: &Position) -> bool {
        let Some(row) = first_difference(&self.parts, &target.parts) else {
            return false;
        };
        let height = target.row_len(row);
        if height >= self.row_len(row) {
            return false;
        }
        let start = row as usize - 1;
        let rows = self.parts.len().max(target.parts.len());
        (start..rows).all(|j| {
            let a = self.parts.get(j).copied().unwrap_or(0);
            let b = target.parts.get(j).copied().unwrap_or(0);
            b == a.min(height)
        })
    }

    /// Positions of volume at most `bound` that chomp to `self` in one move.
    pub fn predecessors_within(&self, bound: u32) -> Vec<Position> {
        let own = self.volume();
        if bound <= own {
            return Vec::new();
        }
        enumerate_positions(bound)
            .filter(|q| q.volume() > own && q.chomps_to(self))
            .collect()
    }

    /// Conjugate partition: the bar flipped along its diagonal.
    pub fn transpose(&self) -> Position {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|i| self.parts.iter().take_while(|&&a| a >= i).count() as u32)
            .collect();
        Position { parts }
    }

    pub fn shape_class(&self) -> Result<ShapeClass> {
        let first = *self.parts.first().ok_or(ChompError::EmptyPosition)?;
        let rows = self.rows();
        let tag = if first == 1 && rows == 1 {
            ShapeTag::L0
        } else if rows == 1 || first == 1 {
            ShapeTag::L1
        } else {
            ShapeTag::L2
        };
        Ok(ShapeClass { tag, d_index: first.min(rows) })
    }
}

/// 1-based index of the first row where the two part lists differ.
fn first_difference(a: &[u32], b: &[u32]) -> Option<u32> {
    let rows = a.len().max(b.len());
    (0..rows)
        .find(|&j| a.get(j).copied().unwrap_or(0) != b.get(j).copied().unwrap_or(0))
        .map(|j| j as u32 + 1)
}

/// Writes the result of chomping `parts` at `cell` into `out`; the cell is
/// assumed valid.
pub(crate) fn chomp_into(parts: &[u32], cell: Cell, out: &mut Vec<u32>) {
    out.clear();
    let keep = cell.row as usize - 1;
    let height = cell.col - 1;
    out.extend_from_slice(&parts[..keep]);
    if height > 0 {
        out.extend(parts[keep..].iter().map(|&a| a.min(height)));
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        self.volume()
            .cmp(&other.volume())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Position {
    type Err = ChompError;

    /// Accepts `5,3,3`, `(5,3,3)`, `0` and the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Ok(Position::empty());
        }
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| ChompError::PositionSyntax(s.to_string()))?;
        Position::canonicalize(&parts)
    }
}

impl TryFrom<Vec<u32>> for Position {
    type Error = ChompError;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Position::canonicalize(&parts)
    }
}

impl From<Position> for Vec<u32> {
    fn from(p: Position) -> Self {
        p.parts
    }
}

/// Partitions of one integer in descending lexicographic order.
#[derive(Debug, Clone)]
pub struct PartitionsOf {
    next: Option<Vec<u32>>,
}

impl PartitionsOf {
    pub fn new(n: u32) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        PartitionsOf { next: Some(first) }
    }
}

impl Iterator for PartitionsOf {
    type Item = Position;

    fn next(&mut self) -> Option<Position> {
        let current = self.next.take()?;
        // Successor: decrement the last part above 1 and refill greedily.
        if let Some(idx) = current.iter().rposition(|&a| a > 1) {
            let mut succ = current[..idx].to_vec();
            let head = current[idx] - 1;
            let mut rest: u32 = current[idx..].iter().sum::<u32>() - head;
            succ.push(head);
            while rest > 0 {
                let part = rest.min(head);
                succ.push(part);
                rest -= part;
            }
            self.next = Some(succ);
        }
        Some(Position::from_canonical(current))
    }
}

/// Every position of volume at most `bound`, by ascending volume and
/// descending lexicographic order within a volume.
pub fn enumerate_positions(bound: u32) -> impl Iterator<Item = Position> {
    (0..=bound).flat_map(PartitionsOf::new)
}

/// Number of partitions of each volume `0..=bound`.
pub fn partition_counts(bound: u32) -> Vec<u64> {
    let n = bound as usize;
    let mut counts = vec![0u64; n + 1];
    counts[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            counts[total] = counts[total].saturating_add(counts[total - part]);
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Position {
        Position::canonicalize(parts).unwrap()
    }

    #[test]
    fn canonicalize_strips_zeros() {
        assert_eq!(p(&[3, 2, 0]), p(&[3, 2]));
        assert!(p(&[0, 0]).is_empty());
        assert_eq!(p(&[4, 4, 4, 4, 4]).parts(), &[4, 4, 4, 4, 4]);
    }

    #[test]
    fn canonicalize_rejects_increase() {
        assert_eq!(
            Position::canonicalize(&[2, 3]),
            Err(ChompError::NotMonotone(vec![2, 3]))
        );
        assert!(Position::canonicalize(&[1, 0, 1]).is_err());
    }

    #[test]
    fn volumes() {
        assert_eq!(Position::empty().volume(), 0);
        assert_eq!(p(&[4, 4, 4, 4, 4]).volume(), 20);
        assert_eq!(p(&[5, 2, 1, 1]).volume(), 9);
    }

    #[test]
    fn chomp_examples() {
        assert_eq!(p(&[5, 3, 3]).chomp_at(Cell::new(3, 3)).unwrap(), p(&[5, 3, 2]));
        assert_eq!(p(&[1]).chomp_at(Cell::new(1, 1)).unwrap(), Position::empty());
        assert_eq!(p(&[3, 2]).chomp_at(Cell::new(2, 1)).unwrap(), p(&[3]));
    }

    #[test]
    fn chomp_sequence_from_intro() {
        let chain = [p(&[5, 3, 3]), p(&[5, 3, 2]), p(&[1, 1, 1]), p(&[1]), Position::empty()];
        for w in chain.windows(2) {
            assert!(w[0].chomps_to(&w[1]), "{} -> {}", w[0], w[1]);
            let cell = w[0].cell_to(&w[1]).unwrap();
            assert_eq!(w[0].chomp_at(cell).unwrap(), w[1]);
        }
    }

    #[test]
    fn chomp_rejects_outside_cells() {
        let pos = p(&[3, 1]);
        assert!(matches!(pos.chomp_at(Cell::new(3, 1)), Err(ChompError::InvalidCell { .. })));
        assert!(pos.chomp_at(Cell::new(2, 2)).is_err());
        assert!(pos.chomp_at(Cell::new(0, 1)).is_err());
        assert!(pos.chomp_at(Cell::new(1, 0)).is_err());
    }

    #[test]
    fn move_sets() {
        assert_eq!(p(&[1]).moves(), vec![Position::empty()]);
        assert_eq!(p(&[2]).moves(), vec![Position::empty(), p(&[1])]);
        assert_eq!(p(&[5, 3, 3]).moves().len(), 11);
        assert!(Position::empty().moves().is_empty());
    }

    #[test]
    fn predecessor_examples() {
        assert_eq!(
            Position::empty().predecessors_within(2),
            vec![p(&[1]), p(&[2]), p(&[1, 1])]
        );
        assert_eq!(
            p(&[1]).predecessors_within(3),
            vec![p(&[2]), p(&[1, 1]), p(&[3]), p(&[1, 1, 1])]
        );
        assert!(p(&[5, 3, 3]).predecessors_within(11).is_empty());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[5, 2, 1, 1]).transpose(), p(&[4, 2, 1, 1, 1]));
        assert_eq!(p(&[5, 3, 1, 1]).transpose(), p(&[4, 2, 2, 1, 1]));
        assert_eq!(Position::empty().transpose(), Position::empty());
        for k in 1..8 {
            assert_eq!(Position::line(k).transpose(), Position::column(k));
        }
    }

    #[test]
    fn shape_examples() {
        let c = p(&[1]).shape_class().unwrap();
        assert_eq!((c.tag, c.d_index), (ShapeTag::L0, 1));
        let c = p(&[1, 1, 1]).shape_class().unwrap();
        assert_eq!((c.tag, c.d_index), (ShapeTag::L1, 1));
        let c = p(&[5, 2, 1, 1]).shape_class().unwrap();
        assert_eq!((c.tag, c.d_index), (ShapeTag::L2, 4));
        assert_eq!(Position::empty().shape_class(), Err(ChompError::EmptyPosition));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_positions(0).collect::<Vec<_>>(), vec![Position::empty()]);
        assert_eq!(
            enumerate_positions(2).collect::<Vec<_>>(),
            vec![Position::empty(), p(&[1]), p(&[2]), p(&[1, 1])]
        );
        assert_eq!(enumerate_positions(4).count(), 12);
    }

    #[test]
    fn enumeration_is_sorted_canonically() {
        let all: Vec<_> = enumerate_positions(9).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn text_syntax() {
        assert_eq!("5,3,3".parse::<Position>().unwrap(), p(&[5, 3, 3]));
        assert_eq!("(3,2,0)".parse::<Position>().unwrap(), p(&[3, 2]));
        assert_eq!("0".parse::<Position>().unwrap(), Position::empty());
        assert_eq!(Position::empty().to_string(), "0");
        assert_eq!(p(&[5, 3, 3]).to_string(), "5,3,3");
        assert!("3,x".parse::<Position>().is_err());
        assert!("1,2".parse::<Position>().is_err());
    }
}
