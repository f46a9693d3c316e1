//! Executable property suites over every position up to a volume bound and
//! every normalized rule up to a player count.
//!
//! Each property counts the instances it checked and records the first
//! failure. Positions are addressed by universe index throughout.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::classifier::enumerate_rules;
use crate::error::{ChompError, Result};
use crate::isomorphism::{exchange_swap, reduce_with_table, ExchangePrecondition};
use crate::position::{Position, ShapeTag};
use crate::rule::NormalizedRule;
use crate::solver::OrdinalTable;
use crate::universe::Universe;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyResult {
    pub name: String,
    pub statement: String,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    fn new(name: &str, statement: &str) -> Self {
        PropertyResult {
            name: name.to_string(),
            statement: statement.to_string(),
            checked: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub bound: u32,
    pub players: usize,
    pub rules: usize,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "volume <= {}, {} rules with at most {} players",
            self.bound, self.rules, self.players
        );
        for p in &self.properties {
            let status = if p.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {:<26} {:>9} checked {:>4} failed  {}", p.name, p.checked, p.failures, p.statement);
            if let Some(f) = &p.first_failure {
                let _ = writeln!(out, "     first failure: {f}");
            }
        }
        out
    }
}

/// Smallest volume the suite accepts.
pub const MIN_VERIFY_VOLUME: u32 = 4;

/// Runs every property up to volume `bound` for all rules with at most
/// `players` seats.
pub fn verify_suite(bound: u32, players: usize) -> Result<VerifyReport> {
    if bound < MIN_VERIFY_VOLUME {
        return Err(ChompError::FrontierTooSmall { needed: MIN_VERIFY_VOLUME, frontier: bound });
    }
    let universe = Arc::new(Universe::build(bound)?);
    let mut rules = Vec::new();
    for n in 1..=players {
        rules.extend(enumerate_rules(n)?);
    }
    let tables: Vec<OrdinalTable> =
        rules.par_iter().map(|r| OrdinalTable::over(r, universe.clone())).collect();

    let mut reverse_moves: Vec<Vec<u32>> = vec![Vec::new(); universe.len()];
    for idx in 0..universe.len() {
        for &t in universe.moves_of(idx) {
            reverse_moves[t as usize].push(idx as u32);
        }
    }

    let mut properties = position_properties(&universe);
    properties.extend(rule_properties(&universe, &reverse_moves, &tables)?);
    properties.extend(pair_properties(&universe, &tables));
    Ok(VerifyReport { bound, players, rules: rules.len(), properties })
}

fn position_properties(u: &Universe) -> Vec<PropertyResult> {
    let mut move_count = PropertyResult::new("move-count", "|Mov P| = |P|");
    let mut monotone = PropertyResult::new("volume-monotonicity", "P -> Q implies |Q| < |P|");
    let mut transpose = PropertyResult::new(
        "transpose-moves",
        "P^T^T = P, |P^T| = |P|, Mov P^T = (Mov P)^T",
    );
    let mut band = PropertyResult::new("band-monotonicity", "P -> Q implies band(Q) <= band(P)");
    let mut point = PropertyResult::new("point-reachability", "P -> (1) implies P is not two-dimensional");
    let mut d1 = PropertyResult::new("d1-closure", "moves from band 1 stay in band 1 or end");
    let mut closed = PropertyResult::new("enumeration-closure", "every move of an enumerated position is enumerated");
    let mut preds = PropertyResult::new("predecessor-duality", "Q in Mov P iff P in reverse moves of Q");

    let mut reverse: Vec<Vec<u32>> = vec![Vec::new(); u.len()];
    for (idx, p) in u.positions().iter().enumerate() {
        let moves = p.moves();
        move_count.check(moves.len() as u32 == p.volume(), || format!("{p}: {} moves", moves.len()));
        let band_p = p.shape_class().map(|c| c.d_index).ok();
        let tag_p = p.shape_class().map(|c| c.tag).ok();
        for q in &moves {
            monotone.check(q.volume() < p.volume(), || format!("{p} -> {q}"));
            closed.check(u.index_of(q).is_some(), || format!("{q} missing"));
            if let Some(i) = u.index_of(q) {
                reverse[i].push(idx as u32);
            }
            let band_q = q.shape_class().map(|c| c.d_index).unwrap_or(0);
            band.check(band_p.is_some_and(|b| band_q <= b), || format!("{p} -> {q}"));
            if q.parts() == [1] {
                point.check(tag_p != Some(ShapeTag::L2), || format!("{p} -> (1)"));
            }
            if band_p == Some(1) {
                d1.check(q.is_empty() || band_q == 1, || format!("{p} -> {q}"));
            }
        }
        let t = p.transpose();
        let mut moved: Vec<Position> = moves.iter().map(Position::transpose).collect();
        moved.sort();
        transpose.check(
            t.transpose() == *p && t.volume() == p.volume() && t.moves() == moved,
            || format!("{p}"),
        );
    }
    // Scanning predecessors is quadratic; keep it to small targets.
    for (idx, p) in u.positions().iter().enumerate().filter(|(_, p)| p.volume() <= 10) {
        let direct: Vec<Position> = p.predecessors_within(u.bound());
        let mut via_moves: Vec<Position> = reverse[idx].iter().map(|&i| u.position(i as usize).clone()).collect();
        via_moves.sort();
        preds.check(direct == via_moves, || format!("{p}"));
    }
    let nonempty: Vec<Position> = u.positions()[1..].to_vec();
    preds.check(
        Position::empty().predecessors_within(u.bound()) == nonempty,
        || "reverse moves of the empty position".into(),
    );
    vec![move_count, monotone, transpose, band, point, d1, closed, preds]
}

/// Real-valued backward induction without normalization or indexing.
fn reference_ordinals(scores: &[f64], u: &Universe) -> Vec<u8> {
    let n = scores.len();
    let mut memo: FxHashMap<Position, u8> = FxHashMap::default();
    memo.insert(Position::empty(), 0);
    let mut out = Vec::with_capacity(u.len());
    for p in u.positions() {
        if !p.is_empty() {
            let mut best: Option<(f64, u8)> = None;
            for q in p.moves() {
                let o = memo[&q] as usize;
                if o == n {
                    continue;
                }
                if best.is_none_or(|(s, _)| scores[o] > s) {
                    best = Some((scores[o], o as u8 + 1));
                }
            }
            memo.insert(p.clone(), best.expect("empty position is a move").1);
        }
        out.push(memo[p]);
    }
    out
}

fn rule_properties(
    u: &Arc<Universe>,
    reverse_moves: &[Vec<u32>],
    tables: &[OrdinalTable],
) -> Result<Vec<PropertyResult>> {
    let mut total = PropertyResult::new("recurrence-total", "every nonempty P has an ordinal in 1..=n");
    let mut norm = PropertyResult::new(
        "normalization-invariance",
        "order-preserving score changes keep every ordinal",
    );
    let mut increment = PropertyResult::new("solution-increment", "Q in Sol P implies ord Q < n and ord P = ord Q + 1");
    let mut preference = PropertyResult::new("preference-law", "ord P = 1 iff Sol P = {(0)}");
    let mut reverse = PropertyResult::new(
        "reverse-solutions",
        "ord P = n iff no reverse solutions; reverse solutions have ord P + 1",
    );
    let mut resolvent = PropertyResult::new(
        "resolvent-law",
        "Sol P = Res^ord P; resolvents are disjoint parts of Mov P; a(ord P) = max a_i over nonempty Res^i",
    );
    let mut chain = PropertyResult::new("chain-law", "solution chains descend by 1 and have length ord P <= n");
    let mut point = PropertyResult::new("point-resolvents", "Res^1 (1) = {(0)}, Res^i (1) empty for i >= 2");
    let mut transpose = PropertyResult::new("transposition-invariance", "ord P^T = ord P and Sol P^T = (Sol P)^T");
    let mut reduction = PropertyResult::new("reduction", "truncating to the largest ordinal keeps every ordinal");
    let mut lines = PropertyResult::new("line-formula", "ord (k) = ord (1^k) = min(k, descent index)");
    let mut standard = PropertyResult::new(
        "standardness",
        "non-standard iff (1) is the only ordinal-1 position",
    );
    let mut point_preds = PropertyResult::new(
        "point-predecessors",
        "non-standard rules: reverse moves of ordinal-1 positions are the lines and columns",
    );
    let mut high_preds = PropertyResult::new(
        "high-ordinal-predecessors",
        "i > descent index: reverse moves of ordinal-i positions are two-dimensional",
    );
    let mut exchange = PropertyResult::new(
        "exchange",
        "a swap of adjacent scores whose precondition holds keeps every ordinal",
    );

    let mut lines_and_columns: Vec<Position> = (2..=u.bound())
        .flat_map(|k| [Position::line(k), Position::column(k)])
        .collect();
    lines_and_columns.sort();
    let standard_sigs: FxHashMap<usize, Vec<u8>> = tables
        .iter()
        .map(|t| t.rule().players())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|k| {
            let s = NormalizedRule::standard(k).expect("valid player count");
            (k, OrdinalTable::over(&s, u.clone()).signature().to_vec())
        })
        .collect();

    for t in tables {
        let rule = t.rule();
        let n = rule.players() as u8;
        let sig = t.signature();
        let name = rule.to_string();

        let scores: Vec<f64> = rule.perm().iter().map(|&a| (f64::from(a) * 0.7).exp() * 3.0 - 2.0).collect();
        norm.check(reference_ordinals(&scores, u) == sig, || name.clone());

        let mut reverse_sols: Vec<Vec<usize>> = vec![Vec::new(); u.len()];
        for (idx, p) in u.positions().iter().enumerate() {
            let ord = sig[idx];
            if p.is_empty() {
                total.check(ord == 0, || format!("{name} empty has {ord}"));
                continue;
            }
            total.check((1..=n).contains(&ord), || format!("{name} {p}: {ord}"));

            let sols = t.solutions(p)?;
            for q in &sols {
                let oq = t.get(q).expect("moves stay in the universe");
                increment.check(oq < n && ord == oq + 1, || format!("{name} {p} -> {q}"));
                reverse_sols[u.index_of(q).expect("in universe")].push(idx);
            }
            let only_empty = sols.len() == 1 && sols[0].is_empty();
            preference.check((ord == 1) == only_empty, || format!("{name} {p}"));

            let moves = p.moves();
            let mut seen = 0usize;
            let mut best: Option<u8> = None;
            for i in 1..=n {
                let res = t.resolvent(p, i)?;
                seen += res.len();
                if !res.is_empty() {
                    let s = rule.score(i);
                    best = Some(best.map_or(s, |b| b.max(s)));
                }
                if i == ord {
                    resolvent.check(res == sols, || format!("{name} {p}: Sol != Res^{i}"));
                }
            }
            let with_top = moves.iter().filter(|q| t.get(q) == Some(n)).count();
            resolvent.check(seen + with_top == moves.len(), || format!("{name} {p}: resolvents do not partition"));
            resolvent.check(best == Some(rule.score(ord)), || format!("{name} {p}: score mismatch"));

            let c = t.solution_chain(p)?;
            let ords: Vec<u8> = c.positions.iter().map(|q| t.get(q).unwrap_or(u8::MAX)).collect();
            let descends = ords.windows(2).all(|w| w[0] == w[1] + 1);
            chain.check(
                descends && c.len() == ord as usize && c.len() <= n as usize,
                || format!("{name} {p}: {ords:?}"),
            );

            let pt = p.transpose();
            let sols_t = t.solutions(&pt)?;
            let mut mapped: Vec<Position> = sols.iter().map(Position::transpose).collect();
            mapped.sort();
            transpose.check(t.get(&pt) == Some(ord) && sols_t == mapped, || format!("{name} {p}"));
        }
        for (idx, r) in reverse_sols.iter().enumerate().skip(1) {
            let ord = sig[idx];
            if ord == n {
                reverse.check(r.is_empty(), || format!("{name} {}", u.position(idx)));
            }
            reverse.check(
                r.iter().all(|&q| sig[q] == ord + 1),
                || format!("{name} {}", u.position(idx)),
            );
        }

        let one = Position::line(1);
        point.check(
            t.resolvent(&one, 1)? == vec![Position::empty()]
                && (2..=n).all(|i| t.resolvent(&one, i).is_ok_and(|r| r.is_empty())),
            || name.clone(),
        );

        let (reduced, _) = reduce_with_table(t);
        let reduced_table = OrdinalTable::over(&reduced, u.clone());
        reduction.check(reduced_table.signature() == sig, || format!("{name} -> {reduced}"));

        let m = rule.descent_index();
        for k in 1..=u.bound() {
            let want = rule.line_ordinal(k);
            lines.check(
                t.get(&Position::line(k)) == Some(want) && t.get(&Position::column(k)) == Some(want),
                || format!("{name} k={k}"),
            );
        }

        let is_std = standard_sigs[&(m as usize)] == sig;
        let extra_one = u.positions().iter().zip(sig).any(|(p, &o)| o == 1 && p.volume() > 1);
        if is_std {
            let k = m as u32;
            if 2 * k - 1 <= u.bound() {
                let mut parts = vec![k];
                parts.extend(std::iter::repeat_n(1, k as usize - 1));
                let witness = Position::canonicalize(&parts)?;
                standard.check(t.get(&witness) == Some(1), || format!("{name} {witness}"));
            }
        } else {
            standard.check(!extra_one, || name.clone());
            for (idx, p) in u.positions().iter().enumerate().filter(|&(i, _)| sig[i] == 1) {
                let mut preds: Vec<Position> =
                    reverse_moves[idx].iter().map(|&q| u.position(q as usize).clone()).collect();
                preds.sort();
                point_preds.check(preds == lines_and_columns, || format!("{name} {p}"));
            }
        }
        for (idx, p) in u.positions().iter().enumerate().filter(|&(i, _)| sig[i] > m) {
            for &q in &reverse_moves[idx] {
                let q = u.position(q as usize);
                let tag = q.shape_class().map(|c| c.tag);
                high_preds.check(tag == Ok(ShapeTag::L2), || format!("{name} {q} -> {p}"));
            }
        }

        for i in 1..=n as usize {
            for j in i + 1..=n as usize {
                if rule.perm()[i - 1].abs_diff(rule.perm()[j - 1]) != 1 {
                    continue;
                }
                let report = exchange_swap(rule, i, j, u.bound())?;
                if matches!(report.precondition, ExchangePrecondition::VerifiedUpTo { .. }) {
                    exchange.check(report.iso.agrees(), || format!("{name} swap {i},{j}"));
                }
            }
        }
    }
    Ok(vec![
        total, norm, increment, preference, reverse, resolvent, chain, point, transpose, reduction, lines,
        standard, point_preds, high_preds, exchange,
    ])
}

fn pair_properties(u: &Universe, tables: &[OrdinalTable]) -> Vec<PropertyResult> {
    let mut bridge = PropertyResult::new(
        "isomorphism-bridge",
        "ordinal maps agree iff solution maps agree",
    );
    let mut d1 = PropertyResult::new("d1-isomorphism", "agreement on lines and columns iff equal descent index");

    let solution_maps: Vec<Vec<Vec<Position>>> = tables
        .par_iter()
        .map(|t| u.positions().iter().map(|p| t.solutions(p).unwrap_or_default()).collect())
        .collect();
    let d1_indices: Vec<usize> = u
        .positions()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.shape_class().is_ok_and(|c| c.d_index == 1))
        .map(|(i, _)| i)
        .collect();

    for a in 0..tables.len() {
        for b in a + 1..tables.len() {
            let (ta, tb) = (&tables[a], &tables[b]);
            let ord_agree = ta.signature() == tb.signature();
            let sol_agree = solution_maps[a] == solution_maps[b];
            bridge.check(ord_agree == sol_agree, || format!("{} vs {}", ta.rule(), tb.rule()));
            let on_d1 = d1_indices.iter().all(|&i| ta.signature()[i] == tb.signature()[i]);
            // Lines longer than both descent indices are needed to tell them apart.
            let deep = u.bound() as usize > ta.rule().players().max(tb.rule().players());
            if deep {
                let same_m = ta.rule().descent_index() == tb.rule().descent_index();
                d1.check(on_d1 == same_m, || format!("{} vs {}", ta.rule(), tb.rule()));
            }
        }
    }
    vec![bridge, d1]
}
