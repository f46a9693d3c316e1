mod common;

use proptest::prelude::*;

use chomp_core::position::partition_counts;
use chomp_core::{enumerate_positions, Cell, NormalizedRule, OrdinalTable, Position, Rule};
use common::{conjugate, positions_up_to, Oracle};

fn position() -> impl Strategy<Value = Position> {
    prop::collection::vec(1u32..9, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Position::canonicalize(&v).unwrap()
    })
}

fn scores() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::hash_set(-1000i32..1000, 1..7)
        .prop_flat_map(|s| Just(s.into_iter().map(|x| x as f64 / 8.0).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn transpose_is_an_involution(p in position()) {
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.transpose().parts().to_vec(), conjugate(p.parts()));
        prop_assert_eq!(p.transpose().volume(), p.volume());
    }

    #[test]
    fn one_move_per_cell(p in position()) {
        prop_assert_eq!(p.moves().len() as u32, p.volume());
    }

    #[test]
    fn chomping_strictly_shrinks(p in position(), pick in any::<prop::sample::Index>()) {
        prop_assume!(!p.is_empty());
        let cells: Vec<Cell> = p.cells().collect();
        let cell: Cell = cells[pick.index(cells.len())];
        let q = p.chomp_at(cell).unwrap();
        prop_assert!(q.volume() < p.volume());
        prop_assert_eq!(p.cell_to(&q), Some(cell));
        prop_assert!(q.parts().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn normalization_keeps_order_and_is_idempotent(s in scores()) {
        let rule = Rule::new(s.clone()).unwrap();
        let g = rule.normalize();
        for i in 0..s.len() {
            for j in 0..s.len() {
                prop_assert_eq!(s[i] < s[j], g.perm()[i] < g.perm()[j]);
            }
        }
        let again = Rule::new(g.perm().iter().map(|&a| a as f64).collect()).unwrap().normalize();
        prop_assert_eq!(again, g);
    }

    #[test]
    fn solver_ignores_score_scale(s in scores(), p in position()) {
        prop_assume!(p.volume() <= 9);
        let rule = Rule::new(s.clone()).unwrap();
        let table = OrdinalTable::compute(&rule.normalize(), p.volume()).unwrap();
        let mut oracle = Oracle::new(&s);
        prop_assert_eq!(table.ordinal(&p).unwrap() as usize, oracle.ordinal(p.parts()));
    }
}

#[test]
fn enumeration_matches_reference() {
    let mine: Vec<Vec<u32>> = enumerate_positions(12).map(|p| p.parts().to_vec()).collect();
    assert_eq!(mine, positions_up_to(12));
    // Partition numbers p(0..=12).
    let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    assert_eq!(partition_counts(12), expected.to_vec());
}

#[test]
fn tables_match_oracle_for_all_small_rules() {
    for n in 1..=4 {
        for perm in common::permutations(n) {
            let rule = NormalizedRule::from_permutation(perm.clone()).unwrap();
            let table = OrdinalTable::compute(&rule, 10).unwrap();
            let mut oracle = Oracle::from_perm(&perm);
            for (p, o) in table.entries() {
                assert_eq!(o as usize, oracle.ordinal(p.parts()), "{rule} at {p}");
                let sols: Vec<Vec<u32>> = table.solutions(p).unwrap_or_default().iter().map(|q| q.parts().to_vec()).collect();
                let mut sols = sols;
                sols.sort();
                if !p.is_empty() {
                    assert_eq!(sols, oracle.solutions(p.parts()), "{rule} at {p}");
                }
            }
        }
    }
}
