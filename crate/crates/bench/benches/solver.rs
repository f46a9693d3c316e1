use std::sync::Arc;

use chomp_bench::four_player_rules;
use chomp_core::{classify_up_to, OrdinalTable, Universe};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn universe(c: &mut Criterion) {
    let mut group = c.benchmark_group("universe");
    for bound in [15u32, 25, 30] {
        group.bench_with_input(BenchmarkId::from_parameter(bound), &bound, |b, &bound| {
            b.iter(|| Universe::build(bound).unwrap())
        });
    }
    group.finish();
}

fn ordinal_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("ordinal_table");
    group.sample_size(20);
    for bound in [20u32, 25, 30] {
        let u = Arc::new(Universe::build(bound).unwrap());
        for rule in four_player_rules() {
            let id = BenchmarkId::new(rule.to_string(), bound);
            group.bench_with_input(id, &rule, |b, rule| b.iter(|| OrdinalTable::over(rule, u.clone())));
        }
    }
    group.finish();
}

fn table_from_scratch(c: &mut Criterion) {
    let rule = "0,1,2,3".parse().unwrap();
    c.bench_function("compute_v25_s4", |b| b.iter(|| OrdinalTable::compute(&rule, 25).unwrap()));
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    group.bench_function("up_to_4_players_v12", |b| b.iter(|| classify_up_to(4, 12).unwrap()));
    group.finish();
}

criterion_group!(benches, universe, ordinal_table, table_from_scratch, classification);
criterion_main!(benches);
