use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use subshift_bench::{context_free, golden_mean};
use subshift_core::classifier;
use subshift_core::fixtures;
use subshift_core::graph::{follower_set_graph, GraphOracle};
use subshift_core::language::{self, OracleBudget, Side};

fn bench_language_enumeration(c: &mut Criterion) {
    let budget = OracleBudget::default();
    let spec = golden_mean();
    c.bench_function("golden_mean_words_len_14", |b| {
        b.iter_batched(
            || spec.exact_oracle(&budget).unwrap(),
            |oracle| language::words_of_len(&oracle, 14, &budget).unwrap().len(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_oracle_build(c: &mut Criterion) {
    let budget = OracleBudget::default();
    let spec = context_free(6);
    c.bench_function("context_free_oracle_build", |b| {
        b.iter(|| spec.exact_oracle(&budget).unwrap().n_states())
    });
}

fn bench_follower_graphs(c: &mut Criterion) {
    let budget = OracleBudget::default();
    let even = fixtures::fixture("even-shift", None)
        .unwrap()
        .graph
        .unwrap();
    c.bench_function("even_shift_follower_depth_10", |b| {
        b.iter_batched(
            || GraphOracle::new(&even, Side::TwoSided).unwrap(),
            |oracle| {
                follower_set_graph(&oracle, 10, &budget)
                    .unwrap()
                    .vertices
                    .len()
            },
            BatchSize::SmallInput,
        )
    });
    let spec = context_free(6);
    c.bench_function("context_free_follower_depth_8", |b| {
        b.iter_batched(
            || spec.exact_oracle(&budget).unwrap(),
            |oracle| {
                follower_set_graph(&oracle, 8, &budget)
                    .unwrap()
                    .vertices
                    .len()
            },
            BatchSize::SmallInput,
        )
    });
}

fn bench_classifier(c: &mut Criterion) {
    let budgets = classifier::Budgets::default();
    let spec = golden_mean();
    c.bench_function("golden_mean_classification_report", |b| {
        b.iter(|| classifier::classification_report(&spec, &budgets).unwrap())
    });
}

criterion_group!(
    benches,
    bench_language_enumeration,
    bench_oracle_build,
    bench_follower_graphs,
    bench_classifier
);
criterion_main!(benches);
