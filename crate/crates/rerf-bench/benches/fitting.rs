use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use rerf_bench::bench_data;
use rerf_core::tuning::{approximate_search, default_grid, SearchSettings};
use rerf_core::{
    default_penalty_grid, fit_forest, fit_lasso_path, fit_rerf_with, FeatureExpansionSpec,
    ForestParams, PenaltyGrid, RerfOptions,
};

fn lasso_path(c: &mut Criterion) {
    let data = bench_data(500, 1);
    let grid = default_penalty_grid();
    c.bench_function("lasso_path_100_lambdas_n500_p10", |b| {
        b.iter(|| fit_lasso_path(black_box(&data), &grid).unwrap())
    });
}

fn forest_fit(c: &mut Criterion) {
    let mut group = c.benchmark_group("forest_fit_100_trees");
    for &n in &[200usize, 500, 1000] {
        let data = bench_data(n, 2);
        let params = ForestParams::new(3, 5, 7).with_n_trees(100);
        group.bench_with_input(BenchmarkId::from_parameter(n), &data, |b, data| {
            b.iter(|| fit_forest(black_box(data), &params).unwrap())
        });
    }
    group.finish();
}

fn rerf_fit(c: &mut Criterion) {
    let data = bench_data(500, 3);
    let options = RerfOptions { n_trees: 100, ..Default::default() };
    c.bench_function("rerf_fit_100_trees_n500", |b| {
        b.iter(|| {
            fit_rerf_with(
                black_box(&data),
                &FeatureExpansionSpec::default(),
                0.05,
                3,
                5,
                7,
                &options,
            )
            .unwrap()
        })
    });
}

fn tuning_search(c: &mut Criterion) {
    let data = bench_data(200, 4);
    let grid = rerf_core::tuning::TuningGrid {
        lambdas: PenaltyGrid::log_spaced(0.001, 100.0, 10).unwrap(),
        ..default_grid(10)
    };
    let settings = SearchSettings { cv_n_trees: 10, ..SearchSettings::new(5) };
    let mut group = c.benchmark_group("approximate_search_small");
    group.sample_size(10);
    group.bench_function("n200_10_lambdas_cv10", |b| {
        b.iter(|| {
            approximate_search(
                black_box(&data),
                &FeatureExpansionSpec::default(),
                &grid,
                &settings,
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, lasso_path, forest_fit, rerf_fit, tuning_search);
criterion_main!(benches);
