//! Parallel vs sequential evaluation of power assignments.
//!
//! Built without the `parallel` feature both variants run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use help_core::constraints::Toggles;
use help_core::data;
use help_core::solver::{verify_with_quotients, SolveOptions};
use help_core::GroupData;

fn resolve(name: &str) -> Result<GroupData, String> {
    data::resolve(name).map_err(|e| e.to_string())
}

fn verify_groups(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for stem in ["s5", "2s5", "gl25"] {
        let g = data::bundled(stem).unwrap();
        for (mode, parallel) in [("parallel", true), ("sequential", false)] {
            let options = SolveOptions {
                toggles: Toggles::full(g),
                parallel,
                orders: None,
            };
            group.bench_with_input(BenchmarkId::new(mode, stem), &options, |b, o| {
                b.iter(|| black_box(verify_with_quotients(g, &resolve, o).unwrap()))
            });
        }
    }
    group.finish();
}

/// The slowest single order: many power assignments, each with its own box.
fn gl25_order_24(c: &mut Criterion) {
    let g = data::bundled("gl25").unwrap();
    let mut group = c.benchmark_group("gl25-order-24");
    group.sample_size(10);
    for (mode, parallel) in [("parallel", true), ("sequential", false)] {
        let options = SolveOptions {
            toggles: Toggles::full(g),
            parallel,
            orders: Some(vec![24]),
        };
        group.bench_function(mode, |b| {
            b.iter(|| black_box(verify_with_quotients(g, &resolve, &options).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, verify_groups, gl25_order_24);
criterion_main!(benches);
