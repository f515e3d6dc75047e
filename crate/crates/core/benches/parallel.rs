//! Sequential against data-parallel execution of the heavier searches.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dpgraph::catalog::{c7_with_pendant, cycle, graphs_in_range, path};
use dpgraph::par::set_parallel;
use dpgraph::verify::check_thm1;
use dpgraph::{cart_product, dp_spectrum, hunt_conjecture};

const MODES: [(&str, bool); 2] = [("sequential", false), ("parallel", true)];

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("dp_spectrum");
    let prism = cart_product(&c7_with_pendant(), &path(2)).unwrap().graph;
    let c9_prism = cart_product(&cycle(9), &path(3)).unwrap().graph;
    for (name, g) in [("c7pendant_x_p2", &prism), ("c9_x_p3", &c9_prism)] {
        for (mode, on) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), g, |b, g| {
                set_parallel(on);
                b.iter(|| dp_spectrum(black_box(g)).unwrap());
            });
        }
    }
    group.finish();
}

fn thm1_sweep(c: &mut Criterion) {
    let lefts = graphs_in_range(2, 5, true).unwrap();
    let rights = graphs_in_range(1, 3, false).unwrap();
    let mut group = c.benchmark_group("thm1_sweep");
    group.sample_size(10);
    for (mode, on) in MODES {
        group.bench_function(mode, |b| {
            set_parallel(on);
            b.iter(|| check_thm1(black_box(&lefts), black_box(&rights)).unwrap());
        });
    }
    group.finish();
}

fn hunt(c: &mut Criterion) {
    // Warm the catalog cache so only the product checks are measured.
    graphs_in_range(1, 5, true).unwrap();
    let mut group = c.benchmark_group("hunt_5x5");
    group.sample_size(10);
    for (mode, on) in MODES {
        group.bench_function(mode, |b| {
            set_parallel(on);
            b.iter(|| hunt_conjecture(5, 5, 25).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, spectra, thm1_sweep, hunt);
criterion_main!(benches);
