//! Criterion suite comparing the data-parallel probe and classification
//! sweeps against their sequential fallbacks.
//!
//! With the default `parallel` feature the probe fans samples out over a
//! rayon pool; `--no-default-features` builds the sequential path only, and
//! the benches then measure just that path.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use conic_scope::certify::perturbation_probe;
use conic_scope::corpus;
use conic_scope::facial::{classify, ClassifyConfig};

fn probe_pencil() -> conic_scope::Pencil<f64> {
    corpus::ex_standard().pencil.to_f64()
}

fn bench_probe(c: &mut Criterion) {
    let pencil = probe_pencil();
    let mut group = c.benchmark_group("perturbation_probe");
    group.sample_size(10);
    group.bench_function("serial_64_samples", |b| {
        b.iter(|| {
            black_box(perturbation_probe(
                black_box(&pencil),
                1e-4,
                64,
                7,
                1e-8,
                200,
                1,
            ))
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel_64_samples", |b| {
        b.iter(|| {
            black_box(perturbation_probe(
                black_box(&pencil),
                1e-4,
                64,
                7,
                1e-8,
                200,
                num_cpus(),
            ))
        })
    });
    group.finish();
}

#[cfg(feature = "parallel")]
fn num_cpus() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(4)
}

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(20);
    for entry in [corpus::ex_standard(), corpus::klep_schweighofer()] {
        let pencil = entry.pencil.to_f64();
        group.bench_function(entry.name, move |b| {
            let cfg = ClassifyConfig::default();
            b.iter(|| black_box(classify(black_box(&pencil), &cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_probe, bench_classify);
criterion_main!(benches);
