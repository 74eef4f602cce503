use std::hint::black_box;

use bccf::classical::classical_values;
use bccf::random::{random_protocol, random_protocol_with_shape};
use bccf::{analyze_batch, AnalysisOptions, BccfProtocol, Execution, Mode, Shape};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn protocols(
    seed: u64,
    count: usize,
    make: impl Fn(&mut ChaCha8Rng) -> BccfProtocol,
) -> Vec<BccfProtocol> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| make(&mut rng)).collect()
}

fn classical(c: &mut Criterion) {
    let protos = protocols(1, 64, |rng| random_protocol(rng, 3, 3, 0.3));
    let mut group = c.benchmark_group("classical_values");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                for p in &protos {
                    black_box(classical_values(p, exec));
                }
            })
        });
    }
    group.finish();
}

fn quantum_batch(c: &mut Criterion) {
    let shape = Shape::new(vec![2, 2], vec![2, 2]).unwrap();
    let protos = protocols(2, 16, |rng| random_protocol_with_shape(rng, &shape, 0.2));
    let mut group = c.benchmark_group("analyze_batch");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = AnalysisOptions {
            mode: Mode::Quantum,
            exec,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| black_box(analyze_batch(&protos, opts)))
        });
    }
    group.finish();
}

criterion_group!(benches, classical, quantum_batch);
criterion_main!(benches);
