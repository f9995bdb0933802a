use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skolem::enumeration::{count_family, CountOptions, Family, PARALLEL};

const CASES: [(Family, usize); 4] = [
    (Family::Skolem, 11),
    (Family::Perfect, 9),
    (Family::PerfectExtremal, 10),
    (Family::PerfectSets, 9),
];

fn serial_vs_parallel(c: &mut Criterion) {
    // without the `parallel` feature both arms run the sequential engine
    let arms = [
        ("serial", 1),
        (if PARALLEL { "parallel" } else { "fallback" }, 0),
    ];
    for (family, n) in CASES {
        let mut group = c.benchmark_group(format!("{family}-{n}"));
        group.sample_size(10);
        for (label, jobs) in arms {
            let opts = CountOptions::with_jobs(jobs);
            group.bench_with_input(BenchmarkId::from_parameter(label), &opts, |b, opts| {
                b.iter(|| count_family(black_box(family), n, opts).unwrap().count)
            });
        }
        group.finish();
    }
}

criterion_group!(benches, serial_vs_parallel);
criterion_main!(benches);
