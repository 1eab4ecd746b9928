use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use tvariety::betti::betti_batch;
use tvariety::divisorial::{
    glue_example1, toric_downgrade, trivial_fan, validate_divisorial_fan_with, DivisorialFan,
};
use tvariety::exactlin::ExactVector;
use tvariety::exec::Strategy;
use tvariety::fan::{build_fan, Fan};

fn fan(max: &[&[&[i64]]], n: usize) -> Fan {
    let gens: Vec<Vec<ExactVector>> = max
        .iter()
        .map(|c| c.iter().map(|r| ExactVector::from_ints(r)).collect())
        .collect();
    build_fan(&gens, n).unwrap()
}

fn plane() -> Fan {
    fan(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, -1]], &[&[-1, -1], &[1, 0]]], 2)
}

fn hirzebruch(a: i64) -> Fan {
    fan(
        &[
            &[&[1, 0], &[0, 1]],
            &[&[0, 1], &[-1, a]],
            &[&[-1, a], &[0, -1]],
            &[&[0, -1], &[1, 0]],
        ],
        2,
    )
}

fn inputs() -> Vec<DivisorialFan> {
    let mut out = Vec::new();
    for a in 0..3 {
        out.push(toric_downgrade(&hirzebruch(a)).unwrap().with_projective(true));
    }
    for g in 0..3 {
        out.push(trivial_fan(&plane(), g).unwrap().with_projective(true));
    }
    let slice = fan(
        &[
            &[&[1, 0], &[1, 2]],
            &[&[1, 2], &[-1, 0]],
            &[&[-1, 0], &[0, -1]],
            &[&[0, -1], &[1, 0]],
        ],
        2,
    );
    for g in 0..2 {
        let slices = [("0".to_string(), slice.clone()), ("1".to_string(), slice.clone())];
        out.push(glue_example1(g, &slices).unwrap().with_projective(true));
    }
    out
}

fn strategies(c: &mut Criterion) {
    let fans = inputs();
    let mut group = c.benchmark_group("betti_batch");
    group.sample_size(10);
    for (name, s) in [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| betti_batch(black_box(&fans), s))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("validation");
    group.sample_size(10);
    for (name, s) in [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| {
                fans.iter()
                    .filter(|e| validate_divisorial_fan_with(black_box(e), s).is_valid())
                    .count()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, strategies);
criterion_main!(benches);
