use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use kl_bench::{c_star_row, first_identity, oracle_round};
use kl_core::combinatorics::{weight, weight_closed_form};
use kl_core::klpoly::{kl_closed_form, kl_direct, linear_part};

fn expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("expansion");
    for n in [4u32, 6, 8] {
        group.bench_with_input(BenchmarkId::new("direct", n), &n, |b, &n| {
            b.iter(|| kl_direct(black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed_form", n), &n, |b, &n| {
            b.iter(|| kl_closed_form(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    c.bench_function("oracle_round_7", |b| b.iter(|| oracle_round(black_box(7))));
    c.bench_function("c_star_row_7", |b| b.iter(|| c_star_row(black_box(7))));
    c.bench_function("first_identity_8", |b| b.iter(|| first_identity(black_box(8))));
    c.bench_function("linear_part_12", |b| b.iter(|| linear_part(black_box(12)).unwrap()));
}

fn weights(c: &mut Criterion) {
    c.bench_function("weight_enumerated_6_6_1", |b| {
        b.iter(|| weight(black_box(6), 6, 1).unwrap())
    });
    c.bench_function("weight_closed_form_6_6_1", |b| {
        b.iter(|| weight_closed_form(black_box(6), 6, 1).unwrap())
    });
}

criterion_group!(benches, expansion, verification, weights);
criterion_main!(benches);
