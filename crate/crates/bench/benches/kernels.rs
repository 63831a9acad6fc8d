use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use repcalc_bench::{dense, hidden_sum, tube_module};
use repcalc_core::homcalc::{decompose, hom_basis, is_isomorphic};
use repcalc_core::Field;

fn rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for (name, field) in [
        ("F101", Field::prime(101).unwrap()),
        ("Q", Field::rational()),
    ] {
        for n in [16, 32] {
            let m = dense(&field, n, 7);
            group.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| b.iter(|| m.rref()));
        }
    }
    group.finish();
}

fn homs(c: &mut Criterion) {
    let f = Field::prime(101).unwrap();
    let mut group = c.benchmark_group("hom_basis");
    for i in [2, 4, 6] {
        let x = tube_module(&f, 3, i);
        group.bench_with_input(BenchmarkId::new("tube_end", i), &x, |b, x| {
            b.iter(|| hom_basis(x, x).unwrap())
        });
    }
    group.finish();
}

fn decompositions(c: &mut Criterion) {
    let f = Field::prime(101).unwrap();
    let hidden = hidden_sum(&f);
    c.bench_function("decompose/catalog_sum", |b| {
        b.iter(|| decompose(&hidden).unwrap())
    });
    let x = tube_module(&f, 5, 6);
    c.bench_function("decompose/tube_6", |b| b.iter(|| decompose(&x).unwrap()));
    let y = tube_module(&f, 6, 6);
    c.bench_function("is_isomorphic/tube_6", |b| {
        b.iter(|| is_isomorphic(&x, &y).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(20);
    targets = rref, homs, decompositions
}
criterion_main!(kernels);
