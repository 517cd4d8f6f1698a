use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use markov_core::{Engine, Fraction};

fn numerators(c: &mut Criterion) {
    let mut e = Engine::new();
    let p = e.numerator(Fraction::new(13, 18).unwrap()).unwrap();
    let q = e.numerator(Fraction::new(8, 11).unwrap()).unwrap();
    c.bench_function("mul degree 30 x 18", |b| b.iter(|| black_box(&*p).mul(black_box(&*q))));
    for f in ["21/34", "1/40", "29/41"] {
        let f: Fraction = f.parse().unwrap();
        c.bench_function(&format!("numerator {f} cold"), |b| {
            b.iter(|| Engine::new().numerator(black_box(f)).unwrap())
        });
    }
}

criterion_group!(benches, numerators);
criterion_main!(benches);
