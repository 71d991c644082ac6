use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use approxmu_core::contfrac::cf_expand;
use approxmu_core::families::liouville_mu_series;
use approxmu_core::measure::{mu, Approximation};
use approxmu_core::modeldsl::parse_model;
use approxmu_core::numerics::{constant, ConstantId};
use approxmu_core::search::{exhaustive_search, SearchSpec};
use approxmu_core::BigInt;

fn measure(c: &mut Criterion) {
    let model = parse_model("sqrt(a1/a2 - a3*sqrt(a4))").unwrap();
    let params: Vec<BigInt> = [40, 3, 2, 3].into_iter().map(BigInt::from).collect();
    let approx = Approximation::new(model, params, ConstantId::Pi).unwrap();
    c.bench_function("mu nested radicals 256 bits", |b| b.iter(|| mu(black_box(&approx), 256).unwrap()));
}

fn expand(c: &mut Criterion) {
    c.bench_function("cf_expand pi 100 terms 1024 bits", |b| {
        b.iter(|| cf_expand(&constant(ConstantId::Pi, 1024), black_box(100)).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let mut spec = SearchSpec::new(parse_model("sqrt(a1)+sqrt(a2)").unwrap(), ConstantId::Pi, vec![(1, 60), (1, 60)]);
    spec.workers = 1;
    c.bench_function("search sqrt+sqrt 60x60 mirrored", |b| b.iter(|| exhaustive_search(black_box(&spec)).unwrap()));
}

fn liouville(c: &mut Criterion) {
    c.bench_function("liouville series k <= 12", |b| b.iter(|| liouville_mu_series(black_box(12)).unwrap()));
}

criterion_group!(benches, measure, expand, search, liouville);
criterion_main!(benches);
