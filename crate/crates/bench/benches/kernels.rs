use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fthresh_bench::{ideal, poly, ring};
use fthresh_core::{
    eth_root, nu, nu_chain, test_ideal, FrobeniusLevel, Ideal, PRational, StabilizeOpts,
};

fn bench_poly_pow(c: &mut Criterion) {
    let r = ring(7, &["x", "y"]);
    let f = poly(&r, "x^2+y^3");
    let mut group = c.benchmark_group("poly_pow");
    group.bench_function("binary_n343", |b| b.iter(|| black_box(&f).pow(343)));
    group.bench_function("frobenius_n343", |b| {
        b.iter(|| black_box(&f).pow_frobenius(343, 1 << 24).unwrap())
    });
    group.bench_function("frobenius_n16807", |b| {
        b.iter(|| black_box(&f).pow_frobenius(16807, 1 << 24).unwrap())
    });
    group.finish();
}

fn bench_groebner(c: &mut Criterion) {
    let r = ring(7, &["x", "y", "z"]);
    c.bench_function("groebner_katsura_like", |b| {
        b.iter(|| {
            let i = ideal(&r, &["x^2+y^3+z", "x*y+z^2", "z^3+x+y^2"]);
            black_box(i.groebner_basis().len())
        })
    });
}

fn bench_nu(c: &mut Criterion) {
    let r = ring(7, &["x", "y"]);
    let f = poly(&r, "x^2+y^3");
    let m = Ideal::maximal(&r);
    let mut group = c.benchmark_group("nu");
    group.bench_function("search_e2", |b| {
        let level = FrobeniusLevel::new(r.field(), 2).unwrap();
        b.iter(|| nu(black_box(&f), &m, level).unwrap())
    });
    group.bench_function("chain_to_e5", |b| {
        b.iter(|| nu_chain(black_box(&f), &m, 5).unwrap())
    });
    group.finish();
}

fn bench_roots(c: &mut Criterion) {
    let r = ring(7, &["x", "y"]);
    let f = poly(&r, "x^2+y^3");
    let level = FrobeniusLevel::new(r.field(), 3).unwrap();
    let power = f.pow_frobenius(200, 1 << 24).unwrap();
    let i = Ideal::new(&r, [power]);
    c.bench_function("eth_root_f200_e3", |b| {
        b.iter(|| eth_root(black_box(&i), level))
    });
}

fn bench_test_ideal(c: &mut Criterion) {
    let r = ring(7, &["x", "y"]);
    let f = poly(&r, "x^2+y^3");
    let t = PRational::new(6, 7);
    let opts = StabilizeOpts::default();
    c.bench_function("test_ideal_cusp_6_7", |b| {
        b.iter(|| test_ideal(black_box(&f), &t, opts).unwrap())
    });
}

criterion_group!(
    benches,
    bench_poly_pow,
    bench_groebner,
    bench_nu,
    bench_roots,
    bench_test_ideal
);
criterion_main!(benches);
