use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use imexp_bench::{dense, Complex64, Fixture};
use imexp_core::hyperseries::{prq, SeriesControl};
use imexp_core::incexp::{e_integral, e_lower, gen_integral, gen_pE_q, Range};
use imexp_core::matcore::schur_decompose;
use imexp_core::matspecial::gamma_matrix;
use imexp_core::quad::QuadratureControl;
use imexp_core::verify::{find, run_suite, VerifyConfig};
use imexp_core::matrix_exp;

const CTRL: SeriesControl = SeriesControl { tol: 1e-14, max_terms: 5000, stall_window: 5 };

fn matrix_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix");
    for n in [2, 3, 8, 16] {
        let m = dense(n, 11).scale_re(0.5);
        group.bench_with_input(BenchmarkId::new("schur", n), &m, |b, m| b.iter(|| schur_decompose(black_box(m)).unwrap()));
        group.bench_with_input(BenchmarkId::new("expm", n), &m, |b, m| b.iter(|| matrix_exp(black_box(m)).unwrap()));
    }
    for r in 1..=3 {
        let fx = Fixture::new(r, 5);
        group.bench_with_input(BenchmarkId::new("gamma", r), &fx.a, |b, a| b.iter(|| gamma_matrix(black_box(a)).unwrap()));
    }
    group.finish();
}

fn series_vs_quadrature(c: &mut Criterion) {
    let (x, t, v) = (1.7, Complex64::new(0.6, -0.2), Complex64::new(0.5, 0.3));
    let qctrl = QuadratureControl::default();
    let mut group = c.benchmark_group("engines");
    group.sample_size(20);
    for r in 1..=3 {
        let fx = Fixture::new(r, 9);
        let conf = fx.confluent();
        group.bench_with_input(BenchmarkId::new("e_lower/series", r), &fx, |b, fx| {
            b.iter(|| e_lower(x, black_box(t), &fx.a, &CTRL).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("e_lower/quadrature", r), &fx, |b, fx| {
            b.iter(|| e_integral(Range::Lower, x, black_box(t), &fx.a, &qctrl).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("gen_upper/series", r), &conf, |b, p| {
            b.iter(|| gen_pE_q(x, black_box(v), p, &CTRL).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("gen_upper/quadrature", r), &conf, |b, p| {
            b.iter(|| gen_integral(Range::Upper, x, black_box(v), p, &qctrl).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("prq", r), &fx.params, |b, p| {
            b.iter(|| prq(&p.e, &p.f, p.a.as_ref().unwrap(), p.b.as_ref().unwrap(), black_box(v), &CTRL).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let cfg = VerifyConfig { seed: 42, dims: vec![1, 2, 3], trials: 2 };
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for name in ["decompositions", "addition_multiplication"] {
        let suite = find(name).unwrap();
        group.bench_function(name, |b| b.iter(|| run_suite(suite, &cfg)));
    }
    group.finish();
}

criterion_group!(benches, matrix_kernels, series_vs_quadrature, suites);
criterion_main!(benches);
