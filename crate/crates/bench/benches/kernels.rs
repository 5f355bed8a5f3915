use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use qreal::analytic::eval_in_d;
use qreal::cf_core::{parse_rational, q_number};
use qreal::jump::{formal_total_jump, numeric_total_jump};
use qreal::q_series::{q_real_series, reciprocal_series};
use qreal::qcomplex::{q_complex_value, QComplexParams};
use qreal::special::{gauss_2f1, theta_lambda, transcendental_qvalue};
use qreal::CFStream;

fn exact(c: &mut Criterion) {
    let x = parse_rational("355/113").unwrap();
    c.bench_function("q_number 355/113", |b| b.iter(|| q_number(black_box(&x)).unwrap()));
    let phi = CFStream::golden();
    c.bench_function("q_real_series phi order 200", |b| b.iter(|| q_real_series(&phi, black_box(200)).unwrap()));
    c.bench_function("reciprocal_series phi order 200", |b| b.iter(|| reciprocal_series(&phi, black_box(200)).unwrap()));
    c.bench_function("formal_total_jump K=10", |b| b.iter(|| formal_total_jump(black_box(10)).unwrap()));
}

fn numeric(c: &mut Criterion) {
    let phi = CFStream::golden();
    let q = Complex64::new(0.1, 0.05);
    c.bench_function("eval_in_d phi", |b| b.iter(|| eval_in_d(&phi, black_box(q), 1e-12).unwrap()));
    c.bench_function("numeric_total_jump q=0.2", |b| {
        b.iter(|| numeric_total_jump(black_box(Complex64::new(0.2, 0.0)), 1e-6, 2_000_000_000).unwrap())
    });
}

fn special(c: &mut Criterion) {
    let (a, bb, cc) = (Complex64::new(0.5, -0.1), Complex64::new(0.5, 0.1), Complex64::new(1.0, 0.2));
    c.bench_function("2F1 series z=0.4", |b| b.iter(|| gauss_2f1(a, bb, cc, black_box(Complex64::new(0.4, 0.0)), 1e-14).unwrap()));
    c.bench_function("2F1 continuation z=0.95", |b| {
        b.iter(|| gauss_2f1(a, bb, cc, black_box(Complex64::new(0.95, 0.1)), 1e-12).unwrap())
    });
    c.bench_function("theta_lambda tau=i", |b| b.iter(|| theta_lambda(black_box(Complex64::new(0.0, 1.0)), 1e-15).unwrap()));
    c.bench_function("transcendental_qvalue s=2 r=1", |b| {
        b.iter(|| transcendental_qvalue(2, 1, black_box(Complex64::new(0.05, 0.0)), 1e-13).unwrap())
    });
    let p = QComplexParams::new(0.7).unwrap();
    c.bench_function("q_complex_value tau=0.2+1.3i", |b| {
        b.iter(|| q_complex_value(black_box(Complex64::new(0.2, 1.3)), &p, 1e-12).unwrap())
    });
}

criterion_group!(benches, exact, numeric, special);
criterion_main!(benches);
