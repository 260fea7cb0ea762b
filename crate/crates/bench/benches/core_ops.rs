use criterion::{black_box, criterion_group, criterion_main, Criterion};
use lattice_curve::counting::{count_on, default_eps_on};
use lattice_curve::curve::Curve;
use lattice_curve::geom::Vec2;
use lattice_curve::lattice::{reduce_basis, Lattice};

fn bench_stats(c: &mut Criterion) {
    let arc = Curve::circle_arc(Vec2::ZERO, 7.0, 0.3, 2.1).unwrap();
    c.bench_function("curve_stats_circle_arc", |b| {
        b.iter(|| black_box(&arc).stats(1e-10).unwrap())
    });
    let e = Curve::full_ellipse(Vec2::ZERO, lattice_curve::geom::Mat2::diag(0.25, 1.0)).unwrap();
    c.bench_function("curve_stats_full_ellipse", |b| {
        b.iter(|| black_box(&e).stats(1e-10).unwrap())
    });
}

fn bench_reduce(c: &mut Criterion) {
    c.bench_function("reduce_basis_skew", |b| {
        b.iter(|| {
            reduce_basis(
                black_box(Vec2::new(1.0, 0.0)),
                black_box(Vec2::new(987654.0, 1.0)),
            )
            .unwrap()
        })
    });
}

fn bench_count(c: &mut Criterion) {
    let circle = Curve::full_circle(Vec2::ZERO, 25.0).unwrap();
    let lat = Lattice::standard();
    c.bench_function("count_on_circle_r25", |b| {
        b.iter(|| count_on(black_box(&circle), &lat, default_eps_on(&circle)).unwrap())
    });
}

criterion_group!(benches, bench_stats, bench_reduce, bench_count);
criterion_main!(benches);
