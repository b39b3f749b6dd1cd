use criterion::{black_box, criterion_group, criterion_main, Criterion};
use singwave_bench::{bump_data, phi};
use singwave_core::{evolve_grid, evolve_point, fd_reference, recover_n2, recover_n4, Grid2D, MinkowskiPoint, QuadratureSpec, RayField};

fn bench_cauchy(c: &mut Criterion) {
    let d = bump_data();
    let q = QuadratureSpec::default();
    let g = Grid2D::parse("-1,1,41:0,0.5,21").unwrap();
    c.bench_function("evolve_point", |b| b.iter(|| evolve_point(&d, black_box(0.3), black_box(0.4), &q).unwrap()));
    c.bench_function("evolve_grid_41x21", |b| b.iter(|| evolve_grid(&d, black_box(&g), &q).unwrap()));
    c.bench_function("fd_reference_41x21", |b| b.iter(|| fd_reference(&d, black_box(&g), 0.5).unwrap()));
}

fn bench_inverse(c: &mut Criterion) {
    let q = QuadratureSpec::default();
    let f2 = RayField::exact(phi(2, 3));
    let x2 = MinkowskiPoint::new(vec![0.3, -0.6]);
    c.bench_function("recover_n2", |b| b.iter(|| recover_n2(&f2, black_box(&x2), &q).unwrap()));
    let f4 = RayField::exact(phi(4, 2));
    let x4 = MinkowskiPoint::new(vec![0.2, 0.4, -0.3, 0.5]);
    c.bench_function("recover_n4", |b| b.iter(|| recover_n4(&f4, black_box(&x4), &q).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_cauchy, bench_inverse
}
criterion_main!(benches);
