use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use uqcenter::affine_orbits::{orbit_table, Action, DEFAULT_BUDGET};
use uqcenter::{CharRing, CyclotomicField, RootDatum, RootType, SmallQuantumGroup};

fn cyclotomic(c: &mut Criterion) {
    let f = CyclotomicField::new(13).unwrap();
    let a = &f.q_pow(3) + &f.from_int(2);
    let b = &f.q_pow(7) - &f.q();
    c.bench_function("cyclo_mul_l13", |bench| bench.iter(|| black_box(&a * &b)));
    c.bench_function("cyclo_inv_l13", |bench| bench.iter(|| black_box(a.inv().unwrap())));
}

fn orbits(c: &mut Criterion) {
    let d = RootDatum::build(RootType::A, 2).unwrap();
    c.bench_function("orbit_table_a2_l13", |bench| {
        bench.iter(|| black_box(orbit_table(&d, 13, Action::BulletOnP, DEFAULT_BUDGET).unwrap()))
    });
}

fn charring(c: &mut Criterion) {
    let r = CharRing::new(7).unwrap();
    c.bench_function("charring_steinberg_l7", |bench| bench.iter(|| black_box(r.steinberg_checks().unwrap())));
}

fn sl2(c: &mut Criterion) {
    let mut group = c.benchmark_group("sl2_l3");
    group.sample_size(10);
    group.bench_function("center_basis", |bench| {
        bench.iter(|| black_box(SmallQuantumGroup::new(3).unwrap().center_basis()))
    });
    group.bench_function("verify_all", |bench| {
        bench.iter(|| black_box(SmallQuantumGroup::new(3).unwrap().verify_all().unwrap()))
    });
    group.finish();
}

criterion_group!(benches, cyclotomic, orbits, charring, sl2);
criterion_main!(benches);
