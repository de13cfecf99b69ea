use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dicrit_core::idealcalc::{closure_colength, is_reduction};
use dicrit_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(k: &FieldTower, t: &[((u32, u32), i64)]) -> BiPoly {
    BiPoly::from_i64s(k, t)
}

fn trees(c: &mut Criterion) {
    let k = FieldTower::rationals();
    let l = Limits::default();
    let chain = LocalIdeal::new(vec![p(&k, &[((3, 0), 1)]), p(&k, &[((2, 1), 1)]), p(&k, &[((0, 7), 1)])]).unwrap();
    c.bench_function("base_point_tree/three_node_chain", |b| b.iter(|| base_point_tree(black_box(&chain), &l).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ideals: Vec<_> = (0..16).map(|_| sample::ideal(&k, &mut rng, 2, 6)).collect();
    c.bench_function("dicritical_set/random_degree_6_over_q", |b| {
        b.iter(|| ideals.iter().map(|j| dicritical_set(j, &l).unwrap().len()).sum::<usize>())
    });
    let f5 = FieldTower::prime(5).unwrap();
    let ideals: Vec<_> = (0..16).map(|_| sample::ideal(&f5, &mut rng, 2, 6)).collect();
    c.bench_function("dicritical_set/random_degree_6_over_f5", |b| {
        b.iter(|| ideals.iter().map(|j| dicritical_set(j, &l).unwrap().len()).sum::<usize>())
    });
}

fn closures(c: &mut Criterion) {
    let k = FieldTower::rationals();
    let l = Limits::default();
    let j1 = LocalIdeal::new(vec![p(&k, &[((0, 4), 1), ((7, 0), -1)]), p(&k, &[((8, 0), 1)])]).unwrap();
    c.bench_function("closure_colength/quartic_point", |b| b.iter(|| closure_colength(black_box(&j1), &l).unwrap()));
    let fam = abhyankar_family(4, &k, &l).unwrap();
    let j = LocalIdeal::new(vec![fam.f.clone(), fam.g.clone()]).unwrap();
    c.bench_function("is_reduction/abhyankar_m4", |b| b.iter(|| is_reduction(black_box(&j), &fam.ideal, &l).unwrap()));
}

fn infinity(c: &mut Criterion) {
    let k = FieldTower::rationals();
    let l = Limits::default();
    let f = p(&k, &[((4, 4), 1), ((1, 0), -1)]);
    c.bench_function("dicriticals_at_infinity/x4y4_minus_x", |b| b.iter(|| dicriticals_at_infinity(black_box(&f), &l).unwrap()));
}

criterion_group!(benches, trees, closures, infinity);
criterion_main!(benches);
