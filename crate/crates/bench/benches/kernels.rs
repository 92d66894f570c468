//! Benchmarks for the hot kernels: twisted multiplication, Smith normal
//! form, psi_r against its brute-force oracle, class numbers and cyclic
//! isogeny enumeration.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use drinfeld_forge::drinfeld::DrinfeldModule;
use drinfeld_forge::finmod::{count_cyclic_submodules, psi_r, smith_normal_form, MatA};
use drinfeld_forge::isogeny::cyclic_isogenies;
use drinfeld_forge::text::{parse_matrix, parse_poly, parse_skew};
use drinfeld_forge::{ExtField, Field, Fq, IdealA, ImaginaryQuadExt, KField, PolyA, SkewPoly};

fn skew_mul(c: &mut Criterion) {
    let fq = Fq::new(3).unwrap();
    let k = KField::with_var(&fq, "T");
    let gamma = k.gen();
    let mk = |s: &str| -> SkewPoly<KField> { parse_skew(&k, &gamma, s, "T").unwrap() };
    let a = mk("(T^3+1)*tau^4 + T*tau^2 + tau + T^2");
    let b = mk("tau^5 + (T^2+T)*tau^3 + 2*tau + 1");
    c.bench_function("skew_mul_deg4_deg5", |bch| {
        bch.iter(|| black_box(&a).mul(black_box(&b)).unwrap())
    });
}

fn snf(c: &mut Criterion) {
    let fq = Fq::new(3).unwrap();
    let m: MatA = parse_matrix_a(&fq, "T^2+1, T, 1; T, T^3, T+2; 0, T+1, T^2");
    c.bench_function("smith_normal_form_3x3", |bch| {
        bch.iter(|| smith_normal_form(black_box(&m)))
    });
}

fn parse_matrix_a(fq: &Fq, s: &str) -> MatA {
    let mk = parse_matrix(fq, s, "T").unwrap();
    let entries = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| {
            let e = mk.at(i, j);
            assert!(e.den.is_one());
            e.num.clone()
        })
        .collect();
    MatA::new(fq, 3, 3, entries).unwrap()
}

fn psi(c: &mut Criterion) {
    let fq = Fq::new(3).unwrap();
    let n = IdealA::new(&parse_poly(&fq, "T^3 + 2*T + 1").unwrap());
    c.bench_function("psi_3_closed_form", |bch| {
        bch.iter(|| psi_r(black_box(&n), 3).unwrap())
    });
    c.bench_function("psi_3_brute_oracle", |bch| {
        bch.iter(|| count_cyclic_submodules(black_box(&n), 3).unwrap())
    });
}

fn class_number(c: &mut Criterion) {
    let fq = Fq::new(3).unwrap();
    let ext = ImaginaryQuadExt::new(&fq, &parse_poly(&fq, "T^5 + T^2 + 1").unwrap()).unwrap();
    c.bench_function("class_number_genus2", |bch| {
        bch.iter(|| black_box(&ext).class_number().unwrap())
    });
}

fn isogenies(c: &mut Criterion) {
    let fq = Fq::new(3).unwrap();
    let ch = parse_poly(&fq, "T^2+1").unwrap();
    let l = ExtField::new(fq.clone(), ch.c.clone(), "t").unwrap();
    let t = l.gen();
    let phi = DrinfeldModule::over_finite(&l, &t, vec![l.one(), l.one()]).unwrap();
    let p = IdealA::new(&PolyA::var(&fq));
    c.bench_function("cyclic_isogenies_rank2_degT", |bch| {
        bch.iter(|| cyclic_isogenies(black_box(&phi), black_box(&p)).unwrap())
    });
}

criterion_group!(benches, skew_mul, snf, psi, class_number, isogenies);
criterion_main!(benches);
