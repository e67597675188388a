use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use flagorbits::roots::hermitian_central_element;
use flagorbits::sp2::{closure_diagram, saturation_check, search_claim, verify_duality_table, Claim, SearchOptions, DEFAULT_TOL};
use flagorbits::weyl::{whole_group, DEFAULT_ENUMERATION_CAP};
use flagorbits::{
    boundary_orbit_s1, build_root_system, defining_element, enumerate_parabolic, separation_inequality, Family,
    OrbitDescriptor, RealForm, Root, WeylElement,
};

fn exact(c: &mut Criterion) {
    let rs = build_root_system(Family::C, 4, hermitian_central_element(Family::C, 4)).unwrap();
    c.bench_function("weyl group C4", |b| b.iter(|| whole_group(black_box(&rs)).unwrap().len()));

    let rs = build_root_system(Family::C, 3, hermitian_central_element(Family::C, 3)).unwrap();
    let theta = vec![Root::parse("e1-e2", 3).unwrap()];
    let z = defining_element(&rs, &theta).unwrap();
    let wt = enumerate_parabolic(&rs, &theta, DEFAULT_ENUMERATION_CAP).unwrap();
    let gammas = ["2e1", "e2+e3"].iter().map(|s| Root::parse(s, 3).unwrap()).collect();
    let d = OrbitDescriptor::new(&rs, gammas, WeylElement::identity(3), theta).unwrap();
    c.bench_function("separation certificate C3", |b| {
        b.iter(|| {
            let dt = boundary_orbit_s1(&rs, black_box(&d), RealForm::Sp).unwrap();
            separation_inequality(&rs, &d, &dt, &z, &wt).unwrap().gap
        })
    });
}

fn numeric(c: &mut Criterion) {
    c.bench_function("duality table", |b| b.iter(|| verify_duality_table(black_box(DEFAULT_TOL)).matched));
    let edges = closure_diagram();
    c.bench_function("saturation 100 samples", |b| {
        b.iter(|| saturation_check(&edges, &edges[0], 100, black_box(1), DEFAULT_TOL).unwrap().outside)
    });
    let claim: Claim = "3.3".parse().unwrap();
    let opts = SearchOptions::default();
    c.bench_function("witness search 3.3", |b| {
        b.iter(|| search_claim(&claim, black_box(0.3), &opts).unwrap().witness.violation)
    });
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);
