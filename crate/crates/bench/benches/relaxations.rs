use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use trirelax::experiment::direction_widths;
use trirelax::{
    assemble_relaxation, hull_formulation, membership, omega_permutation, vol_double_mccormick, vol_hull, Bounds3,
    FeasibleRegion, GroupingChoice, Relaxation, Scenario,
};
use trirelax_bench::fixture;

fn widths(c: &mut Criterion) {
    let mut group = c.benchmark_group("width");
    group.sample_size(20);
    let (h, bounds, dirs) = fixture(Scenario::Dense, 10);
    for rel in Relaxation::ALL {
        let region = assemble_relaxation(&h, &bounds, rel).unwrap();
        let feasible = FeasibleRegion::new(&region.lp).unwrap();
        let objective = region.objective(&dirs[0]);
        group.bench_with_input(BenchmarkId::new("dense", rel.label()), &objective, |b, obj| {
            b.iter(|| feasible.width(black_box(obj)).unwrap())
        });
    }
    let region = assemble_relaxation(&h, &bounds, Relaxation::Hull).unwrap();
    group.bench_function("dense/h/10 directions", |b| b.iter(|| direction_widths(&region, black_box(&dirs)).unwrap()));
    group.finish();
}

fn phase_one(c: &mut Criterion) {
    let (h, bounds, _) = fixture(Scenario::Sparse, 1);
    for rel in [Relaxation::Hull, Relaxation::DoubleMcCormick(GroupingChoice::THREE)] {
        let region = assemble_relaxation(&h, &bounds, rel).unwrap();
        c.bench_function(&format!("phase one/sparse/{}", rel.label()), |b| {
            b.iter(|| FeasibleRegion::new(black_box(&region.lp)).unwrap())
        });
    }
}

fn volumes(c: &mut Criterion) {
    let labeled = omega_permutation(&Bounds3::new([2.0, 0.0, 5.0], [7.0, 1.0, 10.0]).unwrap()).labeled;
    c.bench_function("volume/hull", |b| b.iter(|| vol_hull(black_box(&labeled)).unwrap()));
    c.bench_function("volume/double-mccormick", |b| {
        b.iter(|| GroupingChoice::ALL.map(|g| vol_double_mccormick(black_box(&labeled), g).unwrap()))
    });
    c.bench_function("omega labeling", |b| {
        let raw = Bounds3::new([2.0, 0.0, 5.0], [7.0, 1.0, 10.0]).unwrap();
        b.iter(|| omega_permutation(black_box(&raw)))
    });
}

fn hull_membership(c: &mut Criterion) {
    let bounds = Bounds3::new([1.0, 1.0, 1.0], [4.0, 3.0, 2.0]).unwrap();
    let system = hull_formulation(&bounds);
    let inside = [6.0, 2.5, 2.0, 1.5];
    let outside = [2.0, 4.0, 3.0, 2.0];
    c.bench_function("membership/hull/inside", |b| b.iter(|| membership(black_box(&inside), &system, 0.0).unwrap()));
    c.bench_function("membership/hull/outside", |b| b.iter(|| membership(black_box(&outside), &system, 0.0).unwrap()));
}

criterion_group!(benches, widths, phase_one, volumes, hull_membership);
criterion_main!(benches);
