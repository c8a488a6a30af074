use bcktop::{AbelianGroup, BaigTopology, BckModule, Dss, Submodule};
use criterion::{criterion_group, criterion_main, Criterion};

fn z8() -> BckModule {
    BckModule::scalar_over_c2(AbelianGroup::cyclic(8))
}

fn bench_build_topology(c: &mut Criterion) {
    let m = z8();
    let chain = vec![
        Submodule::full(&m),
        Submodule::new(&m, [0, 2, 4, 6].into_iter().collect()).unwrap(),
        Submodule::zero(&m),
    ];
    let dss = Dss::new(&m, chain).unwrap();
    c.bench_function("build_baig_z8_discrete", |b| {
        b.iter(|| BaigTopology::build(&m, &dss).unwrap())
    });
}

fn bench_submodules(c: &mut Criterion) {
    let m = BckModule::scalar_over_c2(AbelianGroup::product(
        &AbelianGroup::cyclic(4),
        &AbelianGroup::cyclic(2),
    ));
    c.bench_function("submodules_z4xz2", |b| b.iter(|| m.submodules()));
}

fn bench_homs(c: &mut Criterion) {
    let m = z8();
    c.bench_function("enumerate_homs_z8_z8", |b| {
        b.iter(|| bcktop::enumerate_homs(&m, &m).unwrap())
    });
}

criterion_group!(benches, bench_build_topology, bench_submodules, bench_homs);
criterion_main!(benches);
