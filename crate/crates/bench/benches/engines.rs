use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use oslab_core::braid::{homfly, homfly_skein_tree, torus_braid};
use oslab_core::hilbseries::{local_top_series, refined_local_series};
use oslab_core::semimodule::{enumerate_modules, module_invariants};
use oslab_core::wallcross::{resummed_jump, small_b_table, wall_by_wall};
use oslab_core::{Backend, CompactCurveData, CurveGerm};

fn braids(c: &mut Criterion) {
    let mut g = c.benchmark_group("homfly");
    for (p, q) in [(2, 7), (3, 4), (3, 5), (4, 5)] {
        let b = torus_braid(p, q).unwrap();
        g.bench_with_input(BenchmarkId::new("hecke", format!("T({p},{q})")), &b, |bch, b| {
            bch.iter(|| homfly(black_box(b)).unwrap())
        });
    }
    let small = torus_braid(3, 2).unwrap();
    g.bench_function("skein-tree T(3,2)", |bch| bch.iter(|| homfly_skein_tree(black_box(&small)).unwrap()));
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("semimodules");
    for (p, q, n) in [(2, 7, 16), (3, 5, 14), (4, 5, 12)] {
        let germ = CurveGerm::new(p, q).unwrap();
        g.bench_function(format!("enumerate ({p},{q}) n<={n}"), |b| {
            b.iter(|| enumerate_modules(germ, n).map(|d| module_invariants(&d).1 as u64).sum::<u64>())
        });
        g.bench_function(format!("local series ({p},{q}) n<={n}"), |b| b.iter(|| local_top_series(germ, n)));
    }
    let cusp = CurveGerm::new(2, 3).unwrap();
    g.bench_function("refined pointcount (2,3) n<=3", |b| {
        b.iter(|| refined_local_series(cusp, 3, Backend::Pointcount).unwrap())
    });
    g.finish();
}

fn wallcrossing(c: &mut Criterion) {
    let germ = CurveGerm::new(2, 3).unwrap();
    let curve = CompactCurveData::cuspidal_cubic();
    let table = small_b_table(&curve, germ, 3, 12);
    let mut g = c.benchmark_group("wallcross");
    g.bench_function("resummed r<=3 n<=12", |b| b.iter(|| resummed_jump(black_box(&table), 3, 12).unwrap()));
    g.bench_function("wall by wall r<=3 n<=12", |b| b.iter(|| wall_by_wall(black_box(&table), 3, 12).unwrap()));
    g.finish();
}

criterion_group!(benches, braids, enumeration, wallcrossing);
criterion_main!(benches);
