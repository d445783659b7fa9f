use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use epdescent_bench::{sample_primes, KINDS};
use epdescent_core::descent::rank_sha_ledger;
use epdescent_core::lfunction::{count_points, dirichlet_coeffs, BaseField};
use epdescent_core::reduction::reduction_table;
use epdescent_core::torsion::torsion_subgroup;
use epdescent_core::FieldContext;

fn descent(c: &mut Criterion) {
    let mut g = c.benchmark_group("descent");
    for kind in KINDS {
        let ctx = FieldContext::new(kind).unwrap();
        let primes = sample_primes(&ctx, 500, 8);
        g.bench_with_input(BenchmarkId::from_parameter(ctx.tag()), &primes, |b, ps| {
            b.iter(|| {
                for &p in ps {
                    black_box(rank_sha_ledger(p, &ctx).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn tate(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduction");
    for kind in KINDS {
        let ctx = FieldContext::new(kind).unwrap();
        let primes = sample_primes(&ctx, 500, 8);
        g.bench_with_input(BenchmarkId::from_parameter(ctx.tag()), &primes, |b, ps| {
            b.iter(|| {
                for &p in ps {
                    black_box(reduction_table(p, &ctx).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn torsion(c: &mut Criterion) {
    let ctx = FieldContext::new(KINDS[0]).unwrap();
    let primes = sample_primes(&ctx, 500, 8);
    c.bench_function("torsion/gauss", |b| {
        b.iter(|| {
            for &p in &primes {
                black_box(torsion_subgroup(p, &ctx).unwrap());
            }
        })
    });
}

fn point_counts(c: &mut Criterion) {
    let mut g = c.benchmark_group("lseries");
    g.bench_function("count_points l=997 k=2", |b| b.iter(|| black_box(count_points(black_box(13), 997, 2))));
    for bound in [1000u64, 5000] {
        g.bench_with_input(BenchmarkId::new("coeffs_over_Qi", bound), &bound, |b, &n| {
            b.iter(|| black_box(dirichlet_coeffs(13, BaseField::K, n)))
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = descent, tate, torsion, point_counts
}
criterion_main!(benches);
