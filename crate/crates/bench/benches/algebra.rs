use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use persalg::barcode::{bc_apply, kunneth_homology, Bifunctor, Mode};
use persalg::complex::persistence;
use persalg::interval::{gr_ext1, gr_tensor, gr_tor1, sh_tensor, sheaf_hom, underline_hom};
use persalg_bench::{bars, grid_complex, interval_pairs};

fn closed_forms(c: &mut Criterion) {
    let pairs = interval_pairs();
    let mut group = c.benchmark_group("closed_forms");
    group.bench_function("gr_tensor", |b| {
        b.iter(|| pairs.iter().filter_map(|(i, j)| gr_tensor(black_box(i), j).ok()).count())
    });
    group.bench_function("sh_tensor", |b| {
        b.iter(|| pairs.iter().map(|(i, j)| sh_tensor(black_box(i), j)).collect::<Vec<_>>())
    });
    group.bench_function("underline_hom", |b| {
        b.iter(|| pairs.iter().filter_map(|(i, j)| underline_hom(black_box(i), j).ok()).count())
    });
    group.bench_function("sheaf_hom", |b| {
        b.iter(|| pairs.iter().filter_map(|(i, j)| sheaf_hom(black_box(i), j).ok()).count())
    });
    group.bench_function("gr_tor1", |b| {
        b.iter(|| pairs.iter().filter_map(|(i, j)| gr_tor1(black_box(i), j).ok()).count())
    });
    group.bench_function("gr_ext1", |b| {
        b.iter(|| pairs.iter().filter_map(|(i, j)| gr_ext1(black_box(i), j).ok()).count())
    });
    group.finish();
}

fn barcode_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("bc_apply");
    for n in [10, 100] {
        let (b1, b2) = (bars(n, 8), bars(n, 5));
        group.bench_with_input(BenchmarkId::new("gr_tensor", n), &n, |b, _| {
            b.iter(|| bc_apply(Bifunctor::GrTensor, black_box(&b1), &b2).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("underline_hom", n), &n, |b, _| {
            b.iter(|| bc_apply(Bifunctor::UnderlineHom, black_box(&b1), &b2).unwrap())
        });
    }
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("persistence");
    for side in [4, 8, 12] {
        let k = grid_complex(side);
        group.bench_with_input(BenchmarkId::new("grid", side), &k, |b, k| b.iter(|| persistence(black_box(k))));
    }
    let (k, l) = (persistence(&grid_complex(6)), persistence(&grid_complex(4)));
    group.bench_function("kunneth_prediction", |b| {
        b.iter(|| kunneth_homology(black_box(&k), &l, Mode::Graded).unwrap())
    });
    group.finish();
}

criterion_group!(benches, closed_forms, barcode_pipeline, reduction);
criterion_main!(benches);
