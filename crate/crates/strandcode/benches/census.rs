//! Census enumeration throughput: rayon-sharded scan against the sequential
//! fallback, plus the end-to-end codec pipeline for scale.
//!
//! Build with the default `parallel` feature to compare both scan paths;
//! without it only the sequential path exists.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use strandcode::analysis::{census_seq, DEFAULT_CENSUS_BUDGET};
use strandcode::constructions::{decode_b, derive_params_b, encode_b};
use strandcode::core::{RfVariant, Strand};
use strandcode::spectrum::profile;

fn census_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for &(q, n, k, ell) in &[(2u32, 7usize, 2usize, 3usize), (2, 8, 2, 4), (3, 5, 2, 3)] {
        let label = format!("q{q}_n{n}_k{k}_ell{ell}");
        group.bench_with_input(BenchmarkId::new("sequential", &label), &(), |b, _| {
            b.iter(|| census_seq(q, n, k, ell, DEFAULT_CENSUS_BUDGET).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", &label), &(), |b, _| {
            b.iter(|| {
                strandcode::analysis::census_par(q, n, k, ell, DEFAULT_CENSUS_BUDGET).unwrap()
            })
        });
    }
    group.finish();
}

fn pipeline_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    let params = derive_params_b(2, 60, 3, RfVariant::Basic).unwrap();
    let x = Strand::new((0..params.m).map(|i| (i % 2) as u8).collect());
    group.bench_function("encode_b", |b| b.iter(|| encode_b(&x, &params).unwrap()));
    let cw = encode_b(&x, &params).unwrap();
    let p = profile(&cw.strands, params.ell + 1).unwrap();
    group.bench_function("decode_b", |b| b.iter(|| decode_b(&p, &params).unwrap()));
    group.finish();
}

criterion_group!(benches, census_benches, pipeline_benches);
criterion_main!(benches);
