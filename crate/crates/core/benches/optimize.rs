//! Criterion benches over the hot data-parallel kernels. The crate's
//! `parallel` feature (default on) routes these through rayon; run
//!
//!   cargo bench -p phage-core
//!   cargo bench -p phage-core --no-default-features
//!
//! to compare the parallel and sequential paths; bench ids carry the mode.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use phage_core::stomp::{run_strategy, StompOptions};
use phage_core::{
    gen_nest, parse_qc, simulate_cldcl_postselected, simulate_unitary, to_cldcl, verify_identity,
    ParitySet,
};

const MODE: &str = if cfg!(feature = "parallel") {
    "parallel"
} else {
    "sequential"
};

fn bench_file(name: &str) -> String {
    let path = format!("{}/../../benchmarks/{}", env!("CARGO_MANIFEST_DIR"), name);
    std::fs::read_to_string(path).expect("benchmark file")
}

fn bench_verify_identity(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_identity");
    for n in [12u32, 16, 18] {
        let nest = gen_nest(&ParitySet::from_indices(n, 0..n)).unwrap();
        group.bench_with_input(BenchmarkId::new(MODE, n), &nest, |b, nest| {
            b.iter(|| verify_identity(nest).unwrap())
        });
    }
    group.finish();
}

fn bench_simulation(c: &mut Criterion) {
    let circuit = parse_qc(&bench_file("vbe_adder_3.qc")).unwrap();
    let (form, _) = to_cldcl(&circuit).unwrap();
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new(MODE, "vbe_unitary"), |b| {
        b.iter(|| simulate_unitary(&circuit, 14).unwrap())
    });
    group.bench_function(BenchmarkId::new(MODE, "vbe_postselected"), |b| {
        b.iter(|| simulate_cldcl_postselected(&form, 14).unwrap())
    });
    group.finish();
}

fn bench_stomp(c: &mut Criterion) {
    let mut group = c.benchmark_group("stomp_strategy");
    group.sample_size(10);
    for name in ["gf2^4_mult.qc", "gf2^6_mult.qc", "nc_tof_10.qc"] {
        let circuit = parse_qc(&bench_file(name)).unwrap();
        let (form, _) = to_cldcl(&circuit).unwrap();
        group.bench_with_input(BenchmarkId::new(MODE, name), &form.body, |b, body| {
            b.iter(|| run_strategy(body, &StompOptions::default()))
        });
    }
    group.finish();
}

fn bench_pipeline(c: &mut Criterion) {
    let text = bench_file("gf2^4_mult.qc");
    let circuit = parse_qc(&text).unwrap();
    c.bench_function(&format!("pipeline/{}/gf2^4_mult", MODE), |b| {
        b.iter(|| {
            let (form, _) = to_cldcl(&circuit).unwrap();
            run_strategy(&form.body, &StompOptions::default())
        })
    });
}

criterion_group!(
    benches,
    bench_verify_identity,
    bench_simulation,
    bench_stomp,
    bench_pipeline
);
criterion_main!(benches);
