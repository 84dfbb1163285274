//! Sequential vs data-parallel execution of the batch workloads.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use multmono::arith::{is_mult_monotone, Direction, TabulatedFunction};
use multmono::means::alpha_limit_estimate;
use multmono::functions::MultiplesIndicator;
use multmono::toeplitz::{det_sequences, parse_kernel, product_formula_sequence, Sigma};
use multmono::Exec;
use num_rational::BigRational;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn monotone_scan(c: &mut Criterion) {
    let n = 200_000;
    let f = TabulatedFunction::float(multmono::sieve::omega_table(n)[1..].iter().map(|&w| w as f64).collect(), 53, "omega");
    let mut g = c.benchmark_group("mult_monotone_scan");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, n), &f, |b, f| {
            b.iter(|| black_box(is_mult_monotone(f, Direction::Increasing, exec)))
        });
    }
    g.finish();
}

fn kernel_batch(c: &mut Criterion) {
    let kernels: Vec<_> = ["hilberdink:sigma=cm,s=0.7", "hilberdink:sigma=recip", "hilberdink:sigma=cm,s=1.5", "additive:coeffs=2,1/2"]
        .iter()
        .map(|s| parse_kernel(s).unwrap())
        .collect();
    let mut g = c.benchmark_group("cholesky_kernel_batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "4x128@128bits"), |b| {
            b.iter(|| black_box(det_sequences(&kernels, 128, 128, exec)))
        });
    }
    g.finish();
}

fn product_formula(c: &mut Criterion) {
    let sigma = Sigma::Power(BigRational::new(7.into(), 10.into()));
    let mut g = c.benchmark_group("product_formula_primes");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "N=512@128bits"), |b| {
            b.iter(|| black_box(product_formula_sequence(&sigma, 512, 128, exec).unwrap()))
        });
    }
    g.finish();
}

fn alpha_grid(c: &mut Criterion) {
    let f = MultiplesIndicator(vec![2, 3]);
    let ys = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0];
    let mut g = c.benchmark_group("alpha_y_grid");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "M(2,3)"), |b| {
            b.iter(|| black_box(alpha_limit_estimate(&f, &ys, &[1e5], exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, monotone_scan, kernel_batch, product_formula, alpha_grid);
criterion_main!(benches);
