//! Degree-scaling benchmarks for the expensive paths: symmetric-function
//! basis expansion, truncated-ring evaluation, the exact solver behind
//! generator construction, kernel extraction, and the parser. Entry points
//! with global memoization (the s-polynomial tables and s-matrices) are
//! warmed up front so each iteration measures fresh work, not cache hits.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use cobord_core::{
    construct_section_generator, elementary_in_monomial, enumerate, kernel_basis, parse_class,
    s_matrix, ManifoldModel, Partition,
};

const DEGREES: [u32; 3] = [4, 6, 8];

/// Expanding every e_λ of one degree in the monomial basis — the
/// combinatorial core of the s-polynomial tables, uncached.
fn basis_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("elementary_in_monomial");
    for d in DEGREES {
        let lambdas = enumerate(d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &lambdas, |b, lambdas| {
            b.iter(|| {
                for lambda in lambdas {
                    black_box(elementary_in_monomial(lambda));
                }
            })
        });
    }
    group.finish();
}

/// Sweeping all s_ω over the worst model of each degree, (CP^1)^d: a fresh
/// evaluator per iteration, so the ring products are actually recomputed.
fn ring_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("s_number_sweep");
    for d in DEGREES {
        s_matrix(d).unwrap(); // warm the s-polynomial tables
        let model = ManifoldModel::from_partition(&Partition::ones(d)).unwrap();
        let omegas = enumerate(d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, _| {
            b.iter(|| {
                let ev = model.evaluator();
                for omega in &omegas {
                    black_box(ev.s_number(omega).unwrap());
                }
            })
        });
    }
    group.finish();
}

/// Solving S·v = e_(d) and clearing denominators, with the matrix already
/// cached: measures the fraction-free elimination itself.
fn generator_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct_section_generator");
    for d in DEGREES {
        s_matrix(d).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| black_box(construct_section_generator(d).unwrap()))
        });
    }
    group.finish();
}

/// Primitive integer kernel of the long-partition rows at r = 1.
fn kernel_extraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_basis");
    for d in DEGREES {
        s_matrix(d).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| black_box(kernel_basis(d, 1).unwrap()))
        });
    }
    group.finish();
}

/// Parsing the canonical display of the full kernel-plus-generator span:
/// a realistic many-term expression with fractions and powers.
fn expression_parsing(c: &mut Criterion) {
    let mut inputs = Vec::new();
    for d in DEGREES {
        let mut text = construct_section_generator(d).unwrap().class.to_string();
        for (k, class) in kernel_basis(d, 1).unwrap().iter().enumerate() {
            let scaled = class.scale(&num_rational::BigRational::new(
                1.into(),
                (k as i64 + 2).into(),
            ));
            text.push_str(" + ");
            text.push_str(&scaled.to_string());
        }
        inputs.push((d, text));
    }
    let mut group = c.benchmark_group("parse_class");
    for (d, text) in &inputs {
        group.bench_with_input(BenchmarkId::from_parameter(d), text, |b, text| {
            b.iter(|| black_box(parse_class(text).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    basis_expansion,
    ring_evaluation,
    generator_solve,
    kernel_extraction,
    expression_parsing
);
criterion_main!(benches);
