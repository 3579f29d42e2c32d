use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gentle_core::decompose::{is_indecomposable, Options};
use gentle_core::diffmod::DifferentialModule;
use gentle_core::field::F5;
use gentle_core::objects::string_object;
use gentle_core::par::Exec;
use gentle_core::quiver::GentleAlgebra;
use gentle_core::strings::{enumerate_bands, enumerate_strings};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const A0: &str = include_str!("../../../algebras/a0.alg");

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn enumeration(c: &mut Criterion) {
    let alg = GentleAlgebra::parse(A0).unwrap();
    let mut group = c.benchmark_group("enumerate");
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new("strings", name), &exec, |b, &exec| {
            b.iter(|| enumerate_strings(&alg, 7, exec).len())
        });
        group.bench_with_input(BenchmarkId::new("bands", name), &exec, |b, &exec| {
            b.iter(|| enumerate_bands(&alg, 6, exec).len())
        });
    }
    group.finish();
}

fn indecomposability(c: &mut Criterion) {
    let alg = Arc::new(GentleAlgebra::parse(A0).unwrap());
    let strings = enumerate_strings(&alg, 4, Exec::Sequential);
    let mut group = c.benchmark_group("indecomposable");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new("strings", name), &exec, |b, &exec| {
            b.iter(|| {
                exec.map(&strings, |s| {
                    let m: DifferentialModule<F5> = string_object(&alg, s);
                    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
                    is_indecomposable(&m, &mut rng, &Options::default()).unwrap()
                })
                .into_iter()
                .filter(|&x| x)
                .count()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, indecomposability);
criterion_main!(benches);
