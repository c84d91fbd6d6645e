use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kan_vect::{check_excisive, face_transport_check, Excision, Exec, FunctorSpec, SamplerConfig};
use lattice_core::{ExcisableStructure, FinLattice};

fn transport(c: &mut Criterion) {
    let l = FinLattice::powerset(3).unwrap();
    let sigma = ExcisableStructure::singletons(&l);
    let cfg = SamplerConfig { samples: 16, max_dim: 3, seed: 1, ..Default::default() };
    let mut group = c.benchmark_group("face_transport");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| face_transport_check(&l, &sigma, 0b011, &FunctorSpec::Identity, &cfg, exec).unwrap())
        });
    }
    group.finish();
}

fn excisive(c: &mut Criterion) {
    let l = FinLattice::powerset(3).unwrap();
    let ex = Excision::from_structure(&l, &ExcisableStructure::singletons(&l)).unwrap();
    let cfg = SamplerConfig { samples: 32, max_dim: 3, seed: 2, ..Default::default() };
    let mut group = c.benchmark_group("check_excisive");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| check_excisive(&FunctorSpec::SymmetricSquare, &ex, &cfg, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, transport, excisive);
criterion_main!(benches);
