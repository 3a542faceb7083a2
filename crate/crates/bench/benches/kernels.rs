use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use cragged_core::lattice::{hermite_normal_form, smith_normal_form, IntMatrix};
use cragged_core::polyhedra::Cone;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-50..=50)).collect())
        .collect();
    IntMatrix::from_i64_rows(&data)
}

fn bench_normal_forms(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    c.bench_function("hnf_6x6", |b| {
        b.iter_batched(
            || random_matrix(&mut rng, 6, 6),
            |m| hermite_normal_form(&m),
            BatchSize::SmallInput,
        )
    });
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    c.bench_function("snf_6x6", |b| {
        b.iter_batched(
            || random_matrix(&mut rng, 6, 6),
            |m| smith_normal_form(&m),
            BatchSize::SmallInput,
        )
    });
}

fn bench_dual_description(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    c.bench_function("dual_involution_dim4", |b| {
        b.iter_batched(
            || {
                let gens: Vec<Vec<i64>> = (0..5)
                    .map(|_| (0..4).map(|_| rng.gen_range(-4..=4)).collect())
                    .collect();
                let gens: Vec<Vec<num_bigint::BigInt>> = gens
                    .iter()
                    .map(|g| g.iter().map(|&x| num_bigint::BigInt::from(x)).collect())
                    .collect();
                Cone::from_generators(&gens, 4).unwrap()
            },
            |cone| cone.dual().dual(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, bench_normal_forms, bench_dual_description);
criterion_main!(benches);
