//! Criterion benches for the hot paths: form reduction and composition,
//! class-group enumeration, prime-to-class assignment, subset-sum growth,
//! sieve-table and bitmap construction, and one full census pass.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use genuslab::census::{build_tables, exceptional_count, RepresentationBitmaps};
use genuslab::grouptheory::{classify_subset_sums, subset_sums, ClassifierParams, FiniteAbelianGroup};
use genuslab::primes::primes_up_to;
use genuslab::qforms::{compose_forms, kronecker};
use genuslab::{ClassGroup, QuadForm};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const D: i64 = -10_007;

/// Equivalent but unreduced forms: random shears x ↦ x + ky and swaps
/// (x, y) ↦ (−y, x) applied to every reduced representative.
fn unreduced_battery(g: &ClassGroup, rng: &mut ChaCha8Rng) -> Vec<QuadForm> {
    let mut out = Vec::new();
    for i in 0..g.h() {
        let (mut a, mut b, mut c) = g.form(i).triple();
        for _ in 0..6 {
            if rng.gen_bool(0.5) {
                let k = rng.gen_range(-9..=9i64);
                let (na, nb, nc) = (a, b + 2 * a * k, a * k * k + b * k + c);
                (a, b, c) = (na, nb, nc);
            } else {
                (a, b, c) = (c, -b, a);
            }
        }
        out.push(QuadForm::new(a, b, c).unwrap());
    }
    out
}

fn bench_forms(c: &mut Criterion) {
    let g = ClassGroup::new(D).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let battery = unreduced_battery(&g, &mut rng);
    c.bench_function("reduce_form", |b| {
        b.iter(|| {
            for f in &battery {
                black_box(f.reduce().unwrap());
            }
        })
    });

    let pairs: Vec<(QuadForm, QuadForm)> = (0..64)
        .map(|_| {
            let i = rng.gen_range(0..g.h());
            let j = rng.gen_range(0..g.h());
            (g.form(i).form(), g.form(j).form())
        })
        .collect();
    c.bench_function("compose_forms", |b| {
        b.iter(|| {
            for (f1, f2) in &pairs {
                black_box(compose_forms(f1, f2).unwrap());
            }
        })
    });

    // only split or ramified primes carry a class
    let primes: Vec<i64> = primes_up_to(10_000)
        .into_iter()
        .map(|p| p as i64)
        .filter(|&p| kronecker(D, p) != -1)
        .collect();
    c.bench_function("prime_to_class_10k", |b| {
        b.iter(|| {
            for &p in &primes {
                black_box(g.prime_to_class(p).unwrap());
            }
        })
    });
}

fn bench_grouptheory(c: &mut Criterion) {
    let g = FiniteAbelianGroup::cyclic(4096).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let a: Vec<usize> = rand::seq::index::sample(&mut rng, g.n(), 24).into_vec();
    c.bench_function("subset_sums_4096", |b| b.iter(|| black_box(subset_sums(&g, &a))));

    let params = ClassifierParams::new(0.1).unwrap();
    c.bench_function("classify_4096", |b| {
        b.iter(|| black_box(classify_subset_sums(&g, &a, &params)))
    });
}

fn bench_heavy(c: &mut Criterion) {
    c.bench_function("class_group_enumeration", |b| {
        b.iter(|| black_box(ClassGroup::new(D).unwrap()))
    });

    c.bench_function("sieve_tables_1e6", |b| {
        b.iter(|| black_box(build_tables(1_000_000, -23).unwrap()))
    });

    let g = ClassGroup::new(-23).unwrap();
    c.bench_function("representation_bitmaps_1e6", |b| {
        b.iter(|| black_box(RepresentationBitmaps::build(&g, 1_000_000).unwrap()))
    });

    let tables = build_tables(1_000_000, -23).unwrap();
    let maps = RepresentationBitmaps::build(&g, 1_000_000).unwrap();
    c.bench_function("exceptional_census_1e6", |b| {
        b.iter(|| black_box(exceptional_count(&g, &tables, &maps, 1_000_000).unwrap()))
    });
}

criterion_group!(forms, bench_forms);
criterion_group!(grouptheory, bench_grouptheory);
criterion_group! {
    name = heavy;
    config = Criterion::default().sample_size(10);
    targets = bench_heavy
}
criterion_main!(forms, grouptheory, heavy);
