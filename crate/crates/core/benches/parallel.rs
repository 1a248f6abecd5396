use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pointfree::io::{generate, random_interpolating_seed, rng};
use pointfree::lattice::Poset;
use pointfree::par::Execution;
use pointfree::relation::{check_strong_inclusion_with, least_strong_inclusion};

fn strong_inclusion_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_strong_inclusion");
    group.sample_size(20);
    let mut cases = Vec::new();
    for k in [5, 6, 7] {
        let l = Poset::antichain(k).unwrap().downset_lattice().unwrap().lattice;
        let p = l.full_basis();
        let lhd = l.order_relation();
        cases.push(("boolean", (l, p, lhd)));
    }
    let l = generate(3, 7).unwrap();
    let p = l.full_basis();
    let s = random_interpolating_seed(&mut rng(3), &l, &p);
    let lhd = least_strong_inclusion(&l, &p, &s).unwrap();
    cases.push(("random", (l, p, lhd)));
    for (name, (l, p, lhd)) in &cases {
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::parallel())] {
            group.bench_with_input(BenchmarkId::new(label, format!("{name}/{}", l.len())), &(), |b, _| {
                b.iter(|| check_strong_inclusion_with(l, lhd, p, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, strong_inclusion_check);
criterion_main!(benches);
