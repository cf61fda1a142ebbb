use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eaoaqec::catalog::catalog;
use eaoaqec::correct::{distance_target, DistanceMode};
use eaoaqec::search::{min_weight, BranchTag, Strategy, TargetSet};

fn strategies(c: &mut Criterion) {
    let cases = [
        ("color_dressed", "subsystem_color_code", DistanceMode::Dressed, 4),
        ("color_no_hit_w4", "color_code_hybrid_xz", DistanceMode::Bare, 4),
        ("hybrid_xz_noisy_bob", "color_code_hybrid_xz", DistanceMode::NoisyBob, 4),
        ("hamming_dressed_w5", "shortened_hamming_ea_subsystem", DistanceMode::Dressed, 5),
    ];
    let mut group = c.benchmark_group("min_weight");
    group.sample_size(10);
    for (label, name, mode, cutoff) in cases {
        let code = catalog(name).expect("catalog code");
        let set = distance_target(&code, mode).expect("target set");
        for strategy in [Strategy::Sequential, Strategy::Parallel] {
            group.bench_with_input(BenchmarkId::new(label, format!("{strategy:?}")), &set, |b, set| {
                b.iter(|| min_weight(set, cutoff, strategy))
            });
        }
    }
    // Stabilizer elements of the color code all have weight 8, so this exhausts every weight <= 5.
    let code = catalog("subsystem_color_code").expect("catalog code");
    let mut set = TargetSet::new(code.total_qubits());
    let cond = set.in_span(code.h_isotropic()).expect("span");
    set.add_branch(BranchTag::Target, vec![cond]);
    assert!(min_weight(&set, 5, Strategy::Sequential).exceeded_cutoff());
    for strategy in [Strategy::Sequential, Strategy::Parallel] {
        group.bench_with_input(BenchmarkId::new("color_exhaust_w5", format!("{strategy:?}")), &set, |b, set| {
            b.iter(|| min_weight(set, 5, strategy))
        });
    }
    group.finish();
}

criterion_group!(benches, strategies);
criterion_main!(benches);
