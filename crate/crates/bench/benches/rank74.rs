use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use rank74::census::{enumerate_counts, monte_carlo, recurrence_table, CensusPattern, Property, Semantics};
use rank74::certificates::{exp_rank_certificate, mesoscopic_certificate, z2_certificate, Z2Bounds};
use rank74::cobordism::{close_up, Word};
use rank74::rgraph::r_graph;

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("construction");
    for w in ["X00", "X01.Y00", "Y00.Y00.Y00", "X01.Y00.X10.Y01.X00.Y00"] {
        let w = word(w);
        g.bench_with_input(BenchmarkId::new("close_up", &w), &w, |b, w| b.iter(|| close_up(black_box(w)).unwrap()));
        g.bench_with_input(BenchmarkId::new("r_graph", &w), &w, |b, w| b.iter(|| r_graph(black_box(w)).unwrap()));
    }
    g.finish();
}

fn certificates(c: &mut Criterion) {
    let mut g = c.benchmark_group("certificates");
    g.sample_size(10);
    for w in ["X01.X00", "Y00.X00.Y00", "X00.X00.X00.X00"] {
        let w = word(w);
        g.bench_with_input(BenchmarkId::new("z2", &w), &w, |b, w| b.iter(|| z2_certificate(black_box(w), &Z2Bounds::default())));
    }
    let w = word("X01.Y00.X00.Y00");
    g.bench_function("exprank/X01.Y00.X00.Y00", |b| b.iter(|| exp_rank_certificate(black_box(&w))));
    let w = word("Y00.Y00.Y00");
    g.bench_function("meso/Y00.Y00.Y00", |b| b.iter(|| mesoscopic_certificate(black_box(&w))));
    g.finish();
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.bench_function("recurrence/200", |b| b.iter(|| recurrence_table(black_box(200), CensusPattern::Y00Y00).unwrap()));
    g.sample_size(10);
    for sem in [Semantics::Representative, Semantics::Class] {
        g.bench_function(format!("enumerate/8/{sem}"), |b| {
            b.iter(|| enumerate_counts(black_box(8), CensusPattern::Y00Y00, sem).unwrap())
        });
    }
    let p = Property::Contains(CensusPattern::Y00Y00, Semantics::Representative);
    g.bench_function("monte_carlo/10000", |b| b.iter(|| monte_carlo(black_box(10), 10_000, p, 1).unwrap()));
    g.finish();
}

criterion_group!(benches, construction, certificates, census);
criterion_main!(benches);
