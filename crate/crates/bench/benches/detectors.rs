//! Timings for the hot paths of the toolkit: the three detectors, the
//! sampling-based significance test, and transaction-log ingestion.
//!
//! Every fixture is seeded, so numbers are comparable run to run; sizes are
//! chosen to bracket the windowed networks the pipeline typically produces.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use cpdetect::{
    aggregate, detect_be, detect_kmer, detect_minres, parse_transactions, synth_transactions,
    test_significance, NullMode, ParseMode, PlantedPairSpec, Regime, Scale, SignificanceOptions,
    SynthConfig,
};
use cpdetect_bench::{planted_single_pair, planted_two_pairs, random_graph};

const SIZES: [usize; 3] = [20, 50, 100];
const FIXTURE_SEED: u64 = 1;
const DETECT_SEED: u64 = 7;

fn single_pair_detectors(c: &mut Criterion) {
    let mut group = c.benchmark_group("single_pair_detectors");
    for n in SIZES {
        let net = planted_single_pair(n, FIXTURE_SEED);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("correlation", n), &net, |b, net| {
            b.iter(|| detect_be(net, 20, DETECT_SEED).expect("planted networks are detectable"))
        });
        group.bench_with_input(BenchmarkId::new("minres", n), &net, |b, net| {
            b.iter(|| detect_minres(net).expect("planted networks are detectable"))
        });
    }
    group.finish();
}

fn multi_pair_detector(c: &mut Criterion) {
    let mut group = c.benchmark_group("multi_pair_detector");
    group.sample_size(20);
    for n in SIZES {
        let net = planted_two_pairs(n, FIXTURE_SEED);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("label_switching", n), &net, |b, net| {
            b.iter(|| detect_kmer(net, 5, DETECT_SEED).expect("planted networks are detectable"))
        });
    }
    group.finish();
}

fn significance_test(c: &mut Criterion) {
    let mut group = c.benchmark_group("significance_test");
    group.sample_size(10);
    let net = random_graph(30, FIXTURE_SEED);
    let lab = detect_kmer(&net, 5, DETECT_SEED).expect("random graph is detectable");
    for samples in [100usize, 250] {
        let options = SignificanceOptions {
            samples,
            alpha_prime: 0.05,
            null_mode: NullMode::PairMatched,
            seed: DETECT_SEED,
        };
        group.throughput(Throughput::Elements(samples as u64));
        group.bench_with_input(BenchmarkId::from_parameter(samples), &options, |b, options| {
            b.iter(|| test_significance(&lab, &net, options).expect("network is testable"))
        });
    }
    group.finish();
}

fn ingestion(c: &mut Criterion) {
    let mut group = c.benchmark_group("ingestion");
    let config = SynthConfig {
        start_date: "2006-01-01".parse().expect("valid date"),
        scale: Scale::Month,
        windows: 12,
        regimes: vec![Regime {
            from_window: 0,
            pairs: vec![PlantedPairSpec::new(6, 24, 0.9, 0.6, 0.05)],
            p_inter: 0.0,
        }],
    };
    let (log, _) = synth_transactions(&config, FIXTURE_SEED).expect("valid config");
    let csv_text = cpdetect::transactions_csv(&log);

    group.throughput(Throughput::Elements(log.len() as u64));
    group.bench_function(BenchmarkId::new("parse", log.len()), |b| {
        b.iter(|| parse_transactions(&csv_text, ParseMode::Strict).expect("clean log"))
    });
    group.bench_function(BenchmarkId::new("aggregate", log.len()), |b| {
        b.iter(|| aggregate(&log, Scale::Month).expect("non-empty log"))
    });
    group.finish();
}

criterion_group!(
    benches,
    single_pair_detectors,
    multi_pair_detector,
    significance_test,
    ingestion
);
criterion_main!(benches);
