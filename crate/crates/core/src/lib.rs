//! Core-periphery structure detection for transaction networks.
//!
//! The crate ingests timestamped bilateral transaction logs, aggregates them
//! into windowed binary networks, detects core-periphery structure with
//! three detectors (single-pair correlation against the idealized pattern,
//! a residual-minimizing degree cut, and multi-pair label switching scored
//! against a uniform random-graph expectation), tests detected pairs for
//! significance against G(n, m) null models, and derives block-density
//! metrics, stability series, and alluvial flows.
//!
//! All randomized routines take explicit `u64` seeds and are deterministic
//! across runs and platforms.

pub mod be;
pub mod error;
pub mod graph;
pub mod kmer;
pub mod metrics;
pub mod minres;
pub mod seeds;
pub mod significance;
pub mod synth;
pub mod temporal;

pub use be::{be_quality, default_restarts, detect_be, SinglePairAssignment};
pub use error::{Error, Result, RowIssue, UntestableReason};
pub use graph::{edge_list_text, parse_attributes, parse_edge_list, sample_er, Network};
pub use kmer::{
    detect_kmer, detect_kmer_with_stats, labeling_quality, quality_gain, Labeling, SwitchStats,
};
pub use metrics::{
    alluvial_flows, attribute_fractions, block_densities, classify_structure, jaccard,
    main_core_ids, AttributeFractions, BlockDensities, FlowRow, StructureClass,
};
pub use minres::{detect_minres, minres_cost};
pub use significance::{
    pair_quality, pair_quality_full, sidak_alpha, test_significance, NullMode, PairVerdict,
    SignificanceOptions, SignificanceReport, MIN_SAMPLES, NULL_DETECT_RESTARTS,
};
pub use synth::{
    brute_force_qcp, plant_cp_network, synth_transactions, transactions_csv, PlantedNetwork,
    PlantedPairSpec, Regime, SynthConfig, TruthNode, WindowTruth, BRUTE_FORCE_MAX_NODES,
};
pub use temporal::{
    aggregate, edge_file_name, manifest_csv, parse_transactions, ParseMode, ParsedLog, Scale,
    TransactionLog, TransactionRecord, Window, WindowedNetworkSeries,
};
