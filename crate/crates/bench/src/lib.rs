//! Shared fixtures for the benchmark suite.
//!
//! Benchmarks want inputs that are deterministic, quick to build, and shaped
//! like the networks the detectors are written for. These helpers plant
//! core-periphery structure (or draw a uniform random graph) at a requested
//! total size so timings stay comparable across sizes and runs.

use cpdetect::{plant_cp_network, sample_er, Network, PlantedPairSpec};

/// Densities used by every planted fixture: a dense core, a moderately
/// connected core-periphery boundary, and a sparse periphery.
const P_CC: f64 = 0.9;
const P_CP: f64 = 0.6;
const P_PP: f64 = 0.05;

/// Plant one core-periphery pair with roughly 30% of `n` nodes in the core.
///
/// Panics on invalid sizes; benchmark fixtures are static so a panic is a
/// bug in the bench itself.
pub fn planted_single_pair(n: usize, seed: u64) -> Network {
    assert!(n >= 4, "fixture needs at least four nodes");
    let n_core = (n * 3 / 10).max(1);
    let spec = PlantedPairSpec::new(n_core, n - n_core, P_CC, P_CP, P_PP);
    plant_cp_network(&[spec], 0.0, seed)
        .expect("static fixture spec is valid")
        .network
}

/// Plant two disjoint pairs of roughly equal size, totalling about `n`
/// nodes, with sparse inter-pair wiring.
pub fn planted_two_pairs(n: usize, seed: u64) -> Network {
    assert!(n >= 8, "fixture needs at least eight nodes");
    let half = n / 2;
    let pair = |size: usize| {
        let n_core = (size * 3 / 10).max(1);
        PlantedPairSpec::new(n_core, size - n_core, P_CC, P_CP, P_PP)
    };
    plant_cp_network(&[pair(half), pair(n - half)], 0.02, seed)
        .expect("static fixture spec is valid")
        .network
}

/// Draw a uniform random graph with `n` nodes and `4 n` edges — the
/// structureless input the significance test samples as its null model.
pub fn random_graph(n: usize, seed: u64) -> Network {
    sample_er(n, 4 * n as u64, seed).expect("n >= 9 keeps 4n under the dyad count")
}
