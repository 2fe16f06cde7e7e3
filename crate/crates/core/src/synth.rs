//! Planted-structure generators and exhaustive small-network oracles.
//!
//! The generators draw networks with known core-periphery ground truth —
//! per-pair block probabilities plus an inter-pair edge probability — and
//! wrap them into timestamped transaction logs so the whole pipeline can be
//! exercised end to end. The brute-force maximizer enumerates every
//! labeling of a small network and is the reference optimum the heuristic
//! detectors are judged against.

use chrono::{Duration, NaiveDate};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::kmer::Labeling;
use crate::seeds::mix;
use crate::temporal::{window_bounds, Scale, TransactionLog, TransactionRecord};

/// Block sizes and densities of one planted core-periphery pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlantedPairSpec {
    pub n_core: usize,
    pub n_periphery: usize,
    pub p_cc: f64,
    pub p_cp: f64,
    pub p_pp: f64,
}

impl PlantedPairSpec {
    pub fn new(n_core: usize, n_periphery: usize, p_cc: f64, p_cp: f64, p_pp: f64) -> Self {
        PlantedPairSpec { n_core, n_periphery, p_cc, p_cp, p_pp }
    }

    fn validate(&self) -> Result<()> {
        if self.n_core < 1 || self.n_periphery < 1 {
            return Err(Error::InvalidConfig(format!(
                "planted pair needs at least one core and one periphery node, got ({}, {})",
                self.n_core, self.n_periphery
            )));
        }
        for (name, p) in [("p_cc", self.p_cc), ("p_cp", self.p_cp), ("p_pp", self.p_pp)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} = {p} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// A generated network with its ground truth and any nodes that came out
/// isolated and were therefore removed from both.
#[derive(Debug, Clone)]
pub struct PlantedNetwork {
    pub network: Network,
    pub truth: Labeling,
    pub dropped: Vec<String>,
}

/// Draw a network of planted core-periphery pairs.
///
/// Nodes are laid out pair by pair, cores before peripheries, with ids
/// `b000`, `b001`, … Every within-pair dyad is drawn with its block
/// probability and every cross-pair dyad with `p_inter`, all independently.
/// Isolated nodes are dropped from the network and the truth and reported.
pub fn plant_cp_network(
    pairs: &[PlantedPairSpec],
    p_inter: f64,
    seed: u64,
) -> Result<PlantedNetwork> {
    if pairs.is_empty() {
        return Err(Error::InvalidConfig("no planted pairs given".into()));
    }
    for spec in pairs {
        spec.validate()?;
    }
    if !(0.0..=1.0).contains(&p_inter) {
        return Err(Error::InvalidConfig(format!("p_inter = {p_inter} outside [0, 1]")));
    }

    // Node layout: pair-major, cores first within each pair.
    let mut pair_of: Vec<u32> = Vec::new();
    let mut core_of: Vec<bool> = Vec::new();
    for (k, spec) in pairs.iter().enumerate() {
        pair_of.extend(std::iter::repeat_n(k as u32, spec.n_core + spec.n_periphery));
        core_of.extend(std::iter::repeat_n(true, spec.n_core));
        core_of.extend(std::iter::repeat_n(false, spec.n_periphery));
    }
    let n = pair_of.len();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = if pair_of[i] == pair_of[j] {
                let spec = &pairs[pair_of[i] as usize];
                match (core_of[i], core_of[j]) {
                    (true, true) => spec.p_cc,
                    (false, false) => spec.p_pp,
                    _ => spec.p_cp,
                }
            } else {
                p_inter
            };
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }

    let mut degree = vec![0usize; n];
    for &(i, j) in &edges {
        degree[i] += 1;
        degree[j] += 1;
    }
    let kept: Vec<usize> = (0..n).filter(|&v| degree[v] > 0).collect();
    let dropped: Vec<String> =
        (0..n).filter(|&v| degree[v] == 0).map(|v| format!("b{v:03}")).collect();
    let index_of: std::collections::HashMap<usize, usize> =
        kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();

    let ids: Vec<String> = kept.iter().map(|&v| format!("b{v:03}")).collect();
    let remapped: Vec<(usize, usize)> =
        edges.iter().map(|&(i, j)| (index_of[&i], index_of[&j])).collect();
    let network = Network::with_nodes(ids, &remapped)?;
    let truth_pairs: Vec<u32> = kept.iter().map(|&v| pair_of[v]).collect();
    let truth_core: Vec<bool> = kept.iter().map(|&v| core_of[v]).collect();
    let truth = Labeling::from_assignments(&truth_pairs, &truth_core, &network)?;
    Ok(PlantedNetwork { network, truth, dropped })
}

/// Maximum number of nodes [`brute_force_qcp`] accepts.
pub const BRUTE_FORCE_MAX_NODES: usize = 9;

/// Exhaustively maximize the multi-pair quality over every labeling: all
/// set partitions of the nodes crossed with all coreness assignments.
/// The search is exact integer arithmetic; the first labeling attaining the
/// maximum in enumeration order is returned, canonicalized.
pub fn brute_force_qcp(net: &Network) -> Result<(Labeling, f64)> {
    let n = net.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { needed: 2, actual: n });
    }
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(Error::TooLargeForEnumeration { n, max: BRUTE_FORCE_MAX_NODES });
    }
    let t = net.dyad_count() as i64;
    let m_total = net.edge_count() as i64;
    let edges: Vec<(usize, usize)> = net.edges().collect();

    // C(s, 2) for s = 0..=n.
    let choose2: Vec<i64> = (0..=n as i64).map(|s| s * (s - 1) / 2).collect();

    let mut best_num = i64::MIN;
    let mut best: (Vec<u32>, u16) = (vec![0; n], 0);

    // Enumerate set partitions as restricted-growth strings.
    let mut labels = vec![0u32; n];
    enumerate_partitions(&mut labels, 1, 1, &mut |labels, groups| {
        let mut group_bits = vec![0u16; groups as usize];
        for (v, &g) in labels.iter().enumerate() {
            group_bits[g as usize] |= 1u16 << v;
        }
        let same_pair_edges: Vec<u16> = edges
            .iter()
            .filter(|&&(i, j)| labels[i] == labels[j])
            .map(|&(i, j)| (1u16 << i) | (1u16 << j))
            .collect();
        for mask in 0u16..(1u16 << n) {
            // Dyads counted: per group, all pairs minus periphery pairs.
            let mut n_b = 0i64;
            for &bits in &group_bits {
                let size = bits.count_ones() as usize;
                let peri = (bits & !mask).count_ones() as usize;
                n_b += choose2[size] - choose2[peri];
            }
            let mut m_b = 0i64;
            for &e in &same_pair_edges {
                m_b += (e & mask != 0) as i64;
            }
            let num = m_b * t - m_total * n_b;
            if num > best_num {
                best_num = num;
                best = (labels.to_vec(), mask);
            }
        }
    });

    let core: Vec<bool> = (0..n).map(|v| best.1 & (1u16 << v) != 0).collect();
    let labeling = Labeling::from_assignments(&best.0, &core, net)?;
    debug_assert_eq!(labeling.q_value(), best_num as f64 / t as f64);
    Ok((labeling.clone(), labeling.q_value()))
}

/// Visit every restricted-growth string over `labels` (prefix of length
/// `filled` already set, `groups` labels used so far).
fn enumerate_partitions(
    labels: &mut Vec<u32>,
    filled: usize,
    groups: u32,
    visit: &mut impl FnMut(&[u32], u32),
) {
    if filled == labels.len() {
        visit(labels, groups);
        return;
    }
    for label in 0..=groups {
        labels[filled] = label;
        let next_groups = groups.max(label + 1);
        enumerate_partitions(labels, filled + 1, next_groups, visit);
    }
}

/// Planted parameters active from a given window onward.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub from_window: usize,
    pub pairs: Vec<PlantedPairSpec>,
    pub p_inter: f64,
}

/// Configuration of a synthetic transaction log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub windows: usize,
    pub scale: Scale,
    pub start_date: NaiveDate,
    pub regimes: Vec<Regime>,
}

impl SynthConfig {
    fn validate(&self) -> Result<()> {
        if self.windows == 0 {
            return Err(Error::InvalidConfig("windows must be positive".into()));
        }
        if self.scale == Scale::Static && self.windows != 1 {
            return Err(Error::InvalidConfig(
                "the static scale has exactly one window".into(),
            ));
        }
        if self.regimes.is_empty() {
            return Err(Error::InvalidConfig("no regimes given".into()));
        }
        if self.regimes[0].from_window != 0 {
            return Err(Error::InvalidConfig("the first regime must start at window 0".into()));
        }
        for pair in self.regimes.windows(2) {
            if pair[1].from_window <= pair[0].from_window {
                return Err(Error::InvalidConfig(
                    "regime start windows must strictly increase".into(),
                ));
            }
        }
        if let Some(last) = self.regimes.last() {
            if last.from_window >= self.windows {
                return Err(Error::InvalidConfig(format!(
                    "regime starting at window {} is beyond the last window {}",
                    last.from_window,
                    self.windows - 1
                )));
            }
        }
        for regime in &self.regimes {
            if regime.pairs.is_empty() {
                return Err(Error::InvalidConfig(format!(
                    "regime at window {} has no pairs",
                    regime.from_window
                )));
            }
            for spec in &regime.pairs {
                spec.validate()?;
            }
            if !(0.0..=1.0).contains(&regime.p_inter) {
                return Err(Error::InvalidConfig(format!(
                    "p_inter = {} outside [0, 1]",
                    regime.p_inter
                )));
            }
        }
        Ok(())
    }
}

/// Ground truth for one generated window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowTruth {
    pub window: String,
    pub nodes: Vec<TruthNode>,
    pub dropped: Vec<String>,
}

/// One node's planted assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthNode {
    pub id: String,
    pub pair: u32,
    pub core: bool,
}

/// Generate a transaction log realizing planted structure window by window.
///
/// Window `w` uses the regime with the largest `from_window ≤ w`, draws its
/// planted network with a seed derived from `(seed, w)`, and realizes every
/// edge as one to three trades with uniform timestamps inside the window,
/// random direction, and log-uniform amounts in [0.1, 100]. The log is
/// returned sorted by timestamp together with each window's ground truth.
pub fn synth_transactions(
    config: &SynthConfig,
    seed: u64,
) -> Result<(TransactionLog, Vec<WindowTruth>)> {
    config.validate()?;
    let mut log: TransactionLog = Vec::new();
    let mut truths: Vec<WindowTruth> = Vec::new();

    let mut cursor = config.start_date;
    for w in 0..config.windows {
        let (label, start, end) = window_bounds(cursor, config.scale);
        let regime = config
            .regimes
            .iter()
            .rev()
            .find(|r| r.from_window <= w)
            .expect("validated: a regime covers window 0");

        let window_seed = mix(seed, w as u64);
        let planted = plant_cp_network(&regime.pairs, regime.p_inter, window_seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(mix(window_seed, 1));

        let span_seconds = ((end - start).num_days() + 1) * 86_400;
        for (i, j) in planted.network.edges() {
            let trades = rng.gen_range(1..=3);
            for _ in 0..trades {
                let offset = rng.gen_range(0..span_seconds);
                let timestamp = start.and_hms_opt(0, 0, 0).unwrap() + Duration::seconds(offset);
                let (a, b) = (planted.network.node_id(i), planted.network.node_id(j));
                let (lender, borrower) =
                    if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                let amount = 10f64.powf(rng.gen_range(-1.0..2.0));
                log.push(TransactionRecord {
                    timestamp,
                    lender: lender.to_string(),
                    borrower: borrower.to_string(),
                    amount,
                });
            }
        }

        let nodes: Vec<TruthNode> = (0..planted.network.node_count())
            .map(|v| TruthNode {
                id: planted.network.node_id(v).to_string(),
                pair: planted.truth.pair_of(v),
                core: planted.truth.is_core(v),
            })
            .collect();
        truths.push(WindowTruth { window: label, nodes, dropped: planted.dropped });

        cursor = end + Duration::days(1);
    }

    log.sort_by(|a, b| {
        (a.timestamp, &a.lender, &a.borrower)
            .cmp(&(b.timestamp, &b.lender, &b.borrower))
            .then(a.amount.total_cmp(&b.amount))
    });
    Ok((log, truths))
}

/// Render a transaction log as CSV in the ingestion format.
pub fn transactions_csv(log: &[TransactionRecord]) -> String {
    let mut out = String::from("timestamp,lender,borrower,amount\n");
    for record in log {
        out.push_str(&format!(
            "{},{},{},{}\n",
            record.timestamp.format("%Y-%m-%dT%H:%M:%S"),
            record.lender,
            record.borrower,
            record.amount
        ));
    }
    out
}
