//! Multi-pair core-periphery detection by label switching.
//!
//! A labeling assigns every node to a pair (a community that carries its own
//! core/periphery split) and a coreness flag. The labeling quality sums, over
//! all same-pair dyads that touch at least one core node, the difference
//! between the observed adjacency and the network density. Dyads between two
//! periphery nodes and dyads across pairs contribute nothing. The two trivial
//! labelings (every node its own core, or one pair with every node core)
//! score exactly zero, so positive quality certifies structure beyond a
//! uniformly random graph with the same number of edges.
//!
//! All scoring is done on integer numerators (`quality * dyad_count`), which
//! makes move comparisons exact and the committed quality trajectory
//! reproducible bit-for-bit.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Network;

/// A multi-pair labeling: per-node pair index (1-based, contiguous) and
/// coreness flag, with pairs numbered by decreasing size (ties broken by the
/// smallest contained node index). Pair 1 is the main pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Labeling {
    pair: Vec<u32>,
    core: Vec<bool>,
    q_value: f64,
    pair_count: u32,
    significant: Option<Vec<bool>>,
}

impl Labeling {
    /// Build a labeling from raw pair labels (any `u32` values) and coreness
    /// flags, canonicalizing pair numbers and computing the quality.
    pub fn from_assignments(raw_pairs: &[u32], core: &[bool], net: &Network) -> Result<Labeling> {
        let n = net.node_count();
        if raw_pairs.len() != n || core.len() != n {
            return Err(Error::LabelingMismatch(format!(
                "labeling covers {} pair labels / {} coreness flags, network has {n} nodes",
                raw_pairs.len(),
                core.len()
            )));
        }
        if n < 2 {
            return Err(Error::TooFewNodes { needed: 2, actual: n });
        }
        let pair = canonicalize(raw_pairs);
        let pair_count = pair.iter().copied().max().unwrap_or(0);
        let num = quality_numerator(&pair, core, net);
        Ok(Labeling {
            pair,
            core: core.to_vec(),
            q_value: num as f64 / net.dyad_count() as f64,
            pair_count,
            significant: None,
        })
    }

    pub fn node_count(&self) -> usize {
        self.pair.len()
    }

    /// 1-based canonical pair index of a node.
    pub fn pair_of(&self, node: usize) -> u32 {
        self.pair[node]
    }

    pub fn is_core(&self, node: usize) -> bool {
        self.core[node]
    }

    pub fn pairs(&self) -> &[u32] {
        &self.pair
    }

    pub fn coreness(&self) -> &[bool] {
        &self.core
    }

    pub fn q_value(&self) -> f64 {
        self.q_value
    }

    pub fn pair_count(&self) -> u32 {
        self.pair_count
    }

    pub fn members(&self, k: u32) -> Vec<usize> {
        (0..self.pair.len()).filter(|&v| self.pair[v] == k).collect()
    }

    pub fn n_core(&self, k: u32) -> usize {
        self.members(k).iter().filter(|&&v| self.core[v]).count()
    }

    pub fn n_periphery(&self, k: u32) -> usize {
        self.members(k).iter().filter(|&&v| !self.core[v]).count()
    }

    /// Per-node significance flags, present once a significance test ran.
    pub fn significance(&self) -> Option<&[bool]> {
        self.significant.as_deref()
    }

    /// Copy of this labeling with per-node significance flags attached.
    pub fn with_significance(&self, flags: Vec<bool>) -> Result<Labeling> {
        if flags.len() != self.pair.len() {
            return Err(Error::LabelingMismatch(format!(
                "{} flags for {} nodes",
                flags.len(),
                self.pair.len()
            )));
        }
        let mut out = self.clone();
        out.significant = Some(flags);
        Ok(out)
    }

    /// Whether pair `k` was flagged significant (all members share the flag).
    pub fn pair_significant(&self, k: u32) -> Option<bool> {
        let flags = self.significant.as_ref()?;
        self.members(k).first().map(|&v| flags[v])
    }
}

/// Renumber arbitrary pair labels to 1..=C by decreasing pair size, ties by
/// smallest contained node index.
fn canonicalize(raw: &[u32]) -> Vec<u32> {
    use std::collections::HashMap;
    let mut first_member: HashMap<u32, usize> = HashMap::new();
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for (v, &label) in raw.iter().enumerate() {
        first_member.entry(label).or_insert(v);
        *sizes.entry(label).or_insert(0) += 1;
    }
    let mut order: Vec<(u32, usize, usize)> = sizes
        .iter()
        .map(|(&label, &size)| (label, size, first_member[&label]))
        .collect();
    order.sort_by_key(|&(_, size, first)| (std::cmp::Reverse(size), first));
    let renumber: HashMap<u32, u32> = order
        .iter()
        .enumerate()
        .map(|(i, &(label, _, _))| (label, i as u32 + 1))
        .collect();
    raw.iter().map(|label| renumber[label]).collect()
}

/// Integer quality numerator: `quality * dyad_count`, exact.
fn quality_numerator(pair: &[u32], core: &[bool], net: &Network) -> i128 {
    let n = pair.len();
    let mut size: std::collections::HashMap<u32, (u64, u64)> = Default::default();
    for v in 0..n {
        let entry = size.entry(pair[v]).or_insert((0, 0));
        entry.0 += 1;
        if !core[v] {
            entry.1 += 1;
        }
    }
    // Same-pair dyads touching a core node: C(s,2) - C(p,2) per pair.
    let mut counted_dyads: u64 = 0;
    for &(s, p) in size.values() {
        counted_dyads += s * (s - 1) / 2 - p * p.saturating_sub(1) / 2;
    }
    let mut counted_edges: u64 = 0;
    for (i, j) in net.edges() {
        if pair[i] == pair[j] && (core[i] || core[j]) {
            counted_edges += 1;
        }
    }
    let t = net.dyad_count() as i128;
    let m = net.edge_count() as i128;
    counted_edges as i128 * t - m * counted_dyads as i128
}

/// Quality of a labeling: density-adjusted edge surplus over counted dyads.
pub fn labeling_quality(lab: &Labeling, net: &Network) -> Result<f64> {
    if lab.node_count() != net.node_count() {
        return Err(Error::LabelingMismatch(format!(
            "labeling covers {} nodes, network has {}",
            lab.node_count(),
            net.node_count()
        )));
    }
    if net.node_count() < 2 {
        return Err(Error::TooFewNodes { needed: 2, actual: net.node_count() });
    }
    Ok(quality_numerator(&lab.pair, &lab.core, net) as f64 / net.dyad_count() as f64)
}

/// Quality change from moving one node to (`new_pair`, `new_core`), computed
/// from the node's neighborhood and the pair membership counts — no full
/// re-evaluation.
pub fn quality_gain(
    lab: &Labeling,
    net: &Network,
    node: usize,
    new_pair: u32,
    new_core: bool,
) -> Result<f64> {
    if lab.node_count() != net.node_count() {
        return Err(Error::LabelingMismatch(format!(
            "labeling covers {} nodes, network has {}",
            lab.node_count(),
            net.node_count()
        )));
    }
    if node >= net.node_count() {
        return Err(Error::NodeIndexOutOfRange(node));
    }
    if new_pair == 0 || new_pair > lab.pair_count {
        return Err(Error::UnknownPair(new_pair));
    }

    let mut size = vec![0u64; lab.pair_count as usize + 1];
    let mut peri = vec![0u64; lab.pair_count as usize + 1];
    for v in 0..lab.node_count() {
        size[lab.pair[v] as usize] += 1;
        if !lab.core[v] {
            peri[lab.pair[v] as usize] += 1;
        }
    }
    let (a, b) = (lab.pair[node], new_pair);
    let (mut e_core_a, mut e_peri_a, mut e_core_b, mut e_peri_b) = (0i128, 0i128, 0i128, 0i128);
    for &u in net.neighbors(node) {
        let u = u as usize;
        if lab.pair[u] == a {
            if lab.core[u] { e_core_a += 1 } else { e_peri_a += 1 }
        }
        if lab.pair[u] == b {
            if lab.core[u] { e_core_b += 1 } else { e_peri_b += 1 }
        }
    }
    let num = gain_numerator(
        net.dyad_count() as i128,
        net.edge_count() as i128,
        MoveContext {
            s_a: size[a as usize],
            p_a: peri[a as usize],
            s_b: size[b as usize],
            p_b: peri[b as usize],
            same_pair: a == b,
            old_core: lab.core[node],
            new_core,
            e_core_a,
            e_peri_a,
            e_core_b,
            e_peri_b,
        },
    );
    Ok(num as f64 / net.dyad_count() as f64)
}

struct MoveContext {
    s_a: u64,
    p_a: u64,
    s_b: u64,
    p_b: u64,
    same_pair: bool,
    old_core: bool,
    new_core: bool,
    e_core_a: i128,
    e_peri_a: i128,
    e_core_b: i128,
    e_peri_b: i128,
}

/// Exact integer numerator of the quality change for one node move,
/// modeled as removal from the old pair followed by insertion into the new.
fn gain_numerator(t: i128, m: i128, ctx: MoveContext) -> i128 {
    let x = ctx.old_core;
    let y = ctx.new_core;

    // Counted-dyad change from removal: the node drops s_a - 1 same-pair
    // dyads, but a periphery node returns C(p_a,2) - C(p_a-1,2) free dyads.
    let mut dn = -((ctx.s_a - 1) as i128);
    if !x {
        dn += (ctx.p_a - 1) as i128;
    }
    // Sizes of the target pair at insertion time.
    let (s_b0, p_b0) = if ctx.same_pair {
        (ctx.s_a - 1, ctx.p_a - if x { 0 } else { 1 })
    } else {
        (ctx.s_b, ctx.p_b)
    };
    dn += s_b0 as i128;
    if !y {
        dn -= p_b0 as i128;
    }

    // Counted-edge change: edges to core members always count; edges to
    // periphery members count only while the moving node is core.
    let mut dm = -(ctx.e_core_a + if x { ctx.e_peri_a } else { 0 });
    dm += ctx.e_core_b + if y { ctx.e_peri_b } else { 0 };

    dm * t - m * dn
}

/// Convergence statistics of a label-switching detection.
#[derive(Debug, Clone, Copy, Default)]
pub struct SwitchStats {
    pub runs: usize,
    pub total_sweeps: usize,
    pub total_commits: usize,
    /// Smallest quality increment among all committed moves; `None` when no
    /// move was ever committed. Positive by construction.
    pub min_commit_gain: Option<f64>,
}

struct SwitchState {
    t: i128,
    m: i128,
    pair: Vec<u32>,
    core: Vec<bool>,
    size: Vec<u64>,
    peri: Vec<u64>,
    q_num: i128,
}

impl SwitchState {
    fn fresh(net: &Network) -> SwitchState {
        let n = net.node_count();
        SwitchState {
            t: net.dyad_count() as i128,
            m: net.edge_count() as i128,
            pair: (0..n as u32).collect(),
            core: vec![true; n],
            size: vec![1; n],
            peri: vec![0; n],
            q_num: 0,
        }
    }

    fn eval(&self, v: usize, b: u32, y: bool, counts: &NeighborCounts) -> i128 {
        let a = self.pair[v];
        let (e_core_b, e_peri_b) = counts.get(b);
        let (e_core_a, e_peri_a) = counts.get(a);
        gain_numerator(
            self.t,
            self.m,
            MoveContext {
                s_a: self.size[a as usize],
                p_a: self.peri[a as usize],
                s_b: self.size[b as usize],
                p_b: self.peri[b as usize],
                same_pair: a == b,
                old_core: self.core[v],
                new_core: y,
                e_core_a,
                e_peri_a,
                e_core_b,
                e_peri_b,
            },
        )
    }

    fn commit(&mut self, v: usize, b: u32, y: bool, gain: i128) {
        let a = self.pair[v] as usize;
        self.size[a] -= 1;
        if !self.core[v] {
            self.peri[a] -= 1;
        }
        self.size[b as usize] += 1;
        if !y {
            self.peri[b as usize] += 1;
        }
        self.pair[v] = b;
        self.core[v] = y;
        self.q_num += gain;
    }
}

/// Per-node neighbor tallies keyed by pair label, with first-encounter order.
struct NeighborCounts {
    slot: Vec<u32>,
    labels: Vec<u32>,
    core: Vec<i128>,
    peri: Vec<i128>,
}

impl NeighborCounts {
    fn new(n: usize) -> NeighborCounts {
        NeighborCounts {
            slot: vec![u32::MAX; n],
            labels: Vec::new(),
            core: Vec::new(),
            peri: Vec::new(),
        }
    }

    fn clear(&mut self) {
        for &label in &self.labels {
            self.slot[label as usize] = u32::MAX;
        }
        self.labels.clear();
        self.core.clear();
        self.peri.clear();
    }

    fn add(&mut self, label: u32, is_core: bool) {
        let mut s = self.slot[label as usize];
        if s == u32::MAX {
            s = self.labels.len() as u32;
            self.slot[label as usize] = s;
            self.labels.push(label);
            self.core.push(0);
            self.peri.push(0);
        }
        if is_core {
            self.core[s as usize] += 1;
        } else {
            self.peri[s as usize] += 1;
        }
    }

    fn get(&self, label: u32) -> (i128, i128) {
        match self.slot[label as usize] {
            u32::MAX => (0, 0),
            s => (self.core[s as usize], self.peri[s as usize]),
        }
    }
}

/// One label-switching run from the all-singletons-all-core start.
fn switch_run(
    net: &Network,
    seed: u64,
    stats: &mut SwitchStats,
) -> Result<(i128, Vec<u32>, Vec<bool>)> {
    let n = net.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SwitchState::fresh(net);
    let mut counts = NeighborCounts::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    let mut scratch: Vec<u32> = Vec::new();
    let sweep_limit = 100 * n;
    let mut sweeps = 0usize;

    loop {
        if sweeps == sweep_limit {
            return Err(Error::SweepLimitExceeded { limit: sweep_limit });
        }
        sweeps += 1;
        order.shuffle(&mut rng);
        let mut changed = false;

        for &v in &order {
            scratch.clear();
            scratch.extend_from_slice(net.neighbors(v));
            scratch.shuffle(&mut rng);

            counts.clear();
            for &u in &scratch {
                counts.add(state.pair[u as usize], state.core[u as usize]);
            }

            // Candidate targets are the neighbors' pairs in first-encounter
            // order (the order labels entered the tally). Only strictly
            // positive gains commit, so equal-gain candidates resolve to the
            // earliest one scanned. For one target pair, the periphery
            // variant is tried before the core variant: when the target has
            // no periphery members yet the two variants gain exactly the
            // same, and breaking that tie toward core would freeze the
            // all-core initial state — no periphery could ever form.
            let mut best: Option<(u32, bool, i128)> = None;
            for slot in 0..counts.labels.len() {
                let b = counts.labels[slot];
                for y in [false, true] {
                    let gain = state.eval(v, b, y, &counts);
                    if gain > best.map_or(0, |(_, _, g)| g) {
                        best = Some((b, y, gain));
                    }
                }
            }
            if let Some((b, y, gain)) = best {
                state.commit(v, b, y, gain);
                changed = true;
                stats.total_commits += 1;
                let gain_value = gain as f64 / state.t as f64;
                stats.min_commit_gain = Some(
                    stats
                        .min_commit_gain
                        .map_or(gain_value, |g: f64| g.min(gain_value)),
                );
            }
        }

        debug_assert_eq!(
            state.q_num,
            quality_numerator(&state.pair, &state.core, net),
            "incremental quality drifted from a full recount"
        );
        if !changed {
            break;
        }
    }
    stats.total_sweeps += sweeps;

    // The accumulated score must agree exactly with a full recount.
    let recount = quality_numerator(&state.pair, &state.core, net);
    assert_eq!(
        state.q_num, recount,
        "label-switching bookkeeping diverged from the labeling it built"
    );
    Ok((state.q_num, state.pair, state.core))
}

/// Detect multi-pair core-periphery structure by repeated label switching.
///
/// Every run starts from the same initial labels (each node a singleton
/// core); run `i` draws its node and neighbor scan orders from a stream
/// seeded with `seed + i`. The best quality wins, ties going to the earliest
/// run. Errors if a run exceeds `100 * n` sweeps without converging.
pub fn detect_kmer(net: &Network, runs: usize, seed: u64) -> Result<Labeling> {
    detect_kmer_with_stats(net, runs, seed).map(|(lab, _)| lab)
}

/// [`detect_kmer`] plus convergence statistics.
pub fn detect_kmer_with_stats(
    net: &Network,
    runs: usize,
    seed: u64,
) -> Result<(Labeling, SwitchStats)> {
    let n = net.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { needed: 2, actual: n });
    }
    if runs == 0 {
        return Err(Error::InvalidConfig("runs must be positive".into()));
    }
    let mut stats = SwitchStats { runs, ..Default::default() };
    let mut best: Option<(i128, Vec<u32>, Vec<bool>)> = None;
    for run in 0..runs {
        let result = switch_run(net, seed.wrapping_add(run as u64), &mut stats)?;
        if best.as_ref().is_none_or(|(q, _, _)| result.0 > *q) {
            best = Some(result);
        }
    }
    let (q_num, pair, core) = best.expect("runs >= 1");
    let labeling = Labeling::from_assignments(&pair, &core, net)?;
    debug_assert_eq!(
        q_num as f64 / net.dyad_count() as f64,
        labeling.q_value(),
        "canonicalization changed the quality"
    );
    Ok((labeling, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample_er;

    fn star4() -> Network {
        Network::from_edges([("c", "l1"), ("c", "l2"), ("c", "l3")]).unwrap()
    }

    fn two_planted_pairs() -> (Network, Vec<u32>, Vec<bool>) {
        // Pair A: 3 cores, 7 peripheries; pair B: 3 cores, 5 peripheries.
        // Full core-core and core-periphery blocks, empty periphery blocks,
        // no edges between the pairs.
        let mut edges = Vec::new();
        let add_pair = |offset: usize, n_core: usize, total: usize,
                            edges: &mut Vec<(usize, usize)>| {
            for i in 0..n_core {
                for j in (i + 1)..n_core {
                    edges.push((offset + i, offset + j));
                }
                for p in n_core..total {
                    edges.push((offset + i, offset + p));
                }
            }
        };
        add_pair(0, 3, 10, &mut edges);
        add_pair(10, 3, 8, &mut edges);
        let ids = (0..18).map(|i| format!("b{i:02}")).collect();
        let net = Network::with_nodes(ids, &edges).unwrap();
        let pairs: Vec<u32> = (0..18).map(|i| if i < 10 { 7 } else { 9 }).collect();
        let core: Vec<bool> = (0..18).map(|i| i < 3 || (10..13).contains(&i)).collect();
        (net, pairs, core)
    }

    #[test]
    fn all_singleton_cores_score_exactly_zero() {
        for seed in [3, 17] {
            let net = sample_er(12, 30, seed).unwrap();
            let pairs: Vec<u32> = (0..12).collect();
            let lab = Labeling::from_assignments(&pairs, &[true; 12], &net).unwrap();
            assert_eq!(lab.q_value(), 0.0);
        }
    }

    #[test]
    fn one_pair_all_core_scores_exactly_zero() {
        for seed in [3, 17] {
            let net = sample_er(12, 30, seed).unwrap();
            let lab = Labeling::from_assignments(&[4; 12], &[true; 12], &net).unwrap();
            assert_eq!(lab.q_value(), 0.0);
        }
    }

    #[test]
    fn star_with_center_core_in_one_pair_scores_three_halves() {
        let net = star4();
        let lab =
            Labeling::from_assignments(&[0; 4], &[true, false, false, false], &net).unwrap();
        // Density 1/2; each of the three center-leaf dyads contributes 1/2,
        // leaf-leaf dyads contribute nothing.
        assert_eq!(lab.q_value(), 1.5);
        assert_eq!(labeling_quality(&lab, &net).unwrap(), 1.5);
    }

    #[test]
    fn gain_of_first_merge_on_the_star() {
        let net = star4();
        let pairs: Vec<u32> = (0..4).collect();
        let lab = Labeling::from_assignments(&pairs, &[true; 4], &net).unwrap();
        // Singletons canonicalize to pair k = node index + 1 here. Moving
        // leaf 1 into the center's pair as periphery adds one counted dyad
        // that carries an edge: gain = 1 - density = 1/2.
        let center_pair = lab.pair_of(0);
        let gain = quality_gain(&lab, &net, 1, center_pair, false).unwrap();
        assert_eq!(gain, 0.5);
    }

    #[test]
    fn recreating_the_current_assignment_gains_nothing() {
        let net = star4();
        let lab =
            Labeling::from_assignments(&[0, 0, 1, 1], &[true, false, true, false], &net).unwrap();
        for v in 0..4 {
            let gain = quality_gain(&lab, &net, v, lab.pair_of(v), lab.is_core(v)).unwrap();
            assert_eq!(gain, 0.0, "node {v}");
        }
    }

    #[test]
    fn gain_matches_full_recomputation() {
        let net = sample_er(10, 22, 5).unwrap();
        let pairs = [0u32, 1, 0, 2, 1, 0, 2, 1, 0, 2];
        let core = [true, false, true, true, true, false, false, true, false, true];
        let lab = Labeling::from_assignments(&pairs, &core, &net).unwrap();
        for node in 0..10usize {
            for new_pair in 1..=lab.pair_count() {
                for new_core in [true, false] {
                    let gain = quality_gain(&lab, &net, node, new_pair, new_core).unwrap();
                    let mut moved_pairs = lab.pairs().to_vec();
                    let mut moved_core = lab.coreness().to_vec();
                    moved_pairs[node] = new_pair;
                    moved_core[node] = new_core;
                    let after =
                        Labeling::from_assignments(&moved_pairs, &moved_core, &net).unwrap();
                    assert!(
                        (gain - (after.q_value() - lab.q_value())).abs() < 1e-12,
                        "node {node} -> ({new_pair}, {new_core})"
                    );
                }
            }
        }
    }

    #[test]
    fn gain_rejects_unknown_pairs() {
        let net = star4();
        let lab = Labeling::from_assignments(&[0; 4], &[true; 4], &net).unwrap();
        assert!(matches!(
            quality_gain(&lab, &net, 0, 5, true),
            Err(Error::UnknownPair(5))
        ));
    }

    #[test]
    fn detect_finds_the_star_optimum() {
        let (lab, stats) = detect_kmer_with_stats(&star4(), 10, 3).unwrap();
        assert_eq!(lab.q_value(), 1.5);
        assert_eq!(lab.pair_count(), 1);
        assert!(lab.is_core(0));
        assert!(!lab.is_core(1));
        assert!(stats.min_commit_gain.unwrap() > 0.0);
    }

    #[test]
    fn detect_recovers_two_disjoint_planted_pairs() {
        let (net, want_pairs, want_core) = two_planted_pairs();
        let want = Labeling::from_assignments(&want_pairs, &want_core, &net).unwrap();
        let got = detect_kmer(&net, 10, 11).unwrap();
        assert_eq!(got.pair_count(), 2);
        assert_eq!(got.pairs(), want.pairs());
        assert_eq!(got.coreness(), want.coreness());
        assert_eq!(got.q_value(), want.q_value());
    }

    #[test]
    fn canonical_pair_one_is_the_largest() {
        let (net, want_pairs, want_core) = two_planted_pairs();
        let lab = Labeling::from_assignments(&want_pairs, &want_core, &net).unwrap();
        assert_eq!(lab.members(1).len(), 10);
        assert_eq!(lab.members(2).len(), 8);
        assert_eq!(lab.n_core(1), 3);
        assert_eq!(lab.n_periphery(1), 7);
    }

    #[test]
    fn detect_is_deterministic_per_seed() {
        let net = sample_er(25, 80, 9).unwrap();
        let a = detect_kmer(&net, 10, 4).unwrap();
        let b = detect_kmer(&net, 10, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn detected_labelings_are_single_move_optimal() {
        let net = sample_er(16, 40, 21).unwrap();
        let lab = detect_kmer(&net, 5, 13).unwrap();
        for v in 0..16usize {
            let mut targets: Vec<u32> = net
                .neighbors(v)
                .iter()
                .map(|&u| lab.pair_of(u as usize))
                .collect();
            targets.push(lab.pair_of(v));
            targets.dedup();
            for b in targets {
                for y in [true, false] {
                    let gain = quality_gain(&lab, &net, v, b, y).unwrap();
                    assert!(
                        gain <= 1e-12,
                        "improving move left: node {v} -> ({b}, {y}), gain {gain}"
                    );
                }
            }
        }
    }

    #[test]
    fn inter_pair_edges_at_full_density_merge_the_pairs() {
        let (net, _, _) = two_planted_pairs();
        // Add every edge between the two planted pairs.
        let mut edges: Vec<(usize, usize)> = net.edges().collect();
        for a in 0..10 {
            for b in 10..18 {
                edges.push((a, b));
            }
        }
        let ids = (0..18).map(|i| format!("b{i:02}")).collect();
        let merged_net = Network::with_nodes(ids, &edges).unwrap();
        let lab = detect_kmer(&merged_net, 10, 2).unwrap();
        let pair_of_first_core = lab.pair_of(0);
        assert_eq!(
            lab.pair_of(10),
            pair_of_first_core,
            "planted cores should share a pair once the cut is saturated"
        );
    }

    #[test]
    fn significance_flags_round_trip() {
        let net = star4();
        let lab = Labeling::from_assignments(&[0; 4], &[true, false, false, false], &net).unwrap();
        assert!(lab.significance().is_none());
        assert!(lab.pair_significant(1).is_none());
        let flagged = lab.with_significance(vec![true; 4]).unwrap();
        assert_eq!(flagged.pair_significant(1), Some(true));
        assert!(lab.with_significance(vec![true; 3]).is_err());
    }

    #[test]
    fn labelings_must_cover_the_network() {
        let net = star4();
        assert!(matches!(
            Labeling::from_assignments(&[0, 0, 0], &[true; 3], &net),
            Err(Error::LabelingMismatch(_))
        ));
    }
}
