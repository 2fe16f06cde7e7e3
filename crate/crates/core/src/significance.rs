//! Statistical significance of detected core-periphery pairs.
//!
//! Each pair's quality is compared against an empirical null distribution
//! built from uniform random graphs with matched node and edge counts, each
//! scored by the single-pair correlation detector. A pair is significant
//! when its quality strictly exceeds the null's upper quantile at a
//! Sidak-corrected level, so the family-wise error rate stays at the
//! requested `alpha_prime` across all pairs of one labeling. Members of
//! pairs that fail (or cannot take) the test are flagged residual.

use serde::{Deserialize, Serialize};

use crate::be::{be_quality, detect_be};
use crate::error::{Error, Result, UntestableReason};
use crate::graph::{sample_er, Network};
use crate::kmer::Labeling;
use crate::seeds::mix;

/// Restart count for the correlation detector on every null sample.
pub const NULL_DETECT_RESTARTS: usize = 10;

/// Minimum accepted null-sample count.
pub const MIN_SAMPLES: usize = 100;

/// How null graphs are sized, and correspondingly how a pair's observed
/// quality is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullMode {
    /// Null graphs match the node and edge counts of the pair's induced
    /// subgraph; observed quality is computed on that subgraph.
    PairMatched,
    /// Null graphs match the whole network's node and edge counts; observed
    /// quality embeds the pair into the full network with every non-member
    /// treated as periphery.
    FullNetwork,
}

impl NullMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            NullMode::PairMatched => "pair-matched",
            NullMode::FullNetwork => "full-network",
        }
    }
}

impl std::fmt::Display for NullMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for NullMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<NullMode> {
        match s {
            "pair-matched" | "pair" => Ok(NullMode::PairMatched),
            "full-network" | "full" => Ok(NullMode::FullNetwork),
            other => Err(Error::InvalidConfig(format!("unknown null mode `{other}`"))),
        }
    }
}

/// Family-wise corrected per-comparison level: `1 - (1 - a')^(1/C)`.
///
/// Returns `alpha_prime` itself for a single comparison so that the
/// identity case is exact in floating point.
pub fn sidak_alpha(alpha_prime: f64, comparisons: u32) -> Result<f64> {
    if !(alpha_prime > 0.0 && alpha_prime < 1.0) {
        return Err(Error::InvalidAlpha(alpha_prime));
    }
    if comparisons == 0 {
        return Err(Error::NoComparisons);
    }
    if comparisons == 1 {
        return Ok(alpha_prime);
    }
    Ok(1.0 - (1.0 - alpha_prime).powf(1.0 / comparisons as f64))
}

/// Verdict for one pair of a labeling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairVerdict {
    pub k: u32,
    /// Observed quality; absent when the pair is untestable.
    pub q: Option<f64>,
    /// Null-quantile threshold; absent when the pair is untestable.
    pub threshold: Option<f64>,
    pub significant: bool,
    pub n_core: usize,
    pub n_periphery: usize,
    /// Reason code when the pair could not be tested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
}

/// Full outcome of testing every pair of one labeling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignificanceReport {
    pub pairs: Vec<PairVerdict>,
    pub alpha_prime: f64,
    pub corrected_alpha: f64,
    pub samples: usize,
    pub null_mode: NullMode,
    pub seed: u64,
}

/// Tuning knobs for [`test_significance`].
#[derive(Debug, Clone, Copy)]
pub struct SignificanceOptions {
    pub samples: usize,
    pub alpha_prime: f64,
    pub null_mode: NullMode,
    pub seed: u64,
}

impl Default for SignificanceOptions {
    fn default() -> SignificanceOptions {
        SignificanceOptions {
            samples: 1000,
            alpha_prime: 0.05,
            null_mode: NullMode::PairMatched,
            seed: 0,
        }
    }
}

fn check_membership(lab: &Labeling, net: &Network, k: u32) -> Result<Vec<usize>> {
    if lab.node_count() != net.node_count() {
        return Err(Error::LabelingMismatch(format!(
            "labeling covers {} nodes, network has {}",
            lab.node_count(),
            net.node_count()
        )));
    }
    if k == 0 || k > lab.pair_count() {
        return Err(Error::UnknownPair(k));
    }
    Ok(lab.members(k))
}

/// Pair-level preconditions shared by both evaluation modes.
fn check_pair_shape(lab: &Labeling, members: &[usize], k: u32) -> Result<()> {
    if members.len() < 3 {
        return Err(Error::UntestablePair { k, reason: UntestableReason::TooSmall });
    }
    let n_core = members.iter().filter(|&&v| lab.is_core(v)).count();
    if n_core == 0 {
        return Err(Error::UntestablePair { k, reason: UntestableReason::NoCore });
    }
    if n_core == members.len() {
        return Err(Error::UntestablePair { k, reason: UntestableReason::NoPeriphery });
    }
    Ok(())
}

/// Observed quality of pair `k` on its induced subgraph: the correlation
/// between the subgraph's adjacency and the pair's idealized pattern.
pub fn pair_quality(lab: &Labeling, net: &Network, k: u32) -> Result<f64> {
    let members = check_membership(lab, net, k)?;
    check_pair_shape(lab, &members, k)?;
    let sub = net.induced_subgraph(&members)?;
    if sub.has_no_edges() || sub.is_complete() {
        return Err(Error::UntestablePair { k, reason: UntestableReason::ConstantAdjacency });
    }
    let coreness: Vec<bool> = members.iter().map(|&v| lab.is_core(v)).collect();
    if coreness.iter().filter(|&&c| !c).count() == 1 {
        return Err(Error::UntestablePair { k, reason: UntestableReason::SinglePeriphery });
    }
    be_quality(&coreness, &sub)
}

/// Observed quality of pair `k` embedded in the whole network: members keep
/// their coreness, every other node counts as periphery.
pub fn pair_quality_full(lab: &Labeling, net: &Network, k: u32) -> Result<f64> {
    let members = check_membership(lab, net, k)?;
    check_pair_shape(lab, &members, k)?;
    if net.has_no_edges() || net.is_complete() {
        return Err(Error::UntestablePair { k, reason: UntestableReason::ConstantAdjacency });
    }
    let mut coreness = vec![false; net.node_count()];
    let mut n_core = 0usize;
    for &v in &members {
        if lab.is_core(v) {
            coreness[v] = true;
            n_core += 1;
        }
    }
    if net.node_count() - n_core == 1 {
        return Err(Error::UntestablePair { k, reason: UntestableReason::SinglePeriphery });
    }
    be_quality(&coreness, net)
}

/// Empirical strictly-greater quantile threshold: the value a quality must
/// exceed to sit in the top `alpha` fraction of the sorted null sample.
fn quantile_threshold(sorted: &[f64], alpha: f64) -> f64 {
    let s = sorted.len();
    let idx = ((1.0 - alpha) * s as f64).ceil() as usize;
    sorted[idx.clamp(1, s) - 1]
}

/// Null distribution: detector qualities of `samples` uniform (n, m) graphs.
fn null_distribution(n: usize, m: u64, samples: usize, stream: u64) -> Result<Vec<f64>> {
    let mut qualities = Vec::with_capacity(samples);
    for s in 0..samples {
        let sample_seed = mix(stream, s as u64);
        let g = sample_er(n, m, sample_seed)?;
        let found = detect_be(&g, NULL_DETECT_RESTARTS, sample_seed)?;
        qualities.push(found.quality.expect("the correlation detector scores every result"));
    }
    qualities.sort_by(f64::total_cmp);
    Ok(qualities)
}

/// Test every pair of a labeling against matched random-graph nulls.
///
/// Returns the per-pair report and a copy of the labeling with per-node
/// significance flags attached (members of failing or untestable pairs are
/// flagged residual). Deterministic given `(options.seed, options.samples,
/// options.null_mode)`.
pub fn test_significance(
    lab: &Labeling,
    net: &Network,
    options: &SignificanceOptions,
) -> Result<(SignificanceReport, Labeling)> {
    if lab.node_count() != net.node_count() {
        return Err(Error::LabelingMismatch(format!(
            "labeling covers {} nodes, network has {}",
            lab.node_count(),
            net.node_count()
        )));
    }
    if options.samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples { got: options.samples, min: MIN_SAMPLES });
    }
    let c = lab.pair_count();
    let corrected_alpha = sidak_alpha(options.alpha_prime, c)?;

    // Whole-network nulls are shared by every pair; built once, on demand.
    let mut full_null: Option<Vec<f64>> = None;

    let mut pairs = Vec::with_capacity(c as usize);
    for k in 1..=c {
        let members = lab.members(k);
        let n_core = members.iter().filter(|&&v| lab.is_core(v)).count();
        let n_periphery = members.len() - n_core;

        let observed = match options.null_mode {
            NullMode::PairMatched => pair_quality(lab, net, k),
            NullMode::FullNetwork => pair_quality_full(lab, net, k),
        };
        let verdict = match observed {
            Ok(q) => {
                let threshold = match options.null_mode {
                    NullMode::PairMatched => {
                        let sub = net.induced_subgraph(&members)?;
                        let null = null_distribution(
                            sub.node_count(),
                            sub.edge_count() as u64,
                            options.samples,
                            mix(options.seed, k as u64),
                        )?;
                        quantile_threshold(&null, corrected_alpha)
                    }
                    NullMode::FullNetwork => {
                        if full_null.is_none() {
                            full_null = Some(null_distribution(
                                net.node_count(),
                                net.edge_count() as u64,
                                options.samples,
                                mix(options.seed, 0),
                            )?);
                        }
                        quantile_threshold(full_null.as_ref().unwrap(), corrected_alpha)
                    }
                };
                PairVerdict {
                    k,
                    q: Some(q),
                    threshold: Some(threshold),
                    significant: q > threshold,
                    n_core,
                    n_periphery,
                    reason: None,
                }
            }
            Err(Error::UntestablePair { reason, .. }) => PairVerdict {
                k,
                q: None,
                threshold: None,
                significant: false,
                n_core,
                n_periphery,
                reason: Some(reason.code()),
            },
            Err(other) => return Err(other),
        };
        pairs.push(verdict);
    }

    let flags: Vec<bool> = (0..lab.node_count())
        .map(|v| pairs[lab.pair_of(v) as usize - 1].significant)
        .collect();
    let flagged = lab.with_significance(flags)?;
    let report = SignificanceReport {
        pairs,
        alpha_prime: options.alpha_prime,
        corrected_alpha,
        samples: options.samples,
        null_mode: options.null_mode,
        seed: options.seed,
    };
    Ok((report, flagged))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Network;

    fn idealized_pair_network() -> (Network, Labeling) {
        // One idealized 8-node pair (2 cores, 6 peripheries: full core-core
        // and core-periphery blocks, empty periphery block) plus an
        // unrelated sparse 6-node pair so the labeling has two pairs.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        edges.push((0, 1));
        for p in 2..8 {
            edges.push((0, p));
            edges.push((1, p));
        }
        edges.extend([(8, 9), (9, 10), (10, 11), (11, 12), (12, 13), (13, 8)]);
        let ids = (0..14).map(|i| format!("n{i:02}")).collect();
        let net = Network::with_nodes(ids, &edges).unwrap();
        let pairs: Vec<u32> = (0..14).map(|i| if i < 8 { 1 } else { 2 }).collect();
        let core: Vec<bool> = (0..14).map(|i| i < 2 || i == 8).collect();
        let lab = Labeling::from_assignments(&pairs, &core, &net).unwrap();
        (net, lab)
    }

    #[test]
    fn sidak_is_exact_for_one_comparison() {
        assert_eq!(sidak_alpha(0.05, 1).unwrap(), 0.05);
        assert_eq!(sidak_alpha(0.3, 1).unwrap(), 0.3);
    }

    #[test]
    fn sidak_four_comparisons_matches_closed_form() {
        let got = sidak_alpha(0.05, 4).unwrap();
        assert!((got - 0.012741).abs() < 1e-6, "got {got}");
    }

    #[test]
    fn sidak_shrinks_toward_zero() {
        assert!(sidak_alpha(1e-9, 4).unwrap() < 1e-9);
        let mut last = 1.0;
        for c in [1u32, 2, 4, 8, 64] {
            let a = sidak_alpha(0.05, c).unwrap();
            assert!(a < last || (c == 1 && a == 0.05));
            last = a;
        }
    }

    #[test]
    fn sidak_rejects_bad_inputs() {
        assert!(matches!(sidak_alpha(0.0, 3), Err(Error::InvalidAlpha(_))));
        assert!(matches!(sidak_alpha(1.0, 3), Err(Error::InvalidAlpha(_))));
        assert!(matches!(sidak_alpha(0.05, 0), Err(Error::NoComparisons)));
    }

    #[test]
    fn star_pair_scores_one() {
        let net = Network::from_edges([("c", "l1"), ("c", "l2"), ("c", "l3")]).unwrap();
        let lab =
            Labeling::from_assignments(&[0; 4], &[true, false, false, false], &net).unwrap();
        assert_eq!(pair_quality(&lab, &net, 1).unwrap(), 1.0);
    }

    #[test]
    fn untestable_reasons_surface_in_order() {
        // Pair 2 has two nodes; pair 1's induced subgraph is complete.
        let net = Network::with_nodes(
            (0..5).map(|i| format!("n{i}")).collect(),
            &[(0, 1), (0, 2), (1, 2), (3, 4)],
        )
        .unwrap();
        let lab = Labeling::from_assignments(
            &[1, 1, 1, 2, 2],
            &[true, false, false, true, false],
            &net,
        )
        .unwrap();
        assert!(matches!(
            pair_quality(&lab, &net, 1),
            Err(Error::UntestablePair { reason: UntestableReason::ConstantAdjacency, .. })
        ));
        assert!(matches!(
            pair_quality(&lab, &net, 2),
            Err(Error::UntestablePair { reason: UntestableReason::TooSmall, .. })
        ));
    }

    #[test]
    fn single_periphery_pairs_are_untestable() {
        let net = Network::with_nodes(
            (0..4).map(|i| format!("n{i}")).collect(),
            &[(0, 1), (1, 2), (2, 3)],
        )
        .unwrap();
        let lab =
            Labeling::from_assignments(&[0; 4], &[true, true, true, false], &net).unwrap();
        assert!(matches!(
            pair_quality(&lab, &net, 1),
            Err(Error::UntestablePair { reason: UntestableReason::SinglePeriphery, .. })
        ));
    }

    #[test]
    fn full_network_embedding_treats_outsiders_as_periphery() {
        let (net, lab) = idealized_pair_network();
        // Pair 1 is idealized inside its own block, but the embedding sees
        // the second component's edges as periphery-periphery violations,
        // so the whole-network quality drops below the induced one.
        let induced = pair_quality(&lab, &net, 1).unwrap();
        let embedded = pair_quality_full(&lab, &net, 1).unwrap();
        assert_eq!(induced, 1.0);
        assert!(embedded < induced);
        assert!(embedded > 0.0);
    }

    #[test]
    fn idealized_pair_is_significant() {
        let (net, lab) = idealized_pair_network();
        let options = SignificanceOptions { samples: 200, seed: 7, ..Default::default() };
        let (report, flagged) = test_significance(&lab, &net, &options).unwrap();
        assert_eq!(report.pairs.len(), 2);
        let first = &report.pairs[0];
        assert_eq!(first.q, Some(1.0));
        assert!(first.significant, "threshold was {:?}", first.threshold);
        assert!(first.threshold.unwrap() < 1.0);
        assert_eq!((first.n_core, first.n_periphery), (2, 6));
        assert_eq!(flagged.pair_significant(1), Some(true));
        // Every member of pair 1 carries the flag; the ring pair's members
        // carry whatever verdict pair 2 got.
        let flags = flagged.significance().unwrap();
        assert!(flags[..8].iter().all(|&f| f));
        assert!(flags[8..].iter().all(|&f| f == report.pairs[1].significant));
    }

    #[test]
    fn reports_are_deterministic() {
        let (net, lab) = idealized_pair_network();
        let options = SignificanceOptions { samples: 120, seed: 3, ..Default::default() };
        let a = test_significance(&lab, &net, &options).unwrap();
        let b = test_significance(&lab, &net, &options).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn raising_alpha_never_revokes_significance() {
        let (net, lab) = idealized_pair_network();
        let tight = SignificanceOptions {
            samples: 150,
            alpha_prime: 0.01,
            seed: 11,
            ..Default::default()
        };
        let loose = SignificanceOptions { alpha_prime: 0.3, ..tight };
        let (report_tight, _) = test_significance(&lab, &net, &tight).unwrap();
        let (report_loose, _) = test_significance(&lab, &net, &loose).unwrap();
        for (t, l) in report_tight.pairs.iter().zip(&report_loose.pairs) {
            if t.significant {
                assert!(l.significant, "pair {} lost significance at looser alpha", t.k);
            }
        }
    }

    #[test]
    fn corrected_alpha_is_recorded_and_bounded() {
        let (net, lab) = idealized_pair_network();
        let options = SignificanceOptions { samples: 100, seed: 5, ..Default::default() };
        let (report, _) = test_significance(&lab, &net, &options).unwrap();
        assert_eq!(report.corrected_alpha, sidak_alpha(0.05, 2).unwrap());
        assert!(report.corrected_alpha < report.alpha_prime);
        assert_eq!(report.null_mode, NullMode::PairMatched);
    }

    #[test]
    fn sample_floor_is_enforced() {
        let (net, lab) = idealized_pair_network();
        let options = SignificanceOptions { samples: 99, ..Default::default() };
        assert!(matches!(
            test_significance(&lab, &net, &options),
            Err(Error::TooFewSamples { got: 99, min: 100 })
        ));
    }

    #[test]
    fn full_network_mode_shares_one_null() {
        let (net, lab) = idealized_pair_network();
        let options = SignificanceOptions {
            samples: 100,
            null_mode: NullMode::FullNetwork,
            seed: 2,
            ..Default::default()
        };
        let (report, _) = test_significance(&lab, &net, &options).unwrap();
        let thresholds: Vec<Option<f64>> = report.pairs.iter().map(|p| p.threshold).collect();
        // Both pairs are testable here and must see the same threshold.
        assert_eq!(thresholds[0], thresholds[1]);
        assert!(thresholds[0].is_some());
    }

    #[test]
    fn null_mode_names_round_trip() {
        for mode in [NullMode::PairMatched, NullMode::FullNetwork] {
            let s = mode.to_string();
            assert_eq!(s.parse::<NullMode>().unwrap(), mode);
            let json = serde_json::to_string(&mode).unwrap();
            assert_eq!(json, format!("\"{s}\""));
        }
    }
}
