//! Single-pair core-periphery detection by correlation with an idealized
//! pattern.
//!
//! An assignment splits the nodes into a core set and a periphery set. Its
//! idealized matrix has a 1 for every dyad touching at least one core node
//! and a 0 for periphery-periphery dyads. Quality is the Pearson correlation
//! between the observed adjacency and that pattern over the `n (n - 1) / 2`
//! dyads, so it lies in `[-1, 1]` and hits `1` exactly when the network *is*
//! its idealized pattern.
//!
//! The correlation is undefined when either vector is constant: complete or
//! edgeless networks, assignments with no core, and assignments with fewer
//! than two periphery nodes (no periphery-periphery dyad exists, so the
//! pattern is all ones). Those assignments are excluded from the search.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Network;

/// A single core/periphery split with its correlation quality.
#[derive(Debug, Clone)]
pub struct SinglePairAssignment {
    /// `true` = core, indexed by node.
    pub coreness: Vec<bool>,
    /// Correlation with the idealized pattern; `None` when undefined
    /// (possible for cost-based detectors that may return degenerate splits).
    pub quality: Option<f64>,
}

impl SinglePairAssignment {
    pub fn core_size(&self) -> usize {
        self.coreness.iter().filter(|&&c| c).count()
    }
}

/// Pearson correlation between two binary dyad vectors given their counts:
/// `t` dyads total, `m_a`/`m_b` ones in each vector, `s_ab` shared ones.
fn pearson_from_counts(t: u64, m_a: u64, m_b: u64, s_ab: u64) -> Result<f64> {
    if m_a == 0 || m_a == t {
        return Err(Error::UndefinedCorrelation("constant adjacency"));
    }
    if m_b == 0 || m_b == t {
        return Err(Error::UndefinedCorrelation("constant idealized matrix"));
    }
    // Exact identity / complement hits deserve exact +-1.
    if m_a == m_b && s_ab == m_a {
        return Ok(1.0);
    }
    if s_ab == 0 && m_a + m_b == t {
        return Ok(-1.0);
    }
    let num = (s_ab as i128) * (t as i128) - (m_a as i128) * (m_b as i128);
    let da = ((m_a * (t - m_a)) as f64).sqrt();
    let db = ((m_b * (t - m_b)) as f64).sqrt();
    Ok(num as f64 / (da * db))
}

fn quality_from_state(t: u64, m: u64, periphery: u64, m_pp: u64) -> Result<f64> {
    // Dyads touching a core node: all but the periphery-periphery ones.
    let m_b = t - periphery * periphery.saturating_sub(1) / 2;
    let s_ab = m - m_pp;
    pearson_from_counts(t, m, m_b, s_ab)
}

/// Correlation quality of a core/periphery assignment.
pub fn be_quality(coreness: &[bool], net: &Network) -> Result<f64> {
    let n = net.node_count();
    if coreness.len() != n {
        return Err(Error::LabelingMismatch(format!(
            "assignment covers {} nodes, network has {n}",
            coreness.len()
        )));
    }
    if n < 3 {
        return Err(Error::TooFewNodes { needed: 3, actual: n });
    }
    let periphery = coreness.iter().filter(|&&c| !c).count() as u64;
    let m_pp = net
        .edges()
        .filter(|&(i, j)| !coreness[i] && !coreness[j])
        .count() as u64;
    quality_from_state(net.dyad_count(), net.edge_count() as u64, periphery, m_pp)
}

/// Default restart budget: generous on small networks, lean on large ones.
pub fn default_restarts(n: usize) -> usize {
    if n <= 500 {
        50
    } else {
        10
    }
}

struct Search<'a> {
    net: &'a Network,
    t: u64,
    m: u64,
    core: Vec<bool>,
    periphery: u64,
    m_pp: u64,
    quality: f64,
}

impl<'a> Search<'a> {
    fn new(net: &'a Network, core: Vec<bool>) -> Search<'a> {
        let periphery = core.iter().filter(|&&c| !c).count() as u64;
        let m_pp = net
            .edges()
            .filter(|&(i, j)| !core[i] && !core[j])
            .count() as u64;
        let t = net.dyad_count();
        let m = net.edge_count() as u64;
        let quality = quality_from_state(t, m, periphery, m_pp).expect("validated state");
        Search { net, t, m, core, periphery, m_pp, quality }
    }

    /// Quality after flipping `v`, or `None` when the flip leaves the valid
    /// region (no core, or fewer than two periphery nodes).
    fn flip_quality(&self, v: usize) -> Option<f64> {
        let n = self.core.len() as u64;
        let peri_links = self
            .net
            .neighbors(v)
            .iter()
            .filter(|&&u| !self.core[u as usize])
            .count() as u64;
        let (new_periphery, new_m_pp) = if self.core[v] {
            (self.periphery + 1, self.m_pp + peri_links)
        } else {
            (self.periphery - 1, self.m_pp - peri_links)
        };
        if new_periphery < 2 || new_periphery > n - 1 {
            return None;
        }
        quality_from_state(self.t, self.m, new_periphery, new_m_pp).ok()
    }

    fn flip(&mut self, v: usize, quality: f64) {
        let peri_links = self
            .net
            .neighbors(v)
            .iter()
            .filter(|&&u| !self.core[u as usize])
            .count() as u64;
        if self.core[v] {
            self.periphery += 1;
            self.m_pp += peri_links;
        } else {
            self.periphery -= 1;
            self.m_pp -= peri_links;
        }
        self.core[v] = !self.core[v];
        self.quality = quality;
    }

    /// Steepest-ascent single flips until no flip strictly improves quality.
    /// Ties among best flips go to the lowest node index.
    fn ascend(&mut self) {
        loop {
            let mut best: Option<(usize, f64)> = None;
            for v in 0..self.core.len() {
                if let Some(q) = self.flip_quality(v) {
                    if q > self.quality && best.is_none_or(|(_, bq)| q > bq) {
                        best = Some((v, q));
                    }
                }
            }
            match best {
                Some((v, q)) => self.flip(v, q),
                None => return,
            }
        }
    }
}

/// Coreness vector marking the top `ceil(n / 4)` nodes by degree (ties by
/// index) as core.
fn degree_threshold_start(net: &Network) -> Vec<bool> {
    let n = net.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(net.degree(v)), v));
    let k = n.div_ceil(4);
    let mut core = vec![false; n];
    for &v in order.iter().take(k) {
        core[v] = true;
    }
    core
}

/// Detect the best single core-periphery pair by randomized steepest ascent.
///
/// Runs `restarts` searches from random assignments (each node core with
/// probability 1/2, re-drawn while degenerate) plus one search seeded from
/// the degree-threshold assignment, so the result never scores below that
/// baseline. The best quality wins; ties go to the earliest start. Restart
/// `i` draws from a stream seeded with `seed + i`.
pub fn detect_be(net: &Network, restarts: usize, seed: u64) -> Result<SinglePairAssignment> {
    let n = net.node_count();
    if n < 3 {
        return Err(Error::DegenerateNetwork { reason: "too few nodes" });
    }
    if net.is_complete() || net.has_no_edges() {
        return Err(Error::DegenerateNetwork { reason: "constant adjacency" });
    }

    fn consider<'a>(search: Search<'a>, best: &mut Option<Search<'a>>) {
        if best.as_ref().is_none_or(|b| search.quality > b.quality) {
            *best = Some(search);
        }
    }

    let mut best: Option<Search> = None;
    for restart in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart as u64));
        let core = loop {
            let core: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let peripheries = core.iter().filter(|&&c| !c).count();
            if peripheries >= 2 && peripheries < n {
                break core;
            }
        };
        let mut search = Search::new(net, core);
        search.ascend();
        consider(search, &mut best);
    }

    let mut baseline = Search::new(net, degree_threshold_start(net));
    baseline.ascend();
    consider(baseline, &mut best);

    let best = best.expect("at least the baseline start ran");
    Ok(SinglePairAssignment {
        coreness: best.core,
        quality: Some(best.quality),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample_er;

    fn star4() -> Network {
        Network::from_edges([("c", "l1"), ("c", "l2"), ("c", "l3")]).unwrap()
    }

    #[test]
    fn star_with_center_core_is_a_perfect_match() {
        let q = be_quality(&[true, false, false, false], &star4()).unwrap();
        assert_eq!(q, 1.0);
    }

    #[test]
    fn star_with_a_leaf_core_scores_minus_one_third() {
        let q = be_quality(&[false, true, false, false], &star4()).unwrap();
        assert!((q - (-1.0 / 3.0)).abs() < 1e-15, "q = {q}");
    }

    #[test]
    fn complement_of_the_pattern_scores_minus_one() {
        // Triangle on the leaves, center isolated: the exact off-diagonal
        // complement of the star's idealized pattern.
        let ids = vec!["c".into(), "l1".into(), "l2".into(), "l3".into()];
        let net = Network::with_nodes(ids, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let q = be_quality(&[true, false, false, false], &net).unwrap();
        assert_eq!(q, -1.0);
    }

    #[test]
    fn all_core_and_all_periphery_are_undefined() {
        let net = star4();
        assert!(matches!(
            be_quality(&[true; 4], &net),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert!(matches!(
            be_quality(&[false; 4], &net),
            Err(Error::UndefinedCorrelation(_))
        ));
    }

    #[test]
    fn single_periphery_has_a_constant_pattern() {
        let net = sample_er(6, 8, 3).unwrap();
        let mut core = vec![true; 6];
        core[2] = false;
        assert!(matches!(
            be_quality(&core, &net),
            Err(Error::UndefinedCorrelation("constant idealized matrix"))
        ));
    }

    #[test]
    fn constant_adjacency_is_undefined() {
        let complete = sample_er(4, 6, 0).unwrap();
        assert!(matches!(
            be_quality(&[true, false, false, false], &complete),
            Err(Error::UndefinedCorrelation("constant adjacency"))
        ));
    }

    #[test]
    fn detect_recovers_the_star_center() {
        let result = detect_be(&star4(), 10, 1).unwrap();
        assert_eq!(result.coreness, vec![true, false, false, false]);
        assert_eq!(result.quality, Some(1.0));
    }

    #[test]
    fn detect_recovers_a_planted_ideal_pair() {
        // 3 cores fully tied to each other and to all 7 peripheries.
        let mut edges = Vec::new();
        for i in 0..3usize {
            for j in (i + 1)..3 {
                edges.push((i, j));
            }
            for p in 3..10 {
                edges.push((i, p));
            }
        }
        let ids = (0..10).map(|i| format!("b{i}")).collect();
        let net = Network::with_nodes(ids, &edges).unwrap();
        let result = detect_be(&net, 20, 42).unwrap();
        let want: Vec<bool> = (0..10).map(|i| i < 3).collect();
        assert_eq!(result.coreness, want);
        assert_eq!(result.quality, Some(1.0));
    }

    #[test]
    fn detect_rejects_degenerate_networks() {
        let complete = sample_er(5, 10, 0).unwrap();
        assert!(matches!(
            detect_be(&complete, 5, 0),
            Err(Error::DegenerateNetwork { reason: "constant adjacency" })
        ));
        let empty = sample_er(5, 0, 0).unwrap();
        assert!(matches!(
            detect_be(&empty, 5, 0),
            Err(Error::DegenerateNetwork { reason: "constant adjacency" })
        ));
        let tiny = Network::from_edges([("a", "b")]).unwrap();
        assert!(matches!(
            detect_be(&tiny, 5, 0),
            Err(Error::DegenerateNetwork { reason: "too few nodes" })
        ));
    }

    #[test]
    fn detect_is_deterministic_per_seed() {
        let net = sample_er(30, 90, 11).unwrap();
        let a = detect_be(&net, 10, 5).unwrap();
        let b = detect_be(&net, 10, 5).unwrap();
        assert_eq!(a.coreness, b.coreness);
        assert_eq!(a.quality, b.quality);
    }

    #[test]
    fn detect_never_loses_to_the_degree_threshold_baseline() {
        for seed in 0..20 {
            let net = sample_er(24, 70, seed).unwrap();
            let baseline_q = be_quality(&degree_threshold_start(&net), &net).unwrap();
            let got = detect_be(&net, 3, seed).unwrap().quality.unwrap();
            assert!(
                got >= baseline_q,
                "seed {seed}: {got} < baseline {baseline_q}"
            );
        }
    }

    #[test]
    fn quality_is_invariant_under_node_relabeling() {
        let net = sample_er(12, 30, 2).unwrap();
        let core: Vec<bool> = (0..12).map(|i| i % 3 == 0).collect();
        let q = be_quality(&core, &net).unwrap();

        // Rebuild the same graph with node indices reversed.
        let ids: Vec<String> = (0..12).map(|i| format!("v{}", 11 - i)).collect();
        let edges: Vec<(usize, usize)> = net.edges().map(|(i, j)| (11 - i, 11 - j)).collect();
        let permuted = Network::with_nodes(ids, &edges).unwrap();
        let permuted_core: Vec<bool> = (0..12).map(|i| core[11 - i]).collect();
        let q2 = be_quality(&permuted_core, &permuted).unwrap();
        assert!((q - q2).abs() < 1e-15);
    }

    #[test]
    fn restart_budget_defaults_shrink_for_large_networks() {
        assert_eq!(default_restarts(500), 50);
        assert_eq!(default_restarts(501), 10);
    }
}
