//! Single-pair detection by minimizing block residuals over degree cuts.
//!
//! The cost of a core/periphery split counts the missing edges inside the
//! core block plus the present edges inside the periphery block; dyads
//! between the blocks are free. The detector orders nodes by degree
//! (descending, ties by index) and evaluates every prefix cut `k = 0..=n`,
//! returning the cheapest; among equal-cost cuts the smallest core wins.

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::be::{be_quality, SinglePairAssignment};

/// Residual cost of a split: absent core-core edges + present
/// periphery-periphery edges.
pub fn minres_cost(coreness: &[bool], net: &Network) -> Result<usize> {
    if coreness.len() != net.node_count() {
        return Err(Error::LabelingMismatch(format!(
            "assignment covers {} nodes, network has {}",
            coreness.len(),
            net.node_count()
        )));
    }
    let n_core = coreness.iter().filter(|&&c| c).count();
    let mut m_cc = 0usize;
    let mut m_pp = 0usize;
    for (i, j) in net.edges() {
        match (coreness[i], coreness[j]) {
            (true, true) => m_cc += 1,
            (false, false) => m_pp += 1,
            _ => {}
        }
    }
    Ok(n_core * n_core.saturating_sub(1) / 2 - m_cc + m_pp)
}

/// Find the cheapest degree-prefix split.
///
/// Degenerate all-core / all-periphery answers are legitimate here; the
/// `quality` field carries the correlation score only when it is defined for
/// the winning split.
pub fn detect_minres(net: &Network) -> Result<SinglePairAssignment> {
    let n = net.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { needed: 2, actual: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(net.degree(v)), v));

    // Walk k = 0..=n, moving order[k] from periphery to core and updating the
    // cost incrementally: the node creates k new core dyads (absent ones cost)
    // and releases its edges into the remaining periphery.
    let mut in_core = vec![false; n];
    let mut cost = net.edge_count() as i64; // k = 0: every edge lies in the periphery
    let (mut best_cost, mut best_k) = (cost, 0usize);
    for (k, &v) in order.iter().enumerate() {
        let core_links = net
            .neighbors(v)
            .iter()
            .filter(|&&u| in_core[u as usize])
            .count() as i64;
        let peri_links = net.degree(v) as i64 - core_links;
        cost += k as i64 - core_links - peri_links;
        in_core[v] = true;
        if cost < best_cost {
            best_cost = cost;
            best_k = k + 1;
        }
    }

    let mut coreness = vec![false; n];
    for &v in order.iter().take(best_k) {
        coreness[v] = true;
    }
    let quality = be_quality(&coreness, net).ok();
    Ok(SinglePairAssignment { coreness, quality })
}
