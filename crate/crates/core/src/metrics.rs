//! Descriptive metrics over detected labelings: within-pair block
//! densities, structure classification, core-membership stability, node
//! attribute composition, and group-to-group flow tables between windows.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::kmer::Labeling;

/// Edge densities of the three blocks a core-periphery pair induces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockDensities {
    pub k: u32,
    pub n_core: usize,
    pub n_periphery: usize,
    pub rho_cc: f64,
    pub rho_cp: f64,
    pub rho_pp: f64,
}

/// Shape of one pair judged from its block densities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureClass {
    /// Dense core, intermediate core-periphery block, sparse periphery.
    Standard,
    /// Core-periphery edges dominate core-core edges.
    BipartiteLike,
    Other,
}

impl StructureClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            StructureClass::Standard => "standard",
            StructureClass::BipartiteLike => "bipartite-like",
            StructureClass::Other => "other",
        }
    }
}

impl std::fmt::Display for StructureClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn pair_members_checked(lab: &Labeling, net: &Network, k: u32) -> Result<Vec<usize>> {
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

/// Count edges of pair `k` falling in the core-core, core-periphery, and
/// periphery-periphery blocks, and divide by the block sizes. A block with
/// no dyads has density 0 by convention.
pub fn block_densities(lab: &Labeling, net: &Network, k: u32) -> Result<BlockDensities> {
    let members = pair_members_checked(lab, net, k)?;
    let n_core = members.iter().filter(|&&v| lab.is_core(v)).count();
    let n_periphery = members.len() - n_core;

    let (mut cc, mut cp, mut pp) = (0u64, 0u64, 0u64);
    for (i, j) in net.edges() {
        if lab.pair_of(i) != k || lab.pair_of(j) != k {
            continue;
        }
        match (lab.is_core(i), lab.is_core(j)) {
            (true, true) => cc += 1,
            (false, false) => pp += 1,
            _ => cp += 1,
        }
    }
    let ratio = |count: u64, dyads: u64| if dyads == 0 { 0.0 } else { count as f64 / dyads as f64 };
    let pairs_of = |n: usize| (n as u64) * (n as u64).saturating_sub(1) / 2;
    Ok(BlockDensities {
        k,
        n_core,
        n_periphery,
        rho_cc: ratio(cc, pairs_of(n_core)),
        rho_cp: ratio(cp, n_core as u64 * n_periphery as u64),
        rho_pp: ratio(pp, pairs_of(n_periphery)),
    })
}

/// Classify a pair: `standard` when densities strictly decrease from the
/// core block outward, `bipartite-like` when the cross block dominates the
/// core block, `other` when neither strict pattern holds.
pub fn classify_structure(d: &BlockDensities) -> StructureClass {
    if d.rho_cc > d.rho_cp && d.rho_cp > d.rho_pp {
        StructureClass::Standard
    } else if d.rho_cp > d.rho_cc {
        StructureClass::BipartiteLike
    } else {
        StructureClass::Other
    }
}

/// Jaccard overlap `|A ∩ B| / |A ∪ B|` of two node-id sets.
pub fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> Result<f64> {
    if a.is_empty() && b.is_empty() {
        return Err(Error::EmptySets);
    }
    let shared = a.intersection(b).count();
    let union = a.len() + b.len() - shared;
    Ok(shared as f64 / union as f64)
}

/// Node ids of the main pair's core (pair 1, the largest by construction).
pub fn main_core_ids(lab: &Labeling, net: &Network) -> Result<BTreeSet<String>> {
    let members = pair_members_checked(lab, net, 1)?;
    Ok(members
        .into_iter()
        .filter(|&v| lab.is_core(v))
        .map(|v| net.node_id(v).to_string())
        .collect())
}

/// Attribute composition of one pair's blocks. A block that has no nodes
/// reports no fractions at all rather than zeros.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttributeFractions {
    pub core: Option<BTreeMap<String, f64>>,
    pub periphery: Option<BTreeMap<String, f64>>,
}

/// Fraction of pair-`k` core and periphery nodes carrying each attribute
/// value seen in the pair. Every value seen anywhere in the pair appears in
/// both present blocks, so the two maps share one key set.
pub fn attribute_fractions(lab: &Labeling, net: &Network, k: u32) -> Result<AttributeFractions> {
    let members = pair_members_checked(lab, net, k)?;
    let missing: Vec<String> = members
        .iter()
        .filter(|&&v| net.attribute(v).is_none())
        .map(|&v| net.node_id(v).to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingAttributes(missing));
    }

    let values: BTreeSet<String> = members
        .iter()
        .map(|&v| net.attribute(v).expect("checked above").to_string())
        .collect();
    let block_fractions = |core_block: bool| -> Option<BTreeMap<String, f64>> {
        let block: Vec<&str> = members
            .iter()
            .filter(|&&v| lab.is_core(v) == core_block)
            .map(|&v| net.attribute(v).expect("checked above"))
            .collect();
        if block.is_empty() {
            return None;
        }
        Some(
            values
                .iter()
                .map(|value| {
                    let count = block.iter().filter(|&&a| a == value).count();
                    (value.clone(), count as f64 / block.len() as f64)
                })
                .collect(),
        )
    };
    Ok(AttributeFractions { core: block_fractions(true), periphery: block_fractions(false) })
}

/// One row of a flow table: how many nodes moved between two groups across
/// consecutive windows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowRow {
    pub group_from: String,
    pub group_to: String,
    pub count: usize,
}

/// Sort rank of a group label: significant pair groups first (by pair, core
/// before periphery), then residual, then inactive.
fn group_rank(label: &str) -> (u8, u32, u8) {
    match label {
        "residual" => (1, 0, 0),
        "inactive" => (2, 0, 0),
        _ => {
            let side = if label.starts_with('c') { 0 } else { 1 };
            let k: u32 = label[1..].parse().expect("group labels are c<k>/p<k>");
            (0, k, side)
        }
    }
}

fn group_of(id: &str, lab: &Labeling, net: &Network) -> String {
    match net.node_index(id) {
        None => "inactive".to_string(),
        Some(v) => {
            let flags = lab.significance().expect("checked by alluvial_flows");
            if flags[v] {
                let side = if lab.is_core(v) { 'c' } else { 'p' };
                format!("{side}{}", lab.pair_of(v))
            } else {
                "residual".to_string()
            }
        }
    }
}

/// Count node movements between the groups of two windows' labelings.
///
/// Groups are `c<k>`/`p<k>` for members of significant pairs, `residual`
/// for members of insignificant or untestable pairs, and `inactive` for
/// nodes present in only one of the two networks. Both labelings must carry
/// significance flags.
pub fn alluvial_flows(
    lab_a: &Labeling,
    net_a: &Network,
    lab_b: &Labeling,
    net_b: &Network,
) -> Result<Vec<FlowRow>> {
    for (lab, net) in [(lab_a, net_a), (lab_b, net_b)] {
        if lab.node_count() != net.node_count() {
            return Err(Error::LabelingMismatch(format!(
                "labeling covers {} nodes, network has {}",
                lab.node_count(),
                net.node_count()
            )));
        }
        if lab.significance().is_none() {
            return Err(Error::MissingSignificance);
        }
    }
    let universe: BTreeSet<&str> = net_a.node_ids().iter().chain(net_b.node_ids()).map(String::as_str).collect();
    let mut counts: HashMap<(String, String), usize> = HashMap::new();
    for id in universe {
        let from = group_of(id, lab_a, net_a);
        let to = group_of(id, lab_b, net_b);
        *counts.entry((from, to)).or_insert(0) += 1;
    }
    let mut rows: Vec<FlowRow> = counts
        .into_iter()
        .map(|((group_from, group_to), count)| FlowRow { group_from, group_to, count })
        .collect();
    rows.sort_by(|a, b| {
        (group_rank(&a.group_from), group_rank(&a.group_to))
            .cmp(&(group_rank(&b.group_from), group_rank(&b.group_to)))
    });
    Ok(rows)
}
