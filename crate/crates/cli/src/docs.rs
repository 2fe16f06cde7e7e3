//! On-disk JSON documents and their conversions to and from library types.

use cpdetect::{Labeling, Network, SignificanceReport};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA: u32 = 1;

/// Per-window labeling file (`<stem>.labeling.json`).
#[derive(Debug, Serialize, Deserialize)]
pub struct LabelingDoc {
    pub schema: u32,
    pub window: String,
    pub algorithm: String,
    pub seed: u64,
    /// Detector objective: correlation for single-pair detectors, multi-pair
    /// quality for the label-switching detector and the exhaustive oracle.
    /// Null when the detector could not score its split.
    pub q_value: Option<f64>,
    pub nodes: Vec<NodeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    pub pair: u32,
    pub core: bool,
    /// Null until a significance test ran.
    pub significant: Option<bool>,
}

/// Per-window skip record (`<stem>.skip.json`) for degenerate networks.
#[derive(Debug, Serialize, Deserialize)]
pub struct SkipDoc {
    pub schema: u32,
    pub window: String,
    pub algorithm: String,
    pub reason: String,
}

/// Per-window significance report file (`<stem>.significance.json`).
#[derive(Debug, Serialize)]
pub struct SignificanceDoc {
    pub schema: u32,
    pub window: String,
    pub report: SignificanceReport,
}

/// Render a labeling as its document, nodes sorted by id.
pub fn labeling_doc(
    window: &str,
    algorithm: &str,
    seed: u64,
    q_value: Option<f64>,
    lab: &Labeling,
    net: &Network,
) -> LabelingDoc {
    let flags = lab.significance();
    let mut nodes: Vec<NodeDoc> = (0..lab.node_count())
        .map(|v| NodeDoc {
            id: net.node_id(v).to_string(),
            pair: lab.pair_of(v),
            core: lab.is_core(v),
            significant: flags.map(|f| f[v]),
        })
        .collect();
    nodes.sort_by(|a, b| a.id.cmp(&b.id));
    LabelingDoc {
        schema: SCHEMA,
        window: window.to_string(),
        algorithm: algorithm.to_string(),
        seed,
        q_value,
        nodes,
    }
}

/// Rebuild the labeling a document describes over the given network.
///
/// The document must cover exactly the network's nodes; significance flags
/// must be uniformly present or uniformly absent.
pub fn doc_to_labeling(doc: &LabelingDoc, net: &Network) -> CliResult<Labeling> {
    if doc.schema != SCHEMA {
        return Err(CliError::Parse(format!(
            "unsupported labeling schema {} (expected {SCHEMA})",
            doc.schema
        )));
    }
    let n = net.node_count();
    if doc.nodes.len() != n {
        return Err(CliError::Parse(format!(
            "labeling for window `{}` covers {} nodes, network has {n}",
            doc.window,
            doc.nodes.len()
        )));
    }
    let mut pairs = vec![0u32; n];
    let mut core = vec![false; n];
    let mut flags: Vec<Option<bool>> = vec![None; n];
    let mut seen = vec![false; n];
    for node in &doc.nodes {
        let v = net.node_index(&node.id).ok_or_else(|| {
            CliError::Parse(format!(
                "labeling node `{}` does not appear in the window's network",
                node.id
            ))
        })?;
        if seen[v] {
            return Err(CliError::Parse(format!(
                "labeling lists node `{}` twice",
                node.id
            )));
        }
        seen[v] = true;
        pairs[v] = node.pair;
        core[v] = node.core;
        flags[v] = node.significant;
    }
    let lab = Labeling::from_assignments(&pairs, &core, net)?;
    let present = flags.iter().filter(|f| f.is_some()).count();
    if present == 0 {
        Ok(lab)
    } else if present == n {
        Ok(lab.with_significance(flags.into_iter().map(|f| f.unwrap()).collect())?)
    } else {
        Err(CliError::Parse(format!(
            "labeling for window `{}` mixes tested and untested nodes",
            doc.window
        )))
    }
}

/// Serialize a document as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("serializable document");
    text.push('\n');
    text
}
