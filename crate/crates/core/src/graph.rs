//! Undirected binary networks with opaque node identifiers.
//!
//! Nodes are identified by strings (bank codes, synthetic ids, ...) and mapped
//! to dense indices `0..n`. The mapping is stable for the lifetime of a
//! [`Network`] and is preserved by every emitted artifact. Graphs are simple:
//! no self-loops, no duplicate edges, no weights.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::error::{Error, Result, RowIssue};

/// An undirected binary network over string-identified nodes.
#[derive(Debug, Clone)]
pub struct Network {
    ids: Vec<String>,
    index: HashMap<String, u32>,
    neighbors: Vec<Vec<u32>>,
    edge_count: usize,
    attributes: Option<Vec<Option<String>>>,
}

impl Network {
    /// Build a network from raw edge pairs.
    ///
    /// Duplicate edges and orientation are collapsed, self-pairs are removed,
    /// and the node set is the set of all endpoints (in first-appearance
    /// order). An empty input signals a degenerate window and is an error.
    pub fn from_edges<'a, I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut ids: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let intern = |name: &str, ids: &mut Vec<String>, index: &mut HashMap<String, u32>| {
            if let Some(&i) = index.get(name) {
                return i;
            }
            let i = ids.len() as u32;
            ids.push(name.to_string());
            index.insert(name.to_string(), i);
            i
        };

        let mut dyads: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut saw_any = false;
        for (a, b) in edges {
            saw_any = true;
            let ia = intern(a, &mut ids, &mut index);
            let ib = intern(b, &mut ids, &mut index);
            if ia == ib {
                continue;
            }
            dyads.insert((ia.min(ib), ia.max(ib)));
        }
        if !saw_any {
            return Err(Error::EmptyEdgeList);
        }

        let mut neighbors = vec![Vec::new(); ids.len()];
        for &(i, j) in &dyads {
            neighbors[i as usize].push(j);
            neighbors[j as usize].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Network {
            ids,
            index,
            neighbors,
            edge_count: dyads.len(),
            attributes: None,
        })
    }

    /// Build a network with an explicit node set (isolated nodes permitted).
    ///
    /// `edges` holds index pairs into `ids`; self-pairs are rejected,
    /// duplicates are collapsed.
    pub fn with_nodes(ids: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        let mut index = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i as u32).is_some() {
                return Err(Error::LabelingMismatch(format!("duplicate node id `{id}`")));
            }
        }
        let mut dyads: BTreeSet<(u32, u32)> = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::NodeIndexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::NodeIndexOutOfRange(b));
            }
            if a == b {
                return Err(Error::LabelingMismatch(format!(
                    "self-pair on node index {a}"
                )));
            }
            let (a, b) = (a as u32, b as u32);
            dyads.insert((a.min(b), a.max(b)));
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j) in &dyads {
            neighbors[i as usize].push(j);
            neighbors[j as usize].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Network {
            ids,
            index,
            neighbors,
            edge_count: dyads.len(),
            attributes: None,
        })
    }

    /// Return a copy of this network with node attributes attached.
    ///
    /// Nodes absent from the map simply carry no attribute.
    pub fn with_attributes(&self, map: &BTreeMap<String, String>) -> Network {
        let mut out = self.clone();
        out.attributes = Some(
            self.ids
                .iter()
                .map(|id| map.get(id).cloned())
                .collect(),
        );
        out
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of unordered node pairs, `n (n - 1) / 2`.
    pub fn dyad_count(&self) -> u64 {
        let n = self.ids.len() as u64;
        n * (n - 1) / 2
    }

    /// Fraction of node pairs joined by an edge.
    pub fn density(&self) -> Result<f64> {
        if self.node_count() < 2 {
            return Err(Error::TooFewNodes {
                needed: 2,
                actual: self.node_count(),
            });
        }
        Ok(self.edge_count as f64 / self.dyad_count() as f64)
    }

    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.neighbors[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors[node].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn node_id(&self, node: usize) -> &str {
        &self.ids[node]
    }

    pub fn node_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).map(|&i| i as usize)
    }

    pub fn attribute(&self, node: usize) -> Option<&str> {
        self.attributes
            .as_ref()
            .and_then(|a| a[node].as_deref())
    }

    pub fn has_attributes(&self) -> bool {
        self.attributes.is_some()
    }

    /// Iterate edges as index pairs `(i, j)` with `i < j`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(i, list)| {
            list.iter()
                .filter(move |&&j| (j as usize) > i)
                .map(move |&j| (i, j as usize))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count as u64 == self.dyad_count() && self.node_count() >= 2
    }

    pub fn has_no_edges(&self) -> bool {
        self.edge_count == 0
    }

    /// Subgraph induced by the given node indices.
    ///
    /// The requested node set is preserved even if some nodes become isolated
    /// within the subgraph; attributes travel along. Duplicates are collapsed
    /// and nodes keep their relative index order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Network> {
        let mut keep: Vec<usize> = Vec::with_capacity(nodes.len());
        for &v in nodes {
            if v >= self.node_count() {
                return Err(Error::NodeIndexOutOfRange(v));
            }
            keep.push(v);
        }
        keep.sort_unstable();
        keep.dedup();

        let mut remap: HashMap<u32, u32> = HashMap::with_capacity(keep.len());
        for (new, &old) in keep.iter().enumerate() {
            remap.insert(old as u32, new as u32);
        }
        let ids: Vec<String> = keep.iter().map(|&v| self.ids[v].clone()).collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (new_i, &old_i) in keep.iter().enumerate() {
            for &old_j in &self.neighbors[old_i] {
                if old_j as usize > old_i {
                    if let Some(&new_j) = remap.get(&old_j) {
                        edges.push((new_i, new_j as usize));
                    }
                }
            }
        }
        let mut sub = Network::with_nodes(ids, &edges)?;
        if let Some(attrs) = &self.attributes {
            sub.attributes = Some(keep.iter().map(|&v| attrs[v].clone()).collect());
        }
        Ok(sub)
    }
}

/// Sample a uniform random simple graph with exactly `n` nodes and `m` edges.
///
/// The draw is uniform over all `C(C(n,2), m)` edge sets (Floyd's subset
/// sampling over dyad codes) and fully determined by `seed`. Node ids are
/// `v0, v1, ...`; isolated nodes are kept.
pub fn sample_er(n: usize, m: u64, seed: u64) -> Result<Network> {
    let t = dyads_for(n);
    if m > t {
        return Err(Error::EdgeCountOutOfRange { n, m, max: t });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: BTreeSet<u64> = BTreeSet::new();
    for j in (t - m)..t {
        let pick = rng.gen_range(0..=j);
        if !chosen.insert(pick) {
            chosen.insert(j);
        }
    }
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(usize, usize)> = chosen.iter().map(|&code| decode_dyad(code)).collect();
    Network::with_nodes(ids, &edges)
}

pub(crate) fn dyads_for(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Inverse of the lower-triangular dyad code `j (j - 1) / 2 + i` for `i < j`.
fn decode_dyad(code: u64) -> (usize, usize) {
    let mut j = ((1.0 + (1.0 + 8.0 * code as f64).sqrt()) / 2.0) as u64;
    while j * (j - 1) / 2 > code {
        j -= 1;
    }
    while (j + 1) * j / 2 <= code {
        j += 1;
    }
    let i = code - j * (j - 1) / 2;
    (i as usize, j as usize)
}

/// Parse an edge-list text: one edge per line, two whitespace-separated ids.
///
/// Blank lines are ignored. Every malformed line is reported.
pub fn parse_edge_list(text: &str) -> Result<Vec<(String, String)>> {
    let mut edges = Vec::new();
    let mut issues = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => edges.push((a.to_string(), b.to_string())),
            _ => issues.push(RowIssue {
                line: lineno as u64 + 1,
                message: format!("expected two node ids, got `{line}`"),
            }),
        }
    }
    if !issues.is_empty() {
        return Err(Error::MalformedRows(issues));
    }
    Ok(edges)
}

/// Render a network as edge-list text, edges in index order.
pub fn edge_list_text(net: &Network) -> String {
    let mut out = String::new();
    for (i, j) in net.edges() {
        out.push_str(net.node_id(i));
        out.push(' ');
        out.push_str(net.node_id(j));
        out.push('\n');
    }
    out
}

/// Parse a `node_id,attribute` CSV (header required) into a map.
pub fn parse_attributes(text: &str) -> Result<BTreeMap<String, String>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::BadHeader {
            expected: "node_id,attribute".into(),
            found: e.to_string(),
        })?
        .clone();
    let expect = ["node_id", "attribute"];
    if headers.len() != 2 || headers.iter().zip(expect).any(|(h, e)| h.trim() != e) {
        return Err(Error::BadHeader {
            expected: "node_id,attribute".into(),
            found: headers.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut map = BTreeMap::new();
    let mut issues = Vec::new();
    for rec in reader.records() {
        match rec {
            Ok(row) => {
                let line = row.position().map(|p| p.line()).unwrap_or(0);
                let id = row.get(0).unwrap_or("").trim();
                let attr = row.get(1).unwrap_or("").trim();
                if id.is_empty() || attr.is_empty() || row.len() != 2 {
                    issues.push(RowIssue {
                        line,
                        message: "expected `node_id,attribute` with both fields non-empty".into(),
                    });
                } else {
                    map.insert(id.to_string(), attr.to_string());
                }
            }
            Err(e) => issues.push(RowIssue {
                line: e.position().map(|p| p.line()).unwrap_or(0),
                message: e.to_string(),
            }),
        }
    }
    if !issues.is_empty() {
        return Err(Error::MalformedRows(issues));
    }
    Ok(map)
}
