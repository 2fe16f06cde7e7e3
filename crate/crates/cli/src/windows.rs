//! Discovery and loading of per-window files in a batch directory.
//!
//! Windows are keyed by file stem: `<stem>.edges` holds the network,
//! `<stem>.labeling.json` the detected labeling, `<stem>.significance.json`
//! the test report, `<stem>.skip.json` a degenerate-window record. Batches
//! are always processed in lexicographic stem order, which is chronological
//! for the zero-padded window labels the aggregator emits.

use std::path::{Path, PathBuf};

use cpdetect::{parse_edge_list, Network};

use crate::docs::LabelingDoc;
use crate::error::{read_file, CliError, CliResult};

pub const EDGES_EXT: &str = "edges";
pub const LABELING_SUFFIX: &str = ".labeling.json";

/// All `.edges` files under `input`, sorted; `input` may be a single file.
pub fn edge_files(input: &Path) -> CliResult<Vec<PathBuf>> {
    let meta = std::fs::metadata(input)
        .map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?;
    if meta.is_file() {
        return Ok(vec![input.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in std::fs::read_dir(input)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == EDGES_EXT) {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(CliError::Domain(format!(
            "no .{EDGES_EXT} files found in {}",
            input.display()
        )));
    }
    Ok(files)
}

/// Window stem of an `.edges` path (file name without the extension).
pub fn edges_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// One window with both its network file and its labeling file present.
pub struct LabeledWindow {
    pub stem: String,
    pub edges_path: PathBuf,
    pub labeling_path: PathBuf,
}

/// All `<stem>.labeling.json` files under `dir` with their companion
/// `<stem>.edges`, sorted by stem. Errors if the directory holds no
/// labelings or if a labeling lacks its network.
pub fn labeled_windows(dir: &Path) -> CliResult<Vec<LabeledWindow>> {
    let mut windows = Vec::new();
    for entry in std::fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?
    {
        let path = entry?.path();
        let name = match path.file_name().map(|s| s.to_string_lossy().into_owned()) {
            Some(n) => n,
            None => continue,
        };
        let Some(stem) = name.strip_suffix(LABELING_SUFFIX) else {
            continue;
        };
        let edges_path = dir.join(format!("{stem}.{EDGES_EXT}"));
        if !edges_path.is_file() {
            return Err(CliError::Io(format!(
                "labeling {} has no companion {}",
                path.display(),
                edges_path.display()
            )));
        }
        windows.push(LabeledWindow {
            stem: stem.to_string(),
            edges_path,
            labeling_path: path,
        });
    }
    windows.sort_by(|a, b| a.stem.cmp(&b.stem));
    if windows.is_empty() {
        return Err(CliError::Domain(format!(
            "no *{LABELING_SUFFIX} files found in {}",
            dir.display()
        )));
    }
    Ok(windows)
}

pub fn load_network(path: &Path) -> CliResult<Network> {
    let text = read_file(path)?;
    let edges = parse_edge_list(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Network::from_edges(edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load_labeling_doc(path: &Path) -> CliResult<LabelingDoc> {
    let text = read_file(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}
