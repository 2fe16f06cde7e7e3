//! `cpdetect detect`: run one detector over every window, writing a labeling
//! JSON per window (or a skip record for degenerate networks).

use std::path::PathBuf;

use cpdetect::{detect_be, detect_kmer, detect_minres, Error, Labeling, Network};

use crate::docs::{labeling_doc, to_json, SkipDoc, SCHEMA};
use crate::error::{ensure_dir, write_file, CliResult};
use crate::windows::{edge_files, edges_stem, load_network, LABELING_SUFFIX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    /// Single-pair detection by correlation with the idealized pattern.
    Be,
    /// Single-pair detection by residual-minimizing degree cut.
    Minres,
    /// Multi-pair detection by label switching.
    Kmer,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Be => "be",
            Algorithm::Minres => "minres",
            Algorithm::Kmer => "kmer",
        }
    }
}

pub struct DetectArgs {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub restarts: usize,
    pub seed: u64,
    pub input: PathBuf,
    pub out: PathBuf,
}

/// Labeling and objective value, or the reason the window is undetectable.
type Detection = Result<(Labeling, Option<f64>), String>;

fn detect(net: &Network, args: &DetectArgs) -> CliResult<Detection> {
    let single = |res: cpdetect::Result<cpdetect::SinglePairAssignment>| -> CliResult<Detection> {
        match res {
            Ok(assignment) => {
                let quality = assignment.quality;
                let pairs = vec![1u32; net.node_count()];
                let lab = Labeling::from_assignments(&pairs, &assignment.coreness, net)?;
                Ok(Ok((lab, quality)))
            }
            Err(Error::DegenerateNetwork { reason }) => Ok(Err(reason.to_string())),
            Err(Error::TooFewNodes { .. }) => Ok(Err("too few nodes".to_string())),
            Err(other) => Err(other.into()),
        }
    };
    match args.algorithm {
        Algorithm::Be => single(detect_be(net, args.restarts, args.seed)),
        Algorithm::Minres => single(detect_minres(net)),
        Algorithm::Kmer => match detect_kmer(net, args.runs, args.seed) {
            Ok(lab) => {
                let q = lab.q_value();
                Ok(Ok((lab, Some(q))))
            }
            Err(Error::TooFewNodes { .. }) => Ok(Err("too few nodes".to_string())),
            Err(other) => Err(other.into()),
        },
    }
}

pub fn run(args: &DetectArgs) -> CliResult<()> {
    ensure_dir(&args.out)?;
    let mut detected = 0usize;
    let mut skipped = 0usize;
    for path in edge_files(&args.input)? {
        let stem = edges_stem(&path);
        let net = load_network(&path)?;
        match detect(&net, args)? {
            Ok((lab, quality)) => {
                let doc =
                    labeling_doc(&stem, args.algorithm.as_str(), args.seed, quality, &lab, &net);
                write_file(&args.out.join(format!("{stem}{LABELING_SUFFIX}")), &to_json(&doc))?;
                detected += 1;
            }
            Err(reason) => {
                let doc = SkipDoc {
                    schema: SCHEMA,
                    window: stem.clone(),
                    algorithm: args.algorithm.as_str().to_string(),
                    reason,
                };
                write_file(&args.out.join(format!("{stem}.skip.json")), &to_json(&doc))?;
                skipped += 1;
            }
        }
    }
    eprintln!(
        "detected {} window(s) with {}, skipped {}",
        detected,
        args.algorithm.as_str(),
        skipped
    );
    Ok(())
}
