//! `cpdetect oracle`: exhaustive optimum of the multi-pair quality for a
//! small edge-list file, printed as a labeling document on stdout.

use std::path::PathBuf;

use cpdetect::brute_force_qcp;

use crate::docs::{labeling_doc, to_json};
use crate::error::CliResult;
use crate::windows::{edges_stem, load_network};

pub struct OracleArgs {
    pub input: PathBuf,
}

pub fn run(args: &OracleArgs) -> CliResult<()> {
    let net = load_network(&args.input)?;
    let (lab, q_star) = brute_force_qcp(&net)?;
    let doc = labeling_doc(&edges_stem(&args.input), "oracle", 0, Some(q_star), &lab, &net);
    print!("{}", to_json(&doc));
    Ok(())
}
