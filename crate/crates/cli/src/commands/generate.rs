//! `cpdetect generate`: synthesize a transaction log with planted structure
//! from a JSON config, emitting the CSV and the per-window ground truth.

use std::path::PathBuf;

use cpdetect::{synth_transactions, transactions_csv, SynthConfig, WindowTruth};
use serde::Serialize;

use crate::docs::{to_json, SCHEMA};
use crate::error::{ensure_dir, read_file, write_file, CliError, CliResult};

pub struct GenerateArgs {
    pub config: PathBuf,
    pub seed: u64,
    pub out: PathBuf,
}

#[derive(Serialize)]
struct TruthDoc {
    schema: u32,
    seed: u64,
    windows: Vec<WindowTruth>,
}

pub fn run(args: &GenerateArgs) -> CliResult<()> {
    let text = read_file(&args.config)?;
    let config: SynthConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.config.display())))?;
    let (log, truths) = synth_transactions(&config, args.seed)?;

    ensure_dir(&args.out)?;
    write_file(&args.out.join("transactions.csv"), &transactions_csv(&log))?;
    let truth = TruthDoc { schema: SCHEMA, seed: args.seed, windows: truths };
    write_file(&args.out.join("truth.json"), &to_json(&truth))?;
    eprintln!(
        "generated {} record(s) across {} window(s) into {}",
        log.len(),
        truth.windows.len(),
        args.out.display()
    );
    Ok(())
}
