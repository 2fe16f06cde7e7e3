//! `cpdetect aggregate`: transaction CSV in, per-window edge lists plus a
//! manifest out.

use std::path::PathBuf;

use cpdetect::{aggregate, edge_list_text, parse_transactions, ParseMode, Scale};

use crate::error::{ensure_dir, read_file, write_file, CliError, CliResult};
use crate::windows::EDGES_EXT;

pub struct AggregateArgs {
    pub input: PathBuf,
    pub scale: Scale,
    pub out: PathBuf,
    pub lenient: bool,
}

pub fn run(args: &AggregateArgs) -> CliResult<()> {
    let text = read_file(&args.input)?;
    let mode = if args.lenient { ParseMode::Lenient } else { ParseMode::Strict };
    let parsed = parse_transactions(&text, mode)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.input.display())))?;
    for issue in &parsed.skipped {
        eprintln!("warning: skipped {issue}");
    }

    let series = aggregate(&parsed.log, args.scale)?;
    if series.self_trades_dropped > 0 {
        eprintln!(
            "warning: dropped {} self-trade(s) (lender equals borrower)",
            series.self_trades_dropped
        );
    }

    ensure_dir(&args.out)?;
    let mut manifest = String::from("window_label,start,end,n_nodes,n_edges\n");
    for window in &series.windows {
        let file = args
            .out
            .join(format!("{}_{}.{EDGES_EXT}", series.scale, window.label));
        write_file(&file, &edge_list_text(&window.network))?;
        manifest.push_str(&format!(
            "{},{},{},{},{}\n",
            window.label,
            window.start,
            window.end,
            window.network.node_count(),
            window.network.edge_count()
        ));
    }
    write_file(&args.out.join("manifest.csv"), &manifest)?;
    eprintln!(
        "aggregated {} record(s) into {} window(s) at scale {}",
        parsed.log.len(),
        series.windows.len(),
        series.scale
    );
    Ok(())
}
