//! `cpdetect metrics`: tabulate block densities, structure classes, core
//! stability, alluvial flows, and optional attribute composition for a batch
//! of tested windows.

use std::collections::BTreeSet;
use std::path::PathBuf;

use cpdetect::{
    alluvial_flows, attribute_fractions, block_densities, classify_structure, jaccard,
    main_core_ids, parse_attributes, Labeling, Network,
};

use crate::docs::doc_to_labeling;
use crate::error::{ensure_dir, read_file, write_file, CliError, CliResult};
use crate::windows::{labeled_windows, load_network};

pub struct MetricsArgs {
    pub input: PathBuf,
    pub attributes: Option<PathBuf>,
    pub out: PathBuf,
}

struct WindowData {
    stem: String,
    net: Network,
    lab: Labeling,
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

pub fn run(args: &MetricsArgs) -> CliResult<()> {
    let attribute_map = match &args.attributes {
        Some(path) => {
            let text = read_file(path)?;
            Some(
                parse_attributes(&text)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };

    let mut windows: Vec<WindowData> = Vec::new();
    for window in labeled_windows(&args.input)? {
        let mut net = load_network(&window.edges_path)?;
        if let Some(map) = &attribute_map {
            net = net.with_attributes(map);
        }
        let doc = crate::windows::load_labeling_doc(&window.labeling_path)?;
        let lab = doc_to_labeling(&doc, &net)?;
        if lab.significance().is_none() {
            return Err(CliError::Domain(format!(
                "window `{}` has no significance flags; run `cpdetect test` first",
                window.stem
            )));
        }
        windows.push(WindowData { stem: window.stem, net, lab });
    }
    ensure_dir(&args.out)?;

    // Per-pair densities and classification.
    let mut metrics = String::from(
        "window,k,n_core,n_periphery,rho_cc,rho_cp,rho_pp,class,significant\n",
    );
    for w in &windows {
        for k in 1..=w.lab.pair_count() {
            let d = block_densities(&w.lab, &w.net, k)?;
            let class = classify_structure(&d);
            let significant = w.lab.pair_significant(k).expect("flags checked present");
            metrics.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                w.stem,
                k,
                d.n_core,
                d.n_periphery,
                fmt_f64(d.rho_cc),
                fmt_f64(d.rho_cp),
                fmt_f64(d.rho_pp),
                class.as_str(),
                significant
            ));
        }
    }
    write_file(&args.out.join("metrics.csv"), &metrics)?;

    // Pair multiplicity series.
    let mut pair_counts = String::from("window,n_pairs,n_significant\n");
    for w in &windows {
        let total = w.lab.pair_count();
        let significant = (1..=total)
            .filter(|&k| w.lab.pair_significant(k) == Some(true))
            .count();
        pair_counts.push_str(&format!("{},{},{}\n", w.stem, total, significant));
    }
    write_file(&args.out.join("pair_counts.csv"), &pair_counts)?;

    // Main-core stability matrix over every window pair.
    let cores: Vec<BTreeSet<String>> = windows
        .iter()
        .map(|w| main_core_ids(&w.lab, &w.net).map_err(CliError::from))
        .collect::<CliResult<_>>()?;
    let mut matrix = String::from("window");
    for w in &windows {
        matrix.push(',');
        matrix.push_str(&w.stem);
    }
    matrix.push('\n');
    for (i, w) in windows.iter().enumerate() {
        matrix.push_str(&w.stem);
        for j in 0..windows.len() {
            matrix.push(',');
            matrix.push_str(&fmt_f64(jaccard(&cores[i], &cores[j])?));
        }
        matrix.push('\n');
    }
    write_file(&args.out.join("jaccard.csv"), &matrix)?;

    // Node flows between consecutive windows.
    let mut alluvial = String::from("window_from,window_to,group_from,group_to,count\n");
    for pair in windows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        for row in alluvial_flows(&a.lab, &a.net, &b.lab, &b.net)? {
            alluvial.push_str(&format!(
                "{},{},{},{},{}\n",
                a.stem, b.stem, row.group_from, row.group_to, row.count
            ));
        }
    }
    write_file(&args.out.join("alluvial.csv"), &alluvial)?;

    // Attribute composition per pair block, using the csv writer because
    // attribute values come from user input and may need quoting.
    if attribute_map.is_some() {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["window", "k", "value", "core_fraction", "periphery_fraction"])
            .map_err(|e| CliError::Io(e.to_string()))?;
        for w in &windows {
            for k in 1..=w.lab.pair_count() {
                let fractions = attribute_fractions(&w.lab, &w.net, k)?;
                let values: BTreeSet<&String> = fractions
                    .core
                    .iter()
                    .chain(fractions.periphery.iter())
                    .flat_map(|m| m.keys())
                    .collect();
                for value in values {
                    let core = fractions
                        .core
                        .as_ref()
                        .map(|m| fmt_f64(m[value]))
                        .unwrap_or_default();
                    let periphery = fractions
                        .periphery
                        .as_ref()
                        .map(|m| fmt_f64(m[value]))
                        .unwrap_or_default();
                    writer
                        .write_record([
                            w.stem.as_str(),
                            &k.to_string(),
                            value,
                            &core,
                            &periphery,
                        ])
                        .map_err(|e| CliError::Io(e.to_string()))?;
                }
            }
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Io(e.to_string()))?;
        let text = String::from_utf8(bytes).expect("csv output is utf-8");
        write_file(&args.out.join("attributes.csv"), &text)?;
    }

    eprintln!("wrote metrics for {} window(s) to {}", windows.len(), args.out.display());
    Ok(())
}
