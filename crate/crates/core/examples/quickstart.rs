//! Minimal library walkthrough: build a network from an edge list, detect
//! multi-pair core-periphery structure, and test it against random-graph
//! nulls. Run with `cargo run -p cpdetect --example quickstart`.

use cpdetect::{
    detect_kmer, parse_edge_list, test_significance, Network, SignificanceOptions,
};

fn main() -> cpdetect::Result<()> {
    // An idealized core-periphery pair: three banks trade among themselves
    // and with every peripheral bank; the periphery never trades internally.
    let mut text = String::from("c1 c2\nc1 c3\nc2 c3\n");
    for core in ["c1", "c2", "c3"] {
        for rim in ["p1", "p2", "p3", "p4", "p5"] {
            text.push_str(&format!("{core} {rim}\n"));
        }
    }
    let edges = parse_edge_list(&text)?;
    let net = Network::from_edges(edges.iter().map(|(u, v)| (u.as_str(), v.as_str())))?;

    let labeling = detect_kmer(&net, 10, 42)?;
    println!(
        "{} pair(s), quality {:.3}",
        labeling.pair_count(),
        labeling.q_value()
    );

    let (report, flagged) = test_significance(&labeling, &net, &SignificanceOptions::default())?;
    for pair in &report.pairs {
        match (pair.q, pair.threshold) {
            (Some(q), Some(t)) => println!(
                "pair {}: q = {q:.3} vs threshold {t:.3} -> significant: {}",
                pair.k, pair.significant
            ),
            _ => println!(
                "pair {}: untestable ({})",
                pair.k,
                pair.reason.unwrap_or("no reason recorded")
            ),
        }
    }

    for node in 0..flagged.node_count() {
        println!(
            "  {}: pair {} {} (significant: {})",
            net.node_id(node),
            flagged.pair_of(node),
            if flagged.is_core(node) { "core" } else { "periphery" },
            flagged.significance().is_some_and(|f| f[node]),
        );
    }
    Ok(())
}
