//! Independent reference evaluators: the straightforward textbook formulas,
//! written with none of the library's incremental shortcuts, used to oracle
//! the optimized implementations.

use cpdetect::Network;

/// Pearson correlation between the dyad indicator of the adjacency and the
/// dyad indicator of the idealized single-pair pattern (1 unless both ends
/// are periphery). `None` when either vector is constant.
pub fn naive_be_quality(coreness: &[bool], net: &Network) -> Option<f64> {
    let n = net.node_count();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            a.push(net.has_edge(i, j) as u8 as f64);
            b.push((coreness[i] || coreness[j]) as u8 as f64);
        }
    }
    pearson(&a, &b)
}

fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    let t = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / t;
    let mean_b = b.iter().sum::<f64>() / t;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (x, y) in a.iter().zip(b) {
        cov += (x - mean_a) * (y - mean_b);
        var_a += (x - mean_a).powi(2);
        var_b += (y - mean_b).powi(2);
    }
    if var_a == 0.0 || var_b == 0.0 {
        return None;
    }
    Some(cov / (var_a.sqrt() * var_b.sqrt()))
}

/// Literal multi-pair quality: sum over same-pair dyads of
/// `(A_ij - density) * (x_i + x_j - x_i * x_j)`.
pub fn naive_qcp(pairs: &[u32], core: &[bool], net: &Network) -> f64 {
    let n = net.node_count();
    let rho = net.edge_count() as f64 / net.dyad_count() as f64;
    let mut q = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            if pairs[i] != pairs[j] {
                continue;
            }
            let (xi, xj) = (core[i] as u8 as f64, core[j] as u8 as f64);
            let weight = xi + xj - xi * xj;
            q += (net.has_edge(i, j) as u8 as f64 - rho) * weight;
        }
    }
    q
}

/// Best single-pair correlation over every coreness assignment for which it
/// is defined (N ≤ 16).
pub fn exhaustive_be_optimum(net: &Network) -> Option<f64> {
    let n = net.node_count();
    assert!(n <= 16, "exhaustive scan is exponential");
    let mut best: Option<f64> = None;
    for mask in 1u32..(1 << n) - 1 {
        let coreness: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
        if let Ok(q) = cpdetect::be_quality(&coreness, net) {
            if best.is_none_or(|b| q > b) {
                best = Some(q);
            }
        }
    }
    best
}

/// Minimum pattern-violation cost over every coreness assignment (N ≤ 16).
pub fn exhaustive_minres_min(net: &Network) -> usize {
    let n = net.node_count();
    assert!(n <= 16, "exhaustive scan is exponential");
    (0u32..(1 << n))
        .map(|mask| {
            let coreness: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
            cpdetect::minres_cost(&coreness, net).expect("full-length assignment")
        })
        .min()
        .expect("at least the empty assignment")
}
