//! Graph corpora for exhaustive and randomized sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect()
}

/// Every connected labeled graph on `n` vertices (`n ≤ 6`).
pub fn connected_labeled(n: usize) -> Vec<Graph> {
    assert!(
        (1..=6).contains(&n),
        "labeled enumeration supports 1 ≤ n ≤ 6"
    );
    let pairs = upper_pairs(n);
    (0u32..1 << pairs.len())
        .map(|mask| {
            let chosen = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            Graph::from_pairs_unchecked(n, chosen)
        })
        .filter(Graph::is_connected)
        .collect()
}

/// Every connected labeled graph with `1 ≤ n ≤ max_n`.
pub fn all_connected_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_labeled).collect()
}

/// `count` random connected graphs with order drawn from `orders`,
/// edges kept independently with probability `density`. Deterministic in `seed`.
pub fn random_connected(seed: u64, count: usize, orders: &[usize], density: f64) -> Vec<Graph> {
    assert!(!orders.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = orders[rng.gen_range(0..orders.len())];
        let chosen = upper_pairs(n)
            .into_iter()
            .filter(|_| rng.gen_bool(density))
            .collect();
        let g = Graph::from_pairs_unchecked(n, chosen);
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Standard sweep: all connected graphs up to 5 vertices plus 300 random
/// connected graphs on 6 or 7 vertices.
pub fn standard_corpus() -> Vec<Graph> {
    let mut all = all_connected_up_to(5);
    all.extend(random_connected(0x5eed, 300, &[6, 7], 0.4));
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_counts() {
        // OEIS A001187
        let counts: Vec<usize> = (1..=5).map(|n| connected_labeled(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn random_is_deterministic_and_connected() {
        let a = random_connected(1, 20, &[6, 7], 0.4);
        let b = random_connected(1, 20, &[6, 7], 0.4);
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|g| g.is_connected() && (6..=7).contains(&g.order())));
    }
}
