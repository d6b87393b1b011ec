#![allow(dead_code)]

use leader_core::{Graph, VertexSet};
use proptest::prelude::*;

pub fn set(v: &[usize]) -> VertexSet {
    VertexSet::from_vertices(v.iter().copied())
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        let extra = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p + 1, i + 2))
                .collect();
            let mut k = 0;
            for a in 1..=n {
                for b in (a + 1)..=n {
                    if extra[k] && !edges.contains(&(a, b)) {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Nonempty proper subsets of `1..=n`, as masks.
pub fn proper_masks(n: usize) -> impl Iterator<Item = u64> {
    1..(1u64 << n) - 1
}
