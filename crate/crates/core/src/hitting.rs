//! Exact minimum hitting sets by branch and bound.
//!
//! Branching rule: take the smallest set not yet hit and try each of its
//! elements. Depth is bounded by iterative deepening, and a branch is cut
//! when the number of pairwise-disjoint un-hit sets exceeds the remaining
//! budget. Every minimum hitting set is reached, so all of them are reported.

use std::collections::BTreeSet;

use crate::config::Execution;
use crate::graph::VertexSet;
use crate::par;

/// Minimum size and every minimum hitting set, sorted lexicographically.
pub fn minimum_hitting_sets(family: &[VertexSet], execution: Execution) -> (usize, Vec<VertexSet>) {
    if family.is_empty() {
        return (0, vec![VertexSet::empty()]);
    }
    assert!(
        family.iter().all(|s| !s.is_empty()),
        "cannot hit an empty set"
    );

    for budget in 1.. {
        let first = smallest_unhit(family, &[]).expect("family is nonempty");
        let branches = par::map_slice(execution, first.as_slice(), |&v| {
            let mut found = BTreeSet::new();
            search(family, &mut vec![v], budget - 1, &mut found);
            found
        });
        let all: BTreeSet<Vec<usize>> = branches.into_iter().flatten().collect();
        if !all.is_empty() {
            return (
                budget,
                all.into_iter().map(VertexSet::from_vertices).collect(),
            );
        }
    }
    unreachable!()
}

fn hits(chosen: &[usize], s: &VertexSet) -> bool {
    chosen.iter().any(|&v| s.contains(v))
}

fn smallest_unhit<'a>(family: &'a [VertexSet], chosen: &[usize]) -> Option<&'a VertexSet> {
    family
        .iter()
        .filter(|s| !hits(chosen, s))
        .min_by_key(|s| s.len())
}

fn disjoint_lower_bound(family: &[VertexSet], chosen: &[usize]) -> usize {
    let mut unhit: Vec<&VertexSet> = family.iter().filter(|s| !hits(chosen, s)).collect();
    unhit.sort_by_key(|s| s.len());
    let mut used: Vec<&VertexSet> = Vec::new();
    for s in unhit {
        if used.iter().all(|u| !u.intersects(s)) {
            used.push(s);
        }
    }
    used.len()
}

fn search(
    family: &[VertexSet],
    chosen: &mut Vec<usize>,
    budget: usize,
    found: &mut BTreeSet<Vec<usize>>,
) {
    let Some(target) = smallest_unhit(family, chosen) else {
        let mut sol = chosen.clone();
        sol.sort_unstable();
        sol.dedup();
        found.insert(sol);
        return;
    };
    if budget == 0 || disjoint_lower_bound(family, chosen) > budget {
        return;
    }
    for v in target.iter() {
        chosen.push(v);
        search(family, chosen, budget - 1, found);
        chosen.pop();
    }
}
