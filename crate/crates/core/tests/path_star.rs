mod common;

use common::set;
use leader_core::pathstar::{Base, StarMpcvs};
use leader_core::{
    algorithm_i, kalman_controllable, path_mpcvs, path_omnicontrollable, star_graph, star_mpcvs,
    Classification, CriticalSets, Graph, Options, StarSpec, VertexSet,
};

/// A published leader list for `P_105`. It leaves out the removals for
/// the prime 7.
const EXPECTED_LEADERS_105: [usize; 56] = [
    1, 4, 6, 7, 9, 10, 12, 15, 16, 19, 21, 22, 24, 25, 27, 30, 31, 34, 36, 37, 39, 40, 42, 45, 46,
    49, 51, 52, 54, 55, 57, 60, 61, 64, 66, 67, 69, 70, 72, 75, 76, 79, 81, 82, 84, 85, 87, 90, 91,
    94, 96, 97, 99, 100, 102, 105,
];

/// `L(P_n)` has simple eigenvalues with eigenvectors `y_i = cos((2i−1)kπ/2n)`,
/// so `v_i` alone controls iff `(2i−1)k ≢ n (mod 2n)` for every `0 < k < n`.
fn exact_single_leaders(n: usize) -> VertexSet {
    (1..=n)
        .filter(|&i| (1..n).all(|k| ((2 * i - 1) * k) % (2 * n) != n))
        .collect()
}

#[test]
fn path_105_leader_list() {
    let (followers, leaders) = algorithm_i(105).unwrap();
    assert_eq!(leaders, exact_single_leaders(105));
    assert_eq!(leaders.len(), 48);
    assert_eq!(followers.len(), 105 - 48);
    let primes: Vec<_> = path_mpcvs(105)
        .unwrap()
        .iter()
        .map(|d| (d.prime, d.k))
        .collect();
    assert_eq!(primes, vec![(3, 35), (5, 21), (7, 15)]);

    // the published list is exactly ours plus the prime-7 removals
    let published = VertexSet::from_vertices(EXPECTED_LEADERS_105);
    let seven = &path_mpcvs(105).unwrap()[2].removed;
    let extra: VertexSet = published.iter().filter(|&v| !leaders.contains(v)).collect();
    assert!(leaders.is_subset(&published));
    assert!(extra.iter().all(|v| seven.contains(v)));
    assert_eq!(extra, set(&[4, 25, 39, 46, 60, 67, 81, 102]));
}

#[test]
fn algorithm_i_matches_exact_oracle() {
    for n in 1..=200 {
        assert_eq!(algorithm_i(n).unwrap().1, exact_single_leaders(n), "P_{n}");
    }
}

#[test]
fn descriptor_invariants() {
    for n in 1..=300 {
        for d in path_mpcvs(n).unwrap() {
            assert_eq!(d.prime, 2 * d.m + 1);
            assert_eq!(n, d.k * d.prime);
            assert_eq!(d.removed.len(), d.k);
            let sizes = d.block_sizes();
            assert_eq!(sizes.len(), d.k + 1);
            assert_eq!((sizes[0], sizes[d.k]), (d.m, d.m));
            assert!(sizes[1..d.k].iter().all(|&s| s == 2 * d.m));
        }
        assert_eq!(
            path_mpcvs(n).unwrap().is_empty(),
            path_omnicontrollable(n).unwrap()
        );
    }
}

#[test]
fn path_matches_enumeration() {
    for n in 2..=15 {
        let g = Graph::path(n).unwrap();
        let family = CriticalSets::new(&g, Options::default())
            .unwrap()
            .enumerate_mpcvs()
            .unwrap();
        let mut analytic: Vec<VertexSet> = path_mpcvs(n)
            .unwrap()
            .into_iter()
            .map(|d| d.members)
            .collect();
        analytic.sort_by(VertexSet::report_cmp);
        let proper: Vec<VertexSet> = family.proper(n).cloned().collect();
        assert_eq!(analytic, proper, "P_{n}");

        let (_, leaders) = algorithm_i(n).unwrap();
        let kalman: VertexSet = (1..=n)
            .filter(|&v| {
                kalman_controllable(&g, &set(&[v]), &Options::default())
                    .unwrap()
                    .0
            })
            .collect();
        assert_eq!(leaders, kalman, "P_{n}");
    }
}

fn leg_tuples(max_total: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, remaining: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        let lo = prefix.last().copied().unwrap_or(1);
        for len in lo..=remaining {
            prefix.push(len);
            extend(prefix, remaining - len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_total - 1, &mut out);
    out
}

#[test]
fn star_sets_are_mpcvs_and_cover_hub_free_sets() {
    for legs in leg_tuples(12) {
        let spec = StarSpec::new(legs.clone()).unwrap();
        let g = star_graph(&spec, None).unwrap();
        let hub = spec.bare_hub();
        let cs = CriticalSets::new(&g, Options::default()).unwrap();
        let analytic: Vec<VertexSet> = star_mpcvs(&spec)
            .unwrap()
            .into_iter()
            .map(|s: StarMpcvs| s.set)
            .collect();
        for s in &analytic {
            assert_eq!(
                cs.is_mpcvs(s).unwrap().classification,
                Classification::Mpcvs,
                "{legs:?} {s}"
            );
        }
        let family = cs.enumerate_mpcvs().unwrap();
        for s in family.proper(g.order()).filter(|s| !s.contains(hub)) {
            assert!(
                analytic.contains(s),
                "{legs:?}: hub-free {s} not constructed"
            );
        }
    }
}

#[test]
fn tree_by_enumeration() {
    let base = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (3, 5)]).unwrap();
    let spec = StarSpec::new(vec![3, 3]).unwrap();
    let g = star_graph(
        &spec,
        Some(Base {
            graph: &base,
            hub: 1,
        }),
    )
    .unwrap();
    let sol = leader_core::minimum_leader_sets(&g, &Options::default()).unwrap();
    assert_eq!(
        sol.family.sets,
        vec![set(&[10, 11]), set(&[1, 2, 3, 4, 5, 6])]
    );
    assert_eq!(sol.minimum_count, 2);
    assert_eq!(sol.optimal_sets.len(), 12);
}
