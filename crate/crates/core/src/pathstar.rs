//! Analytic MPCVS characterization for paths and for paths glued at a hub.
//!
//! For the path `P_n`, every proper MPCVS comes from an odd prime `p = 2m+1`
//! dividing `n`: remove the vertices `v_i` with `i ≡ m+1 (mod 2m+1)`. The
//! remaining blocks have sizes `m, 2m, …, 2m, m`, and they share the
//! eigenangle `π/(2m+1)`. A single leader controls `P_n` exactly when it
//! avoids all removed vertices, so `P_n` is omnicontrollable iff `n` is a
//! power of two.
//!
//! For a hub with legs `P_{n_1}, …, P_{n_t}`, two legs `i, j` carry an MPCVS
//! for every odd prime dividing both `2n_i+1` and `2n_j+1`; on each leg it
//! keeps the positions (counted from the outer end) not congruent to
//! `m+1 (mod 2m+1)`. Sets through the hub are not covered by this
//! construction.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::config::Options;
use crate::controllability::LeaderSolution;
use crate::critical::{theorem3_test, MpcvsFamily};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{block_eigenvector, BlockKind, EigenAngle};

/// Largest path order accepted by the factorization-based routines.
pub const MAX_PATH_ORDER: usize = 1 << 31;

/// One proper MPCVS of `P_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathMpcvsDescriptor {
    pub n: usize,
    /// Odd prime `p = 2m + 1` dividing `n`.
    pub prime: usize,
    pub m: usize,
    /// `k = n / p`, the number of removed vertices.
    pub k: usize,
    pub removed: VertexSet,
    pub members: VertexSet,
}

impl PathMpcvsDescriptor {
    fn new(n: usize, prime: usize) -> Self {
        let m = (prime - 1) / 2;
        let k = n / prime;
        let removed: VertexSet = (0..k).map(|l| (m + 1) + l * prime).collect();
        let members = removed.complement(n);
        Self {
            n,
            prime,
            m,
            k,
            removed,
            members,
        }
    }

    /// Sizes of the maximal runs of members between removed vertices.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(self.k + 1);
        let mut prev = 0;
        for r in self.removed.iter() {
            sizes.push(r - prev - 1);
            prev = r;
        }
        sizes.push(self.n - prev);
        sizes
    }

    /// Eigenangle `π/(2m+1)` shared by every block.
    pub fn eigenangle(&self) -> EigenAngle {
        EigenAngle::new(std::f64::consts::PI / self.prime as f64).expect("angle in range")
    }

    /// Eigenvector of `L(P_n)` supported exactly on `members`, assembled
    /// block by block with a sign flip across each removed vertex.
    /// Returns `(λ, y)`.
    pub fn witness(&self) -> Result<(f64, DVector<f64>)> {
        let theta = self.eigenangle();
        let sizes = self.block_sizes();
        let mut y = DVector::zeros(self.n);
        let mut pos = 0;
        let mut last = 0.0;
        for (b, &size) in sizes.iter().enumerate() {
            let values: Vec<f64> = if b == 0 {
                block_eigenvector(BlockKind::End, size, theta, 1.0)?
                    .iter()
                    .copied()
                    .collect()
            } else if b + 1 == sizes.len() {
                // end block read from the far end: reverse of a D_m eigenvector
                let v = block_eigenvector(BlockKind::End, size, theta, 1.0)?;
                let scale = -last / v[size - 1];
                v.iter().rev().map(|x| x * scale).collect()
            } else {
                block_eigenvector(BlockKind::Interior, size, theta, -last)?
                    .iter()
                    .copied()
                    .collect()
            };
            for (i, x) in values.iter().enumerate() {
                y[pos + i] = *x;
            }
            last = *values.last().expect("blocks are nonempty");
            pos += size + 1;
        }
        Ok((theta.eigenvalue(), y))
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "path order must be at least 1".into(),
        ));
    }
    if n > MAX_PATH_ORDER {
        return Err(Error::CapExceeded {
            what: "path order",
            size: n,
            cap: MAX_PATH_ORDER,
        });
    }
    Ok(())
}

/// Distinct odd prime divisors of `n`, ascending (trial division).
pub fn odd_prime_factors(mut n: usize) -> Vec<usize> {
    while n > 0 && n.is_multiple_of(2) {
        n /= 2;
    }
    let mut out = Vec::new();
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All proper MPCVSs of `P_n`, one per odd prime divisor of `n`.
pub fn path_mpcvs(n: usize) -> Result<Vec<PathMpcvsDescriptor>> {
    check_order(n)?;
    Ok(odd_prime_factors(n)
        .into_iter()
        .map(|p| PathMpcvsDescriptor::new(n, p))
        .collect())
}

/// Leader location on `P_n`: returns `(followers, leaders)`. A single
/// leader controls the path iff it lies in `leaders`.
pub fn algorithm_i(n: usize) -> Result<(VertexSet, VertexSet)> {
    let followers = path_mpcvs(n)?
        .iter()
        .fold(VertexSet::empty(), |acc, d| acc.union(&d.removed));
    let leaders = followers.complement(n);
    Ok((followers, leaders))
}

/// `P_n` is controllable from any single vertex iff `n` is a power of two.
pub fn path_omnicontrollable(n: usize) -> Result<bool> {
    check_order(n)?;
    Ok(n.is_power_of_two())
}

/// Legs glued at a hub: `G(v_0) + {P_{n_1}, …, P_{n_t}}`.
///
/// Numbering of the constructed graph: leg 1 occupies `v1..v_{n_1}` from its
/// outer end towards the hub, then leg 2, and so on; the base graph follows,
/// its vertex `b` becoming `v_{Σn_l + b}`. Without a base the hub is the
/// last vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSpec {
    pub legs: Vec<usize>,
}

impl StarSpec {
    pub fn new(legs: Vec<usize>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one leg is required".into(),
            ));
        }
        if legs.contains(&0) {
            return Err(Error::InvalidArgument(
                "leg lengths must be at least 1".into(),
            ));
        }
        Ok(Self { legs })
    }

    pub fn leg_vertex_count(&self) -> usize {
        self.legs.iter().sum()
    }

    /// Vertex of leg `leg` (0-based) at `position` counted from its outer end (1-based).
    pub fn leg_vertex(&self, leg: usize, position: usize) -> usize {
        self.legs[..leg].iter().sum::<usize>() + position
    }

    pub fn leg_vertices(&self, leg: usize) -> VertexSet {
        (1..=self.legs[leg])
            .map(|p| self.leg_vertex(leg, p))
            .collect()
    }

    /// Hub index in the bare generalized star.
    pub fn bare_hub(&self) -> usize {
        self.leg_vertex_count() + 1
    }

    fn require_two_legs(&self) -> Result<()> {
        if self.legs.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "MPCVS analysis needs at least 2 legs, got {}",
                self.legs.len()
            )));
        }
        Ok(())
    }
}

/// Base graph with a marked hub vertex (1-based, in the base's own numbering).
#[derive(Debug, Clone, Copy)]
pub struct Base<'a> {
    pub graph: &'a Graph,
    pub hub: usize,
}

/// Builds the graph described by `spec`, optionally on top of `base`.
pub fn star_graph(spec: &StarSpec, base: Option<Base<'_>>) -> Result<Graph> {
    let offset = spec.leg_vertex_count();
    let (base_n, hub, mut edges) = match base {
        Some(b) => {
            if b.hub == 0 || b.hub > b.graph.order() {
                return Err(Error::VertexOutOfRange {
                    vertex: b.hub,
                    order: b.graph.order(),
                });
            }
            let edges: Vec<_> = b
                .graph
                .edges()
                .map(|(i, j)| (i + offset, j + offset))
                .collect();
            (b.graph.order(), offset + b.hub, edges)
        }
        None => (1, offset + 1, Vec::new()),
    };
    for (leg, &len) in spec.legs.iter().enumerate() {
        for p in 1..len {
            edges.push((spec.leg_vertex(leg, p), spec.leg_vertex(leg, p + 1)));
        }
        edges.push((spec.leg_vertex(leg, len), hub));
    }
    Graph::from_edges(offset + base_n, &edges)
}

/// An MPCVS carried by two legs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarMpcvs {
    /// 1-based leg indices `i < j`.
    pub legs: (usize, usize),
    /// Odd prime dividing both `2n_i+1` and `2n_j+1`.
    pub prime: usize,
    pub set: VertexSet,
}

/// Two-leg MPCVSs for every leg pair and every common odd prime divisor.
pub fn star_mpcvs(spec: &StarSpec) -> Result<Vec<StarMpcvs>> {
    spec.require_two_legs()?;
    let mut out = Vec::new();
    let t = spec.legs.len();
    for i in 0..t {
        for j in (i + 1)..t {
            let common = gcd(2 * spec.legs[i] + 1, 2 * spec.legs[j] + 1);
            for p in odd_prime_factors(common) {
                let m = (p - 1) / 2;
                let keep = |leg: usize| {
                    (1..=spec.legs[leg])
                        .filter(move |k| k % p != (m + 1) % p)
                        .map(move |k| spec.leg_vertex(leg, k))
                };
                let set: VertexSet = keep(i).chain(keep(j)).collect();
                out.push(StarMpcvs {
                    legs: (i + 1, j + 1),
                    prime: p,
                    set,
                });
            }
        }
    }
    Ok(out)
}

/// Minimum leaders from the analytic family: the two-leg sets, plus twin
/// pairs inside the base graph when one is supplied. When that family is
/// empty the whole vertex set stands in, so one leader anywhere suffices.
pub fn star_min_leaders(
    spec: &StarSpec,
    base: Option<Base<'_>>,
    opts: &Options,
) -> Result<LeaderSolution> {
    spec.require_two_legs()?;
    let g = star_graph(spec, base)?;
    let mut sets: Vec<VertexSet> = star_mpcvs(spec)?.into_iter().map(|s| s.set).collect();
    if base.is_some() {
        let n = g.order();
        for a in (spec.leg_vertex_count() + 1)..=n {
            for b in (a + 1)..=n {
                let pair = VertexSet::from_vertices([a, b]);
                if theorem3_test(&g, &pair)? {
                    sets.push(pair);
                }
            }
        }
    }
    if sets.is_empty() {
        sets.push(VertexSet::full(g.order()));
    }
    let family = MpcvsFamily::new(crate::critical::graph_id(&g), sets, false);
    Ok(LeaderSolution::from_family(family, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigen_residual;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    #[test]
    fn path6() {
        let d = path_mpcvs(6).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].prime, d[0].m, d[0].k), (3, 1, 2));
        assert_eq!(d[0].removed, set(&[2, 5]));
        assert_eq!(d[0].members, set(&[1, 3, 4, 6]));
        assert_eq!(d[0].block_sizes(), vec![1, 2, 1]);
    }

    #[test]
    fn path8_and_9() {
        assert!(path_mpcvs(8).unwrap().is_empty());
        let d = path_mpcvs(9).unwrap();
        assert_eq!(d.len(), 1);
        // i = (m+1) + l(2m+1) with m = 1
        let by_formula: VertexSet = (0..3).map(|l| 2 + 3 * l).collect();
        assert_eq!(d[0].removed, by_formula);
        assert_eq!(d[0].removed, set(&[2, 5, 8]));
    }

    #[test]
    fn algorithm_i_small() {
        assert_eq!(algorithm_i(6).unwrap().1, set(&[1, 3, 4, 6]));
        assert_eq!(algorithm_i(18).unwrap().0, set(&[2, 5, 8, 11, 14, 17]));
        let (f, l) = algorithm_i(1).unwrap();
        assert!(f.is_empty());
        assert_eq!(l, set(&[1]));
    }

    #[test]
    fn omnicontrollable() {
        assert!(path_omnicontrollable(4).unwrap());
        assert!(!path_omnicontrollable(6).unwrap());
        assert!(path_omnicontrollable(1).unwrap());
        assert!(path_omnicontrollable(0).is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(odd_prime_factors(105), vec![3, 5, 7]);
        assert_eq!(odd_prime_factors(64), Vec::<usize>::new());
        assert_eq!(odd_prime_factors(2 * 9 * 49), vec![3, 7]);
        assert_eq!(odd_prime_factors(97), vec![97]);
    }

    #[test]
    fn witness_residuals() {
        for n in 2..=40 {
            let g = Graph::path(n).unwrap();
            let l = g.laplacian();
            for d in path_mpcvs(n).unwrap() {
                let (lambda, y) = d.witness().unwrap();
                assert!(
                    eigen_residual(&l, lambda, &y) <= 1e-8,
                    "n={n} p={}",
                    d.prime
                );
                for v in 1..=n {
                    let zero = y[v - 1].abs() <= 1e-8 * y.amax();
                    assert_eq!(zero, d.removed.contains(v), "n={n} v={v}");
                }
            }
        }
    }

    #[test]
    fn star_construction() {
        let spec = StarSpec::new(vec![1, 1]).unwrap();
        let g = star_graph(&spec, None).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 3), (2, 3)]);

        let four_legs = StarSpec::new(vec![4, 7, 3, 1]).unwrap();
        let g = star_graph(&four_legs, None).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.edge_count(), 15);
        assert!(
            g.has_edge(4, 16) && g.has_edge(11, 16) && g.has_edge(14, 16) && g.has_edge(15, 16)
        );
        assert!(g.has_edge(1, 2) && g.has_edge(5, 6) && g.has_edge(12, 13));
        assert!(StarSpec::new(vec![2, 0]).is_err());
    }

    #[test]
    fn tree_from_base() {
        // hub v1, then v2 - v3, v3 - {v4, v5}
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
        let expected = Graph::from_edges(
            11,
            &[
                (1, 2),
                (2, 3),
                (3, 7),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 9),
                (9, 10),
                (9, 11),
            ],
        )
        .unwrap();
        assert_eq!(g, expected);

        let sol = star_min_leaders(
            &spec,
            Some(Base {
                graph: &base,
                hub: 1,
            }),
            &Options::default(),
        )
        .unwrap();
        assert_eq!(
            sol.family.sets,
            vec![set(&[10, 11]), set(&[1, 2, 3, 4, 5, 6])]
        );
        assert_eq!(sol.minimum_count, 2);
    }

    #[test]
    fn four_leg_star_sets() {
        let spec = StarSpec::new(vec![4, 7, 3, 1]).unwrap();
        let found = star_mpcvs(&spec).unwrap();
        let summary: Vec<_> = found
            .iter()
            .map(|s| (s.legs, s.prime, s.set.clone()))
            .collect();
        assert_eq!(
            summary,
            vec![
                ((1, 2), 3, set(&[1, 3, 4, 5, 7, 8, 10, 11])),
                ((1, 4), 3, set(&[1, 3, 4, 15])),
                ((2, 4), 3, set(&[5, 7, 8, 10, 11, 15])),
            ]
        );
        let sol = star_min_leaders(&spec, None, &Options::default()).unwrap();
        assert_eq!(sol.minimum_count, 2);
        for pair in &sol.optimal_sets {
            let legs: Vec<usize> = pair
                .iter()
                .map(|v| (0..4).find(|&l| spec.leg_vertices(l).contains(v)).unwrap())
                .collect();
            assert_ne!(legs[0], legs[1]);
        }
    }

    #[test]
    fn coprime_legs() {
        let spec = StarSpec::new(vec![1, 2]).unwrap();
        assert!(star_mpcvs(&spec).unwrap().is_empty());
        let sol = star_min_leaders(&spec, None, &Options::default()).unwrap();
        assert_eq!(sol.minimum_count, 1);
        assert!(star_mpcvs(&StarSpec::new(vec![3]).unwrap()).is_err());
    }

    #[test]
    fn legs_3_3() {
        let spec = StarSpec::new(vec![3, 3]).unwrap();
        let found = star_mpcvs(&spec).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].prime, 7);
        assert_eq!(found[0].set, set(&[1, 2, 3, 4, 5, 6]));
    }
}
