//! Controllability of `ẋ = Ax + Bu` with `A = L_{F→F}`, `B = L_{F→F̄}`
//! (followers `F`, leaders `F̄`), decided three independent ways:
//!
//! * Kalman: `[B, AB, …, A^{N−1}B]` has rank `N = |F|`;
//! * shared eigenvalue: `L` and `L_{F→F}` have no eigenvalue in common;
//! * support: every MPCVS contains a leader.
//!
//! The bare shared-eigenvalue condition is exact for a single leader only.
//! With several leaders a common eigenvalue need not come with a common
//! eigenvector, so [`eigenvector_pbh_controllable`] also checks that some
//! eigenvector of `L_{F→F}` extends by zero to an eigenvector of `L`.
//!
//! The minimum-leader problem is then a minimum hitting set over the MPCVS family.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::config::Options;
use crate::critical::{CriticalSets, MpcvsFamily};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hitting::minimum_hitting_sets;
use crate::matrix::Matrix;
use crate::spectral::symmetric_eigen;

/// Graph order above which the Kalman rank is reported as advisory only.
pub const KALMAN_ADVISORY_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// Rank of the controllability matrix; `0` when there are no followers.
    pub kalman_rank: usize,
    pub follower_count: usize,
    /// `(eigenvalue of L, eigenvalue of L_{F→F})` closest pair within tolerance.
    pub shared_eigenvalue: Option<(f64, f64)>,
    pub unhit_mpcvs: Option<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControllabilityVerdict {
    pub leader_set: VertexSet,
    pub follower_set: VertexSet,
    pub kalman: bool,
    pub shared_eigenvalue: bool,
    pub eigenvector_pbh: bool,
    pub support: bool,
    /// `kalman == shared_eigenvalue == support`.
    pub agree: bool,
    /// `kalman == eigenvector_pbh == support`.
    pub agree_exact: bool,
    /// The graph is large enough that the Kalman rank is numerically fragile.
    pub kalman_advisory: bool,
    pub certificate: Certificate,
}

impl ControllabilityVerdict {
    /// Consensus of the exact tests; the support test decides a split.
    pub fn controllable(&self) -> bool {
        if self.agree_exact {
            self.kalman
        } else {
            self.support
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeaderSolution {
    pub minimum_count: usize,
    pub optimal_sets: Vec<VertexSet>,
    pub family: MpcvsFamily,
}

impl LeaderSolution {
    pub fn from_family(family: MpcvsFamily, opts: &Options) -> Self {
        let (minimum_count, optimal_sets) = minimum_hitting_sets(&family.sets, opts.execution);
        Self {
            minimum_count,
            optimal_sets,
            family,
        }
    }
}

fn check_leaders(g: &Graph, leaders: &VertexSet) -> Result<()> {
    g.require_connected()?;
    if leaders.is_empty() {
        return Err(Error::EmptySet);
    }
    leaders.check_range(g.order())
}

/// `C = [B, AB, A²B, …, A^{N−1}B]` for followers `V \ leaders`.
pub fn controllability_matrix(g: &Graph, leaders: &VertexSet) -> Result<Matrix> {
    check_leaders(g, leaders)?;
    let followers = leaders.complement(g.order());
    let l = g.laplacian();
    let a = l.submatrix(&followers, &followers)?;
    let b = l.submatrix(&followers, leaders)?;
    let n = followers.len();
    let mut c = Matrix::zeros(n, n * b.ncols());
    let mut block = b;
    for k in 0..n {
        c.columns_mut(k * block.ncols(), block.ncols())
            .copy_from(&block);
        block = &a * block;
    }
    Ok(c)
}

/// Kalman rank test. Returns `(controllable, rank(C))`.
///
/// The rank of `C` equals the dimension of the Krylov space spanned by the
/// columns of `B` under `A`; it is computed with an orthonormal Krylov basis
/// (modified Gram-Schmidt with reorthogonalization) instead of an SVD of the
/// raw powers, which lose all precision past `N ≈ 9` on paths.
pub fn kalman_controllable(
    g: &Graph,
    leaders: &VertexSet,
    opts: &Options,
) -> Result<(bool, usize)> {
    check_leaders(g, leaders)?;
    let followers = leaders.complement(g.order());
    if followers.is_empty() {
        return Ok((true, 0));
    }
    let l = g.laplacian();
    let a = l.submatrix(&followers, &followers)?;
    let b = l.submatrix(&followers, leaders)?;
    let rank = krylov_rank(&a, &b, opts.tol.kalman_rank);
    Ok((rank == followers.len(), rank))
}

fn krylov_rank(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> usize {
    let n = a.nrows();
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut frontier: Vec<DVector<f64>> = b.column_iter().map(|c| c.into_owned()).collect();
    while !frontier.is_empty() && basis.len() < n {
        let mut added = Vec::new();
        for mut w in frontier {
            let scale = w.norm();
            if scale == 0.0 {
                continue;
            }
            for _ in 0..2 {
                for q in &basis {
                    let proj = q.dot(&w);
                    w.axpy(-proj, q, 1.0);
                }
            }
            let norm = w.norm();
            if norm > tol * scale {
                let q = w / norm;
                basis.push(q.clone());
                added.push(q);
                if basis.len() == n {
                    break;
                }
            }
        }
        frontier = added.iter().map(|q| a * q).collect();
    }
    basis.len()
}

/// Shared-eigenvalue test. Returns the closest shared pair when uncontrollable.
pub fn shared_eigenvalue_controllable(
    g: &Graph,
    leaders: &VertexSet,
    opts: &Options,
) -> Result<(bool, Option<(f64, f64)>)> {
    check_leaders(g, leaders)?;
    let followers = leaders.complement(g.order());
    if followers.is_empty() {
        return Ok((true, None));
    }
    let l = g.laplacian();
    let tol = opts.tol.eigen_match * (1.0 + l.norm_inf());
    let full = symmetric_eigen(&l, opts.tol.eigen_group)?;
    let sub = symmetric_eigen(&l.principal(&followers)?, opts.tol.eigen_group)?;
    let closest = full
        .eigenvalues()
        .iter()
        .flat_map(|&x| sub.eigenvalues().iter().map(move |&y| (x, y)))
        .min_by(|p, q| (p.0 - p.1).abs().total_cmp(&(q.0 - q.1).abs()));
    match closest {
        Some((x, y)) if (x - y).abs() <= tol => Ok((false, Some((x, y)))),
        _ => Ok((true, None)),
    }
}

/// PBH test on eigenvectors: uncontrollable iff some eigenvector `y` of
/// `L_{F→F}` satisfies `L_{F̄→F} y = 0`. Returns the offending eigenvalue.
pub fn eigenvector_pbh_controllable(
    g: &Graph,
    leaders: &VertexSet,
    opts: &Options,
) -> Result<(bool, Option<f64>)> {
    check_leaders(g, leaders)?;
    let followers = leaders.complement(g.order());
    if followers.is_empty() {
        return Ok((true, None));
    }
    let l = g.laplacian();
    let coupling = l.submatrix(leaders, &followers)?;
    let sub = symmetric_eigen(&l.principal(&followers)?, opts.tol.eigen_group)?;
    let scale = 1.0 + l.norm_inf();
    for index in 0..sub.len() {
        let u = sub.basis(index);
        let image = &coupling * u;
        if image.ncols() > image.nrows() {
            return Ok((false, Some(sub.eigenvalues()[index])));
        }
        let smin = image.singular_values().min();
        if smin <= opts.tol.eigen_match * scale {
            return Ok((false, Some(sub.eigenvalues()[index])));
        }
    }
    Ok((true, None))
}

/// Support test over an exhaustive MPCVS family.
pub fn support_controllable(
    g: &Graph,
    leaders: &VertexSet,
    family: &MpcvsFamily,
) -> Result<(bool, Option<VertexSet>)> {
    check_leaders(g, leaders)?;
    if !family.complete {
        return Err(Error::IncompleteFamily);
    }
    match family.sets.iter().find(|s| !s.intersects(leaders)) {
        Some(s) => Ok((false, Some(s.clone()))),
        None => Ok((true, None)),
    }
}

/// Runs all three tests against a precomputed family.
pub fn verify_with_family(
    g: &Graph,
    leaders: &VertexSet,
    family: &MpcvsFamily,
    opts: &Options,
) -> Result<ControllabilityVerdict> {
    let (kalman, kalman_rank) = kalman_controllable(g, leaders, opts)?;
    let (shared_ok, shared) = shared_eigenvalue_controllable(g, leaders, opts)?;
    let (eigenvector_pbh, _) = eigenvector_pbh_controllable(g, leaders, opts)?;
    let (support, unhit) = support_controllable(g, leaders, family)?;
    let follower_set = leaders.complement(g.order());
    Ok(ControllabilityVerdict {
        leader_set: leaders.clone(),
        kalman,
        shared_eigenvalue: shared_ok,
        eigenvector_pbh,
        support,
        agree: kalman == shared_ok && shared_ok == support,
        agree_exact: kalman == eigenvector_pbh && eigenvector_pbh == support,
        kalman_advisory: g.order() > KALMAN_ADVISORY_ORDER,
        certificate: Certificate {
            kalman_rank,
            follower_count: follower_set.len(),
            shared_eigenvalue: shared,
            unhit_mpcvs: unhit,
        },
        follower_set,
    })
}

/// Runs all three tests; the MPCVS family is enumerated exhaustively.
pub fn verify(g: &Graph, leaders: &VertexSet, opts: &Options) -> Result<ControllabilityVerdict> {
    check_leaders(g, leaders)?;
    let family = CriticalSets::new(g, *opts)?.enumerate_mpcvs()?;
    verify_with_family(g, leaders, &family, opts)
}

/// Exact minimum leader sets: all minimum hitting sets of the MPCVS family.
pub fn minimum_leader_sets(g: &Graph, opts: &Options) -> Result<LeaderSolution> {
    let family = CriticalSets::new(g, *opts)?.enumerate_mpcvs()?;
    Ok(LeaderSolution::from_family(family, opts))
}
