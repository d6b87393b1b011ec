//! Critical, perfect critical and minimal perfect critical vertex sets.
//!
//! A nonempty `S ⊆ V` is *critical* (CVS) when some Laplacian eigenvector
//! vanishes on `V \ S`, *perfect* (PCVS) when such an eigenvector can be
//! chosen nonzero on every vertex of `S`, and *minimal perfect* (MPCVS) when
//! no proper subset is a PCVS. Leaders control the network exactly when they
//! hit every MPCVS.
//!
//! For one eigenvalue with orthonormal eigenbasis `U`, the eigenvectors that
//! vanish on a set `A` form the subspace `W = U·ker(U[A, :])`. `S` is a PCVS
//! through that eigenvalue iff `W ≠ 0` (with `A = V \ S`) and no coordinate
//! functional `y ↦ y_i`, `i ∈ S`, is identically zero on `W`: a real vector
//! space is never a finite union of proper subspaces, so a single witness
//! nonzero on all of `S` then exists.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::config::Options;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matrix::SymmetricMatrix;
use crate::par;
use crate::spectral::{symmetric_eigen, Spectrum};

/// How far up the CVS ⊇ PCVS ⊇ MPCVS hierarchy a set reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    NotCritical,
    /// Critical, but no inducing eigenvector is nonzero on the whole set.
    CvsOnly,
    /// Perfect critical; minimality was not examined.
    Pcvs,
    /// Perfect critical with a proper subset that is itself perfect critical.
    PcvsNotMinimal,
    Mpcvs,
}

impl Classification {
    pub fn is_critical(self) -> bool {
        self != Self::NotCritical
    }

    pub fn is_perfect(self) -> bool {
        matches!(self, Self::Pcvs | Self::PcvsNotMinimal | Self::Mpcvs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalSetReport {
    pub set: VertexSet,
    pub classification: Classification,
    pub witness_eigenvalue: Option<f64>,
    /// Normalized to `‖y‖∞ = 1` with a positive first nonzero entry.
    pub witness_eigenvector: Option<Vec<f64>>,
}

/// All MPCVSs of a graph, in ascending cardinality then lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpcvsFamily {
    pub graph_id: String,
    pub sets: Vec<VertexSet>,
    /// True when produced by exhaustive enumeration.
    pub complete: bool,
}

impl MpcvsFamily {
    pub fn new(graph_id: impl Into<String>, mut sets: Vec<VertexSet>, complete: bool) -> Self {
        sets.sort_by(VertexSet::report_cmp);
        sets.dedup();
        Self {
            graph_id: graph_id.into(),
            sets,
            complete,
        }
    }

    /// Members other than the whole vertex set.
    pub fn proper(&self, n: usize) -> impl Iterator<Item = &VertexSet> {
        self.sets.iter().filter(move |s| s.len() < n)
    }

    /// True when the only MPCVS is `V`, i.e. any single leader suffices.
    pub fn is_omnicontrollable(&self, n: usize) -> bool {
        self.sets.len() == 1 && self.sets[0].len() == n
    }
}

/// Stable identifier of a graph: order, size and an FNV-1a digest of the edge list.
pub fn graph_id(g: &Graph) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (i, j) in g.edges() {
        for b in (i as u64)
            .to_le_bytes()
            .into_iter()
            .chain((j as u64).to_le_bytes())
        {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("n{}-m{}-{:016x}", g.order(), g.edge_count(), h)
}

/// Per-graph analysis state: the Laplacian, its grouped spectrum and options.
#[derive(Debug, Clone)]
pub struct CriticalSets<'g> {
    graph: &'g Graph,
    laplacian: SymmetricMatrix,
    spectrum: Spectrum,
    opts: Options,
}

impl<'g> CriticalSets<'g> {
    pub fn new(graph: &'g Graph, opts: Options) -> Result<Self> {
        graph.require_connected()?;
        let laplacian = graph.laplacian();
        let spectrum = symmetric_eigen(&laplacian, opts.tol.eigen_group)?;
        Ok(Self {
            graph,
            laplacian,
            spectrum,
            opts,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn laplacian(&self) -> &SymmetricMatrix {
        &self.laplacian
    }

    pub fn options(&self) -> &Options {
        &self.opts
    }

    /// Orthonormal basis (as columns) of the eigenvectors for eigenvalue
    /// `index` that vanish on every vertex of `avoid`. May have zero columns.
    pub fn vanishing_subspace(&self, index: usize, avoid: &VertexSet) -> Result<DMatrix<f64>> {
        avoid.check_range(self.graph.order())?;
        let rows: Vec<usize> = avoid.iter().map(|v| v - 1).collect();
        Ok(self.vanishing_rows(index, &rows))
    }

    fn vanishing_rows(&self, index: usize, avoid: &[usize]) -> DMatrix<f64> {
        let u = self.spectrum.basis(index);
        let d = u.ncols();
        if avoid.is_empty() {
            return u.clone();
        }
        // pad to at least d rows so the SVD yields the full right singular basis
        let rows = avoid.len().max(d);
        let mut a = DMatrix::zeros(rows, d);
        for (r, &v) in avoid.iter().enumerate() {
            a.row_mut(r).copy_from(&u.row(v));
        }
        let svd = a.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let sigma_max = svd.singular_values.max().max(1.0);
        let threshold = self.opts.tol.kernel_rank * sigma_max;
        let kernel: Vec<usize> = (0..d)
            .filter(|&k| svd.singular_values[k] <= threshold)
            .collect();
        if kernel.is_empty() {
            return DMatrix::zeros(u.nrows(), 0);
        }
        let k = DMatrix::from_fn(d, kernel.len(), |r, c| v_t[(kernel[c], r)]);
        u * k
    }

    /// Does some eigenvector of eigenvalue `index` vanish off `members` and
    /// stay nonzero on all of it? Returns the vanishing subspace when critical.
    fn examine(
        &self,
        index: usize,
        members: &[usize],
        outside: &[usize],
    ) -> (bool, Option<DMatrix<f64>>) {
        let zc = self.opts.tol.zero_coord;
        let u = self.spectrum.basis(index);
        if u.ncols() == 1 {
            // a 1-dimensional eigenspace: no SVD needed
            let col = u.column(0);
            let off: f64 = outside.iter().map(|&v| col[v] * col[v]).sum::<f64>().sqrt();
            if off > self.opts.tol.kernel_rank {
                return (false, None);
            }
            let perfect = members.iter().all(|&v| col[v].abs() > zc);
            return (perfect, Some(u.clone()));
        }
        let w = self.vanishing_rows(index, outside);
        if w.ncols() == 0 {
            return (false, None);
        }
        let perfect = members.iter().all(|&v| w.row(v).norm() > zc);
        (perfect, Some(w))
    }

    fn is_perfect_indices(&self, members: &[usize], outside: &[usize]) -> bool {
        (0..self.spectrum.len()).any(|k| self.examine(k, members, outside).0)
    }

    fn is_perfect_mask(&self, mask: u64) -> bool {
        let n = self.graph.order();
        let (members, outside): (Vec<usize>, Vec<usize>) =
            (0..n).partition(|&v| mask >> v & 1 == 1);
        self.is_perfect_indices(&members, &outside)
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        s.check_range(self.graph.order())
    }

    /// Classifies `s` up to perfection (CVS / PCVS), with a witness.
    fn classify_perfect(&self, s: &VertexSet) -> Result<CriticalSetReport> {
        self.check_set(s)?;
        let n = self.graph.order();
        let members: Vec<usize> = s.iter().map(|v| v - 1).collect();
        let outside: Vec<usize> = s.complement(n).iter().map(|v| v - 1).collect();

        let mut critical: Option<(usize, DVector<f64>)> = None;
        for k in 0..self.spectrum.len() {
            let (perfect, w) = self.examine(k, &members, &outside);
            let Some(w) = w else { continue };
            if perfect {
                if let Some(y) = self.generic_vector(&w, &members) {
                    return Ok(self.report(s, Classification::Pcvs, k, y));
                }
            }
            if critical.is_none() {
                critical = Some((k, w.column(0).into_owned()));
            }
        }
        Ok(match critical {
            Some((k, y)) => self.report(s, Classification::CvsOnly, k, y),
            None => CriticalSetReport {
                set: s.clone(),
                classification: Classification::NotCritical,
                witness_eigenvalue: None,
                witness_eigenvector: None,
            },
        })
    }

    /// Finds `y = W·c` with every `members` coordinate clear of zero.
    ///
    /// Sweeps small positive integer coefficient vectors `c ∈ {1..d+1}^d` in
    /// lexicographic order; if that grid is exhausted (or too large) it falls
    /// back to the moment curve `c_j = t^j`, where each coordinate is a
    /// nonzero polynomial in `t` with fewer than `d` roots.
    fn generic_vector(&self, w: &DMatrix<f64>, members: &[usize]) -> Option<DVector<f64>> {
        let d = w.ncols();
        let zc = self.opts.tol.zero_coord;
        let ratio = |y: &DVector<f64>| {
            let norm = y.amax();
            members
                .iter()
                .map(|&v| y[v].abs())
                .fold(f64::INFINITY, f64::min)
                / norm
        };
        const GRID_LIMIT: usize = 4096;
        const GOOD_ENOUGH: f64 = 1e-4;

        let mut best: Option<(f64, DVector<f64>)> = None;
        let mut consider = |c: &DVector<f64>| {
            let y = w * c;
            let r = ratio(&y);
            if best.as_ref().is_none_or(|(b, _)| r > *b) {
                best = Some((r, y));
            }
            r >= GOOD_ENOUGH
        };

        let base = d + 1;
        let grid = (0..d)
            .try_fold(1usize, |acc, _| acc.checked_mul(base))
            .unwrap_or(usize::MAX);
        for index in 0..grid.min(GRID_LIMIT) {
            // base-(d+1) digits of `index`, most significant first, shifted to 1..=d+1
            let mut rest = index;
            let mut c = DVector::from_element(d, 1.0);
            for j in (0..d).rev() {
                c[j] += (rest % base) as f64;
                rest /= base;
            }
            if consider(&c) {
                return best.map(|(_, y)| y);
            }
        }
        for t in 2..(members.len() * d + 3) {
            let c = DVector::from_fn(d, |j, _| (t as f64).powi(j as i32));
            if consider(&c) {
                break;
            }
        }
        best.filter(|(r, _)| *r > zc).map(|(_, y)| y)
    }

    fn report(
        &self,
        s: &VertexSet,
        class: Classification,
        k: usize,
        y: DVector<f64>,
    ) -> CriticalSetReport {
        let norm = y.amax();
        let zc = self.opts.tol.zero_coord;
        let sign = y
            .iter()
            .find(|x| x.abs() > zc * norm)
            .map_or(1.0, |x| x.signum());
        let y = y * (sign / norm);
        CriticalSetReport {
            set: s.clone(),
            classification: class,
            witness_eigenvalue: Some(self.spectrum.eigenvalues()[k]),
            witness_eigenvector: Some(y.iter().copied().collect()),
        }
    }

    /// CVS test. The report's classification is `NotCritical`, `CvsOnly` or `Pcvs`.
    pub fn is_cvs(&self, s: &VertexSet) -> Result<CriticalSetReport> {
        self.classify_perfect(s)
    }

    /// PCVS test. Same classification range as [`Self::is_cvs`].
    pub fn is_pcvs(&self, s: &VertexSet) -> Result<CriticalSetReport> {
        self.classify_perfect(s)
    }

    /// Full classification, checking every proper nonempty subset for minimality.
    pub fn is_mpcvs(&self, s: &VertexSet) -> Result<CriticalSetReport> {
        self.check_set(s)?;
        if s.len() > self.opts.minimality_cap {
            return Err(Error::CapExceeded {
                what: "minimality check",
                size: s.len(),
                cap: self.opts.minimality_cap,
            });
        }
        let mut report = self.classify_perfect(s)?;
        if report.classification != Classification::Pcvs {
            return Ok(report);
        }
        let members: Vec<usize> = s.iter().map(|v| v - 1).collect();
        let n = self.graph.order();
        let full = (1u64 << members.len()) - 1;
        let found = par::map_indices(self.opts.execution, full as usize - 1, |i| {
            let local = (i + 1) as u64;
            let sub: Vec<usize> = (0..members.len())
                .filter(|b| local >> b & 1 == 1)
                .map(|b| members[b])
                .collect();
            let mut inside = vec![false; n];
            for &v in &sub {
                inside[v] = true;
            }
            let outside: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
            self.is_perfect_indices(&sub, &outside)
        });
        report.classification = if found.into_iter().any(|f| f) {
            Classification::PcvsNotMinimal
        } else {
            Classification::Mpcvs
        };
        Ok(report)
    }

    /// Exhaustive MPCVS enumeration over all `2^n − 1` nonempty subsets.
    pub fn enumerate_mpcvs(&self) -> Result<MpcvsFamily> {
        let n = self.graph.order();
        if n > self.opts.enumeration_cap || n > 63 {
            return Err(Error::CapExceeded {
                what: "graph order for MPCVS enumeration",
                size: n,
                cap: self.opts.enumeration_cap.min(63),
            });
        }
        let nbrs = self.graph.neighbor_masks();
        let total = 1usize << n;
        // flags[mask] for mask in 1..total; index 0 unused
        let flags = par::map_indices(self.opts.execution, total, |mask| {
            mask != 0
                && neighbor_filter_passes(&nbrs, mask as u64, n)
                && self.is_perfect_mask(mask as u64)
        });

        // below[S]: some proper nonempty subset of S is perfect
        let mut below = vec![false; total];
        for mask in 1..total {
            let mut bits = mask;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                bits ^= b;
                let sub = mask ^ b;
                if sub != 0 && (flags[sub] || below[sub]) {
                    below[mask] = true;
                    break;
                }
            }
        }

        let sets = (1..total)
            .filter(|&m| flags[m] && !below[m])
            .map(|m| VertexSet::from_mask(m as u64))
            .collect();
        Ok(MpcvsFamily::new(graph_id(self.graph), sets, true))
    }
}

fn neighbor_filter_passes(nbrs: &[u64], mask: u64, n: usize) -> bool {
    let k = mask.count_ones();
    (0..n).filter(|&v| mask >> v & 1 == 0).all(|v| {
        let c = (nbrs[v] & mask).count_ones();
        c != 1 && c + 1 != k
    })
}

pub fn is_cvs(g: &Graph, s: &VertexSet) -> Result<CriticalSetReport> {
    CriticalSets::new(g, Options::default())?.is_cvs(s)
}

pub fn is_pcvs(g: &Graph, s: &VertexSet) -> Result<CriticalSetReport> {
    CriticalSets::new(g, Options::default())?.is_pcvs(s)
}

pub fn is_mpcvs(g: &Graph, s: &VertexSet) -> Result<CriticalSetReport> {
    CriticalSets::new(g, Options::default())?.is_mpcvs(s)
}

pub fn enumerate_mpcvs(g: &Graph) -> Result<MpcvsFamily> {
    CriticalSets::new(g, Options::default())?.enumerate_mpcvs()
}

fn outside_neighbor_counts(g: &Graph, s: &VertexSet) -> Result<Vec<(usize, usize)>> {
    s.check_range(g.order())?;
    Ok((1..=g.order())
        .filter(|&v| !s.contains(v))
        .map(|v| (v, g.neighbors(v).filter(|&u| s.contains(u)).count()))
        .collect())
}

/// Sufficient CVS condition: every outside vertex sees none or all of `s`.
pub fn proposition3_test(g: &Graph, s: &VertexSet) -> Result<bool> {
    if s.len() < 2 {
        return Err(Error::InvalidArgument(
            "set must have at least 2 vertices".into(),
        ));
    }
    Ok(outside_neighbor_counts(g, s)?
        .into_iter()
        .all(|(_, c)| c == 0 || c == s.len()))
}

/// Necessary PCVS condition: no outside vertex sees exactly 1 or `k−1` members.
pub fn lemma1_filter(g: &Graph, s: &VertexSet) -> Result<bool> {
    if s.len() < 2 {
        return Err(Error::InvalidArgument(
            "set must have at least 2 vertices".into(),
        ));
    }
    let k = s.len();
    Ok(outside_neighbor_counts(g, s)?
        .into_iter()
        .all(|(_, c)| c != 1 && c != k - 1))
}

/// Exact graphical MPCVS test for 2-sets: the pair are twins.
pub fn theorem3_test(g: &Graph, s: &VertexSet) -> Result<bool> {
    if s.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "twin test needs exactly 2 vertices, got {}",
            s.len()
        )));
    }
    g.require_connected()?;
    proposition3_test(g, s)
}
