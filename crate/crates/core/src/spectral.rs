//! Symmetric eigendecomposition with eigenspace grouping, and the closed-form
//! spectra of the tridiagonal path blocks.
//!
//! A path cut at a set of isolated vertices splits into blocks of two shapes:
//!
//! ```text
//! End (D_m)            Interior (B_M)
//! [ 1 -1          ]    [ 2 -1          ]
//! [-1  2 -1       ]    [-1  2 -1       ]
//! [     ...       ]    [     ...       ]
//! [       -1  2   ]    [       -1  2   ]
//! ```
//!
//! Writing `λ = 2 − 2cos θ`, the eigenangles are `(2l−1)π/(2m+1)` for `D_m`
//! and `hπ/(M+1)` for `B_M`. Eigenvectors follow from the three-term
//! recurrence of the leading principal minors of `D − λI` (`φ`) and
//! `B − λI` (`ψ`): `y_i = φ_{i−1}(λ)·y_1`, respectively `ψ_{i−1}(λ)·y_1`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Eigenvalues grouped into eigenspaces with orthonormal bases.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    bases: Vec<DMatrix<f64>>,
    residual_tol: f64,
}

impl Spectrum {
    /// Distinct eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = usize> + '_ {
        self.bases.iter().map(|b| b.ncols())
    }

    pub fn multiplicity(&self, index: usize) -> usize {
        self.bases[index].ncols()
    }

    /// Orthonormal basis of eigenspace `index`, one column per vector.
    pub fn basis(&self, index: usize) -> &DMatrix<f64> {
        &self.bases[index]
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn order(&self) -> usize {
        self.bases.first().map_or(0, |b| b.nrows())
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    /// Index of the eigenvalue within `tol` of `value`, if any.
    pub fn find(&self, value: f64, tol: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|&l| (l - value).abs() <= tol)
    }
}

/// Full decomposition of `m`; eigenvalues within `tol·(1+‖m‖∞)` of the
/// first member of a run are merged into one eigenspace.
pub fn symmetric_eigen(m: &SymmetricMatrix, tol: f64) -> Result<Spectrum> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let a = m.as_matrix();
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "matrix has non-finite entries".into(),
        ));
    }
    let n = m.order();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: vec![],
            bases: vec![],
            residual_tol: tol,
        });
    }
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::InvalidArgument("eigensolver did not converge".into()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let scale = 1.0 + m.norm_inf();
    let gap = tol * scale;
    let mut eigenvalues = Vec::new();
    let mut bases = Vec::new();
    let mut start = 0;
    while start < n {
        let first = eig.eigenvalues[order[start]];
        let mut end = start + 1;
        while end < n && eig.eigenvalues[order[end]] - first <= gap {
            end += 1;
        }
        let members = &order[start..end];
        let mean = members.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / members.len() as f64;
        let basis = DMatrix::from_fn(n, members.len(), |r, c| eig.eigenvectors[(r, members[c])]);
        eigenvalues.push(mean);
        bases.push(basis);
        start = end;
    }

    Ok(Spectrum {
        eigenvalues,
        bases,
        residual_tol: 2.0 * gap,
    })
}

/// `‖m·y − λ·y‖∞`.
pub fn eigen_residual(m: &SymmetricMatrix, lambda: f64, y: &DVector<f64>) -> f64 {
    (m.as_matrix() * y - y * lambda).amax()
}

/// Angle `θ ∈ [0, π]` with `λ = 2 − 2cos θ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EigenAngle(f64);

impl EigenAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if (0.0..=PI).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::InvalidArgument(format!(
                "angle {theta} outside [0, π]"
            )))
        }
    }

    /// Angle associated with `λ ∈ [0, 4]`.
    pub fn from_eigenvalue(lambda: f64) -> Result<Self> {
        if !(0.0..=4.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue {lambda} outside [0, 4]"
            )));
        }
        Ok(Self(((2.0 - lambda) / 2.0).clamp(-1.0, 1.0).acos()))
    }

    pub fn theta(self) -> f64 {
        self.0
    }

    pub fn eigenvalue(self) -> f64 {
        2.0 - 2.0 * self.0.cos()
    }
}

/// Shape of a tridiagonal path block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// `D_m`: end segment of a cut path, `1` in the top-left corner.
    End,
    /// `B_M`: segment strictly between two cut vertices.
    Interior,
}

pub fn build_block(kind: BlockKind, size: usize) -> Result<SymmetricMatrix> {
    if size == 0 {
        return Err(Error::InvalidArgument(
            "block size must be at least 1".into(),
        ));
    }
    let mut m = DMatrix::zeros(size, size);
    for i in 0..size {
        m[(i, i)] = 2.0;
        if i + 1 < size {
            m[(i, i + 1)] = -1.0;
            m[(i + 1, i)] = -1.0;
        }
    }
    if kind == BlockKind::End {
        m[(0, 0)] = 1.0;
    }
    Ok(SymmetricMatrix::from_trusted(m))
}

/// Eigenangles of the block, ascending.
pub fn eigenangles(kind: BlockKind, size: usize) -> Vec<EigenAngle> {
    let s = size as f64;
    (1..=size)
        .map(|k| {
            let k = k as f64;
            match kind {
                BlockKind::End => EigenAngle((2.0 * k - 1.0) * PI / (2.0 * s + 1.0)),
                BlockKind::Interior => EigenAngle(k * PI / (s + 1.0)),
            }
        })
        .collect()
}

fn minor_recurrence(i: usize, lambda: f64, first: f64) -> f64 {
    match i {
        0 => 1.0,
        _ => {
            let (mut prev, mut cur) = (1.0, first);
            for _ in 1..i {
                (prev, cur) = (cur, (2.0 - lambda) * cur - prev);
            }
            cur
        }
    }
}

/// `φ_i(λ)`: `φ_0 = 1`, `φ_1 = 1 − λ`, `φ_i = (2−λ)φ_{i−1} − φ_{i−2}`.
pub fn phi(i: usize, theta: EigenAngle) -> f64 {
    let lambda = theta.eigenvalue();
    minor_recurrence(i, lambda, 1.0 - lambda)
}

/// `ψ_i(λ)`: `ψ_0 = 1`, `ψ_1 = 2 − λ`, `ψ_i = (2−λ)ψ_{i−1} − ψ_{i−2}`.
pub fn psi(i: usize, theta: EigenAngle) -> f64 {
    let lambda = theta.eigenvalue();
    minor_recurrence(i, lambda, 2.0 - lambda)
}

/// `cos((2i+1)θ/2) / cos(θ/2)`; `None` when `cos(θ/2)` vanishes.
pub fn phi_closed_form(i: usize, theta: EigenAngle) -> Option<f64> {
    let den = (theta.0 / 2.0).cos();
    (den.abs() > 1e-12).then(|| ((2 * i + 1) as f64 * theta.0 / 2.0).cos() / den)
}

/// `sin((i+1)θ) / sin θ`; `None` when `sin θ` vanishes.
pub fn psi_closed_form(i: usize, theta: EigenAngle) -> Option<f64> {
    let den = theta.0.sin();
    (den.abs() > 1e-12).then(|| ((i + 1) as f64 * theta.0).sin() / den)
}

/// Eigenvector `(y_1, …, y_size)` of the block for eigenangle `theta`.
pub fn block_eigenvector(
    kind: BlockKind,
    size: usize,
    theta: EigenAngle,
    y1: f64,
) -> Result<DVector<f64>> {
    if size == 0 {
        return Err(Error::InvalidArgument(
            "block size must be at least 1".into(),
        ));
    }
    if y1 == 0.0 || !y1.is_finite() {
        return Err(Error::InvalidArgument(
            "y1 must be a nonzero finite number".into(),
        ));
    }
    if !eigenangles(kind, size)
        .iter()
        .any(|a| (a.0 - theta.0).abs() <= 1e-9)
    {
        return Err(Error::NotEigenangle { theta: theta.0 });
    }
    let minor = match kind {
        BlockKind::End => phi,
        BlockKind::Interior => psi,
    };
    Ok(DVector::from_fn(size, |i, _| minor(i, theta) * y1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use approx::assert_abs_diff_eq;

    #[test]
    fn p3_spectrum() {
        let l = Graph::path(3).unwrap().laplacian();
        // det(L - xI) = -x (x-1) (x-3)
        let charpoly = |x: f64| {
            let m = l.as_matrix() - DMatrix::identity(3, 3) * x;
            m.determinant()
        };
        for root in [0.0, 1.0, 3.0] {
            assert_abs_diff_eq!(charpoly(root), 0.0, epsilon = 1e-12);
        }
        let s = symmetric_eigen(&l, 1e-8).unwrap();
        assert_eq!(s.len(), 3);
        for (got, want) in s.eigenvalues().iter().zip([0.0, 1.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert!(s.multiplicities().all(|m| m == 1));
    }

    #[test]
    fn zero_matrix_single_eigenspace() {
        let s = symmetric_eigen(&SymmetricMatrix::zeros(2), 1e-8).unwrap();
        assert_eq!(s.eigenvalues(), &[0.0]);
        assert_eq!(s.multiplicity(0), 2);
    }

    #[test]
    fn hub_square_has_repeated_one() {
        let g = Graph::from_edges(7, &[(1, 4), (2, 4), (3, 4), (4, 5), (4, 7), (5, 6), (6, 7)])
            .unwrap();
        let l = g.laplacian();
        let s = symmetric_eigen(&l, 1e-8).unwrap();
        let idx = s.find(1.0, 1e-9).expect("eigenvalue 1");
        assert!(s.multiplicity(idx) >= 2);
        assert_eq!(s.multiplicities().sum::<usize>(), 7);
        for k in 0..s.len() {
            for c in 0..s.multiplicity(k) {
                let y = s.basis(k).column(c).into_owned();
                assert!(eigen_residual(&l, s.eigenvalues()[k], &y) <= s.residual_tol());
            }
        }
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(symmetric_eigen(&SymmetricMatrix::zeros(2), 0.0).is_err());
    }

    #[test]
    fn blocks() {
        assert_eq!(
            build_block(BlockKind::End, 1)
                .unwrap()
                .as_matrix()
                .as_slice(),
            &[1.0]
        );
        assert_eq!(
            build_block(BlockKind::Interior, 2).unwrap().as_matrix(),
            &DMatrix::from_row_slice(2, 2, &[2., -1., -1., 2.])
        );
        assert_eq!(
            build_block(BlockKind::End, 2).unwrap().as_matrix(),
            &DMatrix::from_row_slice(2, 2, &[1., -1., -1., 2.])
        );
        assert!(build_block(BlockKind::End, 0).is_err());
    }

    #[test]
    fn angle_examples() {
        let d1 = eigenangles(BlockKind::End, 1);
        assert_abs_diff_eq!(d1[0].theta(), PI / 3.0);
        assert_abs_diff_eq!(d1[0].eigenvalue(), 1.0, epsilon = 1e-12);

        let b2: Vec<f64> = eigenangles(BlockKind::Interior, 2)
            .iter()
            .map(|a| a.eigenvalue())
            .collect();
        assert_abs_diff_eq!(b2[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b2[1], 3.0, epsilon = 1e-12);

        let d3: Vec<f64> = eigenangles(BlockKind::End, 3)
            .iter()
            .map(|a| a.theta())
            .collect();
        for (got, k) in d3.iter().zip([1.0, 3.0, 5.0]) {
            assert_abs_diff_eq!(*got, k * PI / 7.0);
        }
    }

    #[test]
    fn phi_examples() {
        let t = EigenAngle::new(0.7).unwrap();
        assert_abs_diff_eq!(phi(1, t), 2.0 * t.theta().cos() - 1.0, epsilon = 1e-14);
        for m in 1..=6 {
            for a in eigenangles(BlockKind::End, m) {
                assert_abs_diff_eq!(phi(m, a), 0.0, epsilon = 1e-12);
            }
        }
        // (2 - 1)(1 - 1) - 1
        assert_abs_diff_eq!(
            phi(2, EigenAngle::new(PI / 3.0).unwrap()),
            -1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn psi_examples() {
        assert_abs_diff_eq!(
            psi(1, EigenAngle::new(PI / 3.0).unwrap()),
            1.0,
            epsilon = 1e-14
        );
        for m in 1..=6 {
            for a in eigenangles(BlockKind::Interior, m) {
                assert_abs_diff_eq!(psi(m, a), 0.0, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(
            psi(2, EigenAngle::new(PI / 2.0).unwrap()),
            -1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn closed_forms_undefined_at_poles() {
        assert!(phi_closed_form(3, EigenAngle::new(PI).unwrap()).is_none());
        assert!(psi_closed_form(3, EigenAngle::new(0.0).unwrap()).is_none());
        assert_eq!(phi(0, EigenAngle::new(PI).unwrap()), 1.0);
    }

    #[test]
    fn block_eigenvector_examples() {
        let pi3 = EigenAngle::new(PI / 3.0).unwrap();
        assert_eq!(
            block_eigenvector(BlockKind::End, 1, pi3, 1.0)
                .unwrap()
                .as_slice(),
            &[1.0]
        );

        let y = block_eigenvector(BlockKind::Interior, 2, pi3, 1.0).unwrap();
        assert_abs_diff_eq!(y[0], 1.0);
        assert_abs_diff_eq!(y[1], 1.0, epsilon = 1e-14);
        let b2 = build_block(BlockKind::Interior, 2).unwrap();
        assert!(eigen_residual(&b2, 1.0, &y) < 1e-12);

        let pi7 = EigenAngle::new(PI / 7.0).unwrap();
        let y = block_eigenvector(BlockKind::End, 3, pi7, 1.0).unwrap();
        assert!(y.iter().all(|x| x.abs() > 1e-3));
        let d3 = build_block(BlockKind::End, 3).unwrap();
        assert!(eigen_residual(&d3, pi7.eigenvalue(), &y) < 1e-12);

        assert!(matches!(
            block_eigenvector(BlockKind::End, 3, pi3, 1.0),
            Err(Error::NotEigenangle { .. })
        ));
        assert!(block_eigenvector(BlockKind::End, 3, pi7, 0.0).is_err());
    }
}
