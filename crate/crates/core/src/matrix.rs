//! Dense matrix types shared by the spectral and controllability code.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// General rectangular real matrix.
pub type Matrix = DMatrix<f64>;

/// Dense real symmetric matrix. Symmetry is checked on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix(DMatrix<f64>);

impl SymmetricMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::InvalidArgument(format!(
                "matrix is {}x{}, expected square",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let scale = 1.0 + entries.amax();
        let n = entries.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                if (entries[(i, j)] - entries[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::NotSymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(Self(entries))
    }

    /// Wraps a matrix known to be symmetric by construction.
    pub(crate) fn from_trusted(entries: DMatrix<f64>) -> Self {
        debug_assert!(entries.is_square());
        Self(entries)
    }

    pub fn zeros(order: usize) -> Self {
        Self(DMatrix::zeros(order, order))
    }

    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row - 1, col - 1)]
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .row_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `L_{S→T}`: keeps rows in `rows` and columns in `cols`, ascending vertex order.
    pub fn submatrix(&self, rows: &VertexSet, cols: &VertexSet) -> Result<Matrix> {
        let order = self.order();
        for v in rows.iter().chain(cols.iter()) {
            if v == 0 || v > order {
                return Err(Error::VertexOutOfRange { vertex: v, order });
            }
        }
        let r: Vec<usize> = rows.iter().map(|v| v - 1).collect();
        let c: Vec<usize> = cols.iter().map(|v| v - 1).collect();
        Ok(Matrix::from_fn(r.len(), c.len(), |i, j| {
            self.0[(r[i], c[j])]
        }))
    }

    /// Principal submatrix `L_{S→S}`, which stays symmetric.
    pub fn principal(&self, set: &VertexSet) -> Result<SymmetricMatrix> {
        self.submatrix(set, set).map(SymmetricMatrix)
    }
}
