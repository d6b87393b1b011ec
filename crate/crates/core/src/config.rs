//! Numerical tolerances, size caps and execution mode.

/// Every numeric threshold used by the analyses, derived from one knob.
///
/// With the default knob `1e-8` the derived values are: eigenvalue grouping
/// `1e-8`, zero coordinate `1e-8`, kernel rank `1e-9`, Kalman rank and
/// eigenvalue matching `1e-7`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues closer than `eigen_group * (1 + ‖m‖∞)` share an eigenspace.
    pub eigen_group: f64,
    /// `|y_i| <= zero_coord * ‖y‖∞` counts as a zero coordinate.
    pub zero_coord: f64,
    /// Singular values below `kernel_rank * max(σ_max, 1)` are treated as zero.
    pub kernel_rank: f64,
    /// Relative threshold for new Krylov directions in the Kalman rank.
    pub kalman_rank: f64,
    /// Eigenvalues of `L` and `L_{F→F}` closer than `eigen_match * (1 + ‖L‖∞)` are shared.
    pub eigen_match: f64,
}

impl Tolerances {
    pub const DEFAULT_KNOB: f64 = 1e-8;

    pub fn from_knob(tol: f64) -> Self {
        Self {
            eigen_group: tol,
            zero_coord: tol,
            kernel_rank: tol / 10.0,
            kalman_rank: tol * 10.0,
            eigen_match: tol * 10.0,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::from_knob(Self::DEFAULT_KNOB)
    }
}

/// Whether data-parallel loops run on the rayon pool.
///
/// `Parallel` silently degrades to sequential execution when the crate is
/// built without the `parallel` feature. Results are identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Options for the exhaustive analyses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub tol: Tolerances,
    /// Largest graph order accepted by `enumerate_mpcvs` / `minimum_leader_sets`.
    pub enumeration_cap: usize,
    /// Largest set size accepted by the exhaustive minimality check.
    pub minimality_cap: usize,
    pub execution: Execution,
}

impl Options {
    pub const DEFAULT_ENUMERATION_CAP: usize = 16;
    pub const FORCED_ENUMERATION_CAP: usize = 20;
    pub const DEFAULT_MINIMALITY_CAP: usize = 20;

    pub fn with_tol(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_enumeration_cap(mut self, cap: usize) -> Self {
        self.enumeration_cap = cap;
        self
    }
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            enumeration_cap: Self::DEFAULT_ENUMERATION_CAP,
            minimality_cap: Self::DEFAULT_MINIMALITY_CAP,
            execution: Execution::default(),
        }
    }
}
