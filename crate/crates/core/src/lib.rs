//! Leader selection for controllability of undirected leader-follower networks.
//!
//! The network follows Laplacian consensus dynamics; a set of leader
//! vertices controls it exactly when every minimal perfect critical vertex
//! set (MPCVS) contains a leader. This crate finds MPCVSs spectrally (by
//! exhaustive enumeration on small graphs) and analytically for paths and
//! generalized stars, checks controllability three independent ways, and
//! solves the minimum-leader problem as an exact hitting set.

pub mod config;
pub mod controllability;
pub mod corpus;
pub mod critical;
pub mod error;
pub mod graph;
pub mod hitting;
pub mod matrix;
pub mod par;
pub mod pathstar;
pub mod spectral;

pub use config::{Execution, Options, Tolerances};
pub use controllability::{
    eigenvector_pbh_controllable, kalman_controllable, minimum_leader_sets,
    shared_eigenvalue_controllable, support_controllable, verify, Certificate,
    ControllabilityVerdict, LeaderSolution,
};
pub use critical::{
    enumerate_mpcvs, is_cvs, is_mpcvs, is_pcvs, lemma1_filter, proposition3_test, theorem3_test,
    Classification, CriticalSetReport, CriticalSets, MpcvsFamily,
};
pub use error::{Error, Result};
pub use graph::{parse_graph, Graph, VertexSet};
pub use matrix::{Matrix, SymmetricMatrix};
pub use pathstar::{
    algorithm_i, path_mpcvs, path_omnicontrollable, star_graph, star_min_leaders, star_mpcvs, Base,
    PathMpcvsDescriptor, StarMpcvs, StarSpec,
};
pub use spectral::{
    block_eigenvector, build_block, eigenangles, phi, psi, symmetric_eigen, BlockKind, EigenAngle,
    Spectrum,
};
