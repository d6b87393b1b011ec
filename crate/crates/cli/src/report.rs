//! Machine-readable report, schema version 1.

use serde::{Deserialize, Serialize};

use leader_core::{Spectrum, VertexSet};

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits; magnitudes below `1e-12` become `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x.abs() < 1e-12 {
        return if x.is_finite() { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: Input,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrum: Option<Vec<Eigenvalue>>,
    pub mpcvs: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_leader: Option<MinLeader>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdicts: Option<Verdicts>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub path: Option<PathSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub star: Option<Vec<StarEntry>>,
    pub omnicontrollable: bool,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: Input) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            spectrum: None,
            mpcvs: Vec::new(),
            min_leader: None,
            verdicts: None,
            path: None,
            star: None,
            omnicontrollable: false,
            warnings: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Input {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub file: Option<String>,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub legs: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub leaders: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
}

pub fn spectrum_entries(s: &Spectrum) -> Vec<Eigenvalue> {
    s.eigenvalues()
        .iter()
        .zip(s.multiplicities())
        .map(|(&value, multiplicity)| Eigenvalue {
            value: round12(value),
            multiplicity,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinLeader {
    pub count: usize,
    pub sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub controllable: bool,
    pub kalman: bool,
    pub kalman_rank: usize,
    pub kalman_advisory: bool,
    /// Bare shared-eigenvalue test.
    pub pbh: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shared_eigenvalue: Option<[f64; 2]>,
    pub eigenvector_pbh: bool,
    /// `None` when the graph is too large to enumerate.
    pub support: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unhit_mpcvs: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSection {
    pub primes: Vec<usize>,
    pub followers: Vec<usize>,
    pub leaders: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check_passed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarEntry {
    pub legs: [usize; 2],
    pub prime: usize,
    pub set: Vec<usize>,
}

pub fn sets(list: &[VertexSet]) -> Vec<Vec<usize>> {
    list.iter().map(|s| s.as_slice().to_vec()).collect()
}
