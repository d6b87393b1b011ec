//! `leaders` command-line front end: argument parsing, dispatch and rendering.

pub mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use leader_core::controllability::{verify_with_family, KALMAN_ADVISORY_ORDER};
use leader_core::pathstar::Base;
use leader_core::{
    algorithm_i, eigenvector_pbh_controllable, kalman_controllable, parse_graph, path_mpcvs,
    shared_eigenvalue_controllable, star_graph, star_min_leaders, star_mpcvs, CriticalSets, Graph,
    MpcvsFamily, Options, StarSpec, Tolerances, VertexSet,
};

use report::{round12, sets, Input, MinLeader, PathSection, Report, StarEntry, Verdicts};

#[derive(Debug, Parser)]
#[command(
    name = "leaders",
    version,
    about = "Leader selection for controllability of networks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Numerical tolerance knob.
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT_KNOB)]
    pub tol: f64,
    /// Allow exhaustive enumeration up to 20 vertices.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, all MPCVSs and every minimum leader set of a graph file.
    Analyze { file: PathBuf },
    /// Check whether the given leaders control the network.
    Verify {
        file: PathBuf,
        /// Comma-separated vertices, e.g. `1,2,5` or `v1,v2,v5`.
        #[arg(long, value_delimiter = ',', value_parser = parse_vertex, required = true)]
        leaders: Vec<usize>,
    },
    /// Analytic MPCVSs and single-leader locations of the path P_n.
    Path {
        n: usize,
        /// Cross-check against exhaustive enumeration and the Kalman test.
        #[arg(long)]
        check: bool,
    },
    /// Paths glued at a hub: MPCVSs carried by pairs of legs.
    Star {
        /// Comma-separated leg lengths, e.g. `4,7,3,1`.
        #[arg(long, value_delimiter = ',', value_parser = parse_vertex, required = true)]
        legs: Vec<usize>,
        /// Base graph file; the legs attach to `--hub` instead of a bare vertex.
        #[arg(long, requires = "hub")]
        base: Option<PathBuf>,
        /// Hub vertex in the base graph's numbering.
        #[arg(long, requires = "base")]
        hub: Option<usize>,
    },
}

fn parse_vertex(text: &str) -> Result<usize, String> {
    let t = text.trim();
    let digits = t.strip_prefix('v').unwrap_or(t);
    digits
        .parse::<usize>()
        .map_err(|_| format!("`{t}` is not a positive integer"))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Core(#[from] leader_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for bad input, 3 for a disconnected graph, 4 when a size cap is hit.
    pub fn exit_code(&self) -> i32 {
        use leader_core::Error as E;
        match self {
            CliError::Core(E::Disconnected) => 3,
            CliError::Core(E::CapExceeded { .. }) => 4,
            _ => 2,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.report).expect("report serializes") + "\n"
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = options(&cli.global)?;
    let mut warnings = Vec::new();
    if cli.global.force {
        warnings.push(format!(
            "--force: exhaustive enumeration allowed up to {} vertices; this can take minutes",
            Options::FORCED_ENUMERATION_CAP
        ));
    }
    let mut outcome = match &cli.command {
        Command::Analyze { file } => analyze(file, &opts)?,
        Command::Verify { file, leaders } => verify(file, leaders, &opts)?,
        Command::Path { n, check } => path(*n, *check, &opts)?,
        Command::Star { legs, base, hub } => star(legs, base.as_deref().zip(*hub), &opts)?,
    };
    warnings.append(&mut outcome.report.warnings);
    outcome.report.warnings = warnings;
    for w in &outcome.report.warnings {
        let _ = writeln!(outcome.text, "warning: {w}");
    }
    Ok(outcome)
}

fn options(global: &GlobalArgs) -> Result<Options, CliError> {
    if !(global.tol > 0.0 && global.tol < 1e-2) {
        return Err(CliError::Usage(format!(
            "--tol must lie in (0, 1e-2), got {}",
            global.tol
        )));
    }
    let mut opts = Options::default().with_tol(Tolerances::from_knob(global.tol));
    if global.force {
        opts = opts.with_enumeration_cap(Options::FORCED_ENUMERATION_CAP);
    }
    Ok(opts)
}

fn load(file: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(file).map_err(|source| CliError::Io {
        path: file.to_path_buf(),
        source,
    })?;
    Ok(parse_graph(&text)?)
}

fn graph_input(file: Option<&Path>, g: &Graph) -> Input {
    Input {
        file: file.map(|f| f.display().to_string()),
        n: g.order(),
        edges: g.edges().map(|(a, b)| [a, b]).collect(),
        legs: None,
        leaders: None,
    }
}

fn fmt_value(x: f64) -> String {
    format!("{}", round12(x))
}

fn fmt_sets(out: &mut String, list: &[VertexSet]) {
    for s in list {
        let _ = writeln!(out, "  {s}");
    }
}

fn analyze(file: &Path, opts: &Options) -> Result<Outcome, CliError> {
    let g = load(file)?;
    let cs = CriticalSets::new(&g, *opts)?;
    let family = cs.enumerate_mpcvs()?;
    let solution = leader_core::LeaderSolution::from_family(family, opts);
    let n = g.order();

    let mut report = Report::new("analyze", graph_input(Some(file), &g));
    report.spectrum = Some(report::spectrum_entries(cs.spectrum()));
    report.mpcvs = sets(&solution.family.sets);
    report.min_leader = Some(MinLeader {
        count: solution.minimum_count,
        sets: sets(&solution.optimal_sets),
    });
    report.omnicontrollable = solution.family.is_omnicontrollable(n);

    let mut text = String::new();
    let _ = writeln!(text, "graph: {} vertices, {} edges", n, g.edge_count());
    let spectrum: Vec<String> = report
        .spectrum
        .as_ref()
        .unwrap()
        .iter()
        .map(|e| {
            if e.multiplicity > 1 {
                format!("{} (x{})", fmt_value(e.value), e.multiplicity)
            } else {
                fmt_value(e.value)
            }
        })
        .collect();
    let _ = writeln!(text, "spectrum: {}", spectrum.join(", "));
    let _ = writeln!(text, "MPCVS ({}):", solution.family.sets.len());
    fmt_sets(&mut text, &solution.family.sets);
    if report.omnicontrollable {
        let _ = writeln!(
            text,
            "omnicontrollable: any single vertex controls the network"
        );
    }
    let _ = writeln!(
        text,
        "minimum leaders: {} ({} optimal sets)",
        solution.minimum_count,
        solution.optimal_sets.len()
    );
    fmt_sets(&mut text, &solution.optimal_sets);
    Ok(Outcome {
        report,
        text,
        exit_code: 0,
    })
}

fn verify(file: &Path, leaders: &[usize], opts: &Options) -> Result<Outcome, CliError> {
    let g = load(file)?;
    let leader_set = VertexSet::from_vertices(leaders.iter().copied());
    if leader_set.len() != leaders.len() {
        return Err(CliError::Usage("leader list contains duplicates".into()));
    }
    let n = g.order();
    let mut report = Report::new("verify", graph_input(Some(file), &g));
    report.input.leaders = Some(leader_set.as_slice().to_vec());

    let cs = CriticalSets::new(&g, *opts)?;
    let family: Option<MpcvsFamily> = match cs.enumerate_mpcvs() {
        Ok(f) => Some(f),
        Err(leader_core::Error::CapExceeded { .. }) => {
            report.warnings.push(format!(
                "support test skipped: {n} vertices exceed the enumeration cap of {}",
                opts.enumeration_cap
            ));
            None
        }
        Err(e) => return Err(e.into()),
    };

    let verdicts = match &family {
        Some(family) => {
            let v = verify_with_family(&g, &leader_set, family, opts)?;
            if !v.agree_exact {
                report
                    .warnings
                    .push("exact controllability tests disagree".into());
            }
            Verdicts {
                controllable: v.controllable(),
                kalman: v.kalman,
                kalman_rank: v.certificate.kalman_rank,
                kalman_advisory: v.kalman_advisory,
                pbh: v.shared_eigenvalue,
                shared_eigenvalue: v
                    .certificate
                    .shared_eigenvalue
                    .map(|(a, b)| [round12(a), round12(b)]),
                eigenvector_pbh: v.eigenvector_pbh,
                support: Some(v.support),
                unhit_mpcvs: v.certificate.unhit_mpcvs.map(|s| s.as_slice().to_vec()),
            }
        }
        None => {
            let (kalman, rank) = kalman_controllable(&g, &leader_set, opts)?;
            let (pbh, shared) = shared_eigenvalue_controllable(&g, &leader_set, opts)?;
            let (eigenvector_pbh, _) = eigenvector_pbh_controllable(&g, &leader_set, opts)?;
            Verdicts {
                controllable: eigenvector_pbh,
                kalman,
                kalman_rank: rank,
                kalman_advisory: n > KALMAN_ADVISORY_ORDER,
                pbh,
                shared_eigenvalue: shared.map(|(a, b)| [round12(a), round12(b)]),
                eigenvector_pbh,
                support: None,
                unhit_mpcvs: None,
            }
        }
    };
    if verdicts.pbh != verdicts.eigenvector_pbh {
        report.warnings.push(
            "L and L_FF share an eigenvalue without a common eigenvector; the bare shared-eigenvalue test is inconclusive for several leaders"
                .into(),
        );
    }
    if let Some(f) = &family {
        report.mpcvs = sets(&f.sets);
        report.omnicontrollable = f.is_omnicontrollable(n);
    }

    let mut text = String::new();
    let followers = leader_set.complement(n);
    let _ = writeln!(text, "leaders {leader_set}, followers {followers}");
    let advisory = if verdicts.kalman_advisory {
        " (advisory)"
    } else {
        ""
    };
    let _ = writeln!(
        text,
        "kalman: rank {}/{} -> {}{advisory}",
        verdicts.kalman_rank,
        followers.len(),
        yes_no(verdicts.kalman)
    );
    match verdicts.shared_eigenvalue {
        Some([a, b]) => {
            let _ = writeln!(
                text,
                "shared eigenvalue: L has {a}, L_FF has {b} -> not controllable"
            );
        }
        None => {
            let _ = writeln!(text, "shared eigenvalue: none -> controllable");
        }
    }
    let _ = writeln!(
        text,
        "eigenvector pbh: {}",
        yes_no(verdicts.eigenvector_pbh)
    );
    match (&verdicts.support, &verdicts.unhit_mpcvs) {
        (Some(_), Some(s)) => {
            let s = VertexSet::from_vertices(s.iter().copied());
            let _ = writeln!(text, "support: MPCVS {s} has no leader -> not controllable");
        }
        (Some(_), None) => {
            let _ = writeln!(text, "support: every MPCVS has a leader -> controllable");
        }
        (None, _) => {
            let _ = writeln!(text, "support: skipped");
        }
    }
    let verdict = if verdicts.controllable {
        "CONTROLLABLE"
    } else {
        "NOT CONTROLLABLE"
    };
    let _ = writeln!(text, "{verdict}");
    let exit_code = if verdicts.controllable { 0 } else { 1 };
    report.verdicts = Some(verdicts);
    Ok(Outcome {
        report,
        text,
        exit_code,
    })
}

fn yes_no(ok: bool) -> &'static str {
    if ok {
        "controllable"
    } else {
        "not controllable"
    }
}

fn path(n: usize, check: bool, opts: &Options) -> Result<Outcome, CliError> {
    let descriptors = path_mpcvs(n)?;
    let (followers, leaders) = algorithm_i(n)?;
    let omni = descriptors.is_empty();
    let mut analytic: Vec<VertexSet> = descriptors.iter().map(|d| d.members.clone()).collect();
    if omni {
        analytic.push(VertexSet::full(n));
    }
    analytic.sort_by(VertexSet::report_cmp);

    let mut report = Report::new(
        "path",
        Input {
            file: None,
            n,
            edges: Vec::new(),
            legs: None,
            leaders: None,
        },
    );
    if n <= 64 {
        report.input.edges = (1..n).map(|i| [i, i + 1]).collect();
    }
    report.mpcvs = sets(&analytic);
    report.min_leader = Some(MinLeader {
        count: 1,
        sets: leaders.iter().map(|v| vec![v]).collect(),
    });
    report.omnicontrollable = omni;

    let mut text = String::new();
    let _ = writeln!(text, "path P_{n}");
    for d in &descriptors {
        let _ = writeln!(
            text,
            "prime {} (m = {}, k = {}): removed {}, MPCVS {}",
            d.prime, d.m, d.k, d.removed, d.members
        );
    }
    if omni {
        let _ = writeln!(text, "omnicontrollable: any single vertex controls P_{n}");
    }
    let _ = writeln!(text, "followers: {followers}");
    let _ = writeln!(text, "leaders ({}): {leaders}", leaders.len());

    let mut check_passed = None;
    if check {
        let g = Graph::path(n)?;
        let family = CriticalSets::new(&g, *opts)?.enumerate_mpcvs()?;
        let kalman: VertexSet = (1..=n)
            .filter(|&v| {
                kalman_controllable(&g, &VertexSet::from_vertices([v]), opts)
                    .map(|r| r.0)
                    .unwrap_or(false)
            })
            .collect();
        let ok = family.sets == analytic && kalman == leaders;
        if !ok {
            report.warnings.push(format!(
                "check failed: enumeration gives {} MPCVSs, Kalman single leaders {kalman}",
                family.sets.len()
            ));
        }
        let _ = writeln!(
            text,
            "check against enumeration and Kalman: {}",
            if ok { "ok" } else { "MISMATCH" }
        );
        check_passed = Some(ok);
    }
    report.path = Some(PathSection {
        primes: descriptors.iter().map(|d| d.prime).collect(),
        followers: followers.as_slice().to_vec(),
        leaders: leaders.as_slice().to_vec(),
        check_passed,
    });
    let exit_code = if check_passed == Some(false) { 1 } else { 0 };
    Ok(Outcome {
        report,
        text,
        exit_code,
    })
}

fn star(legs: &[usize], base: Option<(&Path, usize)>, opts: &Options) -> Result<Outcome, CliError> {
    let spec = StarSpec::new(legs.to_vec())?;
    let base_graph = base.map(|(file, _)| load(file)).transpose()?;
    let base_arg = base_graph
        .as_ref()
        .zip(base.map(|b| b.1))
        .map(|(graph, hub)| Base { graph, hub });
    let g = star_graph(&spec, base_arg)?;
    let n = g.order();
    let found = star_mpcvs(&spec)?;
    let solution = star_min_leaders(&spec, base_arg, opts)?;

    let mut input = graph_input(base.map(|b| b.0), &g);
    input.legs = Some(legs.to_vec());
    let mut report = Report::new("star", input);
    report.star = Some(
        found
            .iter()
            .map(|s| StarEntry {
                legs: [s.legs.0, s.legs.1],
                prime: s.prime,
                set: s.set.as_slice().to_vec(),
            })
            .collect(),
    );
    report.mpcvs = sets(&solution.family.sets);
    report.min_leader = Some(MinLeader {
        count: solution.minimum_count,
        sets: sets(&solution.optimal_sets),
    });
    report.omnicontrollable = solution.family.is_omnicontrollable(n);

    let mut text = String::new();
    let hub = match base {
        Some((_, h)) => spec.leg_vertex_count() + h,
        None => spec.bare_hub(),
    };
    let _ = writeln!(
        text,
        "{} legs {:?}, {} vertices, hub v{hub}",
        legs.len(),
        legs,
        n
    );
    for (k, s) in found.iter().enumerate() {
        let _ = writeln!(
            text,
            "S{}: legs ({}, {}), prime {}: {}",
            k + 1,
            s.legs.0,
            s.legs.1,
            s.prime,
            s.set
        );
    }
    if found.is_empty() {
        let _ = writeln!(text, "no pair of legs carries an MPCVS");
    }
    let _ = writeln!(
        text,
        "minimum leaders: {} ({} optimal sets)",
        solution.minimum_count,
        solution.optimal_sets.len()
    );
    fmt_sets(&mut text, &solution.optimal_sets);

    if n <= opts.enumeration_cap {
        let exhaustive = CriticalSets::new(&g, *opts)?.enumerate_mpcvs()?;
        let missed: Vec<&VertexSet> = exhaustive
            .sets
            .iter()
            .filter(|s| !solution.family.sets.contains(s))
            .collect();
        let spurious: Vec<&VertexSet> = solution
            .family
            .sets
            .iter()
            .filter(|s| !exhaustive.sets.contains(s))
            .collect();
        if !missed.is_empty() || !spurious.is_empty() {
            let list = |v: &[&VertexSet]| {
                v.iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            report.warnings.push(format!(
                "analytic family differs from exhaustive enumeration: missing [{}], extra [{}]",
                list(&missed),
                list(&spurious)
            ));
            let exact = leader_core::LeaderSolution::from_family(exhaustive, opts);
            report.warnings.push(format!(
                "exhaustive minimum leader count is {}",
                exact.minimum_count
            ));
        }
    } else {
        report.warnings.push(format!(
            "{n} vertices exceed the enumeration cap; analytic family not cross-checked"
        ));
    }
    Ok(Outcome {
        report,
        text,
        exit_code: 0,
    })
}
