//! Problem instances, algorithm configuration and validation.
//!
//! Sensor and anchor indices are zero-based in memory. Problem files and
//! human-facing messages use one-based ids, matching the usual
//! `1..n` / `1..m` numbering.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{Position, Vector, MAX_DIM};

/// A range measurement between two sensors, stored once per unordered pair
/// with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub d: f64,
}

impl Edge {
    /// Returns the other endpoint, or `None` if `node` is not on this edge.
    pub fn other(&self, node: usize) -> Option<usize> {
        if node == self.i {
            Some(self.j)
        } else if node == self.j {
            Some(self.i)
        } else {
            None
        }
    }
}

/// A range measurement between a sensor and an anchor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnchorLink {
    pub sensor: usize,
    pub anchor: usize,
    pub r: f64,
}

/// One localization instance: the sensor graph, the anchors and every range
/// measurement.
///
/// Fields are public plain data. Use [`ProblemBuilder`] to ingest raw
/// readings and [`NetworkProblem::validate`] before solving.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkProblem {
    pub dim: usize,
    pub n_sensors: usize,
    pub anchors: Vec<Position>,
    pub edges: Vec<Edge>,
    pub anchor_links: Vec<AnchorLink>,
}

/// A single reason a problem was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    UnsupportedDimension(usize),
    NoSensors,
    AnchorDimension { anchor: usize, found: usize },
    NonFiniteAnchor { anchor: usize },
    UnknownSensor { sensor: usize },
    SelfLoop { sensor: usize },
    DuplicateEdge { i: usize, j: usize },
    DuplicateAnchorLink { sensor: usize, anchor: usize },
    NegativeMeasurement { what: String, value: f64 },
    NonFiniteMeasurement { what: String },
    DanglingAnchorRef { sensor: usize, anchor: usize },
    /// The sensor graph splits into these components (zero-based ids).
    DisconnectedGraph { components: Vec<Vec<usize>> },
    SensorIds(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnsupportedDimension(p) => write!(f, "dimension {p} is not 1, 2 or 3"),
            Violation::NoSensors => write!(f, "problem has no sensors"),
            Violation::AnchorDimension { anchor, found } => {
                write!(f, "anchor {} has {found} coordinates", anchor + 1)
            }
            Violation::NonFiniteAnchor { anchor } => {
                write!(f, "anchor {} has a non-finite coordinate", anchor + 1)
            }
            Violation::UnknownSensor { sensor } => write!(f, "unknown sensor {}", sensor + 1),
            Violation::SelfLoop { sensor } => write!(f, "edge from sensor {} to itself", sensor + 1),
            Violation::DuplicateEdge { i, j } => {
                write!(f, "edge {{{}, {}}} given more than once", i + 1, j + 1)
            }
            Violation::DuplicateAnchorLink { sensor, anchor } => write!(
                f,
                "link sensor {} -> anchor {} given more than once",
                sensor + 1,
                anchor + 1
            ),
            Violation::NegativeMeasurement { what, value } => {
                write!(f, "negative measurement {value} on {what}")
            }
            Violation::NonFiniteMeasurement { what } => write!(f, "non-finite measurement on {what}"),
            Violation::DanglingAnchorRef { sensor, anchor } => write!(
                f,
                "sensor {} references missing anchor {}",
                sensor + 1,
                anchor + 1
            ),
            Violation::DisconnectedGraph { components } => {
                write!(f, "sensor graph is disconnected; components:")?;
                for c in components {
                    let ids: Vec<String> = c.iter().map(|s| (s + 1).to_string()).collect();
                    write!(f, " {{{}}}", ids.join(", "))?;
                }
                Ok(())
            }
            Violation::SensorIds(msg) => write!(f, "sensor ids: {msg}"),
        }
    }
}

/// Every violation found in a problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl std::error::Error for ValidationReport {}

/// Open and closed neighborhoods of one sensor, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    pub open: Vec<usize>,
    pub closed: Vec<usize>,
}

impl NetworkProblem {
    /// Measurement between two sensors, independent of argument order.
    pub fn measurement(&self, i: usize, j: usize) -> Option<f64> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.iter().find(|e| e.i == a && e.j == b).map(|e| e.d)
    }

    /// Checks structure, measurements and connectivity.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        if !(1..=MAX_DIM).contains(&self.dim) {
            violations.push(Violation::UnsupportedDimension(self.dim));
        }
        if self.n_sensors == 0 {
            violations.push(Violation::NoSensors);
        }
        for (k, a) in self.anchors.iter().enumerate() {
            if a.dim() != self.dim {
                violations.push(Violation::AnchorDimension {
                    anchor: k,
                    found: a.dim(),
                });
            }
            if !a.is_finite() {
                violations.push(Violation::NonFiniteAnchor { anchor: k });
            }
        }

        let mut seen_pairs = BTreeMap::new();
        for e in &self.edges {
            let what = format!("edge {{{}, {}}}", e.i + 1, e.j + 1);
            for s in [e.i, e.j] {
                if s >= self.n_sensors {
                    violations.push(Violation::UnknownSensor { sensor: s });
                }
            }
            if e.i == e.j {
                violations.push(Violation::SelfLoop { sensor: e.i });
            }
            let key = (e.i.min(e.j), e.i.max(e.j));
            if seen_pairs.insert(key, ()).is_some() {
                violations.push(Violation::DuplicateEdge { i: key.0, j: key.1 });
            }
            check_measurement(&mut violations, what, e.d);
        }

        let mut seen_links = BTreeMap::new();
        for link in &self.anchor_links {
            let what = format!("link sensor {} -> anchor {}", link.sensor + 1, link.anchor + 1);
            if link.sensor >= self.n_sensors {
                violations.push(Violation::UnknownSensor {
                    sensor: link.sensor,
                });
            }
            if link.anchor >= self.anchors.len() {
                violations.push(Violation::DanglingAnchorRef {
                    sensor: link.sensor,
                    anchor: link.anchor,
                });
            }
            if seen_links.insert((link.sensor, link.anchor), ()).is_some() {
                violations.push(Violation::DuplicateAnchorLink {
                    sensor: link.sensor,
                    anchor: link.anchor,
                });
            }
            check_measurement(&mut violations, what, link.r);
        }

        if self.n_sensors > 0 {
            let components = self.components();
            if components.len() > 1 {
                violations.push(Violation::DisconnectedGraph { components });
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Connected components of the sensor graph, each sorted, ordered by
    /// smallest member. Edges touching unknown sensors are ignored.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_sensors;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for e in &self.edges {
            if e.i < n && e.j < n {
                let (ra, rb) = (find(&mut parent, e.i), find(&mut parent, e.j));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in 0..n {
            let root = find(&mut parent, s);
            groups.entry(root).or_default().push(s);
        }
        groups.into_values().collect()
    }

    /// Open neighborhood `V_i` and closed neighborhood `V_i ∪ {i}` of every
    /// sensor.
    pub fn neighbor_sets(&self) -> Vec<Neighborhood> {
        let mut open = vec![Vec::new(); self.n_sensors];
        for e in &self.edges {
            open[e.i].push(e.j);
            open[e.j].push(e.i);
        }
        open.into_iter()
            .enumerate()
            .map(|(i, mut nbrs)| {
                nbrs.sort_unstable();
                nbrs.dedup();
                let mut closed = nbrs.clone();
                let at = closed.partition_point(|&j| j < i);
                closed.insert(at, i);
                Neighborhood { open: nbrs, closed }
            })
            .collect()
    }

    /// Anchor links of every sensor, sorted by anchor id.
    pub fn anchor_sets(&self) -> Vec<Vec<AnchorLink>> {
        let mut sets = vec![Vec::new(); self.n_sensors];
        for link in &self.anchor_links {
            sets[link.sensor].push(*link);
        }
        for s in &mut sets {
            s.sort_by_key(|l| l.anchor);
        }
        sets
    }

    /// Checks that `x` holds one finite `dim`-vector per sensor.
    pub fn check_positions(&self, x: &[Position]) -> Result<()> {
        if x.len() != self.n_sensors {
            return Err(Error::DimensionMismatch {
                expected: self.n_sensors,
                found: x.len(),
            });
        }
        for p in x {
            if p.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: p.dim(),
                });
            }
            if !p.is_finite() {
                return Err(Error::InvalidConfig("non-finite position".into()));
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(s)?;
        file.into_problem()
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let s = std::fs::read_to_string(path)?;
        Self::from_json_str(&s)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ProblemFile::from(self))?)
    }
}

/// Returns `problem` unchanged when it passes [`NetworkProblem::validate`].
pub fn validate_problem(problem: NetworkProblem) -> Result<NetworkProblem, ValidationReport> {
    problem.validate()?;
    Ok(problem)
}

fn check_measurement(violations: &mut Vec<Violation>, what: String, value: f64) {
    if !value.is_finite() {
        violations.push(Violation::NonFiniteMeasurement { what });
    } else if value < 0.0 {
        violations.push(Violation::NegativeMeasurement { what, value });
    }
}

/// Collects raw readings into a [`NetworkProblem`].
///
/// Sensor-to-sensor readings may arrive once per unordered pair
/// ([`add_edge`](Self::add_edge)) or once per direction
/// ([`add_directed_reading`](Self::add_directed_reading)); when both
/// directions are present the stored measurement is their mean.
#[derive(Debug, Clone)]
pub struct ProblemBuilder {
    dim: usize,
    n_sensors: usize,
    anchors: Vec<Position>,
    readings: BTreeMap<(usize, usize), [Option<f64>; 2]>,
    links: Vec<AnchorLink>,
    duplicates: Vec<Violation>,
}

impl ProblemBuilder {
    pub fn new(dim: usize, n_sensors: usize) -> Self {
        Self {
            dim,
            n_sensors,
            anchors: Vec::new(),
            readings: BTreeMap::new(),
            links: Vec::new(),
            duplicates: Vec::new(),
        }
    }

    /// Appends an anchor and returns its index.
    pub fn add_anchor(&mut self, position: Position) -> usize {
        self.anchors.push(position);
        self.anchors.len() - 1
    }

    /// Symmetric measurement between sensors `i` and `j`.
    pub fn add_edge(&mut self, i: usize, j: usize, d: f64) -> &mut Self {
        self.add_directed_reading(i, j, d);
        if i != j {
            self.add_directed_reading(j, i, d);
        }
        self
    }

    /// Reading of the distance to `j` taken at sensor `i`.
    pub fn add_directed_reading(&mut self, i: usize, j: usize, d: f64) -> &mut Self {
        let key = (i.min(j), i.max(j));
        let slot = usize::from(i > j);
        let entry = self.readings.entry(key).or_insert([None, None]);
        if entry[slot].is_some() {
            self.duplicates
                .push(Violation::DuplicateEdge { i: key.0, j: key.1 });
        }
        entry[slot] = Some(d);
        self
    }

    pub fn add_anchor_link(&mut self, sensor: usize, anchor: usize, r: f64) -> &mut Self {
        self.links.push(AnchorLink { sensor, anchor, r });
        self
    }

    /// Assembles and validates the problem.
    pub fn build(self) -> Result<NetworkProblem, ValidationReport> {
        let problem = self.assemble()?;
        problem.validate()?;
        Ok(problem)
    }

    /// Assembles the problem without validating it. Only duplicate directed
    /// readings are rejected.
    pub fn assemble(self) -> Result<NetworkProblem, ValidationReport> {
        if !self.duplicates.is_empty() {
            return Err(ValidationReport {
                violations: self.duplicates,
            });
        }
        let edges = self
            .readings
            .into_iter()
            .map(|((i, j), r)| {
                let d = match r {
                    [Some(a), Some(b)] => (a + b) / 2.0,
                    [Some(a), None] | [None, Some(a)] => a,
                    [None, None] => unreachable!("entry created with a reading"),
                };
                Edge { i, j, d }
            })
            .collect();
        let mut anchor_links = self.links;
        anchor_links.sort_by_key(|l| (l.sensor, l.anchor));
        Ok(NetworkProblem {
            dim: self.dim,
            n_sensors: self.n_sensors,
            anchors: self.anchors,
            edges,
            anchor_links,
        })
    }
}

/// On-disk problem schema. Ids are one-based.
///
/// ```json
/// {
///   "p": 2,
///   "sensors": [1, 2, 3],
///   "anchors": [[0.0, 0.0], [1.0, 1.0]],
///   "edges": [[1, 2, 0.31], [2, 3, 0.27]],
///   "anchor_links": [[1, 1, 0.12]]
/// }
/// ```
///
/// Each `edges` entry `[i, j, d]` is the reading taken at sensor `i`. If the
/// reverse reading `[j, i, d']` is also present the two are averaged.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub p: usize,
    pub sensors: Vec<usize>,
    pub anchors: Vec<Vec<f64>>,
    pub edges: Vec<(usize, usize, f64)>,
    pub anchor_links: Vec<(usize, usize, f64)>,
}

impl ProblemFile {
    pub fn into_problem(self) -> Result<NetworkProblem> {
        let n = self.sensors.len();
        let mut ids = self.sensors.clone();
        ids.sort_unstable();
        if ids.iter().copied().ne(1..=n) {
            return Err(ValidationReport {
                violations: vec![Violation::SensorIds(format!(
                    "expected each of 1..={n} exactly once"
                ))],
            }
            .into());
        }
        let mut builder = ProblemBuilder::new(self.p, n);
        let mut bad = Vec::new();
        for a in self.anchors {
            match Vector::try_from(a) {
                Ok(v) => {
                    builder.add_anchor(v);
                }
                Err(msg) => bad.push(Violation::SensorIds(format!("anchor: {msg}"))),
            }
        }
        let zero_based = |id: usize, bad: &mut Vec<Violation>| {
            if id == 0 {
                bad.push(Violation::SensorIds("ids start at 1".into()));
                usize::MAX
            } else {
                id - 1
            }
        };
        for (i, j, d) in self.edges {
            let (i, j) = (zero_based(i, &mut bad), zero_based(j, &mut bad));
            builder.add_directed_reading(i, j, d);
        }
        for (i, k, r) in self.anchor_links {
            let (i, k) = (zero_based(i, &mut bad), zero_based(k, &mut bad));
            builder.add_anchor_link(i, k, r);
        }
        if !bad.is_empty() {
            return Err(ValidationReport { violations: bad }.into());
        }
        Ok(builder.build()?)
    }
}

impl From<&NetworkProblem> for ProblemFile {
    fn from(p: &NetworkProblem) -> Self {
        Self {
            p: p.dim,
            sensors: (1..=p.n_sensors).collect(),
            anchors: p.anchors.iter().map(|a| a.as_slice().to_vec()).collect(),
            edges: p.edges.iter().map(|e| (e.i + 1, e.j + 1, e.d)).collect(),
            anchor_links: p
                .anchor_links
                .iter()
                .map(|l| (l.sensor + 1, l.anchor + 1, l.r))
                .collect(),
        }
    }
}

/// Parameters of the outer MM loop, the inner ADMM rounds and the
/// per-node solvers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgorithmConfig {
    /// Augmented Lagrangian penalty.
    pub rho: f64,
    /// Number of MM iterations `L`.
    pub outer_iters: usize,
    /// ADMM rounds per MM iteration `T`.
    pub inner_iters: usize,
    /// Gradient-norm stop for the accelerated gradient solvers.
    pub nesterov_tol: f64,
    pub nesterov_max_iters: usize,
    /// Final width of the dual bisection interval.
    pub bisection_tol: f64,
    /// Directions shorter than this use the degenerate majorizer.
    pub degeneracy_eps: f64,
    /// Allowed increase of the cost between MM iterations.
    pub descent_slack: f64,
    /// Fail with `DescentViolation` when the slack is exceeded.
    pub enforce_descent: bool,
    /// Stop ADMM early once the consensus residual falls below this value.
    /// Off by default; when set, round counts and message totals fall short
    /// of `T` and `2TL|V_i|`.
    pub residual_early_exit: Option<f64>,
    /// Run node updates within a round on the rayon pool.
    pub parallel: bool,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        Self {
            rho: 50.0,
            outer_iters: 40,
            inner_iters: 100,
            nesterov_tol: 1e-9,
            nesterov_max_iters: 500,
            bisection_tol: 1e-10,
            degeneracy_eps: 1e-12,
            descent_slack: 1e-6,
            enforce_descent: true,
            residual_early_exit: None,
            parallel: false,
        }
    }
}

impl AlgorithmConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rho", self.rho),
            ("nesterov_tol", self.nesterov_tol),
            ("bisection_tol", self.bisection_tol),
            ("degeneracy_eps", self.degeneracy_eps),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {value}")));
            }
        }
        if !(self.descent_slack.is_finite() && self.descent_slack >= 0.0) {
            return Err(Error::InvalidConfig("descent_slack must be nonnegative".into()));
        }
        if self.outer_iters == 0 || self.inner_iters == 0 || self.nesterov_max_iters == 0 {
            return Err(Error::InvalidConfig(
                "outer_iters, inner_iters and nesterov_max_iters must be at least 1".into(),
            ));
        }
        if let Some(tol) = self.residual_early_exit {
            if !(tol > 0.0) {
                return Err(Error::InvalidConfig("residual_early_exit must be positive".into()));
            }
        }
        Ok(())
    }
}
