//! JSON scenario files and their expansion into individual runs.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rand::seq::SliceRandom;
use serde::Deserialize;
use thiserror::Error;

use transit_anon::domain::{build_domain, parse_fixture, parse_map, Domain, GridMap, NodeId};
use transit_anon::partition::MergeOrder;
use transit_anon::planners::{PartitionerKind, PlannerConfig, PlannerKind};
use transit_anon::sample::{reachable, MAX_ATTEMPTS};
use transit_anon::seed::rng_for;
use transit_anon::wrpt::Heuristic;
use transit_anon::Horizon;

/// Optional default for `time_limit` when a scenario omits it.
pub const TIME_LIMIT_ENV: &str = "TRANSIT_ANON_TIME_LIMIT";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("scenario {scenario:?}: {message}")]
    Scenario { scenario: String, message: String },
}

fn bad(scenario: &str, message: impl fmt::Display) -> ConfigError {
    ConfigError::Scenario {
        scenario: scenario.to_string(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub scenarios: Vec<Scenario>,
    /// Record `total_time_s`; off gives byte-reproducible output.
    #[serde(default = "yes")]
    pub timing: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomTag {
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Endpoint {
    Cell([usize; 2]),
    Random(RandomTag),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum TransitSpec {
    List(Vec<[usize; 2]>),
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfTag {
    Inf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(untagged)]
pub enum MSpec {
    Steps(usize),
    Inf(InfTag),
}

impl MSpec {
    pub fn horizon(self) -> Horizon {
        match self {
            MSpec::Steps(m) => Horizon::Steps(m),
            MSpec::Inf(_) => Horizon::Unbounded,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlannerName {
    Pbp,
    MPbp,
    Rbp,
    Cbp,
    FullCover,
}

impl PlannerName {
    pub fn kind(self) -> PlannerKind {
        match self {
            PlannerName::Pbp => PlannerKind::Pbp,
            PlannerName::MPbp => PlannerKind::MPbp,
            PlannerName::Rbp => PlannerKind::Rbp,
            PlannerName::Cbp => PlannerKind::Cbp,
            PlannerName::FullCover => PlannerKind::FullCover,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionerName {
    MergeBb,
    DfBb,
    Naive,
}

impl PartitionerName {
    pub fn kind(self) -> PartitionerKind {
        match self {
            PartitionerName::MergeBb => PartitionerKind::MergeBb,
            PartitionerName::DfBb => PartitionerKind::DfBb,
            PartitionerName::Naive => PartitionerKind::Naive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderName {
    CostAsc,
    Random,
}

impl OrderName {
    pub fn name(self) -> &'static str {
        match self {
            OrderName::CostAsc => "cost_asc",
            OrderName::Random => "random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicName {
    Tunnel,
    Blind,
}

impl HeuristicName {
    pub fn heuristic(self) -> Heuristic {
        match self {
            HeuristicName::Tunnel => Heuristic::Tunnel,
            HeuristicName::Blind => Heuristic::Blind,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HeuristicName::Tunnel => "tunnel",
            HeuristicName::Blind => "blind",
        }
    }
}

fn default_l() -> OneOrMany<f64> {
    OneOrMany::One(1.0)
}
fn default_m() -> OneOrMany<MSpec> {
    OneOrMany::One(MSpec::Inf(InfTag::Inf))
}
fn default_r() -> OneOrMany<u32> {
    OneOrMany::One(0)
}
fn default_planner() -> OneOrMany<PlannerName> {
    OneOrMany::One(PlannerName::Pbp)
}
fn default_partitioner() -> OneOrMany<PartitionerName> {
    OneOrMany::One(PartitionerName::MergeBb)
}
fn default_order() -> OneOrMany<OrderName> {
    OneOrMany::One(OrderName::CostAsc)
}
fn default_heuristic() -> OneOrMany<HeuristicName> {
    OneOrMany::One(HeuristicName::Tunnel)
}
fn one() -> usize {
    1
}

/// One scenario block. List-valued parameters expand into their
/// cross product.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub map: Option<PathBuf>,
    #[serde(default)]
    pub fixture: Option<PathBuf>,
    #[serde(default)]
    pub s: Option<Endpoint>,
    #[serde(default)]
    pub g: Option<Endpoint>,
    #[serde(default)]
    pub transit: Option<TransitSpec>,
    /// Number of instances drawn when anything is random.
    #[serde(default = "one")]
    pub instances: usize,
    /// Seed for random start and goal cells.
    #[serde(default)]
    pub instance_seed: u64,
    pub k: OneOrMany<usize>,
    #[serde(default = "default_l")]
    pub l: OneOrMany<f64>,
    #[serde(default = "default_m")]
    pub m: OneOrMany<MSpec>,
    #[serde(default = "default_r")]
    pub r: OneOrMany<u32>,
    #[serde(default = "default_planner")]
    pub planner: OneOrMany<PlannerName>,
    #[serde(default = "default_partitioner")]
    pub partitioner: OneOrMany<PartitionerName>,
    #[serde(default = "default_order")]
    pub merge_order: OneOrMany<OrderName>,
    #[serde(default = "default_heuristic")]
    pub heuristic: OneOrMany<HeuristicName>,
    /// Seconds allowed for each partition search.
    #[serde(default)]
    pub time_limit: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

pub fn load_config(path: &Path) -> Result<(ConfigFile, PathBuf), ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let cfg: ConfigFile = serde_json::from_str(&text)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((cfg, base))
}

/// Where a run's domain comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Map(GridMap),
    Fixture(String),
}

/// A concrete problem: domain source plus endpoints and candidates.
#[derive(Debug, Clone)]
pub struct Instance {
    pub scenario: String,
    /// Scenario name, suffixed with the instance index when there are several.
    pub label: String,
    pub map_name: String,
    pub source: Source,
    pub start: [usize; 2],
    pub goal: [usize; 2],
    pub transit: Vec<[usize; 2]>,
}

/// One CSV row's worth of work.
#[derive(Debug, Clone)]
pub struct Job {
    pub instance: usize,
    pub r: u32,
    pub planner: PlannerConfig<f64>,
    pub merge_order: Option<OrderName>,
    pub heuristic: HeuristicName,
}

impl Job {
    pub fn uses_partition(&self) -> bool {
        self.planner.kind.uses_partition()
    }
}

/// Built domain with resolved start and goal.
pub struct Built {
    pub domain: Domain<f64>,
    pub s: NodeId,
    pub g: NodeId,
}

impl Instance {
    pub fn build(&self, r: u32) -> Result<Built, ConfigError> {
        match &self.source {
            Source::Fixture(text) => {
                let f = parse_fixture(text).map_err(|e| bad(&self.scenario, e))?;
                Ok(Built {
                    domain: f.domain,
                    s: f.start,
                    g: f.goal,
                })
            }
            Source::Map(map) => {
                let cells: Vec<(usize, usize)> =
                    self.transit.iter().map(|c| (c[0], c[1])).collect();
                let domain =
                    build_domain(map, &cells, r, true).map_err(|e| bad(&self.scenario, e))?;
                let at = |c: [usize; 2], what: &str| {
                    domain.node_at(c[0], c[1]).ok_or_else(|| {
                        bad(
                            &self.scenario,
                            format!("{what} ({}, {}) is not a free cell", c[0], c[1]),
                        )
                    })
                };
                let s = at(self.start, "start")?;
                let g = at(self.goal, "goal")?;
                Ok(Built { domain, s, g })
            }
        }
    }

    pub fn n_transit(&self) -> usize {
        self.transit.len()
    }
}

/// Expands every scenario into instances and runs.
pub fn expand(cfg: &ConfigFile, base: &Path) -> Result<(Vec<Instance>, Vec<Job>), ConfigError> {
    let mut instances = Vec::new();
    let mut jobs = Vec::new();
    let env_limit = std::env::var(TIME_LIMIT_ENV)
        .ok()
        .and_then(|v| v.parse::<f64>().ok());
    for sc in &cfg.scenarios {
        let first = instances.len();
        instances.extend(resolve_instances(sc, base)?);
        let limit = sc.time_limit.or(env_limit);
        if let Some(l) = limit {
            if !(l >= 0.0 && l.is_finite()) {
                return Err(bad(&sc.name, "time_limit must be a non-negative number"));
            }
        }
        for (idx, inst) in instances.iter().enumerate().skip(first) {
            let n = inst.n_transit();
            let mut seen = HashSet::new();
            for &r in &sc.r.values() {
                for &planner in &sc.planner.values() {
                    let kind = planner.kind();
                    for &k in &sc.k.values() {
                        if k == 0 || k > n {
                            return Err(bad(
                                &sc.name,
                                format!("k = {k} must be between 1 and |T| = {n}"),
                            ));
                        }
                        for &l in &sc.l.values() {
                            for &m in &sc.m.values() {
                                for &h in &sc.heuristic.values() {
                                    let parts = if kind.uses_partition() {
                                        sc.partitioner.values()
                                    } else {
                                        vec![PartitionerName::MergeBb]
                                    };
                                    for &part in &parts {
                                        let orders = if kind.uses_partition()
                                            && part == PartitionerName::MergeBb
                                        {
                                            sc.merge_order.values().into_iter().map(Some).collect()
                                        } else {
                                            vec![None]
                                        };
                                        for order in orders {
                                            let key = (
                                                r,
                                                planner,
                                                k,
                                                l.to_bits(),
                                                m,
                                                h,
                                                kind.uses_partition().then_some(part),
                                                order,
                                            );
                                            if !seen.insert(key) {
                                                continue;
                                            }
                                            let merge = match order {
                                                Some(OrderName::Random) => {
                                                    MergeOrder::Random(sc.seed)
                                                }
                                                _ => MergeOrder::CostAsc,
                                            };
                                            let pc = PlannerConfig::new(kind, k, l, m.horizon())
                                                .seed(sc.seed)
                                                .partitioner(part.kind())
                                                .merge_order(merge)
                                                .heuristic(h.heuristic())
                                                .time_limit(limit.map(Duration::from_secs_f64));
                                            validate(&sc.name, &pc)?;
                                            jobs.push(Job {
                                                instance: idx,
                                                r,
                                                planner: pc,
                                                merge_order: order,
                                                heuristic: h,
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((instances, jobs))
}

fn validate(scenario: &str, pc: &PlannerConfig<f64>) -> Result<(), ConfigError> {
    if pc.ell.is_nan() || pc.ell < 0.0 || !pc.ell.is_finite() {
        return Err(bad(
            scenario,
            format!("l = {} must be a non-negative number", pc.ell),
        ));
    }
    match (pc.kind, pc.m) {
        (PlannerKind::MPbp | PlannerKind::Rbp | PlannerKind::Cbp, Horizon::Unbounded) => {
            Err(bad(scenario, format!("{} needs a finite m", pc.kind)))
        }
        (_, Horizon::Steps(0)) => Err(bad(scenario, "m must be at least 1")),
        _ => Ok(()),
    }
}

fn resolve_instances(sc: &Scenario, base: &Path) -> Result<Vec<Instance>, ConfigError> {
    match (&sc.map, &sc.fixture) {
        (Some(_), Some(_)) => Err(bad(&sc.name, "give either `map` or `fixture`, not both")),
        (None, None) => Err(bad(&sc.name, "one of `map` or `fixture` is required")),
        (None, Some(path)) => {
            if sc.s.is_some() || sc.g.is_some() || sc.transit.is_some() {
                return Err(bad(
                    &sc.name,
                    "fixtures declare their own start, goal and transit",
                ));
            }
            if !matches!(sc.r, OneOrMany::One(0)) {
                return Err(bad(&sc.name, "fixtures declare their own radius"));
            }
            let full = base.join(path);
            let text = std::fs::read_to_string(&full)
                .map_err(|e| bad(&sc.name, format!("{}: {e}", full.display())))?;
            let f = parse_fixture::<f64>(&text).map_err(|e| bad(&sc.name, e))?;
            let cell = |n: NodeId| {
                let c = f.domain.cell_of(n).unwrap_or((0, 0));
                [c.0, c.1]
            };
            Ok(vec![Instance {
                scenario: sc.name.clone(),
                label: sc.name.clone(),
                map_name: file_name(path),
                start: cell(f.start),
                goal: cell(f.goal),
                transit: f.domain.transit().iter().map(|&t| cell(t)).collect(),
                source: Source::Fixture(text),
            }])
        }
        (Some(path), None) => {
            let full = base.join(path);
            let text = std::fs::read_to_string(&full)
                .map_err(|e| bad(&sc.name, format!("{}: {e}", full.display())))?;
            let map = parse_map(&text).map_err(|e| bad(&sc.name, e))?;
            let s = sc.s.ok_or_else(|| bad(&sc.name, "missing `s`"))?;
            let g = sc.g.ok_or_else(|| bad(&sc.name, "missing `g`"))?;
            let transit = sc
                .transit
                .clone()
                .ok_or_else(|| bad(&sc.name, "missing `transit`"))?;
            (0..sc.instances)
                .map(|i| {
                    let (start, goal, transit) =
                        sample_one(&map, s, g, &transit, sc.instance_seed, i)
                            .map_err(|m| bad(&sc.name, m))?;
                    Ok(Instance {
                        scenario: sc.name.clone(),
                        label: if sc.instances == 1 {
                            sc.name.clone()
                        } else {
                            format!("{}/{i}", sc.name)
                        },
                        map_name: file_name(path),
                        source: Source::Map(map.clone()),
                        start,
                        goal,
                        transit,
                    })
                })
                .collect()
        }
    }
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn check_free(map: &GridMap, c: [usize; 2], what: &str) -> Result<(), String> {
    if c[0] >= map.width() || c[1] >= map.height() || !map.passable(c[0], c[1]) {
        return Err(format!("{what} ({}, {}) is not a free cell", c[0], c[1]));
    }
    Ok(())
}

type Resolved = ([usize; 2], [usize; 2], Vec<[usize; 2]>);

fn sample_one(
    map: &GridMap,
    s: Endpoint,
    g: Endpoint,
    transit: &TransitSpec,
    instance_seed: u64,
    index: usize,
) -> Result<Resolved, String> {
    let fixed: Vec<[usize; 2]> = match transit {
        TransitSpec::List(l) => l.clone(),
        TransitSpec::Sample { .. } => Vec::new(),
    };
    for &c in &fixed {
        check_free(map, c, "transit cell")?;
    }
    let free: Vec<[usize; 2]> = map.passable_cells().map(|(x, y)| [x, y]).collect();
    let mut rng = rng_for(&[0x656e_6470, instance_seed, index as u64]);
    let mut attempt = 0;
    let (start, goal) = loop {
        let taken = |c: &[usize; 2]| fixed.contains(c);
        let pick = |e: Endpoint,
                    rng: &mut rand_chacha::ChaCha8Rng,
                    other: Option<[usize; 2]>|
         -> Result<[usize; 2], String> {
            match e {
                Endpoint::Cell(c) => {
                    check_free(map, c, "endpoint")?;
                    Ok(c)
                }
                Endpoint::Random(_) => free
                    .iter()
                    .filter(|c| !taken(c) && Some(**c) != other)
                    .copied()
                    .collect::<Vec<_>>()
                    .choose(rng)
                    .copied()
                    .ok_or_else(|| "no free cell left for a random endpoint".to_string()),
            }
        };
        let a = pick(s, &mut rng, None)?;
        let b = pick(g, &mut rng, Some(a))?;
        if reachable(map, (a[0], a[1]))[b[1] * map.width() + b[0]] {
            break (a, b);
        }
        attempt += 1;
        let random = matches!(s, Endpoint::Random(_)) || matches!(g, Endpoint::Random(_));
        if !random || attempt >= MAX_ATTEMPTS {
            return Err("goal is not reachable from start".into());
        }
    };
    let transit = match transit {
        TransitSpec::List(l) => l.clone(),
        TransitSpec::Sample { count, seed } => {
            let pool: Vec<[usize; 2]> = free
                .iter()
                .filter(|&&c| c != start && c != goal)
                .copied()
                .collect();
            if pool.len() < *count {
                return Err(format!(
                    "map has only {} free cells for {count} transit candidates",
                    pool.len()
                ));
            }
            let mut rng = rng_for(&[0x7472_6e73, *seed, index as u64]);
            pool.choose_multiple(&mut rng, *count).copied().collect()
        }
    };
    Ok((start, goal, transit))
}
