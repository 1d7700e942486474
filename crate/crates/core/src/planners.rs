//! Anonymizing planners.
//!
//! Each [`Planner`] is built once per `(domain, s, g, config)` and then
//! queried with the true transit point `t`. Everything a planner does before
//! looking at `t` (partitioning, clustering, random walks) is cached and
//! seeded only from instance identifiers and the user seed, so the shared
//! part of the output cannot leak `t`.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;
use std::time::Duration;

use rand::Rng;
use thiserror::Error;

use crate::domain::{Domain, Horizon, NodeId, Path};
use crate::partition::{df_bb, merge_bb, naive_partition, MergeOrder, Partition, SearchParams};
use crate::scalar::{cmp, Scalar};
use crate::seed::{self, Mixer};
use crate::wrpt::{Budget, Heuristic, Wrpt};

const CLUSTER_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlannerKind {
    Pbp,
    MPbp,
    Rbp,
    Cbp,
    FullCover,
}

impl PlannerKind {
    pub fn name(self) -> &'static str {
        match self {
            PlannerKind::Pbp => "pbp",
            PlannerKind::MPbp => "m_pbp",
            PlannerKind::Rbp => "rbp",
            PlannerKind::Cbp => "cbp",
            PlannerKind::FullCover => "full_cover",
        }
    }

    pub fn uses_partition(self) -> bool {
        matches!(self, PlannerKind::Pbp | PlannerKind::MPbp)
    }
}

impl fmt::Display for PlannerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionerKind {
    MergeBb,
    DfBb,
    Naive,
}

impl PartitionerKind {
    pub fn name(self) -> &'static str {
        match self {
            PartitionerKind::MergeBb => "merge_bb",
            PartitionerKind::DfBb => "df_bb",
            PartitionerKind::Naive => "naive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannerConfig<C> {
    pub kind: PlannerKind,
    pub k: usize,
    pub ell: C,
    pub m: Horizon,
    pub seed: u64,
    pub partitioner: PartitionerKind,
    pub merge_order: MergeOrder,
    pub heuristic: Heuristic,
    /// Wall-clock limit for the partition search.
    pub time_limit: Option<Duration>,
}

impl<C: Scalar> PlannerConfig<C> {
    pub fn new(kind: PlannerKind, k: usize, ell: C, m: Horizon) -> Self {
        PlannerConfig {
            kind,
            k,
            ell,
            m,
            seed: 0,
            partitioner: PartitionerKind::MergeBb,
            merge_order: MergeOrder::CostAsc,
            heuristic: Heuristic::Tunnel,
            time_limit: None,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn partitioner(mut self, p: PartitionerKind) -> Self {
        self.partitioner = p;
        self
    }

    pub fn merge_order(mut self, o: MergeOrder) -> Self {
        self.merge_order = o;
        self
    }

    pub fn heuristic(mut self, h: Heuristic) -> Self {
        self.heuristic = h;
        self
    }

    pub fn time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("ℓ must be a non-negative number")]
    BadEll,
    #[error("{0} needs a finite m")]
    NeedsFiniteM(PlannerKind),
    #[error("m must be at least 1")]
    ZeroM,
}

/// A planner answer. `Failure` compares unequal to everything, itself
/// included, so failed runs never share a prefix with anything.
#[derive(Debug, Clone)]
pub enum PlanResult<C> {
    Planned {
        path: Path<C>,
        /// Subset or cluster the output belongs to.
        group: Option<usize>,
        /// Number of leading nodes shared with the rest of the group.
        shared_prefix: usize,
    },
    Failure,
}

impl<C> PlanResult<C> {
    pub fn path(&self) -> Option<&Path<C>> {
        match self {
            PlanResult::Planned { path, .. } => Some(path),
            PlanResult::Failure => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, PlanResult::Failure)
    }

    pub fn group(&self) -> Option<usize> {
        match self {
            PlanResult::Planned { group, .. } => *group,
            PlanResult::Failure => None,
        }
    }
}

impl<C: PartialEq> PartialEq for PlanResult<C> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (PlanResult::Planned { path: a, .. }, PlanResult::Planned { path: b, .. }) => a == b,
            _ => false,
        }
    }
}

/// Cluster assignment of transit candidates and each cluster's centroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    /// `(candidate, cluster id)`, ascending by candidate.
    pub assignment: Vec<(NodeId, usize)>,
    pub centroids: Vec<NodeId>,
    /// Assignment rounds run before the merge phase.
    pub iterations: usize,
}

impl Clustering {
    pub fn cluster_of(&self, t: NodeId) -> Option<usize> {
        self.assignment
            .binary_search_by_key(&t, |&(n, _)| n)
            .ok()
            .map(|i| self.assignment[i].1)
    }

    pub fn members(&self, cluster: usize) -> Vec<NodeId> {
        self.assignment
            .iter()
            .filter(|&&(_, c)| c == cluster)
            .map(|&(n, _)| n)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.centroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centroids.is_empty()
    }
}

/// `argmin_n max_{u ∈ members} reach_u(n)`; ties go to the smaller total
/// reach cost, then the lower index.
pub fn centroid<C: Scalar>(domain: &Domain<C>, members: &[NodeId]) -> NodeId {
    let fields: Vec<&[C]> = members.iter().map(|&u| domain.reach_field(u)).collect();
    domain
        .nodes()
        .map(|n| {
            let (worst, total) = fields
                .iter()
                .map(|f| f[n.index()])
                .fold((C::zero(), C::zero()), |(w, t), d| (w.max(d), t + d));
            (n, worst, total)
        })
        .min_by(|a, b| cmp(a.1, b.1).then(cmp(a.2, b.2)).then(a.0.cmp(&b.0)))
        .map(|(n, _, _)| n)
        .expect("domains are non-empty")
}

/// Seeds `count` clusters by farthest-point traversal from a random first
/// candidate, then fills them greedily by distance with balanced capacities
/// (each at least `⌊n / count⌋`, so at least `k`).
fn initial_assignment<C: Scalar>(
    domain: &Domain<C>,
    cands: &[NodeId],
    count: usize,
    seed: u64,
) -> Vec<usize> {
    let n = cands.len();
    let mut rng = seed::rng_for(&[domain.fingerprint(), seed]);
    let mut seeds = vec![rng.gen_range(0..n)];
    while seeds.len() < count {
        let next = (0..n)
            .filter(|i| !seeds.contains(i))
            .max_by(|&a, &b| {
                let gap = |i: usize| {
                    seeds
                        .iter()
                        .map(|&s| domain.dist(cands[s], cands[i]))
                        .fold(C::infinity(), C::min)
                };
                cmp(gap(a), gap(b)).then(b.cmp(&a))
            })
            .expect("count <= n");
        seeds.push(next);
    }
    let mut room: Vec<usize> = (0..count)
        .map(|c| n / count + usize::from(c < n % count))
        .collect();
    let mut pairs: Vec<(C, usize, usize)> = (0..n)
        .flat_map(|i| (0..count).map(move |c| (i, c)))
        .map(|(i, c)| (domain.dist(cands[seeds[c]], cands[i]), i, c))
        .collect();
    pairs.sort_by(|a, b| cmp(a.0, b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut label = vec![usize::MAX; n];
    for (_, i, c) in pairs {
        if label[i] == usize::MAX && room[c] > 0 {
            label[i] = c;
            room[c] -= 1;
        }
    }
    label
}

/// k-means-style clustering of `candidates` around graph centroids, with
/// clusters smaller than `k` merged into their nearest neighbour afterwards.
pub fn cbp_cluster<C: Scalar>(
    domain: &Domain<C>,
    candidates: &[NodeId],
    k: usize,
    seed: u64,
) -> Clustering {
    let mut cands = candidates.to_vec();
    cands.sort_unstable();
    cands.dedup();
    if cands.is_empty() {
        return Clustering {
            assignment: Vec::new(),
            centroids: Vec::new(),
            iterations: 0,
        };
    }
    let n = cands.len();
    let count = (n / k.max(1)).max(1);
    let mut label = initial_assignment(domain, &cands, count, seed);

    let groups = |label: &[usize], clusters: usize| -> Vec<Vec<NodeId>> {
        let mut g = vec![Vec::new(); clusters];
        for (i, &c) in label.iter().enumerate() {
            g[c].push(cands[i]);
        }
        g
    };
    // drops empty clusters and renumbers the rest in order
    let compact = |label: &mut Vec<usize>, clusters: usize| -> usize {
        let mut used = vec![false; clusters];
        for &c in label.iter() {
            used[c] = true;
        }
        let mut remap = vec![usize::MAX; clusters];
        let mut next = 0;
        for c in 0..clusters {
            if used[c] {
                remap[c] = next;
                next += 1;
            }
        }
        for c in label.iter_mut() {
            *c = remap[*c];
        }
        next
    };

    let mut clusters = count;
    let mut centroids: Vec<NodeId> = groups(&label, clusters)
        .iter()
        .map(|m| centroid(domain, m))
        .collect();
    let mut iterations = 0;
    while iterations < CLUSTER_ITERATIONS {
        iterations += 1;
        let mut next: Vec<usize> = cands
            .iter()
            .zip(&label)
            .map(|(&t, &current)| {
                let f = domain.reach_field(t);
                let d = |c: usize| f[centroids[c].index()];
                (0..clusters)
                    .min_by(|&a, &b| {
                        cmp(d(a), d(b))
                            .then((b == current).cmp(&(a == current)))
                            .then(a.cmp(&b))
                    })
                    .expect("at least one cluster")
            })
            .collect();
        // an emptied cluster takes over the candidate farthest from its centroid
        for c in 0..clusters {
            if next.contains(&c) {
                continue;
            }
            let mut sizes = vec![0usize; clusters];
            for &x in &next {
                sizes[x] += 1;
            }
            let far = (0..cands.len())
                .filter(|&i| sizes[next[i]] > 1)
                .max_by(|&a, &b| {
                    let da = domain.reach_field(cands[a])[centroids[next[a]].index()];
                    let db = domain.reach_field(cands[b])[centroids[next[b]].index()];
                    cmp(da, db).then(b.cmp(&a))
                });
            if let Some(i) = far {
                next[i] = c;
            }
        }
        if next == label {
            break;
        }
        label = next;
        clusters = compact(&mut label, clusters);
        centroids = groups(&label, clusters)
            .iter()
            .map(|m| centroid(domain, m))
            .collect();
    }

    loop {
        let sizes = groups(&label, clusters);
        let Some(small) = (0..clusters).find(|&c| sizes[c].len() < k) else {
            break;
        };
        if clusters == 1 {
            break;
        }
        let from = domain.dist_from(centroids[small]);
        let target = (0..clusters)
            .filter(|&c| c != small)
            .min_by(|&a, &b| {
                cmp(from[centroids[a].index()], from[centroids[b].index()]).then(a.cmp(&b))
            })
            .expect("another cluster exists");
        for c in label.iter_mut() {
            if *c == small {
                *c = target;
            }
        }
        clusters = compact(&mut label, clusters);
        centroids = groups(&label, clusters)
            .iter()
            .map(|m| centroid(domain, m))
            .collect();
    }

    Clustering {
        assignment: cands.into_iter().zip(label).collect(),
        centroids,
        iterations,
    }
}

/// A configured planner bound to one instance `(domain, s, g)`.
pub struct Planner<'a, C> {
    domain: &'a Domain<C>,
    s: NodeId,
    g: NodeId,
    config: PlannerConfig<C>,
    partition: OnceLock<Partition<C>>,
    clustering: OnceLock<Clustering>,
    cluster_heads: OnceLock<Vec<OnceLock<Option<Path<C>>>>>,
    walk: OnceLock<Option<Path<C>>>,
    full_cover: OnceLock<Option<Path<C>>>,
    expansions: AtomicU64,
}

impl<'a, C: Scalar> Planner<'a, C> {
    pub fn new(
        domain: &'a Domain<C>,
        s: NodeId,
        g: NodeId,
        config: PlannerConfig<C>,
    ) -> Result<Self, ConfigError> {
        if config.k == 0 {
            return Err(ConfigError::ZeroK);
        }
        if config.ell.is_nan() || config.ell < C::zero() {
            return Err(ConfigError::BadEll);
        }
        match (config.kind, config.m) {
            (PlannerKind::MPbp | PlannerKind::Rbp | PlannerKind::Cbp, Horizon::Unbounded) => {
                return Err(ConfigError::NeedsFiniteM(config.kind))
            }
            (_, Horizon::Steps(0)) => return Err(ConfigError::ZeroM),
            _ => {}
        }
        if !domain.is_undirected() {
            log::warn!(
                "{} on a directed domain: anonymity guarantees do not apply",
                config.kind
            );
        }
        Ok(Planner {
            domain,
            s,
            g,
            config,
            partition: OnceLock::new(),
            clustering: OnceLock::new(),
            cluster_heads: OnceLock::new(),
            walk: OnceLock::new(),
            full_cover: OnceLock::new(),
            expansions: AtomicU64::new(0),
        })
    }

    pub fn domain(&self) -> &'a Domain<C> {
        self.domain
    }

    pub fn start(&self) -> NodeId {
        self.s
    }

    pub fn goal(&self) -> NodeId {
        self.g
    }

    pub fn config(&self) -> &PlannerConfig<C> {
        &self.config
    }

    /// WRPT expansions spent so far, partition search included.
    pub fn expansions(&self) -> u64 {
        self.expansions.load(Ordering::Relaxed)
    }

    /// Seed words shared by every query on this instance.
    fn mixer(&self) -> Mixer {
        let mut m = Mixer::new(self.config.seed);
        m.push(self.domain.fingerprint())
            .push(self.s.0 as u64)
            .push(self.g.0 as u64)
            .push(self.config.m.steps().map_or(u64::MAX, |m| m as u64));
        m
    }

    /// The t-independent partition behind Pbp and m-Pbp, computed once.
    pub fn partition(&self) -> &Partition<C> {
        self.partition.get_or_init(|| {
            let c = &self.config;
            let params = SearchParams::new(c.k, c.ell)
                .heuristic(c.heuristic)
                .budget(c.time_limit.map_or(Budget::unlimited(), Budget::after));
            let (d, s, g) = (self.domain, self.s, self.g);
            let p = match c.partitioner {
                PartitionerKind::MergeBb => merge_bb(d, s, g, params, c.merge_order),
                PartitionerKind::DfBb => df_bb(d, s, g, params),
                PartitionerKind::Naive => naive_partition(d, s, g, c.ell, c.heuristic, c.seed),
            };
            self.expansions
                .fetch_add(p.stats.wrpt_expansions, Ordering::Relaxed);
            p
        })
    }

    /// Cbp's clustering of the coverable candidates, computed once.
    pub fn clustering(&self) -> &Clustering {
        self.clustering.get_or_init(|| {
            let cands: Vec<NodeId> = self
                .domain
                .transit()
                .iter()
                .copied()
                .filter(|&t| self.domain.coverable(self.s, self.g, t))
                .collect();
            let mut m = Mixer::new(self.config.seed);
            m.push(self.s.0 as u64).push(self.g.0 as u64);
            cbp_cluster(self.domain, &cands, self.config.k, m.finish())
        })
    }

    pub fn plan(&self, t: NodeId) -> PlanResult<C> {
        match self.config.kind {
            PlannerKind::Pbp => self.pbp(t),
            PlannerKind::MPbp => self.m_pbp(t),
            PlannerKind::Rbp => self.rbp(t),
            PlannerKind::Cbp => self.cbp(t),
            PlannerKind::FullCover => self.full_cover_plan(t),
        }
    }

    fn m(&self) -> usize {
        self.config.m.steps().unwrap_or(usize::MAX)
    }

    fn singleton(&self, from: NodeId, t: NodeId) -> Option<Path<C>> {
        let res = Wrpt::new(self.domain, from, self.g, &[t])
            .expect("one target")
            .heuristic(self.config.heuristic)
            .solve();
        self.expansions.fetch_add(res.expansions, Ordering::Relaxed);
        res.into_path()
    }

    /// `head` followed by the cheapest way on to `g` that covers `t`.
    fn continue_covering(&self, head: &Path<C>, t: NodeId) -> Option<Path<C>> {
        let tail = if self.domain.covers(head, t) {
            self.domain.shortest_path(head.last(), self.g)?
        } else {
            self.singleton(head.last(), t)?
        };
        head.concat(&tail).ok()
    }

    fn planned(path: Path<C>, group: Option<usize>, shared_prefix: usize) -> PlanResult<C> {
        let shared_prefix = shared_prefix.min(path.len());
        PlanResult::Planned {
            path,
            group,
            shared_prefix,
        }
    }

    fn pbp(&self, t: NodeId) -> PlanResult<C> {
        let p = self.partition();
        let Some(i) = p.subset_of(t) else {
            return PlanResult::Failure;
        };
        match &p.subsets[i].covering_path {
            Some(path) => Self::planned(path.clone(), Some(i), path.len()),
            None => PlanResult::Failure,
        }
    }

    fn m_pbp(&self, t: NodeId) -> PlanResult<C> {
        let PlanResult::Planned { path, group, .. } = self.pbp(t) else {
            return PlanResult::Failure;
        };
        let m = self.m();
        if m >= path.len() {
            let n = path.len();
            return Self::planned(path, group, n);
        }
        match self.continue_covering(&path.prefix(m), t) {
            Some(p) => Self::planned(p, group, m),
            None => PlanResult::Failure,
        }
    }

    /// `m`-node random walk from `s`, identical for every query.
    pub fn random_walk(&self) -> Option<&Path<C>> {
        self.walk
            .get_or_init(|| {
                let mut rng = self.mixer().rng();
                let mut nodes = vec![self.s];
                let mut costs = Vec::new();
                while nodes.len() < self.m() {
                    let here = *nodes.last().expect("non-empty");
                    let next = self.domain.successors(here);
                    if next.is_empty() {
                        return None;
                    }
                    let (n, c) = next[rng.gen_range(0..next.len())];
                    nodes.push(n);
                    costs.push(c);
                }
                Some(Path::from_steps(nodes, costs))
            })
            .as_ref()
    }

    fn rbp(&self, t: NodeId) -> PlanResult<C> {
        let Some(walk) = self.random_walk() else {
            return PlanResult::Failure;
        };
        if !self.domain.coverable(walk.last(), self.g, t) {
            return PlanResult::Failure;
        }
        match self.continue_covering(walk, t) {
            Some(p) => Self::planned(p, None, self.m()),
            None => PlanResult::Failure,
        }
    }

    /// Cbp's first segment for a cluster: toward the centroid, padded with
    /// a random walk when the direct route has fewer than `m` nodes.
    pub fn cluster_head(&self, cluster: usize) -> Option<&Path<C>> {
        let clustering = self.clustering();
        let heads = self
            .cluster_heads
            .get_or_init(|| (0..clustering.len()).map(|_| OnceLock::new()).collect());
        heads
            .get(cluster)?
            .get_or_init(|| {
                let sigma = clustering.centroids[cluster];
                let m = self.m();
                let direct = self.domain.shortest_path(self.s, sigma)?;
                if direct.len() >= m {
                    return Some(direct.prefix(m));
                }
                let mut mixer = self.mixer();
                mixer.push(cluster as u64);
                let mut rng = mixer.rng();
                let mut walk = Path::single(self.s);
                let mut rest = direct;
                // nodes in walk ∘ rest, counting the junction once
                while walk.len() + rest.len() - 1 < m {
                    let next = self.domain.successors(walk.last());
                    if next.is_empty() {
                        return None;
                    }
                    let (n, c) = next[rng.gen_range(0..next.len())];
                    let step = Path::from_steps(vec![walk.last(), n], [c]);
                    walk = walk.concat(&step).ok()?;
                    rest = self.domain.shortest_path(n, sigma)?;
                }
                walk.concat(&rest).ok()
            })
            .as_ref()
    }

    fn cbp(&self, t: NodeId) -> PlanResult<C> {
        let Some(cluster) = self.clustering().cluster_of(t) else {
            return PlanResult::Failure;
        };
        let Some(head) = self.cluster_head(cluster) else {
            return PlanResult::Failure;
        };
        match self.continue_covering(head, t) {
            Some(p) => Self::planned(p, Some(cluster), self.m()),
            None => PlanResult::Failure,
        }
    }

    /// One path covering every coverable candidate: the per-candidate
    /// optimal paths joined by `g -> s` return legs.
    pub fn full_cover_path(&self) -> Option<&Path<C>> {
        self.full_cover
            .get_or_init(|| {
                let back = self.domain.shortest_path(self.g, self.s);
                let mut acc: Option<Path<C>> = None;
                let mut cands = self.domain.transit().to_vec();
                cands.sort_unstable();
                for t in cands {
                    if !self.domain.coverable(self.s, self.g, t) {
                        continue;
                    }
                    if acc.as_ref().is_some_and(|p| self.domain.covers(p, t)) {
                        continue;
                    }
                    let leg = self.singleton(self.s, t)?;
                    acc = Some(match acc {
                        None => leg,
                        Some(p) => p.concat(back.as_ref()?).ok()?.concat(&leg).ok()?,
                    });
                }
                acc.or_else(|| self.domain.shortest_path(self.s, self.g))
            })
            .as_ref()
    }

    fn full_cover_plan(&self, t: NodeId) -> PlanResult<C> {
        if !self.domain.coverable(self.s, self.g, t) {
            return PlanResult::Failure;
        }
        match self.full_cover_path() {
            Some(p) if self.domain.covers(p, t) => Self::planned(p.clone(), None, p.len()),
            _ => PlanResult::Failure,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_domain, GridMap};

    fn open(w: usize, h: usize, transit: &[(usize, usize)], r: u32) -> Domain<f64> {
        let row = ".".repeat(w);
        let rows: Vec<&str> = (0..h).map(|_| row.as_str()).collect();
        build_domain(&GridMap::from_rows(&rows).unwrap(), transit, r, true).unwrap()
    }

    #[test]
    fn failure_is_never_equal() {
        let f: PlanResult<f64> = PlanResult::Failure;
        assert_ne!(f, PlanResult::Failure);
        let p = PlanResult::Planned {
            path: Path::<f64>::single(NodeId(0)),
            group: None,
            shared_prefix: 1,
        };
        assert_eq!(p, p.clone());
        assert_ne!(p, f);
    }

    #[test]
    fn config_validation() {
        let d = open(3, 1, &[], 0);
        let (s, g) = (NodeId(0), NodeId(2));
        let cfg = |kind, m| PlannerConfig::new(kind, 2, 1.0, m);
        assert!(Planner::new(&d, s, g, cfg(PlannerKind::Rbp, Horizon::Unbounded)).is_err());
        assert!(Planner::new(&d, s, g, cfg(PlannerKind::Pbp, Horizon::Steps(0))).is_err());
        assert!(Planner::new(&d, s, g, cfg(PlannerKind::Pbp, Horizon::Unbounded)).is_ok());
        let zero = PlannerConfig::new(PlannerKind::Pbp, 0, 1.0, Horizon::Unbounded);
        assert_eq!(Planner::new(&d, s, g, zero).err(), Some(ConfigError::ZeroK));
    }

    #[test]
    fn small_candidate_sets_form_one_cluster() {
        let d = open(6, 6, &[(0, 0), (5, 5), (2, 3)], 0);
        let c = cbp_cluster(&d, d.transit(), 2, 7);
        assert_eq!(c.len(), 1);
        assert_eq!(c.members(0).len(), 3);
    }

    #[test]
    fn singleton_centroid_is_itself() {
        let d = open(5, 5, &[(3, 1)], 0);
        let u = d.node_at(3, 1).unwrap();
        assert_eq!(centroid(&d, &[u]), u);
    }

    #[test]
    fn separated_blobs_cluster_apart() {
        let left = [(0, 0), (1, 0), (0, 1), (1, 1)];
        let right = [(8, 8), (9, 8), (8, 9), (9, 9)];
        let all: Vec<_> = left.iter().chain(&right).copied().collect();
        let d = open(10, 10, &all, 0);
        for seed in 0..50 {
            let c = cbp_cluster(&d, d.transit(), 4, seed);
            assert_eq!(c.len(), 2, "seed {seed}");
            let a = c.cluster_of(d.node_at(0, 0).unwrap()).unwrap();
            for &(x, y) in &left {
                assert_eq!(c.cluster_of(d.node_at(x, y).unwrap()), Some(a));
            }
            for &(x, y) in &right {
                assert_ne!(c.cluster_of(d.node_at(x, y).unwrap()), Some(a));
            }
        }
    }

    #[test]
    fn pbp_shares_paths_within_subsets() {
        let d = open(6, 1, &[(2, 0), (3, 0)], 0);
        let (s, g) = (d.node_at(0, 0).unwrap(), d.node_at(5, 0).unwrap());
        let p = Planner::new(
            &d,
            s,
            g,
            PlannerConfig::new(PlannerKind::Pbp, 2, 1.0, Horizon::Unbounded),
        )
        .unwrap();
        let a = p.plan(d.node_at(2, 0).unwrap());
        let b = p.plan(d.node_at(3, 0).unwrap());
        assert_eq!(a, b);
        assert!(std::ptr::eq(p.partition(), p.partition()));
        assert!(p.plan(d.node_at(4, 0).unwrap()).is_failure());
    }

    #[test]
    fn rbp_prefix_ignores_t() {
        let d = open(5, 5, &[(0, 4), (4, 0), (4, 4)], 0);
        let (s, g) = (d.node_at(0, 0).unwrap(), d.node_at(2, 2).unwrap());
        let cfg = PlannerConfig::new(PlannerKind::Rbp, 2, 1.0, Horizon::Steps(4)).seed(11);
        let p = Planner::new(&d, s, g, cfg).unwrap();
        let outs: Vec<_> = d.transit().iter().map(|&t| p.plan(t)).collect();
        for o in &outs {
            let path = o.path().unwrap();
            assert_eq!(path.first(), s);
            assert_eq!(path.last(), g);
            assert_eq!(path.prefix(4), outs[0].path().unwrap().prefix(4));
        }
    }

    #[test]
    fn cbp_head_has_m_nodes() {
        let d = open(6, 6, &[(1, 1), (4, 4), (1, 4), (4, 1)], 0);
        let (s, g) = (d.node_at(0, 0).unwrap(), d.node_at(5, 5).unwrap());
        for m in [1, 2, 5, 12, 30] {
            let cfg = PlannerConfig::new(PlannerKind::Cbp, 2, 0.0, Horizon::Steps(m)).seed(3);
            let p = Planner::new(&d, s, g, cfg).unwrap();
            for c in 0..p.clustering().len() {
                assert!(p.cluster_head(c).unwrap().len() >= m);
            }
            for &t in d.transit() {
                let path = p.plan(t).path().cloned().unwrap();
                assert!(d.covers(&path, t));
                assert_eq!(path.last(), g);
            }
        }
    }

    #[test]
    fn full_cover_is_shared() {
        let d = open(7, 3, &[(0, 0), (6, 2), (3, 1)], 0);
        let (s, g) = (d.node_at(0, 1).unwrap(), d.node_at(6, 1).unwrap());
        let cfg = PlannerConfig::new(PlannerKind::FullCover, 3, 1.0, Horizon::Unbounded);
        let p = Planner::new(&d, s, g, cfg).unwrap();
        let path = p.full_cover_path().unwrap().clone();
        for &t in d.transit() {
            assert!(d.covers(&path, t));
            assert_eq!(p.plan(t).path(), Some(&path));
        }
    }
}
