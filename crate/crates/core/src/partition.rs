//! Partitioning transit candidates into jointly anonymized subsets.
//!
//! A subset `ψ` is *anonymizable* (satisfies the 3C condition) when it has at
//! least `k` members, every ordered pair of members is at least `ℓ` apart and
//! a single `s -> g` path covers all of them. Its anonymization cost is
//!
//! ```text
//! ac(ψ) = Σ_{t ∈ ψ} (cost(π*_ψ) - cost(π*_t)) / cost(π*_t)
//! ```
//!
//! where `π*_ψ` is the optimal covering path for `ψ` and `π*_t` the optimal
//! covering path for `t` alone. Searches maximize `ap` (anonymized members)
//! first and minimize `mac = Σ ac / ap` second.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::domain::{Domain, NodeId, Path};
use crate::scalar::{cmp, Scalar};
use crate::seed;
use crate::wrpt::{Budget, Heuristic, Wrpt, WrptOutcome};

/// Exhaustive enumeration refuses anything larger (Bell(8) = 4140).
pub const ORACLE_MAX_CANDIDATES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MergeOrder {
    /// Pairs shuffled by a generator seeded with this value.
    Random(u64),
    /// Ascending `max(cost_i, cost_j) * (|ψ_i| + |ψ_j|)`.
    CostAsc,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchParams<C> {
    pub k: usize,
    pub ell: C,
    pub heuristic: Heuristic,
    pub budget: Budget,
}

impl<C: Scalar> SearchParams<C> {
    pub fn new(k: usize, ell: C) -> Self {
        SearchParams {
            k,
            ell,
            heuristic: Heuristic::Tunnel,
            budget: Budget::unlimited(),
        }
    }

    pub fn heuristic(mut self, h: Heuristic) -> Self {
        self.heuristic = h;
        self
    }

    pub fn budget(mut self, b: Budget) -> Self {
        self.budget = b;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subset<C> {
    pub members: Vec<NodeId>,
    pub covering_path: Option<Path<C>>,
    pub ac: C,
    pub satisfies_3c: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSearchStats<C> {
    pub evaluated_partitions: u64,
    pub best_ap: usize,
    pub best_mac: C,
    pub completed: bool,
    pub elapsed: Duration,
    pub wrpt_calls: u64,
    pub wrpt_expansions: u64,
    /// Some covering search hit the budget; its merge was skipped.
    pub wrpt_timeouts: u64,
    /// `(ap, mac)` after every incumbent improvement, in order.
    pub incumbent_history: Vec<(usize, C)>,
}

impl<C: Scalar> Default for PartitionSearchStats<C> {
    fn default() -> Self {
        PartitionSearchStats {
            evaluated_partitions: 0,
            best_ap: 0,
            best_mac: C::zero(),
            completed: true,
            elapsed: Duration::ZERO,
            wrpt_calls: 0,
            wrpt_expansions: 0,
            wrpt_timeouts: 0,
            incumbent_history: Vec::new(),
        }
    }
}

/// Anonymized subsets `Ψ+` plus the residual bucket `T_Φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition<C> {
    pub subsets: Vec<Subset<C>>,
    pub bucket: Vec<NodeId>,
    pub ap: usize,
    /// `Σ ac / ap`; zero when nothing is anonymized.
    pub mac: C,
    /// Only undirected domains carry the completeness guarantee.
    pub guaranteed: bool,
    pub stats: PartitionSearchStats<C>,
}

impl<C: Scalar> Partition<C> {
    /// Index into `subsets` of the subset holding `t`, if anonymized.
    pub fn subset_of(&self, t: NodeId) -> Option<usize> {
        self.subsets.iter().position(|s| s.members.contains(&t))
    }

    pub fn in_bucket(&self, t: NodeId) -> bool {
        self.bucket.contains(&t)
    }

    /// One `subset <id>: <labels> cost=<c> ac=<v>` line per subset, then
    /// `bucket: <labels>`.
    pub fn to_text(&self, domain: &Domain<C>) -> String {
        let mut out = String::new();
        for (id, s) in self.subsets.iter().enumerate() {
            let labels: Vec<&str> = s.members.iter().map(|&n| domain.label(n)).collect();
            let cost = s.covering_path.as_ref().map_or(C::infinity(), Path::cost);
            let _ = writeln!(
                out,
                "subset {id}: {} cost={cost} ac={}",
                labels.join(" "),
                s.ac
            );
        }
        let labels: Vec<&str> = self.bucket.iter().map(|&n| domain.label(n)).collect();
        let _ = writeln!(out, "bucket: {}", labels.join(" "));
        out
    }
}

/// A subset line read back from [`Partition::to_text`].
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetRecord<C> {
    pub members: Vec<NodeId>,
    pub cost: C,
    pub ac: C,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionRecord<C> {
    pub subsets: Vec<SubsetRecord<C>>,
    pub bucket: Vec<NodeId>,
}

#[derive(Debug, Error, PartialEq)]
#[error("partition text line {line}: {message}")]
pub struct PartitionTextError {
    pub line: usize,
    pub message: String,
}

pub fn parse_partition_text<C: Scalar>(
    text: &str,
    domain: &Domain<C>,
) -> Result<PartitionRecord<C>, PartitionTextError> {
    let mut subsets = Vec::new();
    let mut bucket = None;
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let err = |m: &str| PartitionTextError {
            line,
            message: m.to_string(),
        };
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        let (head, rest) = l.split_once(':').ok_or_else(|| err("missing ':'"))?;
        let mut members = Vec::new();
        let mut cost = None;
        let mut ac = None;
        for w in rest.split_whitespace() {
            if let Some(v) = w.strip_prefix("cost=") {
                cost = Some(v.parse::<f64>().map_err(|_| err("bad cost"))?);
            } else if let Some(v) = w.strip_prefix("ac=") {
                ac = Some(v.parse::<f64>().map_err(|_| err("bad ac"))?);
            } else {
                members.push(
                    domain
                        .by_label(w)
                        .ok_or_else(|| err(&format!("unknown node {w:?}")))?,
                );
            }
        }
        if head == "bucket" {
            bucket = Some(members);
        } else if head.starts_with("subset") {
            subsets.push(SubsetRecord {
                members,
                cost: C::from_f64(cost.ok_or_else(|| err("missing cost"))?),
                ac: C::from_f64(ac.ok_or_else(|| err("missing ac"))?),
            });
        } else {
            return Err(err("expected `subset` or `bucket`"));
        }
    }
    Ok(PartitionRecord {
        subsets,
        bucket: bucket.ok_or(PartitionTextError {
            line: 0,
            message: "missing bucket line".into(),
        })?,
    })
}

/// Outcome of a single 3C check.
#[derive(Debug, Clone, PartialEq)]
pub enum ThreeC<C> {
    Satisfied(Path<C>),
    Violated,
    /// The covering search ran out of budget; treated as violated.
    Unknown,
}

impl<C> ThreeC<C> {
    pub fn holds(&self) -> bool {
        matches!(self, ThreeC::Satisfied(_))
    }
}

/// Cardinality, spread and joint coverage of `members`.
#[allow(clippy::too_many_arguments)]
pub fn check_3c<C: Scalar>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    members: &[NodeId],
    k: usize,
    ell: C,
    heuristic: Heuristic,
    budget: Budget,
) -> ThreeC<C> {
    if members.len() < k || domain.min_dispersion(members) < ell {
        return ThreeC::Violated;
    }
    let Ok(search) = Wrpt::new(domain, s, g, members) else {
        return ThreeC::Violated;
    };
    match search.heuristic(heuristic).budget(budget).solve().outcome {
        WrptOutcome::Solved(p) => ThreeC::Satisfied(p),
        WrptOutcome::NoPath => ThreeC::Violated,
        WrptOutcome::TimedOut => ThreeC::Unknown,
    }
}

/// Pair-scoring input for [`merge_order_cost_asc`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeCandidate<C> {
    pub min_member: NodeId,
    pub size: usize,
    pub cost: C,
}

/// All index pairs `(i, j)`, `i < j`, sorted by
/// `max(cost_i, cost_j) * (size_i + size_j)`; ties by the smaller member
/// index of the first subset, then of the second.
pub fn merge_order_cost_asc<C: Scalar>(subsets: &[MergeCandidate<C>]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            let (a, b) = if subsets[i].min_member <= subsets[j].min_member {
                (i, j)
            } else {
                (j, i)
            };
            pairs.push((a, b));
        }
    }
    let score = |&(i, j): &(usize, usize)| {
        subsets[i].cost.max(subsets[j].cost) * C::from_usize(subsets[i].size + subsets[j].size)
    };
    pairs.sort_by(|p, q| {
        cmp(score(p), score(q))
            .then(subsets[p.0].min_member.cmp(&subsets[q.0].min_member))
            .then(subsets[p.1].min_member.cmp(&subsets[q.1].min_member))
    });
    pairs
}

type Mask = u64;

fn members_of(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Clone)]
enum Cover<C> {
    Found(Path<C>),
    Missing,
    TimedOut,
}

/// Shared machinery: coverable candidates, singleton costs, memoized
/// covering searches and the incumbent.
struct Engine<'a, C> {
    domain: &'a Domain<C>,
    s: NodeId,
    g: NodeId,
    params: SearchParams<C>,
    /// Coverable candidates, ascending node index; bit `i` of a mask is `cands[i]`.
    cands: Vec<NodeId>,
    uncoverable: Vec<NodeId>,
    single_cost: Vec<C>,
    disp: Vec<Vec<C>>,
    memo: HashMap<Mask, Cover<C>>,
    stats: PartitionSearchStats<C>,
    best: Option<(usize, C, Vec<Mask>)>,
    aborted: bool,
}

impl<'a, C: Scalar> Engine<'a, C> {
    fn new(domain: &'a Domain<C>, s: NodeId, g: NodeId, params: SearchParams<C>) -> Self {
        if !domain.is_undirected() {
            log::warn!("partition search on a directed domain: completeness is not guaranteed");
        }
        let mut sorted = domain.transit().to_vec();
        sorted.sort_unstable();
        let (cands, uncoverable): (Vec<_>, Vec<_>) =
            sorted.into_iter().partition(|&t| domain.coverable(s, g, t));
        let mut e = Engine {
            domain,
            s,
            g,
            params,
            disp: cands
                .iter()
                .map(|&a| cands.iter().map(|&b| domain.dispersion(a, b)).collect())
                .collect(),
            cands,
            uncoverable,
            single_cost: Vec::new(),
            memo: HashMap::new(),
            stats: PartitionSearchStats::default(),
            best: None,
            aborted: false,
        };
        assert!(
            e.cands.len() <= 64,
            "at most 64 coverable candidates are supported"
        );
        e.single_cost = (0..e.cands.len())
            .map(|i| match e.cover(1 << i) {
                Cover::Found(p) => p.cost(),
                _ => C::infinity(),
            })
            .collect();
        e
    }

    fn total(&self) -> usize {
        self.cands.len()
    }

    fn nodes(&self, mask: Mask) -> Vec<NodeId> {
        members_of(mask).map(|i| self.cands[i]).collect()
    }

    fn cover(&mut self, mask: Mask) -> Cover<C> {
        if let Some(c) = self.memo.get(&mask) {
            return c.clone();
        }
        let targets = self.nodes(mask);
        let res = Wrpt::new(self.domain, self.s, self.g, &targets)
            .expect("mask width is at most 64")
            .heuristic(self.params.heuristic)
            .budget(self.params.budget)
            .solve();
        self.stats.wrpt_calls += 1;
        self.stats.wrpt_expansions += res.expansions;
        let c = match res.outcome {
            WrptOutcome::Solved(p) => Cover::Found(p),
            WrptOutcome::NoPath => Cover::Missing,
            WrptOutcome::TimedOut => {
                self.stats.wrpt_timeouts += 1;
                self.stats.completed = false;
                // not memoized: a later call may have more budget left
                return Cover::TimedOut;
            }
        };
        self.memo.insert(mask, c.clone());
        c
    }

    fn cover_cost(&mut self, mask: Mask) -> Option<C> {
        match self.cover(mask) {
            Cover::Found(p) => Some(p.cost()),
            _ => None,
        }
    }

    /// `ac` for a covering cost; `None` when some member has a zero-cost
    /// singleton optimum but the shared path is not free.
    fn ac_for(&self, mask: Mask, cost: C) -> Option<C> {
        let mut sum = C::zero();
        for i in members_of(mask) {
            let base = self.single_cost[i];
            if base == C::zero() {
                if cost != C::zero() {
                    return None;
                }
            } else {
                sum = sum + (cost - base) / base;
            }
        }
        Some(sum)
    }

    fn spread_ok(&self, mask: Mask) -> bool {
        let idx: Vec<usize> = members_of(mask).collect();
        idx.iter().all(|&a| {
            idx.iter()
                .all(|&b| a == b || self.disp[a][b] >= self.params.ell)
        })
    }

    fn cross_min(&self, a: Mask, b: Mask) -> C {
        let mut m = C::infinity();
        for i in members_of(a) {
            for j in members_of(b) {
                m = m.min(self.disp[i][j]).min(self.disp[j][i]);
            }
        }
        m
    }

    /// `ac` when `mask` satisfies 3C, computing its covering path if needed.
    fn three_c(&mut self, mask: Mask) -> Option<C> {
        if (mask.count_ones() as usize) < self.params.k || !self.spread_ok(mask) {
            return None;
        }
        let cost = self.cover_cost(mask)?;
        self.ac_for(mask, cost)
    }

    /// `(ap, Σ ac)` over the anonymizable members of `psi`.
    fn score(&mut self, psi: &[Mask]) -> (usize, C) {
        let mut ap = 0;
        let mut sum = C::zero();
        for &m in psi {
            if let Some(ac) = self.three_c(m) {
                ap += m.count_ones() as usize;
                sum = sum + ac;
            }
        }
        (ap, sum)
    }

    fn mac(ap: usize, sum: C) -> C {
        if ap == 0 {
            C::zero()
        } else {
            sum / C::from_usize(ap)
        }
    }

    fn offer(&mut self, psi: &[Mask], ap: usize, mac: C) {
        let better = match &self.best {
            None => true,
            Some((bap, bmac, _)) => ap > *bap || (ap == *bap && mac < *bmac),
        };
        if better {
            let mut kept = psi.to_vec();
            kept.sort_unstable_by_key(|m| m.trailing_zeros());
            self.best = Some((ap, mac, kept));
            self.stats.incumbent_history.push((ap, mac));
        }
    }

    fn best_ap_mac(&self) -> (usize, C) {
        match &self.best {
            Some((ap, mac, _)) => (*ap, *mac),
            None => (0, C::infinity()),
        }
    }

    fn out_of_time(&mut self) -> bool {
        if !self.aborted && self.params.budget.expired() {
            self.aborted = true;
            self.stats.completed = false;
        }
        self.aborted
    }

    fn finish(mut self, started: Instant) -> Partition<C> {
        let (ap, mac, psi) = self.best.take().unwrap_or((0, C::zero(), Vec::new()));
        let mut subsets = Vec::new();
        let mut bucket = self.uncoverable.clone();
        for m in psi {
            match self.three_c(m) {
                Some(ac) => {
                    let path = match self.cover(m) {
                        Cover::Found(p) => Some(p),
                        _ => None,
                    };
                    subsets.push(Subset {
                        members: self.nodes(m),
                        covering_path: path,
                        ac,
                        satisfies_3c: true,
                    });
                }
                None => bucket.extend(self.nodes(m)),
            }
        }
        // candidates the incumbent never placed (e.g. search aborted early)
        let placed: HashSet<NodeId> = subsets
            .iter()
            .flat_map(|s| s.members.iter().copied())
            .chain(bucket.iter().copied())
            .collect();
        bucket.extend(self.cands.iter().copied().filter(|c| !placed.contains(c)));
        bucket.sort_unstable();
        subsets.sort_by_key(|s| s.members[0]);

        self.stats.best_ap = ap;
        self.stats.best_mac = mac;
        self.stats.elapsed = started.elapsed();
        Partition {
            subsets,
            bucket,
            ap,
            mac,
            guaranteed: self.domain.is_undirected(),
            stats: self.stats,
        }
    }
}

struct MergeSearch<'a, C> {
    engine: Engine<'a, C>,
    order: MergeOrder,
    rng: Option<ChaCha8Rng>,
    visited: HashSet<Vec<Mask>>,
}

impl<'a, C: Scalar> MergeSearch<'a, C> {
    fn order_pairs(&mut self, psi: &[Mask]) -> Vec<(usize, usize)> {
        match self.order {
            MergeOrder::CostAsc => {
                let cands: Vec<MergeCandidate<C>> = psi
                    .iter()
                    .map(|&m| MergeCandidate {
                        min_member: self.engine.cands[m.trailing_zeros() as usize],
                        size: m.count_ones() as usize,
                        cost: self.engine.cover_cost(m).unwrap_or(C::infinity()),
                    })
                    .collect();
                merge_order_cost_asc(&cands)
            }
            MergeOrder::Random(_) => {
                let mut pairs: Vec<(usize, usize)> = (0..psi.len())
                    .flat_map(|i| (i + 1..psi.len()).map(move |j| (i, j)))
                    .collect();
                pairs.shuffle(self.rng.as_mut().expect("seeded for random order"));
                pairs
            }
        }
    }

    fn prunable(&mut self, psi: &[Mask], i: usize, j: usize, sum: C) -> bool {
        let e = &mut self.engine;
        let (a, b) = (psi[i], psi[j]);
        if e.three_c(a).is_some() && e.three_c(b).is_some() {
            return true;
        }
        if e.cross_min(a, b) < e.params.ell {
            return true;
        }
        let (best_ap, best_mac) = e.best_ap_mac();
        if best_ap == e.total() {
            let (Some(ca), Some(cb)) = (e.cover_cost(a), e.cover_cost(b)) else {
                return false;
            };
            let ac_a = e.ac_for(a, ca).unwrap_or(C::infinity());
            let ac_b = e.ac_for(b, cb).unwrap_or(C::infinity());
            let allowed = C::from_usize(best_ap) * best_mac - sum + ac_a + ac_b;
            let floor = ca.max(cb);
            let mut bound = C::zero();
            for t in members_of(a | b) {
                let base = e.single_cost[t];
                if base > C::zero() {
                    bound = bound + (floor - base) / base;
                }
            }
            if bound >= allowed {
                return true;
            }
        }
        false
    }

    fn search(&mut self, psi: Vec<Mask>) {
        if self.engine.out_of_time() {
            return;
        }
        let mut key = psi.clone();
        key.sort_unstable();
        if !self.visited.insert(key) {
            return;
        }
        self.engine.stats.evaluated_partitions += 1;
        let (ap, sum) = self.engine.score(&psi);
        let mac = Engine::<C>::mac(ap, sum);
        self.engine.offer(&psi, ap, mac);

        let total = self.engine.total();
        let (best_ap, best_mac) = self.engine.best_ap_mac();
        // Merging only raises covering costs, so once every candidate is
        // anonymized somewhere the summed cost of this branch cannot drop.
        if psi.len() <= 1
            || ap == total
            || (best_ap == total && sum >= C::from_usize(total) * best_mac)
        {
            return;
        }

        for (i, j) in self.order_pairs(&psi) {
            if self.prunable(&psi, i, j, sum) {
                continue;
            }
            let merged = psi[i] | psi[j];
            match self.engine.cover(merged) {
                Cover::Found(_) => {}
                Cover::Missing | Cover::TimedOut => continue,
            }
            let next: Vec<Mask> = psi
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != i && x != j)
                .map(|(_, &m)| m)
                .chain(std::iter::once(merged))
                .collect();
            self.search(next);
            if self.engine.aborted {
                return;
            }
        }
    }
}

/// Merge-based branch and bound: start from coverable singletons and
/// recursively try every pairwise merge, pruning with the incumbent.
/// Anytime: on budget expiry the best partition so far is returned with
/// `stats.completed == false`.
pub fn merge_bb<C: Scalar>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    params: SearchParams<C>,
    order: MergeOrder,
) -> Partition<C> {
    let started = Instant::now();
    let engine = Engine::new(domain, s, g, params);
    let rng = match order {
        MergeOrder::Random(seed) => Some(seed::rng_for(&[
            domain.fingerprint(),
            s.0 as u64,
            g.0 as u64,
            seed,
        ])),
        MergeOrder::CostAsc => None,
    };
    let mut search = MergeSearch {
        engine,
        order,
        rng,
        visited: HashSet::new(),
    };
    let singletons: Vec<Mask> = (0..search.engine.total()).map(|i| 1 << i).collect();
    search.search(singletons);
    search.engine.finish(started)
}

struct DepthSearch<'a, C> {
    engine: Engine<'a, C>,
}

impl<'a, C: Scalar> DepthSearch<'a, C> {
    fn search(&mut self, psi: &mut Vec<Mask>, next: usize) {
        if self.engine.out_of_time() {
            return;
        }
        if next == self.engine.total() {
            self.engine.stats.evaluated_partitions += 1;
            let (ap, sum) = self.engine.score(psi);
            let mac = Engine::<C>::mac(ap, sum);
            self.engine.offer(psi, ap, mac);
            return;
        }
        let bit: Mask = 1 << next;
        for i in 0..psi.len() {
            // only the spread condition applies to a bare singleton
            if self.engine.cross_min(psi[i], bit) < self.engine.params.ell {
                continue;
            }
            psi[i] |= bit;
            self.search(psi, next + 1);
            psi[i] &= !bit;
            if self.engine.aborted {
                return;
            }
        }
        psi.push(bit);
        self.search(psi, next + 1);
        psi.pop();
    }
}

/// Depth-first branch and bound: place candidates one at a time into an
/// existing subset or a new one, evaluating complete assignments.
pub fn df_bb<C: Scalar>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    params: SearchParams<C>,
) -> Partition<C> {
    let started = Instant::now();
    let mut search = DepthSearch {
        engine: Engine::new(domain, s, g, params),
    };
    search.search(&mut Vec::new(), 0);
    search.engine.finish(started)
}

/// Baseline: shuffle the coverable candidates and cut them into pairs (a
/// final triple when the count is odd). Pairs failing `k = 2` or the spread
/// condition go to the bucket.
pub fn naive_partition<C: Scalar>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    ell: C,
    heuristic: Heuristic,
    seed: u64,
) -> Partition<C> {
    let started = Instant::now();
    let params = SearchParams::new(2, ell).heuristic(heuristic);
    let mut engine = Engine::new(domain, s, g, params);
    let mut order: Vec<usize> = (0..engine.total()).collect();
    let mut rng = seed::rng_for(&[domain.fingerprint(), s.0 as u64, g.0 as u64, seed]);
    order.shuffle(&mut rng);

    let mut groups: Vec<Mask> = Vec::new();
    let mut chunks = order.chunks_exact(2);
    for pair in &mut chunks {
        groups.push((1 << pair[0]) | (1 << pair[1]));
    }
    if let [odd] = chunks.remainder() {
        match groups.last_mut() {
            Some(last) => *last |= 1 << odd,
            None => groups.push(1 << odd),
        }
    }
    engine.stats.evaluated_partitions = 1;
    let (ap, sum) = engine.score(&groups);
    let mac = Engine::<C>::mac(ap, sum);
    engine.offer(&groups, ap, mac);
    engine.finish(started)
}

/// Enumerates every set partition of the coverable candidates and returns
/// the lexicographically best `(ap, -mac)`. Optimality reference for small
/// instances only.
///
/// # Panics
/// With more than [`ORACLE_MAX_CANDIDATES`] coverable candidates.
pub fn exhaustive_oracle<C: Scalar>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    k: usize,
    ell: C,
) -> Partition<C> {
    let started = Instant::now();
    let mut engine = Engine::new(domain, s, g, SearchParams::new(k, ell));
    let n = engine.total();
    assert!(
        n <= ORACLE_MAX_CANDIDATES,
        "exhaustive oracle limited to {ORACLE_MAX_CANDIDATES} candidates, got {n}"
    );
    // restricted growth strings: label[i] <= 1 + max(label[..i])
    let mut labels = vec![0usize; n];
    loop {
        let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut psi = vec![0 as Mask; blocks];
        for (i, &b) in labels.iter().enumerate() {
            psi[b] |= 1 << i;
        }
        engine.stats.evaluated_partitions += 1;
        let (ap, sum) = engine.score(&psi);
        let mac = Engine::<C>::mac(ap, sum);
        engine.offer(&psi, ap, mac);

        // advance to the next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return engine.finish(started);
            }
            i -= 1;
            let cap = labels[..i].iter().copied().max().unwrap_or(0) + 1;
            if labels[i] < cap {
                labels[i] += 1;
                for l in labels.iter_mut().skip(i + 1) {
                    *l = 0;
                }
                break;
            }
        }
    }
}
