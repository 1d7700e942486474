//! Watchman Route Problem with Targets.
//!
//! Find a minimum-cost path from `s` to `g` whose visibility covers every
//! node of a target set `ψ`. The search runs A* over states `⟨n, U⟩` where
//! `U` is the bit set of still-uncovered targets. The initial state is
//! `⟨s, ψ ∖ v(s)⟩`, the goal `⟨g, ∅⟩`, and moving to `n'` removes `v(n')`
//! from `U`.
//!
//! [`oracle_wrpt`] is a deliberately separate uniform-cost search over the
//! same product space, used to check optimality.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::domain::{Domain, NodeId, Path};
use crate::scalar::{cmp, Scalar};

/// Targets are tracked in a `u64` bit set.
pub const MAX_TARGETS: usize = 64;

const BUDGET_CHECK_INTERVAL: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    /// Constant zero (uniform-cost search).
    Blind,
    /// Farthest cost-to-see plus cheapest exit; see [`h_tunnel`].
    Tunnel,
}

/// Wall-clock budget shared by a search and all of its sub-searches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn after(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
        }
    }

    pub fn from_secs(secs: Option<f64>) -> Self {
        match secs {
            Some(s) => Self::after(Duration::from_secs_f64(s.max(0.0))),
            None => Self::unlimited(),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WrptError {
    #[error("{0} targets exceed the supported maximum of {MAX_TARGETS}")]
    TooManyTargets(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum WrptOutcome<C> {
    Solved(Path<C>),
    NoPath,
    TimedOut,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WrptResult<C> {
    pub outcome: WrptOutcome<C>,
    pub expansions: u64,
    pub generated: u64,
}

impl<C: Scalar> WrptResult<C> {
    pub fn path(&self) -> Option<&Path<C>> {
        match &self.outcome {
            WrptOutcome::Solved(p) => Some(p),
            _ => None,
        }
    }

    pub fn into_path(self) -> Option<Path<C>> {
        match self.outcome {
            WrptOutcome::Solved(p) => Some(p),
            _ => None,
        }
    }

    pub fn cost(&self) -> Option<C> {
        self.path().map(Path::cost)
    }

    pub fn timed_out(&self) -> bool {
        matches!(self.outcome, WrptOutcome::TimedOut)
    }

    fn terminal(outcome: WrptOutcome<C>) -> Self {
        WrptResult {
            outcome,
            expansions: 0,
            generated: 0,
        }
    }
}

/// A search state as seen during expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedState<C> {
    pub node: NodeId,
    pub uncovered: Vec<NodeId>,
    pub g: C,
    pub h: C,
}

/// Per-target distance data for the tunnel heuristic.
///
/// `reach[i][n] = min_{q ∈ v⁻¹(ψ_i)} dist(n, q)` and
/// `exit[i] = min_{q ∈ v⁻¹(ψ_i)} dist(q, g)`.
pub struct CoverFields<'a, C> {
    reach: Vec<&'a [C]>,
    exit: Vec<C>,
    to_goal: &'a [C],
}

impl<'a, C: Scalar> CoverFields<'a, C> {
    pub fn new(domain: &'a Domain<C>, targets: &[NodeId], goal: NodeId) -> Self {
        CoverFields {
            reach: targets.iter().map(|&u| domain.reach_field(u)).collect(),
            exit: targets.iter().map(|&u| domain.exit_cost(u, goal)).collect(),
            to_goal: domain.dist_to(goal),
        }
    }

    pub fn reach(&self, target: usize, n: NodeId) -> C {
        self.reach[target][n.index()]
    }

    pub fn exit(&self, target: usize) -> C {
        self.exit[target]
    }
}

#[inline]
pub fn h_blind<C: Scalar>(_node: NodeId, _uncovered: u64) -> C {
    C::zero()
}

/// `max_{u∈U} reach_u(n) + min_{u∈U} exit_u` when `U ≠ ∅`, else `dist(n, g)`.
pub fn h_tunnel<C: Scalar>(fields: &CoverFields<'_, C>, node: NodeId, uncovered: u64) -> C {
    if uncovered == 0 {
        return fields.to_goal[node.index()];
    }
    let mut far = C::zero();
    let mut exit = C::infinity();
    for i in bits(uncovered) {
        far = far.max(fields.reach[i][node.index()]);
        exit = exit.min(fields.exit[i]);
    }
    far + exit
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn dedup_targets(targets: &[NodeId]) -> Result<Vec<NodeId>, WrptError> {
    let mut ts = targets.to_vec();
    ts.sort_unstable();
    ts.dedup();
    if ts.len() > MAX_TARGETS {
        return Err(WrptError::TooManyTargets(ts.len()));
    }
    Ok(ts)
}

#[derive(Clone, Copy)]
struct Record<C> {
    node: NodeId,
    uncovered: u64,
    g: C,
    parent: u32,
}

struct OpenEntry<C> {
    f: C,
    g: C,
    node: NodeId,
    uncovered: u64,
    slot: u32,
}

impl<C: Scalar> PartialEq for OpenEntry<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<C: Scalar> Eq for OpenEntry<C> {}

impl<C: Scalar> Ord for OpenEntry<C> {
    // max-heap: "greater" pops first. Smaller f, then fewer uncovered
    // targets, then larger g, then smaller node index.
    fn cmp(&self, other: &Self) -> Ordering {
        cmp(other.f, self.f)
            .then(
                other
                    .uncovered
                    .count_ones()
                    .cmp(&self.uncovered.count_ones()),
            )
            .then(cmp(self.g, other.g))
            .then(other.node.cmp(&self.node))
            .then(other.uncovered.cmp(&self.uncovered))
    }
}

impl<C: Scalar> PartialOrd for OpenEntry<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A* solver for one WRPT instance.
pub struct Wrpt<'a, C> {
    domain: &'a Domain<C>,
    start: NodeId,
    goal: NodeId,
    targets: Vec<NodeId>,
    heuristic: Heuristic,
    budget: Budget,
    trace: bool,
}

/// Result plus the states expanded along the way (when tracing).
pub struct TracedResult<C> {
    pub result: WrptResult<C>,
    pub expanded: Vec<ExpandedState<C>>,
}

impl<'a, C: Scalar> Wrpt<'a, C> {
    pub fn new(
        domain: &'a Domain<C>,
        start: NodeId,
        goal: NodeId,
        targets: &[NodeId],
    ) -> Result<Self, WrptError> {
        Ok(Wrpt {
            domain,
            start,
            goal,
            targets: dedup_targets(targets)?,
            heuristic: Heuristic::Tunnel,
            budget: Budget::unlimited(),
            trace: false,
        })
    }

    pub fn heuristic(mut self, h: Heuristic) -> Self {
        self.heuristic = h;
        self
    }

    pub fn budget(mut self, b: Budget) -> Self {
        self.budget = b;
        self
    }

    pub fn trace(mut self, on: bool) -> Self {
        self.trace = on;
        self
    }

    pub fn solve(&self) -> WrptResult<C> {
        self.run().result
    }

    pub fn solve_traced(&self) -> TracedResult<C> {
        self.run()
    }

    fn run(&self) -> TracedResult<C> {
        let d = self.domain;
        let mut expanded = Vec::new();
        let done = |result| TracedResult {
            result,
            expanded: Vec::new(),
        };

        // Cheap infeasibility check: every target needs an observer that
        // lies on some s -> g route.
        let from_s = d.dist_from(self.start);
        if !from_s[self.goal.index()].is_finite()
            || !self
                .targets
                .iter()
                .all(|&u| d.coverable(self.start, self.goal, u))
        {
            return done(WrptResult::terminal(WrptOutcome::NoPath));
        }

        let mut seen_by = vec![0u64; d.node_count()];
        for (i, &u) in self.targets.iter().enumerate() {
            for &q in d.observers(u) {
                seen_by[q.index()] |= 1 << i;
            }
        }
        let fields = match self.heuristic {
            Heuristic::Tunnel => Some(CoverFields::new(d, &self.targets, self.goal)),
            Heuristic::Blind => None,
        };
        let h = |n: NodeId, u: u64| -> C {
            match &fields {
                Some(f) => h_tunnel(f, n, u),
                None => h_blind(n, u),
            }
        };

        let full: u64 = if self.targets.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.targets.len())
        };
        let init_u = full & !seen_by[self.start.index()];

        let mut records: Vec<Record<C>> = Vec::new();
        let mut index: HashMap<(NodeId, u64), u32> = HashMap::new();
        let mut open = BinaryHeap::new();
        let mut expansions = 0u64;
        let mut generated = 1u64;

        let h0 = h(self.start, init_u);
        if !h0.is_finite() {
            return done(WrptResult::terminal(WrptOutcome::NoPath));
        }
        records.push(Record {
            node: self.start,
            uncovered: init_u,
            g: C::zero(),
            parent: u32::MAX,
        });
        index.insert((self.start, init_u), 0);
        open.push(OpenEntry {
            f: h0,
            g: C::zero(),
            node: self.start,
            uncovered: init_u,
            slot: 0,
        });

        while let Some(entry) = open.pop() {
            let rec = records[entry.slot as usize];
            if entry.g > rec.g {
                continue;
            }
            if rec.node == self.goal && rec.uncovered == 0 {
                let path = self.rebuild(&records, entry.slot);
                return TracedResult {
                    result: WrptResult {
                        outcome: WrptOutcome::Solved(path),
                        expansions,
                        generated,
                    },
                    expanded,
                };
            }
            expansions += 1;
            if expansions.is_multiple_of(BUDGET_CHECK_INTERVAL) && self.budget.expired() {
                return TracedResult {
                    result: WrptResult {
                        outcome: WrptOutcome::TimedOut,
                        expansions,
                        generated,
                    },
                    expanded,
                };
            }
            if self.trace {
                expanded.push(ExpandedState {
                    node: rec.node,
                    uncovered: bits(rec.uncovered).map(|i| self.targets[i]).collect(),
                    g: rec.g,
                    h: entry.f - entry.g,
                });
            }
            for &(next, cost) in d.successors(rec.node) {
                let u = rec.uncovered & !seen_by[next.index()];
                let g = rec.g + cost;
                let slot = match index.get(&(next, u)) {
                    Some(&slot) if records[slot as usize].g <= g => continue,
                    Some(&slot) => {
                        let r = &mut records[slot as usize];
                        r.g = g;
                        r.parent = entry.slot;
                        slot
                    }
                    None => {
                        let slot = records.len() as u32;
                        records.push(Record {
                            node: next,
                            uncovered: u,
                            g,
                            parent: entry.slot,
                        });
                        index.insert((next, u), slot);
                        slot
                    }
                };
                let hv = h(next, u);
                if !hv.is_finite() {
                    continue;
                }
                generated += 1;
                open.push(OpenEntry {
                    f: g + hv,
                    g,
                    node: next,
                    uncovered: u,
                    slot,
                });
            }
        }
        TracedResult {
            result: WrptResult {
                outcome: WrptOutcome::NoPath,
                expansions,
                generated,
            },
            expanded,
        }
    }

    fn rebuild(&self, records: &[Record<C>], mut slot: u32) -> Path<C> {
        let mut nodes = Vec::new();
        while slot != u32::MAX {
            let r = &records[slot as usize];
            nodes.push(r.node);
            slot = r.parent;
        }
        nodes.reverse();
        self.domain
            .path(nodes)
            .expect("search only follows domain edges")
    }
}

/// Minimum-cost `start -> goal` path covering every node of `targets`.
pub fn solve_wrpt<C: Scalar>(
    domain: &Domain<C>,
    start: NodeId,
    goal: NodeId,
    targets: &[NodeId],
    heuristic: Heuristic,
    budget: Budget,
) -> Result<WrptResult<C>, WrptError> {
    Ok(Wrpt::new(domain, start, goal, targets)?
        .heuristic(heuristic)
        .budget(budget)
        .solve())
}

/// Independent uniform-cost search over `⟨node, uncovered targets⟩`.
///
/// Uses sorted target lists instead of bit sets and no heuristic or
/// feasibility pre-check, so it shares no search code with [`Wrpt`].
/// Intended for small instances only.
pub fn oracle_wrpt<C: Scalar>(
    domain: &Domain<C>,
    start: NodeId,
    goal: NodeId,
    targets: &[NodeId],
) -> WrptResult<C> {
    let mut initial: Vec<NodeId> = targets
        .iter()
        .copied()
        .filter(|&u| !domain.sees(start, u))
        .collect();
    initial.sort_unstable();
    initial.dedup();
    oracle_search(domain, start, goal, initial)
}

/// Optimal remaining cost from an arbitrary search state `⟨node, uncovered⟩`.
/// `uncovered` is taken as-is (the caller has already removed `v(node)`).
pub fn oracle_cost_to_go<C: Scalar>(
    domain: &Domain<C>,
    node: NodeId,
    uncovered: &[NodeId],
    goal: NodeId,
) -> Option<C> {
    let mut u = uncovered.to_vec();
    u.sort_unstable();
    oracle_search(domain, node, goal, u).cost()
}

fn oracle_search<C: Scalar>(
    domain: &Domain<C>,
    start: NodeId,
    goal: NodeId,
    initial: Vec<NodeId>,
) -> WrptResult<C> {
    type Key = (NodeId, Vec<NodeId>);
    let mut best: HashMap<Key, C> = HashMap::new();
    let mut parent: HashMap<Key, Key> = HashMap::new();
    type Entry<C> = Reverse<(OrdCost<C>, NodeId, Vec<NodeId>)>;
    let mut heap: BinaryHeap<Entry<C>> = BinaryHeap::new();
    let mut expansions = 0;
    let mut generated = 1;

    best.insert((start, initial.clone()), C::zero());
    heap.push(Reverse((OrdCost(C::zero()), start, initial)));

    while let Some(Reverse((OrdCost(cost), node, uncovered))) = heap.pop() {
        let key = (node, uncovered);
        if best.get(&key).is_some_and(|&b| cost > b) {
            continue;
        }
        if key.0 == goal && key.1.is_empty() {
            let mut nodes = vec![key.0];
            let mut cur = key;
            while let Some(p) = parent.get(&cur) {
                nodes.push(p.0);
                cur = p.clone();
            }
            nodes.reverse();
            return WrptResult {
                outcome: WrptOutcome::Solved(domain.path(nodes).expect("edges followed")),
                expansions,
                generated,
            };
        }
        expansions += 1;
        for &(next, c) in domain.successors(key.0) {
            let rest: Vec<NodeId> = key
                .1
                .iter()
                .copied()
                .filter(|&u| !domain.sees(next, u))
                .collect();
            let nk = (next, rest);
            let nc = cost + c;
            if best.get(&nk).is_none_or(|&b| nc < b) {
                best.insert(nk.clone(), nc);
                parent.insert(nk.clone(), key.clone());
                generated += 1;
                heap.push(Reverse((OrdCost(nc), nk.0, nk.1)));
            }
        }
    }
    WrptResult {
        outcome: WrptOutcome::NoPath,
        expansions,
        generated,
    }
}

#[derive(Clone, Copy, PartialEq)]
struct OrdCost<C>(C);

impl<C: Scalar> Eq for OrdCost<C> {}

impl<C: Scalar> PartialOrd for OrdCost<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Scalar> Ord for OrdCost<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp(self.0, other.0)
    }
}
