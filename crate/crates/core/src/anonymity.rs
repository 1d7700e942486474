//! Definition-level anonymity checks and aggregate metrics.
//!
//! A planner output for `t` is `(k, ℓ, m)`-anonymized when at least `k`
//! candidates, pairwise at least `ℓ` apart, receive outputs whose first `m`
//! nodes coincide with it. The verifier re-runs the planner for every
//! candidate and decides that by exact search.

use thiserror::Error;

use crate::domain::{Domain, Horizon, NodeId};
use crate::planners::PlanResult;
use crate::scalar::Scalar;
use crate::wrpt::Wrpt;

/// Exact subset search handles at most this many candidates.
pub const MAX_CANDIDATES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct AnonymityReport<C> {
    pub t: NodeId,
    /// Candidates whose outputs share the first `m` nodes with `t`'s.
    pub equal_prefix: Vec<NodeId>,
    /// Largest spread-respecting subset of `equal_prefix` found, capped at `k`.
    pub best_k: usize,
    /// Minimum pairwise dispersion of that subset (infinite below two members).
    pub achieved_ell: C,
    /// The subset itself.
    pub witness: Vec<NodeId>,
    pub anonymized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AnonymityError {
    #[error("anonymizability is undecided on directed domains")]
    Directed,
}

/// Planner outputs for every transit candidate, gathered once.
#[derive(Debug, Clone)]
pub struct Outputs<C> {
    pub results: Vec<(NodeId, PlanResult<C>)>,
}

impl<C: Scalar> Outputs<C> {
    pub fn collect<F>(domain: &Domain<C>, planner: F) -> Self
    where
        F: Fn(NodeId) -> PlanResult<C>,
    {
        let mut cands = domain.transit().to_vec();
        cands.sort_unstable();
        Outputs {
            results: cands.into_iter().map(|t| (t, planner(t))).collect(),
        }
    }

    pub fn get(&self, t: NodeId) -> Option<&PlanResult<C>> {
        self.results.iter().find(|(n, _)| *n == t).map(|(_, r)| r)
    }

    /// Applies `f` to every non-failed path, keeping failures as they are.
    pub fn map_paths<F>(&self, f: F) -> Self
    where
        F: Fn(&crate::domain::Path<C>) -> crate::domain::Path<C>,
    {
        Outputs {
            results: self
                .results
                .iter()
                .map(|(t, r)| {
                    let r = match r {
                        PlanResult::Planned {
                            path,
                            group,
                            shared_prefix,
                        } => PlanResult::Planned {
                            path: f(path),
                            group: *group,
                            shared_prefix: *shared_prefix,
                        },
                        PlanResult::Failure => PlanResult::Failure,
                    };
                    (*t, r)
                })
                .collect(),
        }
    }
}

/// Verdict for `t` on already collected outputs.
pub fn verify_outputs<C: Scalar>(
    domain: &Domain<C>,
    outputs: &Outputs<C>,
    t: NodeId,
    k: usize,
    ell: C,
    m: Horizon,
) -> AnonymityReport<C> {
    let mine = match outputs.get(t).and_then(PlanResult::path) {
        Some(p) => p.observed(m),
        None => {
            return AnonymityReport {
                t,
                equal_prefix: Vec::new(),
                best_k: 0,
                achieved_ell: C::infinity(),
                witness: Vec::new(),
                anonymized: false,
            }
        }
    };
    let equal_prefix: Vec<NodeId> = outputs
        .results
        .iter()
        .filter(|(_, r)| r.path().is_some_and(|p| p.observed(m) == mine))
        .map(|(n, _)| *n)
        .collect();
    let witness = spread_subset(domain, &equal_prefix, k, ell);
    AnonymityReport {
        t,
        best_k: witness.len(),
        achieved_ell: domain.min_dispersion(&witness),
        anonymized: witness.len() >= k,
        witness,
        equal_prefix,
    }
}

/// Runs `planner` for every candidate and checks the output for `t`.
pub fn verify_anonymized_path<C, F>(
    domain: &Domain<C>,
    planner: F,
    t: NodeId,
    k: usize,
    ell: C,
    m: Horizon,
) -> AnonymityReport<C>
where
    C: Scalar,
    F: Fn(NodeId) -> PlanResult<C>,
{
    let outputs = Outputs::collect(domain, planner);
    verify_outputs(domain, &outputs, t, k, ell, m)
}

/// Largest subset of `pool` whose ordered pairs all have dispersion at least
/// `ell`, stopping as soon as `k` members are found. Exact: a clique search
/// on the graph of sufficiently distant pairs.
///
/// # Panics
/// When `pool` has more than [`MAX_CANDIDATES`] entries.
pub fn spread_subset<C: Scalar>(
    domain: &Domain<C>,
    pool: &[NodeId],
    k: usize,
    ell: C,
) -> Vec<NodeId> {
    assert!(
        pool.len() <= MAX_CANDIDATES,
        "subset search limited to {MAX_CANDIDATES} nodes"
    );
    let n = pool.len();
    let far: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    j != i
                        && domain.dispersion(pool[i], pool[j]) >= ell
                        && domain.dispersion(pool[j], pool[i]) >= ell
                })
                .fold(0u64, |acc, j| acc | (1 << j))
        })
        .collect();

    struct Search<'a> {
        far: &'a [u64],
        goal: usize,
        best: u64,
    }
    impl Search<'_> {
        fn grow(&mut self, chosen: u64, open: u64) {
            let size = chosen.count_ones() as usize;
            if size > self.best.count_ones() as usize {
                self.best = chosen;
            }
            let cap = self.best.count_ones() as usize;
            if cap >= self.goal || size + open.count_ones() as usize <= cap {
                return;
            }
            let mut rest = open;
            while rest != 0 {
                if chosen.count_ones() as usize + rest.count_ones() as usize
                    <= self.best.count_ones() as usize
                {
                    return;
                }
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.grow(chosen | (1 << v), rest & self.far[v]);
                if self.best.count_ones() as usize >= self.goal {
                    return;
                }
            }
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search {
        far: &far,
        goal: k.max(1),
        best: 0,
    };
    search.grow(0, all);
    (0..n)
        .filter(|&i| search.best & (1 << i) != 0)
        .map(|i| pool[i])
        .collect()
}

/// Whether some planner could anonymize `t` at `(k, ℓ)`: `t` is coverable
/// and at least `k` coverable candidates are pairwise `ℓ` apart.
pub fn is_anonymizable_tuple<C: Scalar>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    t: NodeId,
    k: usize,
    ell: C,
) -> Result<bool, AnonymityError> {
    if !domain.is_undirected() {
        return Err(AnonymityError::Directed);
    }
    if !domain.coverable(s, g, t) {
        return Ok(false);
    }
    let coverable = coverable_candidates(domain, s, g);
    Ok(spread_subset(domain, &coverable, k, ell).len() >= k)
}

pub fn coverable_candidates<C: Scalar>(domain: &Domain<C>, s: NodeId, g: NodeId) -> Vec<NodeId> {
    let mut c: Vec<NodeId> = domain
        .transit()
        .iter()
        .copied()
        .filter(|&t| domain.coverable(s, g, t))
        .collect();
    c.sort_unstable();
    c
}

/// Cost of the cheapest `s -> g` path covering `t` alone.
pub fn optimal_cost<C: Scalar>(domain: &Domain<C>, s: NodeId, g: NodeId, t: NodeId) -> Option<C> {
    Wrpt::new(domain, s, g, &[t]).ok()?.solve().cost()
}

/// Aggregate anonymity metrics for one planner on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow<C> {
    /// `anonymized / coverable`; `None` without coverable candidates.
    pub apr: Option<C>,
    /// Mean relative overhead over anonymized candidates; `None` if none.
    pub mac: Option<C>,
    pub coverable: usize,
    pub anonymized: usize,
    /// `None` on directed domains.
    pub anonymizable: Option<usize>,
    /// `anonymized / anonymizable`; 1 when nothing is anonymizable.
    pub delta: Option<C>,
    /// Anonymized candidates left out of `mac` by the zero-cost guard.
    pub mac_excluded: usize,
    /// `δ` was set by the empty-denominator convention.
    pub delta_vacuous: bool,
}

/// APR, MAC and δ from outputs gathered once.
#[allow(clippy::too_many_arguments)]
pub fn metrics<C: Scalar>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    outputs: &Outputs<C>,
    k: usize,
    ell: C,
    m: Horizon,
) -> MetricsRow<C> {
    let coverable = coverable_candidates(domain, s, g);
    let mut anonymized = Vec::new();
    for &t in &coverable {
        if verify_outputs(domain, outputs, t, k, ell, m).anonymized {
            anonymized.push(t);
        }
    }

    let mut sum = C::zero();
    let mut counted = 0usize;
    let mut excluded = 0usize;
    for &t in &anonymized {
        let Some(cost) = outputs.get(t).and_then(PlanResult::path).map(|p| p.cost()) else {
            continue;
        };
        let Some(best) = optimal_cost(domain, s, g, t) else {
            excluded += 1;
            continue;
        };
        if best == C::zero() {
            if cost == C::zero() {
                counted += 1;
            } else {
                excluded += 1;
            }
        } else {
            sum = sum + (cost - best) / best;
            counted += 1;
        }
    }

    let ratio = |a: usize, b: usize| C::from_usize(a) / C::from_usize(b);
    let apr = (!coverable.is_empty()).then(|| ratio(anonymized.len(), coverable.len()));
    let mac = (counted > 0).then(|| sum / C::from_usize(counted));

    let (anonymizable, delta, delta_vacuous) = if domain.is_undirected() {
        let pool = spread_subset(domain, &coverable, k, ell).len() >= k;
        let count = if pool { coverable.len() } else { 0 };
        if count == 0 {
            (Some(0), Some(C::one()), true)
        } else {
            (Some(count), Some(ratio(anonymized.len(), count)), false)
        }
    } else {
        (None, None, false)
    };

    MetricsRow {
        apr,
        mac,
        coverable: coverable.len(),
        anonymized: anonymized.len(),
        anonymizable,
        delta,
        mac_excluded: excluded,
        delta_vacuous,
    }
}

pub fn apr<C, F>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    planner: F,
    k: usize,
    ell: C,
    m: Horizon,
) -> Option<C>
where
    C: Scalar,
    F: Fn(NodeId) -> PlanResult<C>,
{
    metrics(domain, s, g, &Outputs::collect(domain, planner), k, ell, m).apr
}

pub fn mac<C, F>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    planner: F,
    k: usize,
    ell: C,
    m: Horizon,
) -> Option<C>
where
    C: Scalar,
    F: Fn(NodeId) -> PlanResult<C>,
{
    metrics(domain, s, g, &Outputs::collect(domain, planner), k, ell, m).mac
}

pub fn local_anonymity_delta<C, F>(
    domain: &Domain<C>,
    s: NodeId,
    g: NodeId,
    planner: F,
    k: usize,
    ell: C,
    m: Horizon,
) -> Result<C, AnonymityError>
where
    C: Scalar,
    F: Fn(NodeId) -> PlanResult<C>,
{
    metrics(domain, s, g, &Outputs::collect(domain, planner), k, ell, m)
        .delta
        .ok_or(AnonymityError::Directed)
}
