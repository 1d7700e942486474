//! Path-planning domains with visibility constraints.
//!
//! A [`Domain`] is an immutable graph with edge costs, a visibility relation
//! and the set of transit candidates. Grid domains come from Moving AI maps
//! ([`build_domain`]); arbitrary graphs come from edge-list fixtures
//! ([`parse_fixture`]). Distance fields are computed lazily per source and
//! cached behind `OnceLock`, so a domain can be shared across threads.

mod fixture;
mod map;
mod path;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::scalar::{cmp, Scalar};

pub use fixture::{parse_fixture, Fixture, FixtureError};
pub use map::{parse_map, GridMap, MapParseError};
pub use path::{Horizon, JunctionMismatch, Path};

/// Index of a node. Grid nodes are numbered row-major over passable cells,
/// and every tie-break in the crate falls back to this index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DomainError {
    #[error("cell ({x}, {y}) is outside the map")]
    OutOfBounds { x: usize, y: usize },
    #[error("transit candidate ({x}, {y}) is on an obstacle")]
    TransitOnObstacle { x: usize, y: usize },
    #[error("duplicate transit candidate {0}")]
    DuplicateTransit(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("duplicate node {0:?}")]
    DuplicateNode(String),
    #[error("self-loop on node {0:?}")]
    SelfLoop(String),
    #[error("edge cost {cost} on {from} -> {to} is not a non-negative finite number")]
    BadCost { from: String, to: String, cost: f64 },
    #[error("nodes {0} -> {1} are not joined by an edge")]
    NotAnEdge(NodeId, NodeId),
    #[error("a path needs at least one node")]
    EmptyPath,
    #[error("domain has no nodes")]
    Empty,
}

/// Graph + visibility + transit candidates. Immutable after construction.
pub struct Domain<C> {
    out: Vec<Vec<(NodeId, C)>>,
    inc: Vec<Vec<(NodeId, C)>>,
    undirected: bool,
    unit_costs: bool,
    radius: u32,
    transit: Vec<NodeId>,
    vis: Vec<Vec<NodeId>>,
    vis_inv: Vec<Vec<NodeId>>,
    names: Vec<String>,
    coords: Vec<Option<(usize, usize)>>,
    by_name: HashMap<String, NodeId>,
    by_cell: HashMap<(usize, usize), NodeId>,
    extent: (usize, usize),
    map: Option<GridMap>,
    fingerprint: u64,
    from_cache: Vec<OnceLock<Box<[C]>>>,
    to_cache: Vec<OnceLock<Box<[C]>>>,
    reach_cache: Vec<OnceLock<Box<[C]>>>,
}

impl<C> fmt::Debug for Domain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Domain")
            .field("nodes", &self.out.len())
            .field("transit", &self.transit.len())
            .field("radius", &self.radius)
            .field("undirected", &self.undirected)
            .finish()
    }
}

/// 4-connected, unit-cost grid domain over the passable cells of `map`.
///
/// Visibility is the set of cells whose shortest free-cell walking distance
/// is at most `radius`, so walls block sight.
pub fn build_domain<C: Scalar>(
    map: &GridMap,
    transit: &[(usize, usize)],
    radius: u32,
    undirected: bool,
) -> Result<Domain<C>, DomainError> {
    let mut builder = DomainBuilder::new();
    builder.undirected(undirected).radius(radius);
    builder.unit_costs = true;
    for (x, y) in map.passable_cells() {
        builder.add_node(format!("{x}:{y}"), Some((x, y)))?;
    }
    let cells = builder.by_cell.clone();
    for (x, y) in map.passable_cells() {
        let here = cells[&(x, y)];
        // only right/down here; the builder mirrors undirected edges
        for (dx, dy) in [(1usize, 0usize), (0, 1)] {
            if let Some(&there) = cells.get(&(x + dx, y + dy)) {
                builder.add_edge_ids(here, there, C::one());
                if !undirected {
                    builder.add_edge_ids(there, here, C::one());
                }
            }
        }
    }
    for &(x, y) in transit {
        if x >= map.width() || y >= map.height() {
            return Err(DomainError::OutOfBounds { x, y });
        }
        let id = *cells
            .get(&(x, y))
            .ok_or(DomainError::TransitOnObstacle { x, y })?;
        builder.add_transit_id(id)?;
    }
    builder.map = Some(map.clone());
    builder.build()
}

/// Incremental construction of arbitrary (possibly directed) domains.
#[derive(Debug)]
pub struct DomainBuilder<C> {
    edges: Vec<(NodeId, NodeId, C)>,
    names: Vec<String>,
    coords: Vec<Option<(usize, usize)>>,
    by_name: HashMap<String, NodeId>,
    by_cell: HashMap<(usize, usize), NodeId>,
    transit: Vec<NodeId>,
    radius: u32,
    undirected: bool,
    unit_costs: bool,
    map: Option<GridMap>,
}

impl<C: Scalar> Default for DomainBuilder<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Scalar> DomainBuilder<C> {
    pub fn new() -> Self {
        DomainBuilder {
            edges: Vec::new(),
            names: Vec::new(),
            coords: Vec::new(),
            by_name: HashMap::new(),
            by_cell: HashMap::new(),
            transit: Vec::new(),
            radius: 0,
            undirected: true,
            unit_costs: false,
            map: None,
        }
    }

    pub fn undirected(&mut self, flag: bool) -> &mut Self {
        self.undirected = flag;
        self
    }

    pub fn radius(&mut self, r: u32) -> &mut Self {
        self.radius = r;
        self
    }

    pub fn add_node(
        &mut self,
        name: impl Into<String>,
        cell: Option<(usize, usize)>,
    ) -> Result<NodeId, DomainError> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(DomainError::DuplicateNode(name));
        }
        let id = NodeId(self.names.len() as u32);
        if let Some(c) = cell {
            self.by_cell.insert(c, id);
        }
        self.by_name.insert(name.clone(), id);
        self.names.push(name);
        self.coords.push(cell);
        Ok(id)
    }

    pub fn node(&self, name: &str) -> Result<NodeId, DomainError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| DomainError::UnknownNode(name.to_string()))
    }

    pub fn add_edge(&mut self, from: &str, to: &str, cost: C) -> Result<(), DomainError> {
        let (a, b) = (self.node(from)?, self.node(to)?);
        if a == b {
            return Err(DomainError::SelfLoop(from.to_string()));
        }
        if !(cost >= C::zero() && cost.is_finite()) {
            return Err(DomainError::BadCost {
                from: from.to_string(),
                to: to.to_string(),
                cost: cost.to_f64_lossy(),
            });
        }
        self.add_edge_ids(a, b, cost);
        Ok(())
    }

    fn add_edge_ids(&mut self, a: NodeId, b: NodeId, cost: C) {
        self.edges.push((a, b, cost));
    }

    pub fn add_transit(&mut self, name: &str) -> Result<NodeId, DomainError> {
        let id = self.node(name)?;
        self.add_transit_id(id)
    }

    fn add_transit_id(&mut self, id: NodeId) -> Result<NodeId, DomainError> {
        if self.transit.contains(&id) {
            return Err(DomainError::DuplicateTransit(
                self.names[id.index()].clone(),
            ));
        }
        self.transit.push(id);
        Ok(id)
    }

    pub fn build(self) -> Result<Domain<C>, DomainError> {
        let n = self.names.len();
        if n == 0 {
            return Err(DomainError::Empty);
        }
        let mut out: Vec<Vec<(NodeId, C)>> = vec![Vec::new(); n];
        let mut inc: Vec<Vec<(NodeId, C)>> = vec![Vec::new(); n];
        let mut push = |a: NodeId, b: NodeId, c: C| {
            // parallel edges collapse to the cheapest
            match out[a.index()].iter_mut().find(|(to, _)| *to == b) {
                Some(e) => e.1 = e.1.min(c),
                None => out[a.index()].push((b, c)),
            }
            match inc[b.index()].iter_mut().find(|(from, _)| *from == a) {
                Some(e) => e.1 = e.1.min(c),
                None => inc[b.index()].push((a, c)),
            }
        };
        for &(a, b, c) in &self.edges {
            push(a, b, c);
            if self.undirected {
                push(b, a, c);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_by_key(|&(id, _)| id);
        }
        let unit_costs = self.unit_costs || self.edges.iter().all(|&(_, _, c)| c == C::one());

        let extent = self
            .coords
            .iter()
            .flatten()
            .fold((0, 0), |(w, h), &(x, y)| (w.max(x + 1), h.max(y + 1)));
        let extent = match &self.map {
            Some(m) => (m.width(), m.height()),
            None => extent,
        };

        let mut domain = Domain {
            out,
            inc,
            undirected: self.undirected,
            unit_costs,
            radius: self.radius,
            transit: self.transit,
            vis: Vec::new(),
            vis_inv: Vec::new(),
            names: self.names,
            coords: self.coords,
            by_name: self.by_name,
            by_cell: self.by_cell,
            extent,
            map: self.map,
            fingerprint: 0,
            from_cache: (0..n).map(|_| OnceLock::new()).collect(),
            to_cache: (0..n).map(|_| OnceLock::new()).collect(),
            reach_cache: (0..n).map(|_| OnceLock::new()).collect(),
        };
        domain.vis = (0..n)
            .map(|i| domain.within_radius(NodeId(i as u32)))
            .collect();
        let mut vis_inv = vec![Vec::new(); n];
        for (i, seen) in domain.vis.iter().enumerate() {
            for &q in seen {
                vis_inv[q.index()].push(NodeId(i as u32));
            }
        }
        domain.vis_inv = vis_inv;
        domain.fingerprint = domain.compute_fingerprint();
        Ok(domain)
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Queued<C> {
    cost: C,
    node: NodeId,
}

impl<C: Scalar> Eq for Queued<C> {}

impl<C: Scalar> Ord for Queued<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        cmp(self.cost, other.cost).then(self.node.cmp(&other.node))
    }
}

impl<C: Scalar> PartialOrd for Queued<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Scalar> Domain<C> {
    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.out.len() as u32).map(NodeId)
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn transit(&self) -> &[NodeId] {
        &self.transit
    }

    /// Stable structural hash, used to seed planner randomness.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn grid_map(&self) -> Option<&GridMap> {
        self.map.as_ref()
    }

    /// Width and height of the cell box that holds every located node.
    pub fn extent(&self) -> (usize, usize) {
        self.extent
    }

    pub fn label(&self, n: NodeId) -> &str {
        &self.names[n.index()]
    }

    pub fn by_label(&self, label: &str) -> Option<NodeId> {
        self.by_name.get(label).copied()
    }

    pub fn cell_of(&self, n: NodeId) -> Option<(usize, usize)> {
        self.coords[n.index()]
    }

    pub fn node_at(&self, x: usize, y: usize) -> Option<NodeId> {
        self.by_cell.get(&(x, y)).copied()
    }

    pub fn successors(&self, n: NodeId) -> &[(NodeId, C)] {
        &self.out[n.index()]
    }

    pub fn predecessors(&self, n: NodeId) -> &[(NodeId, C)] {
        &self.inc[n.index()]
    }

    pub fn edge_cost(&self, a: NodeId, b: NodeId) -> Option<C> {
        self.out[a.index()]
            .binary_search_by_key(&b, |&(to, _)| to)
            .ok()
            .map(|i| self.out[a.index()][i].1)
    }

    /// `v(n)`: nodes visible from `n`, sorted.
    pub fn visible(&self, n: NodeId) -> &[NodeId] {
        &self.vis[n.index()]
    }

    /// `v⁻¹(u)`: nodes from which `u` is visible, sorted.
    pub fn observers(&self, u: NodeId) -> &[NodeId] {
        &self.vis_inv[u.index()]
    }

    pub fn sees(&self, n: NodeId, u: NodeId) -> bool {
        self.vis[n.index()].binary_search(&u).is_ok()
    }

    /// Validates a node sequence against the edge set.
    pub fn path(&self, nodes: Vec<NodeId>) -> Result<Path<C>, DomainError> {
        if nodes.is_empty() {
            return Err(DomainError::EmptyPath);
        }
        let costs = nodes
            .windows(2)
            .map(|w| {
                self.edge_cost(w[0], w[1])
                    .ok_or(DomainError::NotAnEdge(w[0], w[1]))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Path::from_steps(nodes, costs))
    }

    /// Shortest-path cost; zero for `a == b`, infinite when unreachable.
    pub fn dist(&self, a: NodeId, b: NodeId) -> C {
        self.dist_from(a)[b.index()]
    }

    /// Like [`Domain::dist`] but infinite on the diagonal. Only meaningful
    /// for the pairwise spread of transit candidates.
    pub fn dispersion(&self, a: NodeId, b: NodeId) -> C {
        if a == b {
            C::infinity()
        } else {
            self.dist(a, b)
        }
    }

    /// Smallest dispersion over ordered pairs of distinct members
    /// (infinite for fewer than two members).
    pub fn min_dispersion(&self, members: &[NodeId]) -> C {
        let mut best = C::infinity();
        for &a in members {
            for &b in members {
                if a != b {
                    best = best.min(self.dist(a, b));
                }
            }
        }
        best
    }

    pub fn dist_from(&self, source: NodeId) -> &[C] {
        self.from_cache[source.index()].get_or_init(|| self.field(&[source], false))
    }

    /// `dist(n, target)` for every `n`.
    pub fn dist_to(&self, target: NodeId) -> &[C] {
        if self.undirected {
            return self.dist_from(target);
        }
        self.to_cache[target.index()].get_or_init(|| self.field(&[target], true))
    }

    /// `min_{q ∈ v⁻¹(u)} dist(n, q)` for every `n`: cost to get `u` in sight.
    pub fn reach_field(&self, u: NodeId) -> &[C] {
        self.reach_cache[u.index()].get_or_init(|| {
            let reverse = !self.undirected;
            self.field(self.observers(u), reverse)
        })
    }

    /// `min_{q ∈ v⁻¹(u)} dist(q, g)`: cheapest exit to `g` once `u` is covered.
    pub fn exit_cost(&self, u: NodeId, g: NodeId) -> C {
        let to_goal = self.dist_to(g);
        self.observers(u)
            .iter()
            .map(|q| to_goal[q.index()])
            .fold(C::infinity(), C::min)
    }

    /// Whether some path from `s` to `g` can cover `t`.
    pub fn coverable(&self, s: NodeId, g: NodeId, t: NodeId) -> bool {
        let from_s = self.dist_from(s);
        let to_g = self.dist_to(g);
        self.observers(t)
            .iter()
            .any(|q| from_s[q.index()].is_finite() && to_g[q.index()].is_finite())
    }

    pub fn covers(&self, path: &Path<C>, n: NodeId) -> bool {
        path.nodes().iter().any(|&p| self.sees(p, n))
    }

    /// A minimum-cost path, preferring lower-index predecessors on ties.
    pub fn shortest_path(&self, a: NodeId, b: NodeId) -> Option<Path<C>> {
        let d = self.dist_from(a);
        if !d[b.index()].is_finite() {
            return None;
        }
        let mut rev = vec![b];
        let mut cur = b;
        while cur != a {
            let here = d[cur.index()];
            let (prev, _) =
                self.predecessors(cur).iter().copied().find(|&(p, c)| {
                    d[p.index()].is_finite() && d[p.index()] + c == here && p != cur
                })?;
            rev.push(prev);
            cur = prev;
        }
        rev.reverse();
        Some(self.path(rev).expect("predecessor chain follows edges"))
    }

    /// Single/multi-source distance field, forward or along reversed edges.
    fn field(&self, sources: &[NodeId], reverse: bool) -> Box<[C]> {
        let n = self.node_count();
        let mut dist = vec![C::infinity(); n];
        let adj = if reverse { &self.inc } else { &self.out };
        if self.unit_costs {
            let mut queue = VecDeque::new();
            for &s in sources {
                if dist[s.index()] != C::zero() {
                    dist[s.index()] = C::zero();
                    queue.push_back(s);
                }
            }
            while let Some(u) = queue.pop_front() {
                let next = dist[u.index()] + C::one();
                for &(v, _) in &adj[u.index()] {
                    if dist[v.index()] > next {
                        dist[v.index()] = next;
                        queue.push_back(v);
                    }
                }
            }
        } else {
            let mut heap = BinaryHeap::new();
            for &s in sources {
                dist[s.index()] = C::zero();
                heap.push(Reverse(Queued {
                    cost: C::zero(),
                    node: s,
                }));
            }
            while let Some(Reverse(Queued { cost, node })) = heap.pop() {
                if cost > dist[node.index()] {
                    continue;
                }
                for &(v, c) in &adj[node.index()] {
                    let next = cost + c;
                    if next < dist[v.index()] {
                        dist[v.index()] = next;
                        heap.push(Reverse(Queued {
                            cost: next,
                            node: v,
                        }));
                    }
                }
            }
        }
        dist.into_boxed_slice()
    }

    /// Nodes within `radius` of `n`, explored sparsely.
    fn within_radius(&self, n: NodeId) -> Vec<NodeId> {
        if self.radius == 0 {
            return vec![n];
        }
        let limit = C::from_usize(self.radius as usize);
        let mut best: HashMap<NodeId, C> = HashMap::new();
        best.insert(n, C::zero());
        let mut heap = BinaryHeap::new();
        heap.push(Reverse(Queued {
            cost: C::zero(),
            node: n,
        }));
        while let Some(Reverse(Queued { cost, node })) = heap.pop() {
            if cost > best[&node] {
                continue;
            }
            for &(v, c) in &self.out[node.index()] {
                let next = cost + c;
                if next <= limit && best.get(&v).is_none_or(|&d| next < d) {
                    best.insert(v, next);
                    heap.push(Reverse(Queued {
                        cost: next,
                        node: v,
                    }));
                }
            }
        }
        let mut seen: Vec<NodeId> = best.into_keys().collect();
        seen.sort_unstable();
        seen
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = crate::seed::Mixer::new(0x7472_616e_7369_7400);
        h.push(self.node_count() as u64);
        h.push(self.undirected as u64);
        h.push(self.radius as u64);
        for (a, list) in self.out.iter().enumerate() {
            for &(b, c) in list {
                h.push(a as u64);
                h.push(b.0 as u64);
                h.push(c.to_f64_lossy().to_bits());
            }
        }
        for t in &self.transit {
            h.push(t.0 as u64);
        }
        h.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corridor(len: usize, r: u32) -> Domain<f64> {
        let map = GridMap::from_rows(&[".".repeat(len)]).unwrap();
        build_domain(&map, &[], r, true).unwrap()
    }

    fn ids(v: &[u32]) -> Vec<NodeId> {
        v.iter().map(|&i| NodeId(i)).collect()
    }

    #[test]
    fn radius_zero_is_identity() {
        let d = corridor(5, 0);
        for n in d.nodes() {
            assert_eq!(d.visible(n), &[n]);
            assert_eq!(d.observers(n), &[n]);
        }
    }

    #[test]
    fn corridor_radius_two() {
        let d = corridor(5, 2);
        assert_eq!(d.visible(NodeId(0)), ids(&[0, 1, 2]).as_slice());
        assert_eq!(d.visible(NodeId(2)), ids(&[0, 1, 2, 3, 4]).as_slice());
    }

    #[test]
    fn walls_block_sight() {
        let map = GridMap::from_rows(&["...", ".@.", "..."]).unwrap();
        let d: Domain<f64> = build_domain(&map, &[], 2, true).unwrap();
        let nw = d.node_at(0, 0).unwrap();
        let seen: Vec<_> = d
            .visible(nw)
            .iter()
            .map(|&n| d.cell_of(n).unwrap())
            .collect();
        // (2,1), (1,2) are 3 steps away around the pillar, (2,2) is 4
        assert_eq!(seen, vec![(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)]);
    }

    #[test]
    fn transit_validation() {
        let map = GridMap::from_rows(&[".@."]).unwrap();
        assert_eq!(
            build_domain::<f64>(&map, &[(1, 0)], 0, true).unwrap_err(),
            DomainError::TransitOnObstacle { x: 1, y: 0 }
        );
        assert!(matches!(
            build_domain::<f64>(&map, &[(0, 0), (0, 0)], 0, true),
            Err(DomainError::DuplicateTransit(_))
        ));
        assert!(matches!(
            build_domain::<f64>(&map, &[(5, 0)], 0, true),
            Err(DomainError::OutOfBounds { .. })
        ));
    }

    #[test]
    fn distances() {
        let map = GridMap::from_rows(&["..@..", "..@.."]).unwrap();
        let d: Domain<f64> = build_domain(&map, &[], 0, true).unwrap();
        let a = d.node_at(0, 0).unwrap();
        let b = d.node_at(1, 0).unwrap();
        let far = d.node_at(4, 0).unwrap();
        assert_eq!(d.dist(a, b), 1.0);
        assert_eq!(d.dist(a, a), 0.0);
        assert!(d.dist(a, far).is_infinite());
        assert!(d.dispersion(a, a).is_infinite());
        assert_eq!(d.dispersion(a, b), 1.0);
        assert!(d.dispersion(a, far).is_infinite());
    }

    #[test]
    fn coverage_and_coverable() {
        let d = corridor(5, 1);
        let p = d.path(ids(&[0, 1, 2])).unwrap();
        assert!(d.covers(&p, NodeId(3)));
        assert!(!d.covers(&p, NodeId(4)));

        // t walled off entirely with r=0, but visible across the gap with r=1?
        // No: visibility follows free cells, so a fully enclosed cell stays hidden.
        let map = GridMap::from_rows(&["....", "@@@.", ".@@."]).unwrap();
        let d0: Domain<f64> = build_domain(&map, &[], 0, true).unwrap();
        let s = d0.node_at(0, 0).unwrap();
        let g = d0.node_at(3, 2).unwrap();
        let hidden = d0.node_at(0, 2).unwrap();
        let on_route = d0.node_at(3, 1).unwrap();
        assert!(d0.coverable(s, g, on_route));
        assert!(!d0.coverable(s, g, hidden));
    }

    #[test]
    fn one_way_pocket_needs_radius() {
        // `t` can be entered from `a` but never left: only sight can cover it
        let text = "directed\nradius 1\nnode s\nnode a\nnode g\nnode t\n\
                    edge s a 1\nedge a g 1\nedge a t 1\ntransit t\nstart s\ngoal g\n";
        let f: Fixture<f64> = parse_fixture(text).unwrap();
        let t = f.domain.by_label("t").unwrap();
        assert!(f.domain.coverable(f.start, f.goal, t));

        let f0: Fixture<f64> = parse_fixture(&text.replace("radius 1", "radius 0")).unwrap();
        assert!(!f0.domain.coverable(f0.start, f0.goal, t));
    }

    #[test]
    fn shortest_path_prefers_low_index() {
        let map = GridMap::from_rows(&["..", ".."]).unwrap();
        let d: Domain<f64> = build_domain(&map, &[], 0, true).unwrap();
        let p = d.shortest_path(NodeId(0), NodeId(3)).unwrap();
        assert_eq!(p.nodes(), ids(&[0, 1, 3]).as_slice());
        assert_eq!(p.cost(), 2.0);
    }

    #[test]
    fn path_validation() {
        let d = corridor(3, 0);
        assert_eq!(
            d.path(ids(&[0, 2])).unwrap_err(),
            DomainError::NotAnEdge(NodeId(0), NodeId(2))
        );
        assert_eq!(d.path(vec![]).unwrap_err(), DomainError::EmptyPath);
    }

    #[test]
    fn works_in_single_precision() {
        let map = GridMap::from_rows(&["...", "..."]).unwrap();
        let d: Domain<f32> = build_domain(&map, &[], 1, true).unwrap();
        assert_eq!(d.dist(NodeId(0), NodeId(5)), 3.0f32);
    }
}
