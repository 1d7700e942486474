use std::fmt;

use super::NodeId;
use crate::Scalar;

/// How many leading nodes of a path an observer gets to see.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Horizon {
    Steps(usize),
    /// The whole path.
    Unbounded,
}

impl Horizon {
    pub fn is_finite(self) -> bool {
        matches!(self, Horizon::Steps(_))
    }

    pub fn steps(self) -> Option<usize> {
        match self {
            Horizon::Steps(m) => Some(m),
            Horizon::Unbounded => None,
        }
    }
}

impl fmt::Display for Horizon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Horizon::Steps(m) => write!(f, "{m}"),
            Horizon::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("cannot concatenate: path ends at {left} but next path starts at {right}")]
pub struct JunctionMismatch {
    pub left: NodeId,
    pub right: NodeId,
}

/// A non-empty node sequence together with its accumulated cost.
///
/// `cumulative[i]` is the cost of reaching `nodes[i]`, so prefixes keep
/// exact costs without consulting the domain again.
#[derive(Clone, PartialEq)]
pub struct Path<C> {
    nodes: Vec<NodeId>,
    cumulative: Vec<C>,
}

impl<C: Scalar> Path<C> {
    /// The zero-length path sitting at `node`.
    pub fn single(node: NodeId) -> Self {
        Path {
            nodes: vec![node],
            cumulative: vec![C::zero()],
        }
    }

    /// Assembles a path from nodes and per-step edge costs. Edge validity is
    /// the caller's responsibility; see [`Domain::path`](super::Domain::path).
    pub(crate) fn from_steps(nodes: Vec<NodeId>, step_costs: impl IntoIterator<Item = C>) -> Self {
        let mut cumulative = Vec::with_capacity(nodes.len());
        cumulative.push(C::zero());
        let mut acc = C::zero();
        for c in step_costs {
            acc = acc + c;
            cumulative.push(acc);
        }
        debug_assert_eq!(cumulative.len(), nodes.len());
        Path { nodes, cumulative }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cost(&self) -> C {
        *self.cumulative.last().expect("paths are non-empty")
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().expect("paths are non-empty")
    }

    /// First `m` nodes; the whole path when `m >= len`. `m = 0` is clamped to 1.
    pub fn prefix(&self, m: usize) -> Path<C> {
        let m = m.clamp(1, self.nodes.len());
        Path {
            nodes: self.nodes[..m].to_vec(),
            cumulative: self.cumulative[..m].to_vec(),
        }
    }

    /// Node slice of [`Path::prefix`] under an observation horizon.
    pub fn observed(&self, horizon: Horizon) -> &[NodeId] {
        match horizon {
            Horizon::Unbounded => &self.nodes,
            Horizon::Steps(m) => &self.nodes[..m.clamp(1, self.nodes.len())],
        }
    }

    /// `self ∘ other`: the junction node appears once and costs add.
    pub fn concat(&self, other: &Path<C>) -> Result<Path<C>, JunctionMismatch> {
        if self.last() != other.first() {
            return Err(JunctionMismatch {
                left: self.last(),
                right: other.first(),
            });
        }
        let base = self.cost();
        let mut nodes = self.nodes.clone();
        let mut cumulative = self.cumulative.clone();
        nodes.extend_from_slice(&other.nodes[1..]);
        cumulative.extend(other.cumulative[1..].iter().map(|&c| base + c));
        Ok(Path { nodes, cumulative })
    }
}

impl<C: fmt::Debug> fmt::Debug for Path<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Path(cost={:?}, [",
            self.cumulative[self.cumulative.len() - 1]
        )?;
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", n.0)?;
        }
        f.write_str("])")
    }
}
