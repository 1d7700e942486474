//! Edge-list fixture graphs.
//!
//! ```text
//! directed            # or `undirected` (the default)
//! radius 0
//! node s 0 1          # name, optional cell coordinates
//! node t1
//! edge s t1 1         # from, to, cost
//! transit t1
//! start s
//! goal g
//! ```

use thiserror::Error;

use super::{Domain, DomainBuilder, DomainError, NodeId};
use crate::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum FixtureError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Domain {
        line: usize,
        #[source]
        source: DomainError,
    },
    #[error("fixture declares no `{0}`")]
    Missing(&'static str),
}

/// A domain together with the start and goal it was declared with.
#[derive(Debug)]
pub struct Fixture<C> {
    pub domain: Domain<C>,
    pub start: NodeId,
    pub goal: NodeId,
}

pub fn parse_fixture<C: Scalar>(text: &str) -> Result<Fixture<C>, FixtureError> {
    let mut builder = DomainBuilder::<C>::new();
    let mut start = None;
    let mut goal = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: &str| FixtureError::Syntax {
            line,
            message: message.to_string(),
        };
        let dom = |source| FixtureError::Domain { line, source };
        match words.as_slice() {
            ["directed"] => {
                builder.undirected(false);
            }
            ["undirected"] => {
                builder.undirected(true);
            }
            ["radius", r] => {
                let r = r
                    .parse()
                    .map_err(|_| syntax("radius must be a non-negative integer"))?;
                builder.radius(r);
            }
            ["node", name] => {
                builder.add_node(*name, None).map_err(dom)?;
            }
            ["node", name, x, y] => {
                let x = x.parse().map_err(|_| syntax("bad x coordinate"))?;
                let y = y.parse().map_err(|_| syntax("bad y coordinate"))?;
                builder.add_node(*name, Some((x, y))).map_err(dom)?;
            }
            ["edge", from, to, cost] => {
                let cost: f64 = cost.parse().map_err(|_| syntax("bad edge cost"))?;
                builder.add_edge(from, to, C::from_f64(cost)).map_err(dom)?;
            }
            ["transit", name] => {
                builder.add_transit(name).map_err(dom)?;
            }
            ["start", name] => start = Some(builder.node(name).map_err(dom)?),
            ["goal", name] => goal = Some(builder.node(name).map_err(dom)?),
            _ => return Err(syntax(&format!("unrecognised declaration {content:?}"))),
        }
    }
    let start = start.ok_or(FixtureError::Missing("start"))?;
    let goal = goal.ok_or(FixtureError::Missing("goal"))?;
    let domain = builder
        .build()
        .map_err(|source| FixtureError::Domain { line: 0, source })?;
    Ok(Fixture {
        domain,
        start,
        goal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_fixture::<f64>("node a\nedge a b 1\n").unwrap_err();
        assert_eq!(
            err,
            FixtureError::Domain {
                line: 2,
                source: DomainError::UnknownNode("b".into())
            }
        );
        assert!(matches!(
            parse_fixture::<f64>("node a\nfoo\n"),
            Err(FixtureError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_fixture::<f64>("node a\nedge a a 1\n"),
            Err(FixtureError::Domain {
                source: DomainError::SelfLoop(_),
                ..
            })
        ));
        assert_eq!(
            parse_fixture::<f64>("node a\nstart a\n").unwrap_err(),
            FixtureError::Missing("goal")
        );
    }

    #[test]
    fn undirected_edges_are_mirrored() {
        let f: Fixture<f64> =
            parse_fixture("node a\nnode b\nedge a b 2.5\nstart a\ngoal b\n").unwrap();
        let (a, b) = (f.start, f.goal);
        assert_eq!(f.domain.edge_cost(a, b), Some(2.5));
        assert_eq!(f.domain.edge_cost(b, a), Some(2.5));
        assert_eq!(f.domain.dist(b, a), 2.5);
    }

    #[test]
    fn directed_edges_are_not() {
        let f: Fixture<f64> =
            parse_fixture("directed\nnode a\nnode b\nedge a b 1\nstart a\ngoal b\n").unwrap();
        assert!(f.domain.edge_cost(f.goal, f.start).is_none());
        assert!(f.domain.dist(f.goal, f.start).is_infinite());
        assert_eq!(f.domain.dist_to(f.goal)[f.start.index()], 1.0);
    }
}
