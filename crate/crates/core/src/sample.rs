//! Seeded random maps and problem instances.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::domain::GridMap;
use crate::seed;

/// Attempts per requested instance before giving up.
pub const MAX_ATTEMPTS: usize = 200;

pub type Cell = (usize, usize);

/// Start, goal and transit candidates as grid cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub start: Cell,
    pub goal: Cell,
    pub transit: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("map has {available} passable cells but {needed} are needed")]
    TooSmall { available: usize, needed: usize },
    #[error("no connected start/goal pair found after {0} attempts")]
    Exhausted(usize),
}

/// A `width × height` map where each cell is an obstacle with probability
/// `obstacles`.
pub fn random_grid(width: usize, height: usize, obstacles: f64, seed: u64) -> GridMap {
    let mut rng = seed::rng_for(&[0x6d61_7073, width as u64, height as u64, seed]);
    let rows: Vec<String> = (0..height)
        .map(|_| {
            (0..width)
                .map(|_| if rng.gen_bool(obstacles) { '@' } else { '.' })
                .collect()
        })
        .collect();
    GridMap::from_rows(&rows).expect("generated rows are rectangular")
}

/// Cells reachable from `from` by 4-connected moves.
pub fn reachable(map: &GridMap, from: Cell) -> Vec<bool> {
    let (w, h) = (map.width(), map.height());
    let mut seen = vec![false; w * h];
    if !map.passable(from.0, from.1) {
        return seen;
    }
    let mut queue = VecDeque::from([from]);
    seen[from.1 * w + from.0] = true;
    while let Some((x, y)) = queue.pop_front() {
        let steps = [
            (x.wrapping_sub(1), y),
            (x + 1, y),
            (x, y.wrapping_sub(1)),
            (x, y + 1),
        ];
        for (nx, ny) in steps {
            if nx < w && ny < h && !seen[ny * w + nx] && map.passable(nx, ny) {
                seen[ny * w + nx] = true;
                queue.push_back((nx, ny));
            }
        }
    }
    seen
}

/// Distinct passable `s`, `g` and `n_transit` candidates (none equal to `s`
/// or `g`), resampling until `g` is reachable from `s`.
pub fn sample_instance(
    map: &GridMap,
    n_transit: usize,
    rng: &mut impl Rng,
) -> Result<Instance, SampleError> {
    let cells: Vec<Cell> = map.passable_cells().collect();
    let needed = n_transit + 2;
    if cells.len() < needed {
        return Err(SampleError::TooSmall {
            available: cells.len(),
            needed,
        });
    }
    for _ in 0..MAX_ATTEMPTS {
        let picked: Vec<Cell> = cells.choose_multiple(rng, needed).copied().collect();
        let (start, goal) = (picked[0], picked[1]);
        if reachable(map, start)[goal.1 * map.width() + goal.0] {
            return Ok(Instance {
                start,
                goal,
                transit: picked[2..].to_vec(),
            });
        }
    }
    Err(SampleError::Exhausted(MAX_ATTEMPTS))
}

/// `count` instances drawn with a generator seeded by `seed`.
pub fn sample_instances(
    map: &GridMap,
    n_transit: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Instance>, SampleError> {
    let mut rng = seed::rng_for(&[0x696e_7374, n_transit as u64, seed]);
    (0..count)
        .map(|_| sample_instance(map, n_transit, &mut rng))
        .collect()
}
