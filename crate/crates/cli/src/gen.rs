//! Seeded scenario generation for a map file.

use std::path::Path;

use serde_json::{json, Value};

use transit_anon::domain::GridMap;
use transit_anon::sample::{sample_instances, SampleError};

/// Knobs copied into every generated scenario.
#[derive(Debug, Clone)]
pub struct GenOptions {
    pub count: usize,
    pub seed: u64,
    pub transit: usize,
    pub k: usize,
}

/// A config with `count` scenarios on `map`, each with explicit start, goal
/// and transit cells.
pub fn gen_config(map: &GridMap, map_path: &Path, opts: &GenOptions) -> Result<Value, SampleError> {
    let instances = sample_instances(map, opts.transit, opts.count, opts.seed)?;
    let stem = map_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "map".into());
    let scenarios: Vec<Value> = instances
        .iter()
        .enumerate()
        .map(|(i, inst)| {
            json!({
                "name": format!("{stem}-{i}"),
                "map": map_path,
                "s": [inst.start.0, inst.start.1],
                "g": [inst.goal.0, inst.goal.1],
                "transit": inst.transit.iter().map(|c| [c.0, c.1]).collect::<Vec<_>>(),
                "k": opts.k,
                "l": 1.0,
                "m": "inf",
                "r": 0,
                "planner": "pbp",
                "seed": opts.seed,
            })
        })
        .collect();
    Ok(json!({ "scenarios": scenarios }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use transit_anon::sample::random_grid;

    #[test]
    fn same_seed_same_scenarios() {
        let map = random_grid(10, 10, 0.2, 3);
        let opts = GenOptions {
            count: 5,
            seed: 11,
            transit: 4,
            k: 2,
        };
        let a = gen_config(&map, Path::new("m.map"), &opts).unwrap();
        let b = gen_config(&map, Path::new("m.map"), &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a["scenarios"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn tiny_map_is_an_error() {
        let map = GridMap::from_rows(&["..."]).unwrap();
        let opts = GenOptions {
            count: 1,
            seed: 0,
            transit: 4,
            k: 2,
        };
        assert!(gen_config(&map, Path::new("m.map"), &opts).is_err());
    }
}
