//! ASCII and SVG pictures of planner outputs.
//!
//! Glyphs, highest priority first: `S`/`G` for start and goal, a digit for
//! a transit candidate (its group id modulo 10, `?` when it got no path), a
//! lowercase letter for a path cell (one letter per group), then `#` for
//! obstacles and `.` for free cells.

use std::fmt::Write as _;

use transit_anon::anonymity::Outputs;
use transit_anon::domain::{Domain, NodeId};

const PALETTE: [(u8, u8, u8); 10] = [
    (0xd6, 0x27, 0x28),
    (0x1f, 0x77, 0xb4),
    (0xff, 0x7f, 0x0e),
    (0x94, 0x67, 0xbd),
    (0x8c, 0x56, 0x4b),
    (0xe3, 0x77, 0xc2),
    (0xbc, 0xbd, 0x22),
    (0x7f, 0x7f, 0x7f),
    (0x17, 0xbe, 0xcf),
    (0x2c, 0xa0, 0x2c),
];
const CELL: usize = 16;

type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene {
    pub width: usize,
    pub height: usize,
    /// `true` where a cell is free (or is a node, for edge-list fixtures).
    pub free: Vec<bool>,
    pub start: Option<Cell>,
    pub goal: Option<Cell>,
    /// Candidate cells with their group; `None` when the planner failed.
    pub members: Vec<(Cell, Option<usize>)>,
    /// Path cells per group, lowest group first.
    pub paths: Vec<(usize, Vec<Cell>)>,
}

impl Scene {
    pub fn new(domain: &Domain<f64>, s: NodeId, g: NodeId, outputs: &Outputs<f64>) -> Self {
        let (width, height) = domain.extent();
        let mut free = vec![false; width * height];
        match domain.grid_map() {
            Some(map) => {
                for (x, y) in map.passable_cells() {
                    free[y * width + x] = true;
                }
            }
            None => {
                for n in domain.nodes() {
                    if let Some((x, y)) = domain.cell_of(n) {
                        free[y * width + x] = true;
                    }
                }
            }
        }
        let mut members = Vec::new();
        let mut paths: Vec<(usize, Vec<Cell>)> = Vec::new();
        for (t, r) in &outputs.results {
            let Some(cell) = domain.cell_of(*t) else {
                continue;
            };
            let group = r.path().map(|_| r.group().unwrap_or(0));
            members.push((cell, group));
            if let (Some(p), Some(gid)) = (r.path(), group) {
                if paths.iter().any(|(g, _)| *g == gid) {
                    continue;
                }
                let cells = p
                    .nodes()
                    .iter()
                    .filter_map(|&n| domain.cell_of(n))
                    .collect();
                paths.push((gid, cells));
            }
        }
        paths.sort_by_key(|(g, _)| *g);
        Scene {
            width,
            height,
            free,
            start: domain.cell_of(s),
            goal: domain.cell_of(g),
            members,
            paths,
        }
    }

    fn glyphs(&self) -> Vec<char> {
        let mut grid: Vec<char> = self
            .free
            .iter()
            .map(|&f| if f { '.' } else { '#' })
            .collect();
        for (gid, cells) in self.paths.iter().rev() {
            let letter = (b'a' + (*gid % 26) as u8) as char;
            for &(x, y) in cells {
                grid[y * self.width + x] = letter;
            }
        }
        for &((x, y), gid) in &self.members {
            grid[y * self.width + x] = match gid {
                Some(g) => char::from_digit((g % 10) as u32, 10).expect("single digit"),
                None => '?',
            };
        }
        if let Some((x, y)) = self.start {
            grid[y * self.width + x] = 'S';
        }
        if let Some((x, y)) = self.goal {
            grid[y * self.width + x] = 'G';
        }
        grid
    }

    pub fn ascii(&self) -> String {
        let grid = self.glyphs();
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in grid.chunks(self.width.max(1)) {
            out.extend(row);
            out.push('\n');
        }
        out
    }

    pub fn svg(&self) -> String {
        let (w, h) = (self.width * CELL, self.height * CELL);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let rect = |out: &mut String, (x, y): Cell, fill: &str, extra: &str| {
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{fill}"{extra}/>"#,
                x * CELL,
                y * CELL
            );
        };
        for y in 0..self.height {
            for x in 0..self.width {
                let fill = if self.free[y * self.width + x] {
                    "#ffffff"
                } else {
                    "#202020"
                };
                rect(&mut out, (x, y), fill, "");
            }
        }
        let color = |g: usize| {
            let (r, gg, b) = PALETTE[g % PALETTE.len()];
            format!("#{r:02x}{gg:02x}{b:02x}")
        };
        for (gid, cells) in self.paths.iter().rev() {
            for &c in cells {
                rect(&mut out, c, &color(*gid), r#" fill-opacity="0.35""#);
            }
        }
        for &(c, gid) in &self.members {
            match gid {
                Some(g) => rect(&mut out, c, &color(g), ""),
                None => rect(&mut out, c, "#000000", r#" fill-opacity="0.6""#),
            }
        }
        if let Some(c) = self.start {
            rect(&mut out, c, "#00e5ff", "");
        }
        if let Some(c) = self.goal {
            rect(&mut out, c, "#00c853", "");
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use transit_anon::domain::{build_domain, GridMap};
    use transit_anon::planners::PlanResult;

    #[test]
    fn empty_outputs_show_only_endpoints() {
        let map = GridMap::from_rows(&["..@", "..."]).unwrap();
        let d: Domain<f64> = build_domain(&map, &[], 0, true).unwrap();
        let (s, g) = (d.node_at(0, 0).unwrap(), d.node_at(2, 1).unwrap());
        let scene = Scene::new(
            &d,
            s,
            g,
            &Outputs {
                results: Vec::new(),
            },
        );
        assert_eq!(scene.ascii(), "S.#\n..G\n");
    }

    #[test]
    fn endpoints_win_over_paths() {
        let map = GridMap::from_rows(&["....", "...."]).unwrap();
        let d: Domain<f64> = build_domain(&map, &[(2, 1)], 0, true).unwrap();
        let (s, g) = (d.node_at(0, 0).unwrap(), d.node_at(3, 0).unwrap());
        let t = d.transit()[0];
        let path = d
            .path(
                [(0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (3, 0)]
                    .map(|(x, y)| d.node_at(x, y).unwrap())
                    .to_vec(),
            )
            .unwrap();
        let out = Outputs {
            results: vec![(
                t,
                PlanResult::Planned {
                    path,
                    group: Some(1),
                    shared_prefix: 0,
                },
            )],
        };
        let scene = Scene::new(&d, s, g, &out);
        assert_eq!(scene.ascii(), "SbbG\n..1b\n");
        assert!(scene.svg().starts_with("<svg"));
    }
}
