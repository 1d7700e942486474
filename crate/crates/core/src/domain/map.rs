//! Moving AI `.map` grid files.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapParseError {
    #[error("line {line}: expected header `{expected}`, found {found:?}")]
    Header {
        line: usize,
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: invalid dimension {value:?}")]
    Dimension { line: usize, value: String },
    #[error("map row {row} (line {line}): expected {expected} cells, found {found}")]
    RowLength {
        row: usize,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} map rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}, column {column}: unknown cell character {ch:?}")]
    UnknownCell {
        line: usize,
        column: usize,
        ch: char,
    },
}

/// A rectangular grid of terrain characters as read from a `.map` file.
///
/// The raw characters are kept so that serializing reproduces the input grid.
#[derive(Clone, PartialEq, Eq)]
pub struct GridMap {
    kind: String,
    width: usize,
    height: usize,
    cells: Vec<u8>,
}

impl GridMap {
    /// Builds a map from rows of terrain characters.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, MapParseError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut text = format!("type octile\nheight {height}\nwidth {width}\nmap\n");
        for row in rows {
            text.push_str(row.as_ref());
            text.push('\n');
        }
        parse_map(&text)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn cell(&self, x: usize, y: usize) -> u8 {
        self.cells[y * self.width + x]
    }

    pub fn passable(&self, x: usize, y: usize) -> bool {
        x < self.width && y < self.height && is_passable(self.cell(x, y))
    }

    pub fn passable_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.height)
            .flat_map(move |y| (0..self.width).map(move |x| (x, y)))
            .filter(|&(x, y)| self.passable(x, y))
    }

    /// Serializes back to the `.map` text format (trailing newline included).
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "type {}\nheight {}\nwidth {}\nmap\n",
            self.kind, self.height, self.width
        );
        for row in self.cells.chunks(self.width.max(1)) {
            out.push_str(std::str::from_utf8(row).expect("cells are ASCII"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for GridMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GridMap {}x{}", self.width, self.height)?;
        for row in self.cells.chunks(self.width.max(1)) {
            writeln!(f, "{}", String::from_utf8_lossy(row))?;
        }
        Ok(())
    }
}

fn is_passable(c: u8) -> bool {
    matches!(c, b'.' | b'G')
}

fn is_known(c: u8) -> bool {
    matches!(c, b'.' | b'G' | b'@' | b'O' | b'T' | b'S' | b'W')
}

/// Parses the Moving AI map format: `type`, `height H`, `width W`, `map`,
/// then `H` rows of `W` characters.
pub fn parse_map(text: &str) -> Result<GridMap, MapParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));

    let mut next_header = |expected: &'static str| -> Result<(usize, String), MapParseError> {
        match lines.next() {
            Some((line, l)) => {
                let mut parts = l.split_whitespace();
                if parts.next() != Some(expected) {
                    return Err(MapParseError::Header {
                        line,
                        expected,
                        found: l.to_string(),
                    });
                }
                Ok((line, parts.collect::<Vec<_>>().join(" ")))
            }
            None => Err(MapParseError::Header {
                line: 0,
                expected,
                found: String::new(),
            }),
        }
    };

    let (_, kind) = next_header("type")?;
    let (hline, h) = next_header("height")?;
    let (wline, w) = next_header("width")?;
    next_header("map")?;
    let height: usize = h
        .parse()
        .ok()
        .filter(|&v| v > 0)
        .ok_or(MapParseError::Dimension {
            line: hline,
            value: h,
        })?;
    let width: usize = w
        .parse()
        .ok()
        .filter(|&v| v > 0)
        .ok_or(MapParseError::Dimension {
            line: wline,
            value: w,
        })?;

    let mut cells = Vec::with_capacity(width * height);
    let mut rows = 0;
    for (line, l) in lines {
        if rows == height {
            if l.trim().is_empty() {
                continue;
            }
            return Err(MapParseError::RowCount {
                expected: height,
                found: rows + 1,
            });
        }
        let bytes = l.as_bytes();
        if bytes.len() != width {
            return Err(MapParseError::RowLength {
                row: rows + 1,
                line,
                expected: width,
                found: bytes.len(),
            });
        }
        if let Some(col) = bytes.iter().position(|&c| !is_known(c)) {
            return Err(MapParseError::UnknownCell {
                line,
                column: col + 1,
                ch: l[col..].chars().next().unwrap_or('?'),
            });
        }
        cells.extend_from_slice(bytes);
        rows += 1;
    }
    if rows != height {
        return Err(MapParseError::RowCount {
            expected: height,
            found: rows,
        });
    }
    Ok(GridMap {
        kind,
        width,
        height,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_map() {
        let m = parse_map("type octile\nheight 2\nwidth 3\nmap\n..@\n.T.").unwrap();
        assert_eq!((m.width(), m.height()), (3, 2));
        let cells: Vec<_> = m.passable_cells().collect();
        // row 1 is ".T.", so its last cell is free as well
        assert_eq!(cells, vec![(0, 0), (1, 0), (0, 1), (2, 1)]);
        assert!(!m.passable(2, 0));
        assert!(!m.passable(1, 1));
    }

    #[test]
    fn single_cell() {
        let m = parse_map("type octile\nheight 1\nwidth 1\nmap\n.").unwrap();
        assert_eq!(m.passable_cells().count(), 1);
    }

    #[test]
    fn short_row_is_rejected() {
        let err = parse_map("type octile\nheight 1\nwidth 4\nmap\n...").unwrap_err();
        assert_eq!(
            err,
            MapParseError::RowLength {
                row: 1,
                line: 5,
                expected: 4,
                found: 3
            }
        );
    }

    #[test]
    fn header_and_cell_errors() {
        assert!(matches!(
            parse_map("type octile\nwidth 1\nheight 1\nmap\n."),
            Err(MapParseError::Header { line: 2, .. })
        ));
        assert!(matches!(
            parse_map("type octile\nheight x\nwidth 1\nmap\n."),
            Err(MapParseError::Dimension { line: 2, .. })
        ));
        assert_eq!(
            parse_map("type octile\nheight 1\nwidth 2\nmap\n.?").unwrap_err(),
            MapParseError::UnknownCell {
                line: 5,
                column: 2,
                ch: '?'
            }
        );
        assert!(matches!(
            parse_map("type octile\nheight 2\nwidth 1\nmap\n."),
            Err(MapParseError::RowCount {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn serialize_round_trip() {
        let text = "type octile\nheight 3\nwidth 4\nmap\n.@TG\nSW..\nO...\n";
        let m = parse_map(text).unwrap();
        assert_eq!(m.to_text(), text);
        assert_eq!(parse_map(&m.to_text()).unwrap(), m);
    }
}
