//! The `hexcolor v1` text format.
//!
//! ```text
//! hexcolor v1
//! l 4
//! lattice 2 0 1 3      # or: window
//! cell 0 0 1
//! ...
//! ```
//!
//! Lines are whitespace separated; `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::coloring::{LatticeColoring, WindowColoring};
use crate::grid::{Translation, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringFile {
    Window(WindowColoring),
    Lattice(LatticeColoring),
}

impl ColoringFile {
    pub fn l(&self) -> u64 {
        match self {
            ColoringFile::Window(c) => c.l,
            ColoringFile::Lattice(c) => c.l,
        }
    }

    pub fn cells(&self) -> &BTreeMap<Vertex, u32> {
        match self {
            ColoringFile::Window(c) => &c.assignment,
            ColoringFile::Lattice(c) => &c.assignment,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn ints<const N: usize>(line: usize, what: &str, fields: &[&str]) -> Result<[i64; N], ParseError> {
    if fields.len() != N {
        return Err(err(line, format!("`{what}` takes {N} integers, found {}", fields.len())));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| err(line, format!("`{f}` is not an integer in `{what}`")))?;
    }
    Ok(out)
}

enum Kind {
    Window,
    Lattice { line: usize, basis: [Translation; 2] },
}

pub fn parse_coloring(text: &str) -> Result<ColoringFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, raw)| (n + 1, raw.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, f)| !f.is_empty());

    let last_line = text.lines().count().max(1);
    let (n, f) = lines.next().ok_or_else(|| err(last_line, "empty file, expected `hexcolor v1`"))?;
    if f != ["hexcolor", "v1"] {
        return Err(err(n, format!("expected header `hexcolor v1`, found `{}`", f.join(" "))));
    }

    let (n, f) = lines.next().ok_or_else(|| err(last_line, "missing `l <int>` line"))?;
    if f[0] != "l" {
        return Err(err(n, format!("expected `l <int>`, found `{}`", f.join(" "))));
    }
    let [l] = ints::<1>(n, "l", &f[1..])?;
    if l < 1 {
        return Err(err(n, "l must be positive"));
    }

    let (n, f) = lines.next().ok_or_else(|| err(last_line, "missing `lattice` or `window` line"))?;
    let kind = match f[0] {
        "window" if f.len() == 1 => Kind::Window,
        "lattice" => {
            let [a1, b1, a2, b2] = ints::<4>(n, "lattice", &f[1..])?;
            Kind::Lattice { line: n, basis: [Translation::new(a1, b1), Translation::new(a2, b2)] }
        }
        _ => return Err(err(n, format!("expected `lattice` or `window`, found `{}`", f.join(" ")))),
    };

    let mut cells = BTreeMap::new();
    for (n, f) in lines {
        if f[0] != "cell" {
            return Err(err(n, format!("expected `cell <i> <j> <color>`, found `{}`", f.join(" "))));
        }
        let [i, j, c] = ints::<3>(n, "cell", &f[1..])?;
        if c < 1 || c > i64::from(u32::MAX) {
            return Err(err(n, format!("color {c} out of range")));
        }
        if cells.insert(Vertex::new(i, j), c as u32).is_some() {
            return Err(err(n, format!("cell ({i},{j}) listed twice")));
        }
    }

    let l = l as u64;
    match kind {
        Kind::Window => Ok(ColoringFile::Window(WindowColoring::new(l, cells))),
        Kind::Lattice { line, basis } => LatticeColoring::new(l, basis, cells)
            .map(ColoringFile::Lattice)
            .map_err(|e| err(line, e.to_string())),
    }
}

pub fn write_coloring(file: &ColoringFile) -> String {
    let mut out = format!("hexcolor v1\nl {}\n", file.l());
    match file {
        ColoringFile::Window(_) => out.push_str("window\n"),
        ColoringFile::Lattice(c) => {
            let [t1, t2] = c.basis;
            writeln!(out, "lattice {} {} {} {}", t1.a, t1.b, t2.a, t2.b).unwrap();
        }
    }
    for (v, c) in file.cells() {
        writeln!(out, "cell {} {} {}", v.i, v.j, c).unwrap();
    }
    out
}

pub fn read_coloring(path: &Path) -> Result<ColoringFile, FileError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io { path: shown.clone(), source })?;
    parse_coloring(&text).map_err(|source| FileError::Parse { path: shown, source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::lattice::Hnf;
    use proptest::prelude::*;

    #[test]
    fn parses_window_with_comments() {
        let text = "# demo\nhexcolor v1\nl 2  # distance\n\nwindow\ncell 0 0 1\ncell 1 0 2 # east\n";
        let ColoringFile::Window(w) = parse_coloring(text).unwrap() else { panic!("window") };
        assert_eq!(w.l, 2);
        assert_eq!(w.assignment[&Vertex::new(1, 0)], 2);
    }

    #[test]
    fn parses_lattice() {
        let text = "hexcolor v1\nl 1\nlattice 2 0 0 2\ncell 0 0 1\ncell 1 0 2\ncell 0 1 3\ncell 1 1 4\n";
        let ColoringFile::Lattice(c) = parse_coloring(text).unwrap() else { panic!("lattice") };
        assert_eq!(c.index(), 4);
        assert_eq!(c.color_of(Vertex::new(3, 5)), 4);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("hexcolour v1\n", 1),
            ("hexcolor v1\n# c\nl x\n", 3),
            ("hexcolor v1\nl 3\nwindow\ncell 0 0\n", 4),
            ("hexcolor v1\nl 3\nwindow\ncell 0 0 1\ncell 0 0 2\n", 5),
            ("hexcolor v1\nl 3\nwindow\ncell 0 0 0\n", 4),
            ("hexcolor v1\nl 3\nlattice 1 0 0 2\ncell 0 0 1\ncell 0 1 1\n", 3),
            ("hexcolor v1\nl 3\nlattice 2 0 0 2\ncell 0 0 1\n", 3),
            ("hexcolor v1\nl 3\ntorus\n", 3),
        ];
        for (text, line) in cases {
            assert_eq!(parse_coloring(text).unwrap_err().line, line, "{text:?}");
        }
    }

    fn window_strategy() -> impl Strategy<Value = ColoringFile> {
        (1u64..20, prop::collection::btree_map((-30i64..30, -30i64..30), 1u32..100, 0..40)).prop_map(
            |(l, cells)| {
                let assignment = cells.into_iter().map(|(k, c)| (Vertex::from(k), c)).collect();
                ColoringFile::Window(WindowColoring::new(l, assignment))
            },
        )
    }

    fn lattice_strategy() -> impl Strategy<Value = ColoringFile> {
        (1u64..20, 1i64..5, 0i64..8, 1i64..6, -3i64..3, -3i64..3).prop_filter_map(
            "even normal form",
            |(l, half, b, c, m, n)| {
                let a = 2 * half;
                let b = b % a;
                if (b + c) % 2 != 0 {
                    return None;
                }
                let hnf = Hnf::new(a, b, c);
                // write cells at shifted coset members, not the canonical ones
                let assignment = hnf
                    .representatives()
                    .into_iter()
                    .zip(1u32..)
                    .map(|(v, k)| (v.offset(m * a + n * b, n * c), k))
                    .collect();
                LatticeColoring::new(l, hnf.basis(), assignment).ok().map(ColoringFile::Lattice)
            },
        )
    }

    proptest! {
        #[test]
        fn window_round_trip(file in window_strategy()) {
            prop_assert_eq!(parse_coloring(&write_coloring(&file)).unwrap(), file);
        }

        #[test]
        fn lattice_round_trip(file in lattice_strategy()) {
            prop_assert_eq!(parse_coloring(&write_coloring(&file)).unwrap(), file);
        }
    }
}
