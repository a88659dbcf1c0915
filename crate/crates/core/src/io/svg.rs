//! SVG rendering of a colouring.
//!
//! Each grid vertex is drawn as the triangle of the dual lattice that contains
//! it, so adjacent vertices share a triangle side. Right vertices point west,
//! left vertices point east. Output is byte-for-byte deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::coloring_file::ColoringFile;
use crate::grid::Vertex;

const SIDE: f64 = 24.0;
const MARGIN: f64 = 8.0;

fn corners(v: Vertex) -> [(f64, f64); 3] {
    let w = SIDE * 3f64.sqrt() / 2.0;
    let h = SIDE / 2.0;
    let (x0, x1) = (v.i as f64 * w, (v.i + 1) as f64 * w);
    let y = |k: i64| -(k as f64) * h;
    if v.is_right() {
        [(x0, y(v.j)), (x1, y(v.j - 1)), (x1, y(v.j + 1))]
    } else {
        [(x0, y(v.j - 1)), (x0, y(v.j + 1)), (x1, y(v.j))]
    }
}

/// Fill colour for colour index `c`; golden-angle hues keep neighbours apart.
fn fill(c: u32) -> String {
    let hue = (u64::from(c) * 137_508 / 1000) % 360;
    let light = 55 + (c % 3) * 10;
    format!("hsl({hue},70%,{light}%)")
}

/// Cells drawn for a file: a window as given, a lattice as its fundamental
/// domain translated over a 3 by 3 block of periods.
pub fn drawn_cells(file: &ColoringFile) -> BTreeMap<Vertex, u32> {
    match file {
        ColoringFile::Window(c) => c.assignment.clone(),
        ColoringFile::Lattice(c) => {
            let [t1, t2] = c.basis;
            let mut out = BTreeMap::new();
            for m in 0..3 {
                for n in 0..3 {
                    for (&v, &k) in &c.assignment {
                        out.insert(v.offset(m * t1.a + n * t2.a, m * t1.b + n * t2.b), k);
                    }
                }
            }
            out
        }
    }
}

pub fn render_svg(file: &ColoringFile) -> String {
    let cells = drawn_cells(file);
    let pts: Vec<[(f64, f64); 3]> = cells.keys().map(|&v| corners(v)).collect();
    let xs = pts.iter().flatten().map(|p| p.0);
    let ys = pts.iter().flatten().map(|p| p.1);
    let (min_x, max_x) = xs.fold((0.0f64, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let (min_y, max_y) = ys.fold((0.0f64, 0.0f64), |(lo, hi), y| (lo.min(y), hi.max(y)));
    let (ox, oy) = (min_x - MARGIN, min_y - MARGIN);
    let (width, height) = (max_x - min_x + 2.0 * MARGIN, max_y - min_y + 2.0 * MARGIN);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    let kind = match file {
        ColoringFile::Window(_) => "window".to_string(),
        ColoringFile::Lattice(c) => {
            let [t1, t2] = c.basis;
            format!("lattice ({},{}) ({},{}), 3x3 periods", t1.a, t1.b, t2.a, t2.b)
        }
    };
    writeln!(out, "<title>l = {}, {kind}</title>", file.l()).unwrap();
    writeln!(out, r##"<g stroke="#333" stroke-width="0.5" font-family="sans-serif" font-size="7" text-anchor="middle">"##).unwrap();
    for ((&v, &c), tri) in cells.iter().zip(&pts) {
        let p: Vec<String> = tri.iter().map(|(x, y)| format!("{:.2},{:.2}", x - ox, y - oy)).collect();
        writeln!(
            out,
            r#"<polygon points="{}" fill="{}"><title>{v} color {c}</title></polygon>"#,
            p.join(" "),
            fill(c)
        )
        .unwrap();
        let cx = tri.iter().map(|t| t.0).sum::<f64>() / 3.0 - ox;
        let cy = tri.iter().map(|t| t.1).sum::<f64>() / 3.0 - oy + 2.5;
        writeln!(out, r#"<text x="{cx:.2}" y="{cy:.2}" stroke="none">{c}</text>"#).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{LatticeColoring, WindowColoring};
    use crate::grid::ball;

    fn key(p: (f64, f64)) -> (i64, i64) {
        ((p.0 * 100.0).round() as i64, (p.1 * 100.0).round() as i64)
    }

    #[test]
    fn adjacent_vertices_share_a_side() {
        for v in ball(Vertex::ORIGIN, 3) {
            let mine: Vec<_> = corners(v).into_iter().map(key).collect();
            for w in v.neighbors() {
                let shared = corners(w).into_iter().map(key).filter(|k| mine.contains(k)).count();
                assert_eq!(shared, 2, "{v} {w}");
            }
        }
    }

    #[test]
    fn one_polygon_per_vertex() {
        let assignment = ball(Vertex::ORIGIN, 2).into_iter().zip(1..).collect();
        let file = ColoringFile::Window(WindowColoring::new(4, assignment));
        let svg = render_svg(&file);
        assert_eq!(svg.matches("<polygon").count(), 10);
        assert_eq!(svg, render_svg(&file));
    }

    #[test]
    fn lattice_tiles_three_by_three() {
        let assignment = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .into_iter()
            .map(Vertex::from)
            .zip(1..)
            .collect();
        let c = LatticeColoring::new(1, [crate::Translation::new(2, 0), crate::Translation::new(0, 2)], assignment)
            .unwrap();
        let svg = render_svg(&ColoringFile::Lattice(c));
        assert_eq!(svg.matches("<polygon").count(), 36);
    }
}
