//! DIMACS edge format for the power graph of a window.

use std::fmt::Write as _;

use crate::coloring::window::{guarded_window, power_graph, Guard, Refusal};
use crate::grid::Vertex;

/// `vertices` and the pairs of them within distance `l`, ids 1-based in the
/// given order.
pub fn to_dimacs(vertices: &[Vertex], l: u64, comment: &str) -> String {
    let g = power_graph(vertices, l);
    let mut out = String::new();
    for line in comment.lines() {
        writeln!(out, "c {line}").unwrap();
    }
    for (n, v) in vertices.iter().enumerate() {
        writeln!(out, "c v {} {} {}", n + 1, v.i, v.j).unwrap();
    }
    writeln!(out, "p edge {} {}", g.len(), g.edge_count()).unwrap();
    for u in 0..g.len() {
        for w in g.neighbors(u).filter(|&w| w > u) {
            writeln!(out, "e {} {}", u + 1, w + 1).unwrap();
        }
    }
    out
}

/// Power graph of the radius-`radius` ball around the origin.
pub fn export_dimacs(l: u64, radius: u64, guard: &Guard) -> Result<String, Refusal> {
    let window = guarded_window(radius, guard)?;
    let comment = format!("hexagonal grid, distance <= {l}, ball of radius {radius} around (0,0)");
    Ok(to_dimacs(&window, l, &comment))
}
