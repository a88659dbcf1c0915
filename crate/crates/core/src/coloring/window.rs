//! Finite-window colourings: verification and exact colourability of the
//! `l`-th power graph of a ball.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::exact::{color_within, Colorability, ConflictGraph};
use crate::grid::{ball, distance, distance_bfs, Vertex};

/// Default vertex-count guard for exact window search.
pub const DEFAULT_GUARD: usize = 200;
/// Default branch-and-bound node budget for exact window search.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

/// A same-colour pair at distance at most `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub u: Vertex,
    pub v: Vertex,
    pub distance: u64,
    pub color: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowColoring {
    pub l: u64,
    pub assignment: BTreeMap<Vertex, u32>,
}

impl WindowColoring {
    pub fn new(l: u64, assignment: BTreeMap<Vertex, u32>) -> Self {
        WindowColoring { l, assignment }
    }

    pub fn color_count(&self) -> usize {
        let mut colors: Vec<u32> = self.assignment.values().copied().collect();
        colors.sort_unstable();
        colors.dedup();
        colors.len()
    }
}

/// Checks every pair within distance `l`. Violations are listed once per
/// unordered pair with `u < v`, sorted.
pub fn verify_window(c: &WindowColoring) -> Verdict {
    let cells: Vec<(Vertex, u32)> = c.assignment.iter().map(|(&v, &k)| (v, k)).collect();
    let mut violations = Vec::new();
    let mut audited = 0usize;
    for (a, &(u, cu)) in cells.iter().enumerate() {
        for (b, &(v, cv)) in cells.iter().enumerate().skip(a + 1) {
            // cheap reject: distance is at least the vertical offset
            if (v.j - u.j).unsigned_abs() > c.l {
                continue;
            }
            let d = distance(u, v);
            if (a * 31 + b) % 4099 == 0 && audited < 64 {
                assert_eq!(d, distance_bfs(u, v), "closed form disagrees with BFS at {u} {v}");
                audited += 1;
            }
            if d <= c.l && cu == cv {
                debug_assert_eq!(d, distance_bfs(u, v));
                violations.push(Violation { u, v, distance: d, color: cu });
            }
        }
    }
    violations.sort();
    Verdict { violations }
}

/// The `l`-th power graph on `vertices`: edges join pairs within distance `l`.
pub fn power_graph(vertices: &[Vertex], l: u64) -> ConflictGraph {
    let mut g = ConflictGraph::new(vertices.len());
    for (a, &u) in vertices.iter().enumerate() {
        for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
            if distance(u, v) <= l {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub max_vertices: usize,
    pub node_limit: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { max_vertices: DEFAULT_GUARD, node_limit: DEFAULT_NODE_LIMIT }
    }
}

/// Resource-guard refusal. Never a claim about colourability.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Refusal {
    #[error("window has {vertices} vertices, above the guard of {guard}")]
    TooManyVertices { vertices: usize, guard: usize },
    #[error("search exceeded the node limit of {0}")]
    NodeLimit(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowSpan {
    Feasible(WindowColoring),
    /// No colouring with the budget exists; the span is at least `budget + 1`.
    Infeasible,
}

/// Guarded window around the origin.
pub fn guarded_window(radius: u64, guard: &Guard) -> Result<Vec<Vertex>, Refusal> {
    // ball size is 1 + 3r(r+1)/2, known without enumerating
    let size = crate::grid::ball_size(radius) as usize;
    if size > guard.max_vertices {
        return Err(Refusal::TooManyVertices { vertices: size, guard: guard.max_vertices });
    }
    Ok(ball(Vertex::ORIGIN, radius))
}

/// Decides whether the radius-`radius` window admits an `l`-distance
/// colouring with `budget` colours.
pub fn exact_window_span(
    l: u64,
    radius: u64,
    budget: usize,
    guard: &Guard,
) -> Result<WindowSpan, Refusal> {
    let window = guarded_window(radius, guard)?;
    let g = power_graph(&window, l);
    match color_within(&g, budget, guard.node_limit) {
        Ok(Colorability::Colorable(colors)) => {
            let assignment = window.into_iter().zip(colors).collect();
            Ok(WindowSpan::Feasible(WindowColoring::new(l, assignment)))
        }
        Ok(Colorability::NotColorable) => Ok(WindowSpan::Infeasible),
        Err(e) => Err(Refusal::NodeLimit(e.limit)),
    }
}

/// Smallest feasible budget for the window, starting from `lower`.
pub fn window_chromatic_number(
    l: u64,
    radius: u64,
    lower: usize,
    guard: &Guard,
) -> Result<(usize, WindowColoring), Refusal> {
    let window = guarded_window(radius, guard)?;
    let mut budget = lower.max(1);
    loop {
        match exact_window_span(l, radius, budget, guard)? {
            WindowSpan::Feasible(c) => return Ok((budget, c)),
            WindowSpan::Infeasible => budget += 1,
        }
        assert!(budget <= window.len(), "window is always colourable with one colour per vertex");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ball_size;

    fn greedy(l: u64, radius: u64) -> WindowColoring {
        let window = ball(Vertex::ORIGIN, radius);
        let mut assignment = BTreeMap::new();
        for &v in &window {
            let taken: Vec<u32> = assignment
                .iter()
                .filter(|(&w, _)| distance(v, w) <= l)
                .map(|(_, &c)| c)
                .collect();
            let c = (1..).find(|c| !taken.contains(c)).unwrap();
            assignment.insert(v, c);
        }
        WindowColoring::new(l, assignment)
    }

    #[test]
    fn greedy_colouring_verifies() {
        let c = greedy(3, 5);
        assert!(verify_window(&c).is_valid());
    }

    #[test]
    fn overwritten_cell_reports_exact_pairs() {
        let mut c = greedy(3, 5);
        let target = Vertex::new(1, 1);
        let donor = Vertex::new(1, 2);
        let color = c.assignment[&donor];
        c.assignment.insert(target, color);
        let verdict = verify_window(&c);
        let mut want: Vec<Violation> = c
            .assignment
            .iter()
            .filter(|(&w, &k)| w != target && k == color && distance(w, target) <= 3)
            .map(|(&w, _)| {
                let (u, v) = if w < target { (w, target) } else { (target, w) };
                Violation { u, v, distance: distance(u, v), color }
            })
            .collect();
        want.sort();
        assert!(!want.is_empty());
        assert_eq!(verdict.violations, want);
    }

    #[test]
    fn clique_window_needs_all_colours() {
        for p in 1..=3u64 {
            let d = ball_size(p) as usize;
            let g = Guard::default();
            assert_eq!(exact_window_span(2 * p, p, d - 1, &g).unwrap(), WindowSpan::Infeasible);
            match exact_window_span(2 * p, p, d, &g).unwrap() {
                WindowSpan::Feasible(c) => assert!(verify_window(&c).is_valid()),
                WindowSpan::Infeasible => panic!("clique window colourable with |D| colours"),
            }
        }
    }

    #[test]
    fn tiny_window_feasible() {
        let g = Guard::default();
        assert!(matches!(exact_window_span(2, 1, 4, &g).unwrap(), WindowSpan::Feasible(_)));
    }

    #[test]
    fn guard_refuses_large_windows() {
        let g = Guard { max_vertices: 50, ..Guard::default() };
        assert_eq!(
            exact_window_span(4, 6, 10, &g),
            Err(Refusal::TooManyVertices { vertices: 64, guard: 50 })
        );
    }

    #[test]
    fn power_graph_of_clique_window_is_complete() {
        let w = ball(Vertex::ORIGIN, 2);
        let g = power_graph(&w, 4);
        assert_eq!(g.len(), 10);
        assert_eq!(g.edge_count(), 45);
    }
}
