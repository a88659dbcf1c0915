//! Coordinate model of the infinite hexagonal grid.
//!
//! Vertices are integer pairs `(i, j)`. Every vertex has a vertical edge to
//! `(i, j + 1)` and `(i, j - 1)`; its third edge is horizontal and points east
//! for *right* vertices (`(i + j)` even) and west for *left* vertices
//! (`(i + j)` odd). The graph is bipartite over the parity classes.
//!
//! Two distance routes are provided: [`distance`] is the closed form and
//! [`distance_bfs`] is a breadth-first search. They must agree on every pair.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Horizontal orientation of a vertex's third edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Handedness {
    /// Parity 0; adjacent to `(i + 1, j)`.
    Right,
    /// Parity 1; adjacent to `(i - 1, j)`.
    Left,
}

/// A lattice point of the hexagonal grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub i: i64,
    pub j: i64,
}

impl Vertex {
    pub const ORIGIN: Vertex = Vertex { i: 0, j: 0 };

    pub const fn new(i: i64, j: i64) -> Self {
        Vertex { i, j }
    }

    /// `(i + j) mod 2`, always 0 or 1.
    pub fn parity(self) -> u8 {
        (self.i + self.j).rem_euclid(2) as u8
    }

    pub fn handedness(self) -> Handedness {
        if self.parity() == 0 {
            Handedness::Right
        } else {
            Handedness::Left
        }
    }

    pub fn is_right(self) -> bool {
        self.parity() == 0
    }

    /// The three adjacent vertices: horizontal neighbour first, then north, then south.
    pub fn neighbors(self) -> [Vertex; 3] {
        let di = if self.is_right() { 1 } else { -1 };
        [
            Vertex::new(self.i + di, self.j),
            Vertex::new(self.i, self.j + 1),
            Vertex::new(self.i, self.j - 1),
        ]
    }

    pub fn is_adjacent(self, other: Vertex) -> bool {
        self.neighbors().contains(&other)
    }

    pub fn offset(self, di: i64, dj: i64) -> Vertex {
        Vertex::new(self.i + di, self.j + dj)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl From<(i64, i64)> for Vertex {
    fn from((i, j): (i64, i64)) -> Self {
        Vertex::new(i, j)
    }
}

/// Translation vector of the grid. Only vectors with `a + b` even are
/// automorphisms (they preserve handedness).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Translation {
    pub a: i64,
    pub b: i64,
}

impl Translation {
    pub const fn new(a: i64, b: i64) -> Self {
        Translation { a, b }
    }

    pub fn is_even(self) -> bool {
        (self.a + self.b).rem_euclid(2) == 0
    }

    pub fn apply(self, v: Vertex) -> Vertex {
        v.offset(self.a, self.b)
    }
}

/// Closed-form graph distance.
///
/// When the vertical offset dominates, every horizontal step can be
/// interleaved with vertical ones and the distance is the Manhattan length.
/// Otherwise each horizontal step costs two edges, corrected by one for each
/// endpoint whose horizontal edge points toward the other endpoint.
pub fn distance(u: Vertex, v: Vertex) -> u64 {
    let di = v.i - u.i;
    let dj = v.j - u.j;
    let (adi, adj) = (di.unsigned_abs(), dj.unsigned_abs());
    if adi <= adj {
        return adi + adj;
    }
    // Eastward travel is shortened by starting on a right vertex and ending on
    // a left vertex; westward travel by the opposite pair.
    let parity_gap = i64::from(u.parity()) - i64::from(v.parity());
    let correction = if di > 0 { parity_gap } else { -parity_gap };
    (2 * adi as i64 + correction) as u64
}

/// Breadth-first distances from `source` to every vertex within `radius`.
pub fn bfs_ball(source: Vertex, radius: u64) -> HashMap<Vertex, u64> {
    let mut dist = HashMap::new();
    dist.insert(source, 0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        if du == radius {
            continue;
        }
        for w in u.neighbors() {
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                du + 1
            });
        }
    }
    dist
}

fn bfs_until(source: Vertex, target: Vertex, radius: u64) -> Option<u64> {
    if source == target {
        return Some(0);
    }
    let mut dist = HashMap::from([(source, 0u64)]);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        if du == radius {
            continue;
        }
        for w in u.neighbors() {
            if w == target {
                return Some(du + 1);
            }
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(du + 1);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Graph distance by breadth-first search over a growing window.
///
/// The window starts at the Manhattan radius and grows by 4 until the target
/// is reached. No distance exceeds `2 (|Δi| + |Δj|) + 1`, which bounds the loop.
pub fn distance_bfs(u: Vertex, v: Vertex) -> u64 {
    let manhattan = (v.i - u.i).unsigned_abs() + (v.j - u.j).unsigned_abs();
    let cap = 2 * manhattan + 5;
    let mut radius = manhattan;
    loop {
        if let Some(d) = bfs_until(u, v, radius) {
            return d;
        }
        radius += 4;
        assert!(radius <= cap, "bfs window exceeded cap for {u} -> {v}");
    }
}

/// Every vertex within distance `radius` of `center`, sorted by coordinates.
pub fn ball(center: Vertex, radius: u64) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = bfs_ball(center, radius).into_keys().collect();
    out.sort();
    out
}

/// Vertices at distance exactly `k` from `center`, sorted by coordinates.
///
/// Enumerates the bounding box and filters with the closed form, so it does
/// not depend on any ring indexing scheme.
pub fn sphere(center: Vertex, k: u64) -> Vec<Vertex> {
    let r = k as i64;
    let mut out = Vec::with_capacity(3 * k as usize);
    for di in -r..=r {
        for dj in -r..=r {
            let v = center.offset(di, dj);
            if distance(center, v) == k {
                out.push(v);
            }
        }
    }
    out
}

/// Offsets `(di, dj, d)` of every vertex at distance `1..=l` from a vertex
/// of the given parity. Even translations preserve distances, so this list
/// describes the `l`-ball of every vertex of that parity.
pub fn ball_offsets(parity: u8, l: u64) -> Vec<(i64, i64, u64)> {
    let src = Vertex::new(i64::from(parity), 0);
    let r = l as i64;
    let mut out = Vec::new();
    for di in -r..=r {
        for dj in -r..=r {
            let v = src.offset(di, dj);
            let d = distance(src, v);
            if d >= 1 && d <= l {
                out.push((di, dj, d));
            }
        }
    }
    out
}

/// Number of vertices within distance `p` of any vertex: `1 + 3p(p+1)/2`.
pub fn ball_size(p: u64) -> u64 {
    1 + 3 * p * (p + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn set(vs: &[(i64, i64)]) -> HashSet<Vertex> {
        vs.iter().map(|&p| Vertex::from(p)).collect()
    }

    #[test]
    fn neighbor_examples() {
        let n: HashSet<_> = Vertex::new(0, 0).neighbors().into_iter().collect();
        assert_eq!(n, set(&[(1, 0), (0, 1), (0, -1)]));
        let n: HashSet<_> = Vertex::new(1, 0).neighbors().into_iter().collect();
        assert_eq!(n, set(&[(0, 0), (1, 1), (1, -1)]));
        let v = Vertex::new(-3, 4);
        assert_eq!(v.handedness(), Handedness::Left);
        let n: HashSet<_> = v.neighbors().into_iter().collect();
        assert_eq!(n, set(&[(-4, 4), (-3, 5), (-3, 3)]));
    }

    #[test]
    fn adjacency_is_symmetric_and_bipartite() {
        for v in ball(Vertex::ORIGIN, 6) {
            for w in v.neighbors() {
                assert!(w.is_adjacent(v), "{v} ~ {w}");
                assert_ne!(v.parity(), w.parity());
            }
        }
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(distance_bfs(Vertex::ORIGIN, Vertex::new(0, 7)), 7);
        assert_eq!(distance_bfs(Vertex::ORIGIN, Vertex::new(1, 0)), 1);
        assert_eq!(distance_bfs(Vertex::ORIGIN, Vertex::new(-1, 0)), 3);
        assert_eq!(distance_bfs(Vertex::ORIGIN, Vertex::ORIGIN), 0);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(distance(Vertex::ORIGIN, Vertex::new(3, 2)), 5);
        assert_eq!(distance(Vertex::ORIGIN, Vertex::new(2, 5)), 7);
        assert_eq!(distance(Vertex::ORIGIN, Vertex::new(-3, 0)), 7);
        assert_eq!(distance(Vertex::ORIGIN, Vertex::new(-1, 0)), 3);
    }

    #[test]
    fn closed_form_matches_bfs_near_both_handedness() {
        for src in [Vertex::ORIGIN, Vertex::new(1, 0)] {
            for (v, d) in bfs_ball(src, 14) {
                assert_eq!(distance(src, v), d, "{src} -> {v}");
            }
        }
    }

    #[test]
    fn sphere_sizes() {
        assert_eq!(sphere(Vertex::ORIGIN, 0).len(), 1);
        for k in 1..=12 {
            assert_eq!(sphere(Vertex::ORIGIN, k).len() as u64, 3 * k);
            assert_eq!(sphere(Vertex::new(1, 0), k).len() as u64, 3 * k);
        }
        assert_eq!(ball(Vertex::ORIGIN, 5).len() as u64, ball_size(5));
    }
}
