//! Periodic colourings of the whole grid.
//!
//! A period lattice `Λ` is a full-rank sublattice of the even translations
//! (`a + b` even), so every translation in it is a grid automorphism. It is
//! stored in Hermite normal form with basis `(a, 0), (b, c)`, `0 <= b < a`,
//! whose fundamental domain is the box `[0, a) x [0, c)`.
//!
//! Two colouring shapes are supported:
//! - single coset: every coset of `Λ` in `Z^2` gets its own colour, so the
//!   colour count equals the index `a * c`;
//! - multi domain: cosets are grouped into colour classes by an exact
//!   colouring of the quotient graph on the torus `Z^2 / Λ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::exact::{color_within, Colorability, ConflictGraph};
use super::window::{Verdict, Violation, WindowColoring};
use crate::grid::{ball, ball_offsets, Translation, Vertex};

/// Default branch-and-bound node budget per candidate lattice.
pub const DEFAULT_LATTICE_NODE_LIMIT: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("basis vectors are linearly dependent")]
    Degenerate,
    #[error("basis vector ({0}, {1}) is not an even translation")]
    OddBasis(i64, i64),
    #[error("fundamental domain has {got} cells but the lattice index is {index}")]
    WrongCellCount { got: usize, index: u64 },
    #[error("cells {0} and {1} lie in the same coset")]
    DuplicateCoset(Vertex, Vertex),
    #[error("cell {0} has colour 0; colours start at 1")]
    ZeroColor(Vertex),
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Hermite normal form `(a, 0), (b, c)` of a rank-2 sublattice of `Z^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hnf {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Hnf {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        assert!(a > 0 && c > 0 && (0..a).contains(&b), "not in normal form: {a} {b} {c}");
        Hnf { a, b, c }
    }

    /// Normal form of the lattice spanned by `t1` and `t2`.
    pub fn from_basis(t1: Translation, t2: Translation) -> Result<Hnf, LatticeError> {
        let det = t1.a * t2.b - t2.a * t1.b;
        if det == 0 {
            return Err(LatticeError::Degenerate);
        }
        let (g, x, y) = ext_gcd(t1.b, t2.b);
        let (g, x, y) = if g < 0 { (-g, -x, -y) } else { (g, x, y) };
        // x t1 + y t2 has second coordinate g
        let wi = x * t1.a + y * t2.a;
        let a = (det / g).abs();
        Ok(Hnf::new(a, wi.rem_euclid(a), g))
    }

    pub fn index(self) -> u64 {
        (self.a * self.c) as u64
    }

    pub fn basis(self) -> [Translation; 2] {
        [Translation::new(self.a, 0), Translation::new(self.b, self.c)]
    }

    pub fn is_even(self) -> bool {
        self.basis().iter().all(|t| t.is_even())
    }

    /// Canonical representative of `v + Λ` in `[0, a) x [0, c)`.
    pub fn reduce(self, v: Vertex) -> Vertex {
        let j = v.j.rem_euclid(self.c);
        let y = (v.j - j) / self.c;
        Vertex::new((v.i - y * self.b).rem_euclid(self.a), j)
    }

    /// Position of a canonical representative in [`Hnf::representatives`].
    fn slot(self, rep: Vertex) -> usize {
        (rep.i * self.c + rep.j) as usize
    }

    /// The fundamental domain in sorted order.
    pub fn representatives(self) -> Vec<Vertex> {
        (0..self.a)
            .flat_map(|i| (0..self.c).map(move |j| Vertex::new(i, j)))
            .collect()
    }

    pub fn contains(self, t: Translation) -> bool {
        self.reduce(Vertex::new(t.a, t.b)) == Vertex::ORIGIN
    }
}

impl fmt::Display for Hnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({}, 0), ({}, {})]", self.a, self.b, self.c)
    }
}

/// All even sublattices of index `index` in `Z^2`, ordered by `(a, b)`.
pub fn even_hnfs(index: u64) -> Vec<Hnf> {
    let n = index as i64;
    let mut out = Vec::new();
    if n <= 0 {
        return out;
    }
    for a in (2..=n).step_by(2) {
        if n % a != 0 {
            continue;
        }
        let c = n / a;
        for b in 0..a {
            if (b + c) % 2 == 0 {
                out.push(Hnf::new(a, b, c));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    SingleCoset,
    MultiDomain,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::SingleCoset => "single-coset",
            SearchMode::MultiDomain => "multi-domain",
        })
    }
}

/// A periodic colouring given by a period lattice and colours on one
/// fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeColoring {
    pub l: u64,
    pub basis: [Translation; 2],
    /// Fundamental-domain cells (as written, not necessarily canonical) and colours.
    pub assignment: BTreeMap<Vertex, u32>,
    pub color_count: u32,
    hnf: Hnf,
    by_rep: HashMap<Vertex, u32>,
}

impl LatticeColoring {
    pub fn new(
        l: u64,
        basis: [Translation; 2],
        assignment: BTreeMap<Vertex, u32>,
    ) -> Result<Self, LatticeError> {
        for t in basis {
            if !t.is_even() {
                return Err(LatticeError::OddBasis(t.a, t.b));
            }
        }
        let hnf = Hnf::from_basis(basis[0], basis[1])?;
        if assignment.len() as u64 != hnf.index() {
            return Err(LatticeError::WrongCellCount { got: assignment.len(), index: hnf.index() });
        }
        let mut by_rep = HashMap::with_capacity(assignment.len());
        let mut owner: HashMap<Vertex, Vertex> = HashMap::new();
        for (&v, &color) in &assignment {
            if color == 0 {
                return Err(LatticeError::ZeroColor(v));
            }
            let rep = hnf.reduce(v);
            if let Some(&prev) = owner.get(&rep) {
                return Err(LatticeError::DuplicateCoset(prev, v));
            }
            owner.insert(rep, v);
            by_rep.insert(rep, color);
        }
        let color_count = assignment.values().copied().max().unwrap_or(0);
        Ok(LatticeColoring { l, basis, assignment, color_count, hnf, by_rep })
    }

    pub fn hnf(&self) -> Hnf {
        self.hnf
    }

    pub fn index(&self) -> u64 {
        self.hnf().index()
    }

    /// Colour of any vertex of the grid.
    pub fn color_of(&self, v: Vertex) -> u32 {
        self.by_rep[&self.hnf().reduce(v)]
    }

    pub fn distinct_colors(&self) -> usize {
        let mut c: Vec<u32> = self.assignment.values().copied().collect();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn mode(&self) -> SearchMode {
        if self.distinct_colors() as u64 == self.index() {
            SearchMode::SingleCoset
        } else {
            SearchMode::MultiDomain
        }
    }

    /// Materialises the colouring on the ball of radius `radius` around `center`.
    pub fn restrict(&self, center: Vertex, radius: u64) -> WindowColoring {
        let assignment = ball(center, radius).into_iter().map(|v| (v, self.color_of(v))).collect();
        WindowColoring::new(self.l, assignment)
    }
}

/// Every same-colour pair within distance `l`, seen from each fundamental
/// domain cell. A pair whose endpoints both lie in the domain is reported from
/// each endpoint.
///
/// Complete by translation invariance: any same-colour pair `(v, w)` with
/// `d(v, w) <= l` translates by an element of `Λ` onto a pair whose first
/// endpoint is a domain cell.
pub fn verify_lattice(c: &LatticeColoring) -> Verdict {
    let offsets = [ball_offsets(0, c.l), ball_offsets(1, c.l)];
    let mut violations = Vec::new();
    for (&u, &color) in &c.assignment {
        for &(di, dj, d) in &offsets[u.parity() as usize] {
            let t = u.offset(di, dj);
            if c.color_of(t) == color {
                violations.push(Violation { u, v: t, distance: d, color });
            }
        }
    }
    violations.sort();
    Verdict { violations }
}

/// True if no vertex is within distance `l` of another vertex of its own coset.
pub fn single_coset_valid(hnf: Hnf, l: u64) -> bool {
    [0u8, 1].into_iter().all(|parity| {
        let u = Vertex::new(i64::from(parity), 0);
        let rep = hnf.reduce(u);
        ball_offsets(parity, l)
            .into_iter()
            .all(|(di, dj, _)| hnf.reduce(u.offset(di, dj)) != rep)
    })
}

fn single_coset_coloring(hnf: Hnf, l: u64) -> LatticeColoring {
    let assignment = hnf
        .representatives()
        .into_iter()
        .zip(1u32..)
        .collect();
    LatticeColoring::new(l, hnf.basis(), assignment).expect("normal form is a valid basis")
}

/// Smallest-index single-coset colouring with index at most `max_index`.
/// Ties within an index go to the first normal form in `(a, b)` order.
pub fn search_lattice(l: u64, max_index: u64) -> Option<LatticeColoring> {
    (2..=max_index).step_by(2).find_map(|n| {
        even_hnfs(n)
            .into_par_iter()
            .find_first(|&h| single_coset_valid(h, l))
            .map(|h| single_coset_coloring(h, l))
    })
}

/// Conflict graph on the torus `Z^2 / Λ`: two cosets conflict if some pair
/// of their members is within distance `l`. `None` if a coset conflicts with
/// itself (no periodic colouring with this period exists).
pub fn quotient_graph(hnf: Hnf, l: u64) -> Option<(Vec<Vertex>, ConflictGraph)> {
    let reps = hnf.representatives();
    let offsets = [ball_offsets(0, l), ball_offsets(1, l)];
    let mut g = ConflictGraph::new(reps.len());
    for (n, &u) in reps.iter().enumerate() {
        for &(di, dj, _) in &offsets[u.parity() as usize] {
            let m = hnf.slot(hnf.reduce(u.offset(di, dj)));
            if m == n {
                return None;
            }
            g.add_edge(n, m);
        }
    }
    Some((reps, g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Candidate {
    SelfConflict,
    Colorable(LatticeColoring),
    NotColorable,
    Undecided,
}

fn evaluate_multi(hnf: Hnf, l: u64, budget: usize, node_limit: u64) -> Candidate {
    let Some((reps, g)) = quotient_graph(hnf, l) else {
        return Candidate::SelfConflict;
    };
    match color_within(&g, budget, node_limit) {
        Ok(Colorability::Colorable(colors)) => {
            let assignment = reps.into_iter().zip(colors).collect();
            Candidate::Colorable(
                LatticeColoring::new(l, hnf.basis(), assignment).expect("normal form is a valid basis"),
            )
        }
        Ok(Colorability::NotColorable) => Candidate::NotColorable,
        Err(_) => Candidate::Undecided,
    }
}

/// Outcome of a multi-domain search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDomainSearch {
    pub coloring: Option<LatticeColoring>,
    /// Lattices whose quotient was coloured or refuted before the answer.
    pub decided: usize,
    /// Lattices skipped because the node limit was hit, in enumeration order.
    pub undecided: Vec<Hnf>,
}

/// First lattice (by index, then normal form) whose quotient graph is
/// colourable with `budget` colours.
///
/// Candidates of one index are evaluated in parallel and then scanned in
/// enumeration order, so the result does not depend on scheduling.
pub fn search_lattice_multi(l: u64, max_index: u64, budget: usize, node_limit: u64) -> MultiDomainSearch {
    let mut decided = 0;
    let mut undecided = Vec::new();
    for n in (2..=max_index).step_by(2) {
        let hnfs = even_hnfs(n);
        let results: Vec<Candidate> = hnfs
            .par_iter()
            .map(|&h| evaluate_multi(h, l, budget, node_limit))
            .collect();
        for (h, r) in hnfs.into_iter().zip(results) {
            match r {
                Candidate::SelfConflict => {}
                Candidate::NotColorable => decided += 1,
                Candidate::Undecided => undecided.push(h),
                Candidate::Colorable(c) => {
                    return MultiDomainSearch { coloring: Some(c), decided: decided + 1, undecided };
                }
            }
        }
    }
    MultiDomainSearch { coloring: None, decided, undecided }
}

/// Result of [`search_with_fallback`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSearchReport {
    pub l: u64,
    pub target: u64,
    pub max_index: u64,
    /// Best single-coset colour count within `max_index`.
    pub single_coset_best: Option<u64>,
    pub mode: Option<SearchMode>,
    pub coloring: Option<LatticeColoring>,
    /// Lattices the multi-domain search could not decide within its node limit.
    pub undecided: Vec<Hnf>,
}

impl LatticeSearchReport {
    pub fn achieved(&self) -> bool {
        self.coloring.as_ref().is_some_and(|c| u64::from(c.color_count) <= self.target)
    }
}

/// Single-coset search first; if it cannot reach `target` colours, the
/// multi-domain search with budget `target`.
pub fn search_with_fallback(l: u64, max_index: u64, target: u64, node_limit: u64) -> LatticeSearchReport {
    let single = search_lattice(l, max_index);
    let single_coset_best = single.as_ref().map(|c| u64::from(c.color_count));
    let mut report = LatticeSearchReport {
        l,
        target,
        max_index,
        single_coset_best,
        mode: None,
        coloring: None,
        undecided: Vec::new(),
    };
    if single_coset_best.is_some_and(|n| n <= target) {
        report.mode = Some(SearchMode::SingleCoset);
        report.coloring = single;
        return report;
    }
    let multi = search_lattice_multi(l, max_index, target as usize, node_limit);
    report.undecided = multi.undecided;
    if let Some(c) = multi.coloring {
        report.mode = Some(SearchMode::MultiDomain);
        report.coloring = Some(c);
    }
    report
}
