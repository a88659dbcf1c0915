//! Exhaustive verification of colour-reuse bounds around a distance clique.
//!
//! Under a `2p`-distance colouring the colour of a vertex `v` may recur only
//! at vertices at distance at least `2p + 1` from `v`, and its recurrences
//! must themselves be pairwise at least `2p + 1` apart. The *spread* of `v`
//! into a target set is the largest such family of recurrences. "Reused at
//! most N times" is checked as `spread <= N`.
//!
//! All checks are centred on the origin, which is a right vertex; left-vertex
//! centres are isomorphic through the reflection used in [`crate::shell`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{ball, ball_size, distance, Vertex};
use crate::shell::{reuse_set, Ring};
use crate::span;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RangeError {
    #[error("p = {p} is below the minimum {min} for this check")]
    PTooSmall { p: u64, min: u64 },
    #[error("q = {q} outside 0..={max} for p = {p}")]
    QOutOfRange { p: u64, q: u64, max: u64 },
    #[error("r = {r} outside 1..={max} for p = {p}, q = {q}")]
    ROutOfRange { p: u64, q: u64, r: u64, max: i64 },
    #[error("empty q range")]
    EmptyRange,
}

/// A contiguous run of rings `F_first .. F_last` around the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRings {
    pub first: u64,
    pub last: u64,
}

impl TargetRings {
    pub fn single(k: u64) -> Self {
        TargetRings { first: k, last: k }
    }

    pub fn vertices(self) -> Vec<Vertex> {
        (self.first..=self.last)
            .flat_map(|k| Ring::build(Vertex::ORIGIN, k).expect("k >= 1").members().to_vec())
            .collect()
    }
}

impl fmt::Display for TargetRings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.last {
            write!(f, "F[{}]", self.first)
        } else {
            write!(f, "F[{}..={}]", self.first, self.last)
        }
    }
}

/// Largest family of pairwise-compatible reuse positions for one source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadBound {
    pub source: Vertex,
    pub p: u64,
    pub target: Option<TargetRings>,
    pub reuse_set: Vec<Vertex>,
    pub max_spread: usize,
    pub witness: Vec<Vertex>,
}

/// Maximum clique of the compatibility graph on `cands` by branch and bound.
struct CliqueSearch {
    words: usize,
    adj: Vec<u64>,
    best: Vec<usize>,
}

impl CliqueSearch {
    fn expand(&mut self, cands: &mut [u64], current: &mut Vec<usize>) {
        let mut remaining: usize = cands.iter().map(|w| w.count_ones() as usize).sum();
        if remaining == 0 {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        }
        for w in 0..self.words {
            while cands[w] != 0 {
                if current.len() + remaining <= self.best.len() {
                    return;
                }
                let b = cands[w].trailing_zeros() as usize;
                let v = w * 64 + b;
                cands[w] &= !(1u64 << b);
                remaining -= 1;
                let row = &self.adj[v * self.words..(v + 1) * self.words];
                let mut next: Vec<u64> = cands.iter().zip(row).map(|(c, r)| c & r).collect();
                current.push(v);
                self.expand(&mut next, current);
                current.pop();
            }
        }
    }
}

/// Largest subset of `set` whose members are pairwise at distance `>= min_gap`.
pub fn max_packing(set: &[Vertex], min_gap: u64) -> Vec<Vertex> {
    let n = set.len();
    if n == 0 {
        return Vec::new();
    }
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    for a in 0..n {
        for b in a + 1..n {
            if distance(set[a], set[b]) >= min_gap {
                adj[a * words + b / 64] |= 1 << (b % 64);
                adj[b * words + a / 64] |= 1 << (a % 64);
            }
        }
    }
    let mut cands = vec![0u64; words];
    for v in 0..n {
        cands[v / 64] |= 1 << (v % 64);
    }
    let mut search = CliqueSearch { words, adj, best: Vec::new() };
    search.expand(&mut cands, &mut Vec::new());
    let mut witness: Vec<Vertex> = search.best.into_iter().map(|i| set[i]).collect();
    witness.sort();
    witness
}

/// Spread of `source` into `target` for a `2p`-distance colouring.
pub fn max_spread(source: Vertex, p: u64, target: &[Vertex]) -> SpreadBound {
    let reuse = reuse_set(source, p, target).members;
    let witness = max_packing(&reuse, 2 * p + 1);
    SpreadBound { source, p, target: None, max_spread: witness.len(), reuse_set: reuse, witness }
}

/// Spread of `source` into a run of rings around the origin.
pub fn max_spread_into(source: Vertex, p: u64, rings: TargetRings) -> SpreadBound {
    let mut s = max_spread(source, p, &rings.vertices());
    s.target = Some(rings);
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ObservationId {
    Obs4,
    Obs5,
    Obs6,
    Obs7,
    Obs8,
    #[serde(rename = "Thm1-count")]
    Thm1Count,
    #[serde(rename = "Thm2-count")]
    Thm2Count,
    #[serde(rename = "Thm3-count")]
    Thm3Count,
}

impl fmt::Display for ObservationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObservationId::Obs4 => "Obs4",
            ObservationId::Obs5 => "Obs5",
            ObservationId::Obs6 => "Obs6",
            ObservationId::Obs7 => "Obs7",
            ObservationId::Obs8 => "Obs8",
            ObservationId::Thm1Count => "Thm1-count",
            ObservationId::Thm2Count => "Thm2-count",
            ObservationId::Thm3Count => "Thm3-count",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportVerdict {
    Pass,
    Fail,
}

/// One source (or one audited quantity) that breaks the checked bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    pub observed: i64,
    pub bound: i64,
    pub witness: Vec<Vertex>,
    pub detail: String,
}

/// A claimed quantity of a counting argument next to the value computed from
/// the actual sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub label: String,
    pub claimed: i64,
    pub actual: i64,
}

impl CertificateEntry {
    pub fn holds(&self) -> bool {
        self.claimed == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationReport {
    pub id: ObservationId,
    pub p: u64,
    pub params: BTreeMap<String, String>,
    pub verdict: ReportVerdict,
    /// Observed value -> number of sources attaining it.
    pub maxima: BTreeMap<u64, u64>,
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificate: Vec<CertificateEntry>,
}

impl ObservationReport {
    fn new(id: ObservationId, p: u64) -> Self {
        ObservationReport {
            id,
            p,
            params: BTreeMap::new(),
            verdict: ReportVerdict::Pass,
            maxima: BTreeMap::new(),
            checked: 0,
            counterexamples: Vec::new(),
            certificate: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn record(&mut self, value: u64) {
        *self.maxima.entry(value).or_default() += 1;
        self.checked += 1;
    }

    fn entry(&mut self, label: impl Into<String>, claimed: i64, actual: i64) {
        let e = CertificateEntry { label: label.into(), claimed, actual };
        if !e.holds() {
            self.counterexamples.push(Counterexample {
                source: None,
                q: None,
                r: None,
                observed: actual,
                bound: claimed,
                witness: Vec::new(),
                detail: format!("{}: claimed {}, actual {}", e.label, claimed, actual),
            });
        }
        self.certificate.push(e);
    }

    fn finish(mut self) -> Self {
        self.verdict = if self.counterexamples.is_empty() {
            ReportVerdict::Pass
        } else {
            ReportVerdict::Fail
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == ReportVerdict::Pass
    }

    pub fn max_observed(&self) -> Option<u64> {
        self.maxima.keys().next_back().copied()
    }
}

fn ring(k: u64) -> Ring {
    Ring::build(Vertex::ORIGIN, k).expect("k >= 1")
}

/// A vertex within `p` of the centre and one outside whose distances to the
/// centre sum to at most `2p` are themselves within `2p`.
pub fn verify_observation_4(p: u64) -> Result<ObservationReport, RangeError> {
    if p < 2 {
        return Err(RangeError::PTooSmall { p, min: 2 });
    }
    let mut report = ObservationReport::new(ObservationId::Obs4, p).param("window", 2 * p);
    let inner: Vec<(Vertex, u64)> =
        ball(Vertex::ORIGIN, p).into_iter().map(|v| (v, distance(Vertex::ORIGIN, v))).collect();
    let outer: Vec<(Vertex, u64)> = ball(Vertex::ORIGIN, 2 * p)
        .into_iter()
        .map(|v| (v, distance(Vertex::ORIGIN, v)))
        .filter(|&(_, d)| d > p)
        .collect();
    for &(v1, d1) in &inner {
        for &(v2, d2) in &outer {
            if d1 + d2 > 2 * p {
                continue;
            }
            let d = distance(v1, v2);
            report.record(d);
            if d > 2 * p {
                report.counterexamples.push(Counterexample {
                    source: Some(v1),
                    q: None,
                    r: None,
                    observed: d as i64,
                    bound: 2 * p as i64,
                    witness: vec![v2],
                    detail: format!("d1 + d2 = {} but d = {d}", d1 + d2),
                });
            }
        }
    }
    Ok(report.finish())
}

fn check_q_range(p: u64, qs: &RangeInclusive<u64>, max: i64) -> Result<(), RangeError> {
    if qs.is_empty() {
        return Err(RangeError::EmptyRange);
    }
    if max < 0 || *qs.end() as i64 > max {
        return Err(RangeError::QOutOfRange { p, q: *qs.end(), max: max.max(0) as u64 });
    }
    Ok(())
}

fn spread_report(
    id: ObservationId,
    p: u64,
    bound: usize,
    jobs: Vec<(Vertex, u64, Option<u64>, TargetRings)>,
) -> ObservationReport {
    let results: Vec<(SpreadBound, u64, Option<u64>)> = jobs
        .into_par_iter()
        .map(|(v, q, r, rings)| (max_spread_into(v, p, rings), q, r))
        .collect();
    let mut report = ObservationReport::new(id, p);
    for (s, q, r) in results {
        report.record(s.max_spread as u64);
        if s.max_spread > bound {
            report.counterexamples.push(Counterexample {
                source: Some(s.source),
                q: Some(q),
                r,
                observed: s.max_spread as i64,
                bound: bound as i64,
                detail: format!(
                    "colour of {} fits {} times into {}",
                    s.source,
                    s.max_spread,
                    s.target.expect("ring target")
                ),
                witness: s.witness,
            });
        }
    }
    report
}

/// Each corner of `F_{p-q}` spreads at most twice into `F_{p+q+1}`.
pub fn verify_corner_reuse(p: u64, qs: RangeInclusive<u64>) -> Result<ObservationReport, RangeError> {
    if p < 2 {
        return Err(RangeError::PTooSmall { p, min: 2 });
    }
    check_q_range(p, &qs, p as i64 - 2)?;
    let jobs = qs
        .clone()
        .flat_map(|q| {
            let src = ring(p - q);
            src.corners()
                .expect("p - q >= 2")
                .into_iter()
                .map(move |c| (c, q, None, TargetRings::single(p + q + 1)))
        })
        .collect();
    Ok(spread_report(ObservationId::Obs5, p, 2, jobs)
        .param("q", format!("{}..={}", qs.start(), qs.end()))
        .finish())
}

/// Each non-corner of `F_{p-q}` spreads at most once into `F_{p+q+1}`.
pub fn verify_noncorner_reuse(p: u64, qs: RangeInclusive<u64>) -> Result<ObservationReport, RangeError> {
    if p < 3 {
        return Err(RangeError::PTooSmall { p, min: 3 });
    }
    check_q_range(p, &qs, p as i64 - 3)?;
    let jobs = qs
        .clone()
        .flat_map(|q| {
            ring(p - q)
                .non_corners()
                .into_iter()
                .map(move |v| (v, q, None, TargetRings::single(p + q + 1)))
        })
        .collect();
    Ok(spread_report(ObservationId::Obs6, p, 1, jobs)
        .param("q", format!("{}..={}", qs.start(), qs.end()))
        .finish())
}

/// Reports for the shell-set bounds at one `(q, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellReuse {
    pub obs7: ObservationReport,
    /// Present only when `q <= p - 5`.
    pub obs8: Option<ObservationReport>,
}

fn r_max(p: u64, q: u64) -> i64 {
    ((p - q) / 2) as i64 - 1
}

fn shell_jobs(p: u64, q: u64, r: u64) -> (Vec<Vertex>, Vec<Vertex>, TargetRings) {
    let src = ring(p - q);
    let shell = src.shell_members(r);
    let rest = src.non_corners().into_iter().filter(|v| !shell.contains(v)).collect();
    (shell, rest, TargetRings { first: p + q + 1, last: p + q + 2 * r + 1 })
}

/// Members of `S^{2r}_{p-q}` spread at most twice into `F_{p+q+1} .. F_{p+q+2r+1}`;
/// the other non-corners of `F_{p-q}` spread at most once.
pub fn verify_shell_reuse(p: u64, q: u64, r: u64) -> Result<ShellReuse, RangeError> {
    if p < 4 {
        return Err(RangeError::PTooSmall { p, min: 4 });
    }
    if q > p - 4 {
        return Err(RangeError::QOutOfRange { p, q, max: p - 4 });
    }
    let max = r_max(p, q);
    if r == 0 || r as i64 > max {
        return Err(RangeError::ROutOfRange { p, q, r, max });
    }
    let (shell, rest, rings) = shell_jobs(p, q, r);
    let obs7 = spread_report(
        ObservationId::Obs7,
        p,
        2,
        shell.into_iter().map(|v| (v, q, Some(r), rings)).collect(),
    )
    .param("q", q)
    .param("r", r)
    .finish();
    let obs8 = (q + 5 <= p).then(|| {
        spread_report(
            ObservationId::Obs8,
            p,
            1,
            rest.into_iter().map(|v| (v, q, Some(r), rings)).collect(),
        )
        .param("q", q)
        .param("r", r)
        .finish()
    });
    Ok(ShellReuse { obs7, obs8 })
}

/// Every valid `(q, r)` of the shell-set bounds for one `p`, aggregated into
/// one report per bound.
pub fn verify_shell_reuse_all(p: u64) -> Result<(ObservationReport, ObservationReport), RangeError> {
    if p < 4 {
        return Err(RangeError::PTooSmall { p, min: 4 });
    }
    let mut jobs7 = Vec::new();
    let mut jobs8 = Vec::new();
    for q in 0..=p - 4 {
        for r in 1..=r_max(p, q).max(0) as u64 {
            let (shell, rest, rings) = shell_jobs(p, q, r);
            jobs7.extend(shell.into_iter().map(|v| (v, q, Some(r), rings)));
            if q + 5 <= p {
                jobs8.extend(rest.into_iter().map(|v| (v, q, Some(r), rings)));
            }
        }
    }
    let obs7 = spread_report(ObservationId::Obs7, p, 2, jobs7)
        .param("q", format!("0..={}", p - 4))
        .param("r", "1..=floor((p-q)/2)-1")
        .finish();
    let obs8 = spread_report(ObservationId::Obs8, p, 1, jobs8)
        .param("q", format!("0..={}", p.saturating_sub(5)))
        .param("r", "1..=floor((p-q)/2)-1")
        .finish();
    Ok((obs7, obs8))
}

/// Whether corners `c_a` and `c_b` of `F_p` can both have their colour placed
/// twice in `F_{p+1}` at the same time (four distinct positions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerPair {
    pub a: usize,
    pub b: usize,
    pub jointly_double: bool,
    /// Two positions for `c_a` followed by two for `c_b`, when possible.
    pub witness: Vec<Vertex>,
}

fn double_placements(source: Vertex, p: u64, target: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let reuse = reuse_set(source, p, target).members;
    let mut out = Vec::new();
    for (x, &u) in reuse.iter().enumerate() {
        for &w in &reuse[x + 1..] {
            if distance(u, w) > 2 * p {
                out.push((u, w));
            }
        }
    }
    out
}

pub fn corner_pair_compatibility(p: u64) -> Vec<CornerPair> {
    let inner = ring(p).corners().expect("p >= 2");
    let outer = ring(p + 1);
    let placements: Vec<Vec<(Vertex, Vertex)>> =
        inner.iter().map(|&c| double_placements(c, p, outer.members())).collect();
    let mut out = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            let witness = placements[a].iter().find_map(|&(x1, x2)| {
                placements[b]
                    .iter()
                    .find(|&&(y1, y2)| ![y1, y2].iter().any(|y| *y == x1 || *y == x2))
                    .map(|&(y1, y2)| vec![x1, x2, y1, y2])
            });
            out.push(CornerPair {
                a: a + 1,
                b: b + 1,
                jointly_double: witness.is_some(),
                witness: witness.unwrap_or_default(),
            });
        }
    }
    out
}

/// Corners of `F_p` whose colour can be placed twice in `F_{p+1}`, and where.
pub fn double_reuse_positions(p: u64) -> Vec<(usize, Vec<(usize, usize)>)> {
    let inner = ring(p).corners().expect("p >= 2");
    let outer = ring(p + 1);
    inner
        .iter()
        .enumerate()
        .map(|(r, &c)| {
            let pos = double_placements(c, p, outer.members())
                .into_iter()
                .map(|(u, w)| (outer.index_of(u).unwrap(), outer.index_of(w).unwrap()))
                .collect();
            (r + 1, pos)
        })
        .collect()
}

/// The counting step showing that `F_{p+1}` needs a colour unused in the
/// clique: spread audits, the same-class corner exclusion, and the budget.
pub fn first_new_color_count(p: u64) -> Result<ObservationReport, RangeError> {
    if p < 2 {
        return Err(RangeError::PTooSmall { p, min: 2 });
    }
    let mut report = ObservationReport::new(ObservationId::Thm1Count, p);
    let fp = ring(p);
    let next = ring(p + 1);
    report.entry("|F_p|", 3 * p as i64, fp.len() as i64);
    report.entry("|F_{p+1}|", 3 * p as i64 + 3, next.len() as i64);

    let corner_max = fp
        .corners()
        .unwrap()
        .iter()
        .map(|&c| max_spread(c, p, next.members()).max_spread)
        .max()
        .unwrap_or(0);
    let noncorner_max = fp
        .non_corners()
        .iter()
        .map(|&v| max_spread(v, p, next.members()).max_spread)
        .max()
        .unwrap_or(0);
    report.entry("max corner spread into F_{p+1}", 2, corner_max as i64);
    if p >= 3 {
        report.entry("max non-corner spread into F_{p+1}", 1, noncorner_max as i64);
    }

    for pair in corner_pair_compatibility(p) {
        report.record(u64::from(pair.jointly_double));
        let same_class = pair.a % 2 == pair.b % 2;
        if same_class && pair.jointly_double {
            report.counterexamples.push(Counterexample {
                source: fp.corner(pair.a),
                q: None,
                r: None,
                observed: 1,
                bound: 0,
                detail: format!("corners c{} and c{} are jointly doubly reusable", pair.a, pair.b),
                witness: pair.witness,
            });
        }
    }

    let nc = fp.non_corners().len() as i64;
    report.entry("non-corners of F_p", 3 * p as i64 - 6, nc);
    // one double corner per class, the other four corners once
    let budget = nc + 2 * 2 + 4;
    report.entry("colourable positions in F_{p+1}", 3 * p as i64 + 2, budget);
    report.entry("uncoloured positions", 1, next.len() as i64 - budget);
    Ok(report.finish())
}

/// The counting step for the second new colour, over `F_{p+2} ∪ F_{p+3}`.
pub fn second_new_color_count(p: u64) -> Result<ObservationReport, RangeError> {
    if p < 4 {
        return Err(RangeError::PTooSmall { p, min: 4 });
    }
    let mut report = ObservationReport::new(ObservationId::Thm2Count, p);
    let p_i = p as i64;
    let targets = ring(p + 2).len() + ring(p + 3).len();
    report.entry("|F_{p+2}| + |F_{p+3}|", 6 * p_i + 15, targets as i64);
    let nc = ring(p - 1).non_corners().len() + ring(p - 2).non_corners().len();
    report.entry("non-corners of F_{p-1} ∪ F_{p-2}", 6 * p_i - 21, nc as i64);
    let shell = ring(p).shell_members(1).len() as i64;
    report.entry("|S^2_p|", 12, shell);
    let corners_far = 6 * 2 + shell - 6;
    report.entry("corners of F_{p-2} with S^2_p in F_{p+3}", 18, corners_far);
    report.entry("corners of F_{p-1}", 12, 2 * ring(p - 1).corners().map_or(0, |c| c.len()) as i64);
    let colored = nc as i64 + corners_far + 12;
    report.entry("colourable positions", 6 * p_i + 9, colored);
    let left = targets as i64 - colored;
    report.entry("uncoloured before corner colours", 6, left);
    // two of the four once-used corner colours fit; the first new colour fits twice more
    report.entry("still uncoloured", 2, left - 2 - 2);
    Ok(report.finish())
}

/// The counting skeleton showing `floor(p/2)` new colours are needed.
///
/// For each `r <= floor(p/2) - 1` the claimed budgets are recomputed from the
/// actual ring, corner and shell-set sizes. `S_1` is the union of
/// `S^{2(r-k)}_{p-2k}` over `k < r` and `S_2` the union of
/// `S^{2(r-1-k)}_{p-1-2k}` over `k < r - 1`; each member set is claimed to
/// have 12 vertices.
pub fn theorem_color_count(p: u64) -> Result<ObservationReport, RangeError> {
    if p < 4 {
        return Err(RangeError::PTooSmall { p, min: 4 });
    }
    let mut report = ObservationReport::new(ObservationId::Thm3Count, p)
        .param("r", format!("1..={}", p / 2 - 1));
    let p_i = p as i64;
    for r in 1..p / 2 {
        let r_i = r as i64;
        let inner = ring(p - 2 * r);
        let nc = inner.non_corners().len() as i64;
        report.entry(format!("r={r}: non-corners of F_{{p-2r}}"), 3 * (p_i - 2 * r_i) - 6, nc);
        let s1: i64 = (0..r).map(|k| ring(p - 2 * k).shell_members(r - k).len() as i64).sum();
        report.entry(format!("r={r}: |S_1|"), 12 * r_i, s1);
        let budget = nc + s1 + 6;
        report.entry(format!("r={r}: positions from F_{{p-2r}} ∪ S_1"), 3 * p_i + 6 * r_i, budget);
        let outer = ring(p + 2 * r + 1).len() as i64;
        report.entry(format!("r={r}: |F_{{p+2r+1}}|"), 3 * p_i + 6 * r_i + 3, outer);
        report.entry(format!("r={r}: deficit in F_{{p+2r+1}}"), 3, outer - budget);

        let inner2 = ring(p - 2 * r + 1);
        let nc2 = inner2.non_corners().len() as i64;
        let s2: i64 = (0..r.saturating_sub(1))
            .map(|k| ring(p - 1 - 2 * k).shell_members(r - 1 - k).len() as i64)
            .sum();
        report.entry(format!("r={r}: |S_2|"), 12 * (r_i - 1), s2);
        let budget2 = nc2 + 12 + s2;
        report.entry(format!("r={r}: positions from F_{{p-2r+1}} ∪ S_2"), 3 * p_i + 6 * r_i - 3, budget2);
        let pair = ring(p + 2 * r).len() as i64 + outer;
        report.entry(format!("r={r}: |F_{{p+2r}} ∪ F_{{p+2r+1}}|"), 6 * p_i + 12 * r_i + 3, pair);
        report.entry(format!("r={r}: paired deficit"), 6, pair - budget - budget2);
    }
    let cert = span::certificate_unchecked(2 * p);
    report.entry("|D| + floor(p/2)", cert.formula_value as i64, (ball_size(p) + p / 2) as i64);
    Ok(report.finish())
}

/// Every check for one `p`, in a fixed order.
pub fn check_observations(p: u64) -> Result<Vec<ObservationReport>, RangeError> {
    if p < 4 {
        return Err(RangeError::PTooSmall { p, min: 4 });
    }
    let (obs7, obs8) = verify_shell_reuse_all(p)?;
    Ok(vec![
        verify_observation_4(p)?,
        verify_corner_reuse(p, 0..=p - 2)?,
        verify_noncorner_reuse(p, 0..=p - 3)?,
        obs7,
        obs8,
        first_new_color_count(p)?,
        second_new_color_count(p)?,
        theorem_color_count(p)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent maximum over all subsets.
    fn power_set_max(set: &[Vertex], gap: u64) -> usize {
        assert!(set.len() <= 20);
        (0u32..1 << set.len())
            .filter(|mask| {
                let chosen: Vec<Vertex> =
                    (0..set.len()).filter(|b| mask >> b & 1 == 1).map(|b| set[b]).collect();
                chosen.iter().enumerate().all(|(x, &u)| chosen[x + 1..].iter().all(|&w| distance(u, w) >= gap))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn spread_examples() {
        let f5 = ring(5);
        let f6 = ring(6);
        let s = max_spread(Vertex::new(0, 5), 5, f6.members());
        assert_eq!(s.max_spread, 2);
        for &v in &f5.non_corners() {
            assert!(max_spread(v, 5, f6.members()).max_spread <= 1);
        }
        assert_eq!(max_spread(Vertex::new(3, 1), 5, &[]).max_spread, 0);
    }

    #[test]
    fn branch_and_bound_matches_power_set() {
        for p in 3..=6u64 {
            for q in 0..=p - 2 {
                let target = ring(p + q + 1);
                for &v in ring(p - q).members() {
                    let s = max_spread(v, p, target.members());
                    if s.reuse_set.len() <= 20 {
                        assert_eq!(s.max_spread, power_set_max(&s.reuse_set, 2 * p + 1), "{v} p {p} q {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_validate_with_bfs() {
        let rings = TargetRings { first: 6, last: 8 };
        for &v in ring(5).members() {
            let s = max_spread_into(v, 5, rings);
            for (x, &u) in s.witness.iter().enumerate() {
                assert!(s.reuse_set.contains(&u));
                assert!(crate::grid::distance_bfs(u, v) > 10);
                for &w in &s.witness[x + 1..] {
                    assert!(crate::grid::distance_bfs(u, w) > 10);
                }
            }
        }
    }

    #[test]
    fn path_bound_holds() {
        for p in [2, 4, 5] {
            assert!(verify_observation_4(p).unwrap().passed());
        }
    }

    #[test]
    fn corner_reuse_p5() {
        let r = verify_corner_reuse(5, 0..=0).unwrap();
        assert!(r.passed());
        assert_eq!(r.maxima, BTreeMap::from([(2, 6)]));
        assert!(verify_corner_reuse(6, 1..=1).unwrap().passed());
        assert_eq!(
            verify_corner_reuse(5, 4..=4),
            Err(RangeError::QOutOfRange { p: 5, q: 4, max: 3 })
        );
    }

    #[test]
    fn noncorner_reuse() {
        assert!(verify_noncorner_reuse(5, 0..=0).unwrap().passed());
        assert!(verify_noncorner_reuse(7, 2..=2).unwrap().passed());
        assert_eq!(
            verify_noncorner_reuse(5, 3..=3),
            Err(RangeError::QOutOfRange { p: 5, q: 3, max: 2 })
        );
    }

    #[test]
    fn shell_reuse_counterexample_p5() {
        // v^{15} of F_5 reaches three pairwise-compatible positions in F_6..F_8
        let r = verify_shell_reuse(5, 0, 1).unwrap();
        assert!(!r.obs7.passed());
        let v = ring(5).member(15);
        assert_eq!(v, Vertex::new(-1, 4));
        let cx = r.obs7.counterexamples.iter().find(|c| c.source == Some(v)).unwrap();
        assert_eq!(cx.observed, 3);
        assert_eq!(
            max_spread_into(v, 5, TargetRings { first: 6, last: 8 }).max_spread,
            3
        );
        assert!(r.obs8.is_some());
    }

    #[test]
    fn shell_reuse_range_errors() {
        assert_eq!(
            verify_shell_reuse(5, 2, 1),
            Err(RangeError::QOutOfRange { p: 5, q: 2, max: 1 })
        );
        assert_eq!(
            verify_shell_reuse(6, 0, 3),
            Err(RangeError::ROutOfRange { p: 6, q: 0, r: 3, max: 2 })
        );
        assert!(verify_shell_reuse(6, 1, 1).unwrap().obs8.is_some());
        assert!(verify_shell_reuse(6, 2, 1).unwrap().obs8.is_none());
    }

    #[test]
    fn same_class_corners_exclude_each_other() {
        for p in 4..=7 {
            for pair in corner_pair_compatibility(p) {
                if pair.a % 2 == pair.b % 2 {
                    assert!(!pair.jointly_double, "p {p} c{} c{}", pair.a, pair.b);
                } else {
                    assert_eq!(pair.witness.len(), 4);
                }
            }
        }
    }

    #[test]
    fn corner_double_reuse_goes_to_the_two_opposite_corners() {
        let outer = ring(6);
        let want = |r: usize| {
            let c = outer.corner_indices().unwrap();
            let (x, y) = (c[(r + 1) % 6], c[(r + 3) % 6]);
            (x.min(y), x.max(y))
        };
        for (r, pos) in double_reuse_positions(5) {
            assert_eq!(pos, vec![want(r)], "c{r}");
        }
    }

    #[test]
    fn first_new_color_certificate_passes() {
        for p in 4..=8 {
            let r = first_new_color_count(p).unwrap();
            assert!(r.passed(), "{:?}", r.counterexamples);
        }
    }

    #[test]
    fn color_count_arithmetic() {
        let r = theorem_color_count(5).unwrap();
        let get = |label: &str| r.certificate.iter().find(|e| e.label == label).unwrap().clone();
        assert_eq!(get("r=1: positions from F_{p-2r} ∪ S_1").claimed, 21);
        assert_eq!(get("r=1: |F_{p+2r+1}|").actual, 24);
        assert_eq!(get("|D| + floor(p/2)").actual, 48);
        // |S^2_5| is 9, not 12
        assert_eq!(get("r=1: |S_1|").actual, 9);
        assert!(!r.passed());
        let r4 = theorem_color_count(4).unwrap();
        assert_eq!(r4.certificate.last().unwrap().actual, 33);
    }

    #[test]
    fn report_verdict_matches_counterexamples() {
        for report in check_observations(5).unwrap() {
            assert_eq!(report.passed(), report.counterexamples.is_empty(), "{}", report.id);
        }
    }
}
