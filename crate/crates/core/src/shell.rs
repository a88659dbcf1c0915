//! Rings, distance cliques, corner shells and reuse sets around a centre vertex.
//!
//! All constructions are written for a right-vertex centre. A left-vertex
//! centre is handled through the reflection `(di, dj) -> (-di, dj)` of
//! offsets, which swaps handedness and is an automorphism of the grid.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{ball, distance, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("ring radius k must be at least 1")]
    ZeroRing,
    #[error("clique radius p must be at least 1")]
    ZeroClique,
    #[error("shell sets need k >= 5 (got k = {0})")]
    ShellRingTooSmall(u64),
    #[error("shell index h = {h} outside 1..={max} for k = {k}")]
    ShellIndexOutOfRange { k: u64, h: u64, max: u64 },
    #[error("h = {h} = floor(k/2) for k = {k}: the set would contain corner vertices")]
    ShellReachesCorners { k: u64, h: u64 },
}

/// Local frame around a centre: maps right-centre offsets to world vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frame {
    center: Vertex,
    mirrored: bool,
}

impl Frame {
    pub fn new(center: Vertex) -> Self {
        Frame { center, mirrored: !center.is_right() }
    }

    fn sign(self) -> i64 {
        if self.mirrored {
            -1
        } else {
            1
        }
    }

    pub fn to_world(self, di: i64, dj: i64) -> Vertex {
        self.center.offset(self.sign() * di, dj)
    }

    pub fn to_local(self, v: Vertex) -> (i64, i64) {
        (self.sign() * (v.i - self.center.i), v.j - self.center.j)
    }
}

fn ceil_half(k: u64) -> u64 {
    k.div_ceil(2)
}

/// The `3k` vertices at distance `k` from a centre, in ring order
/// `v^1 .. v^{3k}`, split into six consecutive groups `G^1 .. G^6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ring {
    center: Vertex,
    k: u64,
    members: Vec<Vertex>,
    /// Group `r` occupies `members[bounds[r-1]..bounds[r]]`.
    bounds: [usize; 7],
    /// 1-based member indices of corners `c1..c6`, present for `k >= 2`.
    corners: Option<[usize; 6]>,
}

impl Ring {
    pub fn build(center: Vertex, k: u64) -> Result<Ring, GeometryError> {
        if k == 0 {
            return Err(GeometryError::ZeroRing);
        }
        let frame = Frame::new(center);
        let (c, f) = (ceil_half(k) as i64, (k / 2) as i64);
        let k = k as i64;
        let mut local = Vec::with_capacity(3 * k as usize);
        let mut bounds = [0usize; 7];

        local.extend((1..=c).map(|m| (m - 1, k - m + 1)));
        bounds[1] = local.len();
        local.extend((1..=f).map(|m| (c, f - 2 * m + 2)));
        bounds[2] = local.len();
        local.extend((1..=c).map(|m| (c - m + 1, -f - m + 1)));
        bounds[3] = local.len();
        local.extend((1..=f).map(|m| (-m + 1, -k + m - 1)));
        bounds[4] = local.len();
        local.extend((1..=c).map(|m| (-f, -c + 2 * m - 2)));
        bounds[5] = local.len();
        local.extend((1..=f).map(|m| (-f + m - 1, c + m - 1)));
        bounds[6] = local.len();

        let corners = if k >= 2 {
            let targets = [(0, k), (c, f), (c, -f), (0, -k), (-f, -c), (-f, c)];
            let mut idx = [0usize; 6];
            for (slot, target) in idx.iter_mut().zip(targets) {
                *slot = local
                    .iter()
                    .position(|&off| off == target)
                    .expect("corner coordinates lie on the ring")
                    + 1;
            }
            Some(idx)
        } else {
            None
        };

        let members = local.into_iter().map(|(di, dj)| frame.to_world(di, dj)).collect();
        Ok(Ring { center, k: k as u64, members, bounds, corners })
    }

    pub fn center(&self) -> Vertex {
        self.center
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member `v^n`, 1-based.
    pub fn member(&self, n: usize) -> Vertex {
        self.members[n - 1]
    }

    /// 1-based ring index of `v`, if it is a member.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.members.iter().position(|&m| m == v).map(|p| p + 1)
    }

    /// Group `G^r`, `r` in `1..=6`.
    pub fn group(&self, r: usize) -> &[Vertex] {
        assert!((1..=6).contains(&r), "group index {r} out of 1..=6");
        &self.members[self.bounds[r - 1]..self.bounds[r]]
    }

    /// 1-based indices of `c1..c6`; `None` for `k = 1`.
    pub fn corner_indices(&self) -> Option<[usize; 6]> {
        self.corners
    }

    pub fn corners(&self) -> Option<[Vertex; 6]> {
        self.corners.map(|idx| idx.map(|n| self.member(n)))
    }

    /// Corner `c_r`, `r` in `1..=6`.
    pub fn corner(&self, r: usize) -> Option<Vertex> {
        self.corners().map(|c| c[r - 1])
    }

    pub fn is_corner(&self, v: Vertex) -> bool {
        self.corners().is_some_and(|c| c.contains(&v))
    }

    /// Members that are not corners, in ring order. Empty for `k = 1`.
    pub fn non_corners(&self) -> Vec<Vertex> {
        match self.corners() {
            Some(c) => self.members.iter().copied().filter(|v| !c.contains(v)).collect(),
            None => Vec::new(),
        }
    }

    /// Non-corner members at distance exactly `2h` from some corner, in ring
    /// order. No range check on `h`; see [`build_shell`] for the checked form.
    pub fn shell_members(&self, h: u64) -> Vec<Vertex> {
        let Some(corners) = self.corners() else {
            return Vec::new();
        };
        self.members
            .iter()
            .copied()
            .filter(|v| !corners.contains(v))
            .filter(|&v| corners.iter().any(|&c| distance(v, c) == 2 * h))
            .collect()
    }
}

pub fn build_ring(center: Vertex, k: u64) -> Result<Ring, GeometryError> {
    Ring::build(center, k)
}

/// The radius-`p` ball, whose members are pairwise within `2p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceClique {
    pub center: Vertex,
    pub p: u64,
    pub members: Vec<Vertex>,
    /// Largest pairwise distance among members, computed at construction.
    pub diameter: u64,
}

impl DistanceClique {
    pub fn contains(&self, v: Vertex) -> bool {
        distance(self.center, v) <= self.p
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn build_clique(center: Vertex, p: u64) -> Result<DistanceClique, GeometryError> {
    if p == 0 {
        return Err(GeometryError::ZeroClique);
    }
    let members = ball(center, p);
    let mut diameter = 0;
    for (a, &u) in members.iter().enumerate() {
        for &v in &members[a + 1..] {
            diameter = diameter.max(distance(u, v));
        }
    }
    assert!(diameter <= 2 * p, "ball of radius {p} has diameter {diameter}");
    Ok(DistanceClique { center, p, members, diameter })
}

/// `S^{2h}` of the ring `F_{x,k}`: non-corners at distance `2h` from a corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellSet {
    pub center: Vertex,
    pub k: u64,
    pub h: u64,
    pub members: Vec<Vertex>,
}

fn check_shell_range(k: u64, h: u64) -> Result<(), GeometryError> {
    if k < 5 {
        return Err(GeometryError::ShellRingTooSmall(k));
    }
    if h == k / 2 {
        return Err(GeometryError::ShellReachesCorners { k, h });
    }
    let max = k / 2 - 1;
    if h == 0 || h > max {
        return Err(GeometryError::ShellIndexOutOfRange { k, h, max });
    }
    Ok(())
}

pub fn build_shell(center: Vertex, k: u64, h: u64) -> Result<ShellSet, GeometryError> {
    check_shell_range(k, h)?;
    let ring = Ring::build(center, k)?;
    Ok(ShellSet { center, k, h, members: ring.shell_members(h) })
}

/// `U^{2h}`: the corners together with `S^2 .. S^{2h}`, in ring order.
pub fn build_u_set(center: Vertex, k: u64, h: u64) -> Result<Vec<Vertex>, GeometryError> {
    check_shell_range(k, h)?;
    let ring = Ring::build(center, k)?;
    let corners = ring.corners().expect("k >= 5 has corners");
    let mut keep = vec![false; ring.len()];
    for c in corners {
        keep[ring.index_of(c).unwrap() - 1] = true;
    }
    for s in 1..=h {
        for v in ring.shell_members(s) {
            keep[ring.index_of(v).unwrap() - 1] = true;
        }
    }
    Ok(ring
        .members()
        .iter()
        .zip(keep)
        .filter_map(|(&v, k)| k.then_some(v))
        .collect())
}

/// Vertices of a target set where the colour of `source` may recur under a
/// `2p`-distance colouring: those at distance at least `2p + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReuseSet {
    pub source: Vertex,
    pub p: u64,
    pub members: Vec<Vertex>,
}

/// Filters `target` by distance `>= 2p + 1` from `source`, keeping order.
///
/// The target is expected to avoid the clique around the relevant centre;
/// that context is not known here and is not checked.
pub fn reuse_set(source: Vertex, p: u64, target: &[Vertex]) -> ReuseSet {
    let members = target
        .iter()
        .copied()
        .filter(|&u| distance(u, source) > 2 * p)
        .collect();
    ReuseSet { source, p, members }
}
