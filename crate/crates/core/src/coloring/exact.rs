//! Exact k-colourability by branch and bound.
//!
//! Vertices are chosen greatest-saturation first (ties: most uncoloured
//! neighbours, then lowest index). Colours are tried in increasing order and a
//! fresh colour is only ever the next unused index, which removes colour
//! permutation symmetry. The search is deterministic.

use thiserror::Error;

/// Undirected simple graph stored as adjacency bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ConflictGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        ConflictGraph { n, words, bits: vec![0; n * words] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self loop on {a}");
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
        self.bits[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// True if `colors` (1-based, one per vertex) is a proper colouring.
    pub fn is_proper(&self, colors: &[u32]) -> bool {
        colors.len() == self.n
            && (0..self.n).all(|v| self.neighbors(v).all(|w| colors[v] != colors[w]))
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("branch-and-bound node limit of {limit} exceeded")]
pub struct NodeLimitExceeded {
    pub limit: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Colorability {
    /// A proper colouring with colours in `1..=budget`.
    Colorable(Vec<u32>),
    NotColorable,
}

struct Search<'g> {
    graph: &'g ConflictGraph,
    budget: usize,
    color: Vec<u32>,
    /// `forbid[v * (budget + 1) + c]` counts neighbours of `v` coloured `c`.
    forbid: Vec<u32>,
    saturation: Vec<u32>,
    open_degree: Vec<u32>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.graph.len() {
            if self.color[v] != 0 {
                continue;
            }
            best = match best {
                None => Some(v),
                Some(b) => {
                    let kv = (self.saturation[v], self.open_degree[v]);
                    let kb = (self.saturation[b], self.open_degree[b]);
                    if kv > kb {
                        Some(v)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.color[v] = c;
        let stride = self.budget + 1;
        for w in self.graph.neighbors(v) {
            self.open_degree[w] -= 1;
            let slot = &mut self.forbid[w * stride + c as usize];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = 0;
        let stride = self.budget + 1;
        for w in self.graph.neighbors(v) {
            self.open_degree[w] += 1;
            let slot = &mut self.forbid[w * stride + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self, used: u32) -> Result<bool, NodeLimitExceeded> {
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        if self.saturation[v] as usize >= self.budget {
            return Ok(false);
        }
        let stride = self.budget + 1;
        let top = (used + 1).min(self.budget as u32);
        for c in 1..=top {
            if self.forbid[v * stride + c as usize] != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(NodeLimitExceeded { limit: self.limit });
            }
            self.assign(v, c);
            if self.run(used.max(c))? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }
}

/// Decides whether `graph` has a proper colouring with at most `budget` colours.
pub fn color_within(
    graph: &ConflictGraph,
    budget: usize,
    node_limit: u64,
) -> Result<Colorability, NodeLimitExceeded> {
    if graph.is_empty() {
        return Ok(Colorability::Colorable(Vec::new()));
    }
    if budget == 0 {
        return Ok(Colorability::NotColorable);
    }
    let n = graph.len();
    let mut search = Search {
        graph,
        budget,
        color: vec![0; n],
        forbid: vec![0; n * (budget + 1)],
        saturation: vec![0; n],
        open_degree: (0..n).map(|v| graph.degree(v) as u32).collect(),
        nodes: 0,
        limit: node_limit,
    };
    if search.run(0)? {
        debug_assert!(graph.is_proper(&search.color));
        Ok(Colorability::Colorable(search.color))
    } else {
        Ok(Colorability::NotColorable)
    }
}

/// Smallest budget in `lower..=upper` for which the graph is colourable.
pub fn chromatic_number_in(
    graph: &ConflictGraph,
    lower: usize,
    upper: usize,
    node_limit: u64,
) -> Result<Option<(usize, Vec<u32>)>, NodeLimitExceeded> {
    for b in lower..=upper {
        if let Colorability::Colorable(c) = color_within(graph, b, node_limit)? {
            return Ok(Some((b, c)));
        }
    }
    Ok(None)
}
