//! The cover graph of a graded poset, matchings on it, and detection of flat
//! alternating cycles through the orientation trick: unmatched cover edges
//! point up a rank, matched ones point down, and a flat alternating cycle is
//! exactly a directed cycle.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number_theory::SpfTable;
use crate::poset::GradedPosetInstance;
use crate::weight::{Score, Weight};

/// A cover pair `lower ⋖ upper`, weighted by the upper element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverEdge<W> {
    pub lower: usize,
    pub upper: usize,
    pub weight: W,
}

#[derive(Debug, Clone)]
pub struct CoverGraph<W> {
    /// `None` for slots that are not vertices.
    rank: Vec<Option<u32>>,
    edges: Vec<CoverEdge<W>>,
    /// Incident edge ids per slot.
    adjacency: Vec<Vec<usize>>,
}

impl<W: Weight> CoverGraph<W> {
    /// Assemble from per-slot ranks and cover edges. Every edge must join
    /// two vertices on adjacent ranks, lower first.
    pub fn from_parts(rank: Vec<Option<u32>>, edges: Vec<CoverEdge<W>>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); rank.len()];
        for (id, e) in edges.iter().enumerate() {
            let (Some(rl), Some(ru)) = (
                rank.get(e.lower).copied().flatten(),
                rank.get(e.upper).copied().flatten(),
            ) else {
                return Err(Error::InvalidPoset(format!(
                    "edge ({}, {}) leaves the vertex set",
                    e.lower, e.upper
                )));
            };
            if rl + 1 != ru {
                return Err(Error::InvalidPoset(format!(
                    "edge ({}, {}) joins ranks {rl} and {ru}",
                    e.lower, e.upper
                )));
            }
            adjacency[e.lower].push(id);
            adjacency[e.upper].push(id);
        }
        Ok(CoverGraph {
            rank,
            edges,
            adjacency,
        })
    }

    pub fn slots(&self) -> usize {
        self.rank.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank.len()).filter(|&v| self.rank[v].is_some())
    }

    pub fn vertex_count(&self) -> usize {
        self.rank.iter().filter(|r| r.is_some()).count()
    }

    pub fn rank(&self, v: usize) -> Option<u32> {
        self.rank.get(v).copied().flatten()
    }

    pub fn edges(&self) -> &[CoverEdge<W>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &CoverEdge<W> {
        &self.edges[id]
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Id of the edge joining `a` and `b`, in either order.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = if self.adjacency.get(a)?.len() <= self.adjacency.get(b)?.len() {
            (a, b)
        } else {
            (b, a)
        };
        self.adjacency[x].iter().copied().find(|&id| {
            let e = &self.edges[id];
            (e.lower == x && e.upper == y) || (e.lower == y && e.upper == x)
        })
    }

    /// One `lower upper weight` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.lower, e.upper, e.weight).expect("string write");
        }
        out
    }
}

/// Parse the `lower upper weight` edge list format; blank lines and `#`
/// comments are skipped.
pub fn parse_edge_list<W: FromStr>(text: &str) -> std::result::Result<Vec<CoverEdge<W>>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || format!("line {}: expected `lower upper weight`", lineno + 1);
        let [lower, upper, weight] = fields[..] else {
            return Err(bad());
        };
        out.push(CoverEdge {
            lower: lower.parse().map_err(|_| bad())?,
            upper: upper.parse().map_err(|_| bad())?,
            weight: weight.parse().map_err(|_| bad())?,
        });
    }
    Ok(out)
}

/// The cover graph of `{1, ..., n}` under divisibility: edges `(x, p·x)` for
/// every prime `p` with `p·x <= n`, sorted by `(lower, upper)`.
pub fn build_divisor_cover_graph(n: usize, spf: &SpfTable) -> CoverGraph<Score> {
    assert!(spf.n_max() >= n, "sieve does not cover {n}");
    let omega = spf.all_ranks();
    let mut primes = spf.primes_desc(n);
    primes.reverse();
    let mut rank = vec![None; n + 1];
    for (k, r) in rank.iter_mut().enumerate().skip(1) {
        *r = Some(omega[k]);
    }
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); n + 1];
    for x in 1..=n {
        for &p in primes.iter().take_while(|&&p| p * x <= n) {
            let id = edges.len();
            edges.push(CoverEdge {
                lower: x,
                upper: p * x,
                weight: (p * x) as Score,
            });
            adjacency[x].push(id);
            adjacency[p * x].push(id);
        }
    }
    CoverGraph {
        rank,
        edges,
        adjacency,
    }
}

pub fn build_poset_cover_graph<W: Weight>(inst: &GradedPosetInstance<W>) -> CoverGraph<W> {
    let rank = inst.ranks().iter().map(|&r| Some(r)).collect();
    let edges = inst
        .covers()
        .into_iter()
        .map(|(q, p)| CoverEdge {
            lower: q,
            upper: p,
            weight: inst.weights()[p],
        })
        .collect();
    CoverGraph::from_parts(rank, edges).expect("covers of a graded poset step one rank")
}

/// Endpoint-disjoint set of cover edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matching<W> {
    pairs: Vec<CoverEdge<W>>,
}

impl<W: Weight> Matching<W> {
    pub fn empty() -> Self {
        Matching { pairs: Vec::new() }
    }

    pub fn new(pairs: Vec<CoverEdge<W>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &pairs {
            if e.lower == e.upper || !seen.insert(e.lower) || !seen.insert(e.upper) {
                return Err(Error::NotAMatching(format!(
                    "edge ({}, {}) shares an endpoint",
                    e.lower, e.upper
                )));
            }
        }
        Ok(Matching { pairs })
    }

    /// Matching from edge ids of `g`.
    pub fn from_edge_ids(g: &CoverGraph<W>, ids: &[usize]) -> Result<Self> {
        Self::new(ids.iter().map(|&id| *g.edge(id)).collect())
    }

    pub fn pairs(&self) -> &[CoverEdge<W>] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn weight(&self) -> W {
        self.pairs.iter().map(|e| e.weight).sum()
    }

    /// Upper endpoints, i.e. the picks of the corresponding play, ascending.
    pub fn uppers(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pairs.iter().map(|e| e.upper).collect();
        v.sort_unstable();
        v
    }

    pub fn sorted(mut self) -> Self {
        self.pairs.sort_by_key(|e| (e.lower, e.upper));
        self
    }

    /// Edge ids in `g`, checking that every pair is an edge of `g` with the
    /// graph's weight.
    pub fn edge_ids_in(&self, g: &CoverGraph<W>) -> Result<Vec<usize>> {
        self.pairs
            .iter()
            .map(|e| {
                let id = g.edge_between(e.lower, e.upper).ok_or_else(|| {
                    Error::NotAMatching(format!("({}, {}) is not a cover edge", e.lower, e.upper))
                })?;
                let ge = g.edge(id);
                if ge.lower != e.lower || ge.weight != e.weight {
                    return Err(Error::NotAMatching(format!(
                        "({}, {}) disagrees with the graph edge",
                        e.lower, e.upper
                    )));
                }
                Ok(id)
            })
            .collect()
    }

    pub fn without(&self, drop: impl Fn(&CoverEdge<W>) -> bool) -> Self {
        Matching {
            pairs: self.pairs.iter().filter(|e| !drop(e)).copied().collect(),
        }
    }
}

pub fn matching_weight<W: Weight>(m: &Matching<W>) -> W {
    m.weight()
}

/// Cover edges oriented by a matching: unmatched edges point lower to upper,
/// matched edges upper to lower. Arc `i` is cover edge `i`.
#[derive(Debug, Clone)]
pub struct OrientedGraph {
    arcs: Vec<(usize, usize)>,
    matched: Vec<bool>,
    out: Vec<Vec<usize>>,
}

impl OrientedGraph {
    pub fn new<W: Weight>(g: &CoverGraph<W>, m: &Matching<W>) -> Result<Self> {
        let mut matched = vec![false; g.edges().len()];
        for id in m.edge_ids_in(g)? {
            matched[id] = true;
        }
        Ok(Self::from_flags(g, matched))
    }

    pub(crate) fn from_flags<W: Weight>(g: &CoverGraph<W>, matched: Vec<bool>) -> Self {
        let mut out = vec![Vec::new(); g.slots()];
        let arcs: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .zip(&matched)
            .enumerate()
            .map(|(id, (e, &m))| {
                let arc = if m {
                    (e.upper, e.lower)
                } else {
                    (e.lower, e.upper)
                };
                out[arc.0].push(id);
                arc
            })
            .collect();
        OrientedGraph { arcs, matched, out }
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn is_matched(&self, arc: usize) -> bool {
        self.matched[arc]
    }

    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn vertex_slots(&self) -> usize {
        self.out.len()
    }

    /// Arc ids of some directed cycle, in traversal order. Iterative DFS.
    pub fn find_cycle_arcs(&self) -> Option<Vec<usize>> {
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let n = self.out.len();
        let mut color = vec![WHITE; n];
        let mut stack_pos = vec![usize::MAX; n];
        // (vertex, next out-arc index); entry_arcs[i] entered stack[i + 1].
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut entry_arcs: Vec<usize> = Vec::new();
        for root in 0..n {
            if color[root] != WHITE || self.out[root].is_empty() {
                continue;
            }
            color[root] = GRAY;
            stack_pos[root] = 0;
            stack.push((root, 0));
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&arc) = self.out[v].get(*next) {
                    *next += 1;
                    let w = self.arcs[arc].1;
                    match color[w] {
                        WHITE => {
                            color[w] = GRAY;
                            stack_pos[w] = stack.len();
                            stack.push((w, 0));
                            entry_arcs.push(arc);
                        }
                        GRAY => {
                            let mut cycle = entry_arcs[stack_pos[w]..].to_vec();
                            cycle.push(arc);
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    color[v] = BLACK;
                    stack.pop();
                    entry_arcs.pop();
                }
            }
        }
        None
    }

    pub fn has_cycle(&self) -> bool {
        self.find_cycle_arcs().is_some()
    }
}

/// Some flat alternating cycle of `m` in `g` as a vertex list, or `None`.
pub fn find_flat_alternating_cycle<W: Weight>(
    g: &CoverGraph<W>,
    m: &Matching<W>,
) -> Result<Option<Vec<usize>>> {
    let og = OrientedGraph::new(g, m)?;
    Ok(og
        .find_cycle_arcs()
        .map(|arcs| arcs.iter().map(|&a| og.arcs()[a].0).collect()))
}
