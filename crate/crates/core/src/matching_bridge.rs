//! Conversions between legal move sequences and flat-alternating-cycle-free
//! matchings on the cover graph.
//!
//! A sequence becomes a matching by pairing every pick with the topmost
//! element it taxed. A matching becomes a sequence either by the rank-level
//! peeling order (divisor pot, near-linear) or by the generic chase order
//! (explicit posets).

use std::collections::VecDeque;

use crate::arena::{Arena, DivisorPot};
use crate::cover_graph::{build_divisor_cover_graph, CoverEdge, CoverGraph, Matching};
use crate::error::{Error, Result};
use crate::game::{play_sequence, GameState, MoveSequence};
use crate::number_theory::SpfTable;
use crate::poset::GradedPosetInstance;
use crate::weight::Weight;

/// A played sequence together with its matching and final scores.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedPlay<W> {
    pub sequence: MoveSequence,
    pub matching: Matching<W>,
    pub score: W,
    pub taxman: W,
}

impl<W: Weight> OrderedPlay<W> {
    /// Replay `order` on `arena` and attach the matching it induces.
    pub fn from_order<A: Arena<Weight = W>>(arena: A, order: &[usize]) -> Result<Self> {
        let state = play_sequence(arena, order)?;
        let matching = matching_from_history(state.arena(), state.history());
        Ok(OrderedPlay {
            sequence: state.history().clone(),
            matching,
            score: state.player_score(),
            taxman: state.taxman_score(),
        })
    }

    pub fn picks(&self) -> Vec<usize> {
        self.sequence.picks()
    }
}

/// Pair each pick with the topmost element it taxed.
pub fn matching_from_history<A: Arena>(arena: &A, history: &MoveSequence) -> Matching<A::Weight> {
    let pairs = history
        .moves
        .iter()
        .map(|m| CoverEdge {
            lower: arena.topmost(&m.taxed),
            upper: m.pick,
            weight: arena.weight(m.pick),
        })
        .collect();
    Matching::new(pairs).expect("tax sets of distinct moves are disjoint")
}

/// Replay `picks` on `arena` and return the induced matching, checking that
/// every pair is an edge of `g`.
pub fn sequence_to_matching<A: Arena>(
    arena: A,
    picks: &[usize],
    g: &CoverGraph<A::Weight>,
) -> Result<Matching<A::Weight>> {
    let mut state = GameState::new(arena);
    for &p in picks {
        state.apply_pick(p)?;
    }
    let m = matching_from_history(state.arena(), state.history());
    m.edge_ids_in(g)?;
    Ok(m)
}

/// Order a flat-alternating-cycle-free matching on the divisor cover graph
/// into a legal pick sequence.
///
/// Pairs are grouped by the rank of their lower end and the groups are
/// emitted from the lowest rank up. Within a group, an upper vertex is safe
/// to pick once its own partner is its only matched neighbour in the lower
/// rank; such vertices are peeled off through a FIFO queue.
pub fn order_matching_standard<W: Weight>(
    m: &Matching<W>,
    g: &CoverGraph<W>,
    spf: &SpfTable,
) -> Result<Vec<usize>> {
    let slots = g.slots();
    let n = slots.saturating_sub(1);
    assert!(n < 2 || spf.n_max() >= n, "sieve does not cover the graph");
    const NONE: u32 = u32::MAX;

    // Validate arithmetically: upper = p * lower with p prime.
    let mut below = vec![NONE; slots];
    for e in m.pairs() {
        let (x, y) = (e.lower, e.upper);
        if x == 0 || y > n || y % x != 0 || !spf.is_prime(y / x) {
            return Err(Error::NotAMatching(format!("({x}, {y}) is not a cover edge")));
        }
        below[y] = x as u32;
    }

    // Bucket pairs by the rank of the lower end, one below the upper's.
    // Scanning uppers in increasing order leaves each bucket sorted by upper
    // and keeps the rank lookups sequential. `local[x]` is the index of a
    // matched lower `x` within its level and NONE for every other vertex.
    let level_of = |y: usize| g.rank(y).expect("vertex of the graph") as usize - 1;
    let mut level_sizes: Vec<usize> = Vec::new();
    for (y, &x) in below.iter().enumerate() {
        if x != NONE {
            let r = level_of(y);
            if level_sizes.len() <= r {
                level_sizes.resize(r + 1, 0);
            }
            level_sizes[r] += 1;
        }
    }
    let mut starts = vec![0usize; level_sizes.len() + 1];
    for (r, &size) in level_sizes.iter().enumerate() {
        starts[r + 1] = starts[r] + size;
    }
    let mut fill = starts.clone();
    let mut pairs = vec![(0u32, 0u32); m.len()];
    let mut local = vec![NONE; slots];
    for (y, &x) in below.iter().enumerate() {
        if x != NONE {
            let r = level_of(y);
            local[x as usize] = (fill[r] - starts[r]) as u32;
            pairs[fill[r]] = (x, y as u32);
            fill[r] += 1;
        }
    }
    drop(below);

    let mut order = Vec::with_capacity(m.len());
    let mut primes = Vec::new();
    // Per-level scratch, reused: `links` are (lower index, upper index)
    // pairs, regrouped by lower index into `adj` with offsets `adj_start`.
    let mut links: Vec<(u32, u32)> = Vec::new();
    let mut adj: Vec<u32> = Vec::new();
    let mut adj_start: Vec<usize> = Vec::new();
    let mut cursor: Vec<usize> = Vec::new();
    let mut degree: Vec<u32> = Vec::new();
    let mut deleted: Vec<bool> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for r in 0..level_sizes.len() {
        let level = &pairs[starts[r]..starts[r + 1]];
        let len = level.len();
        if len == 0 {
            continue;
        }
        links.clear();
        degree.clear();
        degree.resize(len, 0);
        adj_start.clear();
        adj_start.resize(len + 1, 0);
        for (j, &(_, y)) in level.iter().enumerate() {
            spf.distinct_primes(y as usize, &mut primes);
            for &p in &primes {
                let i = local[y as usize / p];
                if i != NONE {
                    links.push((i, j as u32));
                    adj_start[i as usize + 1] += 1;
                    degree[j] += 1;
                }
            }
        }
        for i in 0..len {
            adj_start[i + 1] += adj_start[i];
        }
        adj.clear();
        adj.resize(links.len(), 0);
        cursor.clear();
        cursor.extend_from_slice(&adj_start);
        for &(i, j) in &links {
            adj[cursor[i as usize]] = j;
            cursor[i as usize] += 1;
        }

        // Peel uppers whose only matched neighbour below is their partner.
        deleted.clear();
        deleted.resize(len, false);
        queue.clear();
        queue.extend((0..len).filter(|&j| degree[j] == 1));
        let mut emitted = 0;
        while let Some(j) = queue.pop_front() {
            deleted[j] = true;
            emitted += 1;
            let (x, y) = level[j];
            order.push(y as usize);
            let i = local[x as usize] as usize;
            for &u in &adj[adj_start[i]..adj_start[i + 1]] {
                let u = u as usize;
                if u != j && !deleted[u] {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        queue.push_back(u);
                    }
                }
            }
        }
        if emitted < len {
            return Err(Error::FlatCycleDetected { rank: r as u32 });
        }
    }
    Ok(order)
}

/// Order a flat-alternating-cycle-free matching on an explicit poset by
/// chasing interfering pairs: from a pair `(x, y)`, move to the first other
/// pair whose lower end lies below `y` until none does, then emit that `y`.
pub fn order_matching_general<W: Weight>(
    m: &Matching<W>,
    inst: &GradedPosetInstance<W>,
) -> Result<Vec<usize>> {
    let pairs = m.pairs();
    for e in pairs {
        if e.upper >= inst.len() || e.lower >= inst.len() || !inst.covers_pair(e.lower, e.upper) {
            return Err(Error::NotAMatching(format!(
                "({}, {}) is not a cover pair",
                e.lower, e.upper
            )));
        }
    }
    let mut alive = vec![true; pairs.len()];
    let mut visited = vec![false; pairs.len()];
    let mut order = Vec::with_capacity(pairs.len());
    while let Some(start) = alive.iter().position(|&a| a) {
        visited.iter_mut().for_each(|v| *v = false);
        let mut cur = start;
        visited[cur] = true;
        loop {
            let y = pairs[cur].upper;
            let next = (0..pairs.len())
                .find(|&j| j != cur && alive[j] && inst.less(pairs[j].lower, y));
            match next {
                None => break,
                Some(j) if visited[j] => {
                    return Err(Error::FlatCycleDetected {
                        rank: inst.ranks()[pairs[j].lower],
                    })
                }
                Some(j) => {
                    visited[j] = true;
                    cur = j;
                }
            }
        }
        alive[cur] = false;
        order.push(pairs[cur].upper);
    }
    Ok(order)
}

/// Sequence to matching and back again: true iff the reordered sequence
/// picks the same numbers for the same score.
pub fn roundtrip_check(n: usize, picks: &[usize]) -> Result<bool> {
    let spf = SpfTable::new(n)?;
    let g = build_divisor_cover_graph(n, &spf);
    let m = sequence_to_matching(DivisorPot::new(n), picks, &g)?;
    let order = order_matching_standard(&m, &g, &spf)?;
    let original = play_sequence(DivisorPot::new(n), picks)?;
    let back = play_sequence(DivisorPot::new(n), &order)?;
    let mut a = picks.to_vec();
    let mut b = order;
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b && original.player_score() == back.player_score())
}
