//! Exhaustive optimal play for small pots, and brute-force maximum
//! flat-alternating-cycle-free matchings for small cover graphs.
//!
//! The search state is the set of elements still in play as a 64-bit mask.
//! The best future score depends on nothing else, so values are memoised on
//! the mask. Elements with nothing in play above or below them can never
//! matter again and are cleared before lookup.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::arena::{Arena, DivisorPot};
use crate::cover_graph::{CoverGraph, Matching, OrientedGraph};
use crate::error::{Error, Result};
use crate::game::{play_sequence, MoveSequence};
use crate::poset::GradedPosetInstance;
use crate::weight::{Score, Weight};

/// Largest standard pot solved by default.
pub const DEFAULT_ORACLE_CAP: usize = 20;
/// Largest explicit poset solved by default.
pub const DEFAULT_GENERAL_CAP: usize = 16;
/// Largest cover graph, in edges, enumerated by default.
pub const DEFAULT_EDGE_CAP: usize = 32;
/// Hard limit of the mask encoding.
pub const MASK_SLOTS: usize = 64;

/// Memoised optimal play over an arena of at most 64 slots.
pub struct ExactSolver<W> {
    below: Vec<u64>,
    above: Vec<u64>,
    weight: Vec<W>,
    memo: HashMap<u64, (W, u8)>,
}

const NO_PICK: u8 = u8::MAX;

impl<W: Weight> ExactSolver<W> {
    pub fn new<A: Arena<Weight = W>>(arena: &A) -> Result<Self> {
        let slots = arena.slots();
        if slots > MASK_SLOTS {
            return Err(Error::OracleInfeasible {
                size: arena.elements().len(),
                cap: MASK_SLOTS - 1,
            });
        }
        let mut below = vec![0u64; slots];
        let mut above = vec![0u64; slots];
        let mut weight = vec![W::zero(); slots];
        for p in arena.elements() {
            weight[p] = arena.weight(p);
            arena.for_each_below(p, |q| below[p] |= 1 << q);
            arena.for_each_above(p, |q| above[p] |= 1 << q);
        }
        Ok(ExactSolver {
            below,
            above,
            weight,
            memo: HashMap::new(),
        })
    }

    /// Mask of every element of `arena`.
    pub fn full_mask<A: Arena>(arena: &A) -> u64 {
        arena.elements().fold(0, |m, e| m | 1 << e)
    }

    pub fn mask_of(in_play: impl IntoIterator<Item = usize>) -> u64 {
        in_play.into_iter().fold(0, |m, e| m | 1 << e)
    }

    fn normalize(&self, mask: u64) -> u64 {
        let mut out = mask;
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if mask & (self.below[e] | self.above[e]) == 0 {
                out &= !(1 << e);
            }
        }
        out
    }

    /// Optimistic bound on the future score: total positive weight of the
    /// in-play elements that still have something in play below them.
    fn potential(&self, mask: u64) -> W {
        let mut total = W::zero();
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if mask & self.below[e] != 0 && self.weight[e] > W::zero() {
                total = total + self.weight[e];
            }
        }
        total
    }

    /// Best score obtainable from the in-play set `mask`.
    pub fn value(&mut self, mask: u64) -> W {
        self.solve(self.normalize(mask)).0
    }

    /// An optimal next pick from `mask`, or `None` when stopping is optimal
    /// (in particular when nothing is legal).
    pub fn best_pick(&mut self, mask: u64) -> Option<usize> {
        let (_, p) = self.solve(self.normalize(mask));
        (p != NO_PICK).then_some(p as usize)
    }

    /// An optimal sequence of picks from `mask`.
    pub fn witness(&mut self, mut mask: u64) -> Vec<usize> {
        let mut picks = Vec::new();
        while let Some(p) = self.best_pick(mask) {
            picks.push(p);
            mask &= !(self.below[p] | 1 << p);
        }
        picks
    }

    fn solve(&mut self, mask: u64) -> (W, u8) {
        if let Some(&hit) = self.memo.get(&mask) {
            return hit;
        }
        let mut candidates: Vec<usize> = Vec::new();
        let mut rest = mask;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if mask & self.below[p] != 0 {
                candidates.push(p);
            }
        }
        // Heaviest first so the incumbent rises quickly.
        candidates.sort_by(|&a, &b| {
            self.weight[b]
                .partial_cmp(&self.weight[a])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(b.cmp(&a))
        });
        let mut best = (W::zero(), NO_PICK);
        for p in candidates {
            let child = self.normalize(mask & !(self.below[p] | 1 << p));
            if best.1 != NO_PICK && self.weight[p] + self.potential(child) <= best.0 {
                continue;
            }
            let v = self.weight[p] + self.solve(child).0;
            if v > best.0 {
                best = (v, p as u8);
            }
        }
        self.memo.insert(mask, best);
        best
    }

    pub fn states(&self) -> usize {
        self.memo.len()
    }
}

/// Optimal score and witness for `{1, ..., n}` when `n <= cap`.
pub fn optimal_score(n: usize, cap: usize) -> Result<(Score, MoveSequence)> {
    if n == 0 {
        return Err(Error::EmptyPot);
    }
    if n > cap || n >= MASK_SLOTS {
        return Err(Error::OracleInfeasible { size: n, cap: cap.min(MASK_SLOTS - 1) });
    }
    let pot = DivisorPot::new(n);
    let mut solver = ExactSolver::new(&pot)?;
    let picks = solver.witness(ExactSolver::<Score>::full_mask(&pot));
    let state = play_sequence(pot, &picks)?;
    Ok((state.player_score(), state.history().clone()))
}

pub fn optimal_score_general<W: Weight>(inst: &GradedPosetInstance<W>) -> Result<(W, MoveSequence)> {
    optimal_score_general_with_cap(inst, DEFAULT_GENERAL_CAP)
}

pub fn optimal_score_general_with_cap<W: Weight>(
    inst: &GradedPosetInstance<W>,
    cap: usize,
) -> Result<(W, MoveSequence)> {
    if inst.len() > cap || inst.len() > MASK_SLOTS {
        return Err(Error::OracleInfeasible {
            size: inst.len(),
            cap: cap.min(MASK_SLOTS),
        });
    }
    let mut solver = ExactSolver::new(&inst)?;
    let picks = solver.witness(ExactSolver::<W>::full_mask(&inst));
    let state = play_sequence(inst, &picks)?;
    Ok((state.player_score(), state.history().clone()))
}

pub fn max_fcfree_matching_bruteforce<W: Weight>(g: &CoverGraph<W>) -> Result<Matching<W>> {
    max_fcfree_matching_bruteforce_with_cap(g, DEFAULT_EDGE_CAP)
}

/// Heaviest endpoint-disjoint edge set without flat alternating cycles, by
/// depth-first enumeration. A subset of a cycle-free matching is cycle-free,
/// so a branch dies as soon as it closes a cycle.
pub fn max_fcfree_matching_bruteforce_with_cap<W: Weight>(
    g: &CoverGraph<W>,
    cap: usize,
) -> Result<Matching<W>> {
    let edges = g.edges();
    if edges.len() > cap {
        return Err(Error::InstanceTooLarge {
            edges: edges.len(),
            cap,
        });
    }
    // suffix[i]: positive weight still available from edge i on.
    let mut suffix = vec![W::zero(); edges.len() + 1];
    for i in (0..edges.len()).rev() {
        suffix[i] = suffix[i + 1] + edges[i].weight.max_of(W::zero());
    }
    let mut search = FcFreeSearch {
        g,
        suffix,
        used: vec![false; g.slots()],
        chosen: vec![false; edges.len()],
        current: W::zero(),
        best: W::zero(),
        best_set: vec![false; edges.len()],
    };
    search.run(0);
    let ids: Vec<usize> = (0..edges.len()).filter(|&i| search.best_set[i]).collect();
    Matching::from_edge_ids(g, &ids)
}

struct FcFreeSearch<'a, W> {
    g: &'a CoverGraph<W>,
    suffix: Vec<W>,
    used: Vec<bool>,
    chosen: Vec<bool>,
    current: W,
    best: W,
    best_set: Vec<bool>,
}

impl<W: Weight> FcFreeSearch<'_, W> {
    fn run(&mut self, i: usize) {
        if self.current > self.best {
            self.best = self.current;
            self.best_set.clone_from(&self.chosen);
        }
        if i == self.chosen.len() || self.current + self.suffix[i] <= self.best {
            return;
        }
        let e = &self.g.edges()[i];
        let (lo, up, w) = (e.lower, e.upper, e.weight);
        if w > W::zero() && !self.used[lo] && !self.used[up] {
            self.chosen[i] = true;
            if !OrientedGraph::from_flags(self.g, self.chosen.clone()).has_cycle() {
                self.used[lo] = true;
                self.used[up] = true;
                self.current = self.current + w;
                self.run(i + 1);
                self.current = self.current - w;
                self.used[lo] = false;
                self.used[up] = false;
            }
            self.chosen[i] = false;
        }
        self.run(i + 1);
    }
}

/// On-disk table of solved pots, one `n score pick1,pick2,...` line each.
/// Blank lines and lines starting with `#` are ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OracleCache {
    entries: std::collections::BTreeMap<usize, (Score, Vec<usize>)>,
}

impl OracleCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> io::Result<Self> {
        let bad = |line: usize, what: &str| {
            io::Error::new(io::ErrorKind::InvalidData, format!("line {line}: {what}"))
        };
        let mut cache = OracleCache::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let n = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| bad(i + 1, "bad n"))?;
            let score = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| bad(i + 1, "bad score"))?;
            let picks = match fields.next() {
                None => Vec::new(),
                Some(f) => f
                    .split(',')
                    .map(|p| p.parse())
                    .collect::<std::result::Result<Vec<usize>, _>>()
                    .map_err(|_| bad(i + 1, "bad pick list"))?,
            };
            if fields.next().is_some() {
                return Err(bad(i + 1, "trailing fields"));
            }
            cache.entries.insert(n, (score, picks));
        }
        Ok(cache)
    }

    /// Missing files load as an empty cache.
    pub fn load(path: &Path) -> io::Result<Self> {
        match fs::read_to_string(path) {
            Ok(text) => Self::parse(&text),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (n, (score, picks)) in &self.entries {
            let list: Vec<String> = picks.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "{n} {score} {}", list.join(","));
        }
        out
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.render())
    }

    pub fn get(&self, n: usize) -> Option<(Score, &[usize])> {
        self.entries.get(&n).map(|(s, p)| (*s, p.as_slice()))
    }

    pub fn insert(&mut self, n: usize, score: Score, picks: Vec<usize>) {
        self.entries.insert(n, (score, picks));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cached result for `n`, solving and recording it on a miss. Cached
    /// witnesses are replayed and must reproduce their score.
    pub fn optimal_score(&mut self, n: usize, cap: usize) -> Result<(Score, MoveSequence)> {
        if let Some((score, picks)) = self.get(n) {
            let state = play_sequence(DivisorPot::new(n), picks);
            if let Ok(state) = state {
                if state.player_score() == score {
                    return Ok((score, state.history().clone()));
                }
            }
        }
        let (score, seq) = optimal_score(n, cap)?;
        self.insert(n, score, seq.picks());
        Ok((score, seq))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover_graph::build_divisor_cover_graph;
    use crate::game::GameState;
    use crate::number_theory::build_spf;

    /// Plain recursion over every legal line, no memo and no pruning.
    fn naive<A: Arena + Clone>(state: &GameState<A>) -> A::Weight {
        let mut best = <A::Weight as num_traits::Zero>::zero();
        for p in state.legal_picks() {
            let next = state.with_pick(p).unwrap();
            let v = state.arena().weight(p) + naive(&next);
            if v > best {
                best = v;
            }
        }
        best
    }

    #[test]
    fn small_pots() {
        let (s, w) = optimal_score(1, 20).unwrap();
        assert_eq!((s, w.picks()), (0, vec![]));
        let (s, w) = optimal_score(4, 20).unwrap();
        assert_eq!((s, w.picks()), (7, vec![3, 4]));
        assert!(optimal_score(13, 20).unwrap().0 >= 52);
    }

    #[test]
    fn agrees_with_naive_recursion() {
        for n in 1..=14 {
            let naive_best = naive(&GameState::new(DivisorPot::new(n)));
            assert_eq!(optimal_score(n, 20).unwrap().0, naive_best, "n={n}");
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(optimal_score(21, 20), Err(Error::OracleInfeasible { size: 21, .. })));
        assert!(matches!(optimal_score(0, 20), Err(Error::EmptyPot)));
        assert!(optimal_score(22, 22).is_ok());
    }

    #[test]
    fn general_examples() {
        let antichain = GradedPosetInstance::<Score>::from_order(3, &[], vec![0; 3], vec![1; 3]).unwrap();
        assert_eq!(optimal_score_general(&antichain).unwrap().0, 0);
        let chain = GradedPosetInstance::<Score>::from_generators(3, &[(0, 1), (1, 2)], vec![0, 1, 2], vec![1; 3])
            .unwrap();
        assert_eq!(optimal_score_general(&chain).unwrap().0, 1);
        let big = GradedPosetInstance::<Score>::from_order(17, &[], vec![0; 17], vec![1; 17]).unwrap();
        assert!(matches!(optimal_score_general(&big), Err(Error::OracleInfeasible { .. })));
    }

    #[test]
    fn bruteforce_matching_examples() {
        let spf = build_spf(40).unwrap();
        assert_eq!(max_fcfree_matching_bruteforce(&build_divisor_cover_graph(4, &spf)).unwrap().weight(), 7);
        assert!(max_fcfree_matching_bruteforce(&build_divisor_cover_graph(1, &spf)).unwrap().is_empty());
        let g40 = build_divisor_cover_graph(40, &spf);
        assert!(matches!(
            max_fcfree_matching_bruteforce(&g40),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn solver_from_midgame_state() {
        let pot = DivisorPot::new(10);
        let mut solver = ExactSolver::new(&pot).unwrap();
        let state = GameState::new(pot).with_pick(9).unwrap();
        let mask = ExactSolver::<Score>::mask_of(state.in_play());
        let pick = solver.best_pick(mask).unwrap();
        assert!(state.is_legal(pick));
        let rest = naive(&state);
        assert_eq!(solver.value(mask), rest);
    }

    #[test]
    fn cache_round_trip() {
        let mut cache = OracleCache::new();
        cache.insert(4, 7, vec![3, 4]);
        cache.insert(1, 0, vec![]);
        let text = cache.render();
        assert_eq!(text, "1 0 \n4 7 3,4\n");
        assert_eq!(OracleCache::parse(&text).unwrap(), cache);
        assert!(OracleCache::parse("4 x 3").is_err());
        assert!(OracleCache::parse("# comment\n\n2 2 2\n").unwrap().get(2).is_some());
    }

    #[test]
    fn cache_file_and_stale_entries() {
        let dir = std::env::temp_dir().join(format!("taxman-oracle-{}", std::process::id()));
        let path = dir.join("cache.txt");
        let mut cache = OracleCache::load(&path).unwrap();
        assert!(cache.is_empty());
        cache.insert(6, 999, vec![6]);
        let (s, _) = cache.optimal_score(6, 20).unwrap();
        assert_eq!(s, optimal_score(6, 20).unwrap().0);
        cache.save(&path).unwrap();
        assert_eq!(OracleCache::load(&path).unwrap().get(6).unwrap().0, s);
        fs::remove_dir_all(dir).unwrap();
    }
}
