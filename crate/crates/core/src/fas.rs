//! Greedy feedback arc set (Eades, Lin and Smyth).
//!
//! Sinks are peeled to the back of the order, sources to the front, and
//! when neither exists the vertex with the largest out-degree minus
//! in-degree goes to the front. Every arc pointing backwards in the final
//! order is a feedback arc. Ties go to the smallest vertex label.

use std::collections::BTreeSet;

struct Peeler {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    outdeg: Vec<i64>,
    indeg: Vec<i64>,
    alive: Vec<bool>,
    remaining: BTreeSet<usize>,
    sinks: BTreeSet<usize>,
    sources: BTreeSet<usize>,
}

impl Peeler {
    fn new(vertex_count: usize, arcs: &[(usize, usize)]) -> Self {
        let mut out = vec![Vec::new(); vertex_count];
        let mut inc = vec![Vec::new(); vertex_count];
        for &(u, v) in arcs {
            out[u].push(v);
            inc[v].push(u);
        }
        let outdeg: Vec<i64> = out.iter().map(|a: &Vec<usize>| a.len() as i64).collect();
        let indeg: Vec<i64> = inc.iter().map(|a: &Vec<usize>| a.len() as i64).collect();
        let sinks = (0..vertex_count).filter(|&v| outdeg[v] == 0).collect();
        let sources = (0..vertex_count)
            .filter(|&v| outdeg[v] > 0 && indeg[v] == 0)
            .collect();
        Peeler {
            out,
            inc,
            outdeg,
            indeg,
            alive: vec![true; vertex_count],
            remaining: (0..vertex_count).collect(),
            sinks,
            sources,
        }
    }

    fn remove(&mut self, v: usize) {
        self.alive[v] = false;
        self.remaining.remove(&v);
        self.sinks.remove(&v);
        self.sources.remove(&v);
        for &w in &self.out[v] {
            if self.alive[w] {
                self.indeg[w] -= 1;
                if self.indeg[w] == 0 && self.outdeg[w] > 0 {
                    self.sources.insert(w);
                }
            }
        }
        for &u in &self.inc[v] {
            if self.alive[u] {
                self.outdeg[u] -= 1;
                if self.outdeg[u] == 0 {
                    self.sources.remove(&u);
                    self.sinks.insert(u);
                }
            }
        }
    }

    /// Remaining vertex with the largest out-degree minus in-degree.
    fn best_delta(&self) -> Option<usize> {
        let mut best: Option<(i64, usize)> = None;
        for &v in &self.remaining {
            let d = self.outdeg[v] - self.indeg[v];
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.map(|(_, v)| v)
    }
}

/// Vertex order over `0..vertex_count` produced by the GR heuristic.
pub fn greedy_order(vertex_count: usize, arcs: &[(usize, usize)]) -> Vec<usize> {
    let mut g = Peeler::new(vertex_count, arcs);
    let mut front = Vec::with_capacity(vertex_count);
    let mut back = Vec::new();
    while !g.remaining.is_empty() {
        while let Some(v) = g.sinks.pop_first() {
            g.remove(v);
            back.push(v);
        }
        while let Some(v) = g.sources.pop_first() {
            g.remove(v);
            front.push(v);
        }
        if g.sinks.is_empty() {
            if let Some(v) = g.best_delta() {
                g.remove(v);
                front.push(v);
            }
        }
    }
    back.reverse();
    front.extend(back);
    front
}

/// Indices of arcs pointing backwards in the GR order.
pub fn feedback_arc_set(vertex_count: usize, arcs: &[(usize, usize)]) -> Vec<usize> {
    let order = greedy_order(vertex_count, arcs);
    let mut pos = vec![0usize; vertex_count];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    arcs.iter()
        .enumerate()
        .filter(|(_, &(u, v))| pos[u] > pos[v])
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn acyclic_without(n: usize, arcs: &[(usize, usize)], removed: &[usize]) -> bool {
        let mut indeg = vec![0; n];
        let kept: Vec<_> = arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, a)| *a)
            .collect();
        for &(_, v) in &kept {
            indeg[v] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &(a, b) in &kept {
                if a == u {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        seen == n
    }

    #[test]
    fn dag_needs_no_feedback() {
        let arcs = [(0, 1), (1, 2), (0, 2), (2, 3)];
        assert!(feedback_arc_set(4, &arcs).is_empty());
        assert_eq!(greedy_order(4, &arcs), vec![0, 1, 2, 3]);
    }

    #[test]
    fn triangle_loses_one_arc() {
        let arcs = [(0, 1), (1, 2), (2, 0)];
        let fas = feedback_arc_set(3, &arcs);
        assert_eq!(fas, vec![2]);
    }

    #[test]
    fn order_is_a_permutation() {
        let arcs = [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)];
        let mut order = greedy_order(5, &arcs);
        order.sort_unstable();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn removal_always_breaks_every_cycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..12);
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.25) {
                        arcs.push((u, v));
                    }
                }
            }
            let fas = feedback_arc_set(n, &arcs);
            assert!(acyclic_without(n, &arcs, &fas));
        }
    }
}
