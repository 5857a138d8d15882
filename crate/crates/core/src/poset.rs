//! Explicit finite graded posets for the generalized game.
//!
//! The full strict order is stored as a bit matrix; the cover relation is
//! derived from it on demand.

use std::ops::Range;

use crate::arena::Arena;
use crate::error::{Error, Result};
use crate::number_theory::SpfTable;
use crate::weight::{Score, Weight};

/// Largest instance accepted; closure is cubic in the element count.
pub const MAX_EXPLICIT_ELEMENTS: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct GradedPosetInstance<W> {
    len: usize,
    words: usize,
    /// Row `p` has bit `q` set iff `q < p`.
    below_bits: Vec<u64>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    rank: Vec<u32>,
    weight: Vec<W>,
    labels: Vec<String>,
}

impl<W: Weight> GradedPosetInstance<W> {
    /// Build from an explicit strict order given as `(q, p)` pairs meaning
    /// `q < p`. The relation must already be transitive.
    pub fn from_order(
        len: usize,
        relation: &[(usize, usize)],
        rank: Vec<u32>,
        weight: Vec<W>,
    ) -> Result<Self> {
        let bits = Self::bits_from_pairs(len, relation)?;
        let words = len.div_ceil(64).max(1);
        let get = |p: usize, q: usize| bits[p * words + q / 64] >> (q % 64) & 1 == 1;
        for p in 0..len {
            for q in 0..len {
                if !get(p, q) {
                    continue;
                }
                for r in 0..len {
                    if get(q, r) && !get(p, r) {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive: {r} < {q} < {p} but not {r} < {p}"
                        )));
                    }
                }
            }
        }
        Self::finish(len, bits, rank, weight)
    }

    /// Build from generating pairs `(q, p)` meaning `q < p`; the transitive
    /// closure is computed.
    pub fn from_generators(
        len: usize,
        generators: &[(usize, usize)],
        rank: Vec<u32>,
        weight: Vec<W>,
    ) -> Result<Self> {
        let mut bits = Self::bits_from_pairs(len, generators)?;
        let words = len.div_ceil(64).max(1);
        // Warshall over bit rows: if k < p then everything below k is below p.
        for k in 0..len {
            let row_k: Vec<u64> = bits[k * words..(k + 1) * words].to_vec();
            for p in 0..len {
                if bits[p * words + k / 64] >> (k % 64) & 1 == 1 {
                    for (w, &b) in row_k.iter().enumerate() {
                        bits[p * words + w] |= b;
                    }
                }
            }
        }
        Self::finish(len, bits, rank, weight)
    }

    fn bits_from_pairs(len: usize, pairs: &[(usize, usize)]) -> Result<Vec<u64>> {
        if len > MAX_EXPLICIT_ELEMENTS {
            return Err(Error::InvalidPoset(format!(
                "{len} elements exceeds the explicit cap {MAX_EXPLICIT_ELEMENTS}"
            )));
        }
        let words = len.div_ceil(64).max(1);
        let mut bits = vec![0u64; len * words];
        for &(q, p) in pairs {
            if q >= len || p >= len {
                return Err(Error::InvalidPoset(format!(
                    "pair ({q}, {p}) references an element outside 0..{len}"
                )));
            }
            bits[p * words + q / 64] |= 1 << (q % 64);
        }
        Ok(bits)
    }

    fn finish(len: usize, bits: Vec<u64>, rank: Vec<u32>, weight: Vec<W>) -> Result<Self> {
        if rank.len() != len || weight.len() != len {
            return Err(Error::InvalidPoset(format!(
                "expected {len} ranks and weights, got {} and {}",
                rank.len(),
                weight.len()
            )));
        }
        let words = len.div_ceil(64).max(1);
        let get = |p: usize, q: usize| bits[p * words + q / 64] >> (q % 64) & 1 == 1;
        let mut below = vec![Vec::new(); len];
        let mut above = vec![Vec::new(); len];
        for p in 0..len {
            if get(p, p) {
                return Err(Error::InvalidPoset(format!("{p} < {p} (irreflexivity)")));
            }
            for q in 0..len {
                if get(p, q) {
                    if get(q, p) {
                        return Err(Error::InvalidPoset(format!(
                            "{q} < {p} and {p} < {q} (asymmetry)"
                        )));
                    }
                    if rank[q] >= rank[p] {
                        return Err(Error::InvalidPoset(format!(
                            "{q} < {p} but rank {} >= {}",
                            rank[q], rank[p]
                        )));
                    }
                    below[p].push(q);
                    above[q].push(p);
                }
            }
        }
        let inst = GradedPosetInstance {
            len,
            words,
            below_bits: bits,
            below,
            above,
            rank,
            weight,
            labels: (0..len).map(|i| i.to_string()).collect(),
        };
        for (q, p) in inst.covers() {
            if inst.rank[q] + 1 != inst.rank[p] {
                return Err(Error::InvalidPoset(format!(
                    "{q} is covered by {p} but ranks are {} and {}",
                    inst.rank[q], inst.rank[p]
                )));
            }
        }
        Ok(inst)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len);
        self.labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    pub fn weights(&self) -> &[W] {
        &self.weight
    }

    pub fn below_of(&self, p: usize) -> &[usize] {
        &self.below[p]
    }

    /// `q ⋖ p`: `q < p` with nothing strictly between.
    pub fn covers_pair(&self, q: usize, p: usize) -> bool {
        self.is_less(q, p) && !self.below[p].iter().any(|&x| self.is_less(q, x))
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len {
            for &q in &self.below[p] {
                if self.covers_pair(q, p) {
                    out.push((q, p));
                }
            }
        }
        out.sort_unstable();
        out
    }

    #[inline]
    fn is_less(&self, q: usize, p: usize) -> bool {
        self.below_bits[p * self.words + q / 64] >> (q % 64) & 1 == 1
    }

    pub fn map_weights<V: Weight>(&self, f: impl Fn(W) -> V) -> GradedPosetInstance<V> {
        GradedPosetInstance {
            len: self.len,
            words: self.words,
            below_bits: self.below_bits.clone(),
            below: self.below.clone(),
            above: self.above.clone(),
            rank: self.rank.clone(),
            weight: self.weight.iter().map(|&w| f(w)).collect(),
            labels: self.labels.clone(),
        }
    }
}

impl GradedPosetInstance<Score> {
    /// `{1, ..., n}` under strict divisibility as an explicit poset. Element
    /// `i` stands for the integer `i + 1`.
    pub fn divisibility(n: usize) -> Result<Self> {
        let spf = SpfTable::new(n)?;
        let omega = spf.all_ranks();
        let mut pairs = Vec::new();
        for q in 1..=n {
            let mut m = 2 * q;
            while m <= n {
                pairs.push((q - 1, m - 1));
                m += q;
            }
        }
        let rank = (1..=n).map(|k| omega[k]).collect();
        let weight = (1..=n).map(|k| k as Score).collect();
        Ok(Self::from_order(n, &pairs, rank, weight)?
            .with_labels((1..=n).map(|k| k.to_string()).collect()))
    }
}

impl<W: Weight> Arena for GradedPosetInstance<W> {
    type Weight = W;

    fn elements(&self) -> Range<usize> {
        0..self.len
    }
    fn weight(&self, e: usize) -> W {
        self.weight[e]
    }
    fn rank(&self, e: usize) -> u32 {
        self.rank[e]
    }
    fn less(&self, q: usize, p: usize) -> bool {
        self.is_less(q, p)
    }
    fn for_each_below(&self, p: usize, f: impl FnMut(usize)) {
        self.below[p].iter().copied().for_each(f)
    }
    fn for_each_above(&self, q: usize, f: impl FnMut(usize)) {
        self.above[q].iter().copied().for_each(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> GradedPosetInstance<i64> {
        GradedPosetInstance::from_generators(3, &[(0, 1), (1, 2)], vec![0, 1, 2], vec![1, 1, 1])
            .unwrap()
    }

    #[test]
    fn closure_and_covers_of_chain() {
        let c = chain();
        assert!(c.less(0, 2));
        assert_eq!(c.covers(), vec![(0, 1), (1, 2)]);
        assert!(!c.covers_pair(0, 2));
    }

    #[test]
    fn antichain_has_no_covers() {
        let a = GradedPosetInstance::<f64>::from_order(3, &[], vec![0; 3], vec![1.0; 3]).unwrap();
        assert!(a.covers().is_empty());
    }

    #[test]
    fn rejects_non_transitive_explicit_order() {
        let err = GradedPosetInstance::<i64>::from_order(
            3,
            &[(0, 1), (1, 2)],
            vec![0, 1, 2],
            vec![1; 3],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidPoset(_)));
    }

    #[test]
    fn rejects_cycles() {
        let err = GradedPosetInstance::<i64>::from_generators(
            2,
            &[(0, 1), (1, 0)],
            vec![0, 1],
            vec![1; 2],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidPoset(_)));
    }

    #[test]
    fn rejects_bad_grading() {
        // 0 < 1 with equal ranks.
        assert!(GradedPosetInstance::<i64>::from_order(2, &[(0, 1)], vec![0, 0], vec![1; 2])
            .is_err());
        // cover jumping two ranks.
        assert!(GradedPosetInstance::<i64>::from_order(2, &[(0, 1)], vec![0, 2], vec![1; 2])
            .is_err());
    }

    #[test]
    fn divisibility_covers_are_prime_ratios() {
        let d = GradedPosetInstance::divisibility(30).unwrap();
        for (q, p) in d.covers() {
            let (a, b) = (q + 1, p + 1);
            let r = b / a;
            assert_eq!(b % a, 0);
            assert!((2..r).all(|k| r % k != 0), "{a} -> {b}");
        }
        assert!(d.covers_pair(5, 29)); // 6 ⋖ 30
        assert!(!d.covers_pair(4, 29)); // 5 < 10 < 30
        assert_eq!(d.label(29), "30");
    }

    #[test]
    fn exhaustive_order_axioms_on_divisibility() {
        let d = GradedPosetInstance::divisibility(40).unwrap();
        for a in 0..40 {
            assert!(!d.less(a, a));
            for b in 0..40 {
                if d.less(a, b) {
                    assert!(!d.less(b, a));
                    for c in 0..40 {
                        if d.less(b, c) {
                            assert!(d.less(a, c));
                        }
                    }
                }
            }
        }
    }
}
