//! The playing field of a taxman game: a finite strict order with weights.

use std::ops::Range;

use crate::weight::{Score, Weight};

/// A finite weighted strict partial order whose elements are the contiguous
/// ids in [`Arena::elements`].
pub trait Arena {
    type Weight: Weight;

    /// Element ids. Ids below `elements().start` are unused slots.
    fn elements(&self) -> Range<usize>;

    fn weight(&self, e: usize) -> Self::Weight;

    fn rank(&self, e: usize) -> u32;

    /// `q < p` in the strict order.
    fn less(&self, q: usize, p: usize) -> bool;

    /// Visit every `q < p`.
    fn for_each_below(&self, p: usize, f: impl FnMut(usize));

    /// Visit every `p > q`.
    fn for_each_above(&self, q: usize, f: impl FnMut(usize));

    /// A maximal element of a non-empty tax set. Any maximal element is a
    /// cover of the pick that produced the set.
    fn topmost(&self, taxed: &[usize]) -> usize {
        *taxed
            .iter()
            .max_by_key(|&&e| (self.rank(e), e))
            .expect("tax set is never empty")
    }

    fn slots(&self) -> usize {
        self.elements().end
    }

    fn total_weight(&self) -> Self::Weight {
        self.elements().map(|e| self.weight(e)).sum()
    }
}

impl<A: Arena> Arena for &A {
    type Weight = A::Weight;

    fn elements(&self) -> Range<usize> {
        (**self).elements()
    }
    fn weight(&self, e: usize) -> Self::Weight {
        (**self).weight(e)
    }
    fn rank(&self, e: usize) -> u32 {
        (**self).rank(e)
    }
    fn less(&self, q: usize, p: usize) -> bool {
        (**self).less(q, p)
    }
    fn for_each_below(&self, p: usize, f: impl FnMut(usize)) {
        (**self).for_each_below(p, f)
    }
    fn for_each_above(&self, q: usize, f: impl FnMut(usize)) {
        (**self).for_each_above(q, f)
    }
    fn topmost(&self, taxed: &[usize]) -> usize {
        (**self).topmost(taxed)
    }
}

/// The standard pot `{1, ..., n}` under strict divisibility, weighted by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DivisorPot {
    n: usize,
}

impl DivisorPot {
    pub fn new(n: usize) -> Self {
        DivisorPot { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl Arena for DivisorPot {
    type Weight = Score;

    fn elements(&self) -> Range<usize> {
        1..self.n + 1
    }

    fn weight(&self, e: usize) -> Score {
        e as Score
    }

    fn rank(&self, mut e: usize) -> u32 {
        let mut r = 0;
        let mut d = 2;
        while d * d <= e {
            while e.is_multiple_of(d) {
                e /= d;
                r += 1;
            }
            d += 1;
        }
        r + u32::from(e > 1)
    }

    fn less(&self, q: usize, p: usize) -> bool {
        q != p && q != 0 && p.is_multiple_of(q)
    }

    fn for_each_below(&self, p: usize, mut f: impl FnMut(usize)) {
        let mut d = 1;
        while d * d <= p {
            if p.is_multiple_of(d) {
                if d != p {
                    f(d);
                }
                let e = p / d;
                if e != d && e != p {
                    f(e);
                }
            }
            d += 1;
        }
    }

    fn for_each_above(&self, q: usize, mut f: impl FnMut(usize)) {
        let mut m = 2 * q;
        while m <= self.n {
            f(m);
            m += q;
        }
    }

    /// The numerically largest divisor taxed.
    fn topmost(&self, taxed: &[usize]) -> usize {
        *taxed.iter().max().expect("tax set is never empty")
    }

    fn total_weight(&self) -> Score {
        crate::weight::pot_total(self.n)
    }
}
