//! Sieve-based primitives over `1..=n_max`: smallest prime factors,
//! factorization and the Ω-rank that grades the divisibility poset.

use crate::error::{Error, Result};

/// Number of prime factors counted with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rank(pub u32);

/// Smallest prime factor of every integer in `2..=n_max`.
///
/// Slots 0 and 1 hold 0 and 1 and are never interpreted as primes.
#[derive(Debug, Clone)]
pub struct SpfTable {
    n_max: usize,
    spf: Vec<u32>,
}

impl SpfTable {
    /// Sieve of Eratosthenes recording the first prime to strike each index.
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::EmptyPot);
        }
        assert!(n_max <= u32::MAX as usize, "sieve limit exceeds u32");
        let mut spf = vec![0u32; n_max + 1];
        if n_max >= 1 {
            spf[1] = 1;
        }
        for i in 2..=n_max {
            if spf[i] != 0 {
                continue;
            }
            spf[i] = i as u32;
            if let Some(start) = i.checked_mul(i) {
                let mut j = start;
                while j <= n_max {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Ok(SpfTable { n_max, spf })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n_max {
            Err(Error::OutOfRange {
                value: k,
                max: self.n_max,
            })
        } else {
            Ok(())
        }
    }

    /// `None` for `k = 1`.
    pub fn smallest_prime_factor(&self, k: usize) -> Result<Option<usize>> {
        self.check(k)?;
        Ok((k >= 2).then(|| self.spf[k] as usize))
    }

    pub fn is_prime(&self, k: usize) -> bool {
        k >= 2 && k <= self.n_max && self.spf[k] as usize == k
    }

    pub fn rank_of(&self, k: usize) -> Result<Rank> {
        self.check(k)?;
        Ok(Rank(self.omega(k)))
    }

    #[inline]
    pub(crate) fn omega(&self, mut k: usize) -> u32 {
        let mut count = 0;
        while k > 1 {
            k /= self.spf[k] as usize;
            count += 1;
        }
        count
    }

    /// Ω of every index in `0..=n_max` in one linear pass (slot 0 is 0).
    pub fn all_ranks(&self) -> Vec<u32> {
        let mut rank = vec![0u32; self.n_max + 1];
        for k in 2..=self.n_max {
            rank[k] = rank[k / self.spf[k] as usize] + 1;
        }
        rank
    }

    /// Prime factorization with strictly increasing primes.
    pub fn factorize(&self, k: usize) -> Result<Vec<(usize, u32)>> {
        self.check(k)?;
        Ok(self.factorize_unchecked(k))
    }

    pub(crate) fn factorize_unchecked(&self, mut k: usize) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        while k > 1 {
            let p = self.spf[k] as usize;
            k /= p;
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Distinct prime divisors of `k`, increasing.
    pub(crate) fn distinct_primes(&self, mut k: usize, out: &mut Vec<usize>) {
        out.clear();
        while k > 1 {
            let p = self.spf[k] as usize;
            k /= p;
            if out.last() != Some(&p) {
                out.push(p);
            }
        }
    }

    /// Primes `<= limit` (clamped to `n_max`), strictly descending.
    pub fn primes_desc(&self, limit: usize) -> Vec<usize> {
        (2..=limit.min(self.n_max))
            .rev()
            .filter(|&k| self.spf[k] as usize == k)
            .collect()
    }
}

pub fn build_spf(n_max: usize) -> Result<SpfTable> {
    SpfTable::new(n_max)
}

pub fn rank_of(k: usize, table: &SpfTable) -> Result<Rank> {
    table.rank_of(k)
}

pub fn factorize(k: usize, table: &SpfTable) -> Result<Vec<(usize, u32)>> {
    table.factorize(k)
}

/// Primes `<= n_max`, strictly descending.
pub fn primes_up_to(n_max: usize) -> Result<Vec<usize>> {
    Ok(SpfTable::new(n_max)?.primes_desc(n_max))
}
