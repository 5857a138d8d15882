//! The born-free matching: a greedy matching that scans primes from the
//! largest down and, within each prime `p`, the pairs `(x, p·x)` from the
//! largest `x` down, keeping every pair whose endpoints are both still free.
//! The result never contains a flat alternating cycle, so it always orders
//! into a legal play.

use num_traits::ToPrimitive;

use crate::arena::DivisorPot;
use crate::cover_graph::{build_divisor_cover_graph, CoverEdge, Matching};
use crate::error::{Error, Result};
use crate::matching_bridge::{order_matching_standard, OrderedPlay};
use crate::number_theory::SpfTable;
use crate::weight::{pot_total, Score, WideRational};

/// Pots where the greedy play does not win and a known better line exists.
const KNOWN_LINES: [(usize, &[usize]); 2] = [(7, &[7, 4, 6]), (13, &[13, 9, 10, 8, 12])];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BornFreeConfig {
    pub n: usize,
    /// Largest prime used; `None` uses every prime up to `n`.
    pub p_max: Option<usize>,
}

impl BornFreeConfig {
    pub fn new(n: usize) -> Self {
        BornFreeConfig { n, p_max: None }
    }

    pub fn with_p_max(n: usize, p_max: usize) -> Result<Self> {
        let prime = p_max >= 2 && (2..p_max).take_while(|d| d * d <= p_max).all(|d| !p_max.is_multiple_of(d));
        if !prime {
            return Err(Error::InvalidConfig(format!("p_max = {p_max} is not a prime")));
        }
        Ok(BornFreeConfig {
            n,
            p_max: Some(p_max),
        })
    }

    fn prime_limit(&self) -> usize {
        self.p_max.map_or(self.n, |p| p.min(self.n))
    }
}

/// Greedy matching restricted to the slots marked available (index = value).
/// Only pairs with both ends available are considered.
pub fn born_free_matching_within(
    available: &[bool],
    p_max: Option<usize>,
    spf: &SpfTable,
) -> Matching<Score> {
    let n = available.len().saturating_sub(1);
    if n < 2 {
        return Matching::empty();
    }
    assert!(spf.n_max() >= n, "sieve does not cover {n}");
    let mut taken = vec![false; n + 1];
    let mut pairs = Vec::new();
    for p in spf.primes_desc(p_max.map_or(n, |p| p.min(n))) {
        for x in (1..=n / p).rev() {
            let y = p * x;
            if available[x] && available[y] && !taken[x] && !taken[y] {
                taken[x] = true;
                taken[y] = true;
                pairs.push(CoverEdge {
                    lower: x,
                    upper: y,
                    weight: y as Score,
                });
            }
        }
    }
    Matching::new(pairs).expect("occupancy array keeps pairs disjoint")
}

pub fn born_free_matching(cfg: &BornFreeConfig, spf: &SpfTable) -> Matching<Score> {
    let mut available = vec![true; cfg.n + 1];
    available[0] = false;
    born_free_matching_within(&available, cfg.p_max.map(|_| cfg.prime_limit()), spf)
}

/// Greedy matching ordered into a legal play, with no substitutions.
pub fn born_free_raw_play(cfg: &BornFreeConfig) -> Result<OrderedPlay<Score>> {
    if cfg.n == 0 {
        return Err(Error::EmptyPot);
    }
    let spf = SpfTable::new(cfg.n)?;
    let g = build_divisor_cover_graph(cfg.n, &spf);
    let m = born_free_matching(cfg, &spf);
    let order = order_matching_standard(&m, &g, &spf)?;
    OrderedPlay::from_order(DivisorPot::new(cfg.n), &order)
}

/// The winning play: the greedy play, except on pots 7 and 13 where a known
/// winning line replaces it. Pot 3 ties and pot 1 loses whatever is done.
pub fn born_free_play(cfg: &BornFreeConfig) -> Result<OrderedPlay<Score>> {
    if let Some((_, line)) = KNOWN_LINES.iter().find(|(n, _)| *n == cfg.n) {
        return OrderedPlay::from_order(DivisorPot::new(cfg.n), line);
    }
    born_free_raw_play(cfg)
}

/// Proven lower bound on the pot fraction taken by the `p_max = 5` greedy
/// matching, as an exact rational:
/// `(1724 n² − 29188 n − 15944) / (3375 (n² + n))`.
pub fn analytic_lower_ratio(n: usize) -> WideRational {
    assert!(n >= 1, "ratio is defined for n >= 1");
    let n = n as i128;
    WideRational::new(
        1724 * n * n - 29188 * n - 15944,
        3375 * (n * n + n),
    )
}

/// Player score over `n(n+1)/2`.
pub fn pot_fraction(play: &OrderedPlay<Score>, n: usize) -> f64 {
    play.score as f64 / pot_total(n) as f64
}

pub fn pot_fraction_exact(score: Score, n: usize) -> WideRational {
    WideRational::new(score as i128, pot_total(n) as i128)
}

pub fn ratio_to_f64(r: &WideRational) -> f64 {
    r.to_f64().expect("finite ratio")
}
