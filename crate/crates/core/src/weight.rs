//! Scalar weights.
//!
//! Every algorithm in this crate is generic over the weight attached to poset
//! elements. The standard game uses exact integers ([`Score`]); generalized
//! instances may use floats or exact rationals.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

/// Element weight. Blanket-implemented for every signed numeric type that is
/// `Copy` and ordered, which covers `i32`, `i64`, `i128`, `f32`, `f64` and
/// `Ratio<i64>`.
pub trait Weight:
    Signed + Copy + PartialOrd + Debug + Display + Sum + ToPrimitive + Send + Sync + 'static
{
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// The larger of two weights. `PartialOrd` only, so NaN loses.
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl<T> Weight for T where
    T: Signed + Copy + PartialOrd + Debug + Display + Sum + ToPrimitive + Send + Sync + 'static
{
}

/// Integer score of the standard game.
pub type Score = i64;

/// Exact rational used for generalized instances that need it.
pub type Rational = Ratio<i64>;

/// Exact rational with headroom for closed-form evaluation at large `n`.
pub type WideRational = Ratio<i128>;

/// `1 + 2 + ... + n`.
pub fn pot_total(n: usize) -> Score {
    let n = n as Score;
    n * (n + 1) / 2
}
