//! The taxman game on `{1, ..., n}` and on arbitrary weighted graded posets.
//!
//! * [`game`] plays the rules on any [`Arena`].
//! * [`cover_graph`] and [`matching_bridge`] translate between legal plays
//!   and matchings of the cover graph with no flat alternating cycle.
//! * [`born_free`] is the greedy prime-descending strategy.
//! * [`bounds`] gives matching upper bounds and feedback-arc-set lower
//!   bounds with witness plays.
//! * [`oracle`] solves small instances exactly.
//!
//! Algorithms are generic over the element weight ([`Weight`]); the aliases
//! below fix the common choices.

pub mod arena;
pub mod blossom;
pub mod born_free;
pub mod bounds;
pub mod cover_graph;
pub mod error;
pub mod fas;
pub mod game;
pub mod matching_bridge;
pub mod number_theory;
pub mod oracle;
pub mod poset;
pub mod weight;

pub use arena::{Arena, DivisorPot};
pub use born_free::{
    analytic_lower_ratio, born_free_matching, born_free_play, born_free_raw_play, pot_fraction,
    BornFreeConfig,
};
pub use bounds::{
    bipartite_to_taxman, bounds_report, fas_lower_bound, max_weight_matching, upper_bound,
    BoundsReport,
};
pub use cover_graph::{
    build_divisor_cover_graph, build_poset_cover_graph, find_flat_alternating_cycle, CoverEdge,
    CoverGraph, Matching, OrientedGraph,
};
pub use error::{Error, IllegalReason, Result};
pub use game::{
    new_standard_game, play_sequence, play_standard, GameRecord, GameState, Move, MoveSequence,
    Outcome, PosetGame, StandardGame,
};
pub use matching_bridge::{
    order_matching_general, order_matching_standard, roundtrip_check, sequence_to_matching,
    OrderedPlay,
};
pub use number_theory::{build_spf, factorize, rank_of, Rank, SpfTable};
pub use oracle::{
    max_fcfree_matching_bruteforce, optimal_score, optimal_score_general, ExactSolver, OracleCache,
};
pub use poset::GradedPosetInstance;
pub use weight::{pot_total, Rational, Score, Weight, WideRational};

/// Cover graph of the standard pot.
pub type DivisorGraph = CoverGraph<Score>;
/// Matching on the standard pot's cover graph.
pub type DivisorMatching = Matching<Score>;
/// Explicit poset with integer weights.
pub type IntPoset = GradedPosetInstance<Score>;
/// Explicit poset with floating-point weights.
pub type RealPoset = GradedPosetInstance<f64>;
/// Explicit poset with exact rational weights.
pub type RationalPoset = GradedPosetInstance<Rational>;
