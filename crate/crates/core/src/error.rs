use thiserror::Error;

/// Why a pick was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IllegalReason {
    NotInPlay,
    NoTax,
}

impl std::fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IllegalReason::NotInPlay => f.write_str("not in play"),
            IllegalReason::NoTax => f.write_str("no tax"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size must be at least 1")]
    EmptyPot,
    #[error("{value} is outside 1..={max}")]
    OutOfRange { value: usize, max: usize },
    #[error("illegal pick {value} at move {index}: {reason}")]
    IllegalPick {
        index: usize,
        value: usize,
        reason: IllegalReason,
    },
    #[error("game is not over: {remaining} legal picks remain")]
    GameNotOver { remaining: usize },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("not a matching: {0}")]
    NotAMatching(String),
    #[error("flat alternating cycle blocks ordering at rank {rank}")]
    FlatCycleDetected { rank: u32 },
    #[error("oracle infeasible: size {size} exceeds cap {cap}")]
    OracleInfeasible { size: usize, cap: usize },
    #[error("instance too large: {edges} edges exceeds cap {cap}")]
    InstanceTooLarge { edges: usize, cap: usize },
    #[error("not bipartite: {0}")]
    NotBipartite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
