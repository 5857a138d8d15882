//! Next-move suggestions for a game in progress.
//!
//! Each strategy proposes a pick sequence from the current in-play set. The
//! projection plays that sequence, then keeps taking the largest legal pick
//! until none is left, then closes the game.
//!
//! Mid-game born-free and fas-lower are heuristics: both strategies are
//! defined for a fresh pot, and here they are rebuilt on the cover edges
//! whose ends are both still in play. The oracle hint is exact.

use std::str::FromStr;

use serde::Serialize;
use taxman_core::{
    born_free::born_free_matching_within, bounds::break_flat_cycles, build_divisor_cover_graph,
    max_weight_matching, order_matching_standard, CoverGraph, DivisorGraph, ExactSolver,
    Score, SpfTable, StandardGame,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    BornFree,
    BornFree5,
    FasLower,
    Oracle,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "born-free" => Ok(Strategy::BornFree),
            "born-free-5" => Ok(Strategy::BornFree5),
            "fas-lower" => Ok(Strategy::FasLower),
            "oracle" => Ok(Strategy::Oracle),
            other => Err(format!(
                "unknown strategy {other:?}; expected born-free, born-free-5, fas-lower or oracle"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hint {
    pub strategy: Strategy,
    /// `None` once no legal pick remains.
    pub suggested_pick: Option<usize>,
    pub projected_final_score: Score,
    /// False only for the oracle.
    pub heuristic: bool,
}

/// Size limits for the expensive strategies.
#[derive(Debug, Clone, Copy)]
pub struct HintCaps {
    pub oracle: usize,
    pub fas: usize,
}

pub fn hint(game: &StandardGame, strategy: Strategy, caps: HintCaps) -> Result<Hint, String> {
    let n = game.arena().n();
    let plan = if game.is_over() {
        Vec::new()
    } else {
        match strategy {
            Strategy::Oracle => {
                if n > caps.oracle {
                    return Err(format!("oracle hints need n <= {}", caps.oracle));
                }
                let mut solver = ExactSolver::new(game.arena()).map_err(|e| e.to_string())?;
                solver.witness(ExactSolver::<Score>::mask_of(game.in_play()))
            }
            Strategy::FasLower if n > caps.fas => {
                return Err(format!("fas-lower hints need n <= {}", caps.fas));
            }
            _ => heuristic_plan(game, strategy),
        }
    };
    let mut future = game.clone();
    for &p in &plan {
        if future.apply_pick(p).is_err() {
            break;
        }
    }
    while let Some(&p) = future.legal_picks().last() {
        future.apply_pick(p).expect("listed as legal");
    }
    let suggested_pick = future.history().moves.get(game.history().len()).map(|m| m.pick);
    future.close();
    Ok(Hint {
        strategy,
        suggested_pick,
        projected_final_score: future.player_score(),
        heuristic: strategy != Strategy::Oracle,
    })
}

fn heuristic_plan(game: &StandardGame, strategy: Strategy) -> Vec<usize> {
    let n = game.arena().n();
    let spf = SpfTable::new(n).expect("n >= 1");
    let g = build_divisor_cover_graph(n, &spf);
    let m = match strategy {
        Strategy::BornFree => born_free_matching_within(game.in_play_mask(), None, &spf),
        Strategy::BornFree5 => born_free_matching_within(game.in_play_mask(), Some(5), &spf),
        _ => {
            let sub = in_play_subgraph(&g, game.in_play_mask());
            match break_flat_cycles(&sub, &max_weight_matching(&sub)) {
                Ok(m) => m,
                Err(_) => return Vec::new(),
            }
        }
    };
    order_matching_standard(&m, &g, &spf).unwrap_or_default()
}

fn in_play_subgraph(g: &DivisorGraph, in_play: &[bool]) -> DivisorGraph {
    let rank = (0..g.slots())
        .map(|v| if in_play[v] { g.rank(v) } else { None })
        .collect();
    let edges = g
        .edges()
        .iter()
        .filter(|e| in_play[e.lower] && in_play[e.upper])
        .copied()
        .collect();
    CoverGraph::from_parts(rank, edges).expect("subgraph of a cover graph")
}
