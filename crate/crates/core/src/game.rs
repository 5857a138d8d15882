//! Executable rules of the taxman game on any [`Arena`].
//!
//! The engine keeps, for every element, the number of in-play elements below
//! it. A pick is legal iff that count is positive, so legality checks are O(1)
//! and the "any legal pick left" test is a counter read.

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::arena::{Arena, DivisorPot};
use crate::error::{Error, IllegalReason, Result};
use crate::poset::GradedPosetInstance;
use crate::weight::Score;

/// One pick and the elements the taxman removed for it (ascending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub pick: usize,
    pub taxed: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSequence {
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn picks(&self) -> Vec<usize> {
        self.moves.iter().map(|m| m.pick).collect()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Final verdict. Equal scores are reported as a tie rather than a loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Win,
    Tie,
    Loss,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Win => "WIN",
            Outcome::Tie => "TIE",
            Outcome::Loss => "LOSS",
        })
    }
}

#[derive(Debug, Clone)]
pub struct GameState<A: Arena> {
    arena: A,
    in_play: Vec<bool>,
    /// Number of in-play elements strictly below each slot.
    tax_count: Vec<u32>,
    legal_count: usize,
    in_play_count: usize,
    player_score: A::Weight,
    taxman_score: A::Weight,
    history: MoveSequence,
    swept: Vec<usize>,
    finished: bool,
}

/// The standard game on `{1, ..., n}`.
pub type StandardGame = GameState<DivisorPot>;

/// The generalized game on a borrowed explicit poset.
pub type PosetGame<'a, W> = GameState<&'a GradedPosetInstance<W>>;

impl<A: Arena> GameState<A> {
    pub fn new(arena: A) -> Self {
        let slots = arena.slots();
        let mut in_play = vec![false; slots];
        let mut tax_count = vec![0u32; slots];
        for q in arena.elements() {
            in_play[q] = true;
            arena.for_each_above(q, |p| tax_count[p] += 1);
        }
        let legal_count = arena.elements().filter(|&p| tax_count[p] > 0).count();
        let in_play_count = arena.elements().len();
        GameState {
            arena,
            in_play,
            tax_count,
            legal_count,
            in_play_count,
            player_score: A::Weight::zero(),
            taxman_score: A::Weight::zero(),
            history: MoveSequence::default(),
            swept: Vec::new(),
            finished: false,
        }
    }

    pub fn arena(&self) -> &A {
        &self.arena
    }

    pub fn player_score(&self) -> A::Weight {
        self.player_score
    }

    pub fn taxman_score(&self) -> A::Weight {
        self.taxman_score
    }

    pub fn history(&self) -> &MoveSequence {
        &self.history
    }

    /// Elements the taxman collected when the game was closed.
    pub fn swept(&self) -> &[usize] {
        &self.swept
    }

    pub fn is_in_play(&self, e: usize) -> bool {
        self.in_play.get(e).copied().unwrap_or(false)
    }

    pub fn in_play(&self) -> impl Iterator<Item = usize> + '_ {
        self.arena.elements().filter(move |&e| self.in_play[e])
    }

    pub fn in_play_count(&self) -> usize {
        self.in_play_count
    }

    pub fn in_play_weight(&self) -> A::Weight {
        self.in_play().map(|e| self.arena.weight(e)).sum()
    }

    /// Bit view of the in-play set indexed by slot.
    pub fn in_play_mask(&self) -> &[bool] {
        &self.in_play
    }

    pub fn legal_count(&self) -> usize {
        self.legal_count
    }

    /// No legal pick remains.
    pub fn is_over(&self) -> bool {
        self.legal_count == 0
    }

    /// Remaining elements have been handed to the taxman.
    pub fn is_finished(&self) -> bool {
        self.finished
    }

    pub fn check_pick(&self, pick: usize) -> std::result::Result<(), IllegalReason> {
        if !self.is_in_play(pick) {
            Err(IllegalReason::NotInPlay)
        } else if self.tax_count[pick] == 0 {
            Err(IllegalReason::NoTax)
        } else {
            Ok(())
        }
    }

    pub fn is_legal(&self, pick: usize) -> bool {
        self.check_pick(pick).is_ok()
    }

    /// In-play elements with at least one in-play element below, ascending.
    pub fn legal_picks(&self) -> Vec<usize> {
        if self.legal_count == 0 {
            return Vec::new();
        }
        self.arena
            .elements()
            .filter(|&p| self.in_play[p] && self.tax_count[p] > 0)
            .collect()
    }

    fn remove(&mut self, e: usize) {
        debug_assert!(self.in_play[e]);
        self.in_play[e] = false;
        self.in_play_count -= 1;
        if self.tax_count[e] > 0 {
            self.legal_count -= 1;
        }
        let (in_play, tax_count, legal) =
            (&self.in_play, &mut self.tax_count, &mut self.legal_count);
        self.arena.for_each_above(e, |p| {
            tax_count[p] -= 1;
            if tax_count[p] == 0 && in_play[p] {
                *legal -= 1;
            }
        });
    }

    /// Score `pick`, hand every in-play element below it to the taxman and
    /// record the move.
    pub fn apply_pick(&mut self, pick: usize) -> Result<&Move> {
        if let Err(reason) = self.check_pick(pick) {
            return Err(Error::IllegalPick {
                index: self.history.len(),
                value: pick,
                reason,
            });
        }
        let mut taxed = Vec::new();
        let in_play = &self.in_play;
        self.arena.for_each_below(pick, |q| {
            if in_play[q] {
                taxed.push(q);
            }
        });
        taxed.sort_unstable();
        self.remove(pick);
        self.player_score = self.player_score + self.arena.weight(pick);
        for &q in &taxed {
            self.remove(q);
            self.taxman_score = self.taxman_score + self.arena.weight(q);
        }
        self.history.moves.push(Move { pick, taxed });
        Ok(self.history.moves.last().expect("just pushed"))
    }

    /// End a game with no legal picks left: the taxman takes the rest.
    pub fn finalize(&mut self) -> Result<()> {
        if self.legal_count > 0 {
            return Err(Error::GameNotOver {
                remaining: self.legal_count,
            });
        }
        self.close();
        Ok(())
    }

    /// End the game now, legal picks or not: the taxman takes the rest.
    pub fn close(&mut self) {
        let rest: Vec<usize> = self.in_play().collect();
        for e in rest {
            self.remove(e);
            self.taxman_score = self.taxman_score + self.arena.weight(e);
            self.swept.push(e);
        }
        self.finished = true;
    }

    /// Meaningful once the game is finished.
    pub fn outcome(&self) -> Outcome {
        if self.player_score > self.taxman_score {
            Outcome::Win
        } else if self.player_score < self.taxman_score {
            Outcome::Loss
        } else {
            Outcome::Tie
        }
    }
}

impl<A: Arena + Clone> GameState<A> {
    /// Pure variant of [`GameState::apply_pick`].
    pub fn with_pick(&self, pick: usize) -> Result<Self> {
        let mut next = self.clone();
        next.apply_pick(pick)?;
        Ok(next)
    }
}

pub fn new_standard_game(n: usize) -> Result<StandardGame> {
    if n == 0 {
        return Err(Error::EmptyPot);
    }
    Ok(GameState::new(DivisorPot::new(n)))
}

/// Apply `picks` in order, then close the game. The player may stop while
/// legal picks remain; whatever is left goes to the taxman.
pub fn play_sequence<A: Arena>(arena: A, picks: &[usize]) -> Result<GameState<A>> {
    let mut state = GameState::new(arena);
    for &p in picks {
        state.apply_pick(p)?;
    }
    state.close();
    Ok(state)
}

pub fn play_standard(n: usize, picks: &[usize]) -> Result<StandardGame> {
    if n == 0 {
        return Err(Error::EmptyPot);
    }
    play_sequence(DivisorPot::new(n), picks)
}

/// JSON form of a standard game, used by replay files and the HTTP API.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameRecord {
    pub n: usize,
    pub picks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub player_score: Option<Score>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taxman_score: Option<Score>,
}

impl GameRecord {
    pub fn of(state: &StandardGame) -> Self {
        GameRecord {
            n: state.arena().n(),
            picks: state.history().picks(),
            player_score: Some(state.player_score()),
            taxman_score: Some(state.taxman_score()),
        }
    }

    /// Replay and close. Recorded scores, if present, are not trusted.
    pub fn replay(&self) -> Result<StandardGame> {
        play_standard(self.n, &self.picks)
    }
}
