//! The seven game archetypes as session state machines.

mod definition;
mod session;
mod spec;

use thiserror::Error;

use crate::action::ActionError;
use crate::solver::SolverError;

pub use definition::{Game, GameDefaults, HintLayer, RenderMeta, PARTITION_CACHE_LIMIT, RANDOM_WALK_STEPS};
pub use session::{
    same_orbit, Event, MoveOutcome, PlayerView, Resolution, Session, SessionState, Status, Submission, Target,
};
pub use spec::{Archetype, CardBudget, Component, GameSpec, Variants, WinAt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid game spec: {0}")]
    InvalidSpec(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("move not applicable: {0}")]
    Inapplicable(String),
    #[error("no card left for `{0}`")]
    OutOfCards(String),
    #[error("the sequence uses more `{0}` cards than dealt")]
    BudgetViolation(String),
    #[error("the session is over")]
    Terminated,
    #[error("nothing to undo")]
    EmptyHistory,
    #[error("{0}")]
    ModeMismatch(String),
    #[error(transparent)]
    Action(ActionError),
    #[error(transparent)]
    Solver(SolverError),
}

impl From<ActionError> for GameError {
    fn from(e: ActionError) -> Self {
        match e {
            ActionError::UnknownGenerator(l) => GameError::UnknownGenerator(l),
            other => GameError::Action(other),
        }
    }
}

impl From<SolverError> for GameError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Action(a) => a.into(),
            other => GameError::Solver(other),
        }
    }
}
