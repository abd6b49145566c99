use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::action::{ActionSchema, GroundAction};
use super::atom::{Atom, Literal, Vocabulary, VocabularyError};
use super::plan::Goal;
use super::state::State;

/// A grounded STRIPS planning problem.
///
/// The transition system is never materialized: states are produced on
/// demand by [`crate::planning::transition`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlanningProblem {
    pub name: String,
    pub vocabulary: Vocabulary,
    pub initial: State,
    pub goal_state: BTreeSet<Atom>,
    pub goals: BTreeSet<Goal>,
    pub templates: Vec<ActionSchema>,
    pub actions: Vec<GroundAction>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemError {
    Initial(VocabularyError),
    GoalState(VocabularyError),
    Goal(VocabularyError),
    Action { action: String, error: VocabularyError },
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::Initial(e) => write!(f, "initial state: {e}"),
            ProblemError::GoalState(e) => write!(f, "goal state: {e}"),
            ProblemError::Goal(e) => write!(f, "goal: {e}"),
            ProblemError::Action { action, error } => write!(f, "action {action}: {error}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ProblemError {}

impl PlanningProblem {
    /// Builds a problem whose goals are the singleton goals of `goal_state`.
    pub fn new(
        name: &str,
        vocabulary: Vocabulary,
        initial: State,
        goal_state: BTreeSet<Atom>,
        templates: Vec<ActionSchema>,
        actions: Vec<GroundAction>,
    ) -> Result<Self, ProblemError> {
        let goals = goal_state.iter().cloned().map(Goal::atom).collect();
        Self::with_goals(name, vocabulary, initial, goal_state, goals, templates, actions)
    }

    pub fn with_goals(
        name: &str,
        vocabulary: Vocabulary,
        initial: State,
        goal_state: BTreeSet<Atom>,
        goals: BTreeSet<Goal>,
        templates: Vec<ActionSchema>,
        actions: Vec<GroundAction>,
    ) -> Result<Self, ProblemError> {
        for a in initial.iter() {
            vocabulary.check(a).map_err(ProblemError::Initial)?;
        }
        for a in &goal_state {
            vocabulary.check(a).map_err(ProblemError::GoalState)?;
        }
        for g in &goals {
            for r in g.requirements() {
                vocabulary.check(&r.atom).map_err(ProblemError::Goal)?;
            }
        }
        for action in &actions {
            for a in action.pre.iter().chain(&action.add).chain(&action.del) {
                vocabulary.check(a).map_err(|error| ProblemError::Action {
                    action: alloc::format!("{action}"),
                    error,
                })?;
            }
        }
        Ok(PlanningProblem {
            name: String::from(name),
            vocabulary,
            initial,
            goal_state,
            goals,
            templates,
            actions,
        })
    }

    /// `s ⊨ lit`, after checking that `lit` is over the declared vocabulary.
    pub fn holds(&self, s: &State, lit: &Literal) -> Result<bool, VocabularyError> {
        self.vocabulary.check(&lit.atom)?;
        Ok(s.satisfies(lit))
    }

    pub fn find_action(&self, name: &str, args: &[String]) -> Option<&GroundAction> {
        self.actions.iter().find(|a| a.is_named(name, args))
    }
}
