//! STRIPS planning semantics: closed-world states, the partial transition
//! function, concurrent steps, plan execution and solution checking.

mod achieve;
mod action;
mod atom;
mod exec;
mod plan;
mod problem;
mod search;
mod solution;
mod state;

pub use achieve::{achieved_goals, Achievements, CausalLink, Enabling, GoalChoice};
pub use action::{ActionError, ActionSchema, GroundAction, LiftedAtom, Parameter, Term};
pub use atom::{symbol, Atom, Literal, Vocabulary, VocabularyError};
pub use exec::{
    applicable, concurrent_consistent, run_plan, transition, transition_step, Consistency, NotApplicable,
    RunFailure, StepFailure, StepRecord, Trace, Violation,
};
pub use plan::{Goal, GoalSet, Plan, PlanStep, StepShapeError};
pub use problem::{PlanningProblem, ProblemError};
pub use search::{goal_feasible, SearchError, DEFAULT_SEARCH_BUDGET};
pub use solution::{check_solution, Condition, Failure, Site, SolutionVerdict};
pub use state::State;

pub(crate) use solution::check_solution_with_trace;
pub(crate) use state::write_conjunction;
