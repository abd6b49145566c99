use alloc::collections::{BTreeSet, VecDeque};
use core::fmt;

use super::exec::{applicable, transition};
use super::plan::Goal;
use super::problem::PlanningProblem;
use super::state::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchError {
    /// More than `budget` distinct states were generated before the search finished.
    BudgetExceeded { budget: usize },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::BudgetExceeded { budget } => {
                write!(f, "feasibility search exceeded its budget of {budget} states")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SearchError {}

pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

/// Whether some sequence of at most `bound` single actions from the initial
/// state reaches a state satisfying `goal` (breadth-first).
///
/// `Ok(false)` means unreachable within the bound; running out of `budget`
/// distinct states is reported as an error instead.
pub fn goal_feasible(
    problem: &PlanningProblem,
    goal: &Goal,
    bound: usize,
    budget: usize,
) -> Result<bool, SearchError> {
    if goal.holds_in(&problem.initial) {
        return Ok(true);
    }
    let mut seen: BTreeSet<State> = BTreeSet::new();
    seen.insert(problem.initial.clone());
    let mut frontier: VecDeque<(State, usize)> = VecDeque::new();
    frontier.push_back((problem.initial.clone(), 0));
    while let Some((state, depth)) = frontier.pop_front() {
        if depth == bound {
            continue;
        }
        for action in problem.actions.iter().filter(|a| applicable(&state, a)) {
            let next = transition(&state, action).expect("checked applicable");
            if goal.holds_in(&next) {
                return Ok(true);
            }
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= budget {
                return Err(SearchError::BudgetExceeded { budget });
            }
            seen.insert(next.clone());
            frontier.push_back((next, depth + 1));
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{self, atom};

    #[test]
    fn one_step_reaches_ontable_a() {
        let p = sample::blocks_world();
        let g = Goal::atom(atom("ontable a"));
        assert_eq!(goal_feasible(&p, &g, 0, DEFAULT_SEARCH_BUDGET), Ok(false));
        assert_eq!(goal_feasible(&p, &g, 1, DEFAULT_SEARCH_BUDGET), Ok(true));
    }

    #[test]
    fn initial_atoms_are_feasible_at_bound_zero() {
        let p = sample::blocks_world();
        assert_eq!(goal_feasible(&p, &Goal::atom(atom("on a b")), 0, 1), Ok(true));
    }

    #[test]
    fn self_loop_is_unreachable() {
        let p = sample::blocks_world();
        assert_eq!(goal_feasible(&p, &Goal::atom(atom("on a a")), 3, DEFAULT_SEARCH_BUDGET), Ok(false));
    }

    #[test]
    fn budget_is_distinct_from_unreachable() {
        let p = sample::blocks_world();
        let r = goal_feasible(&p, &Goal::atom(atom("on a a")), 10, 3);
        assert_eq!(r, Err(SearchError::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn monotone_in_bound() {
        let p = sample::blocks_world();
        let g = Goal::atom(atom("on d b"));
        let results: alloc::vec::Vec<bool> =
            (0..6).map(|b| goal_feasible(&p, &g, b, DEFAULT_SEARCH_BUDGET).unwrap()).collect();
        assert!(results.windows(2).all(|w| !w[0] || w[1]), "{results:?}");
        assert!(results[5]);
    }
}
