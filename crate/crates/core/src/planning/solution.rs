use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::atom::Literal;
use super::exec::{run_plan, StepFailure, Trace};
use super::plan::{Goal, Plan, PlanStep};
use super::problem::PlanningProblem;

/// The four conditions a solution plan has to meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Condition {
    /// The chain starts from exactly the initial state.
    InitialState = 1,
    /// Every step is executable in the state it is applied to.
    Applicability = 2,
    /// The final state satisfies every goal.
    GoalsSatisfied = 3,
    /// The satisfied goal set is nonempty and consistent.
    SatisfiedGoals = 4,
}

impl Condition {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Site {
    Initial,
    Step { index: usize, step: PlanStep, failure: StepFailure },
    Goal(Goal),
    GoalSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Failure {
    pub condition: Condition,
    pub site: Site,
    pub explanation: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}: {}", self.condition.number(), self.explanation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolutionVerdict {
    pub is_solution: bool,
    pub failures: Vec<Failure>,
    /// `G_π`: the goals satisfied in the final state. Empty if execution failed.
    pub satisfied_goals: BTreeSet<Goal>,
}

impl SolutionVerdict {
    pub fn failures_for(&self, condition: Condition) -> impl Iterator<Item = &Failure> + '_ {
        self.failures.iter().filter(move |f| f.condition == condition)
    }
}

/// Evaluates all four solution conditions; failures are reported, never raised.
pub fn check_solution(problem: &PlanningProblem, plan: &Plan) -> SolutionVerdict {
    check_solution_with_trace(problem, plan).0
}

pub(crate) fn check_solution_with_trace(
    problem: &PlanningProblem,
    plan: &Plan,
) -> (SolutionVerdict, Option<Trace>) {
    let mut failures = Vec::new();

    for atom in problem.initial.iter() {
        if let Err(e) = problem.vocabulary.check(atom) {
            failures.push(Failure {
                condition: Condition::InitialState,
                site: Site::Initial,
                explanation: format!("initial state is not over the declared vocabulary: {e}"),
            });
        }
    }

    let trace = match run_plan(problem, plan) {
        Ok(trace) => trace,
        Err(run) => {
            failures.push(Failure {
                condition: Condition::Applicability,
                explanation: format!("step {}: {}", run.index, run.failure),
                site: Site::Step { index: run.index, step: run.step, failure: run.failure },
            });
            let verdict = SolutionVerdict { is_solution: false, failures, satisfied_goals: BTreeSet::new() };
            return (verdict, None);
        }
    };
    if trace.initial() != &problem.initial {
        failures.push(Failure {
            condition: Condition::InitialState,
            site: Site::Initial,
            explanation: String::from("the first state differs from the initial state"),
        });
    }

    let last = trace.last();
    let mut satisfied_goals = BTreeSet::new();
    for goal in &problem.goals {
        if goal.holds_in(last) {
            satisfied_goals.insert(goal.clone());
        } else {
            let unmet: Vec<String> = goal.unmet(last).map(|l| format!("{l}")).collect();
            failures.push(Failure {
                condition: Condition::GoalsSatisfied,
                site: Site::Goal(goal.clone()),
                explanation: format!("goal {goal} does not hold in the final state (unmet: {})", unmet.join(", ")),
            });
        }
    }

    if satisfied_goals.is_empty() {
        failures.push(Failure {
            condition: Condition::SatisfiedGoals,
            site: Site::GoalSet,
            explanation: String::from("the plan satisfies no goal"),
        });
    } else if let Some(lit) = contradiction(&satisfied_goals) {
        failures.push(Failure {
            condition: Condition::SatisfiedGoals,
            site: Site::GoalSet,
            explanation: format!("satisfied goals require both {lit} and {}", lit.negate()),
        });
    }

    let verdict = SolutionVerdict { is_solution: failures.is_empty(), failures, satisfied_goals };
    (verdict, Some(trace))
}

fn contradiction(goals: &BTreeSet<Goal>) -> Option<Literal> {
    let required: BTreeSet<&Literal> = goals.iter().flat_map(|g| g.requirements()).collect();
    required.iter().find(|l| required.contains(&l.negate())).map(|l| (*l).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{self, atoms, unstack};

    #[test]
    fn example_plan_is_a_solution() {
        let p = sample::blocks_world();
        let v = check_solution(&p, &sample::solution_plan());
        assert!(v.is_solution, "{:?}", v.failures);
        assert_eq!(v.satisfied_goals, p.goals);
        assert_eq!(v.satisfied_goals.len(), 6);
    }

    #[test]
    fn empty_plan_fails_goal_condition() {
        let p = sample::blocks_world();
        let v = check_solution(&p, &Plan::default());
        assert!(!v.is_solution);
        assert_eq!(v.failures_for(Condition::GoalsSatisfied).count(), 6);
        assert!(v.satisfied_goals.is_empty());
    }

    #[test]
    fn identity_plan_solves_trivial_problem() {
        let mut p = sample::blocks_world();
        p.goal_state = p.initial.atoms().clone();
        p.goals = p.goal_state.iter().cloned().map(Goal::atom).collect();
        let v = check_solution(&p, &Plan::default());
        assert!(v.is_solution);
        assert!(v.failures.is_empty());
    }

    #[test]
    fn swapped_steps_fail_at_step_zero() {
        let p = sample::blocks_world();
        let mut plan = sample::solution_plan();
        plan.steps.swap(0, 1);
        let v = check_solution(&p, &plan);
        assert!(!v.is_solution);
        let f = v.failures_for(Condition::Applicability).next().unwrap();
        match &f.site {
            Site::Step { index, step, failure } => {
                assert_eq!(*index, 0);
                assert_eq!(*step, PlanStep::Single(unstack("b", "c")));
                assert_eq!(failure.missing(), atoms(&["clear b"]));
            }
            other => panic!("unexpected site {other:?}"),
        }
    }

    #[test]
    fn no_goals_means_condition_four_fails() {
        let mut p = sample::blocks_world();
        p.goals.clear();
        let v = check_solution(&p, &sample::solution_plan());
        assert_eq!(v.failures.len(), 1);
        assert_eq!(v.failures[0].condition, Condition::SatisfiedGoals);
    }
}
